//! Acceptance gate for the whole pipeline. Nine criteria, every threshold
//! pinned in code, one verdict line printed per criterion.
//!
//! Criteria 2, 4, 5, 6 and 7 interrogate the same battery of generated
//! height-drop instances, so the battery is built once and shared.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use blowup_core::blowup::{rees_ideal, ring_tower};
use blowup_core::groebner::{buchberger, gb_equal, height};
use blowup_core::parse::parse_polynomial;
use blowup_core::report::{meta_for, render};
use blowup_core::theorem::{generate_generic, generate_instance, GenConfig};
use blowup_core::{
    verify, BlockRole, Budget, CaseKind, CoeffField, Flag, IdealHandle, LinearMatrix, Monomial,
    MonomialOrder, Polynomial, Ring, RingRc, VerificationReport, VerifyOptions,
};

const INSTANCES_PER_SHAPE: usize = 20;
const SHAPES: [(usize, usize, usize); 5] = [(3, 4, 1), (3, 5, 1), (3, 5, 2), (4, 5, 1), (4, 6, 1)];
const CONTROLS_PER_SHAPE: usize = 10;
const CONTROL_SHAPES: [(usize, usize); 2] = [(3, 4), (4, 5)];
const SMALL_ORACLE_LIMIT: Duration = Duration::from_secs(1);
const DROP_LIMIT_D3: Duration = Duration::from_secs(60);
const DROP_LIMIT_D4: Duration = Duration::from_secs(300);
const AXIOM_ROUNDS: usize = 1_000;
const MONOMIAL_IDEALS: usize = 100;
const MEMBERSHIP_PROBES: usize = 20;
const DIMENSION_IDEALS: usize = 50;

fn f32003() -> CoeffField {
    CoeffField::prime(32003).unwrap()
}

struct BatteryEntry {
    d: usize,
    n: usize,
    u: usize,
    seed: u64,
    elapsed: Duration,
    report: VerificationReport,
}

impl BatteryEntry {
    fn label(&self) -> String {
        format!("({},{},{}) seed {}", self.d, self.n, self.u, self.seed)
    }

    fn assert_flag(&self, name: &str) {
        assert_eq!(
            self.report.flag(name),
            Some(&Flag::True),
            "{} flag {name}: {:?}",
            self.label(),
            self.report.flag(name)
        );
    }
}

fn battery() -> &'static [BatteryEntry] {
    static BATTERY: OnceLock<Vec<BatteryEntry>> = OnceLock::new();
    BATTERY.get_or_init(|| {
        let mut out = Vec::new();
        for (s, &(d, n, u)) in SHAPES.iter().enumerate() {
            for i in 0..INSTANCES_PER_SHAPE {
                let cfg = GenConfig {
                    d,
                    n,
                    u,
                    field: f32003(),
                    seed: 10_000 + 100 * s as u64 + i as u64,
                    max_attempts: 500,
                };
                let inst = generate_instance(&cfg).expect("instance generation");
                let start = Instant::now();
                let report =
                    verify(&inst.phi, &VerifyOptions::default()).expect("verification");
                out.push(BatteryEntry {
                    d,
                    n,
                    u,
                    seed: cfg.seed,
                    elapsed: start.elapsed(),
                    report,
                });
            }
        }
        out
    })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[test]
fn criterion_1_small_ideal_oracles() {
    let budget = Budget::default();

    // The Koszul presentation of (x1, x2). Eliminating the graph variable
    // from <t1 - w*x1, t2 - w*x2> by hand leaves the single column
    // relation, and the fiber ideal is zero.
    let start = Instant::now();
    let base = Ring::base_ring(CoeffField::rationals(), &["x1", "x2"]).unwrap();
    let phi =
        LinearMatrix::from_strings(&base, BlockRole::Base, &[vec!["x2"], vec!["-x1"]]).unwrap();
    let tower = ring_tower(&base, 2).unwrap();
    let rp = rees_ideal(&phi, &tower, &budget).unwrap();
    let oracle = IdealHandle::new(
        tower.rt.clone(),
        MonomialOrder::Grevlex,
        vec![parse_polynomial("x1*t2 - x2*t1", &tower.rt).unwrap()],
    );
    assert!(
        gb_equal(rp.rees_gb(), &buchberger(&oracle, &budget).unwrap()),
        "linear ideal: blow-up ideal differs from the hand elimination"
    );
    assert!(
        rp.fiber_small_gb().is_zero_ideal(),
        "linear ideal: fiber ideal should be zero"
    );
    assert!(start.elapsed() < SMALL_ORACLE_LIMIT, "linear ideal too slow");

    // The squared maximal ideal (x^2, xy, y^2). Both oracles were frozen
    // from an independent brute-force elimination run.
    let start = Instant::now();
    let base = Ring::base_ring(CoeffField::rationals(), &["x", "y"]).unwrap();
    let phi = LinearMatrix::from_strings(
        &base,
        BlockRole::Base,
        &[vec!["y", "0"], vec!["-x", "y"], vec!["0", "-x"]],
    )
    .unwrap();
    let tower = ring_tower(&base, 3).unwrap();
    let rp = rees_ideal(&phi, &tower, &budget).unwrap();
    let rees_oracle = IdealHandle::new(
        tower.rt.clone(),
        MonomialOrder::Grevlex,
        ["x*t2 - y*t1", "x*t3 - y*t2", "t1*t3 - t2^2"]
            .iter()
            .map(|s| parse_polynomial(s, &tower.rt).unwrap())
            .collect(),
    );
    assert!(
        gb_equal(rp.rees_gb(), &buchberger(&rees_oracle, &budget).unwrap()),
        "squared maximal ideal: blow-up ideal differs from the oracle"
    );
    let fiber_oracle = IdealHandle::new(
        tower.fiber.clone(),
        MonomialOrder::Grevlex,
        vec![parse_polynomial("t1*t3 - t2^2", &tower.fiber).unwrap()],
    );
    assert!(
        gb_equal(rp.fiber_small_gb(), &buchberger(&fiber_oracle, &budget).unwrap()),
        "squared maximal ideal: fiber ideal differs from the oracle"
    );
    assert!(
        start.elapsed() < SMALL_ORACLE_LIMIT,
        "squared maximal ideal too slow"
    );

    println!("criterion 1 (small-ideal oracles): pass");
}

#[test]
fn criterion_2_height_drop_battery() {
    for e in battery() {
        let label = e.label();
        assert_eq!(e.report.case, CaseKind::HeightDrop, "{label}");
        assert_eq!(e.report.u, Some(e.u), "{label}");
        assert!(
            e.report.consistent,
            "{label} violations: {:?}",
            e.report.violations
        );
        assert_eq!(e.report.spread, Some(e.d as i64), "{label} spread");
        e.assert_flag("fiber_type");
        assert_eq!(
            e.report.flag("expected_form"),
            Some(&Flag::False),
            "{label} expected_form"
        );
        // The degree gap witnesses that the inclusion of the dual minors
        // in the fiber ideal is proper: the minors live in degree d while
        // the fiber ideal already starts in degree d - 1.
        assert_eq!(
            e.report.fiber_indeg,
            Some(e.d as u32 - 1),
            "{label} fiber initial degree"
        );
        e.assert_flag("dual_minors_in_fiber");
        for f in &e.report.checks {
            assert!(f.value.is_evaluated(), "{label} skipped flag {}", f.name);
        }
        let limit = if e.d == 3 { DROP_LIMIT_D3 } else { DROP_LIMIT_D4 };
        assert!(
            e.elapsed < limit,
            "{label} took {:?}, limit {:?}",
            e.elapsed,
            limit
        );
    }
    println!("criterion 2 (height-drop battery): pass");
}

#[test]
fn criterion_3_generic_controls() {
    for &(d, n) in &CONTROL_SHAPES {
        for i in 0..CONTROLS_PER_SHAPE {
            let seed = 20_000 + 100 * d as u64 + i as u64;
            let inst =
                generate_generic(d, n, f32003(), seed, 500).expect("control generation");
            let report = verify(&inst.phi, &VerifyOptions::default()).expect("verification");
            let label = format!("control ({d},{n}) seed {seed}");
            assert_eq!(report.case, CaseKind::ExpectedForm, "{label}");
            assert!(report.consistent, "{label} violations: {:?}", report.violations);
            assert_eq!(report.flag("expected_form"), Some(&Flag::True), "{label}");
            let zero_fiber = report.fiber_gens == Some(0);
            assert!(
                zero_fiber || report.fiber_indeg == Some(d as u32),
                "{label} fiber initial degree {:?}",
                report.fiber_indeg
            );
        }
    }
    println!("criterion 3 (generic controls): pass");
}

#[test]
fn criterion_4_presentation_battery() {
    for e in battery() {
        let label = e.label();
        // Height profile: the submaximal minors at size n - d + 1 drop to
        // d - 1, the pivot index stays within the admissible window, the
        // column relations define an ideal of dimension n, and the dual
        // matrix has full rank over the ring itself.
        assert_eq!(
            e.report.heights[e.n - e.d],
            e.d as i64 - 1,
            "{label} height profile {:?}",
            e.report.heights
        );
        let u = e.report.u.expect("pivot index");
        assert!((1..=e.n - e.d).contains(&u), "{label} pivot {u}");
        assert_eq!(e.report.sym_dim, Some(e.n as i64), "{label} sym dimension");
        e.assert_flag("dual_rank_full");
    }
    println!("criterion 4 (presentation battery): pass");
}

#[test]
fn criterion_5_module_battery() {
    for e in battery() {
        e.assert_flag("module_ladder");
        e.assert_flag("module_sym_dim");
        e.assert_flag("dual_complement_rank");
    }
    println!("criterion 5 (module battery): pass");
}

#[test]
fn criterion_6_determinant_identity() {
    for e in battery() {
        // Every column selection is covered: the included and excluded
        // counts add up to all (d-1)-subsets of the n-1 dual columns.
        let total = binomial(e.n - 1, e.d - 1);
        let included = e.report.inverse_count.expect("inverse count");
        let excluded = e.report.excluded_count.expect("excluded count");
        assert_eq!(included + excluded, total, "{}", e.label());
        e.assert_flag("spec_det_identity");
        e.assert_flag("spec_low_rank_dets_in_fiber");
    }
    println!("criterion 6 (determinant identity): pass");
}

#[test]
fn criterion_7_inverse_map() {
    for e in battery() {
        assert!(
            e.report.inverse_count.unwrap_or(0) > 0,
            "{} has no inverse representatives",
            e.label()
        );
        e.assert_flag("inverse_nonempty");
        e.assert_flag("inverse_cross_compatible");
        e.assert_flag("excluded_minors_in_fiber");
        e.assert_flag("birational_rank");
    }
    println!("criterion 7 (inverse map): pass");
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &RingRc) -> Polynomial {
    let field = *ring.field();
    let nterms = rng.gen_range(0..=5);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut exps = Vec::new();
        for v in 0..ring.nvars() {
            let e = rng.gen_range(0..=2u16);
            if e > 0 {
                exps.push((v, e));
            }
        }
        terms.push((
            Monomial::from_exponents(&exps),
            field.from_i64(rng.gen_range(-9..=9)),
        ));
    }
    Polynomial::from_terms(ring, terms)
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_exp: u16) -> Monomial {
    let mut exps = Vec::new();
    for v in 0..nvars {
        let e = rng.gen_range(0..=max_exp);
        if e > 0 {
            exps.push((v, e));
        }
    }
    Monomial::from_exponents(&exps)
}

fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &RingRc, degree: u16) -> Polynomial {
    let field = *ring.field();
    loop {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(2..=4) {
            let a = rng.gen_range(0..=degree);
            let b = rng.gen_range(0..=degree - a);
            let c = degree - a - b;
            terms.push((
                Monomial::from_exponents(&[(0, a), (1, b), (2, c)]),
                field.from_i64(rng.gen_range(-9..=9)),
            ));
        }
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn criterion_8_engine_properties() {
    let budget = Budget::default();

    // Ring axioms and the substitution homomorphism, over both supported
    // coefficient fields.
    let fields = [
        CoeffField::rationals(),
        CoeffField::prime(7).unwrap(),
        f32003(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for round in 0..AXIOM_ROUNDS {
        let ring = Ring::base_ring(fields[round % fields.len()], &["a", "b", "c"]).unwrap();
        let p = random_poly(&mut rng, &ring);
        let q = random_poly(&mut rng, &ring);
        let r = random_poly(&mut rng, &ring);
        let dist_l = p.add(&q).unwrap().mul(&r).unwrap();
        let dist_r = p.mul(&r).unwrap().add(&q.mul(&r).unwrap()).unwrap();
        assert_eq!(dist_l, dist_r, "distributivity, round {round}");
        let assoc_l = p.mul(&q).unwrap().mul(&r).unwrap();
        let assoc_r = p.mul(&q.mul(&r).unwrap()).unwrap();
        assert_eq!(assoc_l, assoc_r, "associativity, round {round}");
        assert!(p.sub(&p).unwrap().is_zero(), "additive inverse, round {round}");

        let image = random_poly(&mut rng, &ring);
        let sub = |f: &Polynomial| f.substitute(&[("b", image.clone())], &ring).unwrap();
        assert_eq!(
            sub(&p.mul(&q).unwrap()),
            sub(&p).mul(&sub(&q)).unwrap(),
            "substitution respects products, round {round}"
        );
        assert_eq!(
            sub(&p.add(&q).unwrap()),
            sub(&p).add(&sub(&q)).unwrap(),
            "substitution respects sums, round {round}"
        );
    }

    // Basis membership on monomial ideals against brute-force
    // divisibility by a generator.
    let ring = Ring::base_ring(CoeffField::prime(101).unwrap(), &["a", "b", "c"]).unwrap();
    let one = ring.field().one();
    let mut rng = ChaCha8Rng::seed_from_u64(82);
    for round in 0..MONOMIAL_IDEALS {
        let gens_m: Vec<Monomial> = (0..rng.gen_range(1..=5))
            .map(|_| random_monomial(&mut rng, 3, 3))
            .collect();
        let gens = gens_m
            .iter()
            .map(|m| Polynomial::from_terms(&ring, vec![(*m, one.clone())]))
            .collect();
        let gb = buchberger(
            &IdealHandle::new(ring.clone(), MonomialOrder::Grevlex, gens),
            &budget,
        )
        .unwrap();
        for _ in 0..MEMBERSHIP_PROBES {
            let probe = random_monomial(&mut rng, 3, 4);
            let member =
                gb.contains(&Polynomial::from_terms(&ring, vec![(probe, one.clone())]));
            let divisible = gens_m.iter().any(|g| g.divides(&probe));
            assert_eq!(member, divisible, "membership, round {round}, probe {probe:?}");
        }
    }

    // Height of a homogeneous ideal does not depend on the monomial order
    // used to compute it.
    let ring = Ring::base_ring(f32003(), &["a", "b", "c"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(83);
    for round in 0..DIMENSION_IDEALS {
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let degree = rng.gen_range(1..=2);
                random_homogeneous(&mut rng, &ring, degree)
            })
            .collect();
        let grevlex = height(
            &IdealHandle::new(ring.clone(), MonomialOrder::Grevlex, gens.clone()),
            &budget,
        )
        .unwrap();
        let lex = height(
            &IdealHandle::new(ring.clone(), MonomialOrder::Lex, gens),
            &budget,
        )
        .unwrap();
        assert_eq!(grevlex, lex, "order independence, round {round}");
    }

    println!("criterion 8 (engine properties): pass");
}

#[test]
fn criterion_9_deterministic_reports() {
    let cfg = GenConfig {
        d: 3,
        n: 4,
        u: 1,
        field: f32003(),
        seed: 910,
        max_attempts: 500,
    };
    let inst = generate_instance(&cfg).expect("instance generation");
    let opts = VerifyOptions::default();
    let first = verify(&inst.phi, &opts).expect("verification");
    let second = verify(&inst.phi, &opts).expect("verification");
    assert_eq!(first, second, "repeated runs disagree");
    let meta = meta_for(&inst.phi, opts.seed, opts.budget.pair_cap, opts.budget.degree_cap);
    let text_a = render(&first, &meta);
    let text_b = render(&second, &meta);
    assert_eq!(text_a, text_b, "rendered reports differ");
    assert!(text_a.contains("\nconsistent=true\n"));
    println!("criterion 9 (deterministic reports): pass");
}
