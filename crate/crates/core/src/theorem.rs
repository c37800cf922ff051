//! End-to-end verification of the blow-up structure of an ideal with an
//! almost-square linear presentation.
//!
//! Given a presentation matrix, `verify` checks the hypotheses (entry
//! ideal, ideal height, the ladder condition), classifies the input by
//! whether the ladder holds one level higher, and then evaluates every
//! structural claim the classification predicts: dimensions of the
//! symmetric algebra and blow-up, analytic spread, the shape of the
//! special fiber, the two candidate presentations of the blow-up ideal,
//! birationality with explicit inverse representatives, and the behavior
//! under specialization by a general hyperplane. Each claim becomes a
//! named flag with a predicted value; `consistent` records whether every
//! evaluated flag matched its prediction.
//!
//! `generate_instance` and `generate_generic` produce random matrices in
//! the two classes for batteries and controls.

use crate::blowup::{
    check_gs, check_gs_ideal, fitting_heights, max_gs, pivot_index, rees_ideal, ring_tower,
    sym_ideal_gens, FittingHeights, ReesPresentation,
};
use crate::error::{Error, Result};
use crate::field::{CoeffField, FieldKind, Scalar};
use crate::groebner::{buchberger, gb_equal, Budget, IdealHandle};
use crate::linmatrix::{
    canonical_form, combinations, first_var_on_diagonal, LinearMatrix, ScalarConjugation,
};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{BlockRole, Ring, RingRc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one verified claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flag {
    True,
    False,
    /// Not evaluated, with the reason.
    Skipped(String),
}

impl Flag {
    pub fn from_bool(b: bool) -> Flag {
        if b {
            Flag::True
        } else {
            Flag::False
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Flag::True)
    }

    pub fn is_evaluated(&self) -> bool {
        !matches!(self, Flag::Skipped(_))
    }
}

/// How the input was classified after the hypothesis checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseKind {
    /// The ladder condition holds at the base dimension: the blow-up
    /// ideal should take its classical expected form.
    ExpectedForm,
    /// The ladder holds one step below the base dimension but fails at
    /// it: the fiber acquires a relation one degree early.
    HeightDrop,
    /// Hypotheses failed; no claims are made.
    Rejected(String),
}

/// One named claim with its outcome and, when the classification makes a
/// prediction, the predicted outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagEntry {
    pub name: &'static str,
    pub value: Flag,
    pub predicted: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: CaseKind,
    pub d: usize,
    pub n: usize,
    pub matrix_rows: Vec<Vec<String>>,
    pub spans: bool,
    pub ideal_height: Option<i64>,
    pub heights: Vec<i64>,
    /// Ladder outcomes for s = 1..=d.
    pub gs_levels: Vec<(usize, bool)>,
    pub max_gs: usize,
    pub u: Option<usize>,
    pub point: Option<Vec<String>>,
    pub canonical_rows: Option<Vec<Vec<String>>>,
    pub dual_rows: Option<Vec<Vec<String>>>,
    pub sym_dim: Option<i64>,
    pub rees_dim: Option<i64>,
    pub spread: Option<i64>,
    pub fiber_gens: Option<usize>,
    pub fiber_indeg: Option<u32>,
    pub rank_witness: Option<(Vec<usize>, Vec<usize>)>,
    pub inverse_count: Option<usize>,
    pub excluded_count: Option<usize>,
    pub spec_coeffs: Option<Vec<String>>,
    pub checks: Vec<FlagEntry>,
    pub consistent: bool,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        self.checks.iter().find(|e| e.name == name).map(|e| &e.value)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub budget: Budget,
    /// Straightening point supplied by the caller, one scalar per base
    /// variable.
    pub point: Option<Vec<Scalar>>,
    /// Straightening index the caller expects; mismatch rejects the run.
    pub declared_u: Option<usize>,
    /// Maximum number of candidate points enumerated in the search.
    pub point_cap: usize,
    /// Maximum hyperplane draws before the specialization battery gives
    /// up.
    pub spec_retry_cap: usize,
    /// Seed for the hyperplane draws.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: Budget::default(),
            point: None,
            declared_u: None,
            point_cap: 2_000_000,
            spec_retry_cap: 32,
            seed: 0,
        }
    }
}

// ---------------------------------------------------------------------------
// Point search

/// First point of projective space, in chart-by-chart enumeration order,
/// where the matrix drops to the target rank. `Ok(None)` means the whole
/// space was enumerated without a hit; enumeration past the cap is a
/// budget error. Rational coefficients cannot be enumerated.
pub fn find_rank_point(
    phi: &LinearMatrix,
    target: usize,
    cap: usize,
) -> Result<Option<Vec<Scalar>>> {
    let field = *phi.ring().field();
    let FieldKind::Prime(p) = field.kind() else {
        return Err(Error::RequiresPrimeField);
    };
    let p = p as u64;
    let d = phi.ring().role_vars(phi.block()).len();
    let mut checked = 0usize;
    for chart in 0..d {
        let free = d - chart - 1;
        let mut odo = vec![0u64; free];
        loop {
            let mut point = vec![field.zero(); d];
            point[chart] = field.one();
            for (k, &v) in odo.iter().enumerate() {
                point[chart + 1 + k] = field.from_i64(v as i64);
            }
            checked += 1;
            if checked > cap {
                return Err(Error::budget(
                    "point-search",
                    format!("no rank-{target} point within {cap} candidates"),
                ));
            }
            if phi.evaluate_at_block_point(&point).rank() == target {
                return Ok(Some(point));
            }
            // Advance the odometer, last coordinate fastest.
            let mut k = free;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                odo[k] += 1;
                if odo[k] < p {
                    break;
                }
                odo[k] = 0;
                if k == 0 {
                    break;
                }
            }
            if odo.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Verification pipeline

struct Pipeline<'a> {
    phi: &'a LinearMatrix,
    opts: &'a VerifyOptions,
    d: usize,
    n: usize,
    checks: Vec<FlagEntry>,
}

impl<'a> Pipeline<'a> {
    fn push(&mut self, name: &'static str, value: Flag, predicted: Option<bool>) {
        self.checks.push(FlagEntry {
            name,
            value,
            predicted,
        });
    }

    fn push_claim(&mut self, name: &'static str, holds: bool) {
        self.push(name, Flag::from_bool(holds), Some(true));
    }

    fn skip(&mut self, name: &'static str, reason: &str, predicted: Option<bool>) {
        self.push(name, Flag::Skipped(reason.to_string()), predicted);
    }
}

fn matrix_strings(m: &LinearMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect())
        .collect()
}

fn render_scalars(field: &CoeffField, vals: &[Scalar]) -> Vec<String> {
    vals.iter().map(|v| field.fmt_scalar(v)).collect()
}

/// Hypothesis battery and classification only: entry span, minor ideal
/// heights, the ladder levels, the case, and the straightening index.
/// The returned report carries no structural flags yet; `verify` fills
/// those in.
pub fn classify(phi: &LinearMatrix, opts: &VerifyOptions) -> Result<VerificationReport> {
    let ring = phi.ring().clone();
    let d = ring.role_vars(BlockRole::Base).len();
    let n = phi.rows();

    let mut report = VerificationReport {
        case: CaseKind::Rejected(String::new()),
        d,
        n,
        matrix_rows: matrix_strings(phi),
        spans: false,
        ideal_height: None,
        heights: vec![],
        gs_levels: vec![],
        max_gs: 0,
        u: None,
        point: None,
        canonical_rows: None,
        dual_rows: None,
        sym_dim: None,
        rees_dim: None,
        spread: None,
        fiber_gens: None,
        fiber_indeg: None,
        rank_witness: None,
        inverse_count: None,
        excluded_count: None,
        spec_coeffs: None,
        checks: vec![],
        consistent: true,
        violations: vec![],
    };

    // Shape and hypothesis battery.
    if phi.rows() != phi.cols() + 1 {
        report.case = CaseKind::Rejected(format!(
            "presentation must have one more row than columns, got {}x{}",
            phi.rows(),
            phi.cols()
        ));
        return Ok(report);
    }
    if n < d + 1 {
        report.case = CaseKind::Rejected(format!(
            "need at least {} generators over {d} variables, got {n}",
            d + 1
        ));
        return Ok(report);
    }
    report.spans = phi.spans_block();
    if !report.spans {
        report.case =
            CaseKind::Rejected("entries do not span all linear forms of the base block".into());
        return Ok(report);
    }
    let heights = fitting_heights(phi, &opts.budget)?;
    report.heights = heights.heights.clone();
    report.ideal_height = Some(heights.height(n - 1));
    if heights.height(n - 1) != 2 {
        report.case = CaseKind::Rejected(format!(
            "maximal minors have height {}, expected 2",
            heights.height(n - 1)
        ));
        return Ok(report);
    }
    report.gs_levels = (1..=d)
        .map(|s| (s, check_gs_ideal(&heights, s).satisfied))
        .collect();
    report.max_gs = max_gs(&heights, 1, d);
    if d >= 2 && !check_gs_ideal(&heights, d - 1).satisfied {
        report.case = CaseKind::Rejected(format!(
            "ladder condition fails below level {d}",
        ));
        return Ok(report);
    }

    let gd = check_gs_ideal(&heights, d).satisfied;
    if gd {
        report.case = CaseKind::ExpectedForm;
        if let Some(du) = opts.declared_u {
            report.case = CaseKind::Rejected(format!(
                "declared straightening index {du}, but the ladder holds at level {d}"
            ));
        }
    } else {
        report.case = CaseKind::HeightDrop;
        let u = match pivot_index(&heights, d) {
            Ok(u) => u,
            Err(Error::Hypothesis(msg)) => {
                report.case = CaseKind::Rejected(msg);
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        if let Some(du) = opts.declared_u {
            if du != u {
                report.case = CaseKind::Rejected(format!(
                    "declared straightening index {du}, computed {u}"
                ));
                return Ok(report);
            }
        }
        report.u = Some(u);
    }
    Ok(report)
}

/// Check every structural claim for the given presentation matrix. The
/// matrix must be base-linear over a plain coefficient ring, with one
/// more row than columns. Budget overruns and engine defects surface as
/// errors; failed mathematical claims surface as flags and violations.
pub fn verify(phi: &LinearMatrix, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = classify(phi, opts)?;
    let d = report.d;
    let n = report.n;
    let mut pl = Pipeline {
        phi,
        opts,
        d,
        n,
        checks: Vec::new(),
    };

    match report.case.clone() {
        CaseKind::Rejected(_) => return Ok(report),
        CaseKind::ExpectedForm => verify_expected_case(&mut pl, &mut report)?,
        CaseKind::HeightDrop => {
            let heights = FittingHeights {
                rows: n,
                cols: n - 1,
                heights: report.heights.clone(),
            };
            let u = report.u.expect("drop case carries its index");
            verify_drop_case(&mut pl, &mut report, &heights, u)?;
        }
    }

    report.checks = pl.checks;
    for e in &report.checks {
        if let (Some(want), true) = (e.predicted, e.value.is_evaluated()) {
            if e.value.is_true() != want {
                report.violations.push(e.name.to_string());
            }
        }
    }
    report.consistent = report.violations.is_empty();
    Ok(report)
}

/// Claims for the classical case: the blow-up ideal is the column
/// relations plus the maximal minors of the dual matrix, and the fiber
/// relations start in degree equal to the base dimension.
fn verify_expected_case(pl: &mut Pipeline, report: &mut VerificationReport) -> Result<()> {
    let phi = pl.phi;
    let budget = &pl.opts.budget;
    let (d, n) = (pl.d, pl.n);
    let tower = ring_tower(phi.ring(), n)?;
    let rp = rees_ideal(phi, &tower, budget)?;
    fill_dims(report, &rp);

    let dual = phi.jacobian_dual(&tower.rt)?;
    report.dual_rows = Some(matrix_strings(&dual));
    pl.push(
        "dual_rank_full",
        Flag::from_bool(dual.rank_mod(None).rank == d),
        None,
    );
    pl.push_claim("spread_equals_base_dim", rp.analytic_spread() == d as i64);

    let fiber_ok = report.fiber_gens == Some(0) || report.fiber_indeg == Some(d as u32);
    pl.push_claim("fiber_initial_degree", fiber_ok);

    let (fiber_type, expected_form) = structure_flags(&rp, phi, &dual, d, budget)?;
    pl.push("fiber_type", Flag::from_bool(fiber_type), Some(true));
    pl.push("expected_form", Flag::from_bool(expected_form), Some(true));
    Ok(())
}

/// Claims for the early-drop case: lemma-level facts about the dual
/// matrix and dimensions, the fiber relation in degree one below the
/// base dimension, the two presentations of the blow-up ideal, inverse
/// representatives, and the specialization battery.
fn verify_drop_case(
    pl: &mut Pipeline,
    report: &mut VerificationReport,
    heights: &FittingHeights,
    u: usize,
) -> Result<()> {
    let phi = pl.phi;
    let budget = &pl.opts.budget;
    let (d, n) = (pl.d, pl.n);

    // Straighten if possible: already straight, a caller-supplied point,
    // or a searched point over a prime field.
    let canonical: Option<(LinearMatrix, Option<Vec<Scalar>>)> =
        if first_var_on_diagonal(phi, u) {
            Some((phi.clone(), None))
        } else {
            let point = match &pl.opts.point {
                Some(p) => Some(p.clone()),
                None => match find_rank_point(phi, u, pl.opts.point_cap) {
                    Ok(p) => p,
                    Err(Error::RequiresPrimeField) => None,
                    Err(e) => return Err(e),
                },
            };
            match point {
                Some(p) => {
                    let (straight, _conj): (LinearMatrix, ScalarConjugation) =
                        canonical_form(phi, &p, u)?;
                    report.point = Some(render_scalars(phi.ring().field(), &p));
                    Some((straight, Some(p)))
                }
                None => None,
            }
        };

    let work = canonical.as_ref().map(|(m, _)| m).unwrap_or(phi);
    if canonical.is_some() {
        report.canonical_rows = Some(matrix_strings(work));
    }

    let tower = ring_tower(work.ring(), n)?;
    let rp = rees_ideal(work, &tower, budget)?;
    fill_dims(report, &rp);

    pl.push_claim("sym_dim_matches_gens", rp.sym_dim() == n as i64);
    pl.push_claim("spread_equals_base_dim", rp.analytic_spread() == d as i64);
    pl.push_claim(
        "fiber_initial_degree",
        report.fiber_indeg == Some(d as u32 - 1),
    );

    let dual = work.jacobian_dual(&tower.rt)?;
    report.dual_rows = Some(matrix_strings(&dual));
    pl.push_claim("dual_rank_full", dual.rank_mod(None).rank == d);

    // Canonical-shape claims about the dual matrix and the complement
    // module.
    if canonical.is_some() {
        pl.push_claim("dual_first_row_straight", dual_first_row_straight(&dual, u));
        let sub_rows: Vec<usize> = (1..d).collect();
        let sub_cols: Vec<usize> = (u..n - 1).collect();
        let bprime = dual.submatrix(&sub_rows, &sub_cols)?;
        pl.push_claim("dual_complement_rank", bprime.rank_mod(None).rank == d - 1);

        let mod_cols: Vec<usize> = (u..n - 1).collect();
        let all_rows: Vec<usize> = (0..n).collect();
        let phi2 = work.submatrix(&all_rows, &mod_cols)?;
        let h2 = fitting_heights(&phi2, budget)?;
        pl.push_claim(
            "module_ladder",
            check_gs(&h2, u + 1, d - 1).satisfied,
        );
        pl.push_claim(
            "module_sym_dim",
            crate::blowup::symmetric_algebra_dimension(&phi2, budget)? == n as i64 + 1,
        );

        // Data point, no predicted value: does the fiber ideal coincide
        // with the maximal minors of the complement block?
        let bp_minors = IdealHandle::new(
            tower.rt.clone(),
            MonomialOrder::Grevlex,
            bprime.minors(d - 1),
        );
        let bp_gb = buchberger(&bp_minors, budget)?;
        pl.push(
            "fiber_equals_complement_minors",
            Flag::from_bool(gb_equal(rp.fiber_gb(), &bp_gb)),
            None,
        );
    } else {
        let reason = "no straightening available";
        pl.skip("dual_first_row_straight", reason, Some(true));
        pl.skip("dual_complement_rank", reason, Some(true));
        pl.skip("module_ladder", reason, Some(true));
        pl.skip("module_sym_dim", reason, Some(true));
        pl.skip("fiber_equals_complement_minors", reason, None);
    }

    let (fiber_type, expected_form) = structure_flags(&rp, work, &dual, d, budget)?;
    pl.push("fiber_type", Flag::from_bool(fiber_type), Some(true));
    pl.push("expected_form", Flag::from_bool(expected_form), Some(false));
    pl.push_claim(
        "dual_minors_in_fiber",
        dual.minors(d).iter().all(|m| rp.fiber_gb().contains(m)),
    );

    // Birationality of the fiber map, with an explicit witness.
    let rw = dual.rank_mod(Some(rp.fiber_gb()));
    report.rank_witness = Some((rw.rows.clone(), rw.cols.clone()));
    pl.push_claim("birational_rank", rw.rank >= d - 1);

    let inv = inverse_battery(pl, report, &dual, &rp)?;

    if d >= 3 {
        specialization_battery(pl, report, work, heights, &dual, &rp, &inv)?;
    } else {
        let reason = "specialization needs at least three base variables";
        for name in SPEC_FLAGS {
            pl.skip(name, reason, Some(true));
        }
    }
    Ok(())
}

fn fill_dims(report: &mut VerificationReport, rp: &ReesPresentation) {
    report.sym_dim = Some(rp.sym_dim());
    report.rees_dim = Some(rp.rees_dim());
    report.spread = Some(rp.analytic_spread());
    report.fiber_gens = Some(rp.fiber().generators().len());
    report.fiber_indeg = rp.fiber_initial_degree();
}

/// Is the first row of the dual matrix `t1..tu` padded by zeros?
fn dual_first_row_straight(dual: &LinearMatrix, u: usize) -> bool {
    let rt = dual.ring();
    let fiber = rt.role_vars(BlockRole::Fiber);
    (0..dual.cols()).all(|j| {
        let want = if j < u {
            Polynomial::var(rt, fiber[j])
        } else {
            Polynomial::zero(rt)
        };
        *dual.entry(0, j) == want
    })
}

/// Compare the blow-up ideal against its two candidate presentations:
/// column relations plus fiber relations, and column relations plus the
/// maximal minors of the dual matrix.
fn structure_flags(
    rp: &ReesPresentation,
    phi: &LinearMatrix,
    dual: &LinearMatrix,
    d: usize,
    budget: &Budget,
) -> Result<(bool, bool)> {
    let rt = rp.tower().rt.clone();
    let mut fiber_cand = sym_ideal_gens(phi, &rt)?;
    fiber_cand.extend(rp.fiber().generators().iter().cloned());
    let fiber_gb = buchberger(
        &IdealHandle::new(rt.clone(), MonomialOrder::Grevlex, fiber_cand),
        budget,
    )?;
    let fiber_type = gb_equal(rp.rees_gb(), &fiber_gb);

    let mut exp_cand = sym_ideal_gens(phi, &rt)?;
    exp_cand.extend(dual.minors(d));
    let exp_gb = buchberger(
        &IdealHandle::new(rt.clone(), MonomialOrder::Grevlex, exp_cand),
        budget,
    )?;
    let expected_form = gb_equal(rp.rees_gb(), &exp_gb);
    Ok((fiber_type, expected_form))
}

/// Per-column-selection data for the inverse analysis: which selections
/// of dual columns keep full rank modulo the fiber, and their signed
/// minors.
pub struct SelectionInfo {
    pub cols: Vec<usize>,
    pub included: bool,
    pub minors: Vec<Polynomial>,
}

fn inverse_battery(
    pl: &mut Pipeline,
    report: &mut VerificationReport,
    dual: &LinearMatrix,
    rp: &ReesPresentation,
) -> Result<Vec<SelectionInfo>> {
    let d = pl.d;
    let n = pl.n;
    let all_rows: Vec<usize> = (0..d).collect();
    let mut selections = Vec::new();
    for cols in combinations(n - 1, d - 1) {
        let sub = dual.submatrix(&all_rows, &cols)?;
        let included = sub.rank_mod(Some(rp.fiber_gb())).rank == d - 1;
        let minors = sub.signed_maximal_minors()?.as_slice().to_vec();
        selections.push(SelectionInfo {
            cols,
            included,
            minors,
        });
    }
    let reps: Vec<&SelectionInfo> = selections.iter().filter(|s| s.included).collect();
    report.inverse_count = Some(reps.len());
    report.excluded_count = Some(selections.len() - reps.len());
    pl.push_claim("inverse_nonempty", !reps.is_empty());

    // Any two representatives define the same point: all two-by-two
    // cross products vanish modulo the fiber ideal.
    let mut compatible = true;
    for a in 0..reps.len() {
        for b in (a + 1)..reps.len() {
            for i in 0..d {
                for j in (i + 1)..d {
                    let cross = reps[a].minors[i]
                        .mul(&reps[b].minors[j])?
                        .sub(&reps[a].minors[j].mul(&reps[b].minors[i])?)?;
                    if !rp.fiber_gb().contains(&cross) {
                        compatible = false;
                    }
                }
            }
        }
    }
    pl.push_claim("inverse_cross_compatible", compatible);

    let excluded_vanish = selections
        .iter()
        .filter(|s| !s.included)
        .all(|s| s.minors.iter().all(|m| rp.fiber_gb().contains(m)));
    pl.push_claim("excluded_minors_in_fiber", excluded_vanish);
    Ok(selections)
}

const SPEC_FLAGS: [&str; 6] = [
    "spec_avoidance",
    "spec_dual_formula",
    "spec_ladder",
    "spec_expected_form",
    "spec_det_identity",
    "spec_low_rank_dets_in_fiber",
];

fn random_scalar(field: &CoeffField, rng: &mut ChaCha8Rng) -> Scalar {
    match field.kind() {
        FieldKind::Prime(p) => field.from_i64(rng.gen_range(0..p as u64) as i64),
        FieldKind::Rationals => field.from_i64(rng.gen_range(-9i64..=9)),
    }
}

/// Specialize the first base variable along a random hyperplane that
/// stays off the low-size minor loci, and verify that the smaller ring
/// sees the classical structure plus the determinant identities tying
/// the specialized dual to the original one.
fn specialization_battery(
    pl: &mut Pipeline,
    report: &mut VerificationReport,
    work: &LinearMatrix,
    heights: &FittingHeights,
    dual: &LinearMatrix,
    rp: &ReesPresentation,
    selections: &[SelectionInfo],
) -> Result<()> {
    let budget = &pl.opts.budget;
    let (d, n) = (pl.d, pl.n);
    let ring = work.ring().clone();
    let field = *ring.field();
    let base = ring.role_vars(BlockRole::Base);
    let mut rng = ChaCha8Rng::seed_from_u64(pl.opts.seed);

    // Draw until the hyperplane raises the height of every inspected
    // minor ideal by one, certifying that it avoids their minimal
    // primes.
    let mut accepted: Option<Vec<Scalar>> = None;
    'draws: for _ in 0..pl.opts.spec_retry_cap {
        let coeffs: Vec<Scalar> = (1..d).map(|_| random_scalar(&field, &mut rng)).collect();
        let mut f_terms = vec![(Monomial::var(base[0]), field.one())];
        for (k, c) in coeffs.iter().enumerate() {
            if !field.is_zero(c) {
                f_terms.push((Monomial::var(base[k + 1]), field.neg(c)));
            }
        }
        let f = Polynomial::from_terms(&ring, f_terms);
        for j in (n - d + 2)..=(n - 1) {
            let mut gens = work.minors(j);
            gens.push(f.clone());
            let h = crate::groebner::height(
                &IdealHandle::new(ring.clone(), MonomialOrder::Grevlex, gens),
                budget,
            )?;
            if h != heights.height(j) + 1 {
                continue 'draws;
            }
        }
        accepted = Some(coeffs);
        break;
    }
    let Some(coeffs) = accepted else {
        for name in SPEC_FLAGS {
            pl.skip(name, "no admissible hyperplane found", Some(true));
        }
        return Ok(());
    };
    report.spec_coeffs = Some(render_scalars(&field, &coeffs));
    pl.push_claim("spec_avoidance", true);

    // The smaller ring and the specialized matrix.
    let kept: Vec<&str> = base[1..].iter().map(|&v| ring.name(v)).collect();
    let small = Ring::base_ring(field, &kept)?;
    let tower_s = ring_tower(&small, n)?;
    let phi_s = work.specialize_first(&coeffs, &small)?;
    let dual_s = phi_s.jacobian_dual(&tower_s.rt)?;

    // Row formula: specialized dual rows are the old rows folded with
    // the hyperplane coefficients.
    let mut formula_ok = true;
    for (i, ci) in coeffs.iter().enumerate() {
        for j in 0..n - 1 {
            let folded = dual
                .entry(i + 1, j)
                .add(&dual.entry(0, j).scale(ci))?
                .map_to_ring(&tower_s.rt)?;
            if folded != *dual_s.entry(i, j) {
                formula_ok = false;
            }
        }
    }
    pl.push_claim("spec_dual_formula", formula_ok);

    // Classical hypotheses over the smaller ring.
    let h_s = fitting_heights(&phi_s, budget)?;
    let ladder_s = phi_s.spans_block()
        && h_s.height(n - 1) == 2
        && check_gs_ideal(&h_s, d - 1).satisfied;
    pl.push_claim("spec_ladder", ladder_s);

    let rp_s = rees_ideal(&phi_s, &tower_s, budget)?;
    let mut cand = sym_ideal_gens(&phi_s, &tower_s.rt)?;
    cand.extend(dual_s.minors(d - 1));
    let cand_gb = buchberger(
        &IdealHandle::new(tower_s.rt.clone(), MonomialOrder::Grevlex, cand),
        budget,
    )?;
    pl.push_claim("spec_expected_form", gb_equal(rp_s.rees_gb(), &cand_gb));

    // Determinant identities, stated entirely inside the original
    // extended ring: for every column selection, the determinant of the
    // folded block equals the alternating combination of the signed
    // minors, and it falls into the fiber ideal when the selection was
    // excluded.
    let rt = &rp.tower().rt;
    let mut det_ok = true;
    let mut low_rank_ok = true;
    for sel in selections {
        let mut entries = Vec::with_capacity((d - 1) * (d - 1));
        for (i, ci) in coeffs.iter().enumerate() {
            for &j in &sel.cols {
                entries.push(
                    dual.entry(i + 1, j)
                        .add(&dual.entry(0, j).scale(ci))?,
                );
            }
        }
        let folded = LinearMatrix::new(
            rt.clone(),
            BlockRole::Fiber,
            d - 1,
            d - 1,
            entries,
        )?;
        let det = folded.det()?;
        let mut rhs = sel.minors[0].clone();
        for (k, c) in coeffs.iter().enumerate() {
            rhs = rhs.sub(&sel.minors[k + 1].scale(c))?;
        }
        if det != rhs {
            det_ok = false;
        }
        if !sel.included && !rp.fiber_gb().contains(&det) {
            low_rank_ok = false;
        }
    }
    pl.push_claim("spec_det_identity", det_ok);
    pl.push_claim("spec_low_rank_dets_in_fiber", low_rank_ok);
    Ok(())
}

// ---------------------------------------------------------------------------
// Instance generation

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub d: usize,
    pub n: usize,
    /// Straightening index the instance must realize.
    pub u: usize,
    pub field: CoeffField,
    pub seed: u64,
    pub max_attempts: usize,
}

#[derive(Debug)]
pub struct GeneratedInstance {
    pub phi: LinearMatrix,
    pub attempts: usize,
}

fn random_linear(
    ring: &RingRc,
    vars: &[usize],
    rng: &mut ChaCha8Rng,
) -> Polynomial {
    let field = *ring.field();
    let terms: Vec<(Monomial, Scalar)> = vars
        .iter()
        .map(|&v| (Monomial::var(v), random_scalar(&field, rng)))
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Random straightened instance: the first variable sits on the first
/// `u` diagonal entries and everything else is linear in the remaining
/// variables. Rejection sampling enforces the hypothesis battery and the
/// requested straightening index.
pub fn generate_instance(cfg: &GenConfig) -> Result<GeneratedInstance> {
    if cfg.d < 3 || cfg.n < cfg.d + 1 || cfg.u == 0 || cfg.u > cfg.n - cfg.d {
        return Err(Error::Hypothesis(format!(
            "no straightened instances with {} variables, {} generators, index {}",
            cfg.d, cfg.n, cfg.u
        )));
    }
    let names: Vec<String> = (1..=cfg.d).map(|i| format!("x{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = Ring::base_ring(cfg.field, &name_refs)?;
    let rest: Vec<usize> = (1..cfg.d).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let budget = Budget::default();

    for attempt in 1..=cfg.max_attempts {
        let mut entries = Vec::with_capacity(cfg.n * (cfg.n - 1));
        for i in 0..cfg.n {
            for j in 0..cfg.n - 1 {
                let mut e = random_linear(&ring, &rest, &mut rng);
                if i == j && i < cfg.u {
                    e = e
                        .add(&Polynomial::var(&ring, 0))
                        .expect("same ring");
                }
                entries.push(e);
            }
        }
        let phi = LinearMatrix::new(ring.clone(), BlockRole::Base, cfg.n, cfg.n - 1, entries)?;
        if !phi.spans_block() {
            continue;
        }
        let heights = fitting_heights(&phi, &budget)?;
        if heights.height(cfg.n - 1) != 2 {
            continue;
        }
        if !check_gs_ideal(&heights, cfg.d - 1).satisfied {
            continue;
        }
        match pivot_index(&heights, cfg.d) {
            Ok(u) if u == cfg.u => {
                return Ok(GeneratedInstance {
                    phi,
                    attempts: attempt,
                })
            }
            _ => continue,
        }
    }
    Err(Error::budget(
        "generate",
        format!("no instance within {} attempts", cfg.max_attempts),
    ))
}

/// Random fully generic instance whose ladder condition holds at the
/// base dimension; these are controls for the classical case.
pub fn generate_generic(
    d: usize,
    n: usize,
    field: CoeffField,
    seed: u64,
    max_attempts: usize,
) -> Result<GeneratedInstance> {
    if d < 2 || n < d + 1 {
        return Err(Error::Hypothesis(format!(
            "no generic instances with {d} variables and {n} generators"
        )));
    }
    let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = Ring::base_ring(field, &name_refs)?;
    let all: Vec<usize> = (0..d).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = Budget::default();

    for attempt in 1..=max_attempts {
        let entries: Vec<Polynomial> = (0..n * (n - 1))
            .map(|_| random_linear(&ring, &all, &mut rng))
            .collect();
        let phi = LinearMatrix::new(ring.clone(), BlockRole::Base, n, n - 1, entries)?;
        if !phi.spans_block() {
            continue;
        }
        let heights = fitting_heights(&phi, &budget)?;
        if heights.height(n - 1) != 2 {
            continue;
        }
        if max_gs(&heights, 1, d) != d {
            continue;
        }
        return Ok(GeneratedInstance {
            phi,
            attempts: attempt,
        });
    }
    Err(Error::budget(
        "generate",
        format!("no generic instance within {max_attempts} attempts"),
    ))
}
