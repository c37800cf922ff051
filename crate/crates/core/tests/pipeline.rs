//! One full verification per supported shape, plus cross-checks that tie
//! the pipeline's outputs together across modules.

use blowup_core::theorem::{generate_instance, generate_generic, GenConfig};
use blowup_core::{verify, CaseKind, CoeffField, Flag, ScalarMatrix, VerifyOptions};

fn f32003() -> CoeffField {
    CoeffField::prime(32003).unwrap()
}

fn check_drop_shape(d: usize, n: usize, u: usize, seed: u64) {
    let cfg = GenConfig {
        d,
        n,
        u,
        field: f32003(),
        seed,
        max_attempts: 500,
    };
    let inst = generate_instance(&cfg).expect("instance generation");
    let report = verify(&inst.phi, &VerifyOptions::default()).expect("verification");
    assert_eq!(report.case, CaseKind::HeightDrop, "({d},{n},{u})");
    assert_eq!(report.u, Some(u));
    assert!(
        report.consistent,
        "({d},{n},{u}) violations: {:?}",
        report.violations
    );
    assert_eq!(report.flag("fiber_type"), Some(&Flag::True));
    assert_eq!(report.flag("expected_form"), Some(&Flag::False));
    assert_eq!(report.sym_dim, Some(n as i64));
    assert_eq!(report.rees_dim, Some(d as i64 + 1));
    assert_eq!(report.spread, Some(d as i64));
    assert_eq!(report.fiber_indeg, Some(d as u32 - 1));
    for e in &report.checks {
        assert!(e.value.is_evaluated(), "({d},{n},{u}) skipped {}", e.name);
    }
}

#[test]
fn shape_3_4_1() {
    check_drop_shape(3, 4, 1, 101);
}

#[test]
fn shape_3_5_1() {
    check_drop_shape(3, 5, 1, 102);
}

#[test]
fn shape_3_5_2() {
    check_drop_shape(3, 5, 2, 103);
}

#[test]
fn shape_4_5_1() {
    check_drop_shape(4, 5, 1, 104);
}

#[test]
fn shape_4_6_1() {
    check_drop_shape(4, 6, 1, 105);
}

#[test]
fn generic_controls_take_the_expected_form() {
    for (d, n, seed) in [(3usize, 4usize, 7u64), (4, 5, 8)] {
        let inst = generate_generic(d, n, f32003(), seed, 500).expect("control generation");
        let report = verify(&inst.phi, &VerifyOptions::default()).expect("verification");
        assert_eq!(report.case, CaseKind::ExpectedForm, "({d},{n})");
        assert!(
            report.consistent,
            "({d},{n}) violations: {:?}",
            report.violations
        );
        assert_eq!(report.flag("expected_form"), Some(&Flag::True));
        let zero_fiber = report.fiber_gens == Some(0);
        assert!(zero_fiber || report.fiber_indeg == Some(d as u32));
    }
}

#[test]
fn coordinate_changes_do_not_move_the_verdict() {
    // Work over a small prime so the exhaustive point search stays cheap.
    let field = CoeffField::prime(101).unwrap();
    let cfg = GenConfig {
        d: 3,
        n: 4,
        u: 1,
        field,
        seed: 11,
        max_attempts: 500,
    };
    let inst = generate_instance(&cfg).expect("instance generation");
    let before = verify(&inst.phi, &VerifyOptions::default()).expect("verification");
    assert_eq!(before.case, CaseKind::HeightDrop);
    assert!(before.consistent, "violations: {:?}", before.violations);

    // Mix the distinguished variable into the second one. The rank-drop
    // point moves away from (1:0:0), so the pipeline has to rediscover it
    // by enumeration before it can straighten the matrix again.
    let one = field.one();
    let zero = field.zero();
    let t = ScalarMatrix::from_rows(
        field,
        vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![one.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero, one],
        ],
    )
    .unwrap();
    let moved = inst.phi.change_coords(&t).unwrap();
    let after = verify(&moved, &VerifyOptions::default()).expect("verification");
    assert_eq!(after.case, CaseKind::HeightDrop);
    assert_eq!(after.u, Some(1));
    assert!(after.point.is_some(), "the search should supply a rank point");
    assert!(after.consistent, "violations: {:?}", after.violations);
    assert_eq!(after.heights, before.heights);
    assert_eq!(after.spread, before.spread);
    assert_eq!(after.fiber_indeg, before.fiber_indeg);
    for e in &after.checks {
        assert!(e.value.is_evaluated(), "skipped {}", e.name);
    }
}
