use std::f64::consts::PI;
use std::time::Instant;

use steinberg_core::spectral::{
    family_generators, generator_sweep, probe, spectral_gap, FiniteGroupTable, GeneratorSet, GroupFamily, ORACLE_TOL, RESIDUAL_TOL,
};
use steinberg_core::{builtin, Error, ScalarMode};

/// Number of 3x3 matrices over `Z/p` with determinant 1, by brute force.
fn sl3_order(p: i64) -> usize {
    let mut count = 0;
    for code in 0..p.pow(9) {
        let mut m = [0i64; 9];
        let mut c = code;
        for x in &mut m {
            *x = c % p;
            c /= p;
        }
        let det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
        if det.rem_euclid(p) == 1 {
            count += 1;
        }
    }
    count
}

fn a2_table(name: &str, m: u64) -> FiniteGroupTable {
    let a = builtin(name, ScalarMode::Modular(m)).unwrap();
    let gens = family_generators(&a, GroupFamily::A2, GeneratorSet::Unit).unwrap();
    FiniteGroupTable::enumerate(&gens, 500_000).unwrap()
}

#[test]
fn a2_trivial_mod_2_is_sl3_f2() {
    assert_eq!(sl3_order(2), 168);
    let t0 = Instant::now();
    let t = a2_table("trivial", 2);
    assert_eq!(t.order(), sl3_order(2));
    assert_eq!(t.generators().len(), 12);
    assert!(t.is_consistent());
    let r = spectral_gap(&t, 0);
    let oracle = r.oracle.clone().unwrap();
    assert!(oracle.agrees, "{r:?}");
    assert!((r.lambda.unwrap() - oracle.lambda).abs() <= ORACLE_TOL);
    assert!(r.gap.unwrap() > 0.0);
    // Golden value from the dense eigensolver.
    assert!((r.lambda.unwrap() - 0.735_702_260_395_5).abs() < 1e-9);
    assert!(r.residual.unwrap() <= RESIDUAL_TOL);
    assert!(r.flag.is_none());
    assert!(t0.elapsed().as_secs() < 30);
}

#[test]
fn a2_trivial_mod_3_is_sl3_f3() {
    // The centre of SL3 over F3 is trivial, so the adjoint image has the
    // full order.
    let t = a2_table("trivial", 3);
    assert_eq!(t.order(), sl3_order(3));
    assert_eq!(t.order(), 5616);
    let r = spectral_gap(&t, 1);
    assert!(r.oracle.is_none());
    assert!(r.gap.unwrap() > 0.0);
    assert!(r.residual.unwrap() <= RESIDUAL_TOL);
}

#[test]
fn cyclic_groups_match_circulant_eigenvalues() {
    for n in [5usize, 7, 12] {
        let r = spectral_gap(&FiniteGroupTable::cyclic(n), 3);
        let two = (2.0 * PI / n as f64).cos();
        assert!((r.lambda_two.unwrap() - two).abs() < 1e-8, "n={n}: {r:?}");
        assert!(r.oracle.as_ref().unwrap().agrees);
        if n % 2 == 0 {
            assert_eq!(r.flag.as_deref(), Some("bipartite"));
            assert!(r.gap.unwrap() < 1e-9);
        } else {
            assert!((r.lambda.unwrap() - (PI / n as f64).cos()).abs() < 1e-8);
        }
    }
}

#[test]
fn degenerate_and_capped_instances() {
    let t = FiniteGroupTable::enumerate(&[], 10).unwrap();
    assert_eq!(t.order(), 1);
    let r = spectral_gap(&t, 0);
    assert!(r.gap.is_none() && r.flag.is_some());
    let a = builtin("trivial", ScalarMode::Modular(2)).unwrap();
    let gens = family_generators(&a, GroupFamily::C3, GeneratorSet::Unit).unwrap();
    assert!(matches!(FiniteGroupTable::enumerate(&gens, 1000), Err(Error::CapExceeded { .. })));
    let q = builtin("trivial", ScalarMode::Rational).unwrap();
    let gens = family_generators(&q, GroupFamily::A2, GeneratorSet::Unit).unwrap();
    assert!(FiniteGroupTable::enumerate(&gens, 10).is_err());
}

#[test]
fn enumeration_is_deterministic() {
    let (x, y) = (a2_table("trivial", 2), a2_table("trivial", 2));
    assert_eq!(x, y);
    let a = builtin("trivial", ScalarMode::Modular(2)).unwrap();
    let gens = family_generators(&a, GroupFamily::A2, GeneratorSet::Unit).unwrap();
    let r1 = serde_json::to_string(&probe(&a, GroupFamily::A2, &gens, "unit", 1000, 4).unwrap()).unwrap();
    let r2 = serde_json::to_string(&probe(&a, GroupFamily::A2, &gens, "unit", 1000, 4).unwrap()).unwrap();
    assert_eq!(r1, r2);
}

#[test]
fn sweeps() {
    assert!(generator_sweep("trivial", GroupFamily::A2, &[], 1000, 0).is_empty());
    let rows = generator_sweep("quaternions", GroupFamily::A2, &[2], 100, 0);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.error.is_some()));
    let rows = generator_sweep("trivial", GroupFamily::A2, &[2, 3], 10_000, 0);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].report.as_ref().unwrap().order, 168);
    assert_eq!(rows[2].report.as_ref().unwrap().order, 5616);
}
