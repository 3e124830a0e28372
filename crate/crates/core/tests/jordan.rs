use proptest::prelude::*;
use steinberg_core::jordan::checks;
use steinberg_core::{builtin, HermSpace, Scalar, ScalarMode, Status, TrialRng, BUILTIN_NAMES};

type Mat = Vec<Vec<Vec<Scalar>>>;

// Full 3x3 matrices with entries in the algebra; the Jordan product is the
// symmetrized matrix product with the factor 1/2.
fn to_mat(space: &HermSpace, x: &[Scalar]) -> Mat {
    (0..3).map(|i| (0..3).map(|j| space.entry(x, i, j)).collect()).collect()
}

fn mat_mul(space: &HermSpace, a: &Mat, b: &Mat) -> Mat {
    let alg = space.algebra();
    let mut out = vec![vec![alg.zero_coords(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let p = alg.mul_coords(&a[i][k], &b[k][j]);
                for (o, v) in out[i][j].iter_mut().zip(&p) {
                    *o += v;
                }
            }
        }
    }
    out
}

fn lin(a: &Mat, ca: &Scalar, b: &Mat, cb: &Scalar) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.iter().zip(y).map(|(s, t)| &(ca * s) + &(cb * t)).collect()).collect())
        .collect()
}

fn circ(space: &HermSpace, a: &Mat, b: &Mat) -> Mat {
    let half = ScalarMode::Rational.from_ratio(1, 2).unwrap();
    lin(&mat_mul(space, a, b), &half, &mat_mul(space, b, a), &half)
}

fn oracle_u(space: &HermSpace, x: &Mat, y: &Mat) -> Mat {
    let q = |n| ScalarMode::Rational.from_i64(n);
    let xy = circ(space, x, y);
    let x2 = circ(space, x, x);
    lin(&circ(space, x, &xy), &q(2), &circ(space, &x2, y), &q(-1))
}

fn oracle_triple(space: &HermSpace, x: &Mat, y: &Mat, z: &Mat) -> Mat {
    let one = ScalarMode::Rational.from_i64(1);
    let m1 = ScalarMode::Rational.from_i64(-1);
    let xz = lin(x, &one, z, &one);
    let a = oracle_u(space, &xz, y);
    let b = lin(&oracle_u(space, x, y), &one, &oracle_u(space, z, y), &one);
    lin(&a, &one, &b, &m1)
}

fn spaces() -> Vec<std::sync::Arc<HermSpace>> {
    BUILTIN_NAMES
        .iter()
        .map(|n| HermSpace::new(&builtin(n, ScalarMode::Rational).unwrap()).unwrap())
        .collect()
}

#[test]
fn dimensions() {
    let o = HermSpace::new(&builtin("octonions", ScalarMode::Rational).unwrap()).unwrap();
    assert_eq!(o.dim(), 27);
    assert_eq!(o.labels()[0], "1[11]");
    assert_eq!(o.labels()[3], "1[12]");
    let m = HermSpace::new(&builtin("matrix-2", ScalarMode::Rational).unwrap()).unwrap();
    assert_eq!(m.sym_dim(), 3);
    assert_eq!(m.dim(), 21);
}

#[test]
fn tables_agree_with_matrix_model() {
    let mut rng = TrialRng::new(11);
    for space in spaces() {
        for _ in 0..6 {
            let x = rng.vector(space.mode(), space.dim());
            let y = rng.vector(space.mode(), space.dim());
            let z = rng.vector(space.mode(), space.dim());
            let (mx, my, mz) = (to_mat(&space, &x), to_mat(&space, &y), to_mat(&space, &z));
            assert_eq!(to_mat(&space, &space.u_coords(&x, &y)), oracle_u(&space, &mx, &my), "{}", space.algebra().name());
            assert_eq!(to_mat(&space, &space.triple_coords(&x, &y, &z)), oracle_triple(&space, &mx, &my, &mz));
        }
    }
}

#[test]
fn jordan_pair_axioms_hold() {
    let mut rng = TrialRng::new(3);
    for space in spaces() {
        for rec in checks::check_jp_axioms(&space, 5, &mut rng, false).unwrap() {
            assert!(rec.passed(), "{} {rec:?}", space.algebra().name());
        }
        assert!(checks::identity_10_check(&space, 5, &mut rng).unwrap().passed());
    }
    for p in [2u64, 3] {
        let space = HermSpace::new(&builtin("octonions", ScalarMode::Modular(p)).unwrap()).unwrap();
        for rec in checks::check_jp_axioms(&space, 5, &mut rng, true).unwrap() {
            assert!(rec.passed(), "p = {p}: {rec:?}");
        }
    }
}

#[test]
fn table_rows() {
    let mut rng = TrialRng::new(5);
    let o = HermSpace::new(&builtin("octonions", ScalarMode::Rational).unwrap()).unwrap();
    let recs = checks::check_multiplication_table(&o, 3, &mut rng).unwrap();
    for r in &recs {
        if r.id == "table-t-half-row" {
            assert_eq!(r.status, Status::Inconclusive, "{r:?}");
            assert!(r.witness.is_some());
        } else {
            assert!(r.passed(), "{r:?}");
        }
    }
    let h = HermSpace::new(&builtin("quaternions", ScalarMode::Rational).unwrap()).unwrap();
    let recs = checks::check_multiplication_table(&h, 3, &mut rng).unwrap();
    assert!(recs.iter().all(|r| r.passed()), "{recs:?}");
    let o2 = HermSpace::new(&builtin("octonions", ScalarMode::Modular(2)).unwrap()).unwrap();
    let recs = checks::check_multiplication_table(&o2, 2, &mut rng).unwrap();
    assert_eq!(recs.iter().find(|r| r.id == "table-t-half-row").unwrap().status, Status::Skipped);
}

#[test]
fn bergmann_facts() {
    let mut rng = TrialRng::new(9);
    let o = HermSpace::new(&builtin("octonions", ScalarMode::Rational).unwrap()).unwrap();
    assert!(!checks::admissible_basis_pairs(&o).is_empty());
    for r in checks::bergmann_inverse_claim_check(&o).unwrap() {
        assert!(r.passed(), "{r:?}");
    }
    for r in checks::bergmann_lemma_checks(&o, 2, &mut rng).unwrap() {
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn mismatched_signs_are_rejected() {
    use steinberg_core::{u_op, HermElement, Sign};
    let o = HermSpace::new(&builtin("octonions", ScalarMode::Rational).unwrap()).unwrap();
    let x = HermElement::basis(&o, Sign::Plus, 0);
    assert!(u_op(&x, &x).is_err());
    assert!(u_op(&x, &x.flip()).is_ok());
}

fn small(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triple_is_symmetric_and_linearizes_u(x in small(27), y in small(27), z in small(27), k in -3i64..=3) {
        let space = HermSpace::new(&builtin("octonions", ScalarMode::Rational).unwrap()).unwrap();
        let m = ScalarMode::Rational;
        let v = |a: &[i64]| a.iter().map(|&n| m.from_i64(n)).collect::<Vec<_>>();
        let (x, y, z) = (v(&x), v(&y), v(&z));
        prop_assert_eq!(space.triple_coords(&x, &y, &z), space.triple_coords(&z, &y, &x));
        let two = m.from_i64(2);
        let u2: Vec<Scalar> = space.u_coords(&x, &y).iter().map(|s| &two * s).collect();
        prop_assert_eq!(space.triple_coords(&x, &y, &x), u2);
        let kk = m.from_i64(k);
        let kx: Vec<Scalar> = x.iter().map(|s| &kk * s).collect();
        let k2u: Vec<Scalar> = space.u_coords(&x, &y).iter().map(|s| &(&kk * &kk) * s).collect();
        prop_assert_eq!(space.u_coords(&kx, &y), k2u);
    }
}
