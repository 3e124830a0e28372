use std::sync::Arc;

use proptest::prelude::*;
use steinberg_core::jordan::checks::admissible_basis_pairs;
use steinberg_core::{builtin, HermElement, HermSpace, Scalar, ScalarMode, Sign, Tkk, TrialRng, Weight};

fn tkk(name: &str, mode: ScalarMode) -> Arc<Tkk> {
    let h = HermSpace::new(&builtin(name, mode).unwrap()).unwrap();
    Tkk::new(&h).unwrap()
}

// Known dimensions of the resulting Lie algebras: Sym3 gives sp6, H3 over
// quaternions so12, over 2x2 matrices with transpose sp12, over octonions e7.
#[test]
fn dimensions_match_classical_lie_algebras() {
    for (name, plus, total) in [("trivial", 6, 21), ("quaternions", 15, 66), ("matrix-2", 21, 78), ("octonions", 27, 133), ("split-octonions", 27, 133)] {
        let k = tkk(name, ScalarMode::Rational);
        assert_eq!(k.herm().dim(), plus, "{name}");
        assert_eq!(k.dim(), total, "{name}");
        assert_eq!(k.l0_dim(), total - 2 * plus, "{name}");
    }
    assert_eq!(tkk("octonions", ScalarMode::Rational).l0_dim(), 79);
}

#[test]
fn trivial_l0_is_gl3() {
    // gl3 acts faithfully on symmetric matrices by X -> AX + XA^T.
    let k = tkk("trivial", ScalarMode::Rational);
    assert_eq!(k.l0_dim(), 9);
    assert!(matches!(k.l0_origins()[0], steinberg_core::L0Origin::Zeta));
}

#[test]
fn octonion_root_spaces() {
    let k = tkk("octonions", ScalarMode::Rational);
    let w = |s: &str| s.parse::<Weight>().unwrap();
    assert_eq!(k.root_space(w("2w1")).unwrap().len(), 1);
    assert_eq!(k.lie().labels()[k.root_space(w("2w1")).unwrap()[0]], "1[11]+");
    assert_eq!(k.root_space(w("w1+w2")).unwrap().len(), 8);
    assert_eq!(k.root_space(w("-w2-w3")).unwrap().len(), 8);
    assert_eq!(k.root_space(w("w1-w3")).unwrap().len(), 8);
    assert_eq!(k.toral_part().len(), 31);
    assert!(k.root_space(w("w1")).is_err());
    assert!(k.check_root_dimensions().passed());
    let total: usize = k.root_dimensions().iter().map(|(_, n)| n).sum();
    assert_eq!(total, 133);
}

#[test]
fn structure_checks() {
    let mut rng = TrialRng::new(21);
    let k = tkk("octonions", ScalarMode::Rational);
    assert!(k.lie().alternating_check().passed());
    assert!(k.lie().jacobi_check(10, &mut rng).unwrap().passed());
    assert!(k.check_double_bracket(10, &mut rng).unwrap().passed());
    assert!(k.check_ad_cubed().unwrap().passed());
    assert!(k.check_grading().passed());
    let pairs = admissible_basis_pairs(k.herm());
    assert!(k.check_ad_ad(&pairs[..40]).unwrap().passed());
}

#[test]
fn grading_over_z5_split_octonions() {
    let k = tkk("split-octonions", ScalarMode::Modular(5));
    assert_eq!(k.dim(), 133);
    assert!(k.check_grading().passed());
    let mut rng = TrialRng::new(2);
    assert!(k.lie().jacobi_check(5, &mut rng).unwrap().passed());
}

#[test]
fn derivations() {
    let mut rng = TrialRng::new(8);
    let k = tkk("octonions", ScalarMode::Rational);
    let mode = ScalarMode::Rational;
    let mut zeta = vec![mode.zero(); k.l0_dim()];
    zeta[0] = mode.one();
    assert!(k.check_derivation(&zeta, 4, &mut rng).unwrap().passed());
    assert!(k.check_derivation(&vec![mode.zero(); k.l0_dim()], 2, &mut rng).unwrap().passed());
    let h = k.herm();
    let x = HermElement::from_coords(h, Sign::Plus, rng.vector(mode, 27)).unwrap();
    let y = HermElement::from_coords(h, Sign::Minus, rng.vector(mode, 27)).unwrap();
    let d = k.inner_derivation(&x, &y).unwrap();
    assert!(k.check_derivation(&k.l0_part(&d), 4, &mut rng).unwrap().passed());
    assert!(k.inner_derivation(&y, &x).is_err());
    let zero = HermElement::zero(h, Sign::Plus);
    assert!(k.inner_derivation(&zero, &y).unwrap().iter().all(|s| s.is_zero()));
}

#[test]
fn inner_derivation_acts_by_d() {
    let k = tkk("octonions", ScalarMode::Rational);
    let h = k.herm();
    let o = h.algebra();
    let one = steinberg_core::AlgebraElement::one(o);
    let i = steinberg_core::AlgebraElement::basis(o, 1);
    let x = HermElement::at(h, Sign::Plus, 0, 1, &one).unwrap();
    let y = HermElement::at(h, Sign::Minus, 0, 1, &i).unwrap();
    let z = HermElement::at(h, Sign::Plus, 0, 2, &one).unwrap();
    let dl = k.inner_derivation(&x, &y).unwrap();
    let got = k.lie().bracket(&dl, &k.embed_element(&z));
    let want = steinberg_core::triple(&x, &y, &z).unwrap();
    assert_eq!(k.component(Sign::Plus, &got), want.coords());
    assert!(!want.is_zero());
}

fn small(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bracket_is_bilinear_and_alternating(x in small(66), y in small(66), c in -3i64..=3) {
        let k = tkk("quaternions", ScalarMode::Rational);
        let m = ScalarMode::Rational;
        let v = |a: &[i64]| a.iter().map(|&n| m.from_i64(n)).collect::<Vec<Scalar>>();
        let (x, y) = (v(&x), v(&y));
        let l = k.lie();
        prop_assert!(l.bracket(&x, &x).iter().all(|s| s.is_zero()));
        let xy = l.bracket(&x, &y);
        let yx = l.bracket(&y, &x);
        prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
        let cc = m.from_i64(c);
        let cx: Vec<Scalar> = x.iter().map(|s| &cc * s).collect();
        let cxy: Vec<Scalar> = xy.iter().map(|s| &cc * s).collect();
        prop_assert_eq!(l.bracket(&cx, &y), cxy);
    }
}
