use steinberg_core::pe3::{MatrixModel, Pe3};
use steinberg_core::{builtin, ScalarMode, Status, TrialRng, Weight};

fn pe3(name: &str, mode: ScalarMode) -> std::sync::Arc<Pe3> {
    Pe3::new(&builtin(name, mode).unwrap()).unwrap()
}

// Associative algebras: pe3 is e3 modulo its center, and e3 is the literal
// commutator closure of the off-diagonal matrices.
#[test]
fn associative_cases_match_matrix_model() {
    for (name, dim) in [("trivial", 8), ("quaternions", 35), ("matrix-2", 35)] {
        let a = builtin(name, ScalarMode::Rational).unwrap();
        let mm = MatrixModel::new(&a).unwrap();
        let center = mm.center().unwrap();
        let p = Pe3::new(&a).unwrap();
        assert_eq!(p.dim(), mm.dim() - center.len(), "{name}");
        assert_eq!(p.dim(), dim, "{name}");
        assert!(mm.center_check().unwrap().passed());
        let mut rng = TrialRng::new(1);
        assert!(mm.jacobi_report(5, &mut rng).unwrap().passed());
    }
}

#[test]
fn octonions_give_dimension_78() {
    let p = pe3("octonions", ScalarMode::Rational);
    assert_eq!(p.dim(), 78);
    assert_eq!(p.weight_zero_dim(), 30);
    assert_eq!(p.lie().weight_space(Weight([1, -1, 0])).len(), 8);
    let mut rng = TrialRng::new(4);
    assert!(p.lie().alternating_check().passed());
    assert!(p.lie().jacobi_check(20, &mut rng).unwrap().passed());
    assert!(p.check_grading().passed());
}

#[test]
fn octonion_matrix_model_is_not_lie() {
    let o = builtin("octonions", ScalarMode::Rational).unwrap();
    let mm = MatrixModel::new(&o).unwrap();
    let mut rng = TrialRng::new(6);
    let r = mm.jacobi_report(5, &mut rng).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(mm.center_check().unwrap().passed());
}

#[test]
fn steinberg_brackets() {
    let p = pe3("octonions", ScalarMode::Rational);
    let o = p.algebra();
    let mut rng = TrialRng::new(2);
    let (a, b) = (rng.vector(o.mode(), 8), rng.vector(o.mode(), 8));
    let l = p.lie();
    let x = p.off_element(0, 1, &a).unwrap();
    let got = l.bracket(&x, &p.off_element(1, 2, &b).unwrap());
    assert_eq!(got, p.off_element(0, 2, &o.mul_coords(&a, &b)).unwrap());
    let got = l.bracket(&x, &p.off_element(2, 0, &b).unwrap());
    let ba: Vec<_> = o.mul_coords(&b, &a).iter().map(|s| -s).collect();
    assert_eq!(got, p.off_element(2, 1, &ba).unwrap());
    assert!(l.bracket(&x, &p.off_element(0, 2, &b).unwrap()).iter().all(|s| s.is_zero()));
    assert!(l.bracket(&x, &p.off_element(2, 1, &b).unwrap()).iter().all(|s| s.is_zero()));
    assert!(p.off_element(1, 1, &a).is_err());
}

#[test]
fn modular_and_refusals() {
    assert_eq!(pe3("split-octonions", ScalarMode::Modular(5)).dim(), 78);
    // In characteristic 3 the weight-zero part loses the central element.
    assert_eq!(pe3("split-octonions", ScalarMode::Modular(3)).dim(), 77);
    assert!(Pe3::new(&builtin("octonions", ScalarMode::Modular(6)).unwrap()).is_err());
}
