use std::sync::Arc;

use steinberg_core::groups::relations::{verify_a2_relations, verify_c3_commutators, C3Relation, Law};
use steinberg_core::groups::strong::{
    a2_simple_systems, c3_standard_system, form_ring_generation_check, reach, strongness_check, FormRingMode, Reach,
};
use steinberg_core::groups::{additivity_check, automorphism_check, factor, grading_check_group, no_collapsing_check};
use steinberg_core::{
    builtin, A2Group, Automorphism, C3Group, HermSpace, Matrix, Pe3, RootGroup, Scalar, ScalarMode, Sign, Status, Tkk, TrialRng, Weight,
};

fn c3(name: &str, mode: ScalarMode) -> C3Group {
    let h = HermSpace::new(&builtin(name, mode).unwrap()).unwrap();
    C3Group::new(&Tkk::new(&h).unwrap())
}

fn a2(name: &str, mode: ScalarMode) -> A2Group {
    A2Group::new(&Pe3::new(&builtin(name, mode).unwrap()).unwrap())
}

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

fn neg(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|s| -s).collect()
}

#[test]
fn exponentials() {
    let g = c3("octonions", ScalarMode::Rational);
    let k = g.tkk().clone();
    let mut rng = TrialRng::new(3);
    let x = rng.vector(ScalarMode::Rational, 27);
    assert!(g.exp(Sign::Plus, &vec![ScalarMode::Rational.zero(); 27]).is_identity());
    assert!(g.exp(Sign::Plus, &x).mul(&g.exp(Sign::Plus, &neg(&x))).is_identity());
    let y = rng.vector(ScalarMode::Rational, 27);
    let e = g.exp(Sign::Minus, &y);
    let block = e.matrix().block(k.minus_offset()..k.dim(), 0..27);
    assert_eq!(block, k.herm().q_matrix(&y));
    assert_eq!(e.inv().unwrap(), g.exp(Sign::Minus, &neg(&y)));
}

#[test]
fn root_groups_are_additive_and_faithful() {
    let mut rng = TrialRng::new(4);
    let g = c3("quaternions", ScalarMode::Rational);
    assert!(additivity_check(&g, 3, &mut rng).unwrap().passed());
    assert!(no_collapsing_check(&g).unwrap().passed());
    assert!(automorphism_check(&g, &g.roots()).unwrap().passed());
    let g = c3("octonions", ScalarMode::Rational);
    assert!(no_collapsing_check(&g).unwrap().passed());
    assert!(automorphism_check(&g, &[w("2w1"), w("w1+w3"), w("w2-w1")]).unwrap().passed());
    for r in g.roots() {
        let zero = vec![ScalarMode::Rational.zero(); g.param_basis(r).unwrap()[0].len()];
        assert!(g.root_element(r, &zero).unwrap().is_identity(), "{r}");
    }
    let a = a2("octonions", ScalarMode::Rational);
    assert!(additivity_check(&a, 5, &mut rng).unwrap().passed());
    assert!(no_collapsing_check(&a).unwrap().passed());
    assert!(automorphism_check(&a, &a.roots()).unwrap().passed());
}

#[test]
fn long_root_needs_symmetric_parameter() {
    let g = c3("octonions", ScalarMode::Rational);
    let i = g.tkk().herm().algebra().basis_coords(1);
    assert!(g.root_element(w("2w1"), &i).is_err());
    assert!(g.root_element(w("w1"), &i).is_err());
}

#[test]
fn corollary_forms_of_short_diff_elements() {
    let g = c3("octonions", ScalarMode::Rational);
    let h = g.tkk().herm().clone();
    let mut rng = TrialRng::new(5);
    let one = h.algebra().unit_coords();
    for (i, j) in [(0, 1), (1, 0), (2, 0), (1, 2)] {
        let r = rng.vector(ScalarMode::Rational, 8);
        let b = g.beta(&h.homogeneous(i, j, &r).unwrap(), &h.homogeneous(j, j, &one).unwrap()).unwrap();
        assert_eq!(b, g.short_diff(i, j, &r).unwrap(), "({i},{j})");
    }
    let s = rng.vector(ScalarMode::Rational, 8);
    let lhs = h.bergmann_matrix(&h.homogeneous(0, 0, &one).unwrap(), &h.homogeneous(0, 1, &s).unwrap());
    let rhs = h.bergmann_matrix(&h.homogeneous(0, 2, &one).unwrap(), &h.homogeneous(2, 1, &s).unwrap());
    assert_eq!(lhs, rhs);
}

// Over the trivial algebra V+ is the space of symmetric 3x3 matrices and
// G_{wi-wj}(s) acts on it by Z -> A Z A^T with A = I - s E_ij.
fn sym_matrix(z: &[Scalar]) -> [[Scalar; 3]; 3] {
    let m = ScalarMode::Rational;
    let mut out: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| m.zero()));
    for i in 0..3 {
        out[i][i] = z[i].clone();
    }
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        out[i][j] = z[3 + k].clone();
        out[j][i] = z[3 + k].clone();
    }
    out
}

fn mat3_mul(a: &[[Scalar; 3]; 3], b: &[[Scalar; 3]; 3]) -> [[Scalar; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = ScalarMode::Rational.zero();
            for k in 0..3 {
                s += &(&a[i][k] * &b[k][j]);
            }
            s
        })
    })
}

fn elementary(i: usize, j: usize, s: &Scalar) -> [[Scalar; 3]; 3] {
    let m = ScalarMode::Rational;
    std::array::from_fn(|r| std::array::from_fn(|c| if r == c { m.one() } else if (r, c) == (i, j) { s.clone() } else { m.zero() }))
}

fn transpose(a: &[[Scalar; 3]; 3]) -> [[Scalar; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

#[test]
fn short_diff_matches_gl3_oracle_and_fixes_relation_4_sign() {
    let m = ScalarMode::Rational;
    let g = c3("trivial", m);
    let (a, b) = (m.from_ratio(2, 3).unwrap(), m.from_i64(-5));
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let e = g.short_diff(i, j, &[a.clone()]).unwrap();
        let block = e.matrix().block(0..6, 0..6);
        let aa = elementary(i, j, &-&a);
        for t in 0..6 {
            let mut z = vec![m.zero(); 6];
            z[t] = m.one();
            let got = sym_matrix(&block.mul_vec(&z));
            let want = mat3_mul(&mat3_mul(&aa, &sym_matrix(&z)), &transpose(&aa));
            assert_eq!(got, want, "({i},{j}) basis {t}");
        }
    }
    // In GL3, [I - aE_12, I - bE_23] = I + abE_13 = I - (-ab)E_13 with
    // [g,h] = g^-1 h^-1 g h, so relation (4) carries the parameter -ab.
    let inv = |i, j, s: &Scalar| elementary(i, j, s);
    let comm = mat3_mul(&mat3_mul(&mat3_mul(&inv(0, 1, &a), &inv(1, 2, &b)), &elementary(0, 1, &-&a)), &elementary(1, 2, &-&b));
    assert_eq!(comm, elementary(0, 2, &(&a * &b)));
    let lhs = Automorphism::commutator(&g.short_diff(0, 1, &[a.clone()]).unwrap(), &g.short_diff(1, 2, &[b.clone()]).unwrap()).unwrap();
    assert_eq!(lhs, g.short_diff(0, 2, &[-(&a * &b)]).unwrap());
}

#[test]
fn c3_relations_quaternions() {
    let g = c3("quaternions", ScalarMode::Rational);
    let mut rng = TrialRng::new(6);
    let run = verify_c3_commutators(&g, &C3Relation::ALL, 1, &mut rng).unwrap();
    let status = |id: &str| run.checks.iter().find(|c| c.id == id).unwrap().status;
    for n in [1, 2, 3, 7] {
        assert_eq!(status(&format!("c3-relation-{n}")), Status::Pass, "relation {n}");
    }
    for n in [4, 5, 6] {
        assert_eq!(status(&format!("c3-relation-{n}")), Status::Fail, "relation {n}");
        assert_eq!(status(&format!("c3-relation-{n}-computed")), Status::Pass, "relation {n}");
        let rec = run.checks.iter().find(|c| c.id == format!("c3-relation-{n}")).unwrap();
        assert!(rec.witness.as_ref().unwrap()["lhs-factored"].is_array());
    }
    assert_eq!(status("c3-relation-1-symmetric"), Status::Pass);
    assert_eq!(run.commutators.len(), 7 * 6 + 3 * 6);
}

#[test]
fn c3_relations_octonions_one_order() {
    let m = ScalarMode::Rational;
    let g = c3("octonions", m);
    let mut rng = TrialRng::new(8);
    let (a, b) = (rng.vector(m, 8), rng.vector(m, 8));
    for idx in [[0, 1, 2], [2, 1, 0]] {
        for rel in [C3Relation::SumSum, C3Relation::DiffSumLong, C3Relation::DiffNegSum] {
            let lhs = rel.lhs(&g, idx, &a, &b).unwrap();
            let law = if rel == C3Relation::DiffNegSum { Law::Computed } else { Law::Printed };
            assert_eq!(lhs, rel.rhs(&g, law, idx, &a, &b).unwrap(), "{rel:?} {idx:?}");
        }
    }
}

#[test]
fn a2_relations_octonions() {
    let g = a2("octonions", ScalarMode::Rational);
    let mut rng = TrialRng::new(9);
    let run = verify_a2_relations(&g, 6, &mut rng).unwrap();
    for c in &run.checks {
        assert_eq!(c.status, Status::Pass, "{}", c.id);
    }
    let b = run.checks.iter().find(|c| c.id == "a2-relation-b").unwrap();
    assert!(b.note.as_ref().unwrap().starts_with("true law e_ik(ab)"));
    assert!(b.witness.as_ref().unwrap()["sum"].is_object());
}

#[test]
fn grading_sweep_small_rings() {
    let mut rng = TrialRng::new(10);
    let g = c3("trivial", ScalarMode::Modular(3));
    let rec = grading_check_group(&g, 1, &mut rng).unwrap();
    assert!(rec.passed(), "{rec:?}");
    assert_eq!(rec.trials, 18 * 16);
    let a = a2("quaternions", ScalarMode::Modular(3));
    assert!(grading_check_group(&a, 2, &mut rng).unwrap().passed());
    // 2w1 and w2+w3 have an empty cone, so they commute.
    let g = c3("octonions", ScalarMode::Modular(5));
    let x = g.root_element(w("2w1"), &g.param_basis(w("2w1")).unwrap()[0]).unwrap();
    let y = g.root_element(w("w2+w3"), &g.tkk().herm().algebra().basis_coords(3)).unwrap();
    assert!(Automorphism::commutator(&x, &y).unwrap().is_identity());
}

#[test]
fn relation_7_factor_reading() {
    let m = ScalarMode::Rational;
    let g = c3("octonions", m);
    let mut rng = TrialRng::new(11);
    let (r, s) = (rng.vector(m, 8), rng.vector(m, 8));
    let c = Automorphism::commutator(&g.root_element(w("w1-w2"), &r).unwrap(), &g.root_element(w("w1+w2"), &s).unwrap()).unwrap();
    let f = factor(&g, &c, &[w("2w1")]).unwrap().unwrap();
    let o = g.tkk().herm().algebra();
    let want: Vec<Scalar> = o
        .mul_coords(&r, &o.conj_coords(&s).unwrap())
        .iter()
        .zip(&o.mul_coords(&s, &o.conj_coords(&r).unwrap()))
        .map(|(p, q)| -(p + q))
        .collect();
    assert_eq!(f[0].1, want);
}

#[test]
fn strong_gradings() {
    let a = a2("trivial", ScalarMode::Modular(2));
    for s in a2_simple_systems() {
        assert!(strongness_check(&a, &s, 10_000).unwrap().passed(), "{}", s.name);
    }
    let g = c3("trivial", ScalarMode::Modular(3));
    assert!(strongness_check(&g, &c3_standard_system(), 100_000).unwrap().passed());
    // In characteristic 2 the commutator [G_{w2-w3}, G_{2w3}] loses its
    // w2+w3 component, so that root subgroup is out of reach.
    let g = c3("trivial", ScalarMode::Modular(2));
    let rec = strongness_check(&g, &c3_standard_system(), 100_000).unwrap();
    assert_eq!(rec.status, Status::Fail);
    assert_eq!(rec.witness.unwrap()["root"], "w2+w3");
    let g = c3("trivial", ScalarMode::Rational);
    assert_eq!(strongness_check(&g, &c3_standard_system(), 10).unwrap().status, Status::Skipped);
    let g = c3("quaternions", ScalarMode::Modular(3));
    let rec = strongness_check(&g, &c3_standard_system(), 50).unwrap();
    assert!(rec.passed(), "{rec:?}");
    assert_eq!(rec.note.as_deref(), Some("18 generators by commutator closure"));
    // With a tiny cap the word search gives up before exhausting the group.
    let g = c3("trivial", ScalarMode::Modular(2));
    assert_eq!(strongness_check(&g, &c3_standard_system(), 5).unwrap().status, Status::Inconclusive);
    let a = a2("trivial", ScalarMode::Modular(2));
    let one = [ScalarMode::Modular(2).one()];
    let gens = [a.e(0, 1, &one).unwrap(), a.e(1, 2, &one).unwrap()];
    assert_eq!(reach(&gens, &a.e(0, 2, &one).unwrap(), 1000).unwrap(), Reach::Word(4));
    assert_eq!(reach(&gens, &a.e(1, 0, &one).unwrap(), 1000).unwrap(), Reach::Unreachable);
}

#[test]
fn form_ring_generation() {
    let mut rng = TrialRng::new(12);
    let ex = FormRingMode::Exhaustive { max_elements: 100_000 };
    let herm = |name: &str, m: u64| HermSpace::new(&builtin(name, ScalarMode::Modular(m)).unwrap()).unwrap();
    let h = herm("octonions", 3);
    let one = vec![h.algebra().unit_coords()];
    let rec = form_ring_generation_check(&h, &one, ex, &mut rng).unwrap();
    assert!(rec.passed());
    assert_eq!(rec.note.as_deref(), Some("3 elements generated, |Sym| = 3"));
    assert!(form_ring_generation_check(&h, &[], ex, &mut rng).unwrap().passed());
    let h = herm("trivial", 5);
    assert!(form_ring_generation_check(&h, &[h.algebra().unit_coords()], ex, &mut rng).unwrap().passed());
    // Mod 2 the involution is trivial on octonions, so Sym is everything and
    // {s s*} only reaches the norms.
    let h = herm("octonions", 2);
    let rec = form_ring_generation_check(&h, &[h.algebra().unit_coords()], ex, &mut rng).unwrap();
    assert_eq!(rec.status, Status::Fail);
    let tight = FormRingMode::Exhaustive { max_elements: 10 };
    assert!(form_ring_generation_check(&h, &[], tight, &mut rng).is_err());
    let h: Arc<_> = HermSpace::new(&builtin("matrix-2", ScalarMode::Rational).unwrap()).unwrap();
    let rec = form_ring_generation_check(&h, &[h.algebra().unit_coords()], FormRingMode::Sampling { trials: 6 }, &mut rng).unwrap();
    assert!(rec.passed(), "{rec:?}");
}

#[test]
fn commutator_records_are_reproducible() {
    let g = c3("trivial", ScalarMode::Modular(5));
    let run = |seed| verify_c3_commutators(&g, &C3Relation::ALL, 2, &mut TrialRng::new(seed)).unwrap().commutators;
    let (x, y) = (run(1), run(1));
    assert_eq!(serde_json::to_string(&x).unwrap(), serde_json::to_string(&y).unwrap());
    assert_eq!(x[0].lhs_hash.len(), 64);
    let id = Matrix::identity(ScalarMode::Modular(5), 21);
    let id_hash = Automorphism::new(steinberg_core::Family::Tkk, id, None).hash_hex();
    assert!(x.iter().any(|r| r.lhs_hash != id_hash));
}
