use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use steinberg_core::groups::RootGroup;
use steinberg_core::spectral::{family_generators, spectral_gap, FiniteGroupTable, GeneratorSet, GroupFamily};
use steinberg_core::{builtin, Automorphism, C3Group, HermSpace, ScalarMode, Tkk, TrialRng, Weight};

fn octonions(c: &mut Criterion) {
    let o = builtin("octonions", ScalarMode::Rational).unwrap();
    let mut rng = TrialRng::new(1);
    let (a, b) = (rng.vector(o.mode(), 8), rng.vector(o.mode(), 8));
    c.bench_function("octonion_mul", |bench| bench.iter(|| o.mul_coords(black_box(&a), black_box(&b))));
}

fn jordan(c: &mut Criterion) {
    let h = HermSpace::new(&builtin("octonions", ScalarMode::Rational).unwrap()).unwrap();
    let mut rng = TrialRng::new(2);
    let (x, y, z) = (rng.vector(h.mode(), 27), rng.vector(h.mode(), 27), rng.vector(h.mode(), 27));
    c.bench_function("albert_u_product", |bench| bench.iter(|| h.u_coords(black_box(&x), black_box(&y))));
    c.bench_function("albert_triple", |bench| bench.iter(|| h.triple_coords(&x, &y, black_box(&z))));
    c.bench_function("albert_q_matrix", |bench| bench.iter(|| h.q_matrix(black_box(&x))));
}

fn lie(c: &mut Criterion) {
    let h = HermSpace::new(&builtin("octonions", ScalarMode::Rational).unwrap()).unwrap();
    let tkk = Tkk::new(&h).unwrap();
    let mut rng = TrialRng::new(3);
    let (x, y) = (rng.vector(h.mode(), tkk.dim()), rng.vector(h.mode(), tkk.dim()));
    c.bench_function("tkk_bracket_e7", |bench| bench.iter(|| tkk.lie().bracket(black_box(&x), black_box(&y))));
}

fn groups(c: &mut Criterion) {
    let h = HermSpace::new(&builtin("octonions", ScalarMode::Modular(5)).unwrap()).unwrap();
    let g = C3Group::new(&Tkk::new(&h).unwrap());
    let mut rng = TrialRng::new(4);
    let (r, s) = (Weight::short(0, 1, 1, -1), Weight::short(1, 1, 2, 1));
    let (a, b) = (g.random_param(r, &mut rng).unwrap(), g.random_param(s, &mut rng).unwrap());
    c.bench_function("c3_root_element", |bench| bench.iter(|| g.root_element(r, black_box(&a)).unwrap()));
    let (x, y) = (g.root_element(r, &a).unwrap(), g.root_element(s, &b).unwrap());
    c.bench_function("c3_commutator", |bench| bench.iter(|| Automorphism::commutator(black_box(&x), &y).unwrap()));
}

fn spectral(c: &mut Criterion) {
    let a = builtin("trivial", ScalarMode::Modular(2)).unwrap();
    let gens = family_generators(&a, GroupFamily::A2, GeneratorSet::Unit).unwrap();
    let mut group = c.benchmark_group("spectral");
    group.sample_size(10);
    group.bench_function("enumerate_sl3_f2", |bench| bench.iter(|| FiniteGroupTable::enumerate(black_box(&gens), 1000).unwrap()));
    let table = FiniteGroupTable::enumerate(&gens, 1000).unwrap();
    group.bench_function("gap_sl3_f2", |bench| bench.iter(|| spectral_gap(black_box(&table), 0)));
    group.finish();
}

criterion_group!(benches, octonions, jordan, lie, groups, spectral);
criterion_main!(benches);
