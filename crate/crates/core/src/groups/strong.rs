//! Generation of root subgroups from simple ones, and generation of the
//! symmetric elements as a form ring.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde_json::json;
use sha2::{Digest, Sha256};

use super::{fmt, skipped, Automorphism, Factorer, RootGroup};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::jordan::Herm;
use crate::linalg::{Matrix, SparseVec, SpanBasis};
use crate::random::TrialRng;
use crate::report::{CheckRecord, Status};
use crate::roots::{open_cone, Weight};
use crate::scalar::{Scalar, ScalarMode};

/// A choice of simple roots and the positive roots they span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleSystem {
    pub name: String,
    pub simple: Vec<Weight>,
    pub positive: Vec<Weight>,
}

impl SimpleSystem {
    /// Positive roots that are not simple, by height.
    pub fn targets(&self) -> Vec<Weight> {
        let mut t: Vec<Weight> = self.positive.iter().copied().filter(|g| !self.simple.contains(g)).collect();
        t.sort_by_key(|g| (self.height(*g), *g));
        t
    }

    /// Sum of the coefficients over the simple roots (each at most 3).
    pub fn height(&self, g: Weight) -> i32 {
        let n = self.simple.len();
        let mut best = None;
        let mut c = vec![0i32; n];
        loop {
            let mut w = Weight::ZERO;
            for (k, s) in self.simple.iter().enumerate() {
                w = w + s.scaled(c[k]);
            }
            if w == g {
                let h: i32 = c.iter().sum();
                best = Some(best.map_or(h, |b: i32| b.min(h)));
            }
            let mut k = 0;
            while k < n {
                c[k] += 1;
                if c[k] <= 3 {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        best.unwrap_or(i32::MAX)
    }
}

/// The six simple systems `{w_a - w_b, w_b - w_c}` of `A2`, one per ordering
/// of the indices.
pub fn a2_simple_systems() -> Vec<SimpleSystem> {
    super::relations::INDEX_ORDERS
        .iter()
        .map(|&[a, b, c]| {
            let s1 = Weight::short(a, 1, b, -1);
            let s2 = Weight::short(b, 1, c, -1);
            SimpleSystem {
                name: format!("w{}-w{}, w{}-w{}", a + 1, b + 1, b + 1, c + 1),
                simple: vec![s1, s2],
                positive: vec![s1, s2, s1 + s2],
            }
        })
        .collect()
}

/// The standard simple system `{w1 - w2, w2 - w3, 2w3}` of `C3`.
pub fn c3_standard_system() -> SimpleSystem {
    let mut positive = Vec::new();
    for i in 0..3 {
        positive.push(Weight::long(i, 1));
        for j in i + 1..3 {
            positive.push(Weight::short(i, 1, j, -1));
            positive.push(Weight::short(i, 1, j, 1));
        }
    }
    SimpleSystem {
        name: "w1-w2, w2-w3, 2w3".into(),
        simple: vec![Weight::short(0, 1, 1, -1), Weight::short(1, 1, 2, -1), Weight::long(2, 1)],
        positive,
    }
}

/// Result of a breadth-first search for an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reach {
    /// Found as a word of this length.
    Word(usize),
    /// The whole generated group was enumerated without meeting the target.
    Unreachable,
    /// The search visited `cap` elements first.
    CapExceeded,
}

/// Memory allowed for the search frontier and visited set.
const SEARCH_BYTES: usize = 1 << 30;

/// Breadth-first search of the group generated by `gens` for `target`. The
/// visited set keeps SHA-256 digests of the matrices; the effective cap also
/// respects [`SEARCH_BYTES`].
pub fn reach(gens: &[Automorphism], target: &Automorphism, cap: usize) -> Result<Reach> {
    if target.is_identity() {
        return Ok(Reach::Word(0));
    }
    let Some(first) = gens.first() else { return Ok(Reach::Unreachable) };
    let n = first.matrix().rows();
    let per = n * n * std::mem::size_of::<Scalar>() + 64;
    let cap = cap.min(SEARCH_BYTES / per).max(1);
    let digest = |m: &Matrix| -> [u8; 32] { Sha256::digest(m.canonical_bytes()).into() };
    let key = digest(target.matrix());
    let id = Matrix::identity(first.matrix().mode(), n);
    let mut seen: HashSet<[u8; 32]> = HashSet::from([digest(&id)]);
    let mut queue = VecDeque::from([(id, 0usize)]);
    while let Some((g, depth)) = queue.pop_front() {
        for s in gens {
            let h = g.mul(s.matrix());
            let k = digest(&h);
            if k == key {
                return Ok(Reach::Word(depth + 1));
            }
            if seen.insert(k) {
                if seen.len() > cap {
                    return Ok(Reach::CapExceeded);
                }
                queue.push_back((h, depth + 1));
            }
        }
    }
    Ok(Reach::Unreachable)
}

/// Parameters of each positive root subgroup known to lie in the group
/// generated by the simple root subgroups.
struct Reached {
    spans: BTreeMap<Weight, SpanBasis>,
    vectors: BTreeMap<Weight, Vec<Vec<Scalar>>>,
}

impl Reached {
    fn contains(&self, g: Weight, p: &[Scalar]) -> bool {
        p.iter().all(|x| x.is_zero()) || self.spans.get(&g).is_some_and(|s| s.contains(&SparseVec::from_dense(p)))
    }

    fn insert(&mut self, g: Weight, p: Vec<Scalar>) -> bool {
        let span = self.spans.get_mut(&g).expect("positive root");
        if span.insert(&SparseVec::from_dense(&p)).is_some() {
            self.vectors.entry(g).or_default().push(p);
            true
        } else {
            false
        }
    }
}

/// Commutators of reached root elements. When the commutator factors over
/// the open cone and all factors but one are reached, the remaining factor is
/// reached too. Reached parameters are tracked as subspaces, so the scalars
/// must form a field.
fn commutator_closure<G: RootGroup + ?Sized>(group: &G, system: &SimpleSystem) -> Result<Reached> {
    let mode = group.lie().mode();
    let n = system.positive.iter().map(|&g| group.param_basis(g).map(|b| b.first().map_or(0, |v| v.len()))).collect::<Result<Vec<_>>>()?;
    let mut reached = Reached { spans: BTreeMap::new(), vectors: BTreeMap::new() };
    for (&g, &len) in system.positive.iter().zip(&n) {
        reached.spans.insert(g, SpanBasis::new(mode, len)?);
    }
    for &s in &system.simple {
        for b in group.param_basis(s)? {
            reached.insert(s, b);
        }
    }
    let roots = group.roots();
    let mut factorer = Factorer::new(group);
    let mut done: HashSet<(Weight, usize, Weight, usize)> = HashSet::new();
    let mut mixed: BTreeMap<Vec<Weight>, Vec<Vec<Scalar>>> = BTreeMap::new();
    let mut wanted = Vec::new();
    for g in system.targets() {
        for b in group.param_basis(g)? {
            wanted.push((g, b));
        }
    }
    loop {
        let mut changed = false;
        for (ai, &a) in system.positive.iter().enumerate() {
            if wanted.iter().all(|(g, b)| reached.contains(*g, b)) {
                return Ok(reached);
            }
            for &b in &system.positive[ai + 1..] {
                let cone: Vec<Weight> = open_cone(a, b, &roots).into_iter().map(|x| x.2).collect();
                if cone.is_empty() {
                    continue;
                }
                let (na, nb) = (reached.vectors.get(&a).map_or(0, Vec::len), reached.vectors.get(&b).map_or(0, Vec::len));
                // Negated parameters separate linear from quadratic terms.
                for i in 0..2 * na {
                    for j in 0..nb {
                        if !done.insert((a, i, b, j)) {
                            continue;
                        }
                        let s = &reached.vectors[&a][i / 2];
                        let s: Vec<Scalar> = if i % 2 == 0 { s.clone() } else { s.iter().map(|x| -x).collect() };
                        let x = group.root_element(a, &s)?;
                        let y = group.root_element(b, &reached.vectors[&b][j])?;
                        let c = Automorphism::commutator(&x, &y)?;
                        let Some(factors) = factorer.factor(&c, &cone)? else { continue };
                        let open: Vec<&(Weight, Vec<Scalar>)> = factors.iter().filter(|(g, p)| !reached.contains(*g, p)).collect();
                        match open.as_slice() {
                            [] => {}
                            [(g, p)] => changed |= reached.insert(*g, p.clone()),
                            _ if commuting(&cone, &roots) => {
                                let v: Vec<Scalar> = factors.iter().flat_map(|(_, p)| p.iter().cloned()).collect();
                                changed |= split_abelian(group, &cone, &mut mixed, Some(v), &mut reached)?;
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        let cones: Vec<Vec<Weight>> = mixed.keys().cloned().collect();
        for cone in cones {
            changed |= split_abelian(group, &cone, &mut mixed, None, &mut reached)?;
        }
        if !changed {
            return Ok(reached);
        }
    }
}

/// Whether the root subgroups of `cone` pairwise commute.
fn commuting(cone: &[Weight], roots: &[Weight]) -> bool {
    cone.iter().enumerate().all(|(i, &a)| cone[i + 1..].iter().all(|&b| open_cone(a, b, roots).is_empty()))
}

/// Records a reached element of the abelian group `prod_{g in cone} G_g`,
/// given by its concatenated parameters if any, and extracts every parameter basis
/// vector of a single root that the recorded elements now reach.
fn split_abelian<G: RootGroup + ?Sized>(
    group: &G,
    cone: &[Weight],
    mixed: &mut BTreeMap<Vec<Weight>, Vec<Vec<Scalar>>>,
    v: Option<Vec<Scalar>>,
    reached: &mut Reached,
) -> Result<bool> {
    let mode = group.lie().mode();
    let widths: Vec<usize> = cone.iter().map(|&g| reached.spans[&g].ambient()).collect();
    let total: usize = widths.iter().sum();
    let embed = |k: usize, p: &[Scalar]| {
        let mut out = vec![mode.zero(); total];
        let off: usize = widths[..k].iter().sum();
        out[off..off + p.len()].clone_from_slice(p);
        SparseVec::from_dense(&out)
    };
    let list = mixed.entry(cone.to_vec()).or_default();
    list.extend(v);
    let mut span = SpanBasis::new(mode, total)?;
    for w in list.iter() {
        span.insert(&SparseVec::from_dense(w));
    }
    for (k, g) in cone.iter().enumerate() {
        for p in reached.vectors.get(g).into_iter().flatten() {
            span.insert(&embed(k, p));
        }
    }
    let mut changed = false;
    for (k, &g) in cone.iter().enumerate() {
        for b in group.param_basis(g)? {
            if !reached.contains(g, &b) && span.contains(&embed(k, &b)) {
                changed |= reached.insert(g, b);
            }
        }
    }
    Ok(changed)
}

/// Every generator `G_g(e_t)` of each non-simple positive root lies in the
/// group generated by the simple-root generators. A commutator closure runs
/// first; generators it misses are searched for by BFS over the simple
/// generators and everything reached so far, by height.
pub fn strongness_check<G: RootGroup + ?Sized>(group: &G, system: &SimpleSystem, cap: usize) -> Result<CheckRecord> {
    let id = format!("strong-grading[{}]", system.name);
    let anchor = "non-simple positive root subgroups lie in the group generated by simple root subgroups";
    let mode = group.lie().mode();
    if mode.characteristic() == 0 {
        return Ok(skipped(&id, anchor, "needs a finite ring"));
    }
    let reached = commutator_closure(group, system)?;
    let mut gens = Vec::new();
    for &s in &system.simple {
        for b in group.param_basis(s)? {
            gens.push(group.root_element(s, &b)?);
        }
    }
    for (&g, vs) in &reached.vectors {
        if !system.simple.contains(&g) {
            for v in vs {
                gens.push(group.root_element(g, v)?);
            }
        }
    }
    let mut by_commutator = 0;
    let mut depths = Vec::new();
    let mut found = Vec::new();
    for g in system.targets() {
        for b in group.param_basis(g)? {
            if reached.contains(g, &b) {
                by_commutator += 1;
                continue;
            }
            let target = group.root_element(g, &b)?;
            let mut pool = gens.clone();
            pool.extend(found.iter().cloned());
            match reach(&pool, &target, cap)? {
                Reach::Word(d) => {
                    depths.push(format!("{g}({}): {d}", group_param_label(&b)));
                    found.push(target);
                }
                Reach::Unreachable => {
                    return Ok(CheckRecord::new(&id, anchor, Status::Fail, by_commutator + depths.len() + 1)
                        .with_witness(json!({ "root": g.to_string(), "param": fmt(&b) })));
                }
                Reach::CapExceeded => {
                    return Ok(CheckRecord::new(&id, anchor, Status::Inconclusive, by_commutator + depths.len() + 1)
                        .with_witness(json!({ "root": g.to_string(), "param": fmt(&b), "cap": cap })));
                }
            }
        }
    }
    let mut note = format!("{by_commutator} generators by commutator closure");
    if !depths.is_empty() {
        note.push_str(&format!("; word lengths {}", depths.join(", ")));
    }
    Ok(CheckRecord::new(&id, anchor, Status::Pass, by_commutator + depths.len()).with_note(note))
}

fn group_param_label(b: &[Scalar]) -> String {
    fmt(b).join(" ")
}

/// How to evaluate the form-ring generation set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormRingMode {
    /// All tuples over a finite ring, refused above the element bound.
    Exhaustive { max_elements: usize },
    /// Additive span of random instances.
    Sampling { trials: usize },
}

/// Compares `{sum_i s_i a_i s_i* + (r + r*)}` with `Sym(A)`.
pub fn form_ring_generation_check(herm: &Herm, gens: &[Vec<Scalar>], mode: FormRingMode, rng: &mut TrialRng) -> Result<CheckRecord> {
    let id = "form-ring-generation";
    let anchor = "Sym(A) = { sum s_i a_i s_i* + (r + r*) }";
    let alg = herm.algebra();
    match mode {
        FormRingMode::Exhaustive { max_elements } => {
            let elems = all_elements(alg, max_elements)?;
            let m = alg.mode().characteristic();
            let sym = sym_set(herm, max_elements)?;
            let mut acc: BTreeSet<Vec<u64>> = elems.iter().map(|r| key(&add(r, &alg.conj_coords(r).expect("involution")))).collect();
            for a in gens {
                let terms: BTreeSet<Vec<u64>> = elems.iter().map(|s| key(&sas(alg, s, a))).collect();
                let mut next = BTreeSet::new();
                for x in &acc {
                    for t in &terms {
                        next.insert(x.iter().zip(t).map(|(p, q)| (p + q) % m).collect());
                    }
                }
                acc = next;
            }
            let note = format!("{} elements generated, |Sym| = {}", acc.len(), sym.len());
            let missing = sym.iter().find(|s| !acc.contains(*s));
            let outside = acc.iter().find(|s| !sym.contains(*s));
            let status = if missing.is_none() && outside.is_none() { Status::Pass } else { Status::Fail };
            let mut rec = CheckRecord::new(id, anchor, status, elems.len()).with_note(note);
            if status == Status::Fail {
                rec = rec.with_witness(json!({
                    "missing": missing,
                    "outside": outside,
                    "generators": gens.iter().map(|g| fmt(g)).collect::<Vec<_>>(),
                }));
            }
            Ok(rec)
        }
        FormRingMode::Sampling { trials } => {
            let n = alg.dim();
            let mut span = SpanBasis::new(alg.mode(), n)?;
            for t in 0..n {
                let r = alg.basis_coords(t);
                span.insert(&SparseVec::from_dense(&add(&r, &alg.conj_coords(&r)?)));
            }
            for a in gens {
                for _ in 0..trials {
                    let s = rng.vector(alg.mode(), n);
                    span.insert(&SparseVec::from_dense(&sas(alg, &s, a)));
                }
            }
            let status = if span.dim() == herm.sym_dim() { Status::Pass } else { Status::Fail };
            let rec = CheckRecord::new(id, anchor, status, trials * gens.len())
                .with_note(format!("additive span dimension {} of {}", span.dim(), herm.sym_dim()));
            Ok(if status == Status::Fail {
                rec.with_witness(json!({ "span": span.dim(), "sym": herm.sym_dim(), "generators": gens.iter().map(|g| fmt(g)).collect::<Vec<_>>() }))
            } else {
                rec
            })
        }
    }
}

fn sas(alg: &Algebra, s: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
    alg.mul_coords(&alg.mul_coords(s, a), &alg.conj_coords(s).expect("involution"))
}

fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn residues(mode: ScalarMode, dim: usize, max: usize) -> Result<Vec<Vec<Scalar>>> {
    let ScalarMode::Modular(m) = mode else {
        return Err(Error::Config("exhaustive mode needs integers mod m".into()));
    };
    let total = (m as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total > max as u128 {
        return Err(Error::CapExceeded { cap: max });
    }
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Scalar>| (0..m).map(move |c| [v.clone(), vec![mode.from_i64(c as i64)]].concat()))
            .collect();
    }
    Ok(out)
}

fn all_elements(alg: &Algebra, max: usize) -> Result<Vec<Vec<Scalar>>> {
    residues(alg.mode(), alg.dim(), max)
}

fn sym_set(herm: &Herm, max: usize) -> Result<BTreeSet<Vec<u64>>> {
    Ok(residues(herm.mode(), herm.sym_dim(), max)?.iter().map(|c| key(&herm.sym_element(c))).collect())
}

fn key(v: &[Scalar]) -> Vec<u64> {
    v.iter().map(|s| s.residue().expect("modular scalar")).collect()
}
