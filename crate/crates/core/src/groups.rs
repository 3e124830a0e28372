//! Automorphism groups generated by root elements: `PE(V)` acting on the TKK
//! algebra and `PE3(A)` acting on `pe3(A)`.
//!
//! Group elements are exact matrices; equality is matrix equality.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, SparseVec, SpanBasis};
use crate::random::TrialRng;
use crate::report::{run_trials, CheckRecord, Status};
use crate::roots::{open_cone, Weight};
use crate::scalar::Scalar;

pub mod a2;
pub mod c3;
pub mod relations;
pub mod strong;

pub use a2::A2Group;
pub use c3::C3Group;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Tkk,
    Pe3,
}

/// An invertible matrix on the basis of a Lie algebra, with its inverse when
/// it is known in closed form.
#[derive(Clone, Debug)]
pub struct Automorphism {
    family: Family,
    matrix: Matrix,
    inverse: Option<Matrix>,
}

impl PartialEq for Automorphism {
    fn eq(&self, o: &Self) -> bool {
        self.family == o.family && self.matrix == o.matrix
    }
}

impl Automorphism {
    pub fn new(family: Family, matrix: Matrix, inverse: Option<Matrix>) -> Self {
        Automorphism { family, matrix, inverse }
    }

    pub fn identity(family: Family, lie: &LieAlgebra) -> Self {
        let id = Matrix::identity(lie.mode(), lie.dim());
        Automorphism { family, matrix: id.clone(), inverse: Some(id) }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let inverse = match (&self.inverse, &o.inverse) {
            (Some(a), Some(b)) => Some(b.mul(a)),
            _ => None,
        };
        Automorphism { family: self.family, matrix: self.matrix.mul(&o.matrix), inverse }
    }

    pub fn inv(&self) -> Result<Self> {
        let inv = match &self.inverse {
            Some(m) => m.clone(),
            None => self.matrix.inverse()?,
        };
        Ok(Automorphism { family: self.family, matrix: inv, inverse: Some(self.matrix.clone()) })
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(g: &Self, h: &Self) -> Result<Self> {
        Ok(g.inv()?.mul(&h.inv()?).mul(g).mul(h))
    }

    /// SHA-256 of the canonical matrix bytes, hex encoded.
    pub fn hash_hex(&self) -> String {
        hex::encode(Sha256::digest(self.matrix.canonical_bytes()))
    }

    /// First basis pair with `g[u,v] != [gu, gv]`.
    pub fn bracket_violation(&self, lie: &LieAlgebra) -> Option<(usize, usize)> {
        let n = lie.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|c| self.matrix.column(c)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let t = lie.bracket_basis(i, j);
                let mut lhs = lie.zero();
                for (k, s) in t.iter() {
                    for (o, x) in lhs.iter_mut().zip(&cols[*k]) {
                        if !x.is_zero() {
                            *o += &(s * x);
                        }
                    }
                }
                if lhs != lie.bracket(&cols[i], &cols[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// A group generated by root elements `G_g(s)` on the basis of a graded Lie
/// algebra.
pub trait RootGroup {
    fn family(&self) -> Family;
    fn lie(&self) -> &LieAlgebra;
    fn roots(&self) -> Vec<Weight>;
    /// Basis of the parameter space of `G_g`, as algebra coordinates.
    fn param_basis(&self, g: Weight) -> Result<Vec<Vec<Scalar>>>;
    fn root_element(&self, g: Weight, s: &[Scalar]) -> Result<Automorphism>;

    fn random_param(&self, g: Weight, rng: &mut TrialRng) -> Result<Vec<Scalar>> {
        let basis = self.param_basis(g)?;
        let mode = self.lie().mode();
        let n = basis.first().map_or(0, |b| b.len());
        let mut out = vec![mode.zero(); n];
        for b in &basis {
            let c = rng.scalar(mode);
            for (o, x) in out.iter_mut().zip(b) {
                *o += &(&c * x);
            }
        }
        Ok(out)
    }
}

/// Reads root parameters from the weight-`g` part of `g - Id`, which is
/// linear in the parameter.
pub struct ParamReader {
    root: Weight,
    entries: Vec<(usize, usize)>,
    span: SpanBasis,
    basis: Vec<Vec<Scalar>>,
}

impl ParamReader {
    pub fn new<G: RootGroup + ?Sized>(group: &G, root: Weight) -> Result<Self> {
        let lie = group.lie();
        let w = lie.weights();
        let n = lie.dim();
        let mut entries = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if w[r] == w[c] + root {
                    entries.push((r, c));
                }
            }
        }
        let basis = group.param_basis(root)?;
        let mut span = SpanBasis::new(lie.mode(), entries.len())?;
        let mut reader = ParamReader { root, entries, span: SpanBasis::new(lie.mode(), 0)?, basis: basis.clone() };
        for b in &basis {
            let v = reader.linear_part(&group.root_element(root, b)?);
            span.insert(&v);
        }
        reader.span = span;
        Ok(reader)
    }

    pub fn root(&self) -> Weight {
        self.root
    }

    pub fn linear_part(&self, g: &Automorphism) -> SparseVec {
        let m = g.matrix();
        SparseVec::from_entries(
            self.entries
                .iter()
                .enumerate()
                .filter_map(|(k, &(r, c))| {
                    let mut x = m.get(r, c).clone();
                    if r == c {
                        x -= &m.mode().one();
                    }
                    (!x.is_zero()).then_some((k, x))
                })
                .collect(),
        )
    }

    /// Rank of the linear part over the parameter basis.
    pub fn rank(&self) -> usize {
        self.span.dim()
    }

    pub fn param_dim(&self) -> usize {
        self.basis.len()
    }

    /// The parameter `s` with the same linear part as `g`, if any.
    pub fn read(&self, g: &Automorphism) -> Option<Vec<Scalar>> {
        let c = self.span.coordinates(&self.linear_part(g))?;
        let mode = g.matrix().mode();
        let n = self.basis.first().map_or(0, |b| b.len());
        let mut out = vec![mode.zero(); n];
        for (t, s) in c.iter() {
            for (o, x) in out.iter_mut().zip(&self.basis[*t]) {
                *o += &(s * x);
            }
        }
        Some(out)
    }
}

/// Factors group elements over root subgroups, caching one reader per root.
pub struct Factorer<'g, G: RootGroup + ?Sized> {
    group: &'g G,
    readers: HashMap<Weight, ParamReader>,
}

impl<'g, G: RootGroup + ?Sized> Factorer<'g, G> {
    pub fn new(group: &'g G) -> Self {
        Factorer { group, readers: HashMap::new() }
    }

    pub fn reader(&mut self, r: Weight) -> Result<&ParamReader> {
        if !self.readers.contains_key(&r) {
            let reader = ParamReader::new(self.group, r)?;
            self.readers.insert(r, reader);
        }
        Ok(&self.readers[&r])
    }

    /// Factor `g` as a product of root elements over `roots`, peeling from
    /// the left in the given order. Returns the parameters when the remainder
    /// is the identity.
    pub fn factor(&mut self, g: &Automorphism, roots: &[Weight]) -> Result<Option<Vec<(Weight, Vec<Scalar>)>>> {
        let mut rest = g.clone();
        let mut out = Vec::new();
        for &r in roots {
            let Some(s) = self.reader(r)?.read(&rest) else { return Ok(None) };
            let neg: Vec<Scalar> = s.iter().map(|x| -x).collect();
            rest = self.group.root_element(r, &neg)?.mul(&rest);
            out.push((r, s));
        }
        Ok(rest.is_identity().then_some(out))
    }
}

/// One-off [`Factorer::factor`].
pub fn factor<G: RootGroup + ?Sized>(group: &G, g: &Automorphism, roots: &[Weight]) -> Result<Option<Vec<(Weight, Vec<Scalar>)>>> {
    Factorer::new(group).factor(g, roots)
}

/// `G_g(s) G_g(r) = G_g(s + r)` for every root.
pub fn additivity_check<G: RootGroup + ?Sized>(group: &G, trials: usize, rng: &mut TrialRng) -> Result<CheckRecord> {
    let roots = group.roots();
    run_trials("root-additivity", "G_g(s)G_g(r) = G_g(s+r)", roots.len() * trials, |t| {
        let g = roots[t % roots.len()];
        let (s, r) = (group.random_param(g, rng)?, group.random_param(g, rng)?);
        let sum: Vec<Scalar> = s.iter().zip(&r).map(|(a, b)| a + b).collect();
        let lhs = group.root_element(g, &s)?.mul(&group.root_element(g, &r)?);
        let ok = lhs == group.root_element(g, &sum)?;
        Ok((!ok).then(|| json!({ "root": g.to_string(), "s": fmt(&s), "r": fmt(&r) })))
    })
}

/// `G_g(s) = Id` only for `s = 0`: the linear part of the parametrization
/// has full rank on every root.
pub fn no_collapsing_check<G: RootGroup + ?Sized>(group: &G) -> Result<CheckRecord> {
    let roots = group.roots();
    run_trials("no-collapsing", "G_g(s) = Id iff s = 0", roots.len(), |t| {
        let reader = ParamReader::new(group, roots[t])?;
        let ok = reader.rank() == reader.param_dim();
        Ok((!ok).then(|| json!({ "root": roots[t].to_string(), "rank": reader.rank(), "params": reader.param_dim() })))
    })
}

/// Every root element built from a parameter basis element preserves the
/// bracket.
pub fn automorphism_check<G: RootGroup + ?Sized>(group: &G, roots: &[Weight]) -> Result<CheckRecord> {
    let mut cases = Vec::new();
    for &g in roots {
        for b in group.param_basis(g)? {
            cases.push((g, b));
        }
    }
    run_trials("root-automorphism", "G_g(s)[u,v] = [G_g(s)u, G_g(s)v]", cases.len(), |t| {
        let (g, b) = &cases[t];
        let e = group.root_element(*g, b)?;
        Ok(e.bracket_violation(group.lie()).map(|(i, j)| {
            json!({ "root": g.to_string(), "s": fmt(b), "u": group.lie().labels()[i], "v": group.lie().labels()[j] })
        }))
    })
}

/// For each pair of non-opposite roots, the commutator of random root
/// elements factors over the roots of the open cone.
pub fn grading_check_group<G: RootGroup + ?Sized>(group: &G, trials: usize, rng: &mut TrialRng) -> Result<CheckRecord> {
    let roots = group.roots();
    let mut pairs = Vec::new();
    for &a in &roots {
        for &b in &roots {
            if a != b.neg() && a != b {
                pairs.push((a, b));
            }
        }
    }
    let mut f = Factorer::new(group);
    let mut rec = run_trials("group-grading", "[G_a, G_b] in prod of G_{pa+qb}, p,q > 0", pairs.len() * trials, |t| {
        let (a, b) = pairs[t % pairs.len()];
        let (s, r) = (group.random_param(a, rng)?, group.random_param(b, rng)?);
        let c = Automorphism::commutator(&group.root_element(a, &s)?, &group.root_element(b, &r)?)?;
        let cone: Vec<Weight> = open_cone(a, b, &roots).into_iter().map(|x| x.2).collect();
        Ok(f.factor(&c, &cone)?.is_none().then(|| {
            json!({ "a": a.to_string(), "b": b.to_string(), "s": fmt(&s), "r": fmt(&r), "cone": cone.iter().map(|w| w.to_string()).collect::<Vec<_>>() })
        }))
    })?;
    rec.note = Some(format!("{} ordered root pairs", pairs.len()));
    Ok(rec)
}

pub(crate) fn fmt(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub(crate) fn not_a_root(g: Weight) -> Error {
    Error::NotARoot(g.to_string())
}

pub(crate) fn skipped(id: &str, anchor: &str, why: &str) -> CheckRecord {
    CheckRecord::new(id, anchor, Status::Skipped, 0).with_note(why)
}
