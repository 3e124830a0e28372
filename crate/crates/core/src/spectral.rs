//! Finite quotients over `Z/m`: group enumeration, Cayley graphs on root
//! generators and the spectral gap of the normalized adjacency operator.
//!
//! This is the spectral gap of a finite quotient, not a Kazhdan constant.

use std::collections::{HashMap, VecDeque};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::builtins::builtin;
use crate::error::{Error, Result};
use crate::groups::{A2Group, Automorphism, C3Group, RootGroup};
use crate::jordan::HermSpace;
use crate::pe3::Pe3;
use crate::random::TrialRng;
use crate::scalar::{Scalar, ScalarMode};
use crate::tkk::Tkk;

pub const DEFAULT_CAP: usize = 500_000;
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const ORACLE_TOL: f64 = 1e-9;
pub const ORACLE_MAX_ORDER: usize = 2000;
const MAX_ITERATIONS: usize = 200_000;
/// Memory allowed for element keys during enumeration.
const KEY_BYTES: usize = 1 << 30;

/// Square matrix over `Z/m`, column-major, entries below 2^32.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ModMatrix {
    n: usize,
    m: u64,
    data: Vec<u32>,
}

impl ModMatrix {
    fn from_matrix(a: &crate::linalg::Matrix) -> Result<Self> {
        let ScalarMode::Modular(m) = a.mode() else {
            return Err(Error::Config("enumeration needs integers mod m".into()));
        };
        if m > u32::MAX as u64 {
            return Err(Error::Config(format!("modulus {m} too large for enumeration")));
        }
        let n = a.rows();
        let mut data = vec![0u32; n * n];
        for c in 0..n {
            for r in 0..n {
                data[c * n + r] = a.get(r, c).residue().expect("modular") as u32;
            }
        }
        Ok(ModMatrix { n, m, data })
    }

    fn identity(n: usize, m: u64) -> Self {
        let mut data = vec![0u32; n * n];
        for i in 0..n {
            data[i * n + i] = (1 % m) as u32;
        }
        ModMatrix { n, m, data }
    }

    fn key(&self) -> Box<[u8]> {
        if self.m <= 256 {
            self.data.iter().map(|&x| x as u8).collect()
        } else {
            self.data.iter().flat_map(|x| x.to_le_bytes()).collect()
        }
    }

    fn key_len(n: usize, m: u64) -> usize {
        if m <= 256 {
            n * n
        } else {
            4 * n * n
        }
    }
}

/// Nonzero entries of a generator, by column.
struct SparseGen {
    cols: Vec<Vec<(usize, u64)>>,
}

impl SparseGen {
    fn new(a: &ModMatrix) -> Self {
        let n = a.n;
        let cols = (0..n)
            .map(|c| (0..n).filter_map(|k| { let v = a.data[c * n + k]; (v != 0).then_some((k, v as u64)) }).collect())
            .collect();
        SparseGen { cols }
    }

    /// `g * self`.
    fn right_mul(&self, g: &ModMatrix) -> ModMatrix {
        let (n, m) = (g.n, g.m);
        let mut data = vec![0u32; n * n];
        let mut acc = vec![0u64; n];
        for (c, col) in self.cols.iter().enumerate() {
            acc.iter_mut().for_each(|x| *x = 0);
            for &(k, v) in col {
                let src = &g.data[k * n..(k + 1) * n];
                for (a, &x) in acc.iter_mut().zip(src) {
                    *a = (*a + x as u64 * v) % m;
                }
            }
            for (d, a) in data[c * n..(c + 1) * n].iter_mut().zip(&acc) {
                *d = *a as u32;
            }
        }
        ModMatrix { n, m, data }
    }
}

/// A finite group given by its right multiplication table on a symmetrized
/// generator list (each generator followed by its inverse).
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroupTable {
    order: usize,
    generators: Vec<String>,
    table: Vec<u32>,
    fingerprint: String,
}

impl FiniteGroupTable {
    /// Breadth-first closure from the identity; ids follow BFS order with the
    /// generators in the given order.
    pub fn enumerate(gens: &[(String, Automorphism)], cap: usize) -> Result<Self> {
        let Some((_, first)) = gens.first() else {
            return Ok(FiniteGroupTable { order: 1, generators: Vec::new(), table: Vec::new(), fingerprint: fingerprint(&[]) });
        };
        let n = first.matrix().rows();
        let m = first.matrix().mode().characteristic();
        let mut labels = Vec::new();
        let mut sparse = Vec::new();
        for (label, g) in gens {
            sparse.push(SparseGen::new(&ModMatrix::from_matrix(g.matrix())?));
            sparse.push(SparseGen::new(&ModMatrix::from_matrix(g.inv()?.matrix())?));
            labels.push(label.clone());
            labels.push(format!("{label}^-1"));
        }
        let cap = cap.min(KEY_BYTES / (ModMatrix::key_len(n, m) + 48)).max(1);
        let k = sparse.len();
        let id = ModMatrix::identity(n, m);
        let mut ids: HashMap<Box<[u8]>, u32> = HashMap::from([(id.key(), 0)]);
        let mut keys = vec![id.key()];
        let mut queue = VecDeque::from([id]);
        let mut table = Vec::new();
        while let Some(g) = queue.pop_front() {
            for s in &sparse {
                let h = s.right_mul(&g);
                let key = h.key();
                let next = ids.len() as u32;
                let t = *ids.entry(key.clone()).or_insert_with(|| {
                    keys.push(key);
                    queue.push_back(h);
                    next
                });
                if ids.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                table.push(t);
            }
        }
        debug_assert_eq!(table.len(), ids.len() * k);
        Ok(FiniteGroupTable { order: ids.len(), generators: labels, table, fingerprint: fingerprint(&keys) })
    }

    /// Table of `Z/n` generated by `+1` (and `-1`).
    pub fn cyclic(n: usize) -> Self {
        let mut table = Vec::with_capacity(2 * n);
        for i in 0..n {
            table.push(((i + 1) % n) as u32);
            table.push(((i + n - 1) % n) as u32);
        }
        let keys: Vec<Box<[u8]>> = (0..n as u64).map(|i| i.to_le_bytes().into()).collect();
        FiniteGroupTable { order: n, generators: vec!["+1".into(), "-1".into()], table, fingerprint: fingerprint(&keys) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Symmetrized generator labels.
    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// Id of `g * s_t`.
    pub fn mul(&self, g: usize, t: usize) -> usize {
        self.table[g * self.generators.len() + t] as usize
    }

    /// SHA-256 over the element keys in id order.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Every row lands in the table and every generator has its inverse
    /// next to it.
    pub fn is_consistent(&self) -> bool {
        let k = self.generators.len();
        (0..self.order).all(|g| (0..k).all(|t| {
            let h = self.mul(g, t);
            h < self.order && self.mul(h, t ^ 1) == g
        }))
    }

    /// `(P v)(g) = mean over t of v(g s_t)`.
    fn apply(&self, v: &[f64], out: &mut [f64]) {
        let k = self.generators.len();
        for (g, o) in out.iter_mut().enumerate() {
            let row = &self.table[g * k..(g + 1) * k];
            *o = row.iter().map(|&h| v[h as usize]).sum::<f64>() / k as f64;
        }
    }

    fn dense(&self) -> DMatrix<f64> {
        let n = self.order;
        let k = self.generators.len();
        let mut p = DMatrix::zeros(n, n);
        for g in 0..n {
            for t in 0..k {
                p[(g, self.mul(g, t))] += 1.0 / k as f64;
            }
        }
        p
    }
}

fn fingerprint(keys: &[Box<[u8]>]) -> String {
    let mut h = Sha256::new();
    for k in keys {
        h.update(k);
    }
    hex::encode(h.finalize())
}

/// Power iteration result on the complement of the constant vector.
#[derive(Clone, Copy, Debug)]
struct Power {
    value: f64,
    residual: f64,
    iterations: usize,
}

fn deflate(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn power_iteration(n: usize, seed: u64, op: impl Fn(&[f64], &mut [f64])) -> Power {
    let mut rng = TrialRng::new(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.unit_f64()).collect();
    deflate(&mut v);
    normalize(&mut v);
    let mut w = vec![0.0; n];
    let mut out = Power { value: 0.0, residual: f64::INFINITY, iterations: 0 };
    for it in 1..=MAX_ITERATIONS {
        op(&v, &mut w);
        deflate(&mut w);
        let mu: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let residual = v.iter().zip(&w).map(|(a, b)| (b - mu * a).powi(2)).sum::<f64>().sqrt();
        out = Power { value: mu, residual, iterations: it };
        if residual <= RESIDUAL_TOL {
            break;
        }
        if normalize(&mut w) == 0.0 {
            out.residual = 0.0;
            break;
        }
        std::mem::swap(&mut v, &mut w);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleCheck {
    pub lambda: f64,
    pub lambda_two: f64,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub label: String,
    pub family: String,
    pub algebra: String,
    pub modulus: u64,
    pub generators: String,
    pub order: usize,
    pub generator_count: usize,
    /// Second-largest eigenvalue modulus of the normalized adjacency.
    pub lambda: Option<f64>,
    /// Second-largest eigenvalue.
    pub lambda_two: Option<f64>,
    pub gap: Option<f64>,
    pub method: String,
    pub residual: Option<f64>,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    pub table_fingerprint: String,
}

/// Eigenvalue data of the symmetrized Cayley graph. Power iteration runs on
/// `P^2` for the modulus and on `(P + I)/2` for the signed value; groups of
/// order at most [`ORACLE_MAX_ORDER`] are cross-checked densely.
pub fn spectral_gap(table: &FiniteGroupTable, seed: u64) -> SpectralReport {
    let n = table.order();
    let mut report = SpectralReport {
        label: "spectral gap of finite quotient".into(),
        family: String::new(),
        algebra: String::new(),
        modulus: 0,
        generators: String::new(),
        order: n,
        generator_count: table.generators().len(),
        lambda: None,
        lambda_two: None,
        gap: None,
        method: "power-iteration".into(),
        residual: None,
        iterations: 0,
        oracle: None,
        flag: None,
        table_fingerprint: table.fingerprint().to_string(),
    };
    if n <= 1 {
        report.flag = Some("degenerate: order 1, gap undefined".into());
        return report;
    }
    let sq = power_iteration(n, seed, |v, out| {
        let mut mid = vec![0.0; v.len()];
        table.apply(v, &mut mid);
        table.apply(&mid, out);
    });
    let shifted = power_iteration(n, seed, |v, out| {
        table.apply(v, out);
        out.iter_mut().zip(v).for_each(|(o, x)| *o = (*o + x) / 2.0);
    });
    let lambda = sq.value.max(0.0).sqrt().min(1.0);
    let lambda_two = 2.0 * shifted.value - 1.0;
    report.lambda = Some(lambda);
    report.lambda_two = Some(lambda_two);
    report.gap = Some((1.0 - lambda).max(0.0));
    report.residual = Some(sq.residual.max(shifted.residual));
    report.iterations = sq.iterations + shifted.iterations;
    if report.residual.unwrap() > RESIDUAL_TOL {
        report.flag = Some(format!("power iteration stopped at {MAX_ITERATIONS} steps"));
    }
    if 1.0 - lambda <= ORACLE_TOL {
        report.flag = Some(if (1.0 - lambda_two).abs() <= ORACLE_TOL { "disconnected" } else { "bipartite" }.into());
    }
    if n <= ORACLE_MAX_ORDER {
        let (ol, ol2) = dense_oracle(table);
        let agrees = (ol - lambda).abs() <= ORACLE_TOL && (ol2 - lambda_two).abs() <= ORACLE_TOL;
        report.oracle = Some(OracleCheck { lambda: ol, lambda_two: ol2, agrees });
        report.method = "power-iteration, dense-oracle".into();
    }
    report
}

/// `(second-largest modulus, second-largest value)` from a full symmetric
/// eigendecomposition, dropping one eigenvalue closest to 1.
pub fn dense_oracle(table: &FiniteGroupTable) -> (f64, f64) {
    let eig = SymmetricEigen::new(table.dense());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    vals.remove(0);
    let lambda = vals.iter().map(|x| x.abs()).fold(0.0, f64::max).min(1.0);
    (lambda, vals.first().copied().unwrap_or(0.0))
}

/// Which root elements generate the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorSet {
    /// `G_g(1)` for every root.
    Unit,
    /// `G_g(e_t)` for every root and parameter basis element.
    Basis,
}

impl GeneratorSet {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorSet::Unit => "unit",
            GeneratorSet::Basis => "basis",
        }
    }
}

pub fn root_generators<G: RootGroup + ?Sized>(group: &G, set: GeneratorSet, one: &[Scalar]) -> Result<Vec<(String, Automorphism)>> {
    let mut out = Vec::new();
    for r in group.roots() {
        match set {
            GeneratorSet::Unit => out.push((format!("G_{r}(1)"), group.root_element(r, one)?)),
            GeneratorSet::Basis => {
                for (t, b) in group.param_basis(r)?.iter().enumerate() {
                    out.push((format!("G_{r}(e{t})"), group.root_element(r, b)?));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupFamily {
    A2,
    C3,
}

impl GroupFamily {
    pub fn name(self) -> &'static str {
        match self {
            GroupFamily::A2 => "a2",
            GroupFamily::C3 => "c3",
        }
    }
}

/// Root generators of the chosen family over an algebra with modular
/// scalars.
pub fn family_generators(algebra: &crate::algebra::Algebra, family: GroupFamily, set: GeneratorSet) -> Result<Vec<(String, Automorphism)>> {
    let one = algebra.unit_coords();
    match family {
        GroupFamily::A2 => root_generators(&A2Group::new(&Pe3::new(algebra)?), set, &one),
        GroupFamily::C3 => root_generators(&C3Group::new(&Tkk::new(&HermSpace::new(algebra)?)?), set, &one),
    }
}

/// Enumerate and measure one instance.
pub fn probe(
    algebra: &crate::algebra::Algebra,
    family: GroupFamily,
    gens: &[(String, Automorphism)],
    generators_label: &str,
    cap: usize,
    seed: u64,
) -> Result<SpectralReport> {
    let table = FiniteGroupTable::enumerate(gens, cap)?;
    let mut r = spectral_gap(&table, seed);
    r.family = family.name().into();
    r.algebra = algebra.name().into();
    r.modulus = algebra.mode().characteristic();
    r.generators = generators_label.into();
    Ok(r)
}

/// One row of a generator sweep: a report or the error that stopped it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub modulus: u64,
    pub generators: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<SpectralReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Both generator sets for each modulus; per-instance errors are kept as
/// rows.
pub fn generator_sweep(algebra_name: &str, family: GroupFamily, moduli: &[u64], cap: usize, seed: u64) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for &m in moduli {
        for set in [GeneratorSet::Unit, GeneratorSet::Basis] {
            let result = builtin(algebra_name, ScalarMode::Modular(m))
                .and_then(|a| family_generators(&a, family, set).and_then(|g| probe(&a, family, &g, set.name(), cap, seed)));
            let (report, error) = match result {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            };
            rows.push(SweepRow { modulus: m, generators: set.name().into(), report, error });
        }
    }
    rows
}
