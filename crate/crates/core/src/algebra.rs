//! Finite-dimensional unital algebras given by structure constants.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{axpy_dense, Matrix, SparseVec, SpanBasis};
use crate::scalar::{Scalar, ScalarMode};

pub mod builtins;

pub const MAX_R1_GENERATORS: usize = 20;

/// A unital algebra with basis `e_0..e_{n-1}`, optionally with an involution.
///
/// `table[i * n + j]` holds the coordinates of `e_i e_j`. The involution is
/// stored by columns: column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    mode: ScalarMode,
    labels: Vec<String>,
    unit: usize,
    table: Vec<SparseVec>,
    involution: Option<Matrix>,
}

pub type Algebra = Arc<AlgebraSpec>;

impl AlgebraSpec {
    /// Build and validate the unit and involution axioms on basis elements.
    pub fn new(
        name: impl Into<String>,
        mode: ScalarMode,
        labels: Vec<String>,
        unit: usize,
        table: Vec<SparseVec>,
        involution: Option<Matrix>,
    ) -> Result<Self> {
        let spec = Self::new_unchecked(name, mode, labels, unit, table, involution)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Build without checking the unit or involution axioms.
    pub fn new_unchecked(
        name: impl Into<String>,
        mode: ScalarMode,
        labels: Vec<String>,
        unit: usize,
        table: Vec<SparseVec>,
        involution: Option<Matrix>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Malformed("empty basis".into()));
        }
        if table.len() != n * n {
            return Err(Error::Dimension { expected: n * n, got: table.len() });
        }
        if unit >= n {
            return Err(Error::Malformed(format!("unit index {unit} out of range")));
        }
        if table.iter().any(|v| v.iter().any(|(k, s)| *k >= n || s.mode() != mode)) {
            return Err(Error::Malformed("structure constant out of range".into()));
        }
        if let Some(m) = &involution {
            if m.rows() != n || m.cols() != n || m.mode() != mode {
                return Err(Error::Malformed("involution has the wrong shape".into()));
            }
        }
        Ok(AlgebraSpec { name: name.into(), mode, labels, unit, table, involution })
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let e = self.basis_coords(i);
            if self.mul_coords(&self.unit_coords(), &e) != e {
                return Err(Error::Axiom { axiom: "unit", at: format!("1*{}", self.labels[i]) });
            }
            if self.mul_coords(&e, &self.unit_coords()) != e {
                return Err(Error::Axiom { axiom: "unit", at: format!("{}*1", self.labels[i]) });
            }
        }
        if self.involution.is_some() {
            for i in 0..n {
                let e = self.basis_coords(i);
                if self.conj_coords(&self.conj_coords(&e)?)? != e {
                    return Err(Error::Axiom { axiom: "involution squares to identity", at: self.labels[i].clone() });
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (self.basis_coords(i), self.basis_coords(j));
                    let lhs = self.conj_coords(&self.mul_coords(&a, &b))?;
                    let rhs = self.mul_coords(&self.conj_coords(&b)?, &self.conj_coords(&a)?);
                    if lhs != rhs {
                        return Err(Error::Axiom {
                            axiom: "involution reverses products",
                            at: format!("({}*{})*", self.labels[i], self.labels[j]),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    pub fn involution(&self) -> Option<&Matrix> {
        self.involution.as_ref()
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn zero_coords(&self) -> Vec<Scalar> {
        vec![self.mode.zero(); self.dim()]
    }

    pub fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_coords();
        v[i] = self.mode.one();
        v
    }

    pub fn unit_coords(&self) -> Vec<Scalar> {
        self.basis_coords(self.unit)
    }

    pub fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.zero_coords();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                axpy_dense(&mut out, &(x * y), &self.table[i * n + j]);
            }
        }
        out
    }

    pub fn conj_coords(&self, a: &[Scalar]) -> Result<Vec<Scalar>> {
        let m = self.involution.as_ref().ok_or_else(|| Error::NoInvolution(self.name.clone()))?;
        Ok(m.mul_vec(a))
    }

    pub fn associator_coords(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        let l = self.mul_coords(&self.mul_coords(a, b), c);
        let r = self.mul_coords(a, &self.mul_coords(b, c));
        l.iter().zip(&r).map(|(x, y)| x - y).collect()
    }

    fn basis_associator_is_zero(&self, i: usize, j: usize, k: usize) -> bool {
        let (a, b, c) = (self.basis_coords(i), self.basis_coords(j), self.basis_coords(k));
        self.associator_coords(&a, &b, &c).iter().all(|s| s.is_zero())
    }

    fn basis_associator(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let (a, b, c) = (self.basis_coords(i), self.basis_coords(j), self.basis_coords(k));
        self.associator_coords(&a, &b, &c)
    }

    /// First basis triple violating left or right alternativity.
    ///
    /// Both laws are checked in linearized form plus the diagonal cases, so
    /// the test is complete in every characteristic.
    pub fn alternativity_witness(&self) -> Option<Witness> {
        let n = self.dim();
        let zero = |v: &[Scalar]| v.iter().all(|s| s.is_zero());
        let sum = |x: Vec<Scalar>, y: Vec<Scalar>| -> Vec<Scalar> { x.iter().zip(&y).map(|(p, q)| p + q).collect() };
        for a in 0..n {
            for c in 0..n {
                if !self.basis_associator_is_zero(a, a, c) {
                    return Some(self.witness("left alternative (x,x,y)=0", &[a, a, c]));
                }
                if !self.basis_associator_is_zero(c, a, a) {
                    return Some(self.witness("right alternative (y,x,x)=0", &[c, a, a]));
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                for c in 0..n {
                    if !zero(&sum(self.basis_associator(a, b, c), self.basis_associator(b, a, c))) {
                        return Some(self.witness("left alternative (x,y,z)+(y,x,z)=0", &[a, b, c]));
                    }
                    if !zero(&sum(self.basis_associator(c, a, b), self.basis_associator(c, b, a))) {
                        return Some(self.witness("right alternative (z,x,y)+(z,y,x)=0", &[c, a, b]));
                    }
                }
            }
        }
        None
    }

    pub fn is_alternative(&self) -> bool {
        self.alternativity_witness().is_none()
    }

    /// Basis of the symmetric elements `{a : a* = a}`.
    pub fn symmetric_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        let m = self.involution.as_ref().ok_or_else(|| Error::NoInvolution(self.name.clone()))?;
        m.sub(&Matrix::identity(self.mode, self.dim())).kernel()
    }

    /// First `(s, a, b)` with `s` symmetric and a nonzero associator with `s`
    /// in any slot.
    pub fn nuclear_involution_witness(&self) -> Result<Option<Witness>> {
        let n = self.dim();
        for (si, s) in self.symmetric_basis()?.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    let (x, y) = (self.basis_coords(a), self.basis_coords(b));
                    for slot in 0..3 {
                        let v = match slot {
                            0 => self.associator_coords(s, &x, &y),
                            1 => self.associator_coords(&x, s, &y),
                            _ => self.associator_coords(&x, &y, s),
                        };
                        if v.iter().any(|t| !t.is_zero()) {
                            let mut w = self.witness("symmetric elements are nuclear", &[a, b]);
                            w.elements.insert(0, format!("sym#{si}={}", self.format_coords(s)));
                            return Ok(Some(w));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_nuclear_involution(&self) -> Result<bool> {
        Ok(self.nuclear_involution_witness()?.is_none())
    }

    /// Basis of the center: elements commuting and associating with all.
    pub fn center_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        let n = self.dim();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut push_map = |f: &dyn Fn(&[Scalar]) -> Vec<Scalar>| {
            let cols: Vec<Vec<Scalar>> = (0..n).map(|z| f(&self.basis_coords(z))).collect();
            for r in 0..n {
                rows.push(cols.iter().map(|c| c[r].clone()).collect());
            }
        };
        for i in 0..n {
            let e = self.basis_coords(i);
            push_map(&|z| {
                let a = self.mul_coords(z, &e);
                let b = self.mul_coords(&e, z);
                a.iter().zip(&b).map(|(x, y)| x - y).collect()
            });
            for j in 0..n {
                let f = self.basis_coords(j);
                push_map(&|z| self.associator_coords(z, &e, &f));
                push_map(&|z| self.associator_coords(&e, z, &f));
                push_map(&|z| self.associator_coords(&e, &f, z));
            }
        }
        Matrix::from_rows(self.mode, rows)?.kernel()
    }

    pub fn format_coords(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(s, _)| !s.is_zero())
            .map(|(s, l)| if s.is_one() { l.clone() } else { format!("{s}*{l}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn witness(&self, law: &'static str, idx: &[usize]) -> Witness {
        Witness { law, elements: idx.iter().map(|&i| self.labels[i].clone()).collect() }
    }

    /// Serialize to the JSON description accepted by [`AlgebraSpec::from_json`].
    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, s) in self.table[i * n + j].iter() {
                    mul.push(json!([i, j, k, s.to_string()]));
                }
            }
        }
        let scalar = match self.mode {
            ScalarMode::Rational => json!("rational"),
            ScalarMode::Modular(m) => json!({ "mod": m }),
        };
        let mut v = json!({
            "name": self.name,
            "dim": n,
            "basis": self.labels,
            "unit": self.unit,
            "mul": mul,
            "scalar": scalar,
        });
        if let Some(m) = &self.involution {
            let rows: Vec<Vec<String>> = (0..n).map(|r| m.row(r).iter().map(|s| s.to_string()).collect()).collect();
            v["involution"] = json!(rows);
        }
        v
    }

    /// Parse and validate a JSON algebra description.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let mode = match file.scalar {
            ScalarField::Named(s) if s == "rational" => ScalarMode::Rational,
            ScalarField::Named(s) => return Err(Error::Malformed(format!("unknown scalar field `{s}`"))),
            ScalarField::Modular { modulus } if modulus >= 2 => ScalarMode::Modular(modulus),
            ScalarField::Modular { modulus } => return Err(Error::Malformed(format!("modulus {modulus} < 2"))),
        };
        let n = file.dim;
        if file.basis.len() != n {
            return Err(Error::Dimension { expected: n, got: file.basis.len() });
        }
        let mut entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for (i, j, k, c) in file.mul {
            if i >= n || j >= n || k >= n {
                return Err(Error::Malformed(format!("mul entry [{i},{j},{k}] out of range")));
            }
            entries[i * n + j].push((k, c.to_scalar(mode)?));
        }
        let table = entries.into_iter().map(SparseVec::from_entries).collect();
        let involution = match file.involution {
            None => None,
            Some(rows) => {
                let rows = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(|c| c.to_scalar(mode)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Some(Matrix::from_rows(mode, rows)?)
            }
        };
        let name = file.name.unwrap_or_else(|| "custom".into());
        AlgebraSpec::new(name, mode, file.basis, file.unit, table, involution)
    }

    /// Same structure constants with a different involution, unchecked.
    pub fn with_involution_unchecked(&self, involution: Option<Matrix>) -> Self {
        AlgebraSpec { involution, ..self.clone() }
    }

    /// Copy with one structure constant replaced, unchecked.
    pub fn with_table_entry_unchecked(&self, i: usize, j: usize, product: SparseVec) -> Self {
        let mut table = self.table.clone();
        table[i * self.dim() + j] = product;
        AlgebraSpec { table, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub law: &'static str,
    pub elements: Vec<String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.law, self.elements.join(", "))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: Option<String>,
    dim: usize,
    basis: Vec<String>,
    unit: usize,
    mul: Vec<(usize, usize, usize, ScalarLit)>,
    involution: Option<Vec<Vec<ScalarLit>>>,
    scalar: ScalarField,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarLit {
    Int(i64),
    Text(String),
}

impl ScalarLit {
    fn to_scalar(&self, mode: ScalarMode) -> Result<Scalar> {
        match self {
            ScalarLit::Int(n) => Ok(mode.from_i64(*n)),
            ScalarLit::Text(s) => mode.parse(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarField {
    Named(String),
    Modular {
        #[serde(rename = "mod")]
        modulus: u64,
    },
}

/// An element of an algebra: coordinates plus a handle on the algebra.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    algebra: Algebra,
    coords: Vec<Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, o: &Self) -> bool {
        self.compatible(o) && self.coords == o.coords
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn new(algebra: &Algebra, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Dimension { expected: algebra.dim(), got: coords.len() });
        }
        if coords.iter().any(|s| s.mode() != algebra.mode()) {
            return Err(Error::Incompatible);
        }
        Ok(AlgebraElement { algebra: algebra.clone(), coords })
    }

    pub fn zero(algebra: &Algebra) -> Self {
        AlgebraElement { algebra: algebra.clone(), coords: algebra.zero_coords() }
    }

    pub fn one(algebra: &Algebra) -> Self {
        AlgebraElement { algebra: algebra.clone(), coords: algebra.unit_coords() }
    }

    pub fn basis(algebra: &Algebra, i: usize) -> Self {
        AlgebraElement { algebra: algebra.clone(), coords: algebra.basis_coords(i) }
    }

    pub fn from_ints(algebra: &Algebra, ints: &[i64]) -> Result<Self> {
        Self::new(algebra, ints.iter().map(|&n| algebra.mode().from_i64(n)).collect())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    fn compatible(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &o.algebra) || *self.algebra == *o.algebra
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.compatible(o) {
            Ok(())
        } else {
            Err(Error::Incompatible)
        }
    }

    fn with(&self, coords: Vec<Scalar>) -> Self {
        AlgebraElement { algebra: self.algebra.clone(), coords }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.with(self.algebra.mul_coords(&self.coords, &o.coords)))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.with(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.with(self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> Self {
        self.with(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.with(self.coords.iter().map(|a| c * a).collect())
    }

    pub fn conj(&self) -> Result<Self> {
        Ok(self.with(self.algebra.conj_coords(&self.coords)?))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|s| s.is_zero())
    }

    pub fn associator(a: &Self, b: &Self, c: &Self) -> Result<Self> {
        a.check(b)?;
        a.check(c)?;
        Ok(a.with(a.algebra.associator_coords(&a.coords, &b.coords, &c.coords)))
    }

    /// Matrix of `x -> self * x`.
    pub fn left_mult_operator(&self) -> Matrix {
        let a = &self.algebra;
        let cols: Vec<SparseVec> = (0..a.dim())
            .map(|j| SparseVec::from_dense(&a.mul_coords(&self.coords, &a.basis_coords(j))))
            .collect();
        Matrix::from_columns(a.mode(), a.dim(), &cols)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebra.format_coords(&self.coords))
    }
}

/// Right-nested words `a_{i_k}(...(a_{i_2} a_{i_1}))` over nonempty index
/// sets `i_1 < ... < i_k`, ordered by the bitmask of the set.
pub fn r1_words(generators: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
    if generators.len() > MAX_R1_GENERATORS {
        return Err(Error::TooManyGenerators { max: MAX_R1_GENERATORS, got: generators.len() });
    }
    for g in generators.iter().skip(1) {
        generators[0].check(g)?;
    }
    let mut words = Vec::new();
    for mask in 1u32..(1u32 << generators.len()) {
        let mut word: Option<AlgebraElement> = None;
        for (i, g) in generators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                word = Some(match word {
                    None => g.clone(),
                    Some(w) => g.mul(&w)?,
                });
            }
        }
        words.push(word.expect("nonempty mask"));
    }
    Ok(words)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeftMultSpan {
    /// Dimension of the unital ring generated by `L_w` over r1-words `w`.
    pub dim: usize,
    /// Dimension of the unital ring generated by `L_b` over the subalgebra
    /// generated by the generators.
    pub oracle_dim: usize,
    pub equal: bool,
}

fn operator_closure(mode: ScalarMode, n: usize, gens: &[Matrix]) -> Result<(SpanBasis, Vec<Matrix>)> {
    let mut span = SpanBasis::new(mode, n * n)?;
    let mut members = Vec::new();
    let id = Matrix::identity(mode, n);
    span.insert(&id.flatten_sparse(0));
    members.push(id);
    let mut frontier = 0;
    while frontier < members.len() {
        let m = members[frontier].clone();
        frontier += 1;
        for g in gens {
            let p = g.mul(&m);
            if span.insert(&p.flatten_sparse(0)).is_some() {
                members.push(p);
            }
        }
    }
    Ok((span, members))
}

/// Compare the ring generated by left multiplications by r1-words with the
/// ring generated by all left multiplications from the generated subalgebra.
pub fn left_mult_ring_span(generators: &[AlgebraElement]) -> Result<LeftMultSpan> {
    let words = r1_words(generators)?;
    let Some(first) = generators.first() else {
        return Err(Error::Config("no generators".into()));
    };
    let alg = first.algebra().clone();
    let (mode, n) = (alg.mode(), alg.dim());

    let ops: Vec<Matrix> = words.iter().map(|w| w.left_mult_operator()).collect();
    let (span, _) = operator_closure(mode, n, &ops)?;

    let mut sub = SpanBasis::new(mode, n)?;
    let mut elems = vec![alg.unit_coords()];
    sub.insert(&SparseVec::from_dense(&alg.unit_coords()));
    for g in generators {
        if sub.insert(&SparseVec::from_dense(g.coords())).is_some() {
            elems.push(g.coords().to_vec());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            for (a, b) in [(i, j), (j, i)] {
                let p = alg.mul_coords(&elems[a], &elems[b]);
                if sub.insert(&SparseVec::from_dense(&p)).is_some() {
                    elems.push(p);
                }
            }
        }
        i += 1;
    }
    let oracle_ops: Vec<Matrix> = elems
        .iter()
        .map(|c| AlgebraElement { algebra: alg.clone(), coords: c.clone() }.left_mult_operator())
        .collect();
    let (oracle, oracle_members) = operator_closure(mode, n, &oracle_ops)?;
    let equal = span.dim() == oracle.dim() && oracle_members.iter().all(|m| span.contains(&m.flatten_sparse(0)));
    Ok(LeftMultSpan { dim: span.dim(), oracle_dim: oracle.dim(), equal })
}
