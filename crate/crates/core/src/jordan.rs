//! The Jordan pair `(H3(A,*), H3(A,*))` of hermitian 3x3 matrices.
//!
//! Coordinates: the three diagonal slots over a basis of `Sym(A)`, then the
//! off-diagonal slots `[12]`, `[13]`, `[23]` over the basis of `A`. An entry
//! `d[ij]` with `i > j` is stored as `d*[ji]`.
//!
//! `U` and the triple product are integral: they are expanded over basis
//! elements and evaluated on single matrix positions, where the product of
//! three hermitian matrices reduces to a sum over index paths.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{axpy_dense, Matrix, SparseVec, SpanBasis};
use crate::roots::Weight;
use crate::scalar::{Scalar, ScalarMode};

pub mod checks;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A matrix position of `H3`: a diagonal slot or an upper off-diagonal slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Position {
    Diag(usize),
    Off(usize, usize),
}

impl Position {
    pub const ALL: [Position; 6] = [
        Position::Diag(0),
        Position::Diag(1),
        Position::Diag(2),
        Position::Off(0, 1),
        Position::Off(0, 2),
        Position::Off(1, 2),
    ];

    /// Position of matrix entry `(i, j)`.
    pub fn of(i: usize, j: usize) -> Position {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Position::Diag(i),
            std::cmp::Ordering::Less => Position::Off(i, j),
            std::cmp::Ordering::Greater => Position::Off(j, i),
        }
    }

    /// Weight of the position inside `V+`.
    pub fn weight(self) -> Weight {
        let mut w = [0i32; 3];
        match self {
            Position::Diag(i) => w[i] = 2,
            Position::Off(i, j) => {
                w[i] = 1;
                w[j] = 1;
            }
        }
        Weight(w)
    }

    pub fn label(self) -> String {
        match self {
            Position::Diag(i) => format!("[{}{}]", i + 1, i + 1),
            Position::Off(i, j) => format!("[{}{}]", i + 1, j + 1),
        }
    }
}

// Matrix entries of a position-homogeneous element: (row, col, A-coords).
type Entries = Vec<(usize, usize, Vec<Scalar>)>;

/// Coordinates, tables and operators of `H3(A,*)`.
pub struct HermSpace {
    algebra: Algebra,
    sym: Vec<Vec<Scalar>>,
    sym_span: SpanBasis,
    labels: Vec<String>,
    u_table: Vec<SparseVec>,
    t_table: Vec<Vec<(usize, SparseVec)>>,
}

impl fmt::Debug for HermSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HermSpace").field("algebra", &self.algebra.name()).field("dim", &self.dim()).finish()
    }
}

pub type Herm = Arc<HermSpace>;

impl HermSpace {
    pub fn new(algebra: &Algebra) -> Result<Herm> {
        let sym = algebra.symmetric_basis()?;
        if let Some(w) = algebra.nuclear_involution_witness()? {
            return Err(Error::Axiom { axiom: "symmetric elements are nuclear", at: w.elements.join(", ") });
        }
        let n = algebra.dim();
        let mut sym_span = SpanBasis::new(algebra.mode(), n)?;
        for s in &sym {
            sym_span.insert(&SparseVec::from_dense(s));
        }
        let mut space = HermSpace {
            algebra: algebra.clone(),
            sym,
            sym_span,
            labels: Vec::new(),
            u_table: Vec::new(),
            t_table: Vec::new(),
        };
        space.labels = (0..space.dim())
            .map(|a| {
                let (p, t) = space.locate(a);
                let coeff = match p {
                    Position::Diag(_) => algebra.format_coords(&space.sym[t]),
                    Position::Off(..) => algebra.labels()[t].clone(),
                };
                format!("{coeff}{}", p.label())
            })
            .collect();
        space.build_tables();
        Ok(Arc::new(space))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn mode(&self) -> ScalarMode {
        self.algebra.mode()
    }

    pub fn sym_dim(&self) -> usize {
        self.sym.len()
    }

    pub fn sym_basis(&self) -> &[Vec<Scalar>] {
        &self.sym
    }

    pub fn dim(&self) -> usize {
        3 * self.sym.len() + 3 * self.algebra.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// First coordinate index of a position.
    pub fn offset(&self, p: Position) -> usize {
        let (s, n) = (self.sym.len(), self.algebra.dim());
        match p {
            Position::Diag(i) => i * s,
            Position::Off(0, 1) => 3 * s,
            Position::Off(0, 2) => 3 * s + n,
            Position::Off(1, 2) => 3 * s + 2 * n,
            Position::Off(..) => panic!("positions are stored with i < j"),
        }
    }

    pub fn width(&self, p: Position) -> usize {
        match p {
            Position::Diag(_) => self.sym.len(),
            Position::Off(..) => self.algebra.dim(),
        }
    }

    /// Position and local index of coordinate `a`.
    pub fn locate(&self, a: usize) -> (Position, usize) {
        let s = self.sym.len();
        let n = self.algebra.dim();
        if a < 3 * s {
            (Position::Diag(a / s), a % s)
        } else {
            let k = a - 3 * s;
            let p = [Position::Off(0, 1), Position::Off(0, 2), Position::Off(1, 2)][k / n];
            (p, k % n)
        }
    }

    pub fn position_of(&self, a: usize) -> Position {
        self.locate(a).0
    }

    /// Weight of basis coordinate `a` inside `V^sign`.
    pub fn weight(&self, a: usize, sign: Sign) -> Weight {
        let w = self.position_of(a).weight();
        match sign {
            Sign::Plus => w,
            Sign::Minus => w.neg(),
        }
    }

    fn entries(&self, a: usize) -> Entries {
        match self.locate(a) {
            (Position::Diag(i), t) => vec![(i, i, self.sym[t].clone())],
            (Position::Off(i, j), t) => {
                let e = self.algebra.basis_coords(t);
                let c = self.algebra.conj_coords(&e).expect("nuclear involution exists");
                vec![(i, j, e), (j, i, c)]
            }
        }
    }

    /// Sum over index paths of `first * mid * last`, grouping each monomial
    /// as `u(vw)` when `first` and `mid` share a position that `last` does
    /// not, and as `(uv)w` otherwise. Closed 3-cycles are the exception.
    fn path_sum(&self, out: &mut [[Option<Vec<Scalar>>; 3]; 3], x: (&Entries, Position), y: (&Entries, Position), z: (&Entries, Position)) {
        let alg = &self.algebra;
        let right_first = x.1 == y.1 && z.1 != y.1;
        for (p, r, u) in x.0 {
            for (r2, s, v) in y.0 {
                if r2 != r {
                    continue;
                }
                for (s2, q, w) in z.0 {
                    if s2 != s {
                        continue;
                    }
                    // A cycle i -> r -> s -> i and its reverse get mirrored
                    // groupings so their contributions are conjugate.
                    let cycle = p == q && p != r && r != s && s != p;
                    let m = if (cycle && r < s) || (!cycle && right_first) {
                        alg.mul_coords(u, &alg.mul_coords(v, w))
                    } else {
                        alg.mul_coords(&alg.mul_coords(u, v), w)
                    };
                    let cell = &mut out[*p][*q];
                    match cell {
                        Some(acc) => {
                            for (a, b) in acc.iter_mut().zip(&m) {
                                *a += b;
                            }
                        }
                        None => *cell = Some(m),
                    }
                }
            }
        }
    }

    fn read_matrix(&self, m: &[[Option<Vec<Scalar>>; 3]; 3]) -> SparseVec {
        let mut out = Vec::new();
        for p in Position::ALL {
            let (i, j) = match p {
                Position::Diag(i) => (i, i),
                Position::Off(i, j) => (i, j),
            };
            let Some(v) = &m[i][j] else { continue };
            let off = self.offset(p);
            match p {
                Position::Diag(_) => {
                    let c = self
                        .sym_span
                        .coordinates(&SparseVec::from_dense(v))
                        .expect("diagonal entries of hermitian products are symmetric");
                    out.extend(c.iter().map(|(k, s)| (off + k, s.clone())));
                }
                Position::Off(..) => {
                    out.extend(v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, s)| (off + k, s.clone())));
                }
            }
        }
        SparseVec::from_entries(out)
    }

    fn build_tables(&mut self) {
        let d = self.dim();
        let ents: Vec<Entries> = (0..d).map(|a| self.entries(a)).collect();
        let pos: Vec<Position> = (0..d).map(|a| self.position_of(a)).collect();
        let empty = || -> [[Option<Vec<Scalar>>; 3]; 3] { Default::default() };
        let mut u_table = Vec::with_capacity(d * d);
        let mut t_table = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let mut m = empty();
                self.path_sum(&mut m, (&ents[a], pos[a]), (&ents[b], pos[b]), (&ents[a], pos[a]));
                u_table.push(self.read_matrix(&m));
                let mut row = Vec::new();
                for c in 0..d {
                    let mut m = empty();
                    self.path_sum(&mut m, (&ents[a], pos[a]), (&ents[b], pos[b]), (&ents[c], pos[c]));
                    self.path_sum(&mut m, (&ents[c], pos[c]), (&ents[b], pos[b]), (&ents[a], pos[a]));
                    let v = self.read_matrix(&m);
                    if !v.is_zero() {
                        row.push((c, v));
                    }
                }
                t_table.push(row);
            }
        }
        self.u_table = u_table;
        self.t_table = t_table;
    }

    /// `U_{e_a} e_b`.
    pub fn u_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.u_table[a * self.dim() + b]
    }

    /// Nonzero `{e_a, e_b, e_c}` as `(c, value)`.
    pub fn triple_basis_row(&self, a: usize, b: usize) -> &[(usize, SparseVec)] {
        &self.t_table[a * self.dim() + b]
    }

    pub fn zero_coords(&self) -> Vec<Scalar> {
        vec![self.mode().zero(); self.dim()]
    }

    /// `U_x y` on raw coordinates.
    pub fn u_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = self.zero_coords();
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            let xa2 = xa * xa;
            for (b, yb) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                axpy_dense(&mut out, &(&xa2 * yb), &self.u_table[a * d + b]);
                let xy = xa * yb;
                for (c, v) in &self.t_table[a * d + b] {
                    if *c > a && !x[*c].is_zero() {
                        axpy_dense(&mut out, &(&xy * &x[*c]), v);
                    }
                }
            }
        }
        out
    }

    /// `{x, y, z}` on raw coordinates.
    pub fn triple_coords(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = self.zero_coords();
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let xy = xa * yb;
                for (c, v) in &self.t_table[a * d + b] {
                    if !z[*c].is_zero() {
                        axpy_dense(&mut out, &(&xy * &z[*c]), v);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `z -> {x, y, z}`.
    pub fn d_matrix(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.mode(), d, d);
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let xy = xa * yb;
                for (c, v) in &self.t_table[a * d + b] {
                    for (r, s) in v.iter() {
                        m.add_at(*r, *c, &(&xy * s));
                    }
                }
            }
        }
        m
    }

    /// Matrix of `y -> U_x y`.
    pub fn q_matrix(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.mode(), d, d);
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            let xa2 = xa * xa;
            for b in 0..d {
                for (r, s) in self.u_table[a * d + b].iter() {
                    m.add_at(*r, b, &(&xa2 * s));
                }
                for (c, v) in &self.t_table[a * d + b] {
                    if *c > a && !x[*c].is_zero() {
                        let f = xa * &x[*c];
                        for (r, s) in v.iter() {
                            m.add_at(*r, b, &(&f * s));
                        }
                    }
                }
            }
        }
        m
    }

    /// `Id - D(x,y) + Q_x Q_y` on raw coordinates.
    pub fn bergmann_matrix(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        let id = Matrix::identity(self.mode(), self.dim());
        id.sub(&self.d_matrix(x, y)).add(&self.q_matrix(x).mul(&self.q_matrix(y)))
    }

    /// Coordinates of `alpha` over the symmetric basis, if symmetric.
    pub fn sym_coords(&self, alpha: &[Scalar]) -> Option<Vec<Scalar>> {
        self.sym_span
            .coordinates(&SparseVec::from_dense(alpha))
            .map(|c| c.to_dense(self.sym.len(), self.mode()))
    }

    pub fn sym_element(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.algebra.zero_coords();
        for (c, s) in coords.iter().zip(&self.sym) {
            for (a, b) in v.iter_mut().zip(s) {
                *a += &(c * b);
            }
        }
        v
    }

    /// Coordinates of the homogeneous element `a` at matrix entry `(i, j)`.
    pub fn homogeneous(&self, i: usize, j: usize, a: &[Scalar]) -> Result<Vec<Scalar>> {
        if i > 2 || j > 2 {
            return Err(Error::Config(format!("matrix index out of range: ({i},{j})")));
        }
        let mut v = self.zero_coords();
        let p = Position::of(i, j);
        let off = self.offset(p);
        match p {
            Position::Diag(_) => {
                let c = self.sym_coords(a).ok_or_else(|| Error::Axiom { axiom: "diagonal entries are symmetric", at: self.algebra.format_coords(a) })?;
                for (k, s) in c.into_iter().enumerate() {
                    v[off + k] = s;
                }
            }
            Position::Off(..) => {
                let entry = if i < j { a.to_vec() } else { self.algebra.conj_coords(a)? };
                for (k, s) in entry.into_iter().enumerate() {
                    v[off + k] = s;
                }
            }
        }
        Ok(v)
    }

    /// Algebra entry of `x` at matrix position `(i, j)`.
    pub fn entry(&self, x: &[Scalar], i: usize, j: usize) -> Vec<Scalar> {
        let p = Position::of(i, j);
        let off = self.offset(p);
        let w = self.width(p);
        match p {
            Position::Diag(_) => self.sym_element(&x[off..off + w]),
            Position::Off(..) if i < j => x[off..off + w].to_vec(),
            Position::Off(..) => self.algebra.conj_coords(&x[off..off + w]).expect("nuclear involution exists"),
        }
    }

    pub fn format_coords(&self, x: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for p in Position::ALL {
            let (i, j) = match p {
                Position::Diag(i) => (i, i),
                Position::Off(i, j) => (i, j),
            };
            let e = self.entry(x, i, j);
            if e.iter().any(|s| !s.is_zero()) {
                parts.push(format!("({}){}", self.algebra.format_coords(&e), p.label()));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// An element of `V+` or `V-`.
#[derive(Clone, Debug)]
pub struct HermElement {
    space: Herm,
    sign: Sign,
    coords: Vec<Scalar>,
}

impl PartialEq for HermElement {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.space, &o.space) && self.sign == o.sign && self.coords == o.coords
    }
}

impl Eq for HermElement {}

impl HermElement {
    pub fn zero(space: &Herm, sign: Sign) -> Self {
        HermElement { space: space.clone(), sign, coords: space.zero_coords() }
    }

    pub fn from_coords(space: &Herm, sign: Sign, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::Dimension { expected: space.dim(), got: coords.len() });
        }
        Ok(HermElement { space: space.clone(), sign, coords })
    }

    pub fn basis(space: &Herm, sign: Sign, a: usize) -> Self {
        let mut coords = space.zero_coords();
        coords[a] = space.mode().one();
        HermElement { space: space.clone(), sign, coords }
    }

    /// `a[ij]`; for `i == j` the entry must be symmetric.
    pub fn at(space: &Herm, sign: Sign, i: usize, j: usize, a: &AlgebraElement) -> Result<Self> {
        if !Arc::ptr_eq(a.algebra(), space.algebra()) && **a.algebra() != **space.algebra() {
            return Err(Error::Incompatible);
        }
        Ok(HermElement { space: space.clone(), sign, coords: space.homogeneous(i, j, a.coords())? })
    }

    pub fn space(&self) -> &Herm {
        &self.space
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|s| s.is_zero())
    }

    pub fn entry(&self, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::new(self.space.algebra(), self.space.entry(&self.coords, i, j)).expect("entry has algebra dimension")
    }

    fn with(&self, sign: Sign, coords: Vec<Scalar>) -> Self {
        HermElement { space: self.space.clone(), sign, coords }
    }

    fn same_space(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.space, &o.space) {
            Ok(())
        } else {
            Err(Error::Incompatible)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_space(o)?;
        if self.sign != o.sign {
            return Err(Error::Sign("adding elements of V+ and V-".into()));
        }
        Ok(self.with(self.sign, self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn neg(&self) -> Self {
        self.with(self.sign, self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.with(self.sign, self.coords.iter().map(|a| c * a).collect())
    }

    /// The same coordinates viewed in the other half of the pair.
    pub fn flip(&self) -> Self {
        self.with(self.sign.opposite(), self.coords.clone())
    }
}

impl fmt::Display for HermElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.space.format_coords(&self.coords), self.sign.symbol())
    }
}

/// A linear map between halves of the pair, in the `H3` coordinate basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermOperator {
    pub domain: Sign,
    pub codomain: Sign,
    pub matrix: Matrix,
}

impl HermOperator {
    pub fn apply(&self, x: &HermElement) -> Result<HermElement> {
        if x.sign != self.domain {
            return Err(Error::Sign(format!("operator acts on V{}", self.domain.symbol())));
        }
        Ok(x.with(self.codomain, self.matrix.mul_vec(&x.coords)))
    }

    pub fn compose(&self, inner: &HermOperator) -> Result<HermOperator> {
        if inner.codomain != self.domain {
            return Err(Error::Sign("operators do not compose".into()));
        }
        Ok(HermOperator { domain: inner.domain, codomain: self.codomain, matrix: self.matrix.mul(&inner.matrix) })
    }
}

fn opposite_signs(x: &HermElement, y: &HermElement) -> Result<()> {
    x.same_space(y)?;
    if x.sign == y.sign {
        return Err(Error::Sign(format!("expected opposite signs, got V{} and V{}", x.sign.symbol(), y.sign.symbol())));
    }
    Ok(())
}

/// `U_x y`, carrying the sign of `x`.
pub fn u_op(x: &HermElement, y: &HermElement) -> Result<HermElement> {
    opposite_signs(x, y)?;
    Ok(x.with(x.sign, x.space.u_coords(&x.coords, &y.coords)))
}

/// `{x, y, z}`.
pub fn triple(x: &HermElement, y: &HermElement, z: &HermElement) -> Result<HermElement> {
    opposite_signs(x, y)?;
    opposite_signs(z, y)?;
    Ok(x.with(x.sign, x.space.triple_coords(&x.coords, &y.coords, &z.coords)))
}

/// `D(x, y) = {x, y, .}` on `V^sign(x)`.
pub fn d_op(x: &HermElement, y: &HermElement) -> Result<HermOperator> {
    opposite_signs(x, y)?;
    Ok(HermOperator { domain: x.sign, codomain: x.sign, matrix: x.space.d_matrix(&x.coords, &y.coords) })
}

/// `Q_x : V^{-sign(x)} -> V^{sign(x)}`.
pub fn q_op(x: &HermElement) -> HermOperator {
    HermOperator { domain: x.sign.opposite(), codomain: x.sign, matrix: x.space.q_matrix(&x.coords) }
}

/// `B(x, y) = Id - D(x, y) + Q_x Q_y` on `V^sign(x)`.
pub fn bergmann(x: &HermElement, y: &HermElement) -> Result<HermOperator> {
    opposite_signs(x, y)?;
    Ok(HermOperator { domain: x.sign, codomain: x.sign, matrix: x.space.bergmann_matrix(&x.coords, &y.coords) })
}
