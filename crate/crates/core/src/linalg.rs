//! Exact dense matrices, sparse vectors and incremental echelon spans.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarMode};

/// Sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, mode: ScalarMode) -> Self {
        SparseVec { entries: vec![(i, mode.one())] }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| (i, s.clone()))
                .collect(),
        }
    }

    /// Entries may come in any order and repeat; they are summed.
    pub fn from_entries(mut e: Vec<(usize, Scalar)>) -> Self {
        e.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(e.len());
        for (i, s) in e {
            match out.last_mut() {
                Some((j, t)) if *j == i => *t += &s,
                _ => out.push((i, s)),
            }
        }
        out.retain(|(_, s)| !s.is_zero());
        SparseVec { entries: out }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn first(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn to_dense(&self, dim: usize, mode: ScalarMode) -> Vec<Scalar> {
        let mut v = vec![mode.zero(); dim];
        for (i, s) in &self.entries {
            v[*i] = s.clone();
        }
        v
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, s)| (*i, c * s)).collect(),
        }
    }

    pub fn shift(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, s)| (i + offset, s.clone())).collect(),
        }
    }
}

/// Accumulate `c * v` into a dense buffer.
pub fn axpy_dense(acc: &mut [Scalar], c: &Scalar, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, s) in v.iter() {
        acc[*i] += &(c * s);
    }
}

/// Dense row-major matrix over one scalar mode.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    mode: ScalarMode,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.mode.label())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(mode: ScalarMode, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, mode, data: vec![mode.zero(); rows * cols] }
    }

    pub fn identity(mode: ScalarMode, n: usize) -> Self {
        let mut m = Self::zeros(mode, n, n);
        for i in 0..n {
            m.data[i * n + i] = mode.one();
        }
        m
    }

    pub fn from_columns(mode: ScalarMode, rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(mode, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, s) in col.iter() {
                m.data[r * m.cols + c] = s.clone();
            }
        }
        m
    }

    pub fn from_rows(mode: ScalarMode, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension { expected: cols, got: bad.len() });
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, mode, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn column_sparse(&self, c: usize) -> SparseVec {
        SparseVec::from_dense(&self.column(c))
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    /// Row-major flattening as a sparse vector, offset by `offset`.
    pub fn flatten_sparse(&self, offset: usize) -> SparseVec {
        SparseVec::from_dense(&self.data).shift(offset)
    }

    fn row_support(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|r| (0..self.cols).filter(|&c| !self.get(r, c).is_zero()).collect())
            .collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shapes do not chain");
        assert_eq!(self.mode, o.mode, "scalar mode mismatch");
        let support = o.row_support();
        let mut out = Matrix::zeros(self.mode, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for &j in &support[k] {
                    let p = a * o.get(k, j);
                    out.data[i * o.cols + j] += &p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.mode.zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        let a = self.get(r, c);
                        if !a.is_zero() {
                            acc += &(a * x);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> Vec<Scalar> {
        let mut out = vec![self.mode.zero(); self.rows];
        for (c, x) in v.iter() {
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, *c);
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shapes differ");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            mode: self.mode,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            mode: self.mode,
            data: self.data.iter().map(|a| c * a).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-self.mode.one())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.mode, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// `[self, o] = self o - o self`.
    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let s = self.get(r, c);
                    if r == c {
                        s.is_one()
                    } else {
                        s.is_zero()
                    }
                })
            })
    }

    /// Copy of the block with the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut b = Matrix::zeros(self.mode, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                b.data[i * b.cols + j] = self.get(r, c).clone();
            }
        }
        b
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(row0 + r) * self.cols + col0 + c] = b.get(r, c).clone();
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Result<Vec<usize>> {
        self.mode.require_field()?;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).inv().expect("field element is invertible");
            for c in 0..self.cols {
                let v = &self.data[row * self.cols + c] * &inv;
                self.data[row * self.cols + c] = v;
            }
            let pivot_row: Vec<Scalar> = self.row(row).to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for (c, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        let v = &self.data[r * self.cols + c] - &(&f * pv);
                        self.data[r * self.cols + c] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.clone().rref()?.len())
    }

    /// Basis of the right kernel; each vector has a 1 at its free column.
    pub fn kernel(&self) -> Result<Vec<Vec<Scalar>>> {
        let mut m = self.clone();
        let pivots = m.rref()?;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.mode.zero(); self.cols];
            v[free] = self.mode.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, free);
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.mode, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(self.mode, n));
        let pivots = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible("matrix".into()));
        }
        Ok(aug.block(0..n, n..2 * n))
    }

    /// Bytes identifying the matrix exactly (shape, mode and entries).
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + self.data.len() * 8);
        out.extend_from_slice(&(self.rows as u64).to_le_bytes());
        out.extend_from_slice(&(self.cols as u64).to_le_bytes());
        out.extend_from_slice(&self.mode.characteristic().to_le_bytes());
        for s in &self.data {
            s.canonical_bytes(&mut out);
        }
        out
    }
}

struct EchelonRow {
    vec: SparseVec,
    combo: SparseVec,
}

/// Incrementally built span of sparse vectors kept in reduced echelon form.
///
/// Every echelon row remembers which combination of inserted members it is,
/// so membership and coordinates relative to the members are cheap.
pub struct SpanBasis {
    mode: ScalarMode,
    ambient: usize,
    rows: Vec<EchelonRow>,
    pivot_row: Vec<Option<u32>>,
    members: usize,
}

impl SpanBasis {
    pub fn new(mode: ScalarMode, ambient: usize) -> Result<Self> {
        mode.require_field()?;
        Ok(SpanBasis { mode, ambient, rows: Vec::new(), pivot_row: vec![None; ambient], members: 0 })
    }

    pub fn dim(&self) -> usize {
        self.members
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduce `v` against the rows; returns the residue and the combination
    /// of members that was subtracted.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut residue = v.clone();
        let mut used = SparseVec::new();
        for (i, s) in v.iter() {
            if let Some(r) = self.pivot_row[*i] {
                let row = &self.rows[r as usize];
                residue = residue.add_scaled(&-s, &row.vec);
                used = used.add_scaled(s, &row.combo);
            }
        }
        (residue, used)
    }

    /// Insert `v`; returns its member index when it enlarges the span.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let (residue, used) = self.reduce(v);
        let (pivot, lead) = residue.first()?.clone();
        let member = self.members;
        let inv = lead.inv().expect("field element is invertible");
        let combo = SparseVec::unit(member, self.mode).add_scaled(&-self.mode.one(), &used);
        let new = EchelonRow { vec: residue.scale(&inv), combo: combo.scale(&inv) };
        for row in &mut self.rows {
            if let Some(f) = row.vec.get(pivot).cloned() {
                row.vec = row.vec.add_scaled(&-&f, &new.vec);
                row.combo = row.combo.add_scaled(&-&f, &new.combo);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len() as u32);
        self.rows.push(new);
        self.members += 1;
        Some(member)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coordinates of `v` relative to the inserted members, if in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (residue, used) = self.reduce(v);
        residue.is_zero().then_some(used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        ScalarMode::Rational.from_i64(n)
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_rows(ScalarMode::Rational, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]).unwrap();
        assert_eq!(m.rank().unwrap(), 1);
        let k = m.kernel().unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn kernel_needs_prime_modulus() {
        let m = Matrix::identity(ScalarMode::Modular(6), 2);
        assert!(matches!(m.kernel(), Err(Error::NotAField(6))));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(ScalarMode::Rational, vec![vec![q(2), q(1)], vec![q(7), q(4)]]).unwrap();
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        let s = Matrix::from_rows(ScalarMode::Rational, vec![vec![q(1), q(1)], vec![q(1), q(1)]]).unwrap();
        assert!(s.inverse().is_err());
    }

    #[test]
    fn span_coordinates() {
        let mode = ScalarMode::Rational;
        let mut span = SpanBasis::new(mode, 3).unwrap();
        let a = SparseVec::from_dense(&[q(1), q(1), q(0)]);
        let b = SparseVec::from_dense(&[q(0), q(1), q(1)]);
        assert_eq!(span.insert(&a), Some(0));
        assert_eq!(span.insert(&b), Some(1));
        assert_eq!(span.insert(&a.add_scaled(&q(3), &b)), None);
        let t = SparseVec::from_dense(&[q(2), q(-1), q(-3)]);
        let c = span.coordinates(&t).unwrap();
        assert_eq!(c.to_dense(2, mode), vec![q(2), q(-3)]);
        assert!(span.coordinates(&SparseVec::unit(0, mode)).is_none());
    }
}
