//! The Lie algebra `pe3(A)` of an alternative algebra.
//!
//! Off-diagonal elements `aE_ij` span the weight spaces `w_i - w_j`; the
//! weight-zero part is spanned by the operators `h_ij(a,b) = [aE_ij, bE_ji]`
//! acting on the off-diagonal part. On an entry `c` at `(p,q)` such an
//! operator acts as the matrix commutator with `abE_ii - baE_jj`, corrected
//! by the associator `(a,b,c)`.
//!
//! The literal commutator closure inside `M3(A)` is available as
//! [`MatrixModel`]; it is a Lie algebra only for associative `A`.

use std::sync::Arc;

use serde_json::json;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{axpy_dense, Matrix, SparseVec, SpanBasis};
use crate::random::TrialRng;
use crate::report::{run_trials, CheckRecord, Status};
use crate::roots::Weight;
use crate::scalar::Scalar;

/// Ordered off-diagonal positions.
pub const OFF: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

pub fn off_index(i: usize, j: usize) -> Option<usize> {
    OFF.iter().position(|&p| p == (i, j))
}

pub struct Pe3 {
    algebra: Algebra,
    members: Vec<Matrix>,
    h_coords: Vec<SparseVec>,
    lie: LieAlgebra,
}

impl std::fmt::Debug for Pe3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pe3").field("algebra", &self.algebra.name()).field("dim", &self.lie.dim()).finish()
    }
}

fn add_into(acc: &mut [Scalar], v: &[Scalar], sign: bool) {
    for (a, b) in acc.iter_mut().zip(v) {
        if sign {
            *a += b;
        } else {
            *a -= b;
        }
    }
}

impl Pe3 {
    pub fn new(algebra: &Algebra) -> Result<Arc<Pe3>> {
        let mode = algebra.mode();
        mode.require_field()?;
        if let Some(w) = algebra.alternativity_witness() {
            return Err(Error::Axiom { axiom: "alternative", at: w.elements.join(", ") });
        }
        let n = algebra.dim();
        let od = 6 * n;
        let mut span = SpanBasis::new(mode, od * od)?;
        let mut members = Vec::new();
        let mut ops = Vec::with_capacity(6 * n * n);
        for &(i, j) in &OFF {
            for a in 0..n {
                for b in 0..n {
                    let h = Self::h_operator(algebra, i, j, &algebra.basis_coords(a), &algebra.basis_coords(b));
                    if span.insert(&h.flatten_sparse(0)).is_some() {
                        members.push(h.clone());
                    }
                    ops.push(h);
                }
            }
        }
        let h_coords: Vec<SparseVec> = ops.iter().map(|h| span.coordinates(&h.flatten_sparse(0)).expect("member of span")).collect();
        drop(ops);

        let m = members.len();
        let dim = od + m;
        let mut table = vec![SparseVec::new(); dim * dim];
        let neg1 = -mode.one();
        let idx = |p: usize, a: usize| p * n + a;
        for (p, &(i, j)) in OFF.iter().enumerate() {
            for (q, &(k, l)) in OFF.iter().enumerate() {
                for a in 0..n {
                    for b in 0..n {
                        let (ea, eb) = (algebra.basis_coords(a), algebra.basis_coords(b));
                        let v = if k == j && l == i {
                            h_coords[(p * n + a) * n + b].shift(od)
                        } else if k == j {
                            let r = off_index(i, l).expect("i != l");
                            SparseVec::from_dense(&algebra.mul_coords(&ea, &eb)).shift(r * n)
                        } else if l == i {
                            let r = off_index(k, j).expect("k != j");
                            SparseVec::from_dense(&algebra.mul_coords(&eb, &ea)).shift(r * n).scale(&neg1)
                        } else {
                            SparseVec::new()
                        };
                        table[idx(p, a) * dim + idx(q, b)] = v;
                    }
                }
            }
        }
        for (k, h) in members.iter().enumerate() {
            for c in 0..od {
                let col = h.column_sparse(c);
                table[(od + k) * dim + c] = col.clone();
                table[c * dim + od + k] = col.scale(&neg1);
            }
        }
        for s in 0..m {
            for t in s + 1..m {
                let comm = members[s].commutator(&members[t]);
                if comm.is_zero() {
                    continue;
                }
                let c = span
                    .coordinates(&comm.flatten_sparse(0))
                    .ok_or_else(|| Error::Closure(format!("commutator of weight-zero members {s} and {t} leaves the algebra")))?
                    .shift(od);
                table[(od + t) * dim + od + s] = c.scale(&neg1);
                table[(od + s) * dim + od + t] = c;
            }
        }
        let mut labels = Vec::with_capacity(dim);
        let mut weights = Vec::with_capacity(dim);
        for &(i, j) in &OFF {
            for a in 0..n {
                labels.push(format!("{}E{}{}", algebra.labels()[a], i + 1, j + 1));
                let mut w = [0; 3];
                w[i] = 1;
                w[j] = -1;
                weights.push(Weight(w));
            }
        }
        let mut k = 0;
        'outer: for &(i, j) in &OFF {
            for a in 0..n {
                for b in 0..n {
                    if k == m {
                        break 'outer;
                    }
                    let c = &h_coords[(off_index(i, j).unwrap() * n + a) * n + b];
                    if c.nnz() == 1 && c.first().map(|(x, _)| *x) == Some(k) {
                        labels.push(format!("h{}{}({},{})", i + 1, j + 1, algebra.labels()[a], algebra.labels()[b]));
                        weights.push(Weight::ZERO);
                        k += 1;
                    }
                }
            }
        }
        while labels.len() < dim {
            labels.push(format!("h#{}", labels.len() - od));
            weights.push(Weight::ZERO);
        }
        let lie = LieAlgebra::new(mode, labels, weights, table)?;
        Ok(Arc::new(Pe3 { algebra: algebra.clone(), members, h_coords, lie }))
    }

    /// The operator `[aE_ij, bE_ji]` on the off-diagonal part.
    pub fn h_operator(algebra: &Algebra, i: usize, j: usize, a: &[Scalar], b: &[Scalar]) -> Matrix {
        let n = algebra.dim();
        let mul = |x: &[Scalar], y: &[Scalar]| algebra.mul_coords(x, y);
        let cols: Vec<SparseVec> = (0..6 * n)
            .map(|col| {
                let (p, q) = OFF[col / n];
                let c = algebra.basis_coords(col % n);
                let mut v = algebra.zero_coords();
                // Matrix commutator with abE_ii - baE_jj.
                if p == i {
                    add_into(&mut v, &mul(&mul(a, b), &c), true);
                }
                if p == j {
                    add_into(&mut v, &mul(&mul(b, a), &c), false);
                }
                if q == i {
                    add_into(&mut v, &mul(&c, &mul(a, b)), false);
                }
                if q == j {
                    add_into(&mut v, &mul(&c, &mul(b, a)), true);
                }
                add_into(&mut v, &algebra.associator_coords(a, b, &c), false);
                SparseVec::from_dense(&v).shift((col / n) * n)
            })
            .collect();
        Matrix::from_columns(algebra.mode(), 6 * n, &cols)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn weight_zero_dim(&self) -> usize {
        self.members.len()
    }

    /// Coordinates of `aE_ij`.
    pub fn off_element(&self, i: usize, j: usize, a: &[Scalar]) -> Result<Vec<Scalar>> {
        let p = off_index(i, j).ok_or_else(|| Error::Config(format!("E_{}{} is not off-diagonal", i + 1, j + 1)))?;
        let n = self.algebra.dim();
        let mut v = self.lie.zero();
        v[p * n..(p + 1) * n].clone_from_slice(a);
        Ok(v)
    }

    /// Algebra entry at `(i, j)` of the off-diagonal part.
    pub fn off_entry(&self, v: &[Scalar], i: usize, j: usize) -> Vec<Scalar> {
        let n = self.algebra.dim();
        let p = off_index(i, j).expect("off-diagonal position");
        v[p * n..(p + 1) * n].to_vec()
    }

    /// Weight-zero coordinates of `[aE_ij, bE_ji]`.
    pub fn h_coords(&self, i: usize, j: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.algebra.dim();
        let p = off_index(i, j).expect("off-diagonal position");
        let mut out = vec![self.algebra.mode().zero(); self.members.len()];
        for (x, ax) in a.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (y, by) in b.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                axpy_dense(&mut out, &(ax * by), &self.h_coords[(p * n + x) * n + y]);
            }
        }
        out
    }

    pub fn check_grading(&self) -> CheckRecord {
        self.lie.grading_check("pe3-grading", |w| w.is_zero() || w.is_a2_root())
    }
}

/// `e3(A)` as the span closure of `{aE_ij}` under `[x,y] = xy - yx` in `M3(A)`.
pub struct MatrixModel {
    algebra: Algebra,
    basis: Vec<Vec<Scalar>>,
}

impl MatrixModel {
    pub fn new(algebra: &Algebra) -> Result<MatrixModel> {
        let mode = algebra.mode();
        let n = algebra.dim();
        let mut span = SpanBasis::new(mode, 9 * n)?;
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        for &(i, j) in &OFF {
            for a in 0..n {
                let mut v = vec![mode.zero(); 9 * n];
                v[(3 * i + j) * n + a] = mode.one();
                if span.insert(&SparseVec::from_dense(&v)).is_some() {
                    basis.push(v);
                }
            }
        }
        let mut done = 0;
        while done < basis.len() {
            let end = basis.len();
            for s in done..end {
                for t in 0..end {
                    let c = matrix_commutator(algebra, &basis[s], &basis[t]);
                    if span.insert(&SparseVec::from_dense(&c)).is_some() {
                        basis.push(c);
                    }
                }
            }
            done = end;
        }
        Ok(MatrixModel { algebra: algebra.clone(), basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        matrix_commutator(&self.algebra, x, y)
    }

    /// Elements of the closure commuting with every element of the closure.
    pub fn center(&self) -> Result<Vec<Vec<Scalar>>> {
        let mode = self.algebra.mode();
        let dn = 9 * self.algebra.dim();
        let k = self.basis.len();
        let mut rows = Vec::new();
        for b in &self.basis {
            let images: Vec<Vec<Scalar>> = self.basis.iter().map(|z| matrix_commutator(&self.algebra, z, b)).collect();
            for r in 0..dn {
                rows.push((0..k).map(|c| images[c][r].clone()).collect());
            }
        }
        let m = Matrix::from_rows(mode, rows)?;
        let kernel = if k == 0 { Vec::new() } else { m.kernel()? };
        Ok(kernel
            .iter()
            .map(|c| {
                let mut v = vec![mode.zero(); dn];
                for (ci, bi) in c.iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(bi) {
                        *x += &(ci * y);
                    }
                }
                v
            })
            .collect())
    }

    /// Every central element is `cI` with `c` in the center of `A`.
    pub fn center_check(&self) -> Result<CheckRecord> {
        let n = self.algebra.dim();
        let zc = self.algebra.center_basis()?;
        let mut zspan = SpanBasis::new(self.algebra.mode(), n)?;
        for z in &zc {
            zspan.insert(&SparseVec::from_dense(z));
        }
        let center = self.center()?;
        for z in &center {
            let entry = |i: usize, j: usize| z[(3 * i + j) * n..(3 * i + j + 1) * n].to_vec();
            let d = entry(0, 0);
            let scalar = (0..3).all(|i| entry(i, i) == d)
                && OFF.iter().all(|&(i, j)| entry(i, j).iter().all(|s| s.is_zero()))
                && zspan.contains(&SparseVec::from_dense(&d));
            if !scalar {
                return Ok(CheckRecord::new("e3-center", "center of e3(A) lies in Z(A)I", Status::Fail, center.len())
                    .with_witness(json!({ "element": z.iter().map(|s| s.to_string()).collect::<Vec<_>>() })));
            }
        }
        Ok(CheckRecord::new("e3-center", "center of e3(A) lies in Z(A)I", Status::Pass, center.len().max(1))
            .with_note(format!("dim e3 = {}, dim center = {}", self.dim(), center.len())))
    }

    /// Jacobi on random elements of the closure; fails for non-associative `A`.
    pub fn jacobi_report(&self, trials: usize, rng: &mut TrialRng) -> Result<CheckRecord> {
        let mode = self.algebra.mode();
        let k = self.basis.len();
        let combo = |c: &[Scalar]| {
            let mut v = vec![mode.zero(); 9 * self.algebra.dim()];
            for (ci, bi) in c.iter().zip(&self.basis) {
                for (x, y) in v.iter_mut().zip(bi) {
                    *x += &(ci * y);
                }
            }
            v
        };
        run_trials("e3-matrix-jacobi", "Jacobi for matrix commutators in M3(A)", trials, |_| {
            let (u, v, w) = (combo(&rng.vector(mode, k)), combo(&rng.vector(mode, k)), combo(&rng.vector(mode, k)));
            let mut s = self.bracket(&u, &self.bracket(&v, &w));
            add_into(&mut s, &self.bracket(&v, &self.bracket(&w, &u)), true);
            add_into(&mut s, &self.bracket(&w, &self.bracket(&u, &v)), true);
            Ok(s.iter().any(|x| !x.is_zero()).then(|| json!({ "nonzero_entries": s.iter().filter(|x| !x.is_zero()).count() })))
        })
    }
}

fn matrix_commutator(algebra: &Algebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let n = algebra.dim();
    let mut out = vec![algebra.mode().zero(); 9 * n];
    let e = |m: &[Scalar], i: usize, j: usize| m[(3 * i + j) * n..(3 * i + j + 1) * n].to_vec();
    for i in 0..3 {
        for j in 0..3 {
            let slot = &mut out[(3 * i + j) * n..(3 * i + j + 1) * n];
            for k in 0..3 {
                let (xa, yb) = (e(x, i, k), e(y, k, j));
                if xa.iter().any(|s| !s.is_zero()) && yb.iter().any(|s| !s.is_zero()) {
                    add_into(slot, &algebra.mul_coords(&xa, &yb), true);
                }
                let (ya, xb) = (e(y, i, k), e(x, k, j));
                if ya.iter().any(|s| !s.is_zero()) && xb.iter().any(|s| !s.is_zero()) {
                    add_into(slot, &algebra.mul_coords(&ya, &xb), false);
                }
            }
        }
    }
    out
}
