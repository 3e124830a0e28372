//! The TKK Lie algebra `V+ (+) L0 (+) V-` of the hermitian Jordan pair.
//!
//! `L0` is spanned by `zeta = (Id, -Id)` and the inner derivations
//! `delta(x, y) = (D(x,y), -D(y,x))`; its elements are stored as pairs of
//! matrices with coordinates over a computed basis of such pairs.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::jordan::{Herm, HermElement, Sign};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, SparseVec, SpanBasis};
use crate::random::TrialRng;
use crate::report::{run_trials, CheckRecord, Status};
use crate::roots::{c3_roots, Weight};
use crate::scalar::Scalar;

/// A member of the `L0` basis.
#[derive(Clone, Debug)]
pub enum L0Origin {
    Zeta,
    Delta(usize, usize),
}

pub struct Tkk {
    herm: Herm,
    members: Vec<(Matrix, Matrix)>,
    origins: Vec<L0Origin>,
    span: SpanBasis,
    delta_coords: Vec<SparseVec>,
    lie: LieAlgebra,
}

impl std::fmt::Debug for Tkk {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tkk").field("dim", &self.dim()).field("l0", &self.l0_dim()).finish()
    }
}

fn flatten(a: &Matrix, b: &Matrix) -> SparseVec {
    let n = a.rows() * a.cols();
    let mut e: Vec<_> = a.flatten_sparse(0).iter().cloned().collect();
    e.extend(b.flatten_sparse(n).iter().cloned());
    SparseVec::from_entries(e)
}

impl Tkk {
    pub fn new(herm: &Herm) -> Result<Arc<Tkk>> {
        let mode = herm.mode();
        mode.require_field()?;
        let d = herm.dim();
        let mut span = SpanBasis::new(mode, 2 * d * d)?;
        let mut members = Vec::new();
        let mut origins = Vec::new();
        let id = Matrix::identity(mode, d);
        if d > 0 {
            span.insert(&flatten(&id, &id.neg()));
        }
        members.push((id.clone(), id.neg()));
        origins.push(L0Origin::Zeta);

        let basis = |a: usize| {
            let mut v = herm.zero_coords();
            v[a] = mode.one();
            v
        };
        let mut pairs = Vec::with_capacity(d * d);
        for a in 0..d {
            let ea = basis(a);
            for b in 0..d {
                let eb = basis(b);
                let p = (herm.d_matrix(&ea, &eb), herm.d_matrix(&eb, &ea).neg());
                if span.insert(&flatten(&p.0, &p.1)).is_some() {
                    origins.push(L0Origin::Delta(a, b));
                    members.push(p.clone());
                }
                pairs.push(p);
            }
        }
        let mut delta_coords = Vec::with_capacity(d * d);
        for p in &pairs {
            let c = span.coordinates(&flatten(&p.0, &p.1)).expect("inserted vectors lie in the span");
            delta_coords.push(c);
        }
        drop(pairs);

        let m = members.len();
        let n = 2 * d + m;
        let (lo, mi) = (d, d + m);
        let mut table = vec![SparseVec::new(); n * n];
        let neg1 = -mode.one();

        for a in 0..d {
            for b in 0..d {
                let c = delta_coords[a * d + b].shift(lo);
                table[(mi + b) * n + a] = c.clone();
                table[a * n + mi + b] = c.scale(&neg1);
            }
        }
        for k in 0..m {
            let (pa, pb) = &members[k];
            for c in 0..d {
                let plus = pa.column_sparse(c);
                table[(lo + k) * n + c] = plus.clone();
                table[c * n + lo + k] = plus.scale(&neg1);
                let minus = pb.column_sparse(c).shift(mi);
                table[(lo + k) * n + mi + c] = minus.clone();
                table[(mi + c) * n + lo + k] = minus.scale(&neg1);
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let (a1, b1) = &members[i];
                let (a2, b2) = &members[j];
                let comm = flatten(&a1.commutator(a2), &b1.commutator(b2));
                if comm.is_zero() {
                    continue;
                }
                let c = span
                    .coordinates(&comm)
                    .ok_or_else(|| Error::Closure(format!("commutator of L0 members {i} and {j} leaves L0")))?
                    .shift(lo);
                table[(lo + j) * n + lo + i] = c.scale(&neg1);
                table[(lo + i) * n + lo + j] = c;
            }
        }

        let mut labels = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for a in 0..d {
            labels.push(format!("{}+", herm.labels()[a]));
            weights.push(herm.weight(a, Sign::Plus));
        }
        for o in &origins {
            match o {
                L0Origin::Zeta => {
                    labels.push("zeta".into());
                    weights.push(Weight::ZERO);
                }
                L0Origin::Delta(a, b) => {
                    labels.push(format!("delta({}+,{}-)", herm.labels()[*a], herm.labels()[*b]));
                    weights.push(herm.weight(*a, Sign::Plus) + herm.weight(*b, Sign::Minus));
                }
            }
        }
        for a in 0..d {
            labels.push(format!("{}-", herm.labels()[a]));
            weights.push(herm.weight(a, Sign::Minus));
        }
        let lie = LieAlgebra::new(mode, labels, weights, table)?;
        Ok(Arc::new(Tkk { herm: herm.clone(), members, origins, span, delta_coords, lie }))
    }

    pub fn herm(&self) -> &Herm {
        &self.herm
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn l0_dim(&self) -> usize {
        self.members.len()
    }

    /// The pair of matrices of the `k`-th `L0` basis element.
    pub fn member(&self, k: usize) -> &(Matrix, Matrix) {
        &self.members[k]
    }

    pub fn l0_origins(&self) -> &[L0Origin] {
        &self.origins
    }

    /// Index of the first `L0` coordinate.
    pub fn l0_offset(&self) -> usize {
        self.herm.dim()
    }

    /// Index of the first `V-` coordinate.
    pub fn minus_offset(&self) -> usize {
        self.herm.dim() + self.members.len()
    }

    /// Embed an element of `V^sign` given by its `H3` coordinates.
    pub fn embed(&self, sign: Sign, x: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.lie.zero();
        let off = match sign {
            Sign::Plus => 0,
            Sign::Minus => self.minus_offset(),
        };
        v[off..off + x.len()].clone_from_slice(x);
        v
    }

    pub fn embed_element(&self, x: &HermElement) -> Vec<Scalar> {
        self.embed(x.sign(), x.coords())
    }

    /// `H3` coordinates of the `V^sign` component.
    pub fn component(&self, sign: Sign, v: &[Scalar]) -> Vec<Scalar> {
        let d = self.herm.dim();
        let off = match sign {
            Sign::Plus => 0,
            Sign::Minus => self.minus_offset(),
        };
        v[off..off + d].to_vec()
    }

    /// `L0` coordinates of `delta(x, y)` for `x` in `V+`, `y` in `V-`.
    pub fn delta_l0(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.herm.dim();
        let mut out = vec![self.herm.mode().zero(); self.l0_dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                crate::linalg::axpy_dense(&mut out, &(xa * yb), &self.delta_coords[a * d + b]);
            }
        }
        out
    }

    /// `delta(x, y)` as an element of the Lie algebra.
    pub fn inner_derivation(&self, x: &HermElement, y: &HermElement) -> Result<Vec<Scalar>> {
        if x.sign() != Sign::Plus || y.sign() != Sign::Minus {
            return Err(Error::Sign("inner derivations take x in V+ and y in V-".into()));
        }
        let mut v = self.lie.zero();
        let off = self.l0_offset();
        for (k, s) in self.delta_l0(x.coords(), y.coords()).into_iter().enumerate() {
            v[off + k] = s;
        }
        Ok(v)
    }

    /// The pair of matrices `(Delta_+, Delta_-)` of an `L0` coordinate vector.
    pub fn l0_action(&self, l: &[Scalar]) -> (Matrix, Matrix) {
        let d = self.herm.dim();
        let mode = self.herm.mode();
        let mut a = Matrix::zeros(mode, d, d);
        let mut b = Matrix::zeros(mode, d, d);
        for (k, s) in l.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            a = a.add(&self.members[k].0.scale(s));
            b = b.add(&self.members[k].1.scale(s));
        }
        (a, b)
    }

    /// `L0` coordinates of a pair of matrices, if it lies in `L0`.
    pub fn l0_coords(&self, a: &Matrix, b: &Matrix) -> Option<Vec<Scalar>> {
        self.span.coordinates(&flatten(a, b)).map(|c| c.to_dense(self.l0_dim(), self.herm.mode()))
    }

    /// `L0` coordinates of the element `v`.
    pub fn l0_part(&self, v: &[Scalar]) -> Vec<Scalar> {
        v[self.l0_offset()..self.minus_offset()].to_vec()
    }

    /// Basis indices of the root space `W_g`.
    pub fn root_space(&self, g: Weight) -> Result<Vec<usize>> {
        if !g.is_c3_root() {
            return Err(Error::NotARoot(g.to_string()));
        }
        Ok(self.lie.weight_space(g))
    }

    /// Indices of the weight-zero part of `L0`.
    pub fn toral_part(&self) -> Vec<usize> {
        self.lie.weight_space(Weight::ZERO)
    }

    /// `Delta(Q_z v) = {Delta z, v, z} + Q_z Delta v` on both halves.
    pub fn check_derivation(&self, l: &[Scalar], trials: usize, rng: &mut TrialRng) -> Result<CheckRecord> {
        let (a, b) = self.l0_action(l);
        let h = &self.herm;
        let mode = h.mode();
        run_trials("l0-derivation", "D(Q_z v) = {Dz, v, z} + Q_z D'v", trials, |t| {
            let (da, db) = if t % 2 == 0 { (&a, &b) } else { (&b, &a) };
            let z = rng.vector(mode, h.dim());
            let v = rng.vector(mode, h.dim());
            let lhs = da.mul_vec(&h.u_coords(&z, &v));
            let r1 = h.triple_coords(&da.mul_vec(&z), &v, &z);
            let r2 = h.u_coords(&z, &db.mul_vec(&v));
            let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(x, y)| x + y).collect();
            Ok((lhs != rhs).then(|| json!({ "sign": if t % 2 == 0 { "+" } else { "-" }, "z": h.format_coords(&z), "v": h.format_coords(&v) })))
        })
    }

    /// `[x, [x, y]] = 2 Q_x y` for `x`, `y` in opposite halves.
    pub fn check_double_bracket(&self, trials: usize, rng: &mut TrialRng) -> Result<CheckRecord> {
        let h = &self.herm;
        let mode = h.mode();
        let two = mode.from_i64(2);
        run_trials("tkk-double-bracket", "[x,[x,y]] = 2Q_x y", trials, |t| {
            let s = if t % 2 == 0 { Sign::Plus } else { Sign::Minus };
            let x = rng.vector(mode, h.dim());
            let y = rng.vector(mode, h.dim());
            let (ex, ey) = (self.embed(s, &x), self.embed(s.opposite(), &y));
            let lhs = self.lie.bracket(&ex, &self.lie.bracket(&ex, &ey));
            let rhs = self.embed(s, &h.u_coords(&x, &y).iter().map(|c| &two * c).collect::<Vec<_>>());
            Ok((lhs != rhs).then(|| json!({ "sign": s.symbol(), "x": h.format_coords(&x), "y": h.format_coords(&y) })))
        })
    }

    /// `ad_x ad_y = -D(x, y)` on `V+` for basis elements.
    pub fn check_ad_ad(&self, pairs: &[(usize, usize)]) -> Result<CheckRecord> {
        let h = &self.herm;
        let d = h.dim();
        run_trials("tkk-ad-ad", "ad_x ad_y = -D(x,y) on V+", pairs.len(), |t| {
            let (a, b) = pairs[t];
            let mut x = h.zero_coords();
            x[a] = h.mode().one();
            let mut y = h.zero_coords();
            y[b] = h.mode().one();
            let adx = self.lie.ad(&self.embed(Sign::Plus, &x));
            let ady = self.lie.ad(&self.embed(Sign::Minus, &y));
            let lhs = adx.mul(&ady).block(0..d, 0..d);
            let ok = lhs == h.d_matrix(&x, &y).neg();
            Ok((!ok).then(|| json!({ "x": format!("{}+", h.labels()[a]), "y": format!("{}-", h.labels()[b]) })))
        })
    }

    /// `ad_x^3 = 0` for every basis element of `V+` and `V-`.
    pub fn check_ad_cubed(&self) -> Result<CheckRecord> {
        let d = self.herm.dim();
        let idx: Vec<usize> = (0..d).chain(self.minus_offset()..self.minus_offset() + d).collect();
        run_trials("tkk-ad-cubed", "ad_x^3 = 0", idx.len(), |t| {
            let ad = self.lie.ad(&self.lie.basis(idx[t]));
            Ok((!ad.mul(&ad).mul(&ad).is_zero()).then(|| json!({ "x": self.lie.labels()[idx[t]] })))
        })
    }

    /// Dimensions of every `C3` root space and of the toral part.
    pub fn root_dimensions(&self) -> Vec<(Weight, usize)> {
        let mut out: Vec<(Weight, usize)> = c3_roots().into_iter().map(|g| (g, self.lie.weight_space(g).len())).collect();
        out.push((Weight::ZERO, self.toral_part().len()));
        out
    }

    /// Root-space dimensions against the hermitian coordinates, and the
    /// count over all roots plus the toral part.
    pub fn check_root_dimensions(&self) -> CheckRecord {
        let h = &self.herm;
        let mut bad = Vec::new();
        for (g, n) in self.root_dimensions() {
            if g.is_zero() {
                continue;
            }
            let expected = if g.is_long() {
                Some(h.sym_dim())
            } else if g.0.iter().sum::<i32>().abs() == 2 {
                Some(h.algebra().dim())
            } else {
                None
            };
            if let Some(e) = expected {
                if e != n {
                    bad.push(json!({ "root": g.to_string(), "dim": n, "expected": e }));
                }
            }
        }
        let total: usize = self.root_dimensions().iter().map(|(_, n)| n).sum();
        if total != self.dim() {
            bad.push(json!({ "total": total, "dim": self.dim() }));
        }
        let rec = CheckRecord::new("tkk-root-dimensions", "dim W_{2w_i} = dim Sym, dim W_{w_i+w_j} = dim A", if bad.is_empty() { Status::Pass } else { Status::Fail }, 1);
        if bad.is_empty() {
            rec
        } else {
            rec.with_witness(Value::Array(bad))
        }
    }

    pub fn check_grading(&self) -> CheckRecord {
        self.lie.grading_check("tkk-grading", |w| w.is_zero() || w.is_c3_root())
    }

    pub fn to_json(&self) -> Value {
        let dims: Vec<Value> = self.root_dimensions().iter().map(|(g, n)| json!({ "weight": g.to_string(), "dim": n })).collect();
        json!({
            "algebra": self.herm.algebra().name(),
            "dim": self.dim(),
            "dim_plus": self.herm.dim(),
            "dim_l0": self.l0_dim(),
            "root_dimensions": dims,
            "lie": self.lie.to_json(),
        })
    }
}

