//! `PE(V)`: exponentials, Bergmann automorphisms and the coordinatized root
//! subgroups of `C3`.

use std::sync::Arc;

use super::{not_a_root, Automorphism, Family, RootGroup};
use crate::error::{Error, Result};
use crate::jordan::Sign;
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::roots::{c3_roots, Weight};
use crate::scalar::Scalar;
use crate::tkk::Tkk;

pub struct C3Group {
    tkk: Arc<Tkk>,
}

impl C3Group {
    pub fn new(tkk: &Arc<Tkk>) -> Self {
        C3Group { tkk: tkk.clone() }
    }

    pub fn tkk(&self) -> &Arc<Tkk> {
        &self.tkk
    }

    fn exp_matrix(&self, sign: Sign, x: &[Scalar]) -> Matrix {
        let t = &self.tkk;
        let lie = t.lie();
        let d = t.herm().dim();
        let mut m = Matrix::identity(lie.mode(), lie.dim()).add(&lie.ad(&t.embed(sign, x)));
        let q = t.herm().q_matrix(x);
        let (r0, c0) = match sign {
            Sign::Plus => (0, t.minus_offset()),
            Sign::Minus => (t.minus_offset(), 0),
        };
        for r in 0..d {
            for c in 0..d {
                let v = q.get(r, c);
                if !v.is_zero() {
                    m.add_at(r0 + r, c0 + c, v);
                }
            }
        }
        m
    }

    /// `exp_sign(x) = Id + ad_x + Q_x` for `x` in `V^sign`.
    pub fn exp(&self, sign: Sign, x: &[Scalar]) -> Automorphism {
        let neg: Vec<Scalar> = x.iter().map(|s| -s).collect();
        Automorphism::new(Family::Tkk, self.exp_matrix(sign, x), Some(self.exp_matrix(sign, &neg)))
    }

    fn block_diag(&self, plus: &Matrix, zero: &Matrix, minus: &Matrix) -> Matrix {
        let t = &self.tkk;
        let mut m = Matrix::zeros(t.lie().mode(), t.dim(), t.dim());
        m.set_block(0, 0, plus);
        m.set_block(t.l0_offset(), t.l0_offset(), zero);
        m.set_block(t.minus_offset(), t.minus_offset(), minus);
        m
    }

    /// Action on `L0` induced by `(h+, h-)`: conjugation of each basis pair.
    fn induced_l0(&self, hp: &Matrix, hp_inv: &Matrix, hm: &Matrix, hm_inv: &Matrix) -> Result<Matrix> {
        let t = &self.tkk;
        let m = t.l0_dim();
        let mut out = Matrix::zeros(t.lie().mode(), m, m);
        for k in 0..m {
            let (a, b) = t.member(k);
            let c = t
                .l0_coords(&hp.mul(a).mul(hp_inv), &hm.mul(b).mul(hm_inv))
                .ok_or_else(|| Error::Closure(format!("conjugate of L0 member {k} leaves L0")))?;
            for (r, s) in c.into_iter().enumerate() {
                out.set(r, k, s);
            }
        }
        Ok(out)
    }

    /// `beta(x, y) = (B(x,y), h0, B(y,x)^-1)` for `x` in `V+`, `y` in `V-`.
    pub fn beta(&self, x: &[Scalar], y: &[Scalar]) -> Result<Automorphism> {
        let h = self.tkk.herm();
        let bp = h.bergmann_matrix(x, y);
        let bm = h.bergmann_matrix(y, x);
        let bp_inv = bp.inverse().map_err(|_| Error::NotInvertible("B(x,y)".into()))?;
        let bm_inv = bm.inverse().map_err(|_| Error::NotInvertible("B(y,x)".into()))?;
        let h0 = self.induced_l0(&bp, &bp_inv, &bm_inv, &bm)?;
        let h0_inv = self.induced_l0(&bp_inv, &bp, &bm, &bm_inv)?;
        Ok(Automorphism::new(
            Family::Tkk,
            self.block_diag(&bp, &h0, &bm_inv),
            Some(self.block_diag(&bp_inv, &h0_inv, &bm)),
        ))
    }

    /// `exp_sign(alpha[ii])`.
    pub fn long(&self, i: usize, sign: Sign, alpha: &[Scalar]) -> Result<Automorphism> {
        let x = self.tkk.herm().homogeneous(i, i, alpha)?;
        Ok(self.exp(sign, &x))
    }

    /// `exp_sign(a[ij])` with the indices in the given order.
    pub fn short_sum(&self, i: usize, j: usize, sign: Sign, a: &[Scalar]) -> Result<Automorphism> {
        if i == j {
            return Err(Error::Config("short roots need distinct indices".into()));
        }
        let x = self.tkk.herm().homogeneous(i, j, a)?;
        Ok(self.exp(sign, &x))
    }

    /// `G_{w_i - w_j}(s) = beta([ik]+, s[kj]-)` with `k` the third index.
    pub fn short_diff(&self, i: usize, j: usize, s: &[Scalar]) -> Result<Automorphism> {
        if i == j || i > 2 || j > 2 {
            return Err(Error::Config("short roots need distinct indices".into()));
        }
        let k = 3 - i - j;
        let h = self.tkk.herm();
        let one = h.algebra().unit_coords();
        self.beta(&h.homogeneous(i, k, &one)?, &h.homogeneous(k, j, s)?)
    }
}

/// Indices and signs of a `C3` root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootShape {
    Long(usize, Sign),
    Sum(usize, usize, Sign),
    Diff(usize, usize),
}

pub fn shape(g: Weight) -> Result<RootShape> {
    if !g.is_c3_root() {
        return Err(not_a_root(g));
    }
    let nz: Vec<(usize, i32)> = g.0.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
    let sign = |c: i32| if c > 0 { Sign::Plus } else { Sign::Minus };
    Ok(match nz.as_slice() {
        [(i, c)] => RootShape::Long(*i, sign(*c)),
        [(i, a), (j, b)] if a == b => RootShape::Sum(*i, *j, sign(*a)),
        [(i, a), (j, _)] if *a > 0 => RootShape::Diff(*i, *j),
        [(i, _), (j, _)] => RootShape::Diff(*j, *i),
        _ => return Err(not_a_root(g)),
    })
}

impl RootGroup for C3Group {
    fn family(&self) -> Family {
        Family::Tkk
    }

    fn lie(&self) -> &LieAlgebra {
        self.tkk.lie()
    }

    fn roots(&self) -> Vec<Weight> {
        c3_roots()
    }

    fn param_basis(&self, g: Weight) -> Result<Vec<Vec<Scalar>>> {
        let h = self.tkk.herm();
        Ok(match shape(g)? {
            RootShape::Long(..) => h.sym_basis().to_vec(),
            _ => (0..h.algebra().dim()).map(|t| h.algebra().basis_coords(t)).collect(),
        })
    }

    /// Canonical coordinates: `exp(alpha[ii])`, `exp(a[ij])` with `i < j`, and
    /// `beta([ik]+, s[kj]-)`.
    fn root_element(&self, g: Weight, s: &[Scalar]) -> Result<Automorphism> {
        match shape(g)? {
            RootShape::Long(i, sign) => self.long(i, sign, s),
            RootShape::Sum(i, j, sign) => self.short_sum(i, j, sign, s),
            RootShape::Diff(i, j) => self.short_diff(i, j, s),
        }
    }
}
