//! `PE3(A)`: the elementary automorphisms `e_ij(a)` of `pe3(A)`.

use std::sync::Arc;

use super::{not_a_root, Automorphism, Family, RootGroup};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::pe3::{off_index, Pe3};
use crate::roots::{a2_roots, Weight};
use crate::scalar::Scalar;

pub struct A2Group {
    pe3: Arc<Pe3>,
}

impl A2Group {
    pub fn new(pe3: &Arc<Pe3>) -> Self {
        A2Group { pe3: pe3.clone() }
    }

    pub fn pe3(&self) -> &Arc<Pe3> {
        &self.pe3
    }

    fn matrix(&self, i: usize, j: usize, a: &[Scalar]) -> Result<Matrix> {
        let p = &self.pe3;
        let alg = p.algebra();
        let n = alg.dim();
        let lie = p.lie();
        let x = p.off_element(i, j, a)?;
        let mut m = Matrix::identity(lie.mode(), lie.dim()).add(&lie.ad(&x));
        let (src, dst) = (off_index(j, i).expect("j != i"), off_index(i, j).expect("i != j"));
        for b in 0..n {
            let aba = alg.mul_coords(&alg.mul_coords(a, &alg.basis_coords(b)), a);
            for (r, s) in aba.iter().enumerate() {
                if !s.is_zero() {
                    m.add_at(dst * n + r, src * n + b, &-s);
                }
            }
        }
        Ok(m)
    }

    /// `e_ij(a) = id + ad_{aE_ij} + d2`, where `d2(bE_ji) = -(aba)E_ij`.
    pub fn e(&self, i: usize, j: usize, a: &[Scalar]) -> Result<Automorphism> {
        if i == j || i > 2 || j > 2 {
            return Err(Error::Config(format!("e_{}{} needs distinct indices in 1..3", i + 1, j + 1)));
        }
        let neg: Vec<Scalar> = a.iter().map(|s| -s).collect();
        Ok(Automorphism::new(Family::Pe3, self.matrix(i, j, a)?, Some(self.matrix(i, j, &neg)?)))
    }
}

impl RootGroup for A2Group {
    fn family(&self) -> Family {
        Family::Pe3
    }

    fn lie(&self) -> &LieAlgebra {
        self.pe3.lie()
    }

    fn roots(&self) -> Vec<Weight> {
        a2_roots()
    }

    fn param_basis(&self, g: Weight) -> Result<Vec<Vec<Scalar>>> {
        if !g.is_a2_root() {
            return Err(not_a_root(g));
        }
        let alg = self.pe3.algebra();
        Ok((0..alg.dim()).map(|t| alg.basis_coords(t)).collect())
    }

    fn root_element(&self, g: Weight, s: &[Scalar]) -> Result<Automorphism> {
        if !g.is_a2_root() {
            return Err(not_a_root(g));
        }
        let i = g.0.iter().position(|&c| c == 1).expect("a2 root");
        let j = g.0.iter().position(|&c| c == -1).expect("a2 root");
        self.e(i, j, s)
    }
}
