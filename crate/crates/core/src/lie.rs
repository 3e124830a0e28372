//! Finite-dimensional Lie algebras given by structure constants on a
//! weighted basis.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{axpy_dense, Matrix, SparseVec};
use crate::random::TrialRng;
use crate::report::{run_trials, CheckRecord, Status};
use crate::roots::Weight;
use crate::scalar::{Scalar, ScalarMode};

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    mode: ScalarMode,
    labels: Vec<String>,
    weights: Vec<Weight>,
    table: Vec<SparseVec>,
}

impl LieAlgebra {
    /// `table[i * n + j]` holds `[e_i, e_j]`.
    pub fn new(mode: ScalarMode, labels: Vec<String>, weights: Vec<Weight>, table: Vec<SparseVec>) -> Result<Self> {
        let n = labels.len();
        if weights.len() != n || table.len() != n * n {
            return Err(Error::Dimension { expected: n * n, got: table.len() });
        }
        Ok(LieAlgebra { mode, labels, weights, table })
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

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.mode.zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = self.mode.one();
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let t = &self.table[i * n + j];
                if !t.is_zero() {
                    axpy_dense(&mut out, &(xi * yj), t);
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.mode, n, n);
        for (i, xi) in x.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for j in 0..n {
                for (r, s) in self.table[i * n + j].iter() {
                    m.add_at(*r, j, &(xi * s));
                }
            }
        }
        m
    }

    /// Basis indices of weight `w`.
    pub fn weight_space(&self, w: Weight) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] == w).collect()
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(|s| s.is_zero())
    }

    pub fn format(&self, v: &[Scalar]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| if s.is_one() { self.labels[i].clone() } else { format!("({s}){}", self.labels[i]) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn alternating_check(&self) -> CheckRecord {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let sum = self.table[i * n + j].add_scaled(&self.mode.one(), &self.table[j * n + i]);
                if !sum.is_zero() {
                    return CheckRecord::new("lie-alternating", "[u,v] = -[v,u], [u,u] = 0", Status::Fail, 1)
                        .with_witness(json!({ "u": self.labels[i], "v": self.labels[j] }));
                }
            }
        }
        CheckRecord::new("lie-alternating", "[u,v] = -[v,u], [u,u] = 0", Status::Pass, n * n)
    }

    pub fn jacobi_check(&self, trials: usize, rng: &mut TrialRng) -> Result<CheckRecord> {
        run_trials("lie-jacobi", "[u,[v,w]] + [v,[w,u]] + [w,[u,v]] = 0", trials, |_| {
            let (u, v, w) = (rng.vector(self.mode, self.dim()), rng.vector(self.mode, self.dim()), rng.vector(self.mode, self.dim()));
            let a = self.bracket(&u, &self.bracket(&v, &w));
            let b = self.bracket(&v, &self.bracket(&w, &u));
            let c = self.bracket(&w, &self.bracket(&u, &v));
            let sum: Vec<Scalar> = a.iter().zip(&b).zip(&c).map(|((x, y), z)| &(x + y) + z).collect();
            Ok((!Self::is_zero(&sum)).then(|| json!({ "u": self.format(&u), "v": self.format(&v), "w": self.format(&w) })))
        })
    }

    /// `[W_g, W_h]` lies in `W_{g+h}`, and vanishes when `g + h` is not an
    /// allowed weight.
    pub fn grading_check(&self, id: &str, allowed: impl Fn(Weight) -> bool) -> CheckRecord {
        let n = self.dim();
        let anchor = "[W_g, W_h] in W_{g+h}";
        for i in 0..n {
            for j in 0..n {
                let w = self.weights[i] + self.weights[j];
                let t = &self.table[i * n + j];
                let bad = t.iter().any(|(k, _)| self.weights[*k] != w) || (!t.is_zero() && !allowed(w));
                if bad {
                    return CheckRecord::new(id, anchor, Status::Fail, i * n + j + 1)
                        .with_witness(json!({ "u": self.labels[i], "v": self.labels[j], "bracket": self.format(&t.to_dense(n, self.mode)) }));
                }
            }
        }
        CheckRecord::new(id, anchor, Status::Pass, n * n)
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let t = &self.table[i * n + j];
                if !t.is_zero() {
                    let terms: Vec<Value> = t.iter().map(|(k, s)| json!([k, s.to_string()])).collect();
                    brackets.push(json!([i, j, terms]));
                }
            }
        }
        json!({
            "scalars": self.mode.label(),
            "dim": n,
            "labels": self.labels,
            "weights": self.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "brackets": brackets,
        })
    }
}
