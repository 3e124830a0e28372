//! Built-in algebras with involution.

use std::sync::Arc;

use super::{Algebra, AlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::{Scalar, ScalarMode};

pub const BUILTIN_NAMES: [&str; 5] = ["octonions", "split-octonions", "quaternions", "trivial", "matrix-2"];

pub fn builtin(name: &str, mode: ScalarMode) -> Result<Algebra> {
    let spec = match name {
        "octonions" => cayley_dickson_tower(mode, 3)?,
        "quaternions" => cayley_dickson_tower(mode, 2)?,
        "split-octonions" => split_octonions(mode)?,
        "trivial" => trivial(mode)?,
        "matrix-2" => matrix2(mode)?,
        _ => return Err(Error::Unknown { kind: "algebra", name: name.into() }),
    };
    Ok(Arc::new(spec))
}

fn table_from_fn(n: usize, mut f: impl FnMut(&[Scalar], &[Scalar]) -> Vec<Scalar>, mode: ScalarMode) -> Vec<SparseVec> {
    let basis = |i: usize| {
        let mut v = vec![mode.zero(); n];
        v[i] = mode.one();
        v
    };
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(SparseVec::from_dense(&f(&basis(i), &basis(j))));
        }
    }
    table
}

fn involution_from_fn(n: usize, f: impl Fn(&[Scalar]) -> Vec<Scalar>, mode: ScalarMode) -> Matrix {
    let cols: Vec<SparseVec> = (0..n)
        .map(|j| {
            let mut e = vec![mode.zero(); n];
            e[j] = mode.one();
            SparseVec::from_dense(&f(&e))
        })
        .collect();
    Matrix::from_columns(mode, n, &cols)
}

pub fn trivial(mode: ScalarMode) -> Result<AlgebraSpec> {
    let table = vec![SparseVec::unit(0, mode)];
    AlgebraSpec::new("trivial", mode, vec!["1".into()], 0, table, Some(Matrix::identity(mode, 1)))
}

/// Double `base` to `base + base l` with `(a,b)(c,d) = (ac + g d*b, da + bc*)`
/// and `(a,b)* = (a*, -b)`.
pub fn cayley_dickson(base: &AlgebraSpec, gamma: &Scalar, new_label: &str) -> Result<AlgebraSpec> {
    let n = base.dim();
    let mode = base.mode();
    let split = |v: &[Scalar]| (v[..n].to_vec(), v[n..].to_vec());
    let add = |x: Vec<Scalar>, y: Vec<Scalar>| -> Vec<Scalar> { x.iter().zip(&y).map(|(p, q)| p + q).collect() };
    let mul = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let (a, b) = split(x);
        let (c, d) = split(y);
        let db = base.mul_coords(&base.conj_coords(&d).expect("base has involution"), &b);
        let first = add(base.mul_coords(&a, &c), db.iter().map(|s| gamma * s).collect());
        let second = add(base.mul_coords(&d, &a), base.mul_coords(&b, &base.conj_coords(&c).expect("base has involution")));
        [first, second].concat()
    };
    let table = table_from_fn(2 * n, mul, mode);
    let inv = involution_from_fn(
        2 * n,
        |v| {
            let (a, b) = split(v);
            [base.conj_coords(&a).expect("base has involution"), b.iter().map(|s| -s).collect()].concat()
        },
        mode,
    );
    let mut labels: Vec<String> = base.labels().to_vec();
    for l in base.labels() {
        labels.push(if l == "1" { new_label.to_string() } else { format!("{l}{new_label}") });
    }
    AlgebraSpec::new(format!("{}+{}", base.name(), new_label), mode, labels, base.unit_index(), table, Some(inv))
}

fn cayley_dickson_tower(mode: ScalarMode, steps: usize) -> Result<AlgebraSpec> {
    let mut a = trivial(mode)?;
    let minus_one = mode.from_i64(-1);
    for label in ["i", "j", "l"].iter().take(steps) {
        a = cayley_dickson(&a, &minus_one, label)?;
    }
    let labels: Vec<String> = match steps {
        2 => ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect(),
        3 => ["1", "i", "j", "k", "l", "il", "jl", "kl"].iter().map(|s| s.to_string()).collect(),
        _ => a.labels().to_vec(),
    };
    let name = match steps {
        2 => "quaternions",
        3 => "octonions",
        _ => "cayley-dickson",
    };
    AlgebraSpec::new(name, mode, labels, 0, a.table.clone(), a.involution.clone())
}

/// Zorn vector matrices `[[a, u], [v, b]]` in the basis
/// `1, e11, u1, u2, u3, v1, v2, v3`, where `1 = e11 + e22`.
pub fn split_octonions(mode: ScalarMode) -> Result<AlgebraSpec> {
    type Zorn = (Scalar, [Scalar; 3], [Scalar; 3], Scalar);
    let to_zorn = |c: &[Scalar]| -> Zorn {
        (
            &c[0] + &c[1],
            [c[2].clone(), c[3].clone(), c[4].clone()],
            [c[5].clone(), c[6].clone(), c[7].clone()],
            c[0].clone(),
        )
    };
    let from_zorn = |z: Zorn| -> Vec<Scalar> {
        let (a, u, v, b) = z;
        let e11 = &a - &b;
        let mut out = vec![b, e11];
        out.extend(u);
        out.extend(v);
        out
    };
    let dot = |x: &[Scalar; 3], y: &[Scalar; 3]| -> Scalar { &(&(&x[0] * &y[0]) + &(&x[1] * &y[1])) + &(&x[2] * &y[2]) };
    let cross = |x: &[Scalar; 3], y: &[Scalar; 3]| -> [Scalar; 3] {
        [
            &(&x[1] * &y[2]) - &(&x[2] * &y[1]),
            &(&x[2] * &y[0]) - &(&x[0] * &y[2]),
            &(&x[0] * &y[1]) - &(&x[1] * &y[0]),
        ]
    };
    let lin = |p: &Scalar, x: &[Scalar; 3], q: &Scalar, y: &[Scalar; 3]| -> [Scalar; 3] {
        [0, 1, 2].map(|i| &(p * &x[i]) + &(q * &y[i]))
    };
    let sub3 = |x: [Scalar; 3], y: [Scalar; 3]| -> [Scalar; 3] { [0, 1, 2].map(|i| &x[i] - &y[i]) };
    let add3 = |x: [Scalar; 3], y: [Scalar; 3]| -> [Scalar; 3] { [0, 1, 2].map(|i| &x[i] + &y[i]) };
    let mul = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let (a, u, v, b) = to_zorn(x);
        let (a2, u2, v2, b2) = to_zorn(y);
        let na = &(&a * &a2) + &dot(&u, &v2);
        let nu = sub3(lin(&a, &u2, &b2, &u), cross(&v, &v2));
        let nv = add3(lin(&a2, &v, &b, &v2), cross(&u, &u2));
        let nb = &(&b * &b2) + &dot(&v, &u2);
        from_zorn((na, nu, nv, nb))
    };
    let table = table_from_fn(8, mul, mode);
    let inv = involution_from_fn(
        8,
        |c| {
            let (a, u, v, b) = to_zorn(c);
            from_zorn((b, u.map(|s| -s), v.map(|s| -s), a))
        },
        mode,
    );
    let labels = ["1", "e11", "u1", "u2", "u3", "v1", "v2", "v3"].iter().map(|s| s.to_string()).collect();
    AlgebraSpec::new("split-octonions", mode, labels, 0, table, Some(inv))
}

/// 2x2 matrices in the basis `1, e11, e12, e21` with transpose.
pub fn matrix2(mode: ScalarMode) -> Result<AlgebraSpec> {
    let to_m = |c: &[Scalar]| [[&c[0] + &c[1], c[2].clone()], [c[3].clone(), c[0].clone()]];
    let from_m = |m: [[Scalar; 2]; 2]| vec![m[1][1].clone(), &m[0][0] - &m[1][1], m[0][1].clone(), m[1][0].clone()];
    let mul = |x: &[Scalar], y: &[Scalar]| {
        let (p, q) = (to_m(x), to_m(y));
        let e = |i: usize, j: usize| &(&p[i][0] * &q[0][j]) + &(&p[i][1] * &q[1][j]);
        from_m([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    };
    let table = table_from_fn(4, mul, mode);
    let inv = involution_from_fn(
        4,
        |c| {
            let m = to_m(c);
            from_m([[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]])
        },
        mode,
    );
    let labels = ["1", "e11", "e12", "e21"].iter().map(|s| s.to_string()).collect();
    AlgebraSpec::new("matrix-2", mode, labels, 0, table, Some(inv))
}
