//! Weights in the basis `w1, w2, w3` and the root systems `C3` and `A2`.

use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub [i32; 3]);

impl Weight {
    pub const ZERO: Weight = Weight([0; 3]);

    pub fn neg(self) -> Weight {
        Weight(self.0.map(|x| -x))
    }

    pub fn scaled(self, k: i32) -> Weight {
        Weight(self.0.map(|x| k * x))
    }

    pub fn is_zero(self) -> bool {
        self == Weight::ZERO
    }

    pub fn norm2(self) -> i32 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// `2 w_i`.
    pub fn long(i: usize, sign: i32) -> Weight {
        let mut w = [0; 3];
        w[i] = 2 * sign;
        Weight(w)
    }

    /// `s_i w_i + s_j w_j`.
    pub fn short(i: usize, si: i32, j: usize, sj: i32) -> Weight {
        let mut w = [0; 3];
        w[i] += si;
        w[j] += sj;
        Weight(w)
    }

    pub fn is_c3_root(self) -> bool {
        let nz: Vec<i32> = self.0.iter().copied().filter(|&x| x != 0).collect();
        match nz.as_slice() {
            [x] => x.abs() == 2,
            [x, y] => x.abs() == 1 && y.abs() == 1,
            _ => false,
        }
    }

    pub fn is_long(self) -> bool {
        self.is_c3_root() && self.norm2() == 4
    }

    pub fn is_a2_root(self) -> bool {
        let mut v = self.0;
        v.sort();
        v == [-1, 0, 1]
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::neg(self)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}w{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parse labels such as `2w1`, `-w1-w2`, `w1-w3`.
    fn from_str(text: &str) -> Result<Weight> {
        let bad = || Error::Config(format!("bad weight `{text}`"));
        let mut w = [0i32; 3];
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Weight::ZERO);
        }
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, r) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let wpos = r.find('w').ok_or_else(bad)?;
            let coeff: i32 = if wpos == 0 { 1 } else { r[..wpos].parse().map_err(|_| bad())? };
            let idx = r[wpos + 1..].chars().next().and_then(|c| c.to_digit(10)).ok_or_else(bad)? as usize;
            if !(1..=3).contains(&idx) {
                return Err(bad());
            }
            w[idx - 1] += sign * coeff;
            rest = &r[wpos + 2..];
        }
        Ok(Weight(w))
    }
}

/// The 18 roots of `C3`: long `+-2w_i`, then short `+-(w_i+w_j)` and `w_i-w_j`.
pub fn c3_roots() -> Vec<Weight> {
    let mut out = Vec::new();
    for i in 0..3 {
        out.push(Weight::long(i, 1));
        out.push(Weight::long(i, -1));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        out.push(Weight::short(i, 1, j, 1));
        out.push(Weight::short(i, -1, j, -1));
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out.push(Weight::short(i, 1, j, -1));
            }
        }
    }
    out
}

/// The 6 roots `w_i - w_j` of `A2`.
pub fn a2_roots() -> Vec<Weight> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out.push(Weight::short(i, 1, j, -1));
            }
        }
    }
    out
}

/// Roots `p a + q b` with `p, q >= 1` inside `roots`, ordered by `(p + q, p)`.
pub fn open_cone(a: Weight, b: Weight, roots: &[Weight]) -> Vec<(i32, i32, Weight)> {
    let mut out = Vec::new();
    for total in 2..=6 {
        for p in 1..total {
            let q = total - p;
            let w = a.scaled(p) + b.scaled(q);
            if roots.contains(&w) && !out.iter().any(|(_, _, x)| *x == w) {
                out.push((p, q, w));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c3_has_six_long_twelve_short() {
        let r = c3_roots();
        assert_eq!(r.len(), 18);
        assert_eq!(r.iter().filter(|w| w.is_long()).count(), 6);
        assert!(r.iter().all(|w| w.is_c3_root()));
    }

    #[test]
    fn labels_round_trip() {
        for w in c3_roots() {
            assert_eq!(w.to_string().parse::<Weight>().unwrap(), w);
        }
        assert_eq!("w1-w2".parse::<Weight>().unwrap(), Weight([1, -1, 0]));
        assert!("3w4".parse::<Weight>().is_err());
    }

    #[test]
    fn cone_order() {
        let a = Weight([1, -1, 0]);
        let b = Weight([0, 2, 0]);
        let cone = open_cone(a, b, &c3_roots());
        assert_eq!(cone.iter().map(|c| c.2).collect::<Vec<_>>(), vec![Weight([1, 1, 0]), Weight([2, 0, 0])]);
        assert!(open_cone(Weight([2, 0, 0]), Weight([0, 2, 0]), &c3_roots()).is_empty());
    }
}
