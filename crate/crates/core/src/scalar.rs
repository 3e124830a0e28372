//! Exact scalars: rationals and integers modulo `m`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational with an `i64` fast path.
///
/// The representation is canonical (reduced, positive denominator, small
/// whenever both parts fit), so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Option<Rational> {
        if den == 0 {
            return None;
        }
        Some(Self::small_or_big(num as i128, den as i128))
    }

    pub fn integer(n: i64) -> Rational {
        Rational::Small(n, 1)
    }

    fn small_or_big(num: i128, den: i128) -> Rational {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(n, d) => *n as f64 / *d as f64,
            Rational::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (b.numer().clone(), b.denom().clone()),
        }
    }

    fn add(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                return match a.checked_add(*c) {
                    Some(s) => Rational::Small(s, 1),
                    None => Self::small_or_big(*a as i128 + *c as i128, 1),
                };
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let (Some(n), Some(den)) = (x.checked_add(y), b.checked_mul(d)) {
                    return Self::small_or_big(n, den);
                }
            }
        }
        Self::from_big(self.to_big() + o.to_big())
    }

    fn mul(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            if *a == 0 || *c == 0 {
                return Rational::Small(0, 1);
            }
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rational::Small(p, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(n), Some(den)) = (a.checked_mul(c), b.checked_mul(d)) {
                return Self::small_or_big(n, den);
            }
        }
        Self::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Self::small_or_big(-(*n as i128), *d as i128),
            },
            Rational::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Option<Rational> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Self::small_or_big(*d as i128, *n as i128)),
            Rational::Big(b) => Some(Self::from_big(b.recip())),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// A scalar of the base ring: an exact rational or a residue mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Mod { value: u64, modulus: u64 },
}

/// Which base ring the scalars of an object live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarMode {
    Rational,
    Modular(u64),
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Rational => write!(f, "Q"),
            ScalarMode::Modular(m) => write!(f, "Z/{m}"),
        }
    }
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ScalarMode {
    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            ScalarMode::Rational => Scalar::Rat(Rational::integer(n)),
            ScalarMode::Modular(m) => Scalar::Mod {
                value: n.rem_euclid(m as i64) as u64,
                modulus: m,
            },
        }
    }

    /// `num/den`, failing when `den` is not invertible.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or_else(|| Error::NotInvertible(format!("{den}")))?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Parse `"n"` or `"n/d"`.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Malformed(format!("bad scalar `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                self.from_ratio(n, d)
            }
            None => Ok(self.from_i64(s.parse().map_err(|_| bad())?)),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            ScalarMode::Rational => 0,
            ScalarMode::Modular(m) => m,
        }
    }

    pub fn is_field(self) -> bool {
        match self {
            ScalarMode::Rational => true,
            ScalarMode::Modular(m) => is_prime(m),
        }
    }

    pub fn require_field(self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.characteristic()))
        }
    }

    pub fn label(self) -> String {
        match self {
            ScalarMode::Rational => "Q".to_string(),
            ScalarMode::Modular(m) => format!("Z/{m}"),
        }
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

impl Scalar {
    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Rat(_) => ScalarMode::Rational,
            Scalar::Mod { modulus, .. } => ScalarMode::Modular(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, modulus } => *value == 1 % *modulus,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => r.inv().map(Scalar::Rat),
            Scalar::Mod { value, modulus } => mod_inverse(*value, *modulus).map(|v| Scalar::Mod {
                value: v,
                modulus: *modulus,
            }),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64(),
            Scalar::Mod { value, .. } => *value as f64,
        }
    }

    /// Residue for modular scalars; `None` over the rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(Rational::Small(n, _)) => *n < 0,
            Scalar::Rat(Rational::Big(b)) => b.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    /// Bytes that identify the value; equal scalars give equal bytes.
    pub fn canonical_bytes(&self, out: &mut Vec<u8>) {
        match self {
            Scalar::Mod { value, .. } => out.extend_from_slice(&value.to_le_bytes()),
            Scalar::Rat(r) => {
                out.extend_from_slice(r.to_string().as_bytes());
                out.push(b';');
            }
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar mode mismatch")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            (Scalar::Mod { value: a, modulus: m }, Scalar::Mod { value: b, modulus: n }) if m == n => {
                Scalar::Mod {
                    value: ((*a as u128 + *b as u128) % *m as u128) as u64,
                    modulus: *m,
                }
            }
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Mod { value: a, modulus: m }, Scalar::Mod { value: b, modulus: n }) if m == n => {
                Scalar::Mod {
                    value: ((*a as u128 * *b as u128) % *m as u128) as u64,
                    modulus: *m,
                }
            }
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.neg()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        if r.is_zero() {
            return Rational::Small(0, 1);
        }
        Rational::from_big(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rationals_reduce() {
        let q = ScalarMode::Rational;
        let a = q.from_ratio(2, 4).unwrap();
        assert_eq!(a, q.from_ratio(-1, -2).unwrap());
        assert_eq!(a.to_string(), "1/2");
        assert!((&a + &a).is_one());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let q = ScalarMode::Rational;
        let big = q.from_i64(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Rat(Rational::Big(_))));
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Rat(Rational::Small(..))));
    }

    #[test]
    fn modular_inverse() {
        let m = ScalarMode::Modular(7);
        for v in 1..7 {
            let x = m.from_i64(v);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(ScalarMode::Modular(6).from_i64(2).inv().is_none());
        assert_eq!(m.parse("1/2").unwrap(), m.from_i64(4));
    }
}
