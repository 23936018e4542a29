//! Coefficient fields: exact Gaussian rationals and an f64 complex backend.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative tolerance used by the float backend.
pub const FLOAT_TOL: f64 = 1e-9;

/// Operations the matrix and module code needs from a coefficient field.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn imag_unit() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    /// Exact equality for exact fields, tolerance comparison otherwise.
    fn close(&self, other: &Self) -> bool;
    fn magnitude(&self) -> f64;
    fn to_approx(&self) -> ApproxScalar;
    /// Embed an exact scalar (rounding for inexact fields).
    fn from_scalar(s: &Scalar) -> Self;
    /// A square root, when the field can produce one.
    fn try_sqrt(&self) -> Option<Self>;

    fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    fn is_one(&self) -> bool {
        self.close(&Self::one())
    }

    fn int_power(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        Ok(acc)
    }
}

/// Exact Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Scalar::new(BigRational::new(p.into(), q.into()), BigRational::zero())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        Field::int_power(self, n)
    }
}

fn rat_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(p))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rat_str(&self.re)),
            (true, false) => write!(f, "{}i", rat_str(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}i",
                    rat_str(&self.re),
                    sign,
                    rat_str(&self.im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, `p/q+r/si`, `r/si`, `i`, `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Scalar::new(parse_rat(&t)?, BigRational::zero()));
        };
        // split at the last sign that is not leading
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(p, _)| p)
            .last();
        let (re, im) = match split {
            Some(p) => (&body[..p], &body[p..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other.strip_prefix('+').unwrap_or(other),
        };
        Ok(Scalar::new(parse_rat(re)?, parse_rat(im)?))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            re: String,
            im: String,
        }
        Repr {
            re: rat_str(&self.re),
            im: rat_str(&self.im),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            re: String,
            im: String,
        }
        let r = Repr::deserialize(d)?;
        let re = parse_rat(&r.re).map_err(serde::de::Error::custom)?;
        let im = parse_rat(&r.im).map_err(serde::de::Error::custom)?;
        Ok(Scalar::new(re, im))
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar::new(self.re + o.re, self.im + o.im)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        Scalar::new(self.re - o.re, self.im - o.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::new(&self.re * &o.re, BigRational::zero());
        }
        Scalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

/// Panics on a zero divisor; use [`Field::checked_div`] when that can happen.
impl Div for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        self.checked_div(&o).expect("division by zero")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Field for Scalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        Scalar::default()
    }
    fn one() -> Self {
        Scalar::int(1)
    }
    fn from_int(n: i64) -> Self {
        Scalar::int(n)
    }
    fn imag_unit() -> Self {
        Scalar::i()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Result<Self> {
        self.inverse()
    }
    fn close(&self, other: &Self) -> bool {
        self == other
    }
    fn magnitude(&self) -> f64 {
        self.to_approx().abs()
    }
    fn to_approx(&self) -> ApproxScalar {
        ApproxScalar::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn try_sqrt(&self) -> Option<Self> {
        None
    }
}

/// Double-precision complex number for the square-root normalization.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ApproxScalar {
    pub re: f64,
    pub im: f64,
}

impl ApproxScalar {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxScalar { re, im }
    }

    fn c(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_c(z: Complex64) -> Self {
        ApproxScalar::new(z.re, z.im)
    }

    pub fn abs(&self) -> f64 {
        self.c().norm()
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        Self::from_c(self.c().sqrt())
    }

    pub fn close_tol(&self, other: &Self, tol: f64) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self.c() - other.c()).norm() <= tol * scale
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}{:+}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for ApproxScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_c(self.c() + o.c())
    }
}

impl Sub for ApproxScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_c(self.c() - o.c())
    }
}

impl Mul for ApproxScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::from_c(self.c() * o.c())
    }
}

impl Neg for ApproxScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_c(-self.c())
    }
}

impl Field for ApproxScalar {
    const EXACT: bool = false;

    fn zero() -> Self {
        ApproxScalar::new(0.0, 0.0)
    }
    fn one() -> Self {
        ApproxScalar::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        ApproxScalar::new(n as f64, 0.0)
    }
    fn imag_unit() -> Self {
        ApproxScalar::new(0.0, 1.0)
    }
    fn is_zero(&self) -> bool {
        self.abs() <= FLOAT_TOL
    }
    fn inv(&self) -> Result<Self> {
        if self.abs() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_c(self.c().inv()))
    }
    fn close(&self, other: &Self) -> bool {
        self.close_tol(other, FLOAT_TOL)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_approx(&self) -> ApproxScalar {
        *self
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.to_approx()
    }
    fn try_sqrt(&self) -> Option<Self> {
        Some(self.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_examples() {
        assert_eq!(Scalar::frac(1, 2) + Scalar::frac(1, 3), Scalar::frac(5, 6));
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::int(-1));
        assert_eq!(Scalar::int(2).inv().unwrap(), Scalar::frac(1, 2));
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn power_examples() {
        assert_eq!(Scalar::int(2).pow(3).unwrap(), Scalar::int(8));
        assert_eq!(Scalar::i().pow(4).unwrap(), Scalar::one());
        assert_eq!(Scalar::int(3).pow(-2).unwrap(), Scalar::frac(1, 9));
        assert_eq!(Scalar::zero().pow(-1), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero().pow(0).unwrap(), Scalar::one());
    }

    #[test]
    fn parse_and_print() {
        for s in ["3/2", "-i", "1/2+3/4i", "-5-2i", "7i", "0"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x, "{s}");
        }
        assert_eq!("-i".parse::<Scalar>().unwrap(), -Scalar::i());
        assert_eq!("2/4".parse::<Scalar>().unwrap(), Scalar::frac(1, 2));
    }

    #[test]
    fn json_shape() {
        let x = Scalar::new(
            BigRational::new(3.into(), 6.into()),
            BigRational::from_integer((-2).into()),
        );
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"re":"1/2","im":"-2"}"#);
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn lowest_terms() {
        let x = Scalar::frac(6, -4);
        assert_eq!(x.re.numer(), &BigInt::from(-3));
        assert_eq!(x.re.denom(), &BigInt::from(2));
    }

    fn gauss() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| {
            Scalar::new(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in gauss(), b in gauss(), c in gauss()) {
            prop_assert_eq!((&a * &b) * c.clone(), a.clone() * (&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a + &b) + c.clone(), a.clone() + (&b + &c));
        }

        #[test]
        fn inverse_law(a in gauss()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }

        #[test]
        fn power_law(a in gauss(), m in -6i64..6, n in -6i64..6) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(a.pow(m + n).unwrap(), a.pow(m).unwrap() * a.pow(n).unwrap());
        }
    }
}
