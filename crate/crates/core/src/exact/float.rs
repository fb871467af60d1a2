//! Controlled-precision real and complex arithmetic.
//!
//! Numerical code is generic over [`Real`]; `f64` serves 53-bit work and
//! [`MpFloat`] any larger binary precision.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Rational;

pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64, prec: u32) -> Self;
    fn from_rational(q: &Rational, prec: u32) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact value as a dyadic rational.
    fn to_rational(&self) -> Rational;
    fn sqrt(&self) -> Self;
    fn precision(&self) -> u32;

    fn zero(prec: u32) -> Self {
        Self::from_f64(0.0, prec)
    }

    fn abs(&self) -> Self {
        if self.to_f64() < 0.0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Unit roundoff `2^-prec` as an `f64`.
    fn unit_roundoff(&self) -> f64 {
        (-(self.precision() as f64)).exp2()
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _prec: u32) -> Self {
        x
    }

    fn from_rational(q: &Rational, _prec: u32) -> Self {
        rational_to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Rational {
        Rational::from_float(*self).unwrap_or_else(Rational::zero)
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn precision(&self) -> u32 {
        53
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// `f64` approximation of a rational that stays accurate for huge numerators
/// and denominators.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = q.numer().bits() as i64 - q.denom().bits() as i64 - 60;
    let (n, d) = if shift >= 0 {
        (q.numer().clone(), q.denom() << (shift as usize))
    } else {
        (q.numer() << ((-shift) as usize), q.denom().clone())
    };
    let m = (n / d).to_f64().unwrap_or(0.0);
    m * (shift as f64).exp2()
}

type Fb = FBig<HalfEven, 2>;

/// Binary floating point number with a fixed working precision in bits.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct MpFloat(Fb);

fn to_ibig(n: &BigInt) -> IBig {
    IBig::from_le_bytes(&n.to_signed_bytes_le())
}

fn from_ibig(n: &IBig) -> BigInt {
    BigInt::from_signed_bytes_le(&n.to_le_bytes())
}

impl MpFloat {
    fn wrap(x: Fb, prec: u32) -> Self {
        MpFloat(x.with_precision(prec as usize).value())
    }
}

impl Real for MpFloat {
    fn from_f64(x: f64, prec: u32) -> Self {
        let f = Fb::try_from(x).expect("finite f64");
        Self::wrap(f, prec)
    }

    fn from_rational(q: &Rational, prec: u32) -> Self {
        let n = Self::wrap(Fb::from(to_ibig(q.numer())), prec);
        if q.denom().is_one() {
            return n;
        }
        let d = Self::wrap(Fb::from(to_ibig(q.denom())), prec);
        n / d
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    fn to_rational(&self) -> Rational {
        let repr = self.0.repr();
        let sig = from_ibig(repr.significand());
        let exp = repr.exponent();
        if exp >= 0 {
            Rational::from_integer(sig << (exp as usize))
        } else {
            Rational::new(sig, BigInt::one() << ((-exp) as usize))
        }
    }

    fn sqrt(&self) -> Self {
        MpFloat(self.0.sqrt())
    }

    fn precision(&self) -> u32 {
        self.0.precision() as u32
    }

    fn abs(&self) -> Self {
        if self.0.repr().significand().sign() == dashu_int::Sign::Negative {
            MpFloat(-self.0.clone())
        } else {
            self.clone()
        }
    }
}

macro_rules! mp_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for MpFloat {
            type Output = MpFloat;
            fn $m(self, rhs: MpFloat) -> MpFloat {
                MpFloat(self.0.$m(rhs.0))
            }
        }
    };
}
mp_binop!(Add, add);
mp_binop!(Sub, sub);
mp_binop!(Mul, mul);
mp_binop!(Div, div);

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat(-self.0)
    }
}

/// Complex number over a [`Real`] type.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cx { re: R::zero(prec), im: R::zero(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Cx { re: R::from_f64(re, prec), im: R::from_f64(im, prec) }
    }

    pub fn from_rational(re: &Rational, im: &Rational, prec: u32) -> Self {
        Cx { re: R::from_rational(re, prec), im: R::from_rational(im, prec) }
    }

    pub fn from_c64(z: C64, prec: u32) -> Self {
        Self::from_f64(z.re, z.im, prec)
    }

    pub fn to_c64(&self) -> C64 {
        Cx { re: self.re.to_f64(), im: self.im.to_f64() }
    }

    pub fn norm_sqr(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn abs(&self) -> R {
        self.norm_sqr().sqrt()
    }

    /// Modulus as `f64`, computed in working precision first.
    pub fn abs_f64(&self) -> f64 {
        let c = self.to_c64();
        c.re.hypot(c.im)
    }

    pub fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, s: &R) -> Self {
        Cx { re: self.re.clone() * s.clone(), im: self.im.clone() * s.clone() }
    }

    pub fn is_finite(&self) -> bool {
        let c = self.to_c64();
        c.re.is_finite() && c.im.is_finite()
    }
}

impl<R: Real> Add for Cx<R> {
    type Output = Cx<R>;
    fn add(self, rhs: Cx<R>) -> Cx<R> {
        Cx { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<R: Real> Sub for Cx<R> {
    type Output = Cx<R>;
    fn sub(self, rhs: Cx<R>) -> Cx<R> {
        Cx { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<R: Real> Mul for Cx<R> {
    type Output = Cx<R>;
    fn mul(self, rhs: Cx<R>) -> Cx<R> {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Cx { re, im }
    }
}

impl<R: Real> Div for Cx<R> {
    type Output = Cx<R>;
    fn div(self, rhs: Cx<R>) -> Cx<R> {
        let d = rhs.norm_sqr();
        let n = self * rhs.conj();
        Cx { re: n.re / d.clone(), im: n.im / d }
    }
}

impl<R: Real> Neg for Cx<R> {
    type Output = Cx<R>;
    fn neg(self) -> Cx<R> {
        Cx { re: -self.re, im: -self.im }
    }
}

pub type C64 = Cx<f64>;

impl C64 {
    pub const fn c(re: f64, im: f64) -> C64 {
        Cx { re, im }
    }

    pub fn arg(&self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn expi(theta: f64) -> C64 {
        Cx { re: theta.cos(), im: theta.sin() }
    }
}

impl Copy for C64 {}

/// Reported complex value: a floating approximation with the precision it was
/// computed at.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub real: f64,
    pub imag: f64,
    pub precision_bits: u32,
}

impl ComplexValue {
    pub fn new(real: f64, imag: f64, precision_bits: u32) -> Self {
        assert!(real.is_finite() && imag.is_finite(), "complex value must be finite");
        assert!(precision_bits > 0);
        ComplexValue { real, imag, precision_bits }
    }

    pub fn to_c64(&self) -> C64 {
        C64::c(self.real, self.imag)
    }
}

/// Exact complex rational, used for basepoints and path vertices.
/// Serialized as `{"re": "a/b", "im": "c/d"}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl Serialize for ComplexRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ComplexRational", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im", &self.im.to_string())?;
        st.end()
    }
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ComplexRational { re, im: Rational::zero() }
    }

    pub fn to_c64(&self) -> C64 {
        C64::c(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn to_cx<R: Real>(&self, prec: u32) -> Cx<R> {
        Cx::from_rational(&self.re, &self.im, prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Dyadic rational closest to `x` with `bits` fractional bits.
    pub fn round_f64(x: f64, bits: u32) -> Rational {
        let scale = (bits as f64).exp2();
        let n = (x * scale).round();
        Rational::new(BigInt::from(n as i128), BigInt::one() << bits as usize)
    }

    pub fn from_c64(z: C64, bits: u32) -> Self {
        ComplexRational { re: Self::round_f64(z.re, bits), im: Self::round_f64(z.im, bits) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::ratio;
    use num_traits::Signed;

    #[test]
    fn mp_roundtrip_and_precision() {
        let third = MpFloat::from_rational(&ratio(1, 3), 200);
        assert_eq!(third.precision(), 200);
        let back = third.to_rational();
        let err = (back - ratio(1, 3)).abs();
        assert!(err < Rational::new(BigInt::one(), BigInt::one() << 199usize));
        let two = MpFloat::from_f64(2.0, 128);
        let r = two.sqrt();
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(MpFloat::from_f64(-3.5, 64).abs().to_f64() == 3.5);
    }

    #[test]
    fn complex_ops() {
        let a = Cx::<MpFloat>::from_f64(1.0, 2.0, 96);
        let b = Cx::<MpFloat>::from_f64(3.0, -1.0, 96);
        let q = (a.clone() * b.clone()) / b;
        let d = (q - a).abs_f64();
        assert!(d < 1e-25);
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = Rational::new(BigInt::one() << 2000usize, (BigInt::one() << 1999usize) * 3);
        assert!((rational_to_f64(&big) - 2.0 / 3.0).abs() < 1e-15);
    }
}
