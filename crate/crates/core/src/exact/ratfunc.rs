use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Polynomial, Rational};

/// Reduced quotient `num / den` of polynomials in one variable.
///
/// Invariants: `den ≠ 0`, `gcd(num, den) = 1`, `den` monic. The zero function
/// is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds and reduces `num / den`; panics if `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().recip();
        RationalFunction { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Degree as a map ℙ¹ → ℙ¹: `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    /// Order of vanishing at `t = ∞`: `deg den - deg num`. `None` for zero.
    pub fn ord_infinity(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.den.deg0() as i64 - self.num.deg0() as i64)
    }

    /// Order along a square-free factor `h` (multiplicity in the numerator minus
    /// multiplicity in the denominator). `None` for zero.
    pub fn ord_at(&self, h: &Polynomial) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.num.multiplicity(h) as i64 - self.den.multiplicity(h) as i64)
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitutes `t ↦ inner(t)`.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        Self::new(self.num.compose(inner), self.den.compose(inner))
    }

    /// Re-reduction; the identity on any value built through the public API.
    pub fn reduced(&self) -> Self {
        Self::new(self.num.clone(), self.den.clone())
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.den.is_one_poly() {
            return self.num.display_with(var);
        }
        format!("({})/({})", self.num.display_with(var), self.den.display_with(var))
    }
}

impl Polynomial {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.leading().is_one()
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; callers check `is_zero` first.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "rational function division by zero");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}
