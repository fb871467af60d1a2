use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{interpolate, rat, sylvester_resultant, Polynomial, Rational};
use super::ratfunc::RationalFunction;

/// Polynomial in an outer variable (`x`) whose coefficients are polynomials in
/// an inner variable (`t`). Trailing zero coefficients are stripped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<Polynomial>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Polynomial) -> Self {
        Self::new(vec![c])
    }

    /// The outer variable.
    pub fn outer() -> Self {
        Self::new(vec![Polynomial::zero(), Polynomial::one()])
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Polynomial {
        self.coeffs.get(k).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in the outer variable.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Maximum degree in the inner variable over all coefficients.
    pub fn inner_degree(&self) -> usize {
        self.coeffs.iter().map(Polynomial::deg0).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Polynomial {
        self.coeffs.last().cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn is_monic(&self) -> bool {
        let lc = self.leading();
        lc.degree() == Some(0) && lc.leading().is_one()
    }

    /// Specializes the inner variable, giving a polynomial in the outer one.
    pub fn specialize(&self, t: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c.eval(t)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&rat(k as i64)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BiPoly::constant(Polynomial::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale_poly(&self, c: &Polynomial) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Discriminant in the outer variable, of formal degree `self.degree()`,
    /// as a polynomial in the inner variable. Computed by exact evaluation at
    /// enough rational points and interpolation; the formal Sylvester matrix is
    /// used at every sample so vanishing leading coefficients are harmless.
    pub fn discriminant(&self) -> Polynomial {
        let n = self.degree();
        if n == 0 {
            return Polynomial::zero();
        }
        let lc = self.leading();
        // Res(f, f') has inner degree at most (2n-1)·d; dividing by the leading
        // coefficient is exact.
        let bound = (2 * n - 1) * self.inner_degree();
        let df = self.derivative();
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
        let points: Vec<(Rational, Rational)> = (0..=bound as i64)
            .map(|k| {
                let t = rat(k);
                let a: Vec<Rational> = self.coeffs.iter().map(|c| c.eval(&t)).collect();
                let b: Vec<Rational> = (0..n).map(|i| df.coeff(i).eval(&t)).collect();
                (t, &sign * sylvester_resultant(&a, n, &b, n - 1))
            })
            .collect();
        let res = interpolate(&points);
        res.exact_div(&lc).expect("leading coefficient divides the resultant")
    }

    /// `self(x ↦ x_sub, inner ↦ y_sub)` where `self` is read as a polynomial in
    /// two variables `(x, y)` and the substitutes are polynomials in a new
    /// outer variable with coefficients in a new inner variable.
    pub fn substitute(&self, x_sub: &BiPoly, y_sub: &BiPoly) -> BiPoly {
        let mut acc = BiPoly::zero();
        for c in self.coeffs.iter().rev() {
            let mut cy = BiPoly::zero();
            for a in c.coeffs().iter().rev() {
                cy = &(&cy * y_sub) + &BiPoly::constant(Polynomial::constant(a.clone()));
            }
            acc = &(&acc * x_sub) + &cy;
        }
        acc
    }

    pub fn display_with(&self, outer: &str, inner: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => outer.to_string(),
                _ => format!("{outer}^{k}"),
            };
            let cs = c.display_with(inner);
            // A coefficient needs parentheses only if it has several terms.
            let compound = cs[1..].contains([' ', '+', '-']);
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let term = match (k, body.as_str()) {
                (0, _) => body,
                (_, "1") => mono,
                _ if compound => format!("({body})*{mono}"),
                _ => format!("{body}*{mono}"),
            };
            parts.push((neg, term));
        }
        let mut out = String::new();
        for (i, (neg, term)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "t"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Polynomial::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Polynomial in the outer variable with coefficients in ℚ(inner). This is what
/// the expression parser produces for bivariate input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiRational {
    coeffs: Vec<RationalFunction>,
}

impl BiRational {
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(RationalFunction::is_zero) {
            coeffs.pop();
        }
        BiRational { coeffs }
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::new(vec![c])
    }

    pub fn outer() -> Self {
        Self::new(vec![RationalFunction::zero(), RationalFunction::one()])
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RationalFunction {
        self.coeffs.get(k).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `Some(f)` when the outer variable does not occur.
    pub fn as_inner(&self) -> Option<RationalFunction> {
        match self.coeffs.len() {
            0 => Some(RationalFunction::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![RationalFunction::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Division by an element of ℚ(inner); `None` if it is zero.
    pub fn div_inner(&self, d: &RationalFunction) -> Option<Self> {
        (!d.is_zero()).then(|| Self::new(self.coeffs.iter().map(|c| c / d).collect()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(RationalFunction::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies through by the monic lcm of coefficient denominators.
    /// Returns the polynomial and the multiplier.
    pub fn clear_denominators(&self) -> (BiPoly, Polynomial) {
        let mut l = Polynomial::one();
        for c in &self.coeffs {
            let g = l.gcd(c.den());
            l = (&l * c.den()).exact_div(&g).expect("gcd divides");
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| (c.num() * &l).exact_div(c.den()).expect("lcm is a multiple"))
            .collect();
        (BiPoly::new(coeffs), l)
    }

    /// `Some` when every coefficient is a polynomial.
    pub fn to_bipoly(&self) -> Option<BiPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_polynomial().then(|| c.num().scale(&c.den().leading().recip())))
            .collect::<Option<Vec<_>>>()
            .map(BiPoly::new)
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}
