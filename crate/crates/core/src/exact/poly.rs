use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense univariate polynomial over ℚ, coefficients indexed by degree.
///
/// Trailing zeros are always stripped, so the zero polynomial has an empty
/// coefficient vector and every other polynomial has a nonzero leading
/// coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn var() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `t - c`.
    pub fn linear_root(c: Rational) -> Self {
        Self::new(vec![-c, Rational::one()])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
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

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg0();
        let lc_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Yun's square-free factorization: returns `(g_k, k)` with
    /// `self = lc · Π g_k^k`, each `g_k` monic, square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((a, k));
            }
            k += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Polynomial {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Polynomial::one(), |acc, (g, _)| &acc * &g)
    }

    /// Multiplicity of the square-free factor `h` in `self`.
    pub fn multiplicity(&self, h: &Polynomial) -> u32 {
        if self.is_zero() || h.is_constant() {
            return 0;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(h) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Sum of absolute values of the coefficients, as `f64`.
    pub fn l1_norm_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).sum()
    }

    /// Format with the given variable name, using the expression grammar.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Sylvester resultant computed by the Euclidean remainder sequence.
///
/// Sign convention: `res(a, b) = lc(a)^deg(b) · Π b(α)` over the roots `α` of
/// `a`, the classical Sylvester-determinant value. In particular
/// `res(x-1, x+1) = 2`.
pub fn resultant(a: &Polynomial, b: &Polynomial) -> Result<Rational, ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::BothZero);
    }
    if a.is_zero() || b.is_zero() {
        // Res(0, c) = 1 for a nonzero constant c; 0 otherwise.
        let other = if a.is_zero() { b } else { a };
        return Ok(if other.is_constant() { Rational::one() } else { Rational::zero() });
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = Rational::one();
    loop {
        let m = a.deg0();
        let n = b.deg0();
        if n == 0 {
            return Ok(acc * pow_rat(&b.leading(), m as u32));
        }
        if m == 0 {
            return Ok(acc * pow_rat(&a.leading(), n as u32));
        }
        let (_, r) = a.div_rem(&b);
        if r.is_zero() {
            return Ok(Rational::zero());
        }
        let k = r.deg0();
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(&b.leading(), (m - k) as u32);
        a = b;
        b = r;
    }
}

/// Resultant as the determinant of the Sylvester matrix built from the given
/// formal degrees. Leading coefficients may vanish, which makes this the
/// homogeneous (projective) resultant used for discriminants of binary forms.
pub fn sylvester_resultant(a: &[Rational], deg_a: usize, b: &[Rational], deg_b: usize) -> Rational {
    let n = deg_a + deg_b;
    if n == 0 {
        return Rational::one();
    }
    let get = |v: &[Rational], k: usize| v.get(k).cloned().unwrap_or_else(Rational::zero);
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..deg_b {
        for k in 0..=deg_a {
            m[i][i + k] = get(a, deg_a - k);
        }
    }
    for i in 0..deg_a {
        for k in 0..=deg_b {
            m[deg_b + i][i + k] = get(b, deg_b - k);
        }
    }
    determinant(m)
}

/// Determinant over ℚ by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= &f * src;
            }
        }
    }
    det
}

pub(crate) fn pow_rat(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// Discriminant of `f` of formal degree `n`:
/// `(-1)^(n(n-1)/2) · Res(f, f') / a_n`, with the Sylvester resultant taken at
/// formal degrees `(n, n-1)`. Requires `a_n ≠ 0`.
pub fn discriminant(f: &Polynomial) -> Rational {
    let n = f.deg0();
    if n == 0 {
        return Rational::zero();
    }
    let r = resultant(f, &f.derivative()).expect("nonzero");
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
    sign * r / f.leading()
}

/// Lagrange interpolation through `(x_k, y_k)`.
pub fn interpolate(points: &[(Rational, Rational)]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Polynomial::one();
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Polynomial::linear_root(xj.clone());
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 1])).unwrap(), rat(0));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[1, 1])).unwrap(), rat(2));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap(), rat(1));
        assert!(matches!(resultant(&Polynomial::zero(), &Polynomial::zero()), Err(ExactError::BothZero)));
    }

    #[test]
    fn euclid_and_sylvester_agree() {
        let a = p(&[3, -1, 0, 2, 5]);
        let b = p(&[-7, 2, 1]);
        let e = resultant(&a, &b).unwrap();
        let s = sylvester_resultant(a.coeffs(), 4, b.coeffs(), 2);
        assert_eq!(e, s);
        let e = resultant(&b, &a).unwrap();
        let s = sylvester_resultant(b.coeffs(), 2, a.coeffs(), 4);
        assert_eq!(e, s);
    }

    #[test]
    fn squarefree_of_repeated_factors() {
        let f = &p(&[-2, 1]).pow(3) * &p(&[1, 0, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[1, 0, 1]), 1), (p(&[-2, 1]), 3)]);
        assert_eq!(f.multiplicity(&p(&[-2, 1])), 3);
    }

    #[test]
    fn cubic_discriminant_sign() {
        // x^3 + a x + b has discriminant -4a^3 - 27b^2.
        let f = p(&[1, 1, 0, 1]);
        assert_eq!(discriminant(&f), rat(-31));
    }

    #[test]
    fn interpolation_recovers() {
        let f = p(&[2, -3, 0, 1]);
        let pts: Vec<_> = (0..4).map(|k| (rat(k), f.eval(&rat(k)))).collect();
        assert_eq!(interpolate(&pts), f);
    }

    #[test]
    fn display_grammar() {
        assert_eq!(p(&[1, -1, 3]).to_string(), "3*t^2 - t + 1");
        assert_eq!(Polynomial::new(vec![ratio(-1, 2)]).to_string(), "-1/2");
    }
}
