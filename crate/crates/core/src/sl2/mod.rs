//! Exact 2×2 integer matrices of determinant one.
//!
//! Generators are fixed as `S = [[0,1],[-1,0]]` and `T = [[1,1],[0,1]]`;
//! `U = ST = [[0,1],[-1,-1]]` has order three, `S` has order four and
//! `S² = -I`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl SL2Matrix {
    /// Row-major constructor; `None` unless `ad - bc = 1`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Option<Self> {
        (&a * &d - &b * &c == BigInt::one()).then_some(SL2Matrix { a, b, c, d })
    }

    /// Panics if the determinant is not one.
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into()).expect("determinant must be 1")
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn minus_identity() -> Self {
        Self::from_i64(-1, 0, 0, -1)
    }

    pub fn s() -> Self {
        Self::from_i64(0, 1, -1, 0)
    }

    pub fn t() -> Self {
        Self::from_i64(1, 1, 0, 1)
    }

    /// `U = ST`.
    pub fn u() -> Self {
        Self::from_i64(0, 1, -1, -1)
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    pub fn inverse(&self) -> Self {
        SL2Matrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn neg(&self) -> Self {
        SL2Matrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn transpose(&self) -> Self {
        SL2Matrix { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    /// Multiplies by a sign `±1`.
    pub fn signed(&self, sign: i8) -> Self {
        if sign < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut sq = base;
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries().iter().map(|x| x.abs()).max().expect("four entries")
    }

    pub fn to_i64(&self) -> Option<[i64; 4]> {
        Some([self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?, self.d.to_i64()?])
    }
}

impl Mul for &SL2Matrix {
    type Output = SL2Matrix;
    fn mul(self, r: &SL2Matrix) -> SL2Matrix {
        let m = SL2Matrix {
            a: &self.a * &r.a + &self.b * &r.c,
            b: &self.a * &r.b + &self.b * &r.d,
            c: &self.c * &r.a + &self.d * &r.c,
            d: &self.c * &r.b + &self.d * &r.d,
        };
        debug_assert!(&m.a * &m.d - &m.b * &m.c == BigInt::one());
        m
    }
}

impl Mul for SL2Matrix {
    type Output = SL2Matrix;
    fn mul(self, r: SL2Matrix) -> SL2Matrix {
        &self * &r
    }
}

impl fmt::Debug for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Serialized as `[["a","b"],["c","d"]]` with decimal strings.
impl Serialize for SL2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = [[self.a.to_string(), self.b.to_string()], [self.c.to_string(), self.d.to_string()]];
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SL2Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: [[String; 2]; 2] = Deserialize::deserialize(d)?;
        let p = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        SL2Matrix::new(p(&rows[0][0])?, p(&rows[0][1])?, p(&rows[1][0])?, p(&rows[1][1])?)
            .ok_or_else(|| D::Error::custom("matrix determinant is not 1"))
    }
}

pub fn mul(m1: &SL2Matrix, m2: &SL2Matrix) -> SL2Matrix {
    m1 * m2
}

/// The automorphism `M ↦ (Mᵀ)⁻¹`.
pub fn tau(m: &SL2Matrix) -> SL2Matrix {
    m.transpose().inverse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    S,
    T,
}

impl Generator {
    pub fn matrix(self) -> SL2Matrix {
        match self {
            Generator::S => SL2Matrix::s(),
            Generator::T => SL2Matrix::t(),
        }
    }
}

/// Word in `S^±1, T^±1`, stored as syllables `(generator, exponent)`.
///
/// Invariants: no zero exponents and no two adjacent syllables on the same
/// generator, so the expanded letter sequence is freely reduced. Exponents of
/// `S` are kept in `{-1, 1, 2}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorWord {
    syllables: Vec<(Generator, i64)>,
}

/// A single letter `S`, `S⁻¹`, `T` or `T⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl GeneratorWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn syllables(&self) -> &[(Generator, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Appends `g^e`, merging with the last syllable.
    pub fn push(&mut self, g: Generator, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if g == Generator::S {
                    last.1 = normalize_s_exponent(last.1);
                }
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        let e = if g == Generator::S { normalize_s_exponent(e) } else { e };
        if e != 0 {
            self.syllables.push((g, e));
        }
    }

    /// Letter count of the expanded word.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.syllables.iter().flat_map(|&(gen, e)| {
            std::iter::repeat_n(Letter { gen, inverse: e < 0 }, e.unsigned_abs() as usize)
        })
    }

    pub fn eval(&self) -> SL2Matrix {
        self.syllables
            .iter()
            .fold(SL2Matrix::identity(), |acc, &(g, e)| &acc * &g.matrix().pow(e))
    }

    pub fn inverse(&self) -> Self {
        let mut w = GeneratorWord::empty();
        for &(g, e) in self.syllables.iter().rev() {
            w.push(g, -e);
        }
        w
    }
}

/// Reduces an exponent of `S` (order 4) into `{-1, 0, 1, 2}`.
fn normalize_s_exponent(e: i64) -> i64 {
    match e.rem_euclid(4) {
        3 => -1,
        r => r,
    }
}

/// Writes `m` as a word in `S` and `T` by the nearest-integer Euclidean
/// algorithm. The syllable count is `O(log max|entry|)`.
pub fn decompose_word(m: &SL2Matrix) -> GeneratorWord {
    let (mut a, mut b, mut c, mut d) = (m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone());
    // Left factors applied so far, in order; the word is their inverses
    // followed by the final ±T^n.
    let mut applied: Vec<(Generator, i64)> = Vec::new();
    while !c.is_zero() {
        let q = nearest_quotient(&a, &c);
        if !q.is_zero() {
            a -= &q * &c;
            b -= &q * &d;
            let qi = q.to_i64().expect("quotient fits in i64");
            applied.push((Generator::T, -qi));
        }
        let (na, nb, nc, nd) = (c.clone(), d.clone(), -a, -b);
        a = na;
        b = nb;
        c = nc;
        d = nd;
        applied.push((Generator::S, 1));
    }
    let mut word = GeneratorWord::empty();
    for &(g, e) in &applied {
        word.push(g, -e);
    }
    if a.is_one() {
        word.push(Generator::T, b.to_i64().expect("entry fits in i64"));
    } else {
        word.push(Generator::S, 2);
        word.push(Generator::T, -b.to_i64().expect("entry fits in i64"));
    }
    word
}

fn nearest_quotient(a: &BigInt, c: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = a.div_mod_floor(c);
    // r has the sign of c; round to nearest.
    if (&r * &two).abs() > c.abs() {
        q + c.signum()
    } else {
        q
    }
}

/// Matrix over ℤ/nℤ, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    pub n: u64,
    pub e: [u64; 4],
}

impl ModMatrix {
    pub fn identity(n: u64) -> Self {
        ModMatrix { n, e: [1 % n, 0, 0, 1 % n] }
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        let n = self.n;
        let [a, b, c, d] = self.e;
        let [p, q, r, s] = o.e;
        ModMatrix { n, e: [(a * p + b * r) % n, (a * q + b * s) % n, (c * p + d * r) % n, (c * q + d * s) % n] }
    }

    pub fn det(&self) -> u64 {
        let [a, b, c, d] = self.e;
        (a * d % self.n + self.n - b * c % self.n) % self.n
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

/// Entrywise reduction modulo `n ≥ 2`.
pub fn reduce_mod(m: &SL2Matrix, n: u64) -> ModMatrix {
    assert!(n >= 2, "modulus must be at least 2");
    let nn = BigInt::from(n);
    let r = |x: &BigInt| x.mod_floor(&nn).to_u64().expect("reduced entry");
    let out = ModMatrix { n, e: [r(&m.a), r(&m.b), r(&m.c), r(&m.d)] };
    debug_assert_eq!(out.det(), 1 % n);
    out
}

/// `|SL(2, ℤ/nℤ)| = n³ Π_{p | n} (1 - 1/p²)`.
pub fn sl2_mod_order(n: u64) -> u64 {
    let mut order = n * n * n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            order = order / (p * p) * (p * p - 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        order = order / (m * m) * (m * m - 1);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mu_a() -> SL2Matrix {
        SL2Matrix::from_i64(1, 0, -1, 1)
    }
    fn mu_b() -> SL2Matrix {
        SL2Matrix::from_i64(1, 1, 0, 1)
    }

    #[test]
    fn braid_relation_and_full_twist() {
        let (a, b) = (mu_a(), mu_b());
        assert_eq!(&(&a * &b) * &a, &(&b * &a) * &b);
        assert_eq!((&a * &b).pow(3), SL2Matrix::minus_identity());
        let m = SL2Matrix::from_i64(2, 1, 1, 1);
        assert_eq!(&SL2Matrix::identity() * &m, m);
    }

    #[test]
    fn generator_orders() {
        assert_eq!(SL2Matrix::s().pow(2), SL2Matrix::minus_identity());
        assert_eq!(SL2Matrix::u().pow(3), SL2Matrix::identity());
        assert_eq!(&SL2Matrix::s() * &SL2Matrix::t(), SL2Matrix::u());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&SL2Matrix::identity()), SL2Matrix::identity());
        assert_eq!(tau(&SL2Matrix::t()), SL2Matrix::from_i64(1, 0, -1, 1));
    }

    #[test]
    fn decompose_examples() {
        assert!(decompose_word(&SL2Matrix::identity()).is_empty());
        assert_eq!(decompose_word(&SL2Matrix::t()).syllables(), &[(Generator::T, 1)]);
        let m = SL2Matrix::from_i64(2, 1, 1, 1);
        assert_eq!(decompose_word(&m).eval(), m);
        assert_eq!(decompose_word(&SL2Matrix::minus_identity()).eval(), SL2Matrix::minus_identity());
    }

    #[test]
    fn decompose_is_logarithmic() {
        // Consecutive Fibonacci numbers: worst case for the Euclidean algorithm.
        let m = SL2Matrix::from_i64(1_134_903_170, 701_408_733, 701_408_733, 433_494_437);
        let w = decompose_word(&m);
        assert_eq!(w.eval(), m);
        assert!(w.syllables().len() <= 4 * 64);
    }

    #[test]
    fn reduce_mod_examples() {
        assert!(reduce_mod(&SL2Matrix::minus_identity(), 2).is_identity());
        assert!(reduce_mod(&SL2Matrix::from_i64(1, 2, 0, 1), 2).is_identity());
        let t = reduce_mod(&SL2Matrix::t(), 2);
        assert_eq!(t.e, [1, 1, 0, 1]);
        assert!(!t.is_identity());
    }

    #[test]
    fn group_orders_mod_n() {
        assert_eq!(sl2_mod_order(2), 6);
        assert_eq!(sl2_mod_order(3), 24);
        assert_eq!(sl2_mod_order(4), 48);
        assert_eq!(sl2_mod_order(12), 1152);
    }

    #[test]
    fn json_form() {
        let m = SL2Matrix::from_i64(2, 1, 1, 1);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["2","1"],["1","1"]]"#);
        let back: SL2Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<SL2Matrix>(r#"[["2","0"],["0","1"]]"#).is_err());
    }

    pub(crate) fn arb_word() -> impl Strategy<Value = SL2Matrix> {
        proptest::collection::vec(0u8..4, 0..=40).prop_map(|letters| {
            letters.into_iter().fold(SL2Matrix::identity(), |acc, l| {
                let g = match l {
                    0 => SL2Matrix::s(),
                    1 => SL2Matrix::s().inverse(),
                    2 => SL2Matrix::t(),
                    _ => SL2Matrix::t().inverse(),
                };
                &acc * &g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn decompose_round_trip(m in arb_word()) {
            prop_assert_eq!(decompose_word(&m).eval(), m);
        }
    }

    proptest! {
        #[test]
        fn tau_is_an_involutive_automorphism(m1 in arb_word(), m2 in arb_word()) {
            prop_assert_eq!(tau(&(&m1 * &m2)), &tau(&m1) * &tau(&m2));
            prop_assert_eq!(tau(&tau(&m1)), m1);
        }

        #[test]
        fn reduction_is_a_homomorphism(m1 in arb_word(), m2 in arb_word()) {
            for n in [2u64, 3, 4, 5, 12] {
                let lhs = reduce_mod(&(&m1 * &m2), n);
                let rhs = reduce_mod(&m1, n).mul(&reduce_mod(&m2, n));
                prop_assert_eq!(lhs, rhs);
                prop_assert_eq!(lhs.det(), 1 % n);
            }
        }
    }
}
