//! Kodaira fiber types of `y² = x³ + p(t)x + q(t)` at every place of ℙ¹.
//!
//! In residue characteristic zero the type is read off the valuations of
//! `c₄ ∝ p`, `c₆ ∝ q` and `Δ ∝ 4p³ + 27q²` of a minimal model. Places with
//! irrational coordinates are never split off: valuations are constant on
//! the roots of each element of a gcd-free basis of the polynomials
//! involved, so each basis element stands for `deg` places of one type.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{certified_roots, ComplexValue, Polynomial, Rational, RationalFunction, DEFAULT_MAX_PRECISION};
use crate::family::FamilySpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KodairaError {
    #[error("no Kodaira type for valuations (c4, c6, disc) = ({0}, {1}, {2})")]
    UnclassifiablePlace(i64, i64, i64),
    #[error("family is isotrivial: J is constant")]
    IsotrivialFamily,
    #[error("sum of e over all places is {sum_e} but deg J is {deg_j}")]
    SumMismatch { sum_e: u64, deg_j: u64 },
    #[error("place must be a nonconstant square-free polynomial")]
    InvalidPlace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// `e(s)`: `n` for `I_n` and `I_n*`, zero otherwise.
    pub fn e_value(self) -> u32 {
        match self {
            KodairaType::I(n) | KodairaType::IStar(n) => n,
            _ => 0,
        }
    }

    /// Trace of the local monodromy, an invariant of its conjugacy class.
    pub fn monodromy_trace(self) -> i64 {
        match self {
            KodairaType::I0 | KodairaType::I(_) => 2,
            KodairaType::II | KodairaType::IIStar => 1,
            KodairaType::III | KodairaType::IIIStar => 0,
            KodairaType::IV | KodairaType::IVStar => -1,
            KodairaType::I0Star | KodairaType::IStar(_) => -2,
        }
    }

    /// Reads the type from valuations of a minimal model.
    pub fn from_valuations(c4: i64, c6: i64, disc: i64) -> Result<Self, KodairaError> {
        let err = KodairaError::UnclassifiablePlace(c4, c6, disc);
        let t = match disc {
            0 => KodairaType::I0,
            n if c4 == 0 && c6 == 0 => KodairaType::I(u32::try_from(n).map_err(|_| err.clone())?),
            2 if c4 >= 1 && c6 == 1 => KodairaType::II,
            3 if c4 == 1 && c6 >= 2 => KodairaType::III,
            4 if c4 >= 2 && c6 == 2 => KodairaType::IV,
            6 if c4 >= 2 && c6 >= 3 => KodairaType::I0Star,
            n if n > 6 && c4 == 2 && c6 == 3 => KodairaType::IStar((n - 6) as u32),
            8 if c4 >= 3 && c6 == 4 => KodairaType::IVStar,
            9 if c4 == 3 && c6 >= 5 => KodairaType::IIIStar,
            10 if c4 >= 4 && c6 == 5 => KodairaType::IIStar,
            _ => return Err(err),
        };
        Ok(t)
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => f.write_str("I0"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::I0Star => f.write_str("I0*"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A place of ℙ¹: the roots of a square-free polynomial sharing one set of
/// valuations, or `t = ∞`.
#[derive(Debug, Clone, PartialEq)]
pub enum Place {
    Factor(Polynomial),
    Infinity,
}

impl Place {
    pub fn rational(t0: Rational) -> Self {
        Place::Factor(Polynomial::linear_root(t0))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KodairaPlace {
    /// Defining polynomial, or `"infinity"`.
    pub place: String,
    /// Number of geometric points this entry stands for.
    pub count: u32,
    /// Root approximations of the defining polynomial (empty at ∞).
    pub roots: Vec<ComplexValue>,
    pub ord_c4: Option<i64>,
    pub ord_c6: Option<i64>,
    pub ord_disc: i64,
    pub kodaira_type: KodairaType,
    pub e_value: u32,
    /// Twist exponent `k` of the minimalizing substitution `u = t^k`.
    pub shift: i64,
}

impl KodairaPlace {
    pub fn is_minimal(&self) -> bool {
        !(self.ord_c4.is_none_or(|a| a >= 4) && self.ord_c6.is_none_or(|b| b >= 6) && self.ord_disc >= 12)
    }
}

fn valuations(
    p: &RationalFunction,
    q: &RationalFunction,
    d: &RationalFunction,
    ord: impl Fn(&RationalFunction) -> Option<i64>,
) -> (Option<i64>, Option<i64>, i64, i64) {
    let (a, b) = (ord(p), ord(q));
    let dd = ord(d).expect("nonzero discriminant");
    let floor_div = |x: i64, m: i64| x.div_euclid(m);
    let k = -[a.map(|a| floor_div(a, 4)), b.map(|b| floor_div(b, 6))].into_iter().flatten().min().expect("p or q is nonzero");
    (a.map(|a| a + 4 * k), b.map(|b| b + 6 * k), dd + 12 * k, k)
}

fn classify_with(
    fam: &FamilySpec,
    label: String,
    count: u32,
    roots: Vec<ComplexValue>,
    ord: impl Fn(&RationalFunction) -> Option<i64>,
) -> Result<KodairaPlace, KodairaError> {
    let d = fam.discriminant();
    let (a, b, dd, k) = valuations(&fam.p, &fam.q, &d, ord);
    let big = i64::MAX / 4;
    let t = KodairaType::from_valuations(a.unwrap_or(big), b.unwrap_or(big), dd)?;
    let place = KodairaPlace {
        place: label,
        count,
        roots,
        ord_c4: a,
        ord_c6: b,
        ord_disc: dd,
        kodaira_type: t,
        e_value: t.e_value(),
        shift: k,
    };
    debug_assert!(place.is_minimal());
    Ok(place)
}

/// Classifies one place. A `Factor` should be irreducible or an element of
/// [`gcd_free_basis`] so that all of its roots share valuations; otherwise the
/// smallest valuation among the roots is used.
pub fn classify_place(fam: &FamilySpec, place: &Place) -> Result<KodairaPlace, KodairaError> {
    match place {
        Place::Infinity => classify_with(fam, "infinity".into(), 1, Vec::new(), RationalFunction::ord_infinity),
        Place::Factor(h) => {
            if h.is_constant() || h.squarefree_part().deg0() != h.deg0() {
                return Err(KodairaError::InvalidPlace);
            }
            let h = h.monic();
            let roots = certified_roots(&h, 64, DEFAULT_MAX_PRECISION)
                .map(|rs| rs.iter().map(|r| r.value()).collect())
                .unwrap_or_default();
            classify_with(fam, h.display_with("t"), h.deg0() as u32, roots, |f| f.ord_at(&h))
        }
    }
}

/// Pairwise coprime monic square-free polynomials such that every input is,
/// up to a constant, a product of powers of them.
pub fn gcd_free_basis(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    // Refining by the square-free decomposition keeps every multiplicity
    // constant on the roots of each basis element.
    let parts = polys
        .iter()
        .filter(|f| !f.is_zero() && !f.is_constant())
        .flat_map(|f| f.squarefree_decomposition().into_iter().map(|(g, _)| g));
    for f in parts {
        if f.is_constant() {
            continue;
        }
        let mut f = f.monic();
        let mut next = Vec::with_capacity(basis.len() + 1);
        for b in basis {
            let g = f.gcd(&b);
            if g.is_constant() {
                next.push(b);
                continue;
            }
            let rest = b.exact_div(&g).expect("gcd divides");
            next.push(g.clone());
            if !rest.is_constant() {
                next.push(rest.monic());
            }
            f = f.exact_div(&g).expect("gcd divides");
        }
        if !f.is_constant() {
            next.push(f.monic());
        }
        basis = next;
    }
    basis.sort_by(|a, b| a.deg0().cmp(&b.deg0()).then_with(|| a.coeffs().cmp(b.coeffs())));
    basis
}

/// One entry per element of the gcd-free basis of the numerators and
/// denominators of `p`, `q` and the discriminant, including smooth fibers.
pub fn finite_places(fam: &FamilySpec) -> Result<Vec<KodairaPlace>, KodairaError> {
    let d = fam.discriminant();
    let inputs = [fam.p.num(), fam.p.den(), fam.q.num(), fam.q.den(), d.num(), d.den()].map(Clone::clone);
    gcd_free_basis(&inputs).into_iter().map(|h| classify_place(fam, &Place::Factor(h))).collect()
}

/// Every finite place whose fiber is singular, then `t = ∞` (always listed).
pub fn all_places(fam: &FamilySpec) -> Result<Vec<KodairaPlace>, KodairaError> {
    let mut out: Vec<KodairaPlace> =
        finite_places(fam)?.into_iter().filter(|p| p.kodaira_type != KodairaType::I0).collect();
    out.push(classify_place(fam, &Place::Infinity)?);
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceBound {
    pub places: Vec<KodairaPlace>,
    pub sum_e: u64,
    pub bound: u64,
    pub deg_j: u64,
}

/// `Σ e(s)` over all places, the bound `2·Σ e(s)` on the index, and a check
/// that `Σ e(s) = deg J`.
pub fn surface_bound(fam: &FamilySpec) -> Result<SurfaceBound, KodairaError> {
    let j = fam.j();
    if j.is_constant() {
        return Err(KodairaError::IsotrivialFamily);
    }
    let places = all_places(fam)?;
    let sum_e: u64 = places.iter().map(|p| p.e_value as u64 * p.count as u64).sum();
    let deg_j = j.degree() as u64;
    if sum_e != deg_j {
        return Err(KodairaError::SumMismatch { sum_e, deg_j });
    }
    Ok(SurfaceBound { places, sum_e, bound: 2 * sum_e, deg_j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn fam(p: &str, q: &str) -> FamilySpec {
        FamilySpec::parse("test", p, q).unwrap()
    }

    fn types(f: &FamilySpec) -> Vec<(String, u32)> {
        all_places(f).unwrap().into_iter().map(|p| (p.kodaira_type.to_string(), p.count)).collect()
    }

    #[test]
    fn valuation_table() {
        assert_eq!(KodairaType::from_valuations(0, 0, 0), Ok(KodairaType::I0));
        assert_eq!(KodairaType::from_valuations(0, 0, 3), Ok(KodairaType::I(3)));
        assert_eq!(KodairaType::from_valuations(1, 1, 2), Ok(KodairaType::II));
        assert_eq!(KodairaType::from_valuations(1, 2, 3), Ok(KodairaType::III));
        assert_eq!(KodairaType::from_valuations(2, 2, 4), Ok(KodairaType::IV));
        assert_eq!(KodairaType::from_valuations(2, 3, 6), Ok(KodairaType::I0Star));
        assert_eq!(KodairaType::from_valuations(2, 3, 8), Ok(KodairaType::IStar(2)));
        assert_eq!(KodairaType::from_valuations(3, 4, 8), Ok(KodairaType::IVStar));
        assert_eq!(KodairaType::from_valuations(3, 5, 9), Ok(KodairaType::IIIStar));
        assert_eq!(KodairaType::from_valuations(4, 5, 10), Ok(KodairaType::IIStar));
        assert!(KodairaType::from_valuations(1, 0, 5).is_err());
        assert_eq!(KodairaType::IStar(2).to_string(), "I2*");
    }

    #[test]
    fn x3_x_t() {
        let f = fam("1", "t");
        assert_eq!(types(&f), vec![("I1".into(), 2), ("II*".into(), 1)]);
        let inf = classify_place(&f, &Place::Infinity).unwrap();
        assert_eq!((inf.ord_c4, inf.ord_c6, inf.ord_disc), (Some(4), Some(5), 10));
        let b = surface_bound(&f).unwrap();
        assert_eq!((b.sum_e, b.bound, b.deg_j), (2, 4, 2));
    }

    #[test]
    fn legendre() {
        let f = fam("-(t^2 - t + 1)/3", "-(2*t^3 - 3*t^2 - 3*t + 2)/27");
        let ps = all_places(&f).unwrap();
        let at0 = classify_place(&f, &Place::rational(rat(0))).unwrap();
        assert_eq!(at0.kodaira_type, KodairaType::I(2));
        assert_eq!(at0.e_value, 2);
        assert_eq!(ps.last().unwrap().kodaira_type, KodairaType::IStar(2));
        assert_eq!(surface_bound(&f).unwrap().sum_e, 6);
    }

    #[test]
    fn poles_and_shifts() {
        // x³ + t x + 1 is III* at ∞ with three I1 fibers.
        let f = fam("t", "1");
        assert_eq!(types(&f), vec![("I1".into(), 3), ("III*".into(), 1)]);
        // Replacing (p, q) by (p/t², q/t³) twists by t: I1 at 0 is untouched
        // elsewhere, but 0 itself picks up a star.
        let g = fam("(t + 1)/t^2", "1/t^3");
        let at0 = classify_place(&g, &Place::rational(rat(0))).unwrap();
        assert!(at0.is_minimal());
        assert_eq!(surface_bound(&g).unwrap().sum_e, g.j().degree() as u64);
    }

    #[test]
    fn isotrivial() {
        assert_eq!(surface_bound(&fam("0", "t")).unwrap_err(), KodairaError::IsotrivialFamily);
    }

    #[test]
    fn gcd_free() {
        let a = Polynomial::from_i64(&[0, 1]); // t
        let b = Polynomial::from_i64(&[-1, 1]); // t - 1
        let ab = &a * &b;
        let basis = gcd_free_basis(&[ab.pow(2), &a * &a, b.clone()]);
        assert_eq!(basis.len(), 2);
        // t²(t-1) must split t from t-1 even though it is the only input.
        let basis = gcd_free_basis(&[&(&a * &a) * &b]);
        assert_eq!(basis.len(), 2);
        for x in &basis {
            for y in &basis {
                if x != y {
                    assert!(x.gcd(y).is_constant());
                }
            }
        }
    }
}
