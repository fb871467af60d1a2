//! Genus-1 families `y² = x³ + p(t)x + q(t)` over ℙ¹: punctures, loop
//! systems, braid monodromy, quadratic twists and the quartic pencil.

mod loops;
mod monodromy;
mod quartic;
mod twist;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::braid::BraidError;
use crate::exact::{
    certified_roots, discriminant_cubic, j_invariant, parse_rational_function, BiPoly, CertifiedRoot, ExactError,
    ParseError, Polynomial, RationalFunction,
};
use crate::kodaira::KodairaError;
use crate::sl2::SL2Matrix;
use crate::subgroup::SubgroupError;

pub use loops::{LoopSystem, Puncture};
pub use monodromy::{
    finite_group_order, lasso_braids, local_monodromy_matches, monodromy_group, monodromy_group_with_extra,
    monodromy_on_loops, LassoMonodromy, MonodromyReport, RunOptions, TrackedLoops,
};
pub use quartic::{binary_quartic_invariants, cross_ratio_j, quartic_pencil_family, QuarticPencil, QuarticReport};
pub use twist::{chi_d, verify_twist_relation, winding_number, TwistReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("degenerate family: 4p^3 + 27q^2 vanishes identically")]
    DegenerateFamily,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("family is isotrivial; its monodromy group is finite of order {}", order.map_or("> cap".into(), |n| n.to_string()))]
    IsotrivialFamily { generators: Vec<SL2Matrix>, order: Option<u64> },
    #[error("twisting function is zero")]
    ZeroTwist,
    #[error("twisting function has a zero or pole on the loop")]
    ZeroOnLoop,
    #[error("no admissible basepoint found for the loop system")]
    NoBasepoint,
    #[error("quartic is singular or meets the line at infinity badly")]
    NonSmoothQuartic,
    #[error("pencil is not generic: {0}")]
    NonGenericPencil(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
}

/// `y² = x³ + p(t)x + q(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub label: String,
    pub p: RationalFunction,
    pub q: RationalFunction,
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FamilySpec", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("p", &self.p.display_with("t"))?;
        st.serialize_field("q", &self.q.display_with("t"))?;
        st.end()
    }
}

impl FamilySpec {
    pub fn new(label: impl Into<String>, p: RationalFunction, q: RationalFunction) -> Result<Self, FamilyError> {
        if discriminant_cubic(&p, &q).is_zero() {
            return Err(FamilyError::DegenerateFamily);
        }
        Ok(FamilySpec { label: label.into(), p, q })
    }

    pub fn parse(label: impl Into<String>, p: &str, q: &str) -> Result<Self, FamilyError> {
        Self::new(label, parse_rational_function(p, "t")?, parse_rational_function(q, "t")?)
    }

    /// `4p³ + 27q²`.
    pub fn discriminant(&self) -> RationalFunction {
        discriminant_cubic(&self.p, &self.q)
    }

    pub fn j(&self) -> RationalFunction {
        j_invariant(&self.p, &self.q).expect("family is non-degenerate")
    }

    pub fn is_isotrivial(&self) -> bool {
        self.j().is_constant()
    }

    /// Square-free polynomial whose roots are the finite punctures: zeros and
    /// poles of the discriminant and poles of `p` and `q`.
    pub fn puncture_polynomial(&self) -> Polynomial {
        let d = self.discriminant();
        let all = &(&(d.num() * d.den()) * self.p.den()) * self.q.den();
        all.squarefree_part().monic()
    }

    /// `L·(x³ + px + q)` with `L` the monic lcm of the denominators, so that the
    /// roots in `x` are those of the Weierstrass cubic wherever `L ≠ 0`.
    pub fn tracking_polynomial(&self) -> BiPoly {
        let (p, q) = (&self.p, &self.q);
        let g = p.den().gcd(q.den());
        let l = (p.den() * q.den()).exact_div(&g).expect("gcd divides");
        let lp = (p.num() * &l).exact_div(p.den()).expect("lcm is a multiple");
        let lq = (q.num() * &l).exact_div(q.den()).expect("lcm is a multiple");
        BiPoly::new(vec![lq, lp, Polynomial::zero(), l])
    }

    /// The family pulled back along `t ↦ h(t)`.
    pub fn pullback(&self, h: &Polynomial) -> FamilySpec {
        FamilySpec {
            label: format!("{}∘({})", self.label, h.display_with("t")),
            p: self.p.compose(h),
            q: self.q.compose(h),
        }
    }
}

/// The twisting function `D` of a quadratic twist.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistSpec {
    pub d: RationalFunction,
}

impl TwistSpec {
    pub fn new(d: RationalFunction) -> Result<Self, FamilyError> {
        if d.is_zero() {
            return Err(FamilyError::ZeroTwist);
        }
        Ok(TwistSpec { d })
    }

    pub fn parse(d: &str) -> Result<Self, FamilyError> {
        Self::new(parse_rational_function(d, "t")?)
    }
}

/// `J(t)`, its degree as a map ℙ¹ → ℙ¹, and `m`, the number of points in a
/// general fiber of `J`, which for a curve base is the degree.
#[derive(Debug, Clone, Serialize)]
pub struct JMap {
    #[serde(serialize_with = "display_t")]
    pub j: RationalFunction,
    pub deg_j: u64,
    pub m: u64,
    pub isotrivial: bool,
}

fn display_t<S: Serializer>(f: &RationalFunction, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.display_with("t"))
}

pub fn j_map(fam: &FamilySpec) -> JMap {
    let j = fam.j();
    let deg = j.degree() as u64;
    let isotrivial = j.is_constant();
    JMap { j, deg_j: deg, m: deg, isotrivial }
}

/// `(D²p, D³q)`.
pub fn quadratic_twist(fam: &FamilySpec, tw: &TwistSpec) -> Result<FamilySpec, FamilyError> {
    if tw.d.is_zero() {
        return Err(FamilyError::ZeroTwist);
    }
    let d2 = &tw.d * &tw.d;
    let d3 = &d2 * &tw.d;
    Ok(FamilySpec {
        label: format!("{} twisted by {}", fam.label, tw.d.display_with("t")),
        p: &d2 * &fam.p,
        q: &d3 * &fam.q,
    })
}

/// Finite punctures, each isolated in a certified disk.
pub fn punctures_of(fam: &FamilySpec, precision: u32) -> Result<Vec<CertifiedRoot>, FamilyError> {
    let f = fam.puncture_polynomial();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    Ok(certified_roots(&f, precision, crate::exact::DEFAULT_MAX_PRECISION)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    pub(crate) fn legendre() -> FamilySpec {
        FamilySpec::parse("legendre", "-(t^2 - t + 1)/3", "-(2*t^3 - 3*t^2 - 3*t + 2)/27").unwrap()
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(FamilySpec::parse("d", "-3", "2").unwrap_err(), FamilyError::DegenerateFamily);
        assert!(FamilySpec::parse("bad", "t +", "1").is_err());
    }

    #[test]
    fn puncture_examples() {
        let f = FamilySpec::parse("a", "t", "1").unwrap();
        let ps = punctures_of(&f, 64).unwrap();
        assert_eq!(ps.len(), 3);
        // Oracle: the roots are the cube roots of -27/4.
        for r in &ps {
            let z = r.approx();
            let cube = z * z * z;
            assert!((cube.re + 6.75).abs() < 1e-9 && cube.im.abs() < 1e-9);
        }
        assert!(punctures_of(&FamilySpec::parse("b", "0", "1").unwrap(), 64).unwrap().is_empty());
        let ps = punctures_of(&legendre(), 64).unwrap();
        let mut re: Vec<f64> = ps.iter().map(|r| r.approx().re).collect();
        re.sort_by(f64::total_cmp);
        assert_eq!(ps.len(), 2);
        assert!(re[0].abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn j_map_examples() {
        let jm = j_map(&FamilySpec::parse("a", "t", "1").unwrap());
        assert_eq!((jm.deg_j, jm.m), (3, 3));
        let jm = j_map(&legendre());
        assert_eq!(jm.deg_j, 6);
        // Cross-ratio form 256(λ²-λ+1)³ / (λ²(λ-1)²).
        let l = rat(5);
        let expect = rat(256) * (&l * &l - &l + rat(1)).pow(3) / (&l * &l * (&l - rat(1)).pow(2));
        assert_eq!(jm.j.eval(&l), Some(expect));
        assert!(j_map(&FamilySpec::parse("c", "0", "t").unwrap()).isotrivial);
    }

    #[test]
    fn twist_examples() {
        let f = FamilySpec::parse("a", "t", "1").unwrap();
        let same = quadratic_twist(&f, &TwistSpec::parse("1").unwrap()).unwrap();
        assert_eq!((same.p.clone(), same.q.clone()), (f.p.clone(), f.q.clone()));
        let tw = quadratic_twist(&f, &TwistSpec::parse("t").unwrap()).unwrap();
        let t3 = parse_rational_function("t^3", "t").unwrap();
        assert_eq!((tw.p.clone(), tw.q.clone()), (t3.clone(), t3));
        let twice = quadratic_twist(&tw, &TwistSpec::parse("t").unwrap()).unwrap();
        assert_eq!(twice.j(), f.j());
        assert_eq!(TwistSpec::parse("0").unwrap_err(), FamilyError::ZeroTwist);
        let _ = ratio(1, 2);
    }

    #[test]
    fn tracking_polynomial_clears_denominators() {
        let f = FamilySpec::parse("a", "1/t", "1/(t^2 - 1)").unwrap();
        let g = f.tracking_polynomial();
        assert_eq!(g.degree(), 3);
        let at = rat(3);
        let spec = g.specialize(&at);
        let l = spec.leading();
        assert_eq!(spec.coeff(1) / &l, f.p.eval(&at).unwrap());
        assert_eq!(spec.coeff(0) / &l, f.q.eval(&at).unwrap());
    }
}
