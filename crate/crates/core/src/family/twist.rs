//! Quadratic characters of loops and the twist relation between the
//! monodromy of a family and of its quadratic twist.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::Serialize;

use super::monodromy::{monodromy_with_loops, MonodromyReport, RunOptions, TrackedLoops};
use super::{quadratic_twist, FamilyError, FamilySpec, LoopSystem, TwistSpec};
use crate::braid::{mu3, PathPlan, Segment};
use crate::exact::{eval_poly_complex, Polynomial, RationalFunction, C64};
use crate::sl2::SL2Matrix;
use crate::subgroup::{twist_group_with_budget, SubgroupDescriptor, TwistClassification};

const MIN_STEP: f64 = 1e-12;

fn complex_coeffs(p: &Polynomial) -> Vec<C64> {
    p.coeffs().iter().map(|c| C64::c(crate::exact::rational_to_f64(c), 0.0)).collect()
}

/// Taylor coefficients of `p` at `a`: `p(a + h) = Σ b_k h^k`.
fn taylor(coeffs: &[C64], a: C64) -> Vec<C64> {
    let mut b = coeffs.to_vec();
    let n = b.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let next = b[k + 1];
            b[k] = b[k] + a * next;
        }
    }
    b
}

/// Net change of `arg p` along one segment divided by 2π. Each step is
/// accepted only when the Taylor remainder bound keeps `p` within half its
/// modulus of the value at the step start, so no zero is crossed and the
/// argument moves by less than π/6 per step.
fn segment_winding(coeffs: &[C64], seg: &Segment) -> Result<f64, FamilyError> {
    let speed = match seg {
        Segment::Line { from, to } => (to.to_c64() - from.to_c64()).norm(),
        Segment::Arc { .. } => seg.length(),
    };
    let mut s = 0.0_f64;
    let mut h = 1.0_f64 / 16.0;
    let mut total = 0.0;
    while s < 1.0 {
        let s1 = (s + h).min(1.0);
        let a = seg.point_c64(s);
        let b = taylor(coeffs, a);
        let pa = b[0];
        let r = speed * (s1 - s);
        let mut bound = 0.0;
        let mut rk = 1.0;
        for bk in &b[1..] {
            rk *= r;
            bound += bk.norm() * rk;
        }
        if bound < 0.5 * pa.norm() {
            let pb = taylor(coeffs, seg.point_c64(s1))[0];
            total += (pb * pa.conj()).arg();
            s = s1;
            if bound < 0.125 * pa.norm() {
                h *= 2.0;
            }
        } else {
            h /= 2.0;
            if h < MIN_STEP {
                return Err(FamilyError::ZeroOnLoop);
            }
        }
    }
    Ok(total / TAU)
}

fn poly_winding(p: &Polynomial, path: &PathPlan) -> Result<f64, FamilyError> {
    if p.is_constant() {
        return Ok(0.0);
    }
    let c = complex_coeffs(p);
    path.segments.iter().map(|s| segment_winding(&c, s)).sum()
}

/// Winding number of `f` around 0 along the closed path.
pub fn winding_number(f: &RationalFunction, path: &PathPlan) -> Result<i64, FamilyError> {
    if f.is_zero() {
        return Err(FamilyError::ZeroOnLoop);
    }
    let w = poly_winding(f.num(), path)? - poly_winding(f.den(), path)?;
    let k = w.round();
    debug_assert!((w - k).abs() < 1e-6, "path is not closed: winding {w}");
    Ok(k as i64)
}

/// `χ_D(γ) = (-1)^k` with `k` the winding number of `D ∘ γ` around 0.
pub fn chi_d(tw: &TwistSpec, path: &PathPlan) -> Result<i8, FamilyError> {
    Ok(if winding_number(&tw.d, path)?.rem_euclid(2) == 0 { 1 } else { -1 })
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistReport {
    pub original: MonodromyReport,
    pub twisted_family: FamilySpec,
    pub chi: Vec<i8>,
    pub twisted_matrices: Vec<SL2Matrix>,
    /// Twisted group predicted from the original matrices and `χ_D`.
    pub predicted: SubgroupDescriptor,
    /// Group generated by the matrices read off the twisted family.
    pub direct: SubgroupDescriptor,
    pub classification: TwistClassification,
    /// `sl_index(direct) / sl_index(original)` as `"1/2"`, `"1"` or `"2"`.
    pub sl_ratio: String,
    pub checks: BTreeMap<String, bool>,
}

impl TwistReport {
    pub fn all_hold(&self) -> bool {
        self.checks.values().all(|&b| b)
    }
}

/// Computes both monodromy groups on one loop system that also encircles the
/// zeros and poles of `D`, and checks that each twisted lasso matrix is the
/// original one times `χ_D` of the lasso.
pub fn verify_twist_relation(fam: &FamilySpec, tw: &TwistSpec, opts: &RunOptions) -> Result<TwistReport, FamilyError> {
    let twisted = quadratic_twist(fam, tw)?;
    let mut rng = opts.rng();
    let extra = tw.d.num() * tw.d.den();
    let all = (&fam.puncture_polynomial() * &extra).squarefree_part();
    let loops = LoopSystem::build(&all, &mut rng)?;
    let original = monodromy_with_loops(fam, &loops, opts, &mut rng)?;

    let chi = loops.lassos.iter().map(|l| chi_d(tw, l)).collect::<Result<Vec<_>, _>>()?;

    // The twisted roots at the basepoint are D(b₀) times the original ones;
    // rotating the projection by arg D(b₀) keeps the strand order.
    let b0 = &loops.basepoint;
    let db0 = eval_poly_complex(tw.d.num(), b0).to_c64() / eval_poly_complex(tw.d.den(), b0).to_c64();
    let d = C64::c(original.direction[0], original.direction[1]) * db0 * C64::c(1.0 / db0.norm(), 0.0);
    let tracked = TrackedLoops::track(&twisted.tracking_polynomial(), &loops.lassos, &opts.track())?;
    let twisted_matrices = tracked.extract(d)?.iter().map(mu3).collect::<Result<Vec<_>, _>>()?;

    let orig_m = original.matrices();
    let per_lasso = orig_m.iter().zip(&chi).zip(&twisted_matrices).all(|((m, &c), t)| m.signed(c) == *t);
    let (predicted, classification) = twist_group_with_budget(&orig_m, &chi, opts.max_cosets)?;
    let direct = SubgroupDescriptor::compute(&twisted_matrices, opts.max_cosets);
    direct.require_closed(opts.max_cosets)?;

    let sl1 = original.subgroup.sl_index.finite().expect("closed");
    let sl2 = direct.sl_index.finite().expect("closed");
    let sl_ratio = match (sl2 * 2 == sl1, sl2 == sl1, sl2 == 2 * sl1) {
        (true, _, _) => "1/2".to_string(),
        (_, true, _) => "1".to_string(),
        (_, _, true) => "2".to_string(),
        _ => format!("{sl2}/{sl1}"),
    };
    let mut checks = BTreeMap::new();
    checks.insert("per-lasso matrices equal chi_D times original".to_string(), per_lasso);
    checks.insert("predicted group equals direct group".to_string(), predicted.same_group(&direct)?);
    checks.insert("psl indices equal".to_string(), direct.psl_index == original.subgroup.psl_index);
    checks.insert("sl index ratio in {1/2, 1, 2}".to_string(), ["1/2", "1", "2"].contains(&sl_ratio.as_str()));
    if sl1 == 1 {
        checks.insert("full group preserved".to_string(), sl2 == 1);
    }
    Ok(TwistReport {
        original,
        twisted_family: twisted,
        chi,
        twisted_matrices,
        predicted,
        direct,
        classification,
        sl_ratio,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational_function, rat, ComplexRational};

    fn circle(cx: i64, r: i64, turns: i32) -> PathPlan {
        let c = ComplexRational::new(rat(cx), rat(0));
        PathPlan::circle(c, ComplexRational::new(rat(cx + r), rat(0)), turns)
    }

    fn tw(s: &str) -> TwistSpec {
        TwistSpec::parse(s).unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_d(&tw("t"), &circle(0, 1, 1)).unwrap(), -1);
        assert_eq!(chi_d(&tw("t^2"), &circle(0, 1, 1)).unwrap(), 1);
        assert_eq!(chi_d(&tw("7/3"), &circle(5, 2, 1)).unwrap(), 1);
        assert_eq!(chi_d(&tw("t"), &circle(3, 1, 1)).unwrap(), 1);
    }

    #[test]
    fn winding_matches_order_inside() {
        let f = parse_rational_function("t^3*(t - 4)/((t + 1)^2*(t - 10))", "t").unwrap();
        assert_eq!(winding_number(&f, &circle(0, 2, 1)).unwrap(), 1);
        assert_eq!(winding_number(&f, &circle(0, 5, 1)).unwrap(), 2);
        assert_eq!(winding_number(&f, &circle(0, 5, -2)).unwrap(), -4);
        assert_eq!(winding_number(&f, &circle(0, 20, 1)).unwrap(), 1);
    }

    #[test]
    fn zero_on_loop() {
        assert_eq!(chi_d(&tw("t - 1"), &circle(0, 1, 1)).unwrap_err(), FamilyError::ZeroOnLoop);
    }

    #[test]
    fn trivial_twist_is_identity() {
        let fam = FamilySpec::parse("a", "t", "1").unwrap();
        let opts = RunOptions { precision: 53, ..RunOptions::default() };
        let rep = verify_twist_relation(&fam, &tw("1"), &opts).unwrap();
        assert!(rep.chi.iter().all(|&c| c == 1));
        assert_eq!(rep.twisted_matrices, rep.original.matrices());
        assert!(rep.all_hold(), "{:?}", rep.checks);
    }
}
