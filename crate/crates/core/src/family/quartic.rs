//! Pencils of lines through a point of the plane meeting a smooth quartic.
//!
//! The line through `P₀ = (x₀, y₀)` with slope `t` meets `F = 0` where
//! `G(u, t) = F(x₀ + u, y₀ + tu)` vanishes. The double cover `w² = G` of the
//! line is a genus-1 curve; its monodromy along a loop is `μ₄` of the braid of
//! the four roots in `u`, times `χ_a` for the leading coefficient `a(t)`
//! (the affine model `w² = G` is the twist by `a` of the monic one). The
//! lines tangent to the quartic are the roots of the discriminant of `G`,
//! twelve for a generic point; the roots of `a` are lines through a point
//! of the quartic at infinity and carry no monodromy.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use super::monodromy::{assemble_report, monodromy_with_loops, LassoMonodromy, MonodromyReport, RunOptions, TrackedLoops};
use super::twist::chi_d;
use super::{FamilyError, FamilySpec, LoopSystem, TwistSpec};
use crate::braid::{mu4, BraidWord};
use crate::exact::{
    eval_poly_complex, rat, roots_at, BiPoly, ComplexRational, ComplexValue, Polynomial, Rational, RationalFunction, C64,
};
use crate::subgroup::Index;

const PENCIL_TRIES: usize = 32;

/// A plane quartic `F(x, y) = 0` (outer variable `x`, inner `y`) and an
/// optional base point for the pencil.
#[derive(Debug, Clone)]
pub struct QuarticPencil {
    pub quartic: BiPoly,
    pub base: Option<(Rational, Rational)>,
}

/// Invariants `I`, `J` of `a u⁴ + b u³ + c u² + d u + e`, normalized so that
/// `4I³ - J² = 27·disc` and `j = 1728·4I³/(4I³ - J²)`.
pub fn binary_quartic_invariants(c: &[Polynomial; 5]) -> (Polynomial, Polynomial) {
    let [a, b, cc, d, e] = c;
    let k = |n: i64| Polynomial::constant(rat(n));
    let i = &(&(&k(12) * &(a * e)) - &(&k(3) * &(b * d))) + &(cc * cc);
    let j = &(&(&(&(&k(72) * &(&(a * cc) * e)) + &(&k(9) * &(&(b * cc) * d))) - &(&k(27) * &(&(a * d) * d)))
        - &(&k(27) * &(&(e * b) * b)))
        - &(&k(2) * &(&(cc * cc) * cc));
    (i, j)
}

/// `256(λ² - λ + 1)³ / (λ²(λ - 1)²)` for a cross-ratio `λ` of four points.
pub fn cross_ratio_j(r: [C64; 4]) -> C64 {
    let l = (r[0] - r[2]) * (r[1] - r[3]) / ((r[0] - r[3]) * (r[1] - r[2]));
    let one = C64::c(1.0, 0.0);
    let s = l * l - l + one;
    C64::c(256.0, 0.0) * s * s * s / (l * l * (l - one) * (l - one))
}

#[derive(Debug, Clone, Serialize)]
pub struct QuarticReport {
    pub quartic: String,
    pub base_point: [String; 2],
    /// `G(u, t)` as a polynomial in `u` over ℚ[t].
    pub pencil: String,
    pub tangency_punctures: usize,
    pub chart_punctures: usize,
    pub chi: Vec<i8>,
    pub monodromy: MonodromyReport,
    /// Index computed from the Weierstrass model `y² = x³ - 27I x - 27J`.
    pub jacobian_sl_index: Index,
    pub j_at_basepoint: [f64; 2],
    pub j_cross_ratio: [f64; 2],
    pub j_relative_error: f64,
    pub checks: BTreeMap<String, bool>,
}

impl QuarticReport {
    pub fn all_hold(&self) -> bool {
        self.checks.values().all(|&b| b) && self.monodromy.all_bounds_hold()
    }
}

struct Pencil {
    base: (Rational, Rational),
    g: BiPoly,
    coeffs: [Polynomial; 5],
    disc: Polynomial,
}

fn pencil_at(f: &BiPoly, x0: &Rational, y0: &Rational) -> Result<Pencil, String> {
    let g = f.substitute(
        &BiPoly::new(vec![Polynomial::constant(x0.clone()), Polynomial::one()]),
        &BiPoly::new(vec![Polynomial::constant(y0.clone()), Polynomial::var()]),
    );
    if g.degree() != 4 {
        return Err(format!("pencil polynomial has degree {} in u", g.degree()));
    }
    if g.coeff(0).is_zero() {
        return Err("base point lies on the quartic".into());
    }
    let coeffs = [g.coeff(4), g.coeff(3), g.coeff(2), g.coeff(1), g.coeff(0)];
    let disc = g.discriminant();
    if disc.deg0() != 12 || disc.squarefree_part().deg0() != 12 {
        return Err(format!("discriminant has degree {} and {} distinct roots", disc.deg0(), disc.squarefree_part().deg0()));
    }
    if !disc.gcd(&coeffs[0]).is_constant() {
        return Err("a tangent line is parallel to an asymptotic direction".into());
    }
    Ok(Pencil { base: (x0.clone(), y0.clone()), g, coeffs, disc })
}

fn total_degree(f: &BiPoly) -> usize {
    f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| k + c.deg0()).max().unwrap_or(0)
}

/// Monodromy of the genus-1 curves `w² = G(u, t)` over the pencil, with the
/// Weierstrass route and the cross-ratio `j` as independent checks.
pub fn quartic_pencil_family(q: &QuarticPencil, opts: &RunOptions) -> Result<QuarticReport, FamilyError> {
    if total_degree(&q.quartic) != 4 {
        return Err(FamilyError::NonSmoothQuartic);
    }
    let mut rng = opts.rng();
    let pencil = match &q.base {
        Some((x0, y0)) => pencil_at(&q.quartic, x0, y0).map_err(FamilyError::NonGenericPencil)?,
        None => (0..PENCIL_TRIES)
            .find_map(|_| {
                let x0 = rat(rng.gen_range(-3..=3));
                let y0 = rat(rng.gen_range(-3..=3));
                pencil_at(&q.quartic, &x0, &y0).ok()
            })
            .ok_or(FamilyError::NonSmoothQuartic)?,
    };

    let a = pencil.coeffs[0].clone();
    let chart = a.squarefree_part();
    let all = (&pencil.disc * &chart).squarefree_part();
    let loops = LoopSystem::build(&all, &mut rng)?;

    let (i, j) = binary_quartic_invariants(&pencil.coeffs);
    let jac = FamilySpec::new(
        "jacobian",
        RationalFunction::from_poly(i.scale(&rat(-27))),
        RationalFunction::from_poly(j.scale(&rat(-27))),
    )?;

    let tracked = TrackedLoops::track(&pencil.g, &loops.lassos, &opts.track())?;
    let (words, direction) = super::monodromy::lasso_braids(&tracked, &mut rng)?;
    let tw = TwistSpec::new(RationalFunction::from_poly(a.clone()))?;
    let chi = loops.lassos.iter().map(|l| chi_d(&tw, l)).collect::<Result<Vec<_>, _>>()?;
    let lassos = words
        .into_iter()
        .zip(&chi)
        .zip(&loops.punctures)
        .zip(tracked.steps())
        .map(|(((braid, &c), p), steps): (((BraidWord, &i8), _), usize)| {
            let matrix = mu4(&braid)?.signed(c);
            let z = p.approx();
            Ok(LassoMonodromy { puncture: ComplexValue::new(z.re, z.im, 64), braid, matrix, kodaira_type: None, steps })
        })
        .collect::<Result<Vec<_>, crate::braid::BraidError>>()?;
    let monodromy = assemble_report(&jac, &loops, lassos, direction, tracked.precision_bits(), opts)?;
    let jacobian = monodromy_with_loops(&jac, &loops, opts, &mut rng)?;

    // j at the basepoint two ways.
    let b0 = &loops.basepoint;
    let iv = eval_poly_complex(&i, b0);
    let jv = eval_poly_complex(&j, b0);
    let i3 = iv.mul(&iv).mul(&iv);
    let num = i3.mul(&ComplexRational::real(rat(1728 * 4)));
    let den = i3.mul(&ComplexRational::real(rat(4))).sub(&jv.mul(&jv));
    let j_exact = num.to_c64() / den.to_c64();
    let roots: Vec<C64> = roots_at(&pencil.g, b0, opts.precision)?.iter().map(ComplexValue::to_c64).collect();
    let j_cr = cross_ratio_j([roots[0], roots[1], roots[2], roots[3]]);
    let rel = (j_cr - j_exact).norm() / j_exact.norm().max(1.0);

    let tangency = pencil.disc.deg0();
    let mut checks = BTreeMap::new();
    checks.insert("12 tangency punctures".to_string(), tangency == 12);
    checks.insert("chart lassos are trivial".to_string(), {
        let chart_idx: Vec<usize> = (0..loops.len())
            .filter(|&k| {
                let z = loops.punctures[k].center.clone();
                let v = eval_poly_complex(&chart, &z).to_c64();
                v.norm() < eval_poly_complex(&pencil.disc, &z).to_c64().norm()
            })
            .collect();
        chart_idx.len() == chart.deg0() && chart_idx.iter().all(|&k| monodromy.lassos[k].matrix.is_identity())
    });
    checks.insert("product of lassos is identity".to_string(), monodromy.product.is_identity());
    checks.insert(
        "jacobian route gives a conjugate group".to_string(),
        jacobian.subgroup.is_conjugate_to(&monodromy.subgroup)?,
    );
    checks.insert("j from cross-ratio matches invariants".to_string(), rel < 1e-9);

    Ok(QuarticReport {
        quartic: q.quartic.display_with("x", "y"),
        base_point: [pencil.base.0.to_string(), pencil.base.1.to_string()],
        pencil: pencil.g.display_with("u", "t"),
        tangency_punctures: tangency,
        chart_punctures: chart.deg0(),
        chi,
        jacobian_sl_index: jacobian.subgroup.sl_index,
        monodromy,
        j_at_basepoint: [j_exact.re, j_exact.im],
        j_cross_ratio: [j_cr.re, j_cr.im],
        j_relative_error: rel,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_bipoly, Polynomial};

    #[test]
    fn invariants_give_discriminant() {
        // (u - 1)(u - 2)(u - 3)(u - 5): disc = Π (r_i - r_j)².
        let p = [1, -11, 41, -61, 30].map(|c| Polynomial::constant(rat(c)));
        let (i, j) = binary_quartic_invariants(&p);
        let lhs = &(&(&i * &i) * &i).scale(&rat(4)) - &(&j * &j);
        let roots = [1i64, 2, 3, 5];
        let mut disc = 1i64;
        for x in 0..4 {
            for y in x + 1..4 {
                disc *= (roots[x] - roots[y]).pow(2);
            }
        }
        assert_eq!(lhs, Polynomial::constant(rat(27 * disc)));
    }

    #[test]
    fn cross_ratio_j_of_legendre_points() {
        // Branch points 0, 1, λ, and a far point standing in for ∞.
        let l = C64::c(3.0, 1.0);
        let far = C64::c(1e9, 0.0);
        let j = cross_ratio_j([C64::c(0.0, 0.0), C64::c(1.0, 0.0), l, far]);
        let one = C64::c(1.0, 0.0);
        let s = l * l - l + one;
        let expect = C64::c(256.0, 0.0) * s * s * s / (l * l * (l - one) * (l - one));
        assert!((j - expect).norm() / expect.norm() < 1e-6);
    }

    #[test]
    fn singular_quartic_is_rejected() {
        // Node at the origin.
        let f = parse_bipoly("x^4 + y^4 + x^2 - y^2", "x", "y").unwrap();
        let q = QuarticPencil { quartic: f, base: Some((rat(3), rat(2))) };
        assert!(matches!(
            quartic_pencil_family(&q, &RunOptions::default()),
            Err(FamilyError::NonGenericPencil(_))
        ));
    }
}
