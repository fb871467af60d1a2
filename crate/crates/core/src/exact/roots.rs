//! Certified numerical roots of univariate polynomials.
//!
//! Roots are approximated by Aberth–Ehrlich iteration and certified with
//! Gerschgorin-type inclusion disks: for approximations `z_i` of the roots of a
//! degree-`n` polynomial with leading coefficient `a`, put
//! `W_i = p(z_i) / (a Π_{j≠i} (z_i - z_j))`. Every connected component of the
//! union of disks `D(z_i, n|W_i|)` holds as many roots as disks, so pairwise
//! disjoint disks isolate one simple root each. Rounding error of the
//! evaluation is added to `|p(z_i)|` before the radius is formed.

use num_traits::Zero;

use super::float::{rational_to_f64, ComplexRational, ComplexValue, Cx, MpFloat, Real, C64};
use super::poly::{Polynomial, Rational};
use super::ExactError;

/// A root isolated in a disk of the given radius around an exact dyadic center.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedRoot {
    pub center: ComplexRational,
    pub radius: f64,
    pub multiplicity: u32,
    pub precision_bits: u32,
}

impl CertifiedRoot {
    pub fn approx(&self) -> C64 {
        self.center.to_c64()
    }

    pub fn value(&self) -> ComplexValue {
        let c = self.approx();
        ComplexValue::new(c.re, c.im, self.precision_bits)
    }
}

/// Evaluates `p` and `p'` at `z` by Horner's rule, returning also a bound on
/// the rounding error of the value.
pub fn eval_with_error<R: Real>(coeffs: &[Cx<R>], abs_coeffs: &[f64], z: &Cx<R>) -> (Cx<R>, Cx<R>, f64) {
    let prec = z.re.precision();
    let n = coeffs.len();
    let mut p = Cx::<R>::zero(prec);
    let mut dp = Cx::<R>::zero(prec);
    for c in coeffs.iter().rev() {
        dp = dp * z.clone() + p.clone();
        p = p * z.clone() + c.clone();
    }
    let az = z.abs_f64();
    let mut majorant = 0.0;
    for a in abs_coeffs.iter().rev() {
        majorant = majorant * az + a;
    }
    let u = z.re.unit_roundoff();
    let err = (4.0 * n as f64 + 6.0) * u * majorant * 1.01;
    (p, dp, err)
}

/// Inclusion radii `n (|p(z_i)| + err_i) / (|a| Π|z_i - z_j|)`.
pub fn inclusion_radii<R: Real>(coeffs: &[Cx<R>], roots: &[Cx<R>]) -> Vec<f64> {
    let n = roots.len();
    let abs_coeffs: Vec<f64> = coeffs.iter().map(Cx::abs_f64).collect();
    let lead = abs_coeffs.last().copied().unwrap_or(0.0);
    let u = roots.first().map_or(0.0, |z| z.re.unit_roundoff());
    (0..n)
        .map(|i| {
            let (v, _, err) = eval_with_error(coeffs, &abs_coeffs, &roots[i]);
            let mut log_den = lead.ln();
            for j in 0..n {
                if j != i {
                    let d = (roots[i].clone() - roots[j].clone()).abs_f64();
                    log_den += d.ln();
                }
            }
            let num = n as f64 * (v.abs_f64() + err);
            let r = (num.ln() - log_den).exp() * (1.0 + 8.0 * n as f64 * u) * 1.000001;
            if r.is_nan() {
                f64::INFINITY
            } else {
                r
            }
        })
        .collect()
}

pub fn disks_disjoint(centers: &[C64], radii: &[f64]) -> bool {
    for i in 0..centers.len() {
        if !radii[i].is_finite() {
            return false;
        }
        for j in i + 1..centers.len() {
            let d = (centers[i] - centers[j]).norm();
            if d <= radii[i] + radii[j] {
                return false;
            }
        }
    }
    true
}

/// Smallest pairwise distance, `∞` for fewer than two points.
pub fn min_separation(points: &[C64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min((points[i] - points[j]).norm());
        }
    }
    best
}

fn initial_guesses(abs_coeffs: &[f64]) -> Vec<C64> {
    let n = abs_coeffs.len() - 1;
    let lead = abs_coeffs[n];
    let mut radius: f64 = 0.0;
    for (k, &a) in abs_coeffs[..n].iter().enumerate() {
        if a > 0.0 {
            radius = radius.max((a / lead).powf(1.0 / (n - k) as f64));
        }
    }
    let radius = if radius > 0.0 && radius.is_finite() { radius } else { 1.0 };
    (0..n)
        .map(|k| C64::expi(2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4) * C64::c(radius, 0.0))
        .collect()
}

/// Aberth–Ehrlich iteration from the given starting points. Returns when the
/// largest correction falls below `tol` (relative to `1 + |z|`) or after
/// `max_iter` sweeps.
pub fn aberth<R: Real>(coeffs: &[Cx<R>], mut z: Vec<Cx<R>>, tol: f64, max_iter: usize) -> Vec<Cx<R>> {
    let abs_coeffs: Vec<f64> = coeffs.iter().map(Cx::abs_f64).collect();
    let n = z.len();
    let prec = coeffs[0].re.precision();
    let one = Cx::<R>::from_f64(1.0, 0.0, prec);
    for _ in 0..max_iter {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (p, dp, _) = eval_with_error(coeffs, &abs_coeffs, &z[i]);
            if p.abs_f64() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Cx::<R>::zero(prec);
            for j in 0..n {
                if j != i {
                    s = s + one.clone() / (z[i].clone() - z[j].clone());
                }
            }
            let denom = one.clone() - ratio.clone() * s;
            let w = ratio / denom;
            if !w.is_finite() {
                continue;
            }
            let scale = 1.0 + z[i].abs_f64();
            worst = worst.max(w.abs_f64() / scale);
            z[i] = z[i].clone() - w;
        }
        if worst < tol {
            break;
        }
    }
    z
}

/// Newton refinement of every approximation, `iters` steps each.
pub fn newton_polish<R: Real>(coeffs: &[Cx<R>], z: &mut [Cx<R>], iters: usize) {
    let abs_coeffs: Vec<f64> = coeffs.iter().map(Cx::abs_f64).collect();
    for zi in z.iter_mut() {
        for _ in 0..iters {
            let (p, dp, _) = eval_with_error(coeffs, &abs_coeffs, zi);
            if dp.abs_f64() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zi = zi.clone() - step;
        }
    }
}

/// Isolates the roots of a square-free polynomial with complex coefficients
/// given in working precision. Returns approximations and inclusion radii, or
/// `None` when the disks could not be made disjoint with radius at most
/// `target` (use `f64::INFINITY` for isolation only).
pub fn isolate<R: Real>(coeffs: &[Cx<R>], target: f64) -> Option<(Vec<Cx<R>>, Vec<f64>)> {
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    let prec = coeffs[0].re.precision();
    let c64: Vec<C64> = coeffs.iter().map(Cx::to_c64).collect();
    let abs_coeffs: Vec<f64> = c64.iter().map(|c| c.norm()).collect();
    let mut z64 = initial_guesses(&abs_coeffs);
    if abs_coeffs.iter().all(|a| a.is_finite()) && abs_coeffs[n] > 0.0 {
        z64 = aberth(&c64, z64, 1e-15, 500);
    }
    let mut z: Vec<Cx<R>> = z64
        .iter()
        .map(|w| if w.re.is_finite() && w.im.is_finite() { Cx::from_c64(*w, prec) } else { Cx::zero(prec) })
        .collect();
    let u = coeffs[0].re.unit_roundoff();
    for _round in 0..8 {
        z = aberth(coeffs, z, u.sqrt().min(1e-12), 60);
        newton_polish(coeffs, &mut z, 2);
        let radii = inclusion_radii(coeffs, &z);
        let centers: Vec<C64> = z.iter().map(Cx::to_c64).collect();
        if disks_disjoint(&centers, &radii) && radii.iter().all(|&r| r <= target) {
            return Some((z, radii));
        }
    }
    None
}

fn rational_coeffs<R: Real>(f: &Polynomial, prec: u32) -> Vec<Cx<R>> {
    f.coeffs().iter().map(|c| Cx::from_rational(c, &Rational::zero(), prec)).collect()
}

/// Certified roots of a nonzero rational polynomial, with multiplicities taken
/// from the exact square-free decomposition. Each simple root is isolated in a
/// disk of radius at most `2^(-precision/2)`; precision doubles on failure up
/// to `max_precision`. Output is sorted by `(re, im)`.
pub fn certified_roots(f: &Polynomial, precision: u32, max_precision: u32) -> Result<Vec<CertifiedRoot>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        let mut prec = precision.max(53);
        loop {
            let target = (-(prec as f64) / 2.0).exp2();
            let found = if prec <= 53 {
                isolate::<f64>(&rational_coeffs(&g, 53), target)
                    .map(|(z, r)| (z.iter().map(|w| ComplexRational::new(w.re.to_rational(), w.im.to_rational())).collect::<Vec<_>>(), r))
            } else {
                isolate::<MpFloat>(&rational_coeffs(&g, prec), target)
                    .map(|(z, r)| (z.iter().map(|w| ComplexRational::new(w.re.to_rational(), w.im.to_rational())).collect::<Vec<_>>(), r))
            };
            if let Some((centers, radii)) = found {
                for (center, radius) in centers.into_iter().zip(radii) {
                    out.push(CertifiedRoot { center, radius, multiplicity: mult, precision_bits: prec });
                }
                break;
            }
            if prec >= max_precision {
                return Err(ExactError::PrecisionExhausted { bits: prec });
            }
            prec = (prec * 2).min(max_precision);
        }
    }
    out.sort_by(|a, b| {
        a.center
            .re
            .cmp(&b.center.re)
            .then_with(|| a.center.im.cmp(&b.center.im))
    });
    Ok(out)
}

/// All complex roots of `f`, repeated according to multiplicity.
pub fn roots_numeric(f: &Polynomial, precision: u32) -> Result<Vec<ComplexValue>, ExactError> {
    let roots = certified_roots(f, precision, super::DEFAULT_MAX_PRECISION)?;
    Ok(roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value(), r.multiplicity as usize))
        .collect())
}

/// Roots of `f` specialized at a complex rational point: `f` is given as a
/// polynomial in `x` with coefficients in ℚ[t], evaluated exactly at `t`.
/// The specialization must be square-free.
pub fn roots_at(f: &super::BiPoly, t: &ComplexRational, precision: u32) -> Result<Vec<ComplexValue>, ExactError> {
    let coeffs: Vec<ComplexRational> = f.coeffs().iter().map(|c| eval_poly_complex(c, t)).collect();
    let mut prec = precision.max(53);
    loop {
        let res = if prec <= 53 {
            isolate::<f64>(&coeffs.iter().map(|c| c.to_cx(53)).collect::<Vec<_>>(), f64::INFINITY)
                .map(|(z, _)| z.iter().map(Cx::to_c64).collect::<Vec<_>>())
        } else {
            isolate::<MpFloat>(&coeffs.iter().map(|c| c.to_cx(prec)).collect::<Vec<_>>(), f64::INFINITY)
                .map(|(z, _)| z.iter().map(Cx::to_c64).collect::<Vec<_>>())
        };
        if let Some(mut z) = res {
            z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            return Ok(z.into_iter().map(|w| ComplexValue::new(w.re, w.im, prec)).collect());
        }
        if prec >= super::DEFAULT_MAX_PRECISION {
            return Err(ExactError::PrecisionExhausted { bits: prec });
        }
        prec *= 2;
    }
}

/// Exact evaluation of a rational polynomial at a complex rational.
pub fn eval_poly_complex(p: &Polynomial, t: &ComplexRational) -> ComplexRational {
    let mut acc = ComplexRational::real(Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(t).add(&ComplexRational::real(c.clone()));
    }
    acc
}

/// `|f(z)|` evaluated exactly at the dyadic center of a certified root.
pub fn residual_at(f: &Polynomial, z: &ComplexRational) -> f64 {
    let v = eval_poly_complex(f, z);
    rational_to_f64(&v.re).hypot(rational_to_f64(&v.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat;

    #[test]
    fn simple_cubic() {
        let f = Polynomial::from_i64(&[0, -1, 0, 1]);
        let r = roots_numeric(&f, 128).unwrap();
        let re: Vec<f64> = r.iter().map(|z| z.real).collect();
        assert_eq!(r.len(), 3);
        for (got, want) in re.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-18);
        }
    }

    #[test]
    fn double_root_reported_twice() {
        let f = &Polynomial::from_i64(&[-2, 1]) * &Polynomial::from_i64(&[-2, 1]);
        let r = roots_numeric(&f, 128).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|z| (z.real - 2.0).abs() < 1e-18 && z.imag.abs() < 1e-18));
    }

    #[test]
    fn radius_meets_target() {
        let f = Polynomial::from_i64(&[1, 1, 0, 1]);
        for prec in [53, 128, 256] {
            let roots = certified_roots(&f, prec, 1024).unwrap();
            for r in &roots {
                assert!(r.radius <= (-(prec as f64) / 2.0).exp2());
            }
            assert!((roots[0].approx().re + 0.682_327_803_828_019).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_residual_small() {
        let f = Polynomial::from_i64(&[-7, 3, 0, 5, 1]);
        for r in certified_roots(&f, 128, 1024).unwrap() {
            assert!(residual_at(&f, &r.center) < 1e-15);
        }
        let _ = rat(0);
    }
}
