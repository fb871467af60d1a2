//! Lasso systems generating π₁ of ℙ¹ minus finitely many points.
//!
//! The basepoint `b₀` is a rational point on a circle of radius at least
//! twice `1 + max |puncture|`. The lasso around puncture `c` runs straight to
//! a point `e = c + ρu` with `u` a rational unit vector pointing to `b₀`,
//! once counterclockwise around `c` and straight back. Lassos are ordered by
//! the angle of `c - b₀` measured from the direction `-b₀`; composed in that
//! order they give the counterclockwise circle through `b₀` around all
//! punctures.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use super::FamilyError;
use crate::braid::{PathPlan, Segment};
use crate::exact::{certified_roots, rat, CertifiedRoot, ComplexRational, Polynomial, Rational, C64, DEFAULT_MAX_PRECISION};

const MAX_BASEPOINT_TRIES: usize = 16;
const SHRINK_LEVELS: i32 = 8;

#[derive(Debug, Clone, Serialize)]
pub struct Puncture {
    /// Exact dyadic center used by the lasso.
    pub center: ComplexRational,
    /// Radius of the certified disk containing the true puncture.
    pub radius: f64,
    /// Radius of the circle the lasso runs around the center.
    pub loop_radius: f64,
}

impl Puncture {
    pub fn approx(&self) -> C64 {
        self.center.to_c64()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LoopSystem {
    pub basepoint: ComplexRational,
    /// Punctures in lasso order.
    pub punctures: Vec<Puncture>,
    pub lassos: Vec<PathPlan>,
    /// Radius of the circle through the basepoint enclosing every puncture.
    pub outer_radius: u64,
}

/// Point `(1 - s², 2s) / (1 + s²)` on the unit circle.
fn pythagorean(s: &Rational) -> ComplexRational {
    let s2 = s * s;
    let den = rat(1) + &s2;
    ComplexRational::new((rat(1) - &s2) / &den, (s * rat(2)) / den)
}

/// Rational unit vector within about `2^-bits` of angle `theta`.
fn unit_near(theta: f64, bits: u32) -> ComplexRational {
    let theta = theta.rem_euclid(2.0 * PI);
    let (flip, theta) = if theta > PI / 2.0 && theta < 3.0 * PI / 2.0 { (true, theta - PI) } else { (false, theta) };
    let s = ComplexRational::round_f64((theta / 2.0).tan(), bits);
    let u = pythagorean(&s);
    if flip {
        ComplexRational::new(-u.re, -u.im)
    } else {
        u
    }
}

fn scale(z: &ComplexRational, r: &Rational) -> ComplexRational {
    ComplexRational::new(&z.re * r, &z.im * r)
}

fn segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.re * ab.re + ab.im * ab.im;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p - a).re * ab.re + (p - a).im * ab.im) / len2).clamp(0.0, 1.0)
    };
    (p - (a + ab * C64::c(t, 0.0))).norm()
}

fn power_of_two_below(x: f64) -> Rational {
    let e = x.log2().floor() as i64;
    if e >= 0 {
        Rational::from_integer(num_bigint::BigInt::from(1) << e as usize)
    } else {
        Rational::new(1.into(), num_bigint::BigInt::from(1) << (-e) as usize)
    }
}

impl LoopSystem {
    /// Lassos around the roots of the square-free polynomial `punctures`.
    pub fn build<G: Rng>(punctures: &Polynomial, rng: &mut G) -> Result<Self, FamilyError> {
        let roots = if punctures.is_constant() {
            Vec::new()
        } else {
            certified_roots(&punctures.squarefree_part(), 64, DEFAULT_MAX_PRECISION)?
        };
        let approx: Vec<C64> = roots.iter().map(|r| r.approx()).collect();
        let max_mod = approx.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let outer_radius = (2.0 * (1.0 + max_mod)).ceil() as u64;
        let rr = rat(outer_radius as i64);

        let mut sep = Vec::with_capacity(roots.len());
        for (k, z) in approx.iter().enumerate() {
            let mut s = outer_radius as f64 / 2.0;
            for (j, w) in approx.iter().enumerate() {
                if j != k {
                    s = s.min((*z - *w).norm());
                }
            }
            sep.push(s);
        }

        // Radii start at a quarter of the separation and are halved after
        // every batch of rejected basepoints.
        for shrink in 0..SHRINK_LEVELS {
            let mut rho = Vec::with_capacity(roots.len());
            let mut centers = Vec::with_capacity(roots.len());
            for (k, z) in approx.iter().enumerate() {
                let r = power_of_two_below(sep[k] / 4.0 / f64::powi(2.0, shrink));
                let r64 = r.to_f64().expect("finite");
                assert!(roots[k].radius < r64 / 1024.0, "puncture disks are not well separated");
                let bits = ((-r64.log2()).max(0.0) as u32) + 24;
                centers.push(ComplexRational::from_c64(*z, bits));
                rho.push((r, r64, bits));
            }
            if let Some(ls) = Self::try_basepoints(&roots, &approx, &centers, &rho, &rr, outer_radius, rng) {
                return Ok(ls);
            }
        }
        Err(FamilyError::NoBasepoint)
    }

    #[allow(clippy::too_many_arguments)]
    fn try_basepoints<G: Rng>(
        roots: &[CertifiedRoot],
        approx: &[C64],
        centers: &[ComplexRational],
        rho: &[(Rational, f64, u32)],
        rr: &Rational,
        outer_radius: u64,
        rng: &mut G,
    ) -> Option<LoopSystem> {
        for _ in 0..MAX_BASEPOINT_TRIES {
            let theta = rng.gen_range(-PI..PI);
            let b0 = scale(&unit_near(theta, 16), rr);
            let b0c = b0.to_c64();
            let mut entries = Vec::with_capacity(roots.len());
            for (k, c) in centers.iter().enumerate() {
                let dir = b0c - c.to_c64();
                let u = unit_near(dir.arg(), rho[k].2);
                entries.push(c.add(&scale(&u, &rho[k].0)));
            }
            let ok = (0..roots.len()).all(|k| {
                let e = entries[k].to_c64();
                (0..roots.len()).all(|j| j == k || segment_distance(approx[j], b0c, e) > 1.25 * rho[j].1)
            });
            if !ok {
                continue;
            }
            let minus_b0 = C64::c(-b0c.re, -b0c.im);
            let angle = |k: usize| {
                let v = approx[k] - b0c;
                let rel = v * minus_b0.conj();
                (rel.arg(), v.norm())
            };
            let mut order: Vec<usize> = (0..roots.len()).collect();
            order.sort_by(|&a, &b| {
                let (ta, ma) = angle(a);
                let (tb, mb) = angle(b);
                ta.total_cmp(&tb).then(ma.total_cmp(&mb))
            });
            let mut ps = Vec::with_capacity(order.len());
            let mut lassos = Vec::with_capacity(order.len());
            for &k in &order {
                let e = entries[k].clone();
                let segs = vec![
                    Segment::Line { from: b0.clone(), to: e.clone() },
                    Segment::Arc { center: centers[k].clone(), start: e.clone(), turns: 1 },
                    Segment::Line { from: e, to: b0.clone() },
                ];
                lassos.push(PathPlan::new(b0.clone(), segs).expect("segments are contiguous"));
                ps.push(Puncture { center: centers[k].clone(), radius: roots[k].radius, loop_radius: rho[k].1 });
            }
            return Some(LoopSystem { basepoint: b0, punctures: ps, lassos, outer_radius });
        }
        None
    }

    pub fn len(&self) -> usize {
        self.lassos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lassos.is_empty()
    }

    /// All lassos composed in order.
    pub fn product(&self) -> PathPlan {
        self.lassos
            .iter()
            .fold(PathPlan::constant(self.basepoint.clone()), |acc, l| acc.then(l).expect("lassos share the basepoint"))
    }

    /// The counterclockwise circle through the basepoint around the origin.
    pub fn outer_circle(&self) -> PathPlan {
        PathPlan::circle(ComplexRational::real(rat(0)), self.basepoint.clone(), 1)
    }

    /// Index of the lasso whose puncture is closest to `z`.
    pub fn nearest(&self, z: C64) -> Option<usize> {
        (0..self.len()).min_by(|&a, &b| {
            (self.punctures[a].approx() - z).norm().total_cmp(&(self.punctures[b].approx() - z).norm())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rational_units() {
        for k in 0..32 {
            let th = -PI + k as f64 * 0.2;
            let u = unit_near(th, 20);
            assert_eq!(u.norm_sqr(), rat(1));
            let d = u.to_c64() - C64::expi(th);
            assert!(d.norm() < 1e-4, "{th}");
        }
    }

    #[test]
    fn lassos_are_closed_and_avoid_other_punctures() {
        let f = Polynomial::from_i64(&[27, 0, 0, 4]);
        for seed in 0..5 {
            let ls = LoopSystem::build(&f, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            assert_eq!(ls.len(), 3);
            assert_eq!(ls.basepoint.norm_sqr(), rat(ls.outer_radius as i64 * ls.outer_radius as i64));
            for l in &ls.lassos {
                assert!(l.is_closed());
            }
            let p = ls.product();
            assert!(p.is_closed());
            assert_eq!(p.segments.len(), 9);
        }
    }
}
