//! Certified continuation of the roots of `f(x, t)` along a path.
//!
//! A step from `t₀` to `t₁` starts Newton's method at the roots for `t₀`,
//! then certifies the result with inclusion disks. The step is accepted only
//! if the disks are pairwise disjoint and every root moved, including both
//! radii, by less than a quarter of the minimal separation at `t₀`; otherwise
//! it is halved.

use serde::Serialize;

use super::path::{PathPlan, Segment};
use super::BraidError;
use crate::exact::{
    disks_disjoint, inclusion_radii, isolate, min_separation, BiPoly, ComplexValue, Cx, MpFloat, Real, C64,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrackOptions {
    pub precision: u32,
    pub max_precision: u32,
    /// Largest step, as a fraction of one segment.
    pub max_step: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            precision: crate::exact::DEFAULT_PRECISION,
            max_precision: crate::exact::DEFAULT_MAX_PRECISION,
            max_step: 1.0 / 16.0,
        }
    }
}

/// Roots followed along a path. `samples[k][i]` is strand `i` at the `k`-th
/// accepted point; strand identity is the continuation.
#[derive(Clone, Debug, Serialize)]
pub struct TrackedStrands {
    pub samples: Vec<Vec<ComplexValue>>,
    /// Parameter increment (fraction of a segment) of each accepted step.
    pub steps: Vec<f64>,
    pub radii: Vec<Vec<f64>>,
    /// `endpoint[i] = j` when strand `i` ends where strand `j` started.
    /// Empty for open paths.
    pub endpoint: Vec<usize>,
    pub precision_bits: u32,
}

impl TrackedStrands {
    pub fn strands(&self) -> usize {
        self.samples.first().map_or(0, Vec::len)
    }

    pub fn start(&self) -> Vec<C64> {
        self.samples[0].iter().map(ComplexValue::to_c64).collect()
    }

    pub fn finish(&self) -> Vec<C64> {
        self.samples.last().expect("nonempty").iter().map(ComplexValue::to_c64).collect()
    }

    /// Every stored sample has pairwise disjoint inclusion disks.
    pub fn certified(&self) -> bool {
        self.samples.iter().zip(&self.radii).all(|(s, r)| {
            let c: Vec<C64> = s.iter().map(ComplexValue::to_c64).collect();
            disks_disjoint(&c, r)
        })
    }
}

enum Fail {
    NeedPrecision,
    Hit(C64),
}

/// Follows the roots in `x` of `f` along `path`.
pub fn track_roots(f: &BiPoly, path: &PathPlan, opts: &TrackOptions) -> Result<TrackedStrands, BraidError> {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return Err(BraidError::NoStrands);
    }
    let mut prec = opts.precision.max(53);
    loop {
        let result = if prec <= 53 { track_with::<f64>(f, path, 53, opts.max_step) } else { track_with::<MpFloat>(f, path, prec, opts.max_step) };
        match result {
            Ok(t) => return Ok(t),
            Err(Fail::Hit(t)) => return Err(BraidError::DiscriminantHit { t: ComplexValue::new(t.re, t.im, prec) }),
            Err(Fail::NeedPrecision) if prec < opts.max_precision => prec = (prec * 2).min(opts.max_precision),
            Err(Fail::NeedPrecision) => return Err(BraidError::PrecisionExhausted { bits: prec }),
        }
    }
}

struct Coeffs<R> {
    /// `polys[k]` holds the `t`-coefficients of `x^k`.
    polys: Vec<Vec<R>>,
    prec: u32,
}

impl<R: Real> Coeffs<R> {
    fn new(f: &BiPoly, prec: u32) -> Self {
        let polys = f
            .coeffs()
            .iter()
            .map(|p| p.coeffs().iter().map(|c| R::from_rational(c, prec)).collect())
            .collect();
        Coeffs { polys, prec }
    }

    fn at(&self, t: &Cx<R>) -> Vec<Cx<R>> {
        self.polys
            .iter()
            .map(|cs| {
                let mut acc = Cx::<R>::zero(self.prec);
                for c in cs.iter().rev() {
                    acc = acc * t.clone() + Cx::new(c.clone(), R::zero(self.prec));
                }
                acc
            })
            .collect()
    }
}

fn newton<R: Real>(coeffs: &[Cx<R>], z: &mut [Cx<R>]) {
    let tol = z.first().map_or(0.0, |w| w.re.unit_roundoff().powf(0.6));
    let prec = z.first().map_or(53, |w| w.re.precision());
    for zi in z.iter_mut() {
        for _ in 0..8 {
            let mut p = Cx::<R>::zero(prec);
            let mut dp = Cx::<R>::zero(prec);
            for c in coeffs.iter().rev() {
                dp = dp * zi.clone() + p.clone();
                p = p * zi.clone() + c.clone();
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            let size = step.abs_f64();
            *zi = zi.clone() - step;
            if size <= tol * (1.0 + zi.abs_f64()) {
                break;
            }
        }
    }
}

fn to_values<R: Real>(z: &[Cx<R>], prec: u32) -> Vec<ComplexValue> {
    z.iter()
        .map(|w| {
            let c = w.to_c64();
            ComplexValue::new(c.re, c.im, prec)
        })
        .collect()
}

const MIN_STEP: f64 = 1.0 / (1u64 << 40) as f64;

fn track_with<R: Real>(f: &BiPoly, path: &PathPlan, prec: u32, max_step: f64) -> Result<TrackedStrands, Fail> {
    let coeffs = Coeffs::<R>::new(f, prec);
    let t0 = path.basepoint.to_cx::<R>(prec);
    let c0 = coeffs.at(&t0);
    let Some((mut z, mut r)) = isolate(&c0, f64::INFINITY) else {
        return Err(if c0.last().is_some_and(|c| c.abs_f64() == 0.0) { Fail::Hit(t0.to_c64()) } else { Fail::NeedPrecision });
    };
    let mut samples = vec![to_values(&z, prec)];
    let mut radii = vec![r.clone()];
    let mut steps = Vec::new();
    let mut h = max_step;
    for seg in &path.segments {
        let mut s = 0.0;
        while s < 1.0 {
            let s1 = (s + h).min(1.0);
            let t1 = seg.point::<R>(s1, prec);
            let c1 = coeffs.at(&t1);
            let mut w = z.clone();
            newton(&c1, &mut w);
            let r1 = inclusion_radii(&c1, &w);
            let z64: Vec<C64> = z.iter().map(Cx::to_c64).collect();
            let w64: Vec<C64> = w.iter().map(Cx::to_c64).collect();
            let sep = min_separation(&z64);
            let motion = (0..w.len()).map(|i| (w64[i] - z64[i]).norm() + r1[i] + r[i]).fold(0.0, f64::max);
            if disks_disjoint(&w64, &r1) && motion < sep / 4.0 {
                steps.push(s1 - s);
                s = s1;
                z = w;
                r = r1;
                samples.push(to_values(&z, prec));
                radii.push(r.clone());
                if motion < sep / 16.0 {
                    h = (h * 2.0).min(max_step);
                }
            } else {
                h /= 2.0;
                if h < MIN_STEP {
                    return Err(diagnose(seg, s, &z64, &r));
                }
            }
        }
    }
    let endpoint = if path.is_closed() { match_endpoints(&samples[0], samples.last().expect("nonempty"), &radii[0]) } else { Vec::new() };
    Ok(TrackedStrands { samples, steps, radii, endpoint, precision_bits: prec })
}

/// Step underflow: either the path runs into the discriminant or the
/// working precision cannot resolve the roots. Roots still well resolved at the last accepted point mean the path
/// itself is the problem.
fn diagnose(seg: &Segment, s: f64, z: &[C64], r: &[f64]) -> Fail {
    let sep = min_separation(z);
    let worst_radius = r.iter().copied().fold(0.0, f64::max);
    if worst_radius < sep * 1e-3 {
        Fail::Hit(seg.point_c64(s))
    } else {
        Fail::NeedPrecision
    }
}

fn match_endpoints(start: &[ComplexValue], end: &[ComplexValue], r: &[f64]) -> Vec<usize> {
    end.iter()
        .map(|e| {
            let e = e.to_c64();
            let (j, _) = start
                .iter()
                .enumerate()
                .map(|(j, s)| (j, (s.to_c64() - e).norm()))
                .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
            debug_assert!((start[j].to_c64() - e).norm() <= 2.0 * r[j] + 1e-9 * (1.0 + e.norm()));
            j
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_bipoly, rat, ComplexRational};

    fn cr(a: i64, b: i64) -> ComplexRational {
        ComplexRational::new(rat(a), rat(b))
    }

    #[test]
    fn static_path() {
        let f = parse_bipoly("x^3 - t", "x", "t").unwrap();
        let s = track_roots(&f, &PathPlan::constant(cr(1, 0)), &TrackOptions::default()).unwrap();
        assert_eq!(s.samples.len(), 1);
        assert_eq!(s.endpoint, vec![0, 1, 2]);
        let mut moduli: Vec<f64> = s.start().iter().map(|z| z.norm()).collect();
        moduli.sort_by(f64::total_cmp);
        for m in moduli {
            assert!((m - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cube_root_cycles() {
        let f = parse_bipoly("x^3 - t", "x", "t").unwrap();
        for prec in [53, 128] {
            let opts = TrackOptions { precision: prec, ..TrackOptions::default() };
            let s = track_roots(&f, &PathPlan::circle(cr(0, 0), cr(1, 0), 1), &opts).unwrap();
            let e = &s.endpoint;
            // A 3-cycle: no fixed points, and e∘e∘e = id.
            assert!((0..3).all(|i| e[i] != i && e[e[e[i]]] == i));
            assert!(s.certified());
            assert_eq!(s.precision_bits, prec.max(53));
        }
    }

    #[test]
    fn square_root_swaps() {
        let f = parse_bipoly("x^2 - t", "x", "t").unwrap();
        let s = track_roots(&f, &PathPlan::circle(cr(0, 0), cr(1, 0), 1), &TrackOptions::default()).unwrap();
        assert_eq!(s.endpoint, vec![1, 0]);
        let s = track_roots(&f, &PathPlan::circle(cr(0, 0), cr(1, 0), 2), &TrackOptions::default()).unwrap();
        assert_eq!(s.endpoint, vec![0, 1]);
    }

    #[test]
    fn hitting_the_discriminant() {
        let f = parse_bipoly("x^2 - t", "x", "t").unwrap();
        let through = PathPlan::new(cr(-1, 0), vec![Segment::Line { from: cr(-1, 0), to: cr(1, 0) }]).unwrap();
        let opts = TrackOptions { precision: 53, max_precision: 128, max_step: 1.0 / 16.0 };
        assert!(matches!(track_roots(&f, &through, &opts), Err(BraidError::DiscriminantHit { .. })));
    }
}
