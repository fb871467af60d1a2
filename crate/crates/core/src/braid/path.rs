use std::f64::consts::TAU;

use serde::Serialize;

use crate::exact::{ComplexRational, Cx, Real, C64};

/// One piece of a path in the `t`-plane. Vertices and centers are exact;
/// intermediate points are produced in working precision.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    Line { from: ComplexRational, to: ComplexRational },
    /// `turns` full circles around `center` starting and ending at `start`,
    /// counterclockwise for positive `turns`.
    Arc { center: ComplexRational, start: ComplexRational, turns: i32 },
}

impl Segment {
    pub fn start(&self) -> &ComplexRational {
        match self {
            Segment::Line { from, .. } => from,
            Segment::Arc { start, .. } => start,
        }
    }

    pub fn end(&self) -> &ComplexRational {
        match self {
            Segment::Line { to, .. } => to,
            Segment::Arc { start, .. } => start,
        }
    }

    pub fn reversed(&self) -> Segment {
        match self {
            Segment::Line { from, to } => Segment::Line { from: to.clone(), to: from.clone() },
            Segment::Arc { center, start, turns } => {
                Segment::Arc { center: center.clone(), start: start.clone(), turns: -turns }
            }
        }
    }

    /// Point at parameter `s ∈ [0, 1]`. The endpoints are exact conversions
    /// of the rational vertices; interior offsets carry an `f64` relative
    /// error, which only perturbs the path, not the tracking certificate.
    pub fn point<R: Real>(&self, s: f64, prec: u32) -> Cx<R> {
        match self {
            Segment::Line { from, to } => {
                let a = from.to_cx::<R>(prec);
                if s == 0.0 {
                    return a;
                }
                let b = to.to_cx::<R>(prec);
                if s == 1.0 {
                    return b;
                }
                let d = b - a.clone();
                a + d.scale(&R::from_f64(s, prec))
            }
            Segment::Arc { center, start, turns } => {
                let p = start.to_cx::<R>(prec);
                if s == 0.0 || s == 1.0 {
                    return p;
                }
                let c = center.to_cx::<R>(prec);
                let rot = C64::expi(TAU * *turns as f64 * s);
                c.clone() + (p - c) * Cx::from_c64(rot, prec)
            }
        }
    }

    pub fn point_c64(&self, s: f64) -> C64 {
        self.point::<f64>(s, 53)
    }

    /// Rough length in the `t`-plane, used to scale initial steps.
    pub fn length(&self) -> f64 {
        match self {
            Segment::Line { from, to } => (to.to_c64() - from.to_c64()).norm(),
            Segment::Arc { center, start, turns } => {
                TAU * (*turns as f64).abs() * (start.to_c64() - center.to_c64()).norm()
            }
        }
    }
}

/// A path made of consecutive segments starting at `basepoint`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathPlan {
    pub basepoint: ComplexRational,
    pub segments: Vec<Segment>,
}

impl PathPlan {
    /// `None` unless consecutive segments share endpoints and the first
    /// starts at the basepoint.
    pub fn new(basepoint: ComplexRational, segments: Vec<Segment>) -> Option<Self> {
        let mut at = &basepoint;
        for seg in &segments {
            if seg.start() != at {
                return None;
            }
            at = seg.end();
        }
        Some(PathPlan { basepoint, segments })
    }

    /// The constant path.
    pub fn constant(basepoint: ComplexRational) -> Self {
        PathPlan { basepoint, segments: Vec::new() }
    }

    pub fn circle(center: ComplexRational, start: ComplexRational, turns: i32) -> Self {
        PathPlan { basepoint: start.clone(), segments: vec![Segment::Arc { center, start, turns }] }
    }

    pub fn end(&self) -> &ComplexRational {
        self.segments.last().map_or(&self.basepoint, Segment::end)
    }

    pub fn is_closed(&self) -> bool {
        *self.end() == self.basepoint
    }

    /// Concatenation; `None` if `other` does not start where `self` ends.
    pub fn then(&self, other: &PathPlan) -> Option<PathPlan> {
        if other.basepoint != *self.end() {
            return None;
        }
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        Some(PathPlan { basepoint: self.basepoint.clone(), segments })
    }

    pub fn reversed(&self) -> PathPlan {
        PathPlan {
            basepoint: self.end().clone(),
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
        }
    }

    /// Densely sampled `f64` polyline, for diagnostics and plots.
    pub fn sample_c64(&self, per_segment: usize) -> Vec<C64> {
        let mut out = vec![self.basepoint.to_c64()];
        for seg in &self.segments {
            for k in 1..=per_segment {
                out.push(seg.point_c64(k as f64 / per_segment as f64));
            }
        }
        out
    }
}
