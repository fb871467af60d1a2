//! Braid monodromy of a family along a lasso system and the resulting
//! subgroup of SL(2,ℤ) with its bound checks.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{j_map, FamilyError, FamilySpec, LoopSystem};
use crate::braid::{extract_braid, mu3, track_roots, BraidError, BraidWord, PathPlan, TrackOptions, TrackedStrands};
use crate::exact::{BiPoly, ComplexRational, ComplexValue, Polynomial, C64, DEFAULT_MAX_PRECISION, DEFAULT_PRECISION};
use crate::kodaira::{all_places, finite_places, KodairaPlace, KodairaType};
use crate::sl2::SL2Matrix;
use crate::subgroup::{SubgroupDescriptor, DEFAULT_MAX_COSETS};

const DIRECTION_TRIES: usize = 16;
const ISOTRIVIAL_ORDER_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunOptions {
    pub precision: u32,
    pub max_precision: u32,
    pub max_cosets: usize,
    pub seed: u64,
    /// Largest tracking step as a fraction of one path segment.
    pub max_step: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            precision: DEFAULT_PRECISION,
            max_precision: DEFAULT_MAX_PRECISION,
            max_cosets: DEFAULT_MAX_COSETS,
            seed: 0,
            max_step: 1.0 / 16.0,
        }
    }
}

impl RunOptions {
    pub fn track(&self) -> TrackOptions {
        TrackOptions { precision: self.precision, max_precision: self.max_precision.max(self.precision), max_step: self.max_step }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Roots of one polynomial tracked along every lasso of a loop system.
#[derive(Debug, Clone)]
pub struct TrackedLoops {
    pub strands: Vec<TrackedStrands>,
}

impl TrackedLoops {
    pub fn track(f: &BiPoly, paths: &[PathPlan], opts: &TrackOptions) -> Result<Self, BraidError> {
        let strands = paths.par_iter().map(|p| track_roots(f, p, opts)).collect::<Result<Vec<_>, _>>()?;
        Ok(TrackedLoops { strands })
    }

    pub fn extract(&self, direction: C64) -> Result<Vec<BraidWord>, BraidError> {
        self.strands.iter().map(|s| extract_braid(s, direction)).collect()
    }

    pub fn precision_bits(&self) -> u32 {
        self.strands.iter().map(|s| s.precision_bits).max().unwrap_or(0)
    }

    pub fn steps(&self) -> Vec<usize> {
        self.strands.iter().map(|s| s.steps.len()).collect()
    }
}

/// Braids of every lasso read with one seeded projection direction, redrawn
/// for all lassos together when it is not generic.
pub fn lasso_braids<G: Rng>(tracked: &TrackedLoops, rng: &mut G) -> Result<(Vec<BraidWord>, C64), BraidError> {
    for _ in 0..DIRECTION_TRIES {
        let d = C64::expi(rng.gen_range(-PI..PI));
        match tracked.extract(d) {
            Ok(words) => return Ok((words, d)),
            Err(BraidError::NonGenericProjection) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(BraidError::NonGenericProjection)
}

#[derive(Debug, Clone, Serialize)]
pub struct LassoMonodromy {
    pub puncture: ComplexValue,
    pub braid: BraidWord,
    pub matrix: SL2Matrix,
    /// Fiber type at the puncture, when it was classified.
    pub kodaira_type: Option<KodairaType>,
    pub steps: usize,
}

/// Per-lasso braids and matrices of `fam` on a given loop system.
pub fn monodromy_on_loops<G: Rng>(
    fam: &FamilySpec,
    loops: &LoopSystem,
    opts: &RunOptions,
    rng: &mut G,
) -> Result<(Vec<LassoMonodromy>, C64, TrackedLoops), FamilyError> {
    let tracked = TrackedLoops::track(&fam.tracking_polynomial(), &loops.lassos, &opts.track())?;
    let (words, direction) = lasso_braids(&tracked, rng)?;
    let steps = tracked.steps();
    let lassos = words
        .into_iter()
        .zip(&loops.punctures)
        .zip(steps)
        .map(|((braid, p), steps)| {
            let matrix = mu3(&braid)?;
            let z = p.approx();
            Ok(LassoMonodromy { puncture: ComplexValue::new(z.re, z.im, 64), braid, matrix, kodaira_type: None, steps })
        })
        .collect::<Result<Vec<_>, BraidError>>()?;
    Ok((lassos, direction, tracked))
}

/// Order of the group generated by `gens` by breadth-first closure, or
/// `None` beyond `cap` elements.
pub fn finite_group_order(gens: &[SL2Matrix], cap: usize) -> Option<u64> {
    let mut seen: HashSet<SL2Matrix> = HashSet::from([SL2Matrix::identity()]);
    let mut queue = VecDeque::from([SL2Matrix::identity()]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let x = &g * h;
            if seen.insert(x.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(x);
            }
        }
    }
    Some(seen.len() as u64)
}

fn content(m: &SL2Matrix, shift: i64) -> BigInt {
    let [a, b, c, d] = m.entries();
    let s = BigInt::from(shift);
    [a - &s, b.clone(), c.clone(), d - &s].iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}

/// Whether `m` lies in the conjugacy class of the local monodromy of type
/// `t`, up to inversion: the trace must match, and for `I_n` / `I_n*` the
/// entries of `M ∓ I` must have gcd `n`.
pub fn local_monodromy_matches(t: KodairaType, m: &SL2Matrix) -> bool {
    if m.trace() != BigInt::from(t.monodromy_trace()) {
        return false;
    }
    match t {
        KodairaType::I0 => m.is_identity(),
        KodairaType::I(n) => content(m, 1) == BigInt::from(n),
        KodairaType::I0Star => *m == SL2Matrix::minus_identity(),
        KodairaType::IStar(n) => content(m, -1) == BigInt::from(n),
        _ => true,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonodromyReport {
    pub label: String,
    pub family: FamilySpec,
    pub j: String,
    pub deg_j: u64,
    pub m: u64,
    /// Number of singular fibers minus one, the rank of the free group
    /// generated by the lassos around them.
    pub r: u64,
    pub sum_e: u64,
    pub subgroup: SubgroupDescriptor,
    pub lassos: Vec<LassoMonodromy>,
    pub places: Vec<KodairaPlace>,
    pub infinity_type: KodairaType,
    /// Product of the lasso matrices in lasso order.
    pub product: SL2Matrix,
    pub basepoint: ComplexRational,
    pub direction: [f64; 2],
    pub precision_bits: u32,
    pub bounds_checked: BTreeMap<String, bool>,
}

impl MonodromyReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.bounds_checked.values().all(|&b| b)
    }

    pub fn matrices(&self) -> Vec<SL2Matrix> {
        self.lassos.iter().map(|l| l.matrix.clone()).collect()
    }
}

/// Monodromy group of a non-isotrivial family with every bound checked.
pub fn monodromy_group(fam: &FamilySpec, opts: &RunOptions) -> Result<MonodromyReport, FamilyError> {
    let mut rng = opts.rng();
    let loops = LoopSystem::build(&fam.puncture_polynomial(), &mut rng)?;
    monodromy_with_loops(fam, &loops, opts, &mut rng)
}

/// As [`monodromy_group`], on lassos around the family's punctures and the
/// roots of `extra` (points of the base that need not be punctures).
pub fn monodromy_group_with_extra(
    fam: &FamilySpec,
    extra: &Polynomial,
    opts: &RunOptions,
) -> Result<MonodromyReport, FamilyError> {
    let mut rng = opts.rng();
    let all = (&fam.puncture_polynomial() * extra).squarefree_part();
    let loops = LoopSystem::build(&all, &mut rng)?;
    monodromy_with_loops(fam, &loops, opts, &mut rng)
}

pub(crate) fn monodromy_with_loops<G: Rng>(
    fam: &FamilySpec,
    loops: &LoopSystem,
    opts: &RunOptions,
    rng: &mut G,
) -> Result<MonodromyReport, FamilyError> {
    let (lassos, direction, tracked) = monodromy_on_loops(fam, loops, opts, rng)?;
    assemble_report(fam, loops, lassos, direction, tracked.precision_bits(), opts)
}

/// Subgroup, fiber types and bound checks from per-lasso matrices. `fam`
/// supplies the J-map and the fiber types; the matrices may come from any
/// model with the same monodromy.
pub(crate) fn assemble_report(
    fam: &FamilySpec,
    loops: &LoopSystem,
    mut lassos: Vec<LassoMonodromy>,
    direction: C64,
    precision_bits: u32,
    opts: &RunOptions,
) -> Result<MonodromyReport, FamilyError> {
    let jm = j_map(fam);
    let matrices: Vec<SL2Matrix> = lassos.iter().map(|l| l.matrix.clone()).collect();
    if jm.isotrivial {
        let order = finite_group_order(&matrices, ISOTRIVIAL_ORDER_CAP);
        return Err(FamilyError::IsotrivialFamily { generators: matrices, order });
    }
    let subgroup = SubgroupDescriptor::compute(&matrices, opts.max_cosets);
    subgroup.require_closed(opts.max_cosets)?;

    let finite = finite_places(fam)?;
    for (l, p) in lassos.iter_mut().zip(&loops.punctures) {
        let z = p.approx();
        let nearest = finite
            .iter()
            .flat_map(|pl| pl.roots.iter().map(move |r| ((r.to_c64() - z).norm(), pl.kodaira_type)))
            .min_by(|a, b| a.0.total_cmp(&b.0));
        l.kodaira_type = nearest.filter(|(d, _)| *d < p.loop_radius).map(|(_, t)| t).or(Some(KodairaType::I0));
    }
    let places = all_places(fam)?;
    let infinity = places.last().expect("infinity is listed").kodaira_type;
    let sum_e: u64 = places.iter().map(|p| p.e_value as u64 * p.count as u64).sum();
    let singular: u64 = places.iter().filter(|p| p.kodaira_type != KodairaType::I0).map(|p| p.count as u64).sum();
    let r = singular.saturating_sub(1);
    let product = matrices.iter().fold(SL2Matrix::identity(), |acc, m| &acc * m);

    let sl = subgroup.sl_index.finite().expect("closed");
    let psl = subgroup.psl_index.finite().expect("closed");
    let m = jm.m;
    let mut bounds = BTreeMap::new();
    bounds.insert("sl_index <= 2m".to_string(), sl <= 2 * m);
    bounds.insert("psl_index <= m".to_string(), psl <= m);
    bounds.insert("sl_index <= 2 deg_J".to_string(), sl <= 2 * jm.deg_j);
    bounds.insert("sum_e == deg_J".to_string(), sum_e == jm.deg_j);
    bounds.insert("sl_index <= 2 sum_e".to_string(), sl <= 2 * sum_e);
    if r >= 2 {
        bounds.insert("sl_index <= 12(r-1)".to_string(), sl <= 12 * (r - 1));
    }
    bounds.insert("product law at infinity".to_string(), local_monodromy_matches(infinity, &product));
    let local_ok = lassos.iter().all(|l| l.kodaira_type.is_some_and(|t| local_monodromy_matches(t, &l.matrix)));
    bounds.insert("local fiber types".to_string(), local_ok);

    Ok(MonodromyReport {
        label: fam.label.clone(),
        family: fam.clone(),
        j: jm.j.display_with("t"),
        deg_j: jm.deg_j,
        m,
        r,
        sum_e,
        subgroup,
        lassos,
        places,
        infinity_type: infinity,
        product,
        basepoint: loops.basepoint.clone(),
        direction: [direction.re, direction.im],
        precision_bits,
        bounds_checked: bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::mu3;
    use crate::subgroup::{mod_image, Index};

    fn fast() -> RunOptions {
        RunOptions { precision: 53, ..RunOptions::default() }
    }

    #[test]
    fn local_classes() {
        assert!(local_monodromy_matches(KodairaType::I(2), &SL2Matrix::from_i64(1, 2, 0, 1)));
        assert!(local_monodromy_matches(KodairaType::I(2), &SL2Matrix::from_i64(1, 0, -2, 1)));
        assert!(!local_monodromy_matches(KodairaType::I(1), &SL2Matrix::from_i64(1, 2, 0, 1)));
        assert!(local_monodromy_matches(KodairaType::IStar(2), &SL2Matrix::from_i64(-1, -2, 0, -1)));
        assert!(local_monodromy_matches(KodairaType::II, &SL2Matrix::from_i64(1, 1, -1, 0)));
        assert!(!local_monodromy_matches(KodairaType::I0, &SL2Matrix::minus_identity()));
    }

    #[test]
    fn closure_orders() {
        assert_eq!(finite_group_order(&[SL2Matrix::s()], 100), Some(4));
        assert_eq!(finite_group_order(&[SL2Matrix::from_i64(1, 1, -1, 0)], 100), Some(6));
        assert_eq!(finite_group_order(&[SL2Matrix::t()], 100), None);
        assert_eq!(finite_group_order(&[], 100), Some(1));
    }

    #[test]
    fn cubic_t_x_plus_one_is_full() {
        let fam = FamilySpec::parse("a", "t", "1").unwrap();
        let rep = monodromy_group(&fam, &fast()).unwrap();
        assert_eq!(rep.subgroup.sl_index, Index::Finite(1));
        assert_eq!(mod_image(&rep.matrices(), 2).len(), 6);
        assert_eq!(mod_image(&rep.matrices(), 3).len(), 24);
        assert_eq!(rep.lassos.len(), 3);
        assert_eq!(rep.infinity_type, KodairaType::IIIStar);
        assert!(rep.all_bounds_hold(), "{:?}", rep.bounds_checked);
    }

    #[test]
    fn lasso_product_is_outer_circle() {
        let fam = FamilySpec::parse("a", "1", "t").unwrap();
        let opts = fast();
        let mut rng = opts.rng();
        let loops = LoopSystem::build(&fam.puncture_polynomial(), &mut rng).unwrap();
        let (lassos, d, _) = monodromy_on_loops(&fam, &loops, &opts, &mut rng).unwrap();
        let product = lassos.iter().fold(SL2Matrix::identity(), |acc, l| &acc * &l.matrix);
        let outer = track_roots(&fam.tracking_polynomial(), &loops.outer_circle(), &opts.track()).unwrap();
        let w = extract_braid(&outer, d).unwrap();
        assert_eq!(mu3(&w).unwrap(), product);
        // II* at infinity: trace one.
        assert_eq!(product.trace(), BigInt::from(1));
    }

    #[test]
    fn isotrivial_reports_finite_group() {
        let fam = FamilySpec::parse("iso", "0", "t").unwrap();
        match monodromy_group(&fam, &fast()) {
            Err(FamilyError::IsotrivialFamily { order, generators }) => {
                assert_eq!(generators.len(), 1);
                assert_eq!(order, Some(6));
            }
            other => panic!("{other:?}"),
        }
        match monodromy_group(&FamilySpec::parse("const", "0", "1").unwrap(), &fast()) {
            Err(FamilyError::IsotrivialFamily { order, .. }) => assert_eq!(order, Some(1)),
            other => panic!("{other:?}"),
        }
    }
}
