//! Property checks shared by the property suites and the acceptance run.

#![allow(dead_code)]

use monodromy::exact::{rat, ComplexRational, Polynomial, RationalFunction};
use monodromy::family::{chi_d, monodromy_group, FamilySpec, RunOptions, TwistSpec};
use monodromy::braid::PathPlan;
use monodromy::hyperell::{permutation_to_sp, sp_form};
use monodromy::sl2::{tau, SL2Matrix};
use monodromy::subgroup::SubgroupDescriptor;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 100;

pub fn fast() -> RunOptions {
    RunOptions { precision: 53, ..RunOptions::default() }
}

/// `y² = x³ + (a₀ + a₁t)x + (b₀ + b₁t + b₂t²)` with small integer
/// coefficients and non-constant `J`.
pub fn family() -> impl Strategy<Value = FamilySpec> {
    (prop::array::uniform2(-3i64..=3), prop::array::uniform3(-3i64..=3)).prop_filter_map("isotrivial", |(a, b)| {
        let p = RationalFunction::from_poly(Polynomial::from_i64(&a));
        let q = RationalFunction::from_poly(Polynomial::from_i64(&b));
        let fam = FamilySpec::new(format!("p = {a:?}, q = {b:?}"), p, q).ok()?;
        (!fam.is_isotrivial()).then_some(fam)
    })
}

fn word(letters: &[(bool, i8)]) -> SL2Matrix {
    letters.iter().fold(SL2Matrix::identity(), |acc, &(s, e)| {
        let g = if s { SL2Matrix::s() } else { SL2Matrix::t() };
        &acc * &g.pow(e as i64)
    })
}

pub fn sl2_word() -> impl Strategy<Value = SL2Matrix> {
    prop::collection::vec((any::<bool>(), -2i8..=2), 0..6).prop_map(|l| word(&l))
}

/// `⟨T², L², w₁, …⟩`: always of finite index.
pub fn finite_index_generators() -> impl Strategy<Value = Vec<SL2Matrix>> {
    prop::collection::vec(sl2_word(), 0..3).prop_map(|extra| {
        let mut g = vec![SL2Matrix::from_i64(1, 2, 0, 1), SL2Matrix::from_i64(1, 0, -2, 1)];
        g.extend(extra);
        g
    })
}

/// Same lasso matrices when every tracking step bound is halved.
pub fn step_halving(fam: &FamilySpec, step: f64) -> Result<(), TestCaseError> {
    let a = monodromy_group(fam, &RunOptions { max_step: step, ..fast() }).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = monodromy_group(fam, &RunOptions { max_step: step / 2.0, ..fast() })
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(a.matrices(), b.matrices());
    Ok(())
}

/// Index data does not depend on the basepoint or projection choices.
pub fn seed_independence(fam: &FamilySpec, s1: u64, s2: u64) -> Result<(), TestCaseError> {
    let run = |seed| monodromy_group(fam, &RunOptions { seed, ..fast() }).map_err(|e| TestCaseError::fail(e.to_string()));
    let (a, b) = (run(s1)?.subgroup, run(s2)?.subgroup);
    prop_assert_eq!(a.sl_index, b.sl_index);
    prop_assert_eq!(a.psl_index, b.psl_index);
    prop_assert_eq!(a.contains_minus_i, b.contains_minus_i);
    prop_assert_eq!(a.mod2_image_order, b.mod2_image_order);
    Ok(())
}

/// Indices are invariant under conjugation and under `M ↦ (Mᵀ)⁻¹`.
pub fn conjugation_invariance(gens: &[SL2Matrix], g: &SL2Matrix) -> Result<(), TestCaseError> {
    let budget = 20_000;
    let base = SubgroupDescriptor::compute(gens, budget);
    let gi = g.inverse();
    let conj: Vec<SL2Matrix> = gens.iter().map(|m| &(g * m) * &gi).collect();
    let twisted: Vec<SL2Matrix> = gens.iter().map(tau).collect();
    for other in [SubgroupDescriptor::compute(&conj, budget), SubgroupDescriptor::compute(&twisted, budget)] {
        prop_assert_eq!(base.sl_index, other.sl_index);
        prop_assert_eq!(base.psl_index, other.psl_index);
        prop_assert_eq!(base.contains_minus_i, other.contains_minus_i);
    }
    Ok(())
}

fn poly_with_roots(roots: &[i64], lead: i64) -> Polynomial {
    roots.iter().fold(Polynomial::from_i64(&[lead]), |acc, &r| &acc * &Polynomial::from_i64(&[-r, 1]))
}

/// `χ_{D₁D₂} = χ_{D₁}χ_{D₂}` and `χ_{1/D} = χ_D` on circles that miss every
/// integer.
pub fn chi_multiplicative(r1: &[i64], r2: &[i64], center: i64, radius: i64, turns: i32) -> Result<(), TestCaseError> {
    let d1 = RationalFunction::from_poly(poly_with_roots(r1, 2));
    let d2 = RationalFunction::new(Polynomial::from_i64(&[3]), poly_with_roots(r2, 1));
    let prod = &d1 * &d2;
    let half = rat(radius) + monodromy::exact::ratio(1, 2);
    let c = ComplexRational::new(rat(center), rat(0));
    let path = PathPlan::circle(c.clone(), ComplexRational::new(rat(center) + half, rat(0)), turns);
    let chi = |d: &RationalFunction| chi_d(&TwistSpec::new(d.clone()).unwrap(), &path).map_err(|e| TestCaseError::fail(e.to_string()));
    let (a, b, ab) = (chi(&d1)?, chi(&d2)?, chi(&prod)?);
    prop_assert_eq!(ab, a * b);
    prop_assert_eq!(chi(&d2.recip().unwrap())?, b);
    // Oracle: parity of the number of zeros minus poles inside, times turns.
    let inside = |rs: &[i64]| rs.iter().filter(|&&r| ((r - center).abs() as f64) < radius as f64 + 0.5).count() as i64;
    let k = (inside(r1) - inside(r2)) * turns as i64;
    prop_assert_eq!(ab, if k.rem_euclid(2) == 0 { 1 } else { -1 });
    Ok(())
}

/// The product of the lassos has the trace of the local monodromy at ∞.
pub fn product_law(fam: &FamilySpec) -> Result<(), TestCaseError> {
    let rep = monodromy_group(fam, &fast()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let t = rep.product.trace();
    prop_assert_eq!(t, rep.infinity_type.monodromy_trace().into(), "{} at infinity", rep.infinity_type);
    prop_assert!(rep.bounds_checked["product law at infinity"]);
    Ok(())
}

/// Every permutation matrix preserves the intersection form, and the map is
/// a homomorphism.
pub fn symplectic(a: &[usize], b: &[usize]) -> Result<(), TestCaseError> {
    let n = a.len();
    let j = sp_form(n - 2);
    let (ma, mb) = (permutation_to_sp(a), permutation_to_sp(b));
    prop_assert!(ma.preserves(&j));
    prop_assert!(mb.preserves(&j));
    let ab: Vec<usize> = a.iter().map(|&x| b[x]).collect();
    prop_assert_eq!(permutation_to_sp(&ab), mb.mul(&ma));
    Ok(())
}

pub fn permutation_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    prop::sample::select(vec![4usize, 6, 8, 10]).prop_flat_map(|n| {
        let p = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (p.clone(), p)
    })
}

pub fn roots() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 0..4)
}

fn fmt<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{e:?}"))
}

/// Runs every suite with `CASES` cases; `(name, Ok | Err(message))`.
pub fn run_all() -> Vec<(&'static str, Result<(), String>)> {
    let mut out = Vec::new();
    let cfg = || Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let mut go = |name, r: Result<(), String>| out.push((name, r));

    let mut t = TestRunner::new(cfg());
    go("step-halving braid stability", fmt(t.run(&(family(), prop::sample::select(vec![0.25, 0.125, 0.0625])), |(f, s)| step_halving(&f, s))));
    let mut t = TestRunner::new(cfg());
    go("seed independence of index data", fmt(t.run(&(family(), any::<u64>(), any::<u64>()), |(f, a, b)| seed_independence(&f, a, b))));
    let mut t = TestRunner::new(cfg());
    go("conjugation and tau invariance", fmt(t.run(&(finite_index_generators(), sl2_word()), |(g, c)| conjugation_invariance(&g, &c))));
    let mut t = TestRunner::new(cfg());
    go(
        "chi_D multiplicativity",
        fmt(t.run(&(roots(), roots(), -3i64..=3, 0i64..=4, prop::sample::select(vec![-2, -1, 1, 2])), |(a, b, c, r, k)| {
            chi_multiplicative(&a, &b, c, r, k)
        })),
    );
    let mut t = TestRunner::new(cfg());
    go("product-law trace at infinity", fmt(t.run(&family(), |f| product_law(&f))));
    let mut t = TestRunner::new(cfg());
    go("symplectic form preservation", fmt(t.run(&permutation_pair(), |(a, b)| symplectic(&a, &b))));
    out
}
