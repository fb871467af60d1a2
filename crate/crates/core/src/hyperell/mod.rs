//! Mod-2 monodromy of families of hyperelliptic curves `y² = f(x, t)`.
//!
//! The 2-torsion of the Jacobian of `y² = f(x)` with Weierstrass points
//! `P₁ … P_{2g+2}` is the space of even subsets of the points modulo the
//! full set, with intersection parity as the Weil pairing. A loop acts on it
//! through the permutation it induces on the branch points, so the mod-2
//! monodromy group is the image of the permutation group.

mod sp;

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::braid::{compose, BraidError, TrackedStrands};
use crate::exact::{parse_bipoly, rat, BiPoly, ExactError, ParseError, Polynomial, Rational, C64};
use crate::family::{FamilyError, LoopSystem, RunOptions, TrackedLoops};

pub use sp::{permutation_to_sp, sp_form, Sp2gF2Element};

/// Cap on the size of any group enumerated by closure.
pub const MAX_CLOSURE: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperellError {
    #[error("degree {degree} in x is not 2g+1 or 2g+2 for g = {genus}")]
    Degree { degree: usize, genus: u32 },
    #[error("leading coefficient in x must be a nonzero constant")]
    NotMonic,
    #[error("genus {0} is too small")]
    GenusTooSmall(u32),
    #[error("discriminant in x vanishes identically")]
    DegenerateFamily,
    #[error("group closure exceeded {cap} elements")]
    BudgetExceeded { cap: usize },
    #[error("tracked branch points do not return to the starting set")]
    UnmatchedStrands,
    #[error("no generic slice found in {0} tries")]
    NoGenericSlice(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// `y² = f(x, t)` with `f` monic in `x` of degree `2g+1` or `2g+2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperellFamilySpec {
    pub label: String,
    /// Outer variable `x`, inner variable `t`.
    pub f: BiPoly,
    pub genus: u32,
}

impl Serialize for HyperellFamilySpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HyperellFamilySpec", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("f", &self.f.display_with("x", "t"))?;
        st.serialize_field("genus", &self.genus)?;
        st.end()
    }
}

impl HyperellFamilySpec {
    /// Genus is read off the degree; a constant leading coefficient is
    /// divided out.
    pub fn new(label: impl Into<String>, f: BiPoly) -> Result<Self, HyperellError> {
        let n = f.degree();
        if !f.leading().is_constant() || f.is_zero() {
            return Err(HyperellError::NotMonic);
        }
        let genus = (n.max(1) as u32 - 1) / 2;
        if genus < 1 {
            return Err(HyperellError::GenusTooSmall(genus));
        }
        let lc = f.leading().coeff(0);
        let f = BiPoly::new(f.coeffs().iter().map(|c| c.scale(&(rat(1) / &lc))).collect());
        if f.discriminant().is_zero() {
            return Err(HyperellError::DegenerateFamily);
        }
        Ok(HyperellFamilySpec { label: label.into(), f, genus })
    }

    pub fn parse(label: impl Into<String>, src: &str) -> Result<Self, HyperellError> {
        Self::new(label, parse_bipoly(src, "x", "t")?)
    }

    /// Like [`new`](Self::new) but also checks the genus against the degree.
    pub fn with_genus(label: impl Into<String>, f: BiPoly, genus: u32) -> Result<Self, HyperellError> {
        let fam = Self::new(label, f)?;
        if fam.genus != genus {
            return Err(HyperellError::Degree { degree: fam.f.degree(), genus });
        }
        Ok(fam)
    }

    /// Number of Weierstrass points, counting `∞` for odd degree.
    pub fn points(&self) -> usize {
        2 * self.genus as usize + 2
    }

    pub fn odd_degree(&self) -> bool {
        self.f.degree() % 2 == 1
    }

    /// Square-free discriminant in `x`: the finite punctures.
    pub fn puncture_polynomial(&self) -> Polynomial {
        let d = self.f.discriminant();
        if d.is_constant() {
            d
        } else {
            d.squarefree_part().monic()
        }
    }
}

/// `2^{g²} (2^{2g} - 1)(2^{2g-2} - 1) ⋯ (2² - 1)`.
pub fn sp2g_f2_order(g: u32) -> BigUint {
    let mut n = BigUint::from(1u32) << (g * g) as usize;
    for i in 1..=g {
        n *= (BigUint::from(1u32) << (2 * i) as usize) - 1u32;
    }
    n
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// `|Sp(2g, 𝔽₂)| / (2g+2)!`, a lower bound for the index of the monodromy
/// group of any family of genus `g ≥ 3`.
pub fn hyperell_bound(g: u32) -> Result<Rational, HyperellError> {
    if g < 3 {
        return Err(HyperellError::GenusTooSmall(g));
    }
    Ok(Rational::new(BigInt::from(sp2g_f2_order(g)), BigInt::from(factorial(2 * g + 2))))
}

/// Order of the group generated by `gens` under `mul`, by breadth-first
/// closure from the identity.
pub fn closure_order<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<usize, HyperellError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(HyperellError::BudgetExceeded { cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

pub fn permutation_group_order(gens: &[Vec<usize>], n: usize, cap: usize) -> Result<usize, HyperellError> {
    closure_order((0..n).collect::<Vec<_>>(), gens, |a, b| compose(a, b), cap)
}

pub fn sp_group_order(gens: &[Sp2gF2Element], dim: usize, cap: usize) -> Result<usize, HyperellError> {
    closure_order(Sp2gF2Element::identity(dim), gens, |a, b| a.mul(b), cap)
}

/// Permutation of the labelled points induced by one tracked loop:
/// `perm[a] = b` when the point labelled `a` ends where `b` started.
fn strand_permutation(labels: &[C64], s: &TrackedStrands) -> Result<Vec<usize>, HyperellError> {
    let nearest = |z: C64| {
        (0..labels.len()).min_by(|&a, &b| (labels[a] - z).norm().total_cmp(&(labels[b] - z).norm())).expect("nonempty")
    };
    let start: Vec<usize> = s.start().into_iter().map(nearest).collect();
    let finish: Vec<usize> = s.finish().into_iter().map(nearest).collect();
    let mut perm = vec![usize::MAX; labels.len()];
    for (a, b) in start.into_iter().zip(finish) {
        perm[a] = b;
    }
    let mut hit = vec![false; labels.len()];
    for &b in &perm {
        if b == usize::MAX || std::mem::replace(&mut hit[b], true) {
            return Err(HyperellError::UnmatchedStrands);
        }
    }
    Ok(perm)
}

/// Lasso system, and for each lasso the permutation of the `2g+2`
/// Weierstrass points. Points are labelled by sorting the roots at the
/// basepoint by real then imaginary part; for odd degree the point at `∞` is
/// the last label and is fixed.
pub fn weierstrass_permutations(
    fam: &HyperellFamilySpec,
    opts: &RunOptions,
) -> Result<(LoopSystem, Vec<Vec<usize>>), HyperellError> {
    let mut rng = opts.rng();
    let loops = LoopSystem::build(&fam.puncture_polynomial(), &mut rng)?;
    let tracked = TrackedLoops::track(&fam.f, &loops.lassos, &opts.track())?;
    let Some(first) = tracked.strands.first() else {
        return Ok((loops, Vec::new()));
    };
    let mut labels = first.start();
    labels.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let perms = tracked
        .strands
        .iter()
        .map(|s| {
            let mut p = strand_permutation(&labels, s)?;
            if fam.odd_degree() {
                p.push(p.len());
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>, HyperellError>>()?;
    Ok((loops, perms))
}

fn one_line(p: &[usize]) -> String {
    p.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Serialize)]
pub struct HyperellReport {
    pub family: HyperellFamilySpec,
    pub g: u32,
    pub punctures: usize,
    /// One-line notation, 1-based.
    pub permutations: Vec<String>,
    pub symplectic_generators: Vec<Sp2gF2Element>,
    pub permutation_group_order: usize,
    pub full_symmetric: bool,
    pub group_order: usize,
    #[serde(serialize_with = "display")]
    pub ambient_order: BigUint,
    #[serde(serialize_with = "display")]
    pub index: BigUint,
    /// `None` for `g < 3`.
    #[serde(serialize_with = "display_opt")]
    pub bound: Option<Rational>,
    pub bound_holds: bool,
    pub sharp: bool,
    pub symplectic: bool,
}

fn display<S: Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn display_opt<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Order and index of the mod-2 monodromy group in `Sp(2g, 𝔽₂)`.
pub fn mod2_monodromy_order(fam: &HyperellFamilySpec, opts: &RunOptions) -> Result<(usize, BigUint), HyperellError> {
    let r = mod2_monodromy(fam, opts)?;
    Ok((r.group_order, r.index))
}

pub fn mod2_monodromy(fam: &HyperellFamilySpec, opts: &RunOptions) -> Result<HyperellReport, HyperellError> {
    let g = fam.genus;
    let n = fam.points();
    let dim = 2 * g as usize;
    let (loops, perms) = weierstrass_permutations(fam, opts)?;
    let mats: Vec<Sp2gF2Element> = perms.iter().map(|p| permutation_to_sp(p)).collect();
    let j = sp_form(dim);
    let symplectic = mats.iter().all(|m| m.preserves(&j));
    let perm_order = permutation_group_order(&perms, n, MAX_CLOSURE)?;
    let order = sp_group_order(&mats, dim, MAX_CLOSURE)?;
    let ambient = sp2g_f2_order(g);
    let index = &ambient / BigUint::from(order);
    let bound = if g >= 3 { Some(hyperell_bound(g)?) } else { None };
    let idx = Rational::from_integer(BigInt::from(index.clone()));
    let bound_holds = bound.as_ref().is_none_or(|b| &idx >= b);
    let sharp = bound.as_ref().is_some_and(|b| &idx == b);
    let full = BigUint::from(perm_order) == factorial(n as u32);
    Ok(HyperellReport {
        family: fam.clone(),
        g,
        punctures: loops.len(),
        permutations: perms.iter().map(|p| one_line(p)).collect(),
        symplectic_generators: mats,
        permutation_group_order: perm_order,
        full_symmetric: full,
        group_order: order,
        ambient_order: ambient,
        index,
        bound,
        bound_holds,
        sharp,
        symplectic,
    })
}

const SLICE_TRIES: usize = 64;

/// A line `a(t) = α + βt` through the space of monic depressed polynomials
/// `x^{2g+2} + a_{2g}x^{2g} + ⋯ + a₀`, with small integer coefficients drawn
/// from `seed`. Redrawn until the discriminant in `x` is square-free of
/// degree `2n - 3` in `t`, its degree on a generic line (`n = 2g+2`).
pub fn universal_slice(g: u32, seed: u64) -> Result<HyperellFamilySpec, HyperellError> {
    let n = 2 * g as usize + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SLICE_TRIES {
        let mut coeffs: Vec<Polynomial> = (0..n - 1)
            .map(|_| Polynomial::from_i64(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]))
            .collect();
        coeffs.push(Polynomial::zero());
        coeffs.push(Polynomial::one());
        let f = BiPoly::new(coeffs);
        let d = f.discriminant();
        if d.deg0() != 2 * n - 3 || d.squarefree_part().deg0() != d.deg0() {
            continue;
        }
        return HyperellFamilySpec::new(format!("universal slice g={g} seed={seed}"), f);
    }
    Err(HyperellError::NoGenericSlice(SLICE_TRIES))
}
