//! Finitely generated subgroups of SL(2,ℤ) and their coset data.
//!
//! A subgroup is enumerated on `SL(2,ℤ) = ⟨S, U | S⁴, U³, S² central⟩`; the
//! PSL coset table with its ±1 sign fiber is the quotient of that action by
//! `S² = -I`. A direct enumeration on `PSL(2,ℤ) = ⟨s, u | s², u³⟩` is run
//! alongside and must agree.

mod enumerate;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::sl2::{decompose_word, reduce_mod, Generator, ModMatrix, SL2Matrix};
use enumerate::{enumerate, isomorphic, psl_relators, sl_relators, Action, NONE};

/// Default cap on simultaneously live cosets.
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("coset enumeration did not close within {max_cosets} cosets")]
    BudgetExceeded { max_cosets: usize },
    #[error("operation requires a closed coset table")]
    RequiresClosedTable,
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(u64),
    #[error("expected {expected} signs, got {got}")]
    SignCount { expected: usize, got: usize },
}

/// An index that is either known or was not determined within the budget.
/// `Unbounded` never asserts that the index is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(untagged)]
pub enum Index {
    Finite(u64),
    #[serde(deserialize_with = "unbounded")]
    Unbounded,
}

fn unbounded<'de, D: serde::Deserializer<'de>>(d: D) -> Result<(), D::Error> {
    let s = String::deserialize(d)?;
    if s == "Unbounded" {
        Ok(())
    } else {
        Err(serde::de::Error::custom("expected \"Unbounded\""))
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Index::Finite(n) => s.serialize_u64(*n),
            Index::Unbounded => s.serialize_str("Unbounded"),
        }
    }
}

impl Index {
    pub fn finite(self) -> Option<u64> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Unbounded => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Unbounded => f.write_str("Unbounded"),
        }
    }
}

/// Action of `s` and `u` on PSL-cosets. Coset `i` carries a fixed SL lift
/// `L(i)`; the entry `(j, ε)` for letter `x` means `L(i)·x = L(j)·(±I)` with
/// the sign `ε`. When `-I` lies in the group every sign is `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub s: Vec<(u32, i8)>,
    pub u: Vec<(u32, i8)>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    fn inverse_of(map: &[(u32, i8)]) -> Vec<(u32, i8)> {
        let mut out = vec![(0, 1); map.len()];
        for (i, &(j, e)) in map.iter().enumerate() {
            out[j as usize] = (i as u32, e);
        }
        out
    }

    /// Follows a word in S, U from coset 0, returning the final coset and the
    /// accumulated sign.
    pub fn trace(&self, m: &SL2Matrix) -> (u32, i8) {
        let (s_inv, u_inv) = (Self::inverse_of(&self.s), Self::inverse_of(&self.u));
        letters_of(m).iter().fold((0u32, 1i8), |(c, sign), &x| {
            let (d, e) = match x {
                0 => self.s[c as usize],
                1 => s_inv[c as usize],
                2 => self.u[c as usize],
                _ => u_inv[c as usize],
            };
            (d, sign * e)
        })
    }

    /// Sign holonomy of `S²` at coset 0.
    pub fn contains_minus_identity(&self) -> bool {
        self.trace(&SL2Matrix::minus_identity()) == (0, 1)
    }
}

/// A finitely generated subgroup of SL(2,ℤ) with its index data.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupDescriptor {
    pub generators: Vec<SL2Matrix>,
    pub psl_index: Index,
    pub sl_index: Index,
    /// `None` when the enumeration did not close.
    #[serde(rename = "contains_minus_I")]
    pub contains_minus_i: Option<bool>,
    pub mod2_image_order: u64,
    #[serde(skip)]
    pub coset_table: Option<CosetTable>,
    #[serde(skip)]
    sl_action: Option<SlAction>,
}

/// Letter matrices in the order `S, S⁻¹, U, U⁻¹`.
fn letter_matrices() -> [SL2Matrix; 4] {
    [SL2Matrix::s(), SL2Matrix::s().inverse(), SL2Matrix::u(), SL2Matrix::u().inverse()]
}

/// Freely reduced word in `S^±1, U^±1` evaluating to `m`, via `T = S⁻¹U`.
pub(crate) fn letters_of(m: &SL2Matrix) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::new();
    let mut push = |x: u8| {
        if out.last() == Some(&(x ^ 1)) {
            out.pop();
        } else {
            out.push(x);
        }
    };
    for &(g, e) in decompose_word(m).syllables() {
        let n = e.unsigned_abs();
        for _ in 0..n {
            match (g, e > 0) {
                (Generator::S, true) => push(0),
                (Generator::S, false) => push(1),
                (Generator::T, true) => {
                    push(1);
                    push(2);
                }
                (Generator::T, false) => {
                    push(3);
                    push(0);
                }
            }
        }
    }
    out
}

/// SL coset action with precomputed `T` cycles for fast membership tests.
#[derive(Debug, Clone)]
struct SlAction {
    action: Action,
    t_cycle: Vec<(u32, u32)>,
    cycles: Vec<Vec<u32>>,
}

impl SlAction {
    fn new(action: Action) -> Self {
        let n = action.len();
        let t = |c: u32| action.apply(action.apply(c, 1), 2);
        let mut t_cycle = vec![(NONE, 0); n];
        let mut cycles = Vec::new();
        for start in 0..n as u32 {
            if t_cycle[start as usize].0 != NONE {
                continue;
            }
            let id = cycles.len() as u32;
            let mut cyc = Vec::new();
            let mut c = start;
            loop {
                t_cycle[c as usize] = (id, cyc.len() as u32);
                cyc.push(c);
                c = t(c);
                if c == start {
                    break;
                }
            }
            cycles.push(cyc);
        }
        SlAction { action, t_cycle, cycles }
    }

    fn trace(&self, start: u32, m: &SL2Matrix) -> u32 {
        let mut c = start;
        for &(g, e) in decompose_word(m).syllables() {
            match g {
                Generator::S => {
                    let x = if e > 0 { 0 } else { 1 };
                    for _ in 0..e.unsigned_abs() {
                        c = self.action.apply(c, x);
                    }
                }
                Generator::T => {
                    let (id, pos) = self.t_cycle[c as usize];
                    let cyc = &self.cycles[id as usize];
                    let len = cyc.len() as i64;
                    c = cyc[(pos as i64 + e).rem_euclid(len) as usize];
                }
            }
        }
        c
    }
}

impl SubgroupDescriptor {
    /// Enumerates cosets of `⟨generators⟩` with at most `max_cosets` live
    /// cosets at any time.
    pub fn compute(generators: &[SL2Matrix], max_cosets: usize) -> Self {
        let words: Vec<Vec<u8>> = generators.iter().map(letters_of).collect();
        let psl = enumerate(&psl_relators(), &words, max_cosets).ok();
        let sl = enumerate(&sl_relators(), &words, max_cosets).ok();
        let mod2 = mod_image(generators, 2).len() as u64;
        match sl {
            Some(action) => {
                let d = Self::from_sl_action(generators.to_vec(), action);
                if let Some(direct) = psl {
                    let quotient = d.coset_table.as_ref().map(unsigned_action).expect("closed table");
                    assert!(
                        isomorphic(&direct, &quotient, &[0, 2]),
                        "PSL enumeration disagrees with the quotient of the SL enumeration"
                    );
                }
                d
            }
            None => SubgroupDescriptor {
                generators: generators.to_vec(),
                psl_index: psl.map_or(Index::Unbounded, |a| Index::Finite(a.len() as u64)),
                sl_index: Index::Unbounded,
                contains_minus_i: None,
                mod2_image_order: mod2,
                coset_table: None,
                sl_action: None,
            },
        }
    }

    fn from_sl_action(generators: Vec<SL2Matrix>, action: Action) -> Self {
        let n = action.len();
        let s2 = |c: u32| action.apply(action.apply(c, 0), 0);
        let contains = s2(0) == 0;
        let table = if contains {
            CosetTable {
                s: (0..n as u32).map(|c| (action.apply(c, 0), 1)).collect(),
                u: (0..n as u32).map(|c| (action.apply(c, 2), 1)).collect(),
            }
        } else {
            let mut rank = vec![NONE; n];
            let mut lifts = Vec::new();
            for c in 0..n as u32 {
                if c < s2(c) {
                    rank[c as usize] = lifts.len() as u32;
                    lifts.push(c);
                }
            }
            let entry = |d: u32| {
                if rank[d as usize] != NONE {
                    (rank[d as usize], 1)
                } else {
                    (rank[s2(d) as usize], -1)
                }
            };
            CosetTable {
                s: lifts.iter().map(|&c| entry(action.apply(c, 0))).collect(),
                u: lifts.iter().map(|&c| entry(action.apply(c, 2))).collect(),
            }
        };
        debug_assert_eq!(table.contains_minus_identity(), contains);
        let mod2 = mod_image(&generators, 2).len() as u64;
        SubgroupDescriptor {
            psl_index: Index::Finite(table.len() as u64),
            sl_index: Index::Finite(n as u64),
            contains_minus_i: Some(contains),
            mod2_image_order: mod2,
            coset_table: Some(table),
            sl_action: Some(SlAction::new(action)),
            generators,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.sl_action.is_some()
    }

    pub fn require_closed(&self, max_cosets: usize) -> Result<&Self, SubgroupError> {
        if self.is_closed() {
            Ok(self)
        } else {
            Err(SubgroupError::BudgetExceeded { max_cosets })
        }
    }

    fn action(&self) -> Result<&SlAction, SubgroupError> {
        self.sl_action.as_ref().ok_or(SubgroupError::RequiresClosedTable)
    }

    /// Exact membership test.
    pub fn contains(&self, m: &SL2Matrix) -> Result<bool, SubgroupError> {
        Ok(self.action()?.trace(0, m) == 0)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupDescriptor) -> Result<bool, SubgroupError> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_group(&self, other: &SubgroupDescriptor) -> Result<bool, SubgroupError> {
        Ok(self.is_subgroup_of(other)? && other.is_subgroup_of(self)?)
    }

    /// Whether the two subgroups are conjugate in SL(2,ℤ).
    pub fn is_conjugate_to(&self, other: &SubgroupDescriptor) -> Result<bool, SubgroupError> {
        Ok(isomorphic(&self.action()?.action, &other.action()?.action, &[0, 2]))
    }

    /// Whether the images in PSL(2,ℤ) are conjugate.
    pub fn psl_conjugate_to(&self, other: &SubgroupDescriptor) -> Result<bool, SubgroupError> {
        let (a, b) = (
            self.coset_table.as_ref().ok_or(SubgroupError::RequiresClosedTable)?,
            other.coset_table.as_ref().ok_or(SubgroupError::RequiresClosedTable)?,
        );
        Ok(isomorphic(&unsigned_action(a), &unsigned_action(b), &[0, 2]))
    }

    /// `G ∩ G'`, with Schreier generators read off the product action.
    pub fn intersection(&self, other: &SubgroupDescriptor) -> Result<SubgroupDescriptor, SubgroupError> {
        let (a, b) = (&self.action()?.action, &other.action()?.action);
        let (gens, action) = stabilizer((0u32, 0u32), |&(p, q), x| (a.apply(p, x), b.apply(q, x)));
        Ok(Self::from_sl_action(gens, action))
    }

    /// `G ∩ Γ(2)`; its index in `G` equals the order of the mod-2 image.
    pub fn intersect_gamma2(&self) -> Result<SubgroupDescriptor, SubgroupError> {
        self.intersection(&gamma2())
    }

    /// The group generated by `G` and `-I`.
    pub fn with_minus_identity(&self, max_cosets: usize) -> SubgroupDescriptor {
        let mut gens = self.generators.clone();
        gens.push(SL2Matrix::minus_identity());
        Self::compute(&gens, max_cosets)
    }

    pub fn conjugate_by(&self, g: &SL2Matrix, max_cosets: usize) -> SubgroupDescriptor {
        let gi = g.inverse();
        let gens: Vec<SL2Matrix> = self.generators.iter().map(|h| &(g * h) * &gi).collect();
        Self::compute(&gens, max_cosets)
    }
}

fn unsigned_action(t: &CosetTable) -> Action {
    let n = t.len();
    let mut rows = vec![[NONE; 4]; n];
    for i in 0..n {
        let (s, u) = (t.s[i].0, t.u[i].0);
        rows[i][0] = s;
        rows[s as usize][1] = i as u32;
        rows[i][2] = u;
        rows[u as usize][3] = i as u32;
    }
    Action { rows }
}

/// Stabilizer of `start` under a right action of SL(2,ℤ) given on the
/// letters `S, S⁻¹, U, U⁻¹`: Schreier generators and the orbit action,
/// numbered in breadth-first order.
pub(crate) fn stabilizer<P, F>(start: P, act: F) -> (Vec<SL2Matrix>, Action)
where
    P: Clone + Eq + Hash,
    F: Fn(&P, u8) -> P,
{
    let letters = letter_matrices();
    let mut index: HashMap<P, u32> = HashMap::new();
    let mut points = vec![start.clone()];
    let mut reps = vec![SL2Matrix::identity()];
    index.insert(start, 0);
    let mut rows: Vec<[u32; 4]> = Vec::new();
    let mut gens: Vec<SL2Matrix> = Vec::new();
    let mut head = 0;
    while head < points.len() {
        let p = points[head].clone();
        let mut row = [NONE; 4];
        for (x, slot) in row.iter_mut().enumerate() {
            let q = act(&p, x as u8);
            let j = match index.get(&q) {
                Some(&j) => {
                    if x % 2 == 0 {
                        let g = &(&reps[head] * &letters[x]) * &reps[j as usize].inverse();
                        if !g.is_identity() && !gens.contains(&g) {
                            gens.push(g);
                        }
                    }
                    j
                }
                None => {
                    let j = points.len() as u32;
                    index.insert(q.clone(), j);
                    reps.push(&reps[head] * &letters[x]);
                    points.push(q);
                    j
                }
            };
            *slot = j;
        }
        rows.push(row);
        head += 1;
    }
    let action = Action { rows };
    debug_assert!(action.is_consistent());
    (gens, action)
}

/// Index of `⟨generators⟩` in PSL(2,ℤ) together with its signed coset table.
pub fn index_in_psl(generators: &[SL2Matrix], max_cosets: usize) -> (Index, Option<CosetTable>) {
    let d = SubgroupDescriptor::compute(generators, max_cosets);
    (d.psl_index, d.coset_table)
}

/// Decides `-I ∈ ⟨generators⟩` from the sign fiber of a closed table.
pub fn contains_minus_identity(generators: &[SL2Matrix], table: Option<&CosetTable>) -> Result<bool, SubgroupError> {
    let table = table.ok_or(SubgroupError::RequiresClosedTable)?;
    debug_assert!(generators.iter().all(|g| table.trace(g) == (0, 1)));
    Ok(table.contains_minus_identity())
}

pub fn sl_index(generators: &[SL2Matrix], max_cosets: usize) -> Index {
    SubgroupDescriptor::compute(generators, max_cosets).sl_index
}

/// The epimorphism `SL(2,ℤ) → ℤ/12ℤ` with `S ↦ 3`, `T ↦ 1`.
pub fn abelianization_character(m: &SL2Matrix) -> u8 {
    let total: i64 = decompose_word(m)
        .syllables()
        .iter()
        .map(|&(g, e)| match g {
            Generator::S => 3 * e,
            Generator::T => e,
        })
        .sum();
    total.rem_euclid(12) as u8
}

/// `(SL(2,ℤ) : G) ≤ 12(r - 1)` for a subgroup generated by `r` elements
/// that is not virtually of smaller rank.
pub fn schreier_bound(r: u64) -> Result<u64, SubgroupError> {
    if r < 2 {
        return Err(SubgroupError::InvalidRank(r));
    }
    Ok(12 * (r - 1))
}

/// Image of `⟨generators⟩` in SL(2, ℤ/nℤ), by closure.
pub fn mod_image(generators: &[SL2Matrix], n: u64) -> BTreeSet<ModMatrix> {
    let gens: Vec<ModMatrix> = generators.iter().map(|g| reduce_mod(g, n)).collect();
    let id = ModMatrix::identity(n);
    let mut seen = BTreeSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p = m.mul(g);
            if seen.insert(p) {
                queue.push_back(p);
            }
        }
    }
    seen
}

/// Generators of the principal congruence subgroup of level 2.
pub fn gamma2_generators() -> Vec<SL2Matrix> {
    vec![SL2Matrix::minus_identity(), SL2Matrix::from_i64(1, 2, 0, 1), SL2Matrix::from_i64(1, 0, 2, 1)]
}

fn gamma2() -> SubgroupDescriptor {
    SubgroupDescriptor::compute(&gamma2_generators(), 64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistCase {
    /// `G₂ = G₁`.
    Equal,
    /// `G₁ ∩ G₂` has index two in both.
    IndexTwoSubgroup,
    /// One group is generated by the other and `-I`.
    AdjoinMinusI,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistClassification {
    pub case: TwistCase,
    /// `H = G₁ ∩ G₂` for [`TwistCase::IndexTwoSubgroup`].
    pub witness: Option<SubgroupDescriptor>,
}

/// The group generated by `signs[i] · generators[i]`, classified against
/// `⟨generators⟩`.
pub fn twist_group(
    generators: &[SL2Matrix],
    signs: &[i8],
) -> Result<(SubgroupDescriptor, TwistClassification), SubgroupError> {
    twist_group_with_budget(generators, signs, DEFAULT_MAX_COSETS)
}

pub fn twist_group_with_budget(
    generators: &[SL2Matrix],
    signs: &[i8],
    max_cosets: usize,
) -> Result<(SubgroupDescriptor, TwistClassification), SubgroupError> {
    if signs.len() != generators.len() {
        return Err(SubgroupError::SignCount { expected: generators.len(), got: signs.len() });
    }
    let g1 = SubgroupDescriptor::compute(generators, max_cosets);
    g1.require_closed(max_cosets)?;
    let twisted: Vec<SL2Matrix> = generators.iter().zip(signs).map(|(g, &e)| g.signed(e)).collect();
    let g2 = SubgroupDescriptor::compute(&twisted, max_cosets);
    g2.require_closed(max_cosets)?;
    let class = classify_pair(&g1, &g2)?;
    Ok((g2, class))
}

/// Classifies two subgroups with `±G₁ = ±G₂`.
pub fn classify_pair(g1: &SubgroupDescriptor, g2: &SubgroupDescriptor) -> Result<TwistClassification, SubgroupError> {
    let (a, b) = (g1.is_subgroup_of(g2)?, g2.is_subgroup_of(g1)?);
    let case = match (a, b) {
        (true, true) => TwistCase::Equal,
        (true, false) | (false, true) => TwistCase::AdjoinMinusI,
        (false, false) => TwistCase::IndexTwoSubgroup,
    };
    let witness = if case == TwistCase::IndexTwoSubgroup {
        let h = g1.intersection(g2)?;
        debug_assert_eq!(h.sl_index.finite(), g1.sl_index.finite().map(|n| 2 * n));
        Some(h)
    } else {
        None
    };
    Ok(TwistClassification { case, witness })
}
