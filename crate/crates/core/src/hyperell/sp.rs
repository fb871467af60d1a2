//! Symplectic matrices over 𝔽₂ induced by permutations of Weierstrass points.
//!
//! The basis is `e_k = P_k + P_{k+1}` for `k = 0 … 2g-1`. An even subset
//! containing the last point is first replaced by its complement; the
//! remaining subset `v` on `P₀ … P_{2g}` has coordinates `c₀ = v₀`,
//! `c_k = v_k + c_{k-1}`. The pairing `|S ∩ T| mod 2` has Gram matrix with
//! ones exactly on the first off-diagonals.

use std::fmt;

use serde::{Serialize, Serializer};

/// A `dim × dim` matrix over 𝔽₂ stored by columns; bit `i` of `cols[j]` is
/// the entry in row `i`, column `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sp2gF2Element {
    cols: Vec<u32>,
}

impl Sp2gF2Element {
    pub fn identity(dim: usize) -> Self {
        assert!(dim <= 32, "dimension {dim} exceeds 32");
        Sp2gF2Element { cols: (0..dim).map(|j| 1 << j).collect() }
    }

    pub fn from_columns(cols: Vec<u32>) -> Self {
        Sp2gF2Element { cols }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let dim = rows.len();
        let cols = (0..dim)
            .map(|j| (0..dim).fold(0u32, |acc, i| acc | (((rows[i][j] & 1) as u32) << i)))
            .collect();
        Sp2gF2Element { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[u32] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        ((self.cols[j] >> i) & 1) as u8
    }

    /// `M v` for `v` a bit vector.
    pub fn apply(&self, v: u32) -> u32 {
        self.cols.iter().enumerate().fold(0, |acc, (j, &c)| if v >> j & 1 == 1 { acc ^ c } else { acc })
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        Sp2gF2Element { cols: rhs.cols.iter().map(|&c| self.apply(c)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        Sp2gF2Element {
            cols: (0..n).map(|j| (0..n).fold(0u32, |acc, i| acc | ((self.entry(j, i) as u32) << i))).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// `Mᵀ J M = J`.
    pub fn preserves(&self, j: &Sp2gF2Element) -> bool {
        self.transpose().mul(j).mul(self) == *j
    }

    /// Rows as strings of `0` and `1`.
    pub fn rows(&self) -> Vec<String> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| char::from(b'0' + self.entry(i, j))).collect()).collect()
    }
}

impl fmt::Display for Sp2gF2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rows().join(" "))
    }
}

impl Serialize for Sp2gF2Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// Gram matrix of the intersection pairing in the basis `P_k + P_{k+1}`.
pub fn sp_form(dim: usize) -> Sp2gF2Element {
    let cols = (0..dim)
        .map(|j| {
            let mut c = 0u32;
            if j > 0 {
                c |= 1 << (j - 1);
            }
            if j + 1 < dim {
                c |= 1 << (j + 1);
            }
            c
        })
        .collect();
    Sp2gF2Element { cols }
}

/// Coordinates of an even subset of `n` points (bit `i` = point `i`).
fn coordinates(mut v: u32, n: usize) -> u32 {
    if v >> (n - 1) & 1 == 1 {
        v ^= (1u32 << n) - 1;
    }
    let mut c = 0u32;
    let mut prev = 0;
    for k in 0..n - 2 {
        let ck = (v >> k & 1) ^ prev;
        c |= ck << k;
        prev = ck;
    }
    c
}

/// Action of a permutation of `2g+2` points (one-line, `perm[a] = b`) on
/// the 2-torsion, as a `2g × 2g` matrix over 𝔽₂.
pub fn permutation_to_sp(perm: &[usize]) -> Sp2gF2Element {
    let n = perm.len();
    assert!(n >= 4 && n.is_multiple_of(2) && n <= 33, "need an even number of points, got {n}");
    let cols = (0..n - 2).map(|k| coordinates((1 << perm[k]) | (1 << perm[k + 1]), n)).collect();
    Sp2gF2Element { cols }
}
