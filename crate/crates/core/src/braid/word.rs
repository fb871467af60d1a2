use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::track::TrackedStrands;
use super::BraidError;
use crate::exact::C64;
use crate::sl2::SL2Matrix;

/// A word in the Artin generators `σ₁, …, σ_{n-1}`, stored as extracted
/// (unreduced). Serialized as `{"strands": n, "letters": [i or -i, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(u32, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(u32, i8)>) -> Result<Self, BraidError> {
        for &(i, s) in &letters {
            if i == 0 || i as usize >= strands || (s != 1 && s != -1) {
                return Err(BraidError::InvalidLetter { position: i, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// From signed integers: `i` for `σᵢ`, `-i` for `σᵢ⁻¹`.
    pub fn from_signed(strands: usize, letters: &[i32]) -> Result<Self, BraidError> {
        Self::new(strands, letters.iter().map(|&l| (l.unsigned_abs(), if l < 0 { -1 } else { 1 })).collect())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(u32, i8)] {
        &self.letters
    }

    pub fn signed(&self) -> Vec<i32> {
        self.letters.iter().map(|&(i, s)| i as i32 * s as i32).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect() }
    }

    /// Free reduction: cancels adjacent `σᵢ σᵢ⁻¹` pairs.
    pub fn reduced(&self) -> BraidWord {
        let mut out: Vec<(u32, i8)> = Vec::with_capacity(self.letters.len());
        for &(i, s) in &self.letters {
            if out.last() == Some(&(i, -s)) {
                out.pop();
            } else {
                out.push((i, s));
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Conjugate `c · self · c⁻¹`.
    pub fn conjugated_by(&self, c: &BraidWord) -> BraidWord {
        c.concat(self).concat(&c.inverse())
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            strands: usize,
            letters: Vec<i32>,
        }
        Repr { strands: self.strands, letters: self.signed() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            strands: usize,
            letters: Vec<i32>,
        }
        let r = Repr::deserialize(d)?;
        BraidWord::from_signed(r.strands, &r.letters).map_err(D::Error::custom)
    }
}

/// Reads a braid word from strands of a closed loop, using the projection
/// onto the real line spanned by `direction`.
///
/// Strands are ordered by the projection `a = Re(z·d̄)`. Whenever two strands
/// at positions `i, i+1` swap, the letter `σᵢ` is emitted with sign `+1` if
/// the strand coming from the left passes with the smaller transverse
/// coordinate `b = Im(z·d̄)`, and `-1` otherwise. With this convention a
/// counterclockwise loop around the origin for `x² - t` reads `σ₁`.
pub fn extract_braid(strands: &TrackedStrands, direction: C64) -> Result<BraidWord, BraidError> {
    let n = strands.strands();
    let d = direction * C64::c(1.0 / direction.norm(), 0.0);
    let d_conj = d.conj();
    let project = |k: usize| -> Vec<(f64, f64)> {
        strands.samples[k]
            .iter()
            .map(|v| {
                let w = v.to_c64() * d_conj;
                (w.re, w.im)
            })
            .collect()
    };
    let mut prev = project(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| prev[i].0.total_cmp(&prev[j].0));
    if (1..n).any(|p| prev[order[p]].0 == prev[order[p - 1]].0) {
        return Err(BraidError::NonGenericProjection);
    }
    let mut pos = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let mut letters = Vec::new();
    for k in 1..strands.samples.len() {
        let cur = project(k);
        let mut events: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let d0 = prev[i].0 - prev[j].0;
                let d1 = cur[i].0 - cur[j].0;
                if d1 == 0.0 {
                    return Err(BraidError::NonGenericProjection);
                }
                if (d0 < 0.0) != (d1 < 0.0) {
                    events.push((d0 / (d0 - d1), i, j));
                }
            }
        }
        events.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in events.windows(2) {
            if w[1].0 - w[0].0 <= f64::EPSILON * 4.0 {
                let shares = w[0].1 == w[1].1 || w[0].1 == w[1].2 || w[0].2 == w[1].1 || w[0].2 == w[1].2;
                if shares {
                    return Err(BraidError::NonGenericProjection);
                }
            }
        }
        for (tau, i, j) in events {
            let (pi, pj) = (pos[i], pos[j]);
            if pi.abs_diff(pj) != 1 {
                return Err(BraidError::NonGenericProjection);
            }
            let (left, right) = if pi < pj { (i, j) } else { (j, i) };
            let b = |s: usize| prev[s].1 + tau * (cur[s].1 - prev[s].1);
            let (bl, br) = (b(left), b(right));
            if bl == br {
                return Err(BraidError::NonGenericProjection);
            }
            let p = pi.min(pj);
            letters.push((p as u32 + 1, if bl < br { 1 } else { -1 }));
            order.swap(p, p + 1);
            pos[order[p]] = p;
            pos[order[p + 1]] = p + 1;
        }
        prev = cur;
    }
    Ok(BraidWord { strands: n, letters })
}

/// Positions of strands, initially sorted by projection, for checking the
/// word against the tracked endpoints: `(start_position, end_position)` of
/// each strand.
pub fn strand_positions(strands: &TrackedStrands, direction: C64) -> (Vec<usize>, Vec<usize>) {
    let d_conj = (direction * C64::c(1.0 / direction.norm(), 0.0)).conj();
    let rank = |pts: Vec<C64>| {
        let a: Vec<f64> = pts.iter().map(|z| (*z * d_conj).re).collect();
        let mut order: Vec<usize> = (0..a.len()).collect();
        order.sort_by(|&i, &j| a[i].total_cmp(&a[j]));
        let mut pos = vec![0; a.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        pos
    };
    (rank(strands.start()), rank(strands.finish()))
}

/// `μ(A) = [[1,0],[-1,1]]`.
pub fn mu_a() -> SL2Matrix {
    SL2Matrix::from_i64(1, 0, -1, 1)
}

/// `μ(B) = [[1,1],[0,1]]`.
pub fn mu_b() -> SL2Matrix {
    SL2Matrix::from_i64(1, 1, 0, 1)
}

fn represent(word: &BraidWord, images: &[SL2Matrix]) -> SL2Matrix {
    let inv: Vec<SL2Matrix> = images.iter().map(SL2Matrix::inverse).collect();
    word.letters.iter().fold(SL2Matrix::identity(), |acc, &(i, s)| {
        let k = i as usize - 1;
        &acc * if s > 0 { &images[k] } else { &inv[k] }
    })
}

/// `σ₁ ↦ μ(A)`, `σ₂ ↦ μ(B)`, multiplied left to right.
pub fn mu3(word: &BraidWord) -> Result<SL2Matrix, BraidError> {
    if word.strands != 3 {
        return Err(BraidError::WrongStrandCount { expected: 3, got: word.strands });
    }
    Ok(represent(word, &[mu_a(), mu_b()]))
}

/// `σ₁, σ₃ ↦ μ(A)`, `σ₂ ↦ μ(B)`.
pub fn mu4(word: &BraidWord) -> Result<SL2Matrix, BraidError> {
    if word.strands != 4 {
        return Err(BraidError::WrongStrandCount { expected: 4, got: word.strands });
    }
    Ok(represent(word, &[mu_a(), mu_b(), mu_a()]))
}

/// Underlying permutation in one-line form: the strand starting at position
/// `p` ends at position `perm[p]` (0-based), with `σᵢ` swapping positions
/// `i-1` and `i`.
pub fn permutation_of(word: &BraidWord) -> Vec<usize> {
    let n = word.strands;
    // at[p] = starting position of the strand now at p
    let mut at: Vec<usize> = (0..n).collect();
    for &(i, _) in &word.letters {
        at.swap(i as usize - 1, i as usize);
    }
    let mut perm = vec![0; n];
    for (p, &start) in at.iter().enumerate() {
        perm[start] = p;
    }
    perm
}

/// Product of one-line permutations, applying `a` first.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, l).unwrap()
    }

    #[test]
    fn mu3_relations() {
        assert!(mu3(&w(3, &[])).unwrap().is_identity());
        assert_eq!(mu3(&w(3, &[1, 2, 1])).unwrap(), mu3(&w(3, &[2, 1, 2])).unwrap());
        assert_eq!(mu3(&w(3, &[1, 2, 1, 2, 1, 2])).unwrap(), SL2Matrix::minus_identity());
        assert_eq!(mu3(&w(4, &[1])), Err(BraidError::WrongStrandCount { expected: 3, got: 4 }));
    }

    #[test]
    fn mu4_relations() {
        assert!(mu4(&w(4, &[])).unwrap().is_identity());
        assert!(mu4(&w(4, &[1, -3])).unwrap().is_identity());
        assert_eq!(mu4(&w(4, &[1, 2, 1])).unwrap(), mu4(&w(4, &[2, 1, 2])).unwrap());
        assert_eq!(mu4(&w(4, &[2, 3, 2])).unwrap(), mu4(&w(4, &[3, 2, 3])).unwrap());
        assert_eq!(mu4(&w(4, &[1, 3])).unwrap(), mu4(&w(4, &[3, 1])).unwrap());
        assert!(mu4(&w(3, &[1])).is_err());
    }

    #[test]
    fn permutations() {
        assert_eq!(permutation_of(&w(3, &[])), vec![0, 1, 2]);
        let p = permutation_of(&w(3, &[1, 2]));
        assert!((0..3).all(|i| p[i] != i));
        assert_eq!(permutation_of(&w(3, &[1])), vec![1, 0, 2]);
    }

    #[test]
    fn letters_are_validated() {
        assert!(BraidWord::from_signed(3, &[3]).is_err());
        assert!(BraidWord::from_signed(3, &[0]).is_err());
        let word = w(4, &[1, -2, 3, -3, 2]);
        assert_eq!(word.reduced().signed(), vec![1]);
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, r#"{"strands":4,"letters":[1,-2,3,-3,2]}"#);
        let back: BraidWord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, word);
        assert!(serde_json::from_str::<BraidWord>(r#"{"strands":2,"letters":[2]}"#).is_err());
    }

    fn arb_word(n: usize) -> impl Strategy<Value = BraidWord> {
        proptest::collection::vec((1..n as i32, prop_oneof![Just(1), Just(-1)]), 0..30)
            .prop_map(move |v| BraidWord::from_signed(n, &v.iter().map(|(i, s)| i * s).collect::<Vec<_>>()).unwrap())
    }

    proptest! {
        #[test]
        fn representations_are_multiplicative(a in arb_word(4), b in arb_word(4)) {
            let ab = a.concat(&b);
            prop_assert_eq!(mu4(&ab).unwrap(), &mu4(&a).unwrap() * &mu4(&b).unwrap());
            prop_assert_eq!(permutation_of(&ab), compose(&permutation_of(&a), &permutation_of(&b)));
            prop_assert!(mu4(&a.concat(&a.inverse())).unwrap().is_identity());
            prop_assert_eq!(permutation_of(&a.concat(&a.inverse())), vec![0, 1, 2, 3]);
            prop_assert_eq!(mu4(&a.reduced()).unwrap(), mu4(&a).unwrap());
        }

        #[test]
        fn mu3_is_multiplicative(a in arb_word(3), b in arb_word(3)) {
            prop_assert_eq!(mu3(&a.concat(&b)).unwrap(), &mu3(&a).unwrap() * &mu3(&b).unwrap());
        }
    }
}
