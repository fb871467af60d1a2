//! Root continuation along paths, braid extraction, and the maps from braid
//! groups to SL(2,ℤ) and to permutations.

mod path;
mod track;
mod word;

use thiserror::Error;

use crate::exact::ComplexValue;

pub use path::{PathPlan, Segment};
pub use track::{track_roots, TrackOptions, TrackedStrands};
pub use word::{compose, extract_braid, mu3, mu4, mu_a, mu_b, permutation_of, strand_positions, BraidWord};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error("root separation could not be certified near t = {t:?}")]
    DiscriminantHit { t: ComplexValue },
    #[error("root tracking failed at the maximum precision of {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("projection direction is not generic for these strands")]
    NonGenericProjection,
    #[error("braid has {got} strands, expected {expected}")]
    WrongStrandCount { expected: usize, got: usize },
    #[error("letter σ{position} is invalid on {strands} strands")]
    InvalidLetter { position: u32, strands: usize },
    #[error("polynomial has no roots to track")]
    NoStrands,
}
