//! Monodromy groups of one-parameter families of genus-1 and hyperelliptic
//! curves, computed by numerical braid tracking and exact group theory.

pub mod braid;
pub mod cli;
pub mod exact;
pub mod family;
pub mod hyperell;
pub mod kodaira;
pub mod sl2;
pub mod subgroup;
