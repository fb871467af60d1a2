//! Mod-2 monodromy of a random line in the space of genus-3 curves
//! y² = x⁸ + a₆x⁶ + ⋯ + a₀.

use monodromy::family::RunOptions;
use monodromy::hyperell::{hyperell_bound, mod2_monodromy, sp2g_f2_order, universal_slice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(0);
    let fam = universal_slice(3, seed)?;
    println!("f = {}", fam.f.display_with("x", "t"));
    let rep = mod2_monodromy(&fam, &RunOptions::default())?;
    for (p, m) in rep.permutations.iter().zip(&rep.symplectic_generators) {
        println!("{p}   {m}");
    }
    println!("permutation group order {}", rep.permutation_group_order);
    println!("mod-2 group order {} in Sp(6, F2) of order {}", rep.group_order, rep.ambient_order);
    println!("index {} >= bound {}: sharp = {}", rep.index, rep.bound.as_ref().expect("g = 3"), rep.sharp);
    for g in 3..=6 {
        println!("g = {g}: |Sp(2g, F2)| = {}, bound {}", sp2g_f2_order(g), hyperell_bound(g)?);
    }
    Ok(())
}
