//! The family y² = x³ + tx + 1 has monodromy all of SL(2,ℤ).

use monodromy::family::{monodromy_group, FamilySpec, RunOptions};
use monodromy::subgroup::mod_image;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = FamilySpec::parse("y^2 = x^3 + t x + 1", "t", "1")?;
    let rep = monodromy_group(&fam, &RunOptions::default())?;
    for l in &rep.lassos {
        let z = l.puncture.to_c64();
        println!("t = {:+.6}{:+.6}i  braid {:?}  matrix {}", z.re, z.im, l.braid.signed(), l.matrix);
    }
    println!("fiber at infinity: {}", rep.infinity_type);
    println!("sl index {}, psl index {}", rep.subgroup.sl_index, rep.subgroup.psl_index);
    println!("|mod 2 image| = {}, |mod 3 image| = {}", rep.subgroup.mod2_image_order, mod_image(&rep.matrices(), 3).len());
    for (k, v) in &rep.bounds_checked {
        println!("{k:<28} {v}");
    }
    Ok(())
}
