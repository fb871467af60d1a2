//! Legendre family y² = x(x-1)(x-t), written in depressed form.

use monodromy::family::{j_map, monodromy_group, FamilySpec, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = FamilySpec::parse("legendre", "-(t^2 - t + 1)/3", "-(2*t^3 - 3*t^2 - 3*t + 2)/27")?;
    let jm = j_map(&fam);
    println!("J = {}  (degree {})", jm.j.display_with("t"), jm.deg_j);
    let rep = monodromy_group(&fam, &RunOptions::default())?;
    for l in &rep.lassos {
        let z = l.puncture.to_c64();
        let ty = l.kodaira_type.map(|k| k.to_string()).unwrap_or_default();
        println!("{ty:<4} at t = {:+.6}{:+.6}i: {}", z.re, z.im, l.matrix);
    }
    println!("infinity: {}, product of lassos {}", rep.infinity_type, rep.product);
    println!(
        "psl index {}, sl index {}, contains -I {:?}, |mod 2 image| {}",
        rep.subgroup.psl_index, rep.subgroup.sl_index, rep.subgroup.contains_minus_i, rep.subgroup.mod2_image_order
    );
    println!("all bounds hold: {}", rep.all_bounds_hold());
    Ok(())
}
