//! Kodaira fibers of y² = x³ + x + t and the index bound 2Σe.

use monodromy::family::{monodromy_group, FamilySpec, RunOptions};
use monodromy::kodaira::surface_bound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = FamilySpec::parse("y^2 = x^3 + x + t", "1", "t")?;
    let sb = surface_bound(&fam)?;
    for p in &sb.places {
        println!(
            "{:<12} x{}  ord(c4, c6, disc) = ({:?}, {:?}, {})  {}  e = {}",
            p.place, p.count, p.ord_c4, p.ord_c6, p.ord_disc, p.kodaira_type, p.e_value
        );
    }
    println!("sum e = {} = deg J = {}, bound {}", sb.sum_e, sb.deg_j, sb.bound);
    let rep = monodromy_group(&fam, &RunOptions::default())?;
    println!("computed sl index {} <= {}", rep.subgroup.sl_index, sb.bound);
    Ok(())
}
