//! Lines through a point of the plane meeting the quartic x⁴ + y⁴ + 1 = 0.

use monodromy::exact::parse_bipoly;
use monodromy::family::{quartic_pencil_family, QuarticPencil, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = QuarticPencil { quartic: parse_bipoly("x^4 + y^4 + 1", "x", "y")?, base: None };
    let rep = quartic_pencil_family(&q, &RunOptions::default())?;
    println!("base point ({}, {})", rep.base_point[0], rep.base_point[1]);
    println!("G(u, t) = {}", rep.pencil);
    println!("{} tangent lines, {} lines through points at infinity", rep.tangency_punctures, rep.chart_punctures);
    println!("sl index {} (Weierstrass model: {})", rep.monodromy.subgroup.sl_index, rep.jacobian_sl_index);
    println!("j at the basepoint {:?}, from the cross-ratio {:?}", rep.j_at_basepoint, rep.j_cross_ratio);
    for (k, v) in &rep.checks {
        println!("{k:<40} {v}");
    }
    Ok(())
}
