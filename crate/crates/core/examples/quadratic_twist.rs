//! Twisting y² = x³ + tx + 1 by D = t and comparing lasso by lasso.

use monodromy::family::{verify_twist_relation, FamilySpec, RunOptions, TwistSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fam = FamilySpec::parse("y^2 = x^3 + t x + 1", "t", "1")?;
    let rep = verify_twist_relation(&fam, &TwistSpec::parse("t")?, &RunOptions::default())?;
    println!("twisted family: p = {}, q = {}", rep.twisted_family.p.display_with("t"), rep.twisted_family.q.display_with("t"));
    for ((m, c), t) in rep.original.matrices().iter().zip(&rep.chi).zip(&rep.twisted_matrices) {
        println!("{m}  chi {c:+}  ->  {t}");
    }
    println!("sl index {} -> {} (ratio {})", rep.original.subgroup.sl_index, rep.direct.sl_index, rep.sl_ratio);
    println!("case: {:?}", rep.classification.case);
    for (k, v) in &rep.checks {
        println!("{k:<48} {v}");
    }
    Ok(())
}
