//! Pulling a family back along t ↦ t² gives a subgroup of index at most 2.

use monodromy::exact::Polynomial;
use monodromy::family::{monodromy_group, FamilySpec, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = RunOptions::default();
    let h = Polynomial::from_i64(&[0, 0, 1]);
    for fam in [
        FamilySpec::parse("y^2 = x^3 + t x + 1", "t", "1")?,
        FamilySpec::parse("legendre", "-(t^2 - t + 1)/3", "-(2*t^3 - 3*t^2 - 3*t + 2)/27")?,
    ] {
        let a = monodromy_group(&fam, &opts)?;
        let b = monodromy_group(&fam.pullback(&h), &opts)?;
        println!("{:<22} sl index {:>3}   pulled back {:>3}", fam.label, a.subgroup.sl_index, b.subgroup.sl_index);
    }
    Ok(())
}
