//! Index, -I membership and finite images of subgroups of SL(2,ℤ).

use monodromy::sl2::SL2Matrix;
use monodromy::subgroup::{gamma2_generators, mod_image, schreier_bound, SubgroupDescriptor, DEFAULT_MAX_COSETS};

fn show(name: &str, gens: &[SL2Matrix]) {
    let d = SubgroupDescriptor::compute(gens, DEFAULT_MAX_COSETS);
    println!(
        "{name:<14} psl {:<4} sl {:<4} -I {:?}  |mod 2| {}  |mod 3| {}",
        d.psl_index.to_string(),
        d.sl_index.to_string(),
        d.contains_minus_i,
        d.mod2_image_order,
        mod_image(gens, 3).len()
    );
}

fn main() {
    show("SL(2,Z)", &[SL2Matrix::s(), SL2Matrix::t()]);
    show("Gamma(2)", &gamma2_generators());
    show("<T^2, L^2>", &[SL2Matrix::from_i64(1, 2, 0, 1), SL2Matrix::from_i64(1, 0, -2, 1)]);
    show("Gamma0(3)", &[SL2Matrix::t(), SL2Matrix::from_i64(1, 0, 3, 1), SL2Matrix::minus_identity()]);
    show("<T>", &[SL2Matrix::t()]);
    for r in 2..=5 {
        println!("Schreier bound for r = {r}: {}", schreier_bound(r).expect("r >= 2"));
    }
}
