//! Parsing, discriminants, j-invariants and certified roots.

use monodromy::exact::{certified_roots, discriminant_cubic, j_invariant, parse_rational_function, DEFAULT_MAX_PRECISION};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse_rational_function("t", "t")?;
    let q = parse_rational_function("1", "t")?;
    let d = discriminant_cubic(&p, &q);
    println!("4p^3 + 27q^2 = {}", d.display_with("t"));
    println!("J = {}", j_invariant(&p, &q)?.display_with("t"));
    for r in certified_roots(d.num(), 128, DEFAULT_MAX_PRECISION)? {
        let z = r.approx();
        println!("root {:+.15} {:+.15}i  radius {:.1e}  multiplicity {}", z.re, z.im, r.radius, r.multiplicity);
    }
    Ok(())
}
