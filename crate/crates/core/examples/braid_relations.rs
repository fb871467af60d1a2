//! The representations of B₃ and B₄ in SL(2,ℤ), and a braid read off a
//! tracked loop.

use monodromy::braid::{extract_braid, mu3, mu4, mu_a, mu_b, permutation_of, track_roots, BraidWord, PathPlan, TrackOptions};
use monodromy::exact::{parse_bipoly, rat, ComplexRational, C64};
use monodromy::sl2::SL2Matrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (a, b) = (mu_a(), mu_b());
    let aba = &(&a * &b) * &a;
    let bab = &(&b * &a) * &b;
    let ab = &a * &b;
    println!("mu(A) = {a}, mu(B) = {b}");
    println!("ABA = BAB: {}", aba == bab);
    println!("(AB)^3 = -I: {}", &(&ab * &ab) * &ab == SL2Matrix::minus_identity());

    let full_twist = BraidWord::from_signed(4, &[1, 2, 3, 1, 2, 1, 1, 2, 3, 1, 2, 1])?;
    println!("mu4 of the full twist on 4 strands: {}", mu4(&full_twist)?);

    // Roots of x³ - t around the circle |t| = 1.
    let f = parse_bipoly("x^3 - t", "x", "t")?;
    let start = ComplexRational::new(rat(1), rat(0));
    let path = PathPlan::circle(ComplexRational::new(rat(0), rat(0)), start, 1);
    let tracked = track_roots(&f, &path, &TrackOptions::default())?;
    let word = extract_braid(&tracked, C64::c(1.0, 0.1))?;
    println!("braid of x^3 - t around 0: {:?}", word.signed());
    println!("permutation: {:?}", permutation_of(&word));
    println!("mu3: {}", mu3(&word)?);
    Ok(())
}
