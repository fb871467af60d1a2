use num_traits::Zero;

use super::poly::{rat, Rational};
use super::ratfunc::RationalFunction;
use super::ExactError;

/// `4p³ + 27q²`. The discriminant of `z³ + pz + q` is the negative of this;
/// only the zero locus is used downstream, so the positive normalization is
/// the one returned everywhere.
pub fn discriminant_cubic(p: &RationalFunction, q: &RationalFunction) -> RationalFunction {
    &p.pow(3).scale(&rat(4)) + &q.pow(2).scale(&rat(27))
}

/// `j = 1728 · 4p³ / (4p³ + 27q²)`, reduced.
pub fn j_invariant(p: &RationalFunction, q: &RationalFunction) -> Result<RationalFunction, ExactError> {
    let d = discriminant_cubic(p, q);
    if d.is_zero() {
        return Err(ExactError::DegenerateCurve);
    }
    Ok(&p.pow(3).scale(&rat(1728 * 4)) / &d)
}

pub fn j_invariant_rational(p: &Rational, q: &Rational) -> Result<Rational, ExactError> {
    let p3 = p * p * p;
    let d = &p3 * rat(4) + q * q * rat(27);
    if d.is_zero() {
        return Err(ExactError::DegenerateCurve);
    }
    Ok(p3 * rat(1728 * 4) / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, Polynomial};

    fn c(n: i64) -> RationalFunction {
        RationalFunction::constant(rat(n))
    }

    #[test]
    fn discriminant_examples() {
        assert!(discriminant_cubic(&c(0), &c(0)).is_zero());
        assert!(discriminant_cubic(&c(-3), &c(2)).is_zero());
        let t = RationalFunction::var();
        assert_eq!(discriminant_cubic(&t, &c(1)), RationalFunction::from_poly(Polynomial::from_i64(&[27, 0, 0, 4])));
    }

    #[test]
    fn j_examples() {
        assert_eq!(j_invariant_rational(&rat(0), &rat(1)).unwrap(), rat(0));
        assert_eq!(j_invariant_rational(&rat(1), &rat(0)).unwrap(), rat(1728));
        assert_eq!(j_invariant_rational(&rat(1), &rat(1)).unwrap(), ratio(6912, 31));
        assert_eq!(j_invariant(&c(1), &c(1)).unwrap(), RationalFunction::constant(ratio(6912, 31)));
        assert_eq!(j_invariant(&c(-3), &c(2)), Err(ExactError::DegenerateCurve));
        assert_eq!(j_invariant_rational(&rat(0), &rat(0)), Err(ExactError::DegenerateCurve));
    }
}
