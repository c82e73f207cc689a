use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::sign::Sign;

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rational_sign(value: &Rational) -> Sign {
    if value.is_zero() {
        Sign::Zero
    } else if value.is_positive() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Rescale a vector by a positive factor so that its entries are coprime
/// integers. The zero vector is returned unchanged.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<Rational> {
    let mut denom_lcm = BigInt::one();
    for v in values {
        denom_lcm = denom_lcm.lcm(v.denom());
    }
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&denom_lcm / v.denom()))
        .collect();
    let mut content = BigInt::zero();
    for v in &scaled {
        content = content.gcd(v);
    }
    if content.is_zero() {
        return values.to_vec();
    }
    scaled
        .into_iter()
        .map(|v| Rational::from_integer(v / &content))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![q(2, 3), q(-4, 3), q(0, 1)];
        assert_eq!(
            primitive_integer_vector(&v),
            vec![q(1, 1), q(-2, 1), q(0, 1)]
        );
        let w = vec![q(2, 1); 6];
        assert_eq!(primitive_integer_vector(&w), vec![q(1, 1); 6]);
        assert_eq!(primitive_integer_vector(&[q(0, 1)]), vec![q(0, 1)]);
    }

    #[test]
    fn normalized_on_construction() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rational_sign(&r), Sign::Neg);
    }
}
