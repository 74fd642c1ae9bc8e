//! The exact integer scalar all algebra in this crate is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

/// An exact, signed integer type.
///
/// Implemented for every type with the listed capabilities; in practice
/// [`BigInt`] (the default, see [`crate::Int`]), `i64` and `i128`. Fixed
/// width scalars do not detect overflow and are only meant for small inputs.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + From<i64> + Into<BigInt> + Send + Sync + 'static
{
    /// The value reduced into `0..modulus`.
    fn residue(&self, modulus: u64) -> u64 {
        let m = Self::from(modulus as i64);
        let r = self.mod_floor(&m);
        let big: BigInt = r.into();
        u64::try_from(big).expect("residue lies in 0..modulus")
    }

    /// `self^exp` by repeated squaring.
    fn pow_u32(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + From<i64> + Into<BigInt> + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_is_nonnegative() {
        assert_eq!((-3i64).residue(5), 2);
        assert_eq!(BigInt::from(-10).residue(5), 0);
        assert_eq!(7i128.residue(5), 2);
    }

    #[test]
    fn pow_matches_repeated_product() {
        assert_eq!(3i64.pow_u32(0), 1);
        assert_eq!(3i64.pow_u32(5), 243);
        assert_eq!(BigInt::from(-2).pow_u32(65), -(BigInt::from(1) << 65u32));
    }
}
