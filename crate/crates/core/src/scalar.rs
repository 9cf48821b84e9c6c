use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field element.
///
/// Floating-point types are deliberately not admitted: every welfare and
/// ratio comparison in this crate must be exact.
pub trait Scalar: Clone + Debug + Display + Ord + Num + Signed + FromPrimitive + Send + Sync + 'static {
    /// `num / den` as an exact value.
    fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i64(num).expect("integer fits scalar") / Self::from_i64(den).expect("integer fits scalar")
    }

    fn from_count(count: usize) -> Self {
        Self::from_usize(count).expect("count fits scalar")
    }

    /// Convert between scalar representations through a numerator/denominator pair.
    fn convert<U: Scalar>(&self) -> U
    where
        Self: RatioParts,
    {
        let (num, den) = self.parts();
        U::from_i128(num).expect("numerator fits") / U::from_i128(den).expect("denominator fits")
    }
}

impl<T> Scalar for T where T: Clone + Debug + Display + Ord + Num + Signed + FromPrimitive + Send + Sync + 'static {}

/// Access to a reduced numerator/denominator pair as `i128`.
pub trait RatioParts {
    fn parts(&self) -> (i128, i128);
}

impl RatioParts for Ratio<num_bigint::BigInt> {
    fn parts(&self) -> (i128, i128) {
        use num_traits::ToPrimitive;
        (
            self.numer().to_i128().expect("numerator exceeds i128"),
            self.denom().to_i128().expect("denominator exceeds i128"),
        )
    }
}

impl RatioParts for Ratio<i64> {
    fn parts(&self) -> (i128, i128) {
        (*self.numer() as i128, *self.denom() as i128)
    }
}

impl RatioParts for Ratio<i128> {
    fn parts(&self) -> (i128, i128) {
        (*self.numer(), *self.denom())
    }
}

/// Least common multiple of `1..=n`, the common denominator of all `1/i`.
pub fn lcm_upto(n: usize) -> num_bigint::BigInt {
    use num_integer::Integer;
    (1..=n).fold(num_bigint::BigInt::from(1), |acc, i| acc.lcm(&num_bigint::BigInt::from(i)))
}
