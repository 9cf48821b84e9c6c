//! Closed-form bounds on `p(n, n)` and the square-root lower-bound construction.
//!
//! Bounds involving `sqrt(n)` are decided exactly by squaring after the
//! signs of both sides are known.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::UtilityMatrix;
use crate::scalar::Scalar;
use crate::structure::CanonicalInstance;

pub fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `a = k = floor(sqrt n)` agents with disjoint blocks of `k` items at `1/k`
/// (agent `t` holds block `t`), the remaining agents uniform.
pub fn lower_construction<T: Scalar>(n: usize) -> UtilityMatrix<T> {
    assert!(n >= 1);
    let k = isqrt(n);
    let mut supports: Vec<Vec<usize>> = (0..k).map(|t| (t * k..(t + 1) * k).collect()).collect();
    supports.extend(std::iter::repeat_n((0..n).collect(), n - k));
    CanonicalInstance::new(n, supports).expect("disjoint blocks").to_matrix()
}

/// `(a + (n - a k)/n) / (a/k + (n - a)/n)` with `a = k = floor(sqrt n)`.
pub fn construction_ratio<T: Scalar>(n: usize) -> T {
    assert!(n >= 1);
    let k = isqrt(n);
    let nn = T::from_count(n);
    let top = T::from_count(k) + T::from_count(n - k * k) / nn.clone();
    let bottom = T::one() + T::from_count(n - k) / nn;
    top / bottom
}

/// `g(d) = n (d + 1) / (d^2 + n)`.
pub fn g_of_d<T: Scalar>(n: usize, d: &T) -> T {
    let nn = T::from_count(n);
    nn.clone() * (d.clone() + T::one()) / (d.clone() * d.clone() + nn)
}

/// Largest `g(d)` over integer `d` in `0..=n`.
pub fn upper_g_max<T: Scalar>(n: usize) -> T {
    (0..=n).map(|d| g_of_d(n, &T::from_count(d))).max().expect("nonempty range")
}

/// `p <= max(1, sqrt(n)/2 + 1/n + 1)`.
pub fn check_upper_bound<T: Scalar>(n: usize, p: &T) -> bool {
    assert!(n >= 1);
    let excess = p.clone() - T::one() - T::one() / T::from_count(n);
    if *p <= T::one() || !excess.is_positive() {
        return true;
    }
    let twice = excess * T::from_count(2);
    twice.clone() * twice <= T::from_count(n)
}

/// `p >= sqrt(n)/2 - 1/2`, i.e. `(2p + 1)^2 >= n` for `p >= 0`.
pub fn check_lower_bound<T: Scalar>(n: usize, p: &T) -> bool {
    let lhs = p.clone() * T::from_count(2) + T::one();
    if lhs.is_negative() {
        return false;
    }
    lhs.clone() * lhs >= T::from_count(n)
}

/// Known interval `((3n + 7)/9, n - 1/2)` for the price with unrestricted items.
pub fn pof_n_interval<T: Scalar>(n: usize) -> Result<(T, T)> {
    if n < 2 {
        return Err(Error::DomainError(format!("interval holds for n > 1, got {n}")));
    }
    let nn = T::from_count(n);
    let lower = (T::from_count(3) * nn.clone() + T::from_count(7)) / T::from_count(9);
    let upper = nn - T::frac(1, 2);
    Ok((lower, upper))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct BoundReport<T> {
    pub n: usize,
    #[serde(serialize_with = "crate::io::ser_display")]
    pub lower_construction_ratio: T,
    #[serde(serialize_with = "crate::io::ser_display")]
    pub upper_g_max: T,
    #[serde(serialize_with = "crate::io::ser_display_opt")]
    pub p_exact: Option<T>,
    pub checks: Vec<BoundCheck>,
}

impl<T: Scalar> BoundReport<T> {
    pub fn new(n: usize, p_exact: Option<T>) -> Self {
        let lower = construction_ratio::<T>(n);
        let upper = upper_g_max::<T>(n);
        let mut checks = vec![BoundCheck { name: "construction<=g_max", holds: lower <= upper }];
        if let Some(p) = &p_exact {
            checks.push(BoundCheck { name: "construction<=p", holds: lower <= *p });
            checks.push(BoundCheck { name: "p<=g_max", holds: *p <= upper });
            checks.push(BoundCheck { name: "sqrt_lower", holds: check_lower_bound(n, p) });
            checks.push(BoundCheck { name: "sqrt_upper", holds: check_upper_bound(n, p) });
        }
        BoundReport { n, lower_construction_ratio: lower, upper_g_max: upper, p_exact, checks }
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::welfare::price_ratio;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn integer_square_root() {
        for n in 0..2000usize {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }

    #[test]
    fn construction_examples() {
        assert_eq!(construction_ratio::<Rational>(9), q(9, 5));
        assert_eq!(construction_ratio::<Rational>(5), q(11, 8));
        assert_eq!(construction_ratio::<Rational>(1), q(1, 1));
        let x9 = lower_construction::<Rational>(9);
        assert_eq!(x9.columns()[1][3..6], [q(1, 3), q(1, 3), q(1, 3)]);
        assert_eq!(price_ratio(&x9).unwrap().ratio, Some(q(9, 5)));
        assert_eq!(price_ratio(&lower_construction::<Rational>(4)).unwrap().ratio, Some(q(4, 3)));
        assert_eq!(lower_construction::<Rational>(1), UtilityMatrix::diagonal(1));
    }

    #[test]
    fn g_values() {
        assert_eq!(g_of_d(7, &q(0, 1)), q(1, 1));
        assert_eq!(g_of_d(7, &q(7, 1)), q(1, 1));
        assert_eq!(g_of_d(8, &q(2, 1)), q(2, 1));
    }

    #[test]
    fn upper_check_examples() {
        assert!(check_upper_bound(9, &q(9, 5)));
        assert!(check_upper_bound(4, &q(4, 3)));
        for n in 1..50 {
            assert!(check_upper_bound(n, &q(1, 1)));
        }
        // sqrt(9)/2 + 1/9 + 1 = 47/18 exactly
        assert!(check_upper_bound(9, &q(47, 18)));
        assert!(!check_upper_bound(9, &(q(47, 18) + q(1, 1000))));
    }

    #[test]
    fn lower_check_examples() {
        assert!(check_lower_bound(9, &q(9, 5)));
        assert!(check_lower_bound(2, &q(1, 1)));
        assert!(!check_lower_bound(100, &q(2, 1)));
        // (2 * 9/2 + 1)^2 = 100: equality holds
        assert!(check_lower_bound(100, &q(9, 2)));
    }

    #[test]
    fn interval() {
        assert_eq!(pof_n_interval::<Rational>(2).unwrap(), (q(13, 9), q(3, 2)));
        assert_eq!(pof_n_interval::<Rational>(9).unwrap(), (q(34, 9), q(17, 2)));
        assert!(matches!(pof_n_interval::<Rational>(1), Err(Error::DomainError(_))));
    }

    #[test]
    fn report_for_nine() {
        let r = BoundReport::new(9, Some(q(9, 5)));
        assert!(r.holds());
        assert_eq!(r.lower_construction_ratio, q(9, 5));
    }
}
