//! Exact `p(n, n)` through the aggregated integer program over support-size
//! profiles.
//!
//! A profile `s` counts agents by support size (`s[i - 1]` agents value `i`
//! items at `1/i` each); `r[i - 1]` counts items whose optimal holder values
//! them at `1/i`, bounded by `i * s_i`. The price ratio of a profile is
//! `(sum r_i / i) / (sum s_i / i)`. For fixed `s` the best `r` fills the
//! smallest sizes first, so every search here ranges over `s` alone.

mod fractional;
mod search;

pub use fractional::{solve_p_nn, sparse_witness_exists};
pub use search::{lemma4_candidates, solve_alpha};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest `n` accepted by [`SearchKind::FullEnumeration`].
pub const FULL_ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolveMode {
    /// Dinkelbach iteration on the parametric objective.
    #[default]
    ExactFractional,
    /// Interval halving on the sign of the parametric objective.
    Bisection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchKind {
    /// Profiles supported on `{k-1, k, n}` only.
    #[default]
    Lemma4Restricted,
    /// Every profile, with branch-and-bound pruning.
    FullEnumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    pub mode: SolveMode,
    pub search: SearchKind,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub workers: Option<usize>,
}

impl SolveOptions {
    pub fn with_search(search: SearchKind) -> Self {
        SolveOptions { search, ..Default::default() }
    }

    pub fn with_mode(mode: SolveMode) -> Self {
        SolveOptions { mode, ..Default::default() }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::DomainError("n must be at least 1".into()));
        }
        if self.search == SearchKind::FullEnumeration && n > FULL_ENUMERATION_LIMIT {
            return Err(Error::GuardViolation(format!(
                "full enumeration is limited to n <= {FULL_ENUMERATION_LIMIT}, got {n}"
            )));
        }
        Ok(())
    }

    pub(crate) fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.workers {
            Some(w) => rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build().expect("thread pool").install(f),
            None => f(),
        }
    }
}

/// A profile pair `(s, r)` and the ratio it certifies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct StructuredWitness<T> {
    pub s: Vec<usize>,
    pub r: Vec<usize>,
    #[serde(serialize_with = "crate::io::ser_display")]
    pub ratio: T,
}

impl<T: Scalar> StructuredWitness<T> {
    /// Witness for profile `s` with the greedy item fill.
    pub fn from_profile(s: Vec<usize>) -> Self {
        let r = greedy_fill(&s);
        let (num, den) = totals::<T>(&s, &r);
        StructuredWitness { s, r, ratio: num / den }
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// `(sum r_i / i, sum s_i / i)`.
    pub fn totals(&self) -> (T, T) {
        totals(&self.s, &self.r)
    }

    /// Number of distinct support sizes in use.
    pub fn support_count(&self) -> usize {
        self.s.iter().filter(|&&c| c > 0).count()
    }

    /// Items needed to lay the partial supports out disjointly.
    pub fn block_items(&self) -> usize {
        let n = self.n();
        (1..n).map(|i| i * self.s[i - 1]).sum()
    }

    pub fn is_realizable(&self) -> bool {
        self.block_items() <= self.n()
    }

    /// Feasibility of the pair and consistency of the stored ratio.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.r.len() != n || self.s.iter().sum::<usize>() != n || self.r.iter().sum::<usize>() != n {
            return Err(Error::InvalidWitness("s and r must have length n and sum to n".into()));
        }
        if let Some(i) = (1..=n).find(|&i| self.r[i - 1] > i * self.s[i - 1]) {
            return Err(Error::InvalidWitness(format!("r_{i} exceeds {i} * s_{i}")));
        }
        let (num, den) = self.totals();
        if num / den != self.ratio {
            return Err(Error::InvalidWitness(format!("stored ratio {} is not attained", self.ratio)));
        }
        Ok(())
    }
}

/// Best `r` for a fixed profile: fill the smallest support sizes first.
pub fn greedy_fill(s: &[usize]) -> Vec<usize> {
    let mut left = s.len();
    s.iter()
        .enumerate()
        .map(|(idx, &count)| {
            let take = ((idx + 1) * count).min(left);
            left -= take;
            take
        })
        .collect()
}

fn totals<T: Scalar>(s: &[usize], r: &[usize]) -> (T, T) {
    let mut num = T::zero();
    let mut den = T::zero();
    for (idx, (&si, &ri)) in s.iter().zip(r).enumerate() {
        let size = T::from_count(idx + 1);
        if ri > 0 {
            num = num + T::from_count(ri) / size.clone();
        }
        if si > 0 {
            den = den + T::from_count(si) / size;
        }
    }
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn greedy_fill_smallest_first() {
        assert_eq!(greedy_fill(&[0, 1, 1, 0, 3]), vec![0, 2, 3, 0, 0]);
        assert_eq!(greedy_fill(&[0, 0, 0, 0, 5]), vec![0, 0, 0, 0, 5]);
        assert_eq!(greedy_fill(&[0, 3, 0, 1]), vec![0, 4, 0, 0]);
    }

    #[test]
    fn witness_ratio_and_validation() {
        let w: StructuredWitness<Rational> = StructuredWitness::from_profile(vec![0, 2, 1, 0, 0, 0, 4]);
        assert_eq!(w.r, vec![0, 4, 3, 0, 0, 0, 0]);
        assert_eq!(w.ratio, Rational::frac(63, 40));
        assert_eq!(w.support_count(), 3);
        assert!(w.is_realizable());
        w.validate().unwrap();
        let bad = StructuredWitness { ratio: Rational::frac(2, 1), ..w };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn guard_on_full_enumeration() {
        let o = SolveOptions::with_search(SearchKind::FullEnumeration);
        assert!(o.check(12).is_ok());
        assert!(matches!(o.check(13), Err(Error::GuardViolation(_))));
        assert!(SolveOptions::default().check(100).is_ok());
    }
}
