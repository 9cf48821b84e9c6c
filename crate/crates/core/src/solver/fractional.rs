use crate::error::Result;
use crate::scalar::Scalar;

use super::search::ProfileSearch;
use super::{SearchKind, SolveMode, SolveOptions, StructuredWitness};

/// Exact `p(n, n)` with the lexicographically smallest optimal profile.
///
/// Both modes end with a solve at the reported ratio whose objective is
/// exactly zero, which certifies optimality.
pub fn solve_p_nn<T: Scalar>(n: usize, options: &SolveOptions) -> Result<StructuredWitness<T>> {
    options.check(n)?;
    let search = ProfileSearch::new(n, options.search);
    Ok(options.run(|| match options.mode {
        SolveMode::ExactFractional => dinkelbach(&search),
        SolveMode::Bisection => bisection(&search, n),
    }))
}

fn dinkelbach<T: Scalar>(search: &ProfileSearch<T>) -> StructuredWitness<T> {
    let mut alpha = T::one();
    loop {
        let (value, witness) = search.best(&alpha);
        if value.is_zero() {
            return witness;
        }
        // a positive maximum means the maximizer's ratio exceeds alpha
        debug_assert!(value.is_positive() && witness.ratio > alpha);
        alpha = witness.ratio;
    }
}

/// Halve `[lo, hi]` on the sign of the parametric optimum. Whenever the
/// maximizer at the midpoint improves on the best ratio seen, test that
/// ratio for a zero optimum and stop once it passes.
fn bisection<T: Scalar>(search: &ProfileSearch<T>, n: usize) -> StructuredWitness<T> {
    let two = T::from_count(2);
    let mut lo = T::one();
    let mut hi = T::from_count(n);
    let (_, first) = search.best(&lo);
    let mut best = first;
    loop {
        let (value, witness) = search.best(&best.ratio);
        if value.is_zero() {
            return witness;
        }
        loop {
            let mid = (lo.clone() + hi.clone()) / two.clone();
            let (value, witness) = search.best(&mid);
            if value.is_negative() {
                hi = mid;
                continue;
            }
            lo = mid;
            if witness.ratio > best.ratio {
                best = witness;
                break;
            }
        }
    }
}

/// Whether `p` is attained by a profile with at most three nonzero entries.
pub fn sparse_witness_exists<T: Scalar>(n: usize, p: &T) -> Result<bool> {
    let options = SolveOptions::with_search(SearchKind::Lemma4Restricted);
    options.check(n)?;
    let (value, witness) = ProfileSearch::<T>::new(n, SearchKind::Lemma4Restricted).best(p);
    Ok(value.is_zero() && witness.support_count() <= 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_alpha;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    const PUBLISHED: [(i64, i64); 9] = [(1, 1), (1, 1), (8, 7), (4, 3), (60, 43), (3, 2), (63, 40), (72, 43), (9, 5)];

    #[test]
    fn small_values_in_both_modes() {
        for (idx, &(num, den)) in PUBLISHED.iter().enumerate() {
            let n = idx + 1;
            for mode in [SolveMode::ExactFractional, SolveMode::Bisection] {
                let w: StructuredWitness<Rational> = solve_p_nn(n, &SolveOptions::with_mode(mode)).unwrap();
                assert_eq!(w.ratio, q(num, den), "n={n} {mode:?}");
                w.validate().unwrap();
            }
        }
    }

    #[test]
    fn known_witnesses() {
        let full = SolveOptions { search: SearchKind::FullEnumeration, ..Default::default() };
        let w7: StructuredWitness<Rational> = solve_p_nn(7, &full).unwrap();
        assert_eq!(w7.s, vec![0, 2, 1, 0, 0, 0, 4]);
        assert_eq!(w7.r, vec![0, 4, 3, 0, 0, 0, 0]);
        let w2: StructuredWitness<Rational> = solve_p_nn(2, &SolveOptions::default()).unwrap();
        assert_eq!((w2.s, w2.r), (vec![0, 2], vec![0, 2]));
    }

    #[test]
    fn certificate_is_zero_objective() {
        for n in 1..=15 {
            let w: StructuredWitness<Rational> = solve_p_nn(n, &SolveOptions::default()).unwrap();
            let (v, _) = solve_alpha(n, &w.ratio, &SolveOptions::default()).unwrap();
            assert_eq!(v, q(0, 1));
        }
    }

    #[test]
    fn sparse_checks() {
        assert!(sparse_witness_exists(1, &q(1, 1)).unwrap());
        assert!(sparse_witness_exists(5, &q(60, 43)).unwrap());
        assert!(sparse_witness_exists(9, &q(9, 5)).unwrap());
        // not the optimum
        assert!(!sparse_witness_exists(5, &q(4, 3)).unwrap());
    }

    #[test]
    fn worker_count_does_not_change_witness() {
        let base: StructuredWitness<Rational> =
            solve_p_nn(11, &SolveOptions::with_search(SearchKind::FullEnumeration)).unwrap();
        for workers in [1, 2, 5] {
            let o = SolveOptions { search: SearchKind::FullEnumeration, workers: Some(workers), ..Default::default() };
            assert_eq!(solve_p_nn::<Rational>(11, &o).unwrap(), base);
        }
    }
}
