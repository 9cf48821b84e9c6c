//! Envy-free allocations when items and agents coincide in number.
//!
//! With `m = n` every agent of an envy-free allocation must receive exactly
//! one item (a bundle worth less than `1/n` to its owner would leave some
//! other bundle worth more). Such an allocation is envy-free exactly when each
//! agent holds an item of maximum value in its own column, so existence
//! reduces to a perfect matching between agents and their column-maximum
//! items, and every envy-free allocation has welfare `sum_j max_i x_ij`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::matrix::{Allocation, UtilityMatrix};
use crate::scalar::Scalar;

const FREE: usize = usize::MAX;

/// Maximum bipartite matching (Hopcroft–Karp).
///
/// `adj[l]` lists the right vertices adjacent to left vertex `l`. Returns
/// `mate[l]`, the right vertex matched to `l`, if any.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    let left = adj.len();
    let mut mate_l = vec![FREE; left];
    let mut mate_r = vec![FREE; right];
    let mut dist = vec![0usize; left];

    loop {
        // layer the free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left {
            if mate_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = mate_r[r];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; left];
        for l in 0..left {
            if mate_l[l] == FREE {
                augment(l, adj, &mut mate_l, &mut mate_r, &mut dist, &mut cursor);
            }
        }
    }
    mate_l.into_iter().map(|r| (r != FREE).then_some(r)).collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    while cursor[l] < adj[l].len() {
        let r = adj[l][cursor[l]];
        cursor[l] += 1;
        let next = mate_r[r];
        let ok = next == FREE || (dist[next] == dist[l] + 1 && augment(next, adj, mate_l, mate_r, dist, cursor));
        if ok {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

fn require_square<T: Scalar>(x: &UtilityMatrix<T>) -> Result<()> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch(format!("{} items for {} agents", x.items(), x.agents())));
    }
    Ok(())
}

/// Items of maximum value for each agent.
pub fn compatible_items<T: Scalar>(x: &UtilityMatrix<T>) -> Vec<Vec<usize>> {
    (0..x.agents())
        .map(|j| {
            let top = x.column_max(j);
            (0..x.items()).filter(|&i| x.value(i, j) == top).collect()
        })
        .collect()
}

/// An envy-free one-item-per-agent allocation, or `None` if none exists.
pub fn envy_free_matching<T: Scalar>(x: &UtilityMatrix<T>) -> Result<Option<Allocation>> {
    require_square(x)?;
    let n = x.agents();
    let mate = hopcroft_karp(&compatible_items(x), n);
    if mate.iter().any(Option::is_none) {
        return Ok(None);
    }
    let mut owner = vec![0; n];
    for (agent, item) in mate.into_iter().enumerate() {
        owner[item.expect("perfect")] = agent;
    }
    Ok(Some(Allocation::new(owner, n)?))
}

/// Welfare shared by all envy-free allocations of a square instance.
pub fn envy_free_optimal_welfare<T: Scalar>(x: &UtilityMatrix<T>) -> Result<Option<T>> {
    if envy_free_matching(x)?.is_none() {
        return Ok(None);
    }
    Ok(Some((0..x.agents()).fold(T::zero(), |acc, j| acc + x.column_max(j).clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::welfare::is_envy_free;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn first_item_everyone_has_no_matching() {
        for n in 2..5 {
            let mut col = vec![q(0, 1); n];
            col[0] = q(1, 1);
            let x = UtilityMatrix::from_columns(vec![col; n]).unwrap();
            assert_eq!(envy_free_matching(&x).unwrap(), None);
            assert_eq!(envy_free_optimal_welfare(&x).unwrap(), None);
        }
    }

    #[test]
    fn diagonal_gives_identity() {
        let x: UtilityMatrix<Rational> = UtilityMatrix::diagonal(5);
        assert_eq!(envy_free_matching(&x).unwrap(), Some(Allocation::identity(5)));
    }

    #[test]
    fn w3_matching_and_welfare() {
        let x = UtilityMatrix::from_columns(vec![vec![q(1, 2), q(1, 2), q(0, 1)], vec![q(1, 3); 3], vec![q(1, 3); 3]])
            .unwrap();
        let a = envy_free_matching(&x).unwrap().unwrap();
        assert!(is_envy_free(&x, &a).unwrap());
        assert_eq!(envy_free_optimal_welfare(&x).unwrap(), Some(q(7, 6)));
    }

    #[test]
    fn rejects_non_square() {
        let x: UtilityMatrix<Rational> = UtilityMatrix::uniform(3, 2);
        assert!(matches!(envy_free_matching(&x), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn hopcroft_karp_needs_augmenting_paths() {
        // greedy in order would match 0-0 and strand 1
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        let mate = hopcroft_karp(&adj, 3);
        assert!(mate.iter().all(Option::is_some));
        assert_eq!(mate[1], Some(0));
    }

    #[test]
    fn hopcroft_karp_reports_deficiency() {
        let adj = vec![vec![0], vec![0], vec![1]];
        let mate = hopcroft_karp(&adj, 2);
        assert_eq!(mate.iter().filter(|m| m.is_some()).count(), 2);
    }
}
