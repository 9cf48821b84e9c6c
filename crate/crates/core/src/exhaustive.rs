//! Brute-force envy-free optimum over all `n^m` allocations.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{Allocation, UtilityMatrix};
use crate::scalar::Scalar;

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

// below this many allocations the search stays on the calling thread
const PARALLEL_THRESHOLD: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    pub cap: u64,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions { cap: DEFAULT_ENUMERATION_CAP }
    }
}

/// Number of allocations, if it fits a `u64`.
pub fn search_space(items: usize, agents: usize) -> Option<u64> {
    (agents as u64).checked_pow(u32::try_from(items).ok()?)
}

/// Maximum-welfare envy-free allocation, ties going to the lexicographically
/// smallest owner vector. `None` if no allocation is envy-free.
pub fn envy_free_optimal_exhaustive<T: Scalar>(
    x: &UtilityMatrix<T>,
    options: &ExhaustiveOptions,
) -> Result<Option<(Allocation, T)>> {
    let (m, n) = (x.items(), x.agents());
    let size = match search_space(m, n) {
        Some(size) if size <= options.cap => size,
        _ => {
            let exact = BigUint::from(n).pow(m as u32);
            return Err(Error::SearchSpaceTooLarge { size: exact.to_string() });
        }
    };

    // fix the owners of a prefix of items per task
    let mut prefix_len = 0;
    let mut tasks = 1u64;
    if size >= PARALLEL_THRESHOLD {
        while prefix_len < m && tasks < 64 {
            prefix_len += 1;
            tasks *= n as u64;
        }
    }
    let best = (0..tasks)
        .into_par_iter()
        .map(|t| {
            let mut prefix = vec![0; prefix_len];
            let mut rest = t;
            for slot in prefix.iter_mut().rev() {
                *slot = (rest % n as u64) as usize;
                rest /= n as u64;
            }
            search_suffix(x, &prefix)
        })
        .reduce(|| None, better);
    Ok(best.map(|(owner, w)| (Allocation::new(owner, n).expect("in range"), w)))
}

type Candidate<T> = Option<(Vec<usize>, T)>;

fn better<T: Scalar>(a: Candidate<T>, b: Candidate<T>) -> Candidate<T> {
    match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => {
            if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// Odometer over the items after `prefix`, keeping `values[j][k]` (agent
/// `j`'s value of bundle `k`) up to date one item move at a time.
fn search_suffix<T: Scalar>(x: &UtilityMatrix<T>, prefix: &[usize]) -> Candidate<T> {
    let (m, n) = (x.items(), x.agents());
    let mut owner = prefix.to_vec();
    owner.resize(m, 0);
    let mut values = vec![vec![T::zero(); n]; n];
    for (i, &k) in owner.iter().enumerate() {
        for (j, row) in values.iter_mut().enumerate() {
            row[k] = row[k].clone() + x.value(i, j).clone();
        }
    }
    let mut best: Candidate<T> = None;
    loop {
        let envy_free = values.iter().enumerate().all(|(j, row)| row.iter().all(|v| *v <= row[j]));
        if envy_free {
            let welfare = (0..n).fold(T::zero(), |acc, k| acc + values[k][k].clone());
            if best.as_ref().is_none_or(|(_, w)| welfare > *w) {
                best = Some((owner.clone(), welfare));
            }
        }
        // advance the least significant free position
        let mut pos = m;
        loop {
            if pos == prefix.len() {
                return best;
            }
            pos -= 1;
            let old = owner[pos];
            let new = if old + 1 == n { 0 } else { old + 1 };
            for (j, row) in values.iter_mut().enumerate() {
                let v = x.value(pos, j);
                row[old] = row[old].clone() - v.clone();
                row[new] = row[new].clone() + v.clone();
            }
            owner[pos] = new;
            if new != 0 {
                break;
            }
        }
    }
}
