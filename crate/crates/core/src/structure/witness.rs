use crate::error::{Error, Result};
use crate::matrix::UtilityMatrix;
use crate::scalar::Scalar;

use super::CanonicalInstance;

/// Reconstruct a square instance from a support-size profile.
///
/// `s[i - 1]` agents get support size `i`. Agents with `i < n` come first,
/// ordered by `i`; agent `t` owns item `t` plus `i - 1` further items taken
/// in order from the items after the last block agent, so blocks are
/// disjoint. The remaining agents are uniform. The identity allocation is
/// envy-free and the best envy-free welfare is `sum_i s_i / i`.
///
/// `r` is only checked for feasibility; the reconstructed optimum reaches
/// the greedy fill of `s`, which dominates any feasible `r`.
pub fn build_witness_matrix<T: Scalar>(s: &[usize], r: &[usize], n: usize) -> Result<UtilityMatrix<T>> {
    if n == 0 || s.len() != n || r.len() != n {
        return Err(Error::InvalidWitness(format!("vectors of length {}, {} for n = {n}", s.len(), r.len())));
    }
    if s.iter().sum::<usize>() != n || r.iter().sum::<usize>() != n {
        return Err(Error::InvalidWitness("s and r must each sum to n".into()));
    }
    if let Some(i) = (1..=n).find(|&i| r[i - 1] > i * s[i - 1]) {
        return Err(Error::InvalidWitness(format!("r_{i} = {} exceeds {i} * s_{i}", r[i - 1])));
    }
    let used: usize = (1..n).map(|i| i * s[i - 1]).sum();
    if used > n {
        return Err(Error::NonRealizable { used, n });
    }

    let sizes: Vec<usize> = (1..n).flat_map(|i| std::iter::repeat_n(i, s[i - 1])).collect();
    let block_agents = sizes.len();
    let mut next_free = block_agents;
    let mut supports = Vec::with_capacity(n);
    for (t, &size) in sizes.iter().enumerate() {
        let mut sup = vec![t];
        sup.extend(next_free..next_free + size - 1);
        next_free += size - 1;
        supports.push(sup);
    }
    supports.extend(std::iter::repeat_n((0..n).collect(), n - block_agents));
    Ok(CanonicalInstance::new(n, supports)?.to_matrix())
}
