//! Ratio-preserving transforms of a single agent's column.
//!
//! Each transform takes the instance, a consistent optimal assignment `tau`
//! and a 0-based agent. Errors report the agent 1-based.

use crate::error::{Error, Result};
use crate::matrix::UtilityMatrix;
use crate::scalar::Scalar;

use super::{classify_agents, diagonal_welfare, AgentKind, AssignmentMap};

/// Replace a small agent's column by the uniform column.
pub fn smooth_small_agent<T: Scalar>(
    x: &UtilityMatrix<T>,
    tau: &AssignmentMap,
    agent: usize,
) -> Result<UtilityMatrix<T>> {
    if classify_agents(x, tau)?[agent] != AgentKind::Small {
        return Err(Error::NotSmall(agent + 1));
    }
    let n = x.items();
    x.with_column(agent, vec![T::one() / T::from_count(n); n])
}

/// Replace the entries of a big agent's assigned items by their average.
///
/// If the agent's own item (the item with the agent's index) is the top of
/// its column before leveling, it must still be afterwards; otherwise the
/// result is rejected with `EnvyViolated`.
pub fn level_big_agent<T: Scalar>(x: &UtilityMatrix<T>, tau: &AssignmentMap, agent: usize) -> Result<UtilityMatrix<T>> {
    if classify_agents(x, tau)?[agent] != AgentKind::Big {
        return Err(Error::NotBig(agent + 1));
    }
    let block = tau.block(agent);
    let total = block.iter().fold(T::zero(), |acc, &i| acc + x.value(i, agent).clone());
    let average = total / T::from_count(block.len());
    let mut column: Vec<T> = x.column(agent).cloned().collect();
    for &i in &block {
        column[i] = average.clone();
    }
    let own_was_top = x.value(agent, agent) == x.column_max(agent);
    let own_is_top = column.iter().all(|v| *v <= column[agent]);
    if own_was_top && !own_is_top {
        return Err(Error::EnvyViolated(agent + 1));
    }
    x.with_column(agent, column)
}

/// The two ends of the one-parameter family that moves mass between a big
/// agent's block and the rest of its column.
///
/// With block size `k`, block entries `1/k - t` and other entries
/// `k t / (n - k)`, the ratio bound is `f(t) = (a + 1 - k t) / (b + 1/k - t)`
/// on `0 <= t <= 1/k - 1/n`, where `a` is the assignment welfare without the
/// block and `b` the diagonal welfare without the own item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryValues<T> {
    pub block_size: usize,
    pub a: T,
    pub b: T,
    /// `t` the instance currently sits at.
    pub current_t: T,
    pub f_current: T,
    pub f_at_zero: T,
    pub f_at_end: T,
}

impl<T: Scalar> BoundaryValues<T> {
    pub fn end_t(&self, n: usize) -> T {
        T::one() / T::from_count(self.block_size) - T::one() / T::from_count(n)
    }

    /// Ties keep the mass on the block (`t = 0`).
    pub fn chosen_t(&self, n: usize) -> T {
        if self.f_at_end > self.f_at_zero {
            self.end_t(n)
        } else {
            T::zero()
        }
    }
}

fn f_of<T: Scalar>(a: &T, b: &T, k: usize, t: &T) -> T {
    let inv_k = T::one() / T::from_count(k);
    (a.clone() + T::one() - T::from_count(k) * t.clone()) / (b.clone() + inv_k - t.clone())
}

pub fn boundary_values<T: Scalar>(
    x: &UtilityMatrix<T>,
    tau: &AssignmentMap,
    agent: usize,
) -> Result<BoundaryValues<T>> {
    let n = x.items();
    if classify_agents(x, tau)?[agent] != AgentKind::Big {
        return Err(Error::NotBig(agent + 1));
    }
    let block = tau.block(agent);
    let k = block.len();
    if k == n {
        return Err(Error::FullSupport(agent + 1));
    }
    if !block.contains(&agent) {
        return Err(Error::OwnItemOutsideBlock(agent + 1));
    }
    let level = x.value(block[0], agent);
    if block.iter().any(|&i| x.value(i, agent) != level) {
        return Err(Error::NotLeveled(agent + 1));
    }
    let w = level.clone() * T::from_count(k);
    let a = tau.welfare(x) - w.clone();
    let b = diagonal_welfare(x) - level.clone();
    let current_t = (T::one() - w) / T::from_count(k);
    let end_t = T::one() / T::from_count(k) - T::one() / T::from_count(n);
    Ok(BoundaryValues {
        block_size: k,
        f_current: f_of(&a, &b, k, &current_t),
        f_at_zero: f_of(&a, &b, k, &T::zero()),
        f_at_end: f_of(&a, &b, k, &end_t),
        a,
        b,
        current_t,
    })
}

/// Push a leveled big agent's column to whichever end of the family gives
/// the larger ratio bound: all mass on the block, or the uniform column.
pub fn extremize_offdiagonal<T: Scalar>(
    x: &UtilityMatrix<T>,
    tau: &AssignmentMap,
    agent: usize,
) -> Result<UtilityMatrix<T>> {
    let n = x.items();
    let bv = boundary_values(x, tau, agent)?;
    let k = bv.block_size;
    let t = bv.chosen_t(n);
    let inside = T::one() / T::from_count(k) - t.clone();
    let outside = T::from_count(k) * t / T::from_count(n - k);
    let column = (0..n).map(|i| if tau.agent_of(i) == agent { inside.clone() } else { outside.clone() }).collect();
    x.with_column(agent, column)
}
