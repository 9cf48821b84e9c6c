//! An independent route to `p(n, n)` over extreme points of the per-agent
//! envy polytope.
//!
//! Fix the envy-free allocation as the identity and an optimal assignment.
//! Agent `j`'s column then ranges over `{x >= 0, sum_i x_i = 1, x_j >= x_i}`,
//! whose vertices are the uniform distributions on item sets containing `j`.
//! The objective is linear in each column separately, so an optimum sits at
//! a vertex in every column: agent `j` values `s_j` items at `1/s_j` and is
//! the optimal holder of `t_j <= s_j` of them, the hit sets being disjoint.
//! The ratio of such a configuration is `(sum t_j / s_j) / (sum 1 / s_j)`.
//! None of this uses the aggregation by support size that the solver
//! relies on.

mod dp;
mod fuzz;
mod realize;

pub use dp::{oracle_alpha, oracle_p_nn};
pub use fuzz::{fuzz_instances, Fuzzer, FUZZ_MAX_WEIGHT, REJECTION_FACTOR};
pub use realize::realize_config;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Support size and hit count of one agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentVertex {
    pub support: usize,
    pub hits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexConfig {
    pub agents: Vec<AgentVertex>,
}

impl VertexConfig {
    pub fn new(pairs: &[(usize, usize)]) -> Self {
        VertexConfig { agents: pairs.iter().map(|&(support, hits)| AgentVertex { support, hits }).collect() }
    }

    /// Every agent uniform on all items, one hit each.
    pub fn uniform(n: usize) -> Self {
        VertexConfig { agents: vec![AgentVertex { support: n, hits: 1 }; n] }
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.agents.len() != n {
            return Err(Error::LayoutInfeasible(format!("{} agents for n = {n}", self.agents.len())));
        }
        for (j, a) in self.agents.iter().enumerate() {
            if a.support == 0 || a.support > n || a.hits > a.support {
                return Err(Error::LayoutInfeasible(format!(
                    "agent {} has support {} and {} hits",
                    j + 1,
                    a.support,
                    a.hits
                )));
            }
        }
        let hits: usize = self.agents.iter().map(|a| a.hits).sum();
        if hits > n {
            return Err(Error::LayoutInfeasible(format!("{hits} hits for {n} items")));
        }
        Ok(())
    }

    pub fn ratio<T: Scalar>(&self) -> T {
        let mut num = T::zero();
        let mut den = T::zero();
        for a in &self.agents {
            let size = T::from_count(a.support);
            num = num + T::from_count(a.hits) / size.clone();
            den = den + T::one() / size;
        }
        num / den
    }

    /// Sort agents by support size, larger hit counts first.
    pub fn canonical(mut self) -> Self {
        self.agents.sort_by(|a, b| a.support.cmp(&b.support).then(b.hits.cmp(&a.hits)));
        self
    }
}
