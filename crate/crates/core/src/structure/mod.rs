//! Structure of worst-case square instances.
//!
//! Square instances are analysed relative to a fixed welfare-optimal
//! assignment `tau` (item to agent). Agents in the image of `tau` are *big*,
//! the rest *small*. The transforms in [`smoothing`] push any instance
//! towards the canonical shape where every column is uniform on its support,
//! without lowering its price ratio.

mod canonical;
mod reduce;
pub mod smoothing;
mod witness;

pub use canonical::CanonicalInstance;
pub use reduce::{reduce_to_square, SquareReduction};
pub use smoothing::{boundary_values, extremize_offdiagonal, level_big_agent, smooth_small_agent, BoundaryValues};
pub use witness::build_witness_matrix;

use crate::error::{Error, Result};
use crate::matching::envy_free_matching;
use crate::matrix::UtilityMatrix;
use crate::scalar::Scalar;
use crate::welfare::optimal_welfare;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AgentKind {
    Big,
    Small,
}

/// A welfare-optimal assignment of items to agents, checked against a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AssignmentMap {
    tau: Vec<usize>,
}

impl AssignmentMap {
    /// `tau[i]` is the 0-based agent receiving item `i`; each must attain the row maximum.
    pub fn new<T: Scalar>(x: &UtilityMatrix<T>, tau: Vec<usize>) -> Result<Self> {
        let map = AssignmentMap { tau };
        map.check(x)?;
        Ok(map)
    }

    /// The lowest-index optimal assignment.
    pub fn optimal<T: Scalar>(x: &UtilityMatrix<T>) -> Self {
        AssignmentMap { tau: optimal_welfare(x).1.owners().to_vec() }
    }

    pub fn check<T: Scalar>(&self, x: &UtilityMatrix<T>) -> Result<()> {
        if self.tau.len() != x.items() {
            return Err(Error::DimensionMismatch(format!(
                "tau has {} entries for {} items",
                self.tau.len(),
                x.items()
            )));
        }
        for (i, &j) in self.tau.iter().enumerate() {
            let row = x.row(i);
            if j >= row.len() || row.iter().any(|v| *v > row[j]) {
                return Err(Error::InconsistentTau { item: i + 1 });
            }
        }
        Ok(())
    }

    pub fn agent_of(&self, item: usize) -> usize {
        self.tau[item]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.tau
    }

    /// Items assigned to `agent`, in item order.
    pub fn block(&self, agent: usize) -> Vec<usize> {
        (0..self.tau.len()).filter(|&i| self.tau[i] == agent).collect()
    }

    /// Welfare of the assignment, `sum_i x[i][tau(i)]`.
    pub fn welfare<T: Scalar>(&self, x: &UtilityMatrix<T>) -> T {
        self.tau.iter().enumerate().fold(T::zero(), |acc, (i, &j)| acc + x.value(i, j).clone())
    }
}

/// Big/small label per agent.
pub fn classify_agents<T: Scalar>(x: &UtilityMatrix<T>, tau: &AssignmentMap) -> Result<Vec<AgentKind>> {
    require_square(x)?;
    tau.check(x)?;
    let mut kinds = vec![AgentKind::Small; x.agents()];
    for &j in tau.as_slice() {
        kinds[j] = AgentKind::Big;
    }
    Ok(kinds)
}

/// The identity allocation is envy-free: every agent values its own item highest.
pub fn is_canonical<T: Scalar>(x: &UtilityMatrix<T>) -> bool {
    x.is_square() && (0..x.agents()).all(|j| x.value(j, j) == x.column_max(j))
}

/// Relabel items so that an envy-free allocation becomes the identity.
/// `None` if the instance admits no envy-free allocation.
pub fn canonicalize<T: Scalar>(x: &UtilityMatrix<T>) -> Result<Option<UtilityMatrix<T>>> {
    let Some(a) = envy_free_matching(x)? else {
        return Ok(None);
    };
    let mut order = vec![0; x.items()];
    for (item, &agent) in a.owners().iter().enumerate() {
        order[agent] = item;
    }
    Ok(Some(x.reorder_items(&order)?))
}

/// Sum of the diagonal, the welfare of the identity allocation.
pub fn diagonal_welfare<T: Scalar>(x: &UtilityMatrix<T>) -> T {
    (0..x.agents().min(x.items())).fold(T::zero(), |acc, j| acc + x.value(j, j).clone())
}

fn require_square<T: Scalar>(x: &UtilityMatrix<T>) -> Result<()> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch(format!("{} items for {} agents", x.items(), x.agents())));
    }
    Ok(())
}
