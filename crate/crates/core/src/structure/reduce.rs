use crate::error::{Error, Result};
use crate::exhaustive::{envy_free_optimal_exhaustive, ExhaustiveOptions};
use crate::matching::envy_free_optimal_welfare;
use crate::matrix::{Allocation, UtilityMatrix};
use crate::scalar::Scalar;
use crate::welfare::optimal_welfare;

/// Square instance built from an instance with at least as many items as agents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReduction<T> {
    /// `m` agents over the original `m` items.
    pub matrix: UtilityMatrix<T>,
    /// Agents that received exactly one item in the envy-free optimum, kept as the first columns.
    pub kept: Vec<usize>,
    pub envy_free: Allocation,
    pub envy_free_welfare: T,
}

impl<T: Scalar> SquareReduction<T> {
    /// Check both welfare inequalities against the source instance:
    /// `u_f(x) >= u_f(x') - (m - |S|)/m` and `u(x) <= u(x') + (n - |S|)`.
    pub fn contracts_hold(&self, source: &UtilityMatrix<T>) -> Result<(bool, bool)> {
        let m = source.items();
        let n = source.agents();
        let s = self.kept.len();
        let reduced_ef = envy_free_optimal_welfare(&self.matrix)?.ok_or(Error::NoEnvyFreeAllocation)?;
        let fair = self.envy_free_welfare.clone() >= reduced_ef - T::from_count(m - s) / T::from_count(m);
        let opt = optimal_welfare(source).0 <= optimal_welfare(&self.matrix).0 + T::from_count(n - s);
        Ok((fair, opt))
    }
}

/// Keep the agents holding a single item in the (exhaustively found)
/// envy-free optimum and replace every other agent by enough uniform agents
/// to make the instance square.
pub fn reduce_to_square<T: Scalar>(x: &UtilityMatrix<T>, options: &ExhaustiveOptions) -> Result<SquareReduction<T>> {
    let (m, n) = (x.items(), x.agents());
    if m < n {
        return Err(Error::DimensionMismatch(format!("{m} items for {n} agents")));
    }
    let (envy_free, envy_free_welfare) =
        envy_free_optimal_exhaustive(x, options)?.ok_or(Error::NoEnvyFreeAllocation)?;
    let kept: Vec<usize> =
        envy_free.bundles().iter().enumerate().filter(|(_, b)| b.len() == 1).map(|(j, _)| j).collect();
    let all = x.columns();
    let mut columns: Vec<Vec<T>> = kept.iter().map(|&j| all[j].clone()).collect();
    let uniform = vec![T::one() / T::from_count(m); m];
    columns.extend(std::iter::repeat_n(uniform, m - kept.len()));
    Ok(SquareReduction { matrix: UtilityMatrix::from_columns(columns)?, kept, envy_free, envy_free_welfare })
}
