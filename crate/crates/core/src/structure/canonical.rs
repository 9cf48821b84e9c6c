use crate::error::{Error, Result};
use crate::matrix::UtilityMatrix;
use crate::scalar::Scalar;

use super::AgentKind;

/// A square instance in which every column is uniform on its support:
/// agent `j` values `k[j]` items at `1/k[j]` and the rest at zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalInstance {
    n: usize,
    supports: Vec<Vec<usize>>,
}

impl CanonicalInstance {
    /// `supports[j]` lists the items agent `j` values, each at `1/|supports[j]|`.
    pub fn new(n: usize, supports: Vec<Vec<usize>>) -> Result<Self> {
        if supports.len() != n {
            return Err(Error::NotCanonicalForm(format!("{} supports for {n} agents", supports.len())));
        }
        for (j, sup) in supports.iter().enumerate() {
            let mut seen = vec![false; n];
            if sup.is_empty() || sup.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::NotCanonicalForm(format!("support of agent {} is not a nonempty item set", j + 1)));
            }
        }
        Ok(CanonicalInstance { n, supports })
    }

    /// Read the support structure off a matrix, if every column is uniform on its support.
    pub fn from_matrix<T: Scalar>(x: &UtilityMatrix<T>) -> Option<Self> {
        if !x.is_square() {
            return None;
        }
        let supports = (0..x.agents())
            .map(|j| {
                let sup: Vec<usize> = (0..x.items()).filter(|&i| !x.value(i, j).is_zero()).collect();
                let level = T::one() / T::from_count(sup.len());
                sup.iter().all(|&i| *x.value(i, j) == level).then_some(sup)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(CanonicalInstance { n: x.agents(), supports })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Support sizes `k_j`.
    pub fn support_sizes(&self) -> Vec<usize> {
        self.supports.iter().map(Vec::len).collect()
    }

    pub fn support(&self, agent: usize) -> &[usize] {
        &self.supports[agent]
    }

    /// Check the shape of a worst-case instance: small agents are uniform,
    /// at most one big agent has full support, and the partial supports of
    /// big agents are pairwise disjoint and contain the agent's own item.
    pub fn check(&self, kinds: &[AgentKind]) -> Result<()> {
        let n = self.n;
        let mut full_big = 0;
        let mut used = vec![false; n];
        for (j, sup) in self.supports.iter().enumerate() {
            let k = sup.len();
            match kinds[j] {
                AgentKind::Small if k != n => {
                    return Err(Error::NotCanonicalForm(format!("small agent {} is not uniform", j + 1)));
                }
                AgentKind::Small => {}
                AgentKind::Big if k == n => full_big += 1,
                AgentKind::Big => {
                    if !sup.contains(&j) {
                        return Err(Error::NotCanonicalForm(format!("agent {} misses its own item", j + 1)));
                    }
                    for &i in sup {
                        if std::mem::replace(&mut used[i], true) {
                            return Err(Error::NotCanonicalForm(format!("item {} shared by two blocks", i + 1)));
                        }
                    }
                }
            }
        }
        if full_big > 1 {
            return Err(Error::NotCanonicalForm(format!("{full_big} big agents with full support")));
        }
        Ok(())
    }

    pub fn to_matrix<T: Scalar>(&self) -> UtilityMatrix<T> {
        let n = self.n;
        let columns = self
            .supports
            .iter()
            .map(|sup| {
                let level = T::one() / T::from_count(sup.len());
                let mut col = vec![T::zero(); n];
                for &i in sup {
                    col[i] = level.clone();
                }
                col
            })
            .collect();
        UtilityMatrix::from_columns(columns).expect("uniform columns are normalized")
    }
}
