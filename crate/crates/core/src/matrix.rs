//! The items-by-agents utility matrix and allocations over it.
//!
//! Rows are items, columns are agents: entry `(i, j)` is the value agent `j`
//! assigns to item `i`. Every column is nonnegative and sums to exactly one.

use crate::error::{Error, Result};
use crate::scalar::{RatioParts, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UtilityMatrix<T> {
    items: usize,
    agents: usize,
    // row-major, `items * agents`
    entries: Vec<T>,
}

impl<T: Scalar> UtilityMatrix<T> {
    /// Validate a rectangular grid whose rows are items.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let items = rows.len();
        let agents = rows.first().map_or(0, Vec::len);
        if items == 0 || agents == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(items * agents);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != agents {
                return Err(Error::RaggedGrid { row: row + 1, expected: agents, found: values.len() });
            }
            entries.extend(values);
        }
        Self::from_entries(items, agents, entries)
    }

    /// Validate a grid given as agent columns, `columns[j][i]` = value of item `i` to agent `j`.
    pub fn from_columns(columns: Vec<Vec<T>>) -> Result<Self> {
        let agents = columns.len();
        let items = columns.first().map_or(0, Vec::len);
        if items == 0 || agents == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != items {
                return Err(Error::RaggedGrid { row: j + 1, expected: items, found: col.len() });
            }
        }
        let mut entries = vec![T::zero(); items * agents];
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                entries[i * agents + j] = v;
            }
        }
        Self::from_entries(items, agents, entries)
    }

    fn from_entries(items: usize, agents: usize, entries: Vec<T>) -> Result<Self> {
        let matrix = UtilityMatrix { items, agents, entries };
        matrix.check()?;
        Ok(matrix)
    }

    fn check(&self) -> Result<()> {
        for j in 0..self.agents {
            let mut sum = T::zero();
            for i in 0..self.items {
                let v = self.value(i, j);
                if v.is_negative() {
                    return Err(Error::NegativeUtility { item: i + 1, agent: j + 1 });
                }
                sum = sum + v.clone();
            }
            if !sum.is_one() {
                return Err(Error::ColumnNotNormalized { agent: j + 1, sum: sum.to_string() });
            }
        }
        Ok(())
    }

    /// Every agent values every item at `1/items`.
    pub fn uniform(items: usize, agents: usize) -> Self {
        assert!(items > 0 && agents > 0);
        let v = T::one() / T::from_count(items);
        UtilityMatrix { items, agents, entries: vec![v; items * agents] }
    }

    /// Square matrix where agent `j` only values item `j`.
    pub fn diagonal(n: usize) -> Self {
        assert!(n > 0);
        let mut entries = vec![T::zero(); n * n];
        for j in 0..n {
            entries[j * n + j] = T::one();
        }
        UtilityMatrix { items: n, agents: n, entries }
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    pub fn is_square(&self) -> bool {
        self.items == self.agents
    }

    #[inline]
    pub fn value(&self, item: usize, agent: usize) -> &T {
        &self.entries[item * self.agents + agent]
    }

    pub fn row(&self, item: usize) -> &[T] {
        &self.entries[item * self.agents..(item + 1) * self.agents]
    }

    pub fn column(&self, agent: usize) -> impl Iterator<Item = &T> + '_ {
        (0..self.items).map(move |i| self.value(i, agent))
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.agents).map(|j| self.column(j).cloned().collect()).collect()
    }

    /// Largest value agent `agent` assigns to a single item.
    pub fn column_max(&self, agent: usize) -> &T {
        self.column(agent).max().expect("nonempty column")
    }

    /// Replace one agent's column, revalidating the result.
    pub fn with_column(&self, agent: usize, column: Vec<T>) -> Result<Self> {
        if column.len() != self.items {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} for {} items",
                column.len(),
                self.items
            )));
        }
        let mut next = self.clone();
        for (i, v) in column.into_iter().enumerate() {
            next.entries[i * self.agents + agent] = v;
        }
        next.check()?;
        Ok(next)
    }

    /// Append `extra` items that no agent values.
    pub fn pad_items(&self, extra: usize) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(std::iter::repeat_n(T::zero(), extra * self.agents));
        UtilityMatrix { items: self.items + extra, agents: self.agents, entries }
    }

    /// Relabel items: item `i` of the result is item `order[i]` of `self`.
    pub fn reorder_items(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.items];
        if order.len() != self.items || order.iter().any(|&i| i >= self.items || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::DimensionMismatch("item order is not a permutation".into()));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in order {
            entries.extend_from_slice(self.row(i));
        }
        Ok(UtilityMatrix { items: self.items, agents: self.agents, entries })
    }

    /// Change the scalar representation.
    pub fn convert<U: Scalar>(&self) -> UtilityMatrix<U>
    where
        T: RatioParts,
    {
        UtilityMatrix {
            items: self.items,
            agents: self.agents,
            entries: self.entries.iter().map(|v| v.convert()).collect(),
        }
    }
}

/// Assignment of every item to exactly one agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    owner: Vec<usize>,
    agents: usize,
}

impl Allocation {
    /// `owner[i]` is the (0-based) agent receiving item `i`.
    pub fn new(owner: Vec<usize>, agents: usize) -> Result<Self> {
        if let Some((item, &a)) = owner.iter().enumerate().find(|(_, &a)| a >= agents) {
            return Err(Error::InvalidAllocation(format!(
                "item {} assigned to agent {} of {}",
                item + 1,
                a + 1,
                agents
            )));
        }
        Ok(Allocation { owner, agents })
    }

    /// Item `j` goes to agent `j`.
    pub fn identity(n: usize) -> Self {
        Allocation { owner: (0..n).collect(), agents: n }
    }

    pub fn owners(&self) -> &[usize] {
        &self.owner
    }

    pub fn owner(&self, item: usize) -> usize {
        self.owner[item]
    }

    pub fn items(&self) -> usize {
        self.owner.len()
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    /// Items held by each agent, in item order.
    pub fn bundles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.agents];
        for (i, &a) in self.owner.iter().enumerate() {
            out[a].push(i);
        }
        out
    }

    pub(crate) fn fits<T: Scalar>(&self, x: &UtilityMatrix<T>) -> Result<()> {
        if self.owner.len() != x.items() || self.agents != x.agents() {
            return Err(Error::DimensionMismatch(format!(
                "allocation of {} items to {} agents against a {}x{} matrix",
                self.owner.len(),
                self.agents,
                x.items(),
                x.agents()
            )));
        }
        Ok(())
    }
}
