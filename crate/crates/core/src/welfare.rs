//! Welfare of allocations, the welfare optimum, envy checks and the price ratio.

use serde::Serialize;

use crate::error::Result;
use crate::exhaustive::{envy_free_optimal_exhaustive, ExhaustiveOptions};
use crate::matching::envy_free_optimal_welfare;
use crate::matrix::{Allocation, UtilityMatrix};
use crate::scalar::Scalar;

/// Total utility of an allocation: each item counted at its owner's value.
pub fn allocation_welfare<T: Scalar>(x: &UtilityMatrix<T>, a: &Allocation) -> Result<T> {
    a.fits(x)?;
    Ok(a.owners().iter().enumerate().fold(T::zero(), |acc, (i, &j)| acc + x.value(i, j).clone()))
}

/// Maximum welfare, attained by giving every item to an agent valuing it
/// most (lowest agent index on ties).
pub fn optimal_welfare<T: Scalar>(x: &UtilityMatrix<T>) -> (T, Allocation) {
    let mut total = T::zero();
    let mut owner = Vec::with_capacity(x.items());
    for i in 0..x.items() {
        let row = x.row(i);
        let mut best = 0;
        for j in 1..row.len() {
            if row[j] > row[best] {
                best = j;
            }
        }
        total = total + row[best].clone();
        owner.push(best);
    }
    let a = Allocation::new(owner, x.agents()).expect("owners in range");
    (total, a)
}

/// `values[j][k]` is agent `j`'s value for the bundle of agent `k`.
pub fn bundle_values<T: Scalar>(x: &UtilityMatrix<T>, a: &Allocation) -> Result<Vec<Vec<T>>> {
    a.fits(x)?;
    let n = x.agents();
    let mut values = vec![vec![T::zero(); n]; n];
    for (i, &k) in a.owners().iter().enumerate() {
        for (j, row) in values.iter_mut().enumerate() {
            row[k] = row[k].clone() + x.value(i, j).clone();
        }
    }
    Ok(values)
}

pub fn is_envy_free<T: Scalar>(x: &UtilityMatrix<T>, a: &Allocation) -> Result<bool> {
    let values = bundle_values(x, a)?;
    Ok(values.iter().enumerate().all(|(j, row)| row.iter().all(|v| *v <= row[j])))
}

/// Optimal welfare, best envy-free welfare and their ratio.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct WelfareReport<T> {
    #[serde(serialize_with = "crate::io::ser_display")]
    pub optimal: T,
    #[serde(serialize_with = "crate::io::ser_display_opt")]
    pub envy_free_optimal: Option<T>,
    #[serde(serialize_with = "crate::io::ser_display_opt")]
    pub ratio: Option<T>,
}

/// Price ratio of a single instance. Square instances use the matching
/// characterization; anything else falls back to exhaustive search.
pub fn price_ratio<T: Scalar>(x: &UtilityMatrix<T>) -> Result<WelfareReport<T>> {
    let (optimal, _) = optimal_welfare(x);
    let envy_free_optimal = if x.is_square() {
        envy_free_optimal_welfare(x)?
    } else {
        envy_free_optimal_exhaustive(x, &ExhaustiveOptions::default())?.map(|(_, w)| w)
    };
    let ratio = envy_free_optimal.as_ref().map(|f| optimal.clone() / f.clone());
    Ok(WelfareReport { optimal, envy_free_optimal, ratio })
}
