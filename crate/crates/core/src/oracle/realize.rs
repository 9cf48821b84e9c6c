use crate::error::Result;
use crate::matrix::UtilityMatrix;
use crate::scalar::Scalar;

use super::VertexConfig;

/// Lay a configuration out as a square instance whose identity allocation
/// is envy-free and whose price ratio is at least the configuration ratio.
///
/// Hit sets are handed out in agent order from the lowest free items. An
/// agent whose hits cover its whole support must hit its own item, so those
/// own items are reserved up front.
pub fn realize_config<T: Scalar>(config: &VertexConfig, n: usize) -> Result<UtilityMatrix<T>> {
    config.validate(n)?;
    let full: Vec<bool> = config.agents.iter().map(|a| a.hits == a.support).collect();
    let mut taken = vec![false; n];
    let mut cursor = 0;
    let mut columns = Vec::with_capacity(n);
    for (j, a) in config.agents.iter().enumerate() {
        let mut support = vec![false; n];
        let mut hits = 0;
        if full[j] {
            taken[j] = true;
            support[j] = true;
            hits = 1;
        }
        while hits < a.hits {
            while taken[cursor] || full[cursor] {
                cursor += 1;
            }
            taken[cursor] = true;
            support[cursor] = true;
            hits += 1;
        }
        support[j] = true;
        let mut size = support.iter().filter(|&&b| b).count();
        for slot in support.iter_mut() {
            if size == a.support {
                break;
            }
            if !*slot {
                *slot = true;
                size += 1;
            }
        }
        let level = T::one() / T::from_count(a.support);
        columns.push(support.into_iter().map(|b| if b { level.clone() } else { T::zero() }).collect());
    }
    UtilityMatrix::from_columns(columns)
}
