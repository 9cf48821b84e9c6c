use crate::scalar::Scalar;

use super::{AgentVertex, VertexConfig};

/// Maximum of `sum_j (t_j - alpha) / s_j` over configurations with at most
/// `n` hits in total, by dynamic programming over agents and hits used.
pub fn oracle_alpha<T: Scalar>(n: usize, alpha: &T) -> (T, VertexConfig) {
    assert!(n >= 1);
    let choices: Vec<(AgentVertex, T)> = (1..=n)
        .flat_map(|s| (0..=s).map(move |t| AgentVertex { support: s, hits: t }))
        .map(|v| {
            let gain = (T::from_count(v.hits) - alpha.clone()) / T::from_count(v.support);
            (v, gain)
        })
        .collect();

    // best[b]: best value for the agents so far using exactly b hits
    let mut best: Vec<Option<T>> = vec![None; n + 1];
    best[0] = Some(T::zero());
    let mut back: Vec<Vec<Option<(usize, AgentVertex)>>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut next: Vec<Option<T>> = vec![None; n + 1];
        let mut step = vec![None; n + 1];
        for (used, value) in best.iter().enumerate() {
            let Some(value) = value else { continue };
            for (v, gain) in &choices {
                let b = used + v.hits;
                if b > n {
                    continue;
                }
                let cand = value.clone() + gain.clone();
                if next[b].as_ref().is_none_or(|cur| cand > *cur) {
                    next[b] = Some(cand);
                    step[b] = Some((used, *v));
                }
            }
        }
        best = next;
        back.push(step);
    }

    let (mut b, value) = best
        .iter()
        .enumerate()
        .filter_map(|(b, v)| v.clone().map(|v| (b, v)))
        .fold(None, |acc: Option<(usize, T)>, (b, v)| match acc {
            Some((_, ref cur)) if *cur >= v => acc,
            _ => Some((b, v)),
        })
        .expect("zero hits is always reachable");
    let mut agents = Vec::with_capacity(n);
    for step in back.iter().rev() {
        let (prev, v) = step[b].expect("reachable state");
        agents.push(v);
        b = prev;
    }
    (value, VertexConfig { agents }.canonical())
}

/// Exact supremum of the configuration ratio, by Dinkelbach iteration on
/// [`oracle_alpha`].
pub fn oracle_p_nn<T: Scalar>(n: usize) -> (T, VertexConfig) {
    let mut alpha = T::one();
    loop {
        let (value, config) = oracle_alpha(n, &alpha);
        if value.is_zero() {
            return (alpha, config);
        }
        alpha = config.ratio();
    }
}
