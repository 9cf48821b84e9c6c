//! Heuristic search for lower bounds on the price with more items than agents.
//!
//! Nothing here is exact about the supremum: the result is the best ratio
//! among the instances evaluated, each certified by exhaustive search. It
//! is a lower bound and is always labelled as one.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exhaustive::{search_space, DEFAULT_ENUMERATION_CAP};
use crate::matrix::UtilityMatrix;
use crate::scalar::{RatioParts, Scalar};
use crate::welfare::price_ratio;
use crate::{Rational, Rational128};

pub const MAX_AGENTS: usize = 4;
pub const MAX_ITEMS: usize = 8;
// keeps every denominator small enough for 128-bit evaluation
const MAX_COLUMN_TOTAL: u64 = 256;

#[derive(Debug, Clone)]
pub struct ExploreOptions {
    /// Instances to evaluate in total.
    pub budget: usize,
    pub seed: u64,
    pub restarts: usize,
    /// Starting points; restart `i` starts from `initial[i]` when present.
    pub initial: Vec<UtilityMatrix<Rational>>,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { budget: 1000, seed: 0, restarts: 8, initial: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreReport {
    pub n: usize,
    pub m: usize,
    /// Best certified ratio found; a lower bound only.
    pub lower_bound: Rational,
    pub witness: UtilityMatrix<Rational>,
    pub evaluations: usize,
}

/// Integer weights per column; the instance is each column over its total.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Weights {
    columns: Vec<Vec<u64>>,
}

impl Weights {
    fn random(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Self {
        Weights { columns: (0..n).map(|_| random_column(rng, m)).collect() }
    }

    fn from_matrix(x: &UtilityMatrix<Rational>) -> Result<Self> {
        use num_integer::Integer;
        let mut columns = Vec::with_capacity(x.agents());
        for col in x.columns() {
            let parts: Vec<(i128, i128)> = col.iter().map(RatioParts::parts).collect();
            let den = parts.iter().fold(1i128, |acc, &(_, d)| acc.lcm(&d));
            if den as u64 > MAX_COLUMN_TOTAL {
                return Err(Error::DomainError(format!("starting point denominator {den} exceeds {MAX_COLUMN_TOTAL}")));
            }
            columns.push(parts.iter().map(|&(p, d)| (p * (den / d)) as u64).collect());
        }
        Ok(Weights { columns })
    }

    fn matrix(&self) -> UtilityMatrix<Rational128> {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let total: u64 = col.iter().sum();
                col.iter().map(|&w| Rational128::new(w as i128, total as i128)).collect()
            })
            .collect();
        UtilityMatrix::from_columns(columns).expect("normalized by construction")
    }

    fn mutate(&mut self, rng: &mut ChaCha8Rng) {
        let m = self.columns[0].len();
        let j = rng.gen_range(0..self.columns.len());
        let col = &mut self.columns[j];
        let total: u64 = col.iter().sum();
        match rng.gen_range(0..4) {
            // shift one unit of weight
            0 => {
                let from: Vec<usize> = (0..m).filter(|&i| col[i] > 0).collect();
                let a = *from.choose(rng).expect("positive column");
                let b = rng.gen_range(0..m);
                col[a] -= 1;
                col[b] += 1;
            }
            // move an item's whole weight elsewhere
            1 => {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(0..m);
                let w = std::mem::take(&mut col[a]);
                col[b] += w;
            }
            // finer resolution for later shifts
            2 if total * 2 <= MAX_COLUMN_TOTAL => col.iter_mut().for_each(|w| *w *= 2),
            _ => *col = random_column(rng, m),
        }
    }
}

fn random_column(rng: &mut ChaCha8Rng, m: usize) -> Vec<u64> {
    loop {
        let col: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=16)).collect();
        if col.iter().any(|&w| w > 0) {
            return col;
        }
    }
}

fn evaluate(w: &Weights) -> Option<Rational128> {
    price_ratio(&w.matrix()).expect("within the enumeration cap").ratio
}

type Found = Option<(Rational128, UtilityMatrix<Rational128>)>;

fn better(a: Found, b: Found) -> Found {
    match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// Best certified price ratio over a randomized local search of
/// `n`-agent, `m`-item instances.
pub fn explore_p_nm(n: usize, m: usize, options: &ExploreOptions) -> Result<ExploreReport> {
    if n == 0 || m < n {
        return Err(Error::DomainError(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    if n > MAX_AGENTS || m > MAX_ITEMS || search_space(m, n).is_none_or(|s| s > DEFAULT_ENUMERATION_CAP) {
        return Err(Error::SearchSpaceTooLarge { size: num_bigint::BigUint::from(n).pow(m as u32).to_string() });
    }
    let starts = options
        .initial
        .iter()
        .map(|x| {
            if x.items() != m || x.agents() != n {
                return Err(Error::DimensionMismatch(format!("starting point is {}x{}", x.items(), x.agents())));
            }
            Weights::from_matrix(x)
        })
        .collect::<Result<Vec<_>>>()?;
    let restarts = options.restarts.max(starts.len()).max(1);
    let budget = options.budget.max(restarts);

    let (best, evaluations) = (0..restarts)
        .into_par_iter()
        .map(|restart| {
            let share = budget / restarts + usize::from(restart < budget % restarts);
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            rng.set_stream(restart as u64);
            let mut current = starts.get(restart).cloned().unwrap_or_else(|| Weights::random(&mut rng, n, m));
            let mut current_ratio = evaluate(&current);
            let mut found: Found = current_ratio.map(|r| (r, current.matrix()));
            for _ in 1..share {
                let mut next = current.clone();
                next.mutate(&mut rng);
                let ratio = evaluate(&next);
                if let Some(r) = &ratio {
                    found = better(found, Some((*r, next.matrix())));
                }
                if ratio >= current_ratio {
                    current = next;
                    current_ratio = ratio;
                }
            }
            (found, share)
        })
        .reduce(|| (None, 0), |(a, ea), (b, eb)| (better(a, b), ea + eb));

    // a uniform instance always has an envy-free allocation when m = n,
    // but random m > n instances may all fail
    let (ratio, witness) = best.ok_or(Error::NoEnvyFreeAllocation)?;
    Ok(ExploreReport { n, m, lower_bound: ratio.convert(), witness: witness.convert(), evaluations })
}
