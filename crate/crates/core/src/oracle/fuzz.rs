use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matching::envy_free_matching;
use crate::matrix::UtilityMatrix;
use crate::scalar::Scalar;

/// Integer weights are drawn from `0..=FUZZ_MAX_WEIGHT` before normalizing.
pub const FUZZ_MAX_WEIGHT: u32 = 16;
/// Draws allowed per requested instance.
pub const REJECTION_FACTOR: usize = 100;

/// Seeded stream of random square instances that admit an envy-free allocation.
pub struct Fuzzer<T> {
    n: usize,
    count: usize,
    emitted: usize,
    draws: usize,
    rng: ChaCha8Rng,
    failed: bool,
    _scalar: std::marker::PhantomData<T>,
}

impl<T: Scalar> Fuzzer<T> {
    pub fn new(n: usize, count: usize, seed: u64) -> Self {
        assert!(n >= 1);
        Fuzzer {
            n,
            count,
            emitted: 0,
            draws: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            failed: false,
            _scalar: std::marker::PhantomData,
        }
    }

    fn draw(&mut self) -> UtilityMatrix<T> {
        let n = self.n;
        let columns = (0..n)
            .map(|_| loop {
                let w: Vec<u32> = (0..n).map(|_| self.rng.gen_range(0..=FUZZ_MAX_WEIGHT)).collect();
                let total: u32 = w.iter().sum();
                if total > 0 {
                    let total = T::from_u32(total).expect("weight fits");
                    break w.into_iter().map(|v| T::from_u32(v).expect("weight fits") / total.clone()).collect();
                }
            })
            .collect();
        UtilityMatrix::from_columns(columns).expect("normalized by construction")
    }
}

impl<T: Scalar> Iterator for Fuzzer<T> {
    type Item = Result<UtilityMatrix<T>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.emitted == self.count {
            return None;
        }
        let cap = REJECTION_FACTOR * self.count;
        while self.draws < cap {
            self.draws += 1;
            let x = self.draw();
            if envy_free_matching(&x).expect("square").is_some() {
                self.emitted += 1;
                return Some(Ok(x));
            }
        }
        self.failed = true;
        Some(Err(Error::RejectionCapExceeded { accepted: self.emitted, requested: self.count, draws: self.draws }))
    }
}

/// Collect `count` instances, or fail once the rejection cap is spent.
pub fn fuzz_instances<T: Scalar>(n: usize, count: usize, seed: u64) -> Result<Vec<UtilityMatrix<T>>> {
    Fuzzer::new(n, count, seed).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::welfare::price_ratio;
    use crate::Rational;

    #[test]
    fn deterministic_per_seed() {
        let a: Vec<UtilityMatrix<Rational>> = fuzz_instances(4, 20, 7).unwrap();
        let b: Vec<UtilityMatrix<Rational>> = fuzz_instances(4, 20, 7).unwrap();
        let c: Vec<UtilityMatrix<Rational>> = fuzz_instances(4, 20, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn emitted_instances_are_valid_and_fair() {
        for x in fuzz_instances::<Rational>(3, 50, 1).unwrap() {
            UtilityMatrix::from_columns(x.columns()).unwrap();
            assert!(price_ratio(&x).unwrap().ratio.is_some());
        }
    }

    #[test]
    fn four_agent_ratios_below_optimum() {
        let bound = Rational::frac(4, 3);
        for x in fuzz_instances::<Rational>(4, 1000, 42).unwrap() {
            assert!(price_ratio(&x).unwrap().ratio.unwrap() <= bound);
        }
    }

    #[test]
    fn zero_count_is_empty() {
        assert!(fuzz_instances::<Rational>(5, 0, 3).unwrap().is_empty());
    }
}
