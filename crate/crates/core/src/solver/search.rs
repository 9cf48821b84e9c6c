use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{SearchKind, SolveOptions, StructuredWitness};

/// Maximum of `sum r_i / i - alpha * sum s_i / i` over feasible profiles,
/// with the lexicographically smallest maximizing profile.
pub fn solve_alpha<T: Scalar>(n: usize, alpha: &T, options: &SolveOptions) -> Result<(T, StructuredWitness<T>)> {
    options.check(n)?;
    if alpha.is_negative() {
        return Err(Error::DomainError(format!("alpha must be nonnegative, got {alpha}")));
    }
    let search = ProfileSearch::new(n, options.search);
    Ok(options.run(|| search.best(alpha)))
}

/// Profiles supported on `{k-1, k, n}` for some `k` in `2..=n`, with at most
/// `2n` items in the partial supports, in lexicographic order.
///
/// Partial supports of different sizes `i < j < n` with `j - i >= 2` can be
/// moved one step towards each other without losing optimal welfare while
/// lowering the envy-free welfare, and a support that receives no item is
/// better made full. Some optimal profile therefore lies in this family.
pub fn lemma4_candidates(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut out = BTreeSet::new();
    if n == 1 {
        out.insert(vec![1]);
    }
    for k in 2..=n {
        for b in 0..=n {
            for a in 0..=n - b {
                if a * k + b * (k - 1) > 2 * n {
                    break;
                }
                let mut s = vec![0; n];
                s[k - 2] += b;
                s[k - 1] += a;
                s[n - 1] += n - a - b;
                out.insert(s);
            }
        }
    }
    out.into_iter()
}

pub(crate) enum ProfileSearch<T> {
    /// Candidates with their `(sum r_i / i, sum s_i / i)` under the greedy fill.
    Restricted {
        candidates: Vec<(Vec<usize>, T, T)>,
    },
    Full {
        n: usize,
    },
}

type Best<T> = Option<(T, Vec<usize>)>;

fn pick<T: Scalar>(a: Best<T>, b: Best<T>) -> Best<T> {
    match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => match b.0.cmp(&a.0) {
            Ordering::Greater => Some(b),
            Ordering::Equal if b.1 < a.1 => Some(b),
            _ => Some(a),
        },
    }
}

impl<T: Scalar> ProfileSearch<T> {
    pub(crate) fn new(n: usize, kind: SearchKind) -> Self {
        match kind {
            SearchKind::Lemma4Restricted => ProfileSearch::Restricted {
                candidates: lemma4_candidates(n)
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .map(|s| {
                        let (gain, cost) = sparse_totals(&s);
                        (s, gain, cost)
                    })
                    .collect(),
            },
            SearchKind::FullEnumeration => ProfileSearch::Full { n },
        }
    }

    pub(crate) fn best(&self, alpha: &T) -> (T, StructuredWitness<T>) {
        let (value, s) = match self {
            ProfileSearch::Restricted { candidates } => {
                let (value, idx) = candidates
                    .par_iter()
                    .enumerate()
                    .map(|(idx, (_, gain, cost))| (gain.clone() - alpha.clone() * cost.clone(), idx))
                    // candidates are sorted, so the lowest index is the smallest profile
                    .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
                    .expect("nonempty family");
                (value, candidates[idx].0.clone())
            }
            ProfileSearch::Full { n } => full_search(*n, alpha),
        };
        (value, StructuredWitness::from_profile(s))
    }
}

/// `(sum r_i / i, sum s_i / i)` under the greedy fill, visiting only nonzero entries.
fn sparse_totals<T: Scalar>(s: &[usize]) -> (T, T) {
    let mut left = s.len();
    let (mut gain, mut cost) = (T::zero(), T::zero());
    for (idx, &si) in s.iter().enumerate().filter(|(_, &c)| c > 0) {
        let ri = ((idx + 1) * si).min(left);
        left -= ri;
        let size = T::from_count(idx + 1);
        gain = gain + T::from_count(ri) / size.clone();
        cost = cost + T::from_count(si) / size;
    }
    (gain, cost)
}

/// Depth-first enumeration of all profiles in lexicographic order, split
/// into independent tasks over the first two coordinates.
fn full_search<T: Scalar>(n: usize, alpha: &T) -> (T, Vec<usize>) {
    // the all-full profile is always feasible with objective 1 - alpha
    let floor = T::one() - alpha.clone();
    let inv: Vec<T> = (1..=n).map(|i| T::one() / T::from_count(i)).collect();
    let alpha_inv: Vec<T> = inv.iter().map(|v| alpha.clone() * v.clone()).collect();
    let ctx = FullCtx { n, alpha, inv: &inv, alpha_inv: &alpha_inv, floor: &floor };

    let depth = if n >= 3 { 2 } else { 0 };
    let mut prefixes = vec![Vec::new()];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let used: usize = p.iter().sum();
                (0..=n - used).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    prefixes.par_iter().map(|prefix| ctx.run(prefix)).reduce(|| None, pick).expect("the full profile is always reached")
}

struct FullCtx<'a, T> {
    n: usize,
    alpha: &'a T,
    inv: &'a [T],
    alpha_inv: &'a [T],
    floor: &'a T,
}

struct Walk<T> {
    s: Vec<usize>,
    best: Best<T>,
}

impl<T: Scalar> FullCtx<'_, T> {
    fn run(&self, prefix: &[usize]) -> Best<T> {
        let mut walk = Walk { s: vec![0; self.n], best: None };
        let mut agents = self.n;
        let mut items = self.n;
        let mut acc = T::zero();
        for (idx, &c) in prefix.iter().enumerate() {
            let r = ((idx + 1) * c).min(items);
            walk.s[idx] = c;
            acc = acc + self.term(idx, r, c);
            agents -= c;
            items -= r;
        }
        self.visit(&mut walk, prefix.len(), agents, items, acc);
        walk.best
    }

    fn term(&self, idx: usize, r: usize, c: usize) -> T {
        T::from_count(r) * self.inv[idx].clone() - T::from_count(c) * self.alpha_inv[idx].clone()
    }

    fn visit(&self, walk: &mut Walk<T>, idx: usize, agents: usize, items: usize, acc: T) {
        let n = self.n;
        if idx == n - 1 {
            if items > n * agents {
                return;
            }
            walk.s[idx] = agents;
            let value = acc + self.term(idx, items, agents);
            let accept = match &walk.best {
                None => value >= *self.floor,
                Some((b, _)) => value > *b,
            };
            if accept {
                walk.best = Some((value, walk.s.clone()));
            }
            walk.s[idx] = 0;
            return;
        }
        // remaining items are worth at most 1/(idx+1), remaining agents cost at least alpha/n
        let bound = acc.clone() + T::from_count(items) * self.inv[idx].clone()
            - T::from_count(agents) * self.alpha.clone() / T::from_count(n);
        let threshold = match &walk.best {
            Some((b, _)) if b > self.floor => b,
            _ => self.floor,
        };
        if bound < *threshold {
            return;
        }
        for c in 0..=agents {
            let r = ((idx + 1) * c).min(items);
            walk.s[idx] = c;
            let next = acc.clone() + self.term(idx, r, c);
            self.visit(walk, idx + 1, agents - c, items - r, next);
        }
        walk.s[idx] = 0;
    }
}
