use pof_core::bounds::g_of_d;
use pof_core::exhaustive::{envy_free_optimal_exhaustive, ExhaustiveOptions};
use pof_core::explore::{explore_p_nm, ExploreOptions};
use pof_core::io::{read_instance, write_instance};
use pof_core::matching::envy_free_optimal_welfare;
use pof_core::oracle::{oracle_p_nn, realize_config};
use pof_core::scalar::Scalar;
use pof_core::solver::{solve_alpha, solve_p_nn};
use pof_core::structure::{canonicalize, level_big_agent, smooth_small_agent, AssignmentMap};
use pof_core::welfare::{is_envy_free, price_ratio};
use pof_core::{Allocation, Rational, Rational128, SolveMode, SolveOptions, UtilityMatrix};
use proptest::prelude::*;

fn instance(n: usize, m: usize) -> impl Strategy<Value = UtilityMatrix<Rational>> {
    prop::collection::vec(prop::collection::vec(0i64..=8, m).prop_filter("nonzero", |c| c.iter().any(|&w| w > 0)), n)
        .prop_map(|cols| {
            let columns = cols
                .into_iter()
                .map(|c| {
                    let total: i64 = c.iter().sum();
                    c.into_iter().map(|w| Rational::frac(w, total)).collect()
                })
                .collect();
            UtilityMatrix::from_columns(columns).unwrap()
        })
}

fn square() -> impl Strategy<Value = UtilityMatrix<Rational>> {
    (1usize..=4).prop_flat_map(|n| instance(n, n))
}

proptest! {
    #[test]
    fn matching_agrees_with_enumeration(x in square()) {
        let by_matching = envy_free_optimal_welfare(&x).unwrap();
        let by_search = envy_free_optimal_exhaustive(&x, &ExhaustiveOptions::default()).unwrap().map(|(_, w)| w);
        prop_assert_eq!(by_matching, by_search);
    }

    #[test]
    fn envy_free_iff_column_maxima(x in square(), perm in Just(()).prop_perturb(|_, mut rng| rng.random::<u64>())) {
        let n = x.agents();
        let mut owner: Vec<usize> = (0..n).collect();
        let mut k = perm;
        for i in (1..n).rev() {
            owner.swap(i, (k % (i as u64 + 1)) as usize);
            k /= i as u64 + 1;
        }
        let a = Allocation::new(owner.clone(), n).unwrap();
        let tops = (0..n).all(|item| x.value(item, owner[item]) == x.column_max(owner[item]));
        prop_assert_eq!(is_envy_free(&x, &a).unwrap(), tops);
    }

    #[test]
    fn envy_free_welfare_at_least_one(x in (1usize..=3).prop_flat_map(|n| (Just(n), n..=n + 2)).prop_flat_map(|(n, m)| instance(n, m))) {
        if let Some((_, w)) = envy_free_optimal_exhaustive(&x, &ExhaustiveOptions::default()).unwrap() {
            prop_assert!(w >= Rational::frac(1, 1));
        }
    }

    #[test]
    fn scalar_types_agree(x in square()) {
        let wide = price_ratio(&x).unwrap().ratio;
        let narrow = price_ratio(&x.convert::<Rational128>()).unwrap().ratio.map(|r| r.convert::<Rational>());
        prop_assert_eq!(wide, narrow);
    }

    #[test]
    fn smoothing_is_idempotent(x in square()) {
        let Some(x) = canonicalize(&x).unwrap() else { return Ok(()) };
        let tau = AssignmentMap::optimal(&x);
        for j in 0..x.agents() {
            if let Ok(y) = smooth_small_agent(&x, &tau, j) {
                let tau_y = AssignmentMap::new(&y, tau.as_slice().to_vec()).unwrap();
                prop_assert_eq!(smooth_small_agent(&y, &tau_y, j).unwrap(), y);
            }
            if let Ok(y) = level_big_agent(&x, &tau, j) {
                if let Ok(tau_y) = AssignmentMap::new(&y, tau.as_slice().to_vec()) {
                    prop_assert_eq!(level_big_agent(&y, &tau_y, j).unwrap(), y);
                }
            }
        }
    }

    #[test]
    fn parametric_optimum_is_monotone(n in 1usize..=14, a in 0i64..40, b in 0i64..40) {
        let (lo, hi) = (Rational::frac(a.min(b), 8), Rational::frac(a.max(b), 8));
        let opts = SolveOptions::default();
        prop_assert!(solve_alpha(n, &lo, &opts).unwrap().0 >= solve_alpha(n, &hi, &opts).unwrap().0);
    }

    #[test]
    fn instance_file_round_trip(x in (1usize..=3).prop_flat_map(|n| instance(n, n + 1))) {
        prop_assert_eq!(read_instance(&write_instance(&x)).unwrap(), x);
    }

    #[test]
    fn g_peaks_at_stationary_point(k in 1usize..=12, num in 1i64..2000, den in 1i64..50) {
        let n = k * k + 2 * k;
        let d = Rational::frac(num, den);
        prop_assume!(d < Rational::from_count(n));
        prop_assert!(g_of_d(n, &Rational::from_count(k)) >= g_of_d(n, &d));
    }
}

#[test]
fn modes_agree() {
    for n in 1..=25 {
        let exact = solve_p_nn::<Rational>(n, &SolveOptions::default()).unwrap();
        let bisect = solve_p_nn::<Rational>(n, &SolveOptions::with_mode(SolveMode::Bisection)).unwrap();
        assert_eq!(exact, bisect, "n = {n}");
    }
}

#[test]
fn oracle_configs_are_certified() {
    for n in 1..=8 {
        let (value, cfg) = oracle_p_nn::<Rational>(n);
        let x = realize_config::<Rational>(&cfg, n).unwrap();
        assert_eq!(price_ratio(&x).unwrap().ratio, Some(value), "n = {n}");
    }
}

#[test]
fn explorer_monotone_in_items() {
    let n = 2;
    let mut previous: Option<(Rational, UtilityMatrix<Rational>)> = None;
    for m in 2..=5 {
        let initial = previous.iter().map(|(_, x)| x.pad_items(1)).collect();
        let opts = ExploreOptions { budget: 150, seed: 3, restarts: 3, initial };
        let report = explore_p_nm(n, m, &opts).unwrap();
        if let Some((bound, _)) = &previous {
            assert!(report.lower_bound >= *bound, "m = {m}");
        }
        previous = Some((report.lower_bound, report.witness));
    }
}
