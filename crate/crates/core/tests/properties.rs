mod common;

use common::{example_b, matrix_power_radius};
use proptest::prelude::*;
use tensor_rho::oracle::power_iteration_default;
use tensor_rho::{
    add_identity_shift, collatz_wielandt_bounds, contraction_factor, diagonal_similarity, init,
    random_tensor, residual, row_sums, solve, step, Config, Scaling, Tensor,
};

fn positive(m: usize, n: usize, seed: u64) -> Tensor {
    random_tensor(m, n, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bounds_are_monotone_and_sandwich_the_oracle(m in 2usize..=4, n in 2usize..=5, seed in any::<u64>()) {
        let b = positive(m, n, seed);
        let report = solve(&b, &Config::default()).unwrap();
        let a = add_identity_shift(&b, 1.0).unwrap();
        let est = power_iteration_default(&a).unwrap();
        prop_assert!(est.converged);
        let rho_hat = est.midpoint();
        for w in report.trace.windows(2) {
            prop_assert!(w[1].lower >= w[0].lower - 1e-12);
            prop_assert!(w[1].upper <= w[0].upper + 1e-12);
        }
        for row in &report.trace {
            prop_assert!(row.lower - 1e-6 <= rho_hat && rho_hat <= row.upper + 1e-6);
            prop_assert!(row.gap >= 0.0);
            prop_assert!(row.lower <= row.midpoint && row.midpoint <= row.upper);
        }
        if report.converged {
            prop_assert!(est.lower - 1e-6 <= report.rho_shifted && report.rho_shifted <= est.upper + 1e-6);
        }
    }

    #[test]
    fn gap_contracts_by_factor(n in 2usize..=5, seed in any::<u64>()) {
        let b = positive(3, n, seed);
        let mut s = init(&b, &Config::default()).unwrap();
        for _ in 0..30 {
            if s.is_balanced() {
                break;
            }
            let c = contraction_factor(&s).unwrap();
            prop_assert!((0.0..1.0).contains(&c));
            let next = step(&s);
            prop_assert!(next.gap() <= c * s.gap() + 1e-12);
            s = next;
        }
    }

    #[test]
    fn state_invariants(m in 2usize..=4, n in 1usize..=4, seed in any::<u64>()) {
        let b = positive(m, n, seed);
        let mut s = init(&b, &Config::default()).unwrap();
        for _ in 0..10 {
            prop_assert!(s.lower() <= s.upper() && s.lower() > 0.0);
            prop_assert!(s.accumulator().iter().all(|v| *v > 0.0 && *v <= 1.0));
            for (a, b) in row_sums(s.tensor()).iter().zip(s.sums()) {
                prop_assert!((a - b).abs() <= 1e-12 * a.abs());
            }
            s = step(&s);
        }
    }

    #[test]
    fn converged_eigenpair(m in 2usize..=4, n in 1usize..=5, seed in any::<u64>()) {
        let b = positive(m, n, seed);
        // weakly coupled draws can need more than the default 100 steps
        let cfg = Config::default().with_max_iter(2000);
        let r = solve(&b, &cfg).unwrap();
        prop_assert!(r.converged);
        prop_assert!(r.eigenvector.iter().all(|v| *v > 0.0));
        let a = add_identity_shift(&b, cfg.alpha).unwrap();
        let top = row_sums(&a).into_iter().fold(0.0, f64::max);
        let res = residual(&a, r.rho_shifted, &r.eigenvector).unwrap();
        prop_assert_eq!(res, r.residual);
        prop_assert!(res <= 10.0 * cfg.tol * top);
    }

    #[test]
    fn shift_equivariance(m in 2usize..=4, n in 2usize..=5, seed in any::<u64>()) {
        let b = positive(m, n, seed);
        let cfg = Config::default().with_max_iter(2000);
        let one = solve(&b, &cfg).unwrap();
        let two = solve(&b, &cfg.with_alpha(2.0)).unwrap();
        prop_assert!((one.rho - two.rho).abs() <= 1e-5);
        prop_assert!((two.rho_shifted - two.rho - 2.0).abs() < 1e-12);
    }

    #[test]
    fn matrices_match_plain_power_iteration(n in 1usize..=6, seed in any::<u64>()) {
        let b = positive(2, n, seed);
        let r = solve(&b, &Config::default().with_tol(1e-10).with_max_iter(5000)).unwrap();
        let want = matrix_power_radius(b.entries(), n, 1e-12);
        prop_assert!((r.rho - want).abs() <= 1e-6, "{} vs {}", r.rho, want);
    }

    #[test]
    fn similarity_keeps_eigenpairs(seed in any::<u64>(), d in proptest::collection::vec(0.3f64..3.0, 3)) {
        let b = positive(3, 3, seed);
        let a = add_identity_shift(&b, 1.0).unwrap();
        let r = solve(&b, &Config::default().with_tol(1e-13).with_max_iter(5000)).unwrap();
        prop_assert!(residual(&a, r.rho_shifted, &r.eigenvector).unwrap() <= 1e-12 * r.rho_shifted);
        // (lambda, x) on A  =>  (lambda, D^{-1} x) on the similar tensor
        let scaled = diagonal_similarity(&a, &Scaling::new(d.clone()).unwrap()).unwrap();
        let y: Vec<f64> = r.eigenvector.iter().zip(&d).map(|(x, di)| x / di).collect();
        let top = y.iter().copied().fold(0.0, f64::max);
        let y: Vec<f64> = y.iter().map(|v| v / top).collect();
        prop_assert!(residual(&scaled, r.rho_shifted, &y).unwrap() <= 1e-10 * r.rho_shifted);
    }

    #[test]
    fn row_sum_bracket_consistency(m in 2usize..=4, n in 1usize..=5, seed in any::<u64>()) {
        let a = positive(m, n, seed);
        let (lo, hi) = collatz_wielandt_bounds(&a, &vec![1.0; n]).unwrap();
        let sums = row_sums(&a);
        let min = sums.iter().copied().fold(f64::INFINITY, f64::min);
        let max = sums.iter().copied().fold(0.0, f64::max);
        prop_assert!((lo - min).abs() <= 1e-12 * min && (hi - max).abs() <= 1e-12 * max);
    }
}

#[test]
fn bracket_at_accumulator_narrows_on_example() {
    let a = add_identity_shift(&example_b(), 1.0).unwrap();
    let mut s = init(&example_b(), &Config::default()).unwrap();
    let mut prev = collatz_wielandt_bounds(&a, s.accumulator()).unwrap();
    for _ in 0..50 {
        s = step(&s);
        let next = collatz_wielandt_bounds(&a, s.accumulator()).unwrap();
        assert!(
            next.0 >= prev.0 - 1e-12 && next.1 <= prev.1 + 1e-12,
            "{prev:?} -> {next:?}"
        );
        // the bracket at the accumulator is the next iterate's row-sum range
        let ahead = step(&s);
        assert!((next.0 - ahead.lower()).abs() < 1e-9 && (next.1 - ahead.upper()).abs() < 1e-9);
        prev = next;
    }
}

#[test]
fn solver_and_oracle_residuals_agree() {
    for seed in 0..10 {
        let b = positive(3, 5, seed);
        let a = add_identity_shift(&b, 1.0).unwrap();
        let r = solve(&b, &Config::default()).unwrap();
        let est = power_iteration_default(&a).unwrap();
        let oracle_res = est.residual(&a).unwrap();
        assert!(
            (r.residual - oracle_res).abs() <= 1e-6,
            "seed {seed}: {} vs {oracle_res}",
            r.residual
        );
    }
}

#[test]
fn example_power_iteration_value() {
    let a = add_identity_shift(&example_b(), 1.0).unwrap();
    let est = power_iteration_default(&a).unwrap();
    assert!(est.converged);
    assert!((est.lower - 6.79262).abs() < 1e-5 && (est.upper - 6.79262).abs() < 1e-5);
}
