#![allow(dead_code)]

use tensor_rho::{parse_tensor, Tensor};

/// The order-3, dimension-3 example with entries 3.72, 9.02, 9.55.
pub fn example_b() -> Tensor {
    parse_tensor("3 3\n1 2 2 3.72\n2 1 1 9.02\n3 1 1 9.55\n").unwrap()
}

/// Plain matrix power iteration on a row-major `n x n` matrix, written
/// without any of the tensor machinery. Returns the Rayleigh-free estimate
/// `max_i (Ax)_i / x_i` once successive estimates agree to `tol`.
pub fn matrix_power_radius(a: &[f64], n: usize, tol: f64) -> f64 {
    let mut x = vec![1.0; n];
    let mut prev = f64::INFINITY;
    for _ in 0..100_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a[i * n + j] * x[j]).sum())
            .collect();
        let lo = (0..n).map(|i| y[i] / x[i]).fold(f64::INFINITY, f64::min);
        let hi = (0..n).map(|i| y[i] / x[i]).fold(0.0, f64::max);
        if hi - lo <= tol && (hi - prev).abs() <= tol {
            return 0.5 * (lo + hi);
        }
        prev = hi;
        let top = y.iter().copied().fold(0.0, f64::max);
        x = y.iter().map(|v| v / top).collect();
    }
    panic!("matrix power iteration did not settle");
}
