//! Reference estimators for the spectral radius, independent of the
//! smoothing iteration: Collatz–Wielandt bracketing at a positive vector and
//! a normalized multilinear power iteration built on it.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::solver::residual;
use crate::tensor::{contract, row_sums, DenseTensor};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleEstimate<T> {
    pub lower: T,
    pub upper: T,
    /// Last iterate with a valid bracket, scaled to unit maximum entry.
    pub vector: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
}

impl<T: Scalar> OracleEstimate<T> {
    pub fn midpoint(&self) -> T {
        T::lit(0.5) * (self.lower + self.upper)
    }

    /// Eigen-equation defect of `(midpoint, vector)` on `a`.
    pub fn residual(&self, a: &DenseTensor<T>) -> Result<T> {
        residual(a, self.midpoint(), &self.vector)
    }
}

/// `(min_i, max_i)` of `(A x^{m-1})_i / x_i^{m-1}` for strictly positive `x`.
pub fn collatz_wielandt_bounds<T: Scalar>(a: &DenseTensor<T>, x: &[T]) -> Result<(T, T)> {
    if let Some(i) = x.iter().position(|v| !(v.is_finite() && *v > T::zero())) {
        return Err(Error::InvalidArgument(format!(
            "bracketing vector must be strictly positive; entry {} is {}",
            i + 1,
            x[i]
        )));
    }
    let y = contract(a, x)?;
    Ok(bracket(&y, x, a.order() - 1))
}

fn bracket<T: Scalar>(y: &[T], x: &[T], deg: usize) -> (T, T) {
    y.iter()
        .zip(x)
        .map(|(yi, xi)| *yi / xi.powi(deg as i32))
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), q| {
            (lo.min(q), hi.max(q))
        })
}

/// Power iteration `x <- normalize((A x^{m-1})^{[1/(m-1)]})` from the all-ones
/// vector, bracketing `rho(A)` after every iterate.
///
/// Stops once `upper - lower <= tol`. If an iterate acquires a zero
/// component (reducible inputs) the last valid bracket is returned with
/// `converged = false`.
pub fn power_iteration<T: Scalar>(
    a: &DenseTensor<T>,
    tol: T,
    max_iter: usize,
) -> Result<OracleEstimate<T>> {
    if !(tol.is_finite() && tol > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "tol must be positive, got {tol}"
        )));
    }
    if let Some(i) = row_sums(a).iter().position(|s| *s <= T::zero()) {
        return Err(Error::ZeroRowSum { row: i + 1 });
    }
    let deg = a.order() - 1;
    let mut x = vec![T::one(); a.dim()];
    let mut iterations = 0;
    loop {
        let y = contract(a, &x)?;
        let (lower, upper) = bracket(&y, &x, deg);
        let converged = upper - lower <= tol;
        if converged || iterations >= max_iter {
            return Ok(OracleEstimate {
                lower,
                upper,
                vector: x,
                iterations,
                converged,
            });
        }
        let next: Vec<T> = y.iter().map(|v| v.root(deg)).collect();
        let top = next.iter().copied().fold(T::zero(), T::max);
        // only reachable through underflow once row sums are positive
        if next.iter().any(|v| *v <= T::zero()) {
            return Ok(OracleEstimate {
                lower,
                upper,
                vector: x,
                iterations,
                converged: false,
            });
        }
        x = next.into_iter().map(|v| v / top).collect();
        iterations += 1;
    }
}

/// [`power_iteration`] with tolerance `1e-9` and at most `10_000` iterates.
pub fn power_iteration_default<T: Scalar>(a: &DenseTensor<T>) -> Result<OracleEstimate<T>> {
    power_iteration(a, T::lit(DEFAULT_TOL), DEFAULT_MAX_ITER)
}
