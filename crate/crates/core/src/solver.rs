//! Row-sum smoothing iteration.
//!
//! Starting from `A = B + alpha·I`, each step replaces the current tensor by
//! its diagonal similarity with `d_i = R_i^{1/(m-1)}`, where `R_i` are the
//! current row sums. The extreme row sums `r <= rho(A) <= R` never widen, and
//! for irreducible `B` they close onto `rho(A)`. The product of the rescaling
//! factors converges to the Perron vector of `A`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::format::fmt_sig;
use crate::scalar::Scalar;
use crate::tensor::{
    add_identity_shift, contract, diagonal_similarity, row_sums, DenseTensor, ScalingVector,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    /// Identity shift added to the input before iterating.
    pub alpha: T,
    /// Absolute tolerance on `R - r`.
    pub tol: T,
    /// Maximum number of smoothing steps.
    pub max_iter: usize,
    /// Record one [`TraceRow`] per iterate.
    pub trace: bool,
    /// Rescale the reported eigenvector to unit maximum entry.
    pub normalize: bool,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        SolverConfig {
            alpha: T::one(),
            tol: T::lit(1e-7),
            max_iter: 100,
            trace: true,
            normalize: false,
        }
    }
}

impl<T: Scalar> SolverConfig<T> {
    pub fn with_alpha(mut self, alpha: T) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha >= T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "alpha must be nonnegative, got {}",
                self.alpha
            )));
        }
        if !(self.tol.is_finite() && self.tol > T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Snapshot of the iteration after `k` smoothing steps.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationState<T> {
    tensor: DenseTensor<T>,
    sums: Vec<T>,
    upper: T,
    lower: T,
    accumulator: Vec<T>,
    k: usize,
}

impl<T: Scalar> IterationState<T> {
    /// Current similar tensor `A^(k)`.
    pub fn tensor(&self) -> &DenseTensor<T> {
        &self.tensor
    }

    /// Row sums of [`Self::tensor`].
    pub fn sums(&self) -> &[T] {
        &self.sums
    }

    pub fn upper(&self) -> T {
        self.upper
    }

    pub fn lower(&self) -> T {
        self.lower
    }

    pub fn gap(&self) -> T {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> T {
        T::lit(0.5) * (self.upper + self.lower)
    }

    /// Running product `prod_l (R^(l)_i / R^(l))^{1/(m-1)}`; entries in `(0, 1]`.
    pub fn accumulator(&self) -> &[T] {
        &self.accumulator
    }

    /// Number of smoothing steps taken.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Whether all row sums coincide, i.e. the bounds have met.
    pub fn is_balanced(&self) -> bool {
        self.lower >= self.upper
    }

    fn trace_row(&self) -> TraceRow<T> {
        TraceRow {
            k: self.k + 1,
            lower: self.lower,
            upper: self.upper,
            gap: self.gap(),
            midpoint: self.midpoint(),
        }
    }
}

fn extremes<T: Scalar>(sums: &[T]) -> (T, T) {
    sums.iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), s| {
            (lo.min(*s), hi.max(*s))
        })
}

/// One row of the convergence trace. `k = 1` holds the unsmoothed row sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow<T> {
    pub k: usize,
    pub lower: T,
    pub upper: T,
    pub gap: T,
    pub midpoint: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<T> {
    /// Estimate of `rho(B + alpha·I)`: midpoint of the final bounds.
    pub rho_shifted: T,
    /// Estimate of `rho(B)`, `rho_shifted - alpha`.
    pub rho: T,
    pub alpha: T,
    /// Final lower bound `r` on `rho(B + alpha·I)`.
    pub lower: T,
    /// Final upper bound `R` on `rho(B + alpha·I)`.
    pub upper: T,
    pub eigenvector: Vec<T>,
    pub converged: bool,
    /// Smoothing steps taken.
    pub iterations: usize,
    pub final_gap: T,
    /// `max_i |(A v^{m-1})_i - rho_shifted v_i^{m-1}|` on the shifted tensor.
    pub residual: T,
    pub trace: Vec<TraceRow<T>>,
}

/// Shifts `b` and computes the initial row sums and bounds.
///
/// Fails with [`Error::ZeroRowSum`] when some row of `B + alpha·I` sums to zero.
pub fn init<T: Scalar>(b: &DenseTensor<T>, config: &SolverConfig<T>) -> Result<IterationState<T>> {
    config.validate()?;
    let tensor = add_identity_shift(b, config.alpha)?;
    let sums = row_sums(&tensor);
    if let Some(i) = sums.iter().position(|s| *s <= T::zero()) {
        return Err(Error::ZeroRowSum { row: i + 1 });
    }
    let (lower, upper) = extremes(&sums);
    let deg = tensor.order() - 1;
    let accumulator = sums.iter().map(|s| (*s / upper).root(deg)).collect();
    Ok(IterationState {
        tensor,
        sums,
        upper,
        lower,
        accumulator,
        k: 0,
    })
}

/// One smoothing step. A balanced state is returned unchanged.
pub fn step<T: Scalar>(state: &IterationState<T>) -> IterationState<T> {
    if state.is_balanced() {
        return state.clone();
    }
    let deg = state.tensor.order() - 1;
    let d = ScalingVector::new(state.sums.iter().map(|s| s.root(deg)).collect())
        .expect("row sums stay positive");
    let tensor = diagonal_similarity(&state.tensor, &d).expect("scaling has the tensor dimension");
    let sums = row_sums(&tensor);
    let (lower, upper) = extremes(&sums);
    let accumulator = state
        .accumulator
        .iter()
        .zip(&sums)
        .map(|(acc, s)| *acc * (*s / upper).root(deg))
        .collect();
    IterationState {
        tensor,
        sums,
        upper,
        lower,
        accumulator,
        k: state.k + 1,
    }
}

/// `max_i |(A v^{m-1})_i - lambda v_i^{m-1}|`.
pub fn residual<T: Scalar>(a: &DenseTensor<T>, lambda: T, v: &[T]) -> Result<T> {
    let av = contract(a, v)?;
    let deg = a.order() as i32 - 1;
    Ok(av
        .iter()
        .zip(v)
        .map(|(y, x)| (*y - lambda * x.powi(deg)).abs())
        .fold(T::zero(), T::max))
}

/// Bound `c` with `gap(k+1) <= c · gap(k)`, evaluated from the current tensor.
///
/// With `s` the largest and `t` the smallest row (lowest index on ties) and
/// `J` the tail positions where the normalized row `s` dominates row `t`,
/// `c = 1 - (sum over not-J of a[s] + sum over J of a[t]) / R`.
pub fn contraction_factor<T: Scalar>(state: &IterationState<T>) -> Result<T> {
    if state.is_balanced() {
        return Err(Error::ConstantRowSums);
    }
    let argext = |better: fn(T, T) -> bool| {
        state.sums.iter().enumerate().fold(0, |best, (i, s)| {
            if better(*s, state.sums[best]) {
                i
            } else {
                best
            }
        })
    };
    let s = argext(|a, b| a > b);
    let t = argext(|a, b| a < b);
    let (rs, rt) = (state.sums[s], state.sums[t]);
    let mass =
        state
            .tensor
            .row(s)
            .iter()
            .zip(state.tensor.row(t))
            .fold(T::zero(), |acc, (as_, at)| {
                if *as_ / rs >= *at / rt {
                    acc + *at
                } else {
                    acc + *as_
                }
            });
    let factor = T::one() - mass / state.upper;
    Ok(factor.max(T::zero()).min(T::one()))
}

/// Runs the smoothing iteration until `R - r <= tol` or `max_iter` steps.
///
/// Non-convergence is reported through [`SolveReport::converged`], not as an error.
pub fn solve<T: Scalar>(b: &DenseTensor<T>, config: &SolverConfig<T>) -> Result<SolveReport<T>> {
    let mut state = init(b, config)?;
    let mut trace = Vec::new();
    if config.trace {
        trace.push(state.trace_row());
    }
    while state.gap() > config.tol && state.k < config.max_iter {
        state = step(&state);
        if config.trace {
            trace.push(state.trace_row());
        }
    }

    let mut eigenvector = state.accumulator.clone();
    if config.normalize {
        let top = eigenvector.iter().copied().fold(T::zero(), T::max);
        eigenvector.iter_mut().for_each(|v| *v = *v / top);
    }
    let rho_shifted = state.midpoint();
    let a = add_identity_shift(b, config.alpha)?;
    let residual = residual(&a, rho_shifted, &eigenvector)?;
    Ok(SolveReport {
        rho_shifted,
        rho: rho_shifted - config.alpha,
        alpha: config.alpha,
        lower: state.lower,
        upper: state.upper,
        eigenvector,
        converged: state.gap() <= config.tol,
        iterations: state.k,
        final_gap: state.gap(),
        residual,
        trace,
    })
}

/// Writes the trace as CSV with header `k,r,R,gap,mid`, values to six
/// significant digits.
pub fn write_trace_csv<T: Scalar, W: Write>(rows: &[TraceRow<T>], mut w: W) -> Result<()> {
    writeln!(w, "k,r,R,gap,mid")?;
    let f = |v: T| fmt_sig(v.to_f64().unwrap_or(f64::NAN), 6);
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            row.k,
            f(row.lower),
            f(row.upper),
            f(row.gap),
            f(row.midpoint)
        )?;
    }
    w.flush()?;
    Ok(())
}
