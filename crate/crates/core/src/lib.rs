//! Spectral radius and positive eigenvector of nonnegative tensors.
//!
//! The solver repeatedly rescales an order-`m`, dimension-`n` tensor by a
//! diagonal similarity built from its own row sums. Every rescaled tensor has
//! the same H-eigenvalues as the input, and the minimum and maximum row sums
//! bracket the spectral radius, so each iteration yields certified bounds that
//! tighten monotonically.
//!
//! The core types are generic over the scalar ([`Scalar`] is implemented for
//! `f32` and `f64`); the aliases below fix the scalar to `f64`, which is what
//! the command-line front end uses.
//!
//! ```
//! use tensor_rho::{Tensor, SolverConfig, solve};
//!
//! // 2 x 2 matrix viewed as an order-2 tensor
//! let b = Tensor::from_entries(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
//! let report = solve(&b, &SolverConfig::default()).unwrap();
//! assert!(report.converged);
//! assert!((report.rho - 5.372281323269014).abs() < 1e-6);
//! ```

pub mod error;
pub mod format;
pub mod oracle;
pub mod scalar;
pub mod solver;
pub mod structure;
pub mod tensor;

pub use error::{Error, Result};
pub use format::{fmt_sig, parse_tensor, read_tensor, read_tensor_from, write_tensor};
pub use oracle::{collatz_wielandt_bounds, power_iteration, OracleEstimate};
pub use scalar::Scalar;
pub use solver::{
    contraction_factor, init, residual, solve, step, write_trace_csv, IterationState, SolveReport,
    SolverConfig, TraceRow,
};
pub use structure::{
    domination_iterates, irreducible_iterative, reducible_bruteforce, IrreducibilityVerdict,
};
pub use tensor::{
    add_identity_shift, contract, diagonal_similarity, random_sparse_tensor, random_tensor,
    random_tensor_capped, row_sums, DenseTensor, EigenPair, ScalingVector, DEFAULT_MAX_ENTRIES,
};

/// Double-precision dense tensor.
pub type Tensor = DenseTensor<f64>;
/// Double-precision diagonal scaling.
pub type Scaling = ScalingVector<f64>;
/// Double-precision solver configuration.
pub type Config = SolverConfig<f64>;
/// Double-precision solver report.
pub type Report = SolveReport<f64>;
/// Double-precision iteration state.
pub type State = IterationState<f64>;
/// Double-precision oracle bracket.
pub type Estimate = OracleEstimate<f64>;
