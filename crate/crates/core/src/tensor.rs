//! Dense nonnegative tensors and the multilinear operations on them.
//!
//! Entries are stored flat in lexicographic multi-index order: the entry
//! `a[i1][i2]...[im]` (0-based) lives at offset `i1 * n^(m-1) + i2 * n^(m-2) + ... + im`.
//! Row `i` is therefore the contiguous slice of `n^(m-1)` entries starting at
//! `i * n^(m-1)`, and the column offset inside a row enumerates the tail
//! indices `(i2, ..., im)` in the same lexicographic order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Upper bound on the number of entries a generated tensor may have.
pub const DEFAULT_MAX_ENTRIES: usize = 1 << 25;

/// Order-`m`, dimension-`n` tensor with finite nonnegative entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor<T> {
    order: usize,
    dim: usize,
    entries: Vec<T>,
}

/// `n^k`, or `None` on overflow.
pub(crate) fn checked_len(dim: usize, k: usize) -> Option<usize> {
    let k = u32::try_from(k).ok()?;
    dim.checked_pow(k)
}

fn check_shape(order: usize, dim: usize) -> Result<usize> {
    if order < 2 {
        return Err(Error::InvalidShape(format!(
            "order must be at least 2, got {order}"
        )));
    }
    if dim < 1 {
        return Err(Error::InvalidShape("dimension must be at least 1".into()));
    }
    checked_len(dim, order).ok_or(Error::ResourceLimit {
        order,
        dim,
        cap: usize::MAX,
    })
}

impl<T: Scalar> DenseTensor<T> {
    /// Builds a tensor from its flat lexicographic entries, rejecting
    /// negative, NaN and infinite values.
    pub fn from_entries(order: usize, dim: usize, entries: Vec<T>) -> Result<Self> {
        let len = check_shape(order, dim)?;
        if entries.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: entries.len(),
            });
        }
        if let Some((position, v)) = entries
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= T::zero()))
        {
            return Err(Error::InvalidEntry {
                position,
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(DenseTensor {
            order,
            dim,
            entries,
        })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        let len = check_shape(order, dim)?;
        Ok(DenseTensor {
            order,
            dim,
            entries: vec![T::zero(); len],
        })
    }

    /// Tensor with every entry equal to one.
    pub fn ones(order: usize, dim: usize) -> Result<Self> {
        let len = check_shape(order, dim)?;
        Ok(DenseTensor {
            order,
            dim,
            entries: vec![T::one(); len],
        })
    }

    /// Identity tensor scaled by `alpha`: `alpha` on the superdiagonal `(i, i, ..., i)`.
    pub fn identity(order: usize, dim: usize, alpha: T) -> Result<Self> {
        add_identity_shift(&Self::zeros(order, dim)?, alpha)
    }

    /// Builds a tensor from a closure over 0-based multi-indices.
    pub fn from_fn<F>(order: usize, dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> T,
    {
        let len = check_shape(order, dim)?;
        let mut idx = vec![0usize; order];
        let mut entries = Vec::with_capacity(len);
        for _ in 0..len {
            entries.push(f(&idx));
            advance(&mut idx, dim);
        }
        Self::from_entries(order, dim, entries)
    }

    /// Wraps entries that are known to be valid. Only used for results of
    /// operations that preserve nonnegativity.
    fn from_raw(order: usize, dim: usize, entries: Vec<T>) -> Self {
        debug_assert_eq!(entries.len(), checked_len(dim, order).unwrap());
        DenseTensor {
            order,
            dim,
            entries,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    /// Number of entries in one row, `n^(m-1)`.
    pub fn row_len(&self) -> usize {
        self.entries.len() / self.dim
    }

    /// Entries `a[i][..]` of row `i` (0-based) in lexicographic tail order.
    pub fn row(&self, i: usize) -> &[T] {
        let w = self.row_len();
        &self.entries[i * w..(i + 1) * w]
    }

    /// Flat offset of a 0-based multi-index.
    pub fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(
            idx.len(),
            self.order,
            "multi-index length must equal the order"
        );
        idx.iter().fold(0, |acc, &i| {
            assert!(
                i < self.dim,
                "index {i} out of range for dimension {}",
                self.dim
            );
            acc * self.dim + i
        })
    }

    /// Entry at a 0-based multi-index.
    pub fn get(&self, idx: &[usize]) -> T {
        self.entries[self.offset(idx)]
    }

    /// Flat offset of the superdiagonal entry `(i, i, ..., i)`.
    pub fn diagonal_offset(&self, i: usize) -> usize {
        // 1 + n + n^2 + ... + n^(m-1)
        let step = (self.entries.len() - 1) / (self.dim.max(2) - 1);
        i * step
    }

    /// Whether every entry is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|v| *v > T::zero())
    }

    /// Entrywise sum of two tensors of the same shape.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::InvalidShape(format!(
                "cannot add ({}, {}) and ({}, {}) tensors",
                self.order, self.dim, other.order, other.dim
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(Self::from_raw(self.order, self.dim, entries))
    }

    /// Converts the scalar type of every entry.
    pub fn cast<U: Scalar>(&self) -> DenseTensor<U> {
        DenseTensor {
            order: self.order,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|v| U::from_f64(v.to_f64().unwrap()).unwrap())
                .collect(),
        }
    }
}

/// Odometer increment of a 0-based multi-index in lexicographic order.
pub(crate) fn advance(idx: &mut [usize], dim: usize) {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < dim {
            return;
        }
        *slot = 0;
    }
}

/// Diagonal of a nonsingular scaling matrix; all entries finite and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingVector<T> {
    values: Vec<T>,
}

impl<T: Scalar> ScalingVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > T::zero()))
        {
            return Err(Error::NonPositiveScaling {
                index: i + 1,
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(ScalingVector { values })
    }

    pub fn ones(n: usize) -> Self {
        ScalingVector {
            values: vec![T::one(); n],
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// An eigenvalue with a (nonzero) eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    pub value: T,
    pub vector: Vec<T>,
}

impl<T: Scalar> EigenPair<T> {
    pub fn new(value: T, vector: Vec<T>) -> Result<Self> {
        if vector.iter().all(|v| *v == T::zero()) {
            return Err(Error::InvalidArgument("eigenvector must be nonzero".into()));
        }
        Ok(EigenPair { value, vector })
    }
}

/// `x ⊗ x ⊗ ... ⊗ x` with `copies` factors, in lexicographic order.
pub(crate) fn tail_products<T: Scalar>(x: &[T], copies: usize) -> Vec<T> {
    let mut out = vec![T::one()];
    for _ in 0..copies {
        let mut next = Vec::with_capacity(out.len() * x.len());
        for p in &out {
            next.extend(x.iter().map(|xi| *p * *xi));
        }
        out = next;
    }
    out
}

fn check_len<T>(a: &DenseTensor<T>, x: &[T]) -> Result<()> {
    if x.len() != a.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: x.len(),
        });
    }
    Ok(())
}

/// `(A x^{m-1})_i = Σ a[i][i2..im] x[i2] ... x[im]`.
///
/// Each row is accumulated sequentially in lexicographic tail order.
pub fn contract<T: Scalar>(a: &DenseTensor<T>, x: &[T]) -> Result<Vec<T>> {
    check_len(a, x)?;
    let w = tail_products(x, a.order - 1);
    Ok((0..a.dim)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(&w)
                .fold(T::zero(), |acc, (aij, wj)| acc + *aij * *wj)
        })
        .collect())
}

/// Row sums `R_i`; identical to `contract(a, ones)`.
pub fn row_sums<T: Scalar>(a: &DenseTensor<T>) -> Vec<T> {
    contract(a, &vec![T::one(); a.dim]).expect("ones vector has the tensor dimension")
}

/// Diagonally similar tensor `a'[i1..im] = d[i1]^{-(m-1)} a[i1..im] d[i2] ... d[im]`.
///
/// Shares every H-eigenvalue with `a`; if `x` is an eigenvector of `a` then
/// `D^{-1} x` is one of the result.
pub fn diagonal_similarity<T: Scalar>(
    a: &DenseTensor<T>,
    d: &ScalingVector<T>,
) -> Result<DenseTensor<T>> {
    check_len(a, d.values())?;
    let deg = a.order - 1;
    let w = tail_products(d.values(), deg);
    let mut entries = Vec::with_capacity(a.entries.len());
    for (i, di) in d.values().iter().enumerate() {
        let lead = di.powi(deg as i32).recip();
        entries.extend(a.row(i).iter().zip(&w).map(|(aij, wj)| lead * *aij * *wj));
    }
    Ok(DenseTensor::from_raw(a.order, a.dim, entries))
}

/// `B + alpha·I`, where `I` has ones on the superdiagonal `(i, ..., i)`.
pub fn add_identity_shift<T: Scalar>(b: &DenseTensor<T>, alpha: T) -> Result<DenseTensor<T>> {
    if !(alpha.is_finite() && alpha >= T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "shift must be finite and nonnegative, got {alpha}"
        )));
    }
    let mut out = b.clone();
    if alpha > T::zero() {
        for i in 0..b.dim {
            let off = b.diagonal_offset(i);
            out.entries[off] = out.entries[off] + alpha;
        }
    }
    Ok(out)
}

/// Seeded tensor with i.i.d. entries uniform on `[0, 10]`, capped at
/// [`DEFAULT_MAX_ENTRIES`] entries.
pub fn random_tensor<T: Scalar>(order: usize, dim: usize, seed: u64) -> Result<DenseTensor<T>> {
    random_tensor_capped(order, dim, seed, DEFAULT_MAX_ENTRIES)
}

fn capped_len(order: usize, dim: usize, cap: usize) -> Result<usize> {
    let len = check_shape(order, dim).map_err(|e| match e {
        Error::ResourceLimit { .. } => Error::ResourceLimit { order, dim, cap },
        e => e,
    })?;
    if len > cap {
        return Err(Error::ResourceLimit { order, dim, cap });
    }
    Ok(len)
}

pub fn random_tensor_capped<T: Scalar>(
    order: usize,
    dim: usize,
    seed: u64,
    cap: usize,
) -> Result<DenseTensor<T>> {
    let len = capped_len(order, dim, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..len)
        .map(|_| T::lit(rng.gen_range(0.0..=10.0)))
        .collect();
    Ok(DenseTensor::from_raw(order, dim, entries))
}

/// Seeded tensor where each entry is nonzero (uniform on `(0, 10]`) with
/// probability `density` and zero otherwise.
pub fn random_sparse_tensor<T: Scalar>(
    order: usize,
    dim: usize,
    density: f64,
    seed: u64,
) -> Result<DenseTensor<T>> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let len = capped_len(order, dim, DEFAULT_MAX_ENTRIES)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..len)
        .map(|_| {
            if rng.gen_bool(density) {
                T::lit(10.0 - rng.gen_range(0.0..10.0))
            } else {
                T::zero()
            }
        })
        .collect();
    Ok(DenseTensor::from_raw(order, dim, entries))
}
