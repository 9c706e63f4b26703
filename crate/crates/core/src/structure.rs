//! Irreducibility of nonnegative tensors.
//!
//! A tensor is reducible when some nonempty proper index set `I` satisfies
//! `a[i1][i2..im] = 0` for every `i1` in `I` and every `i2, ..., im` outside `I`.
//! Two independent deciders are provided: support propagation, which grows
//! the set of indices reachable from each singleton under `x -> (B + I) x^{m-1}`,
//! and an exhaustive scan over all subsets.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{add_identity_shift, contract, DenseTensor};

/// Largest dimension accepted by [`reducible_bruteforce`].
pub const BRUTEFORCE_MAX_DIM: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityVerdict {
    pub irreducible: bool,
    /// Reducing index set, 0-based and sorted; present iff reducible.
    pub witness: Option<Vec<usize>>,
}

impl IrreducibilityVerdict {
    fn irreducible() -> Self {
        IrreducibilityVerdict {
            irreducible: true,
            witness: None,
        }
    }

    fn reducible(witness: Vec<usize>) -> Self {
        IrreducibilityVerdict {
            irreducible: false,
            witness: Some(witness),
        }
    }

    /// Witness with 1-based indices.
    pub fn witness_one_based(&self) -> Option<Vec<usize>> {
        self.witness
            .as_ref()
            .map(|w| w.iter().map(|i| i + 1).collect())
    }
}

impl fmt::Display for IrreducibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness_one_based() {
            None => write!(f, "irreducible"),
            Some(w) => {
                let items: Vec<String> = w.iter().map(|i| i.to_string()).collect();
                write!(f, "reducible, witness I = {{{}}}", items.join(","))
            }
        }
    }
}

/// Checks the reducibility zero pattern for a 0-based index set.
pub fn witness_is_sound<T: Scalar>(b: &DenseTensor<T>, witness: &[usize]) -> bool {
    let n = b.dim();
    if witness.is_empty() || witness.len() >= n || witness.iter().any(|i| *i >= n) {
        return false;
    }
    let outside: Vec<bool> = (0..n).map(|i| !witness.contains(&i)).collect();
    let mask = tail_mask(&outside, b.order() - 1);
    witness.iter().all(|&i| {
        b.row(i)
            .iter()
            .zip(&mask)
            .all(|(a, m)| !*m || *a == T::zero())
    })
}

/// `mask[t]` is true iff every index of tail position `t` lies in `set`.
fn tail_mask(set: &[bool], copies: usize) -> Vec<bool> {
    let mut out = vec![true];
    for _ in 0..copies {
        out = out
            .iter()
            .flat_map(|p| set.iter().map(move |s| *p && *s))
            .collect();
    }
    out
}

/// One propagation round: `S ∪ {i : a[i][t] > 0 for some tail t ⊆ S}`.
fn grow<T: Scalar>(b: &DenseTensor<T>, support: &[bool]) -> Vec<bool> {
    let mask = tail_mask(support, b.order() - 1);
    (0..b.dim())
        .map(|i| {
            support[i]
                || b.row(i)
                    .iter()
                    .zip(&mask)
                    .any(|(a, m)| *m && *a > T::zero())
        })
        .collect()
}

/// Supports `S_0, ..., S_{n-1}` of the iterates `x_{k+1} = (B + I) x_k^{m-1}`
/// started from a vector supported on `start` (0-based).
pub fn propagate_support<T: Scalar>(b: &DenseTensor<T>, start: &[usize]) -> Vec<Vec<bool>> {
    let mut s = vec![false; b.dim()];
    for &j in start {
        s[j] = true;
    }
    let mut seq = vec![s];
    for _ in 1..b.dim() {
        let next = grow(b, seq.last().unwrap());
        seq.push(next);
    }
    seq
}

/// Decides irreducibility by support propagation from every singleton.
///
/// The support pattern of `(B + I) x^{m-1}` depends only on the support of
/// `x`, and supports never shrink, so `n` singleton starts with at most `n - 1`
/// rounds each decide whether every nonzero start becomes strictly positive.
/// When a start stalls the complement of its reachable set is a reducing set;
/// the lexicographically smallest such complement is returned.
pub fn irreducible_iterative<T: Scalar>(b: &DenseTensor<T>) -> IrreducibilityVerdict {
    let n = b.dim();
    let mut best: Option<Vec<usize>> = None;
    for j in 0..n {
        let mut s = vec![false; n];
        s[j] = true;
        for _ in 1..n {
            let next = grow(b, &s);
            if next == s {
                break;
            }
            s = next;
        }
        if s.iter().all(|v| *v) {
            continue;
        }
        let complement: Vec<usize> = (0..n).filter(|i| !s[*i]).collect();
        if best.as_ref().is_none_or(|w| complement < *w) {
            best = Some(complement);
        }
    }
    match best {
        None => IrreducibilityVerdict::irreducible(),
        Some(w) => {
            assert!(
                witness_is_sound(b, &w),
                "stalled support must yield a reducing set"
            );
            IrreducibilityVerdict::reducible(w)
        }
    }
}

/// Decides irreducibility by scanning all `2^n - 2` nonempty proper subsets.
/// Returns the lexicographically smallest reducing set as witness.
pub fn reducible_bruteforce<T: Scalar>(b: &DenseTensor<T>) -> Result<IrreducibilityVerdict> {
    let n = b.dim();
    if n > BRUTEFORCE_MAX_DIM {
        return Err(Error::SubsetScanTooLarge {
            dim: n,
            cap: BRUTEFORCE_MAX_DIM,
        });
    }
    // For each row, the distinct index sets (as bitmasks) of its nonzero tails.
    let deg = b.order() - 1;
    let tails: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut masks: Vec<u32> = b
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, a)| **a > T::zero())
                .map(|(mut t, _)| {
                    let mut m = 0u32;
                    for _ in 0..deg {
                        m |= 1 << (t % n);
                        t /= n;
                    }
                    m
                })
                .collect();
            masks.sort_unstable();
            masks.dedup();
            masks
        })
        .collect();

    let full: u32 = (1u32 << n) - 1;
    let mut best: Option<Vec<usize>> = None;
    for set in 1..full {
        // Reducing iff no row in the set has a nonzero tail entirely outside it.
        let reducing = (0..n)
            .filter(|i| set & (1 << i) != 0)
            .all(|i| tails[i].iter().all(|m| m & set != 0));
        if reducing {
            let members: Vec<usize> = (0..n).filter(|i| set & (1 << i) != 0).collect();
            if best.as_ref().is_none_or(|w| members < *w) {
                best = Some(members);
            }
        }
    }
    Ok(match best {
        None => IrreducibilityVerdict::irreducible(),
        Some(w) => IrreducibilityVerdict::reducible(w),
    })
}

/// Runs `x_{k+1} = (B + I) x_k^{m-1}` and the same for `y` for `n - 1` steps
/// and reports whether `x` ends strictly above `y` in every component.
///
/// Requires `x >= y >= 0` componentwise with `x != y`. Always true for
/// irreducible `B`.
pub fn domination_iterates<T: Scalar>(b: &DenseTensor<T>, x: &[T], y: &[T]) -> Result<bool> {
    let n = b.dim();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if v.iter().any(|c| !(c.is_finite() && *c >= T::zero())) {
            return Err(Error::InvalidArgument(
                "vectors must be finite and nonnegative".into(),
            ));
        }
    }
    if x.iter().zip(y).any(|(p, q)| p < q) {
        return Err(Error::InvalidArgument(
            "x must dominate y componentwise".into(),
        ));
    }
    if x == y {
        return Err(Error::InvalidArgument("x and y must differ".into()));
    }
    let a = add_identity_shift(b, T::one())?;
    let (mut x, mut y) = (x.to_vec(), y.to_vec());
    for _ in 1..n {
        x = contract(&a, &x)?;
        y = contract(&a, &y)?;
        // common rescaling keeps the componentwise order and avoids overflow
        let top = x.iter().copied().fold(T::zero(), T::max);
        for v in x.iter_mut().chain(y.iter_mut()) {
            *v = *v / top;
        }
    }
    Ok(x.iter().zip(&y).all(|(p, q)| p > q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_tensor;
    use crate::tensor::{random_sparse_tensor, random_tensor};
    use proptest::prelude::*;

    fn example_b() -> DenseTensor<f64> {
        parse_tensor("3 3\n1 2 2 3.72\n2 1 1 9.02\n3 1 1 9.55\n").unwrap()
    }

    #[test]
    fn positive_is_irreducible() {
        let b: DenseTensor<f64> = random_tensor(3, 4, 1).unwrap();
        assert!(b.is_positive());
        assert_eq!(
            irreducible_iterative(&b),
            IrreducibilityVerdict::irreducible()
        );
        assert_eq!(
            reducible_bruteforce(&b).unwrap(),
            IrreducibilityVerdict::irreducible()
        );
    }

    #[test]
    fn diagonal_only_is_reducible() {
        let b = DenseTensor::<f64>::identity(3, 3, 2.0).unwrap();
        let v = irreducible_iterative(&b);
        assert!(!v.irreducible);
        let w = v.witness.unwrap();
        assert!(witness_is_sound(&b, &w));
        assert_eq!(reducible_bruteforce(&b).unwrap().witness, Some(vec![0]));
    }

    #[test]
    fn example_is_reducible() {
        let b = example_b();
        let v = irreducible_iterative(&b);
        assert_eq!(v.witness_one_based(), Some(vec![1, 2]));
        assert_eq!(v.to_string(), "reducible, witness I = {1,2}");
        let bf = reducible_bruteforce(&b).unwrap();
        assert_eq!(bf.witness_one_based(), Some(vec![1, 2]));
        // the zero pattern behind the witness
        assert_eq!(b.get(&[0, 2, 2]), 0.0);
        assert_eq!(b.get(&[1, 2, 2]), 0.0);
    }

    #[test]
    fn soundness_checker_rejects_bad_sets() {
        let b = example_b();
        assert!(!witness_is_sound(&b, &[]));
        assert!(!witness_is_sound(&b, &[0, 1, 2]));
        assert!(!witness_is_sound(&b, &[0]));
        assert!(!witness_is_sound(&b, &[2]));
        assert!(witness_is_sound(&b, &[0, 1]));
    }

    #[test]
    fn bruteforce_cap() {
        let b = DenseTensor::<f64>::zeros(2, 21).unwrap();
        assert!(reducible_bruteforce(&b).is_err());
        let b = DenseTensor::<f64>::zeros(2, 20).unwrap();
        assert!(reducible_bruteforce(&b).is_ok());
    }

    #[test]
    fn single_index_is_irreducible() {
        let b = DenseTensor::<f64>::zeros(3, 1).unwrap();
        assert!(irreducible_iterative(&b).irreducible);
        assert!(reducible_bruteforce(&b).unwrap().irreducible);
    }

    #[test]
    fn domination_on_positive() {
        let b: DenseTensor<f64> = random_tensor(3, 3, 4).unwrap();
        assert!(domination_iterates(&b, &[1.0, 1.0, 1.0], &[1.0, 1.0, 0.0]).unwrap());
        assert!(domination_iterates(&b, &[1.0; 3], &[1.0; 3]).is_err());
        assert!(domination_iterates(&b, &[0.0, 1.0, 1.0], &[1.0, 1.0, 0.0]).is_err());
        assert!(domination_iterates(&b, &[1.0; 2], &[0.0; 2]).is_err());
        assert!(domination_iterates(&b, &[-1.0; 3], &[-2.0; 3]).is_err());
    }

    #[test]
    fn domination_on_reducible_example() {
        let b = example_b();
        // y = (0,0,1) is a fixed point of the shifted map, but the all-ones
        // start spreads to every component and still dominates it.
        assert!(domination_iterates(&b, &[1.0, 1.0, 1.0], &[0.0, 0.0, 1.0]).unwrap());
        // both starts confined to the closed set {3}: components 1, 2 stay 0 = 0
        assert!(!domination_iterates(&b, &[0.0, 0.0, 2.0], &[0.0, 0.0, 1.0]).unwrap());
    }

    #[test]
    fn support_sequence_on_example() {
        let b = example_b();
        let seq = propagate_support(&b, &[1]);
        assert_eq!(
            seq,
            vec![
                vec![false, true, false],
                vec![true, true, false],
                vec![true, true, true],
            ]
        );
        let seq = propagate_support(&b, &[2]);
        assert!(seq.iter().all(|s| *s == vec![false, false, true]));
    }

    proptest! {
        #[test]
        fn verdicts_agree(n in 1usize..=6, m in 2usize..=3, density in 0.05f64..0.5, seed in any::<u64>()) {
            let b: DenseTensor<f64> = random_sparse_tensor(m, n, density, seed).unwrap();
            let it = irreducible_iterative(&b);
            let bf = reducible_bruteforce(&b).unwrap();
            prop_assert_eq!(it.irreducible, bf.irreducible);
            if let Some(w) = &it.witness {
                prop_assert!(witness_is_sound(&b, w));
            }
            if let Some(w) = &bf.witness {
                prop_assert!(witness_is_sound(&b, w));
                // bruteforce returns the smallest reducing set overall
                prop_assert!(w <= it.witness.as_ref().unwrap());
            }
        }

        #[test]
        fn supports_grow_and_stalls_persist(n in 1usize..=7, density in 0.05f64..0.4,
                                            seed in any::<u64>(), start in 0usize..7) {
            let b: DenseTensor<f64> = random_sparse_tensor(3, n, density, seed).unwrap();
            let seq = propagate_support(&b, &[start % n]);
            prop_assert_eq!(seq.len(), n);
            let mut stalled = false;
            for w in seq.windows(2) {
                prop_assert!(w[0].iter().zip(&w[1]).all(|(p, q)| !*p || *q));
                if stalled {
                    prop_assert_eq!(&w[0], &w[1]);
                }
                stalled |= w[0] == w[1];
            }
        }

        #[test]
        fn irreducible_means_domination(n in 2usize..=5, seed in any::<u64>()) {
            let b: DenseTensor<f64> = random_sparse_tensor(3, n, 0.4, seed).unwrap();
            if irreducible_iterative(&b).irreducible {
                let x = vec![1.0; n];
                let mut y = x.clone();
                y[0] = 0.0;
                prop_assert!(domination_iterates(&b, &x, &y).unwrap());
            }
        }
    }
}
