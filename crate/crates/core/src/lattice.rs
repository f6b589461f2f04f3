//! Uniform lattice points in the image `M·I` of an axis-parallel box `I`
//! with integer side lengths under a lower-triangular unipotent `M`.
//!
//! `v ∈ M·I` iff `a_i ≤ Σ_j m'_ij v_j < a_i + l_i` for all `i`, where
//! `M⁻¹ = (m'_ij)`. Because `M⁻¹` is unipotent the `i`-th condition pins
//! `v_i` to `l_i` consecutive integers once `v_1..v_{i-1}` are known, so
//! there are exactly `∏ l_i` lattice points, and choosing each offset
//! uniformly picks one of them uniformly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("working precision too low to decide a ceiling")]
    PrecisionInsufficient,
    #[error("offset {offset} on axis {axis} is outside 0..{length}")]
    OffsetOutOfRange { axis: usize, offset: BigInt, length: BigInt },
    #[error("dimension mismatch")]
    DimensionMismatch,
}

/// Half-open box `∏ [a_i, a_i + l_i)` with integer lengths `l_i ≥ 0`.
#[derive(Debug, Clone)]
pub struct IntBox<S> {
    lower: Vec<S>,
    lengths: Vec<BigInt>,
}

impl<S: Scalar> IntBox<S> {
    pub fn new(lower: Vec<S>, lengths: Vec<BigInt>) -> Self {
        assert_eq!(lower.len(), lengths.len(), "box needs one length per axis");
        assert!(lengths.iter().all(|l| !l.is_negative()), "box side lengths must be nonnegative");
        IntBox { lower, lengths }
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn lower(&self) -> &[S] {
        &self.lower
    }

    pub fn lengths(&self) -> &[BigInt] {
        &self.lengths
    }
}

/// A lower-triangular unipotent matrix, stored through the strictly lower
/// entries of its inverse (`inverse[i][j]` for `j < i`), which is all the
/// sampler needs.
#[derive(Debug, Clone)]
pub struct LowerUnipotent<S> {
    inverse: Vec<Vec<S>>,
}

impl<S: Scalar> LowerUnipotent<S> {
    pub fn identity(n: usize) -> Self {
        LowerUnipotent { inverse: (0..n).map(|i| vec![S::zero(); i]).collect() }
    }

    /// From the strictly lower part of `M⁻¹`; row `i` has `i` entries.
    pub fn from_inverse(inverse: Vec<Vec<S>>) -> Self {
        for (i, row) in inverse.iter().enumerate() {
            assert_eq!(row.len(), i, "row {i} of the inverse must have {i} entries");
        }
        LowerUnipotent { inverse }
    }

    /// From the strictly lower part of `M` itself; the inverse is found by
    /// forward substitution.
    pub fn from_matrix(lower: Vec<Vec<S>>) -> Self {
        let n = lower.len();
        // solve M·X = I column by column; X is unipotent lower triangular
        let mut inv: Vec<Vec<S>> = (0..n).map(|i| vec![S::zero(); i]).collect();
        for j in 0..n {
            for i in (j + 1)..n {
                // X_ij = -(M_ij + Σ_{j<k<i} M_ik X_kj)
                let mut acc = lower[i][j].clone();
                for k in (j + 1)..i {
                    acc = acc + lower[i][k].clone() * inv[k][j].clone();
                }
                inv[i][j] = -acc;
            }
        }
        LowerUnipotent { inverse: inv }
    }

    pub fn dim(&self) -> usize {
        self.inverse.len()
    }

    pub fn inverse_entry(&self, i: usize, j: usize) -> S {
        match j.cmp(&i) {
            std::cmp::Ordering::Less => self.inverse[i][j].clone(),
            std::cmp::Ordering::Equal => S::one(),
            std::cmp::Ordering::Greater => S::zero(),
        }
    }

    /// `M⁻¹ v`.
    pub fn apply_inverse(&self, v: &[BigInt]) -> Vec<S> {
        (0..self.dim())
            .map(|i| {
                let mut acc = S::from_bigint(&v[i]);
                for j in 0..i {
                    acc = acc + self.inverse[i][j].clone() * S::from_bigint(&v[j]);
                }
                acc
            })
            .collect()
    }
}

/// `#(Zⁿ ∩ M·I) = ∏ l_i`.
pub fn count_points<S: Scalar>(bx: &IntBox<S>, _m: &LowerUnipotent<S>) -> BigInt {
    bx.lengths.iter().fold(BigInt::one(), |acc, l| acc * l)
}

/// The lattice point of `M·I` selected by the offsets `δ_i ∈ [0, l_i)`:
/// `v_i = ⌈a_i − Σ_{j<i} m'_ij v_j⌉ + δ_i`.
///
/// `ceil` returns the ceiling of a scalar or `None` when it cannot be
/// determined, which surfaces as [`LatticeError::PrecisionInsufficient`].
pub fn sample_point<S: Scalar>(
    bx: &IntBox<S>,
    m: &LowerUnipotent<S>,
    offsets: &[BigInt],
    mut ceil: impl FnMut(&S) -> Option<BigInt>,
) -> Result<Vec<BigInt>, LatticeError> {
    let n = bx.dim();
    if m.dim() != n || offsets.len() != n {
        return Err(LatticeError::DimensionMismatch);
    }
    let mut v: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        let delta = &offsets[i];
        if delta.is_negative() || delta >= &bx.lengths[i] {
            return Err(LatticeError::OffsetOutOfRange {
                axis: i,
                offset: delta.clone(),
                length: bx.lengths[i].clone(),
            });
        }
        let mut x = bx.lower[i].clone();
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                x = x - m.inverse[i][j].clone() * S::from_bigint(vj);
            }
        }
        let base = ceil(&x).ok_or(LatticeError::PrecisionInsufficient)?;
        v.push(base + delta);
    }
    Ok(v)
}

/// Exact membership test `v ∈ M·I`.
pub fn contains<S: Scalar + PartialOrd>(bx: &IntBox<S>, m: &LowerUnipotent<S>, v: &[BigInt]) -> bool {
    let w = m.apply_inverse(v);
    w.iter().zip(bx.lower.iter().zip(bx.lengths.iter())).all(|(wi, (ai, li))| {
        let upper = ai.clone() + S::from_bigint(li);
        ai <= wi && wi < &upper
    })
}
