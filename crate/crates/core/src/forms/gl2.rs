
use super::{BinaryCubic, FormError};
use crate::scalar::IntScalar;

/// An integer 2×2 matrix `[[m11, m12], [m21, m22]]`, acting on binary cubic
/// forms by `(Mf)(v) = det(M)^{-1} f(Mᵀv)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gl2<I> {
    pub m: [[I; 2]; 2],
}

impl<I: IntScalar> Gl2<I> {
    pub fn new(m11: I, m12: I, m21: I, m22: I) -> Self {
        Gl2 { m: [[m11, m12], [m21, m22]] }
    }

    pub fn identity() -> Self {
        Self::new(I::one(), I::zero(), I::zero(), I::one())
    }

    /// `n(k) = [[1, 0], [k, 1]]`.
    pub fn lower_shear(k: I) -> Self {
        Self::new(I::one(), I::zero(), k, I::one())
    }

    /// `[[1, k], [0, 1]]`.
    pub fn upper_shear(k: I) -> Self {
        Self::new(I::one(), k, I::zero(), I::one())
    }

    pub fn swap() -> Self {
        Self::new(I::zero(), I::one(), I::one(), I::zero())
    }

    pub fn diag(x: I, y: I) -> Self {
        Self::new(x, I::zero(), I::zero(), y)
    }

    pub fn det(&self) -> I {
        let [[a, b], [c, d]] = &self.m;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let [[a, b], [c, d]] = &self.m;
        let [[e, f], [g, h]] = &other.m;
        Self::new(
            a.clone() * e.clone() + b.clone() * g.clone(),
            a.clone() * f.clone() + b.clone() * h.clone(),
            c.clone() * e.clone() + d.clone() * g.clone(),
            c.clone() * f.clone() + d.clone() * h.clone(),
        )
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<Self, FormError> {
        let det = self.det();
        let [[a, b], [c, d]] = &self.m;
        if det == I::one() {
            Ok(Self::new(d.clone(), -b.clone(), -c.clone(), a.clone()))
        } else if det == -I::one() {
            Ok(Self::new(-d.clone(), b.clone(), c.clone(), -a.clone()))
        } else {
            Err(FormError::NonUnimodular(det.to_bigint()))
        }
    }

    /// The twisted action on a form. Fails unless `det = ±1`.
    pub fn apply(&self, f: &BinaryCubic<I>) -> Result<BinaryCubic<I>, FormError> {
        let det = self.det();
        let sign = if det == I::one() {
            1
        } else if det == -I::one() {
            -1
        } else {
            return Err(FormError::NonUnimodular(det.to_bigint()));
        };
        Ok(f.act(&self.m, sign))
    }
}
