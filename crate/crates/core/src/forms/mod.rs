//! Binary cubic forms `aX^3 + bX^2Y + cXY^2 + dY^3`.
//!
//! [`BinaryCubic`] is generic over the coefficient ring; the integer-only
//! operations (irreducibility, stabilizers, canonical orbit representatives)
//! live in the submodules and are implemented for [`IntScalar`] coefficients.

mod gl2;
mod irreducible;
mod reduce;
mod ring;
mod serde_impl;
pub mod roots;

pub use gl2::Gl2;
pub use irreducible::is_irreducible;
pub use reduce::{canonicalize, reduced_hessian, stab_order, CANONICAL_PRUNE_FACTOR};
pub(crate) use reduce::descend;
pub use ring::RingTable;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::{IntScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("matrix determinant {0} is not +1 or -1")]
    NonUnimodular(BigInt),
    #[error("form has zero discriminant")]
    ZeroDiscriminant,
    #[error("form is reducible over Q")]
    ReducibleInput,
}

/// Coefficients of `aX^3 + bX^2Y + cXY^2 + dY^3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryCubic<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

/// A binary form given by its coefficient list, highest power of `X` first.
type FormCoeffs<S> = Vec<S>;

fn form_mul<S: Scalar>(x: &[S], y: &[S]) -> FormCoeffs<S> {
    let mut out = vec![S::zero(); x.len() + y.len() - 1];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            out[i + j] = out[i + j].clone() + xi.clone() * yj.clone();
        }
    }
    out
}

impl<S: Scalar> BinaryCubic<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        BinaryCubic { a, b, c, d }
    }

    pub fn coeffs(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn map<T>(&self, mut f: impl FnMut(&S) -> T) -> BinaryCubic<T> {
        BinaryCubic { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }

    /// `f(x, y)`.
    pub fn eval(&self, x: &S, y: &S) -> S {
        let (x2, y2) = (x.square(), y.square());
        self.a.clone() * x2.clone() * x.clone()
            + self.b.clone() * x2 * y.clone()
            + self.c.clone() * x.clone() * y2.clone()
            + self.d.clone() * y2 * y.clone()
    }

    /// `18abcd + b²c² − 4ac³ − 4b³d − 27a²d²`.
    pub fn discriminant(&self) -> S {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let bc = b.clone() * c.clone();
        let ad = a.clone() * d.clone();
        S::from_i64(18) * ad.clone() * bc.clone() + bc.square()
            - S::from_i64(4) * a.clone() * c.square() * c.clone()
            - S::from_i64(4) * b.square() * b.clone() * d.clone()
            - S::from_i64(27) * ad.square()
    }

    /// Hessian covariant `(b² − 3ac, bc − 9ad, c² − 3bd)`; its discriminant
    /// `Q² − 4PR` equals `−3·disc(f)`.
    pub fn hessian(&self) -> (S, S, S) {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let three = S::from_i64(3);
        (
            b.square() - three.clone() * a.clone() * c.clone(),
            b.clone() * c.clone() - S::from_i64(9) * a.clone() * d.clone(),
            c.square() - three * b.clone() * d.clone(),
        )
    }

    /// The O2-invariant positive definite form `5a²+b²+c²+5d²+2ac+2bd`.
    pub fn q_value(&self) -> S {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let two = S::from_i64(2);
        S::from_i64(5) * (a.square() + d.square())
            + b.square()
            + c.square()
            + two.clone() * a.clone() * c.clone()
            + two * b.clone() * d.clone()
    }

    /// `f(αX + βY, γX + δY)`, without any determinant twist.
    pub fn substitute(&self, alpha: &S, beta: &S, gamma: &S, delta: &S) -> Self {
        let l1 = [alpha.clone(), beta.clone()];
        let l2 = [gamma.clone(), delta.clone()];
        let l1l1 = form_mul(&l1, &l1);
        let l2l2 = form_mul(&l2, &l2);
        let terms = [
            (&self.a, form_mul(&l1l1, &l1)),
            (&self.b, form_mul(&l1l1, &l2)),
            (&self.c, form_mul(&l1, &l2l2)),
            (&self.d, form_mul(&l2l2, &l2)),
        ];
        let mut out = vec![S::zero(); 4];
        for (coef, poly) in terms.iter() {
            for (k, p) in poly.iter().enumerate() {
                out[k] = out[k].clone() + (*coef).clone() * p.clone();
            }
        }
        let mut it = out.into_iter();
        BinaryCubic::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
    }

    /// The twisted action `(Mf)(v) = det(M)^{-1} f(Mᵀv)` for a real matrix
    /// `[[m11, m12], [m21, m22]]` whose determinant is `det_sign = ±1`.
    pub fn act(&self, m: &[[S; 2]; 2], det_sign: i8) -> Self {
        let g = self.substitute(&m[0][0], &m[1][0], &m[0][1], &m[1][1]);
        if det_sign < 0 {
            g.map(|x| -x.clone())
        } else {
            g
        }
    }

    /// Action of the lower shear `n(t) = [[1, 0], [t, 1]]`:
    /// `(a, 3ta + b, 3t²a + 2tb + c, t³a + t²b + tc + d)`.
    pub fn lower_shear(&self, t: &S) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let t2 = t.square();
        let t3 = t2.clone() * t.clone();
        BinaryCubic::new(
            a.clone(),
            S::from_i64(3) * t.clone() * a.clone() + b.clone(),
            S::from_i64(3) * t2.clone() * a.clone() + S::from_i64(2) * t.clone() * b.clone() + c.clone(),
            t3 * a.clone() + t2 * b.clone() + t.clone() * c.clone() + d.clone(),
        )
    }

    /// Apply a function coefficient-wise to `(a, b, c, d)` weights, e.g. the
    /// torus action `a(s) = diag(s⁻¹, s)`, which scales by `(s⁻³, s⁻¹, s, s³)`.
    pub fn scale_each(&self, w: [&S; 4]) -> Self {
        BinaryCubic::new(
            self.a.clone() * w[0].clone(),
            self.b.clone() * w[1].clone(),
            self.c.clone() * w[2].clone(),
            self.d.clone() * w[3].clone(),
        )
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    /// The structure constants of the associated cubic ring.
    pub fn ring_table(&self) -> RingTable<S> {
        RingTable::from_form(self)
    }
}

impl<I: IntScalar> BinaryCubic<I> {
    pub fn to_bigint(&self) -> BinaryCubic<BigInt> {
        self.map(|x| x.to_bigint())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> I {
        self.coeffs().into_iter().map(|x| x.abs()).max().unwrap()
    }

    /// Signature class from the sign of the discriminant: 3 if positive,
    /// 1 if negative.
    pub fn signature_class(&self) -> Result<u8, FormError> {
        let disc = self.discriminant();
        if disc.is_zero() {
            Err(FormError::ZeroDiscriminant)
        } else if disc.is_positive() {
            Ok(3)
        } else {
            Ok(1)
        }
    }

    pub fn apply(&self, m: &Gl2<I>) -> Result<Self, FormError> {
        m.apply(self)
    }
}

impl BinaryCubic<BigInt> {
    /// Narrow to another integer width, if every coefficient fits.
    pub fn try_narrow<I: IntScalar>(&self) -> Option<BinaryCubic<I>> {
        Some(BinaryCubic::new(
            I::try_from_bigint(&self.a)?,
            I::try_from_bigint(&self.b)?,
            I::try_from_bigint(&self.c)?,
            I::try_from_bigint(&self.d)?,
        ))
    }
}

impl<S: fmt::Debug> fmt::Debug for BinaryCubic<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?}, {:?})", self.a, self.b, self.c, self.d)
    }
}

impl<S: fmt::Display> fmt::Display for BinaryCubic<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CubicForm;

    fn form(a: i64, b: i64, c: i64, d: i64) -> CubicForm {
        CubicForm::new(a.into(), b.into(), c.into(), d.into())
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(form(1, 0, -1, 0).discriminant(), BigInt::from(4));
        assert_eq!(form(1, 0, 0, 0).discriminant(), BigInt::from(0));
        assert_eq!(form(1, 1, -2, -1).discriminant(), BigInt::from(49));
        assert_eq!(form(1, 0, -1, -1).discriminant(), BigInt::from(-23));
    }

    #[test]
    fn discriminant_is_product_of_root_differences() {
        // roots 0, 1, -1 and 2, -3, 5 (monic, so disc = prod (ri - rj)^2)
        for roots in [[0i64, 1, -1], [2, -3, 5], [7, 7, 1]] {
            let [r1, r2, r3] = roots;
            let f = form(1, -(r1 + r2 + r3), r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3);
            let expected = ((r1 - r2) * (r1 - r3) * (r2 - r3)).pow(2);
            assert_eq!(f.discriminant(), BigInt::from(expected));
        }
    }

    #[test]
    fn shear_of_cube() {
        let f = form(1, 0, 0, 0);
        assert_eq!(f.lower_shear(&BigInt::from(1)), form(1, 3, 3, 1));
        let n1 = Gl2::lower_shear(BigInt::from(1));
        assert_eq!(f.apply(&n1).unwrap(), form(1, 3, 3, 1));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(form(1, 1, -2, -1).signature_class(), Ok(3));
        assert_eq!(form(1, 0, -1, -1).signature_class(), Ok(1));
        assert_eq!(form(1, 0, 0, 0).signature_class(), Err(FormError::ZeroDiscriminant));
    }

    #[test]
    fn hessian_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(form(1, 0, -1, 0).hessian(), (b(3), b(0), b(1)));
        assert_eq!(form(1, 1, -2, -1).hessian(), (b(7), b(7), b(7)));
        assert_eq!(form(1, 0, 0, 0).hessian(), (b(0), b(0), b(0)));
    }

    #[test]
    fn generic_over_machine_and_rational_scalars() {
        let f = BinaryCubic::<i64>::new(1, 1, -2, -1);
        assert_eq!(f.discriminant(), 49);
        let g = BinaryCubic::<f64>::new(1.0, 1.0, -2.0, -1.0);
        assert!((g.discriminant() - 49.0).abs() < 1e-12);
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let h = f.to_bigint().map(|x| num_rational::BigRational::from_integer(x.clone()));
        assert_eq!(h.lower_shear(&half).discriminant(), h.discriminant());
    }
}
