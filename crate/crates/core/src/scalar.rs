//! The scalar abstraction shared by the form, lattice and sampler code.
//!
//! Everything that only needs ring operations (discriminants, the GL2
//! action, the `q` norm, Algorithm 1's coordinate recursion) is written once
//! against [`Scalar`] and instantiated for machine integers, `BigInt`,
//! `BigRational`, `f64` and outward-rounded [`DyadicInterval`]s.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::numeric::DyadicInterval;

/// A commutative ring element that integers embed into.
pub trait Scalar:
    Clone
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

/// Scalars with exact integer arithmetic, used for orbit bookkeeping.
///
/// Machine-width instantiations panic on overflow in checked builds; callers
/// choose the width (`i128` for the census, `BigInt` elsewhere).
pub trait IntScalar: Scalar + Ord + std::hash::Hash + num_integer::Integer + num_traits::Signed {
    fn to_bigint(&self) -> BigInt;
    fn try_from_bigint(n: &BigInt) -> Option<Self>;
}

impl Scalar for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl IntScalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn try_from_bigint(n: &BigInt) -> Option<Self> {
        Some(n.clone())
    }
}

macro_rules! prim_int_scalar {
    ($($t:ty => $conv:ident),*) => {$(
        impl Scalar for $t {
            fn from_bigint(n: &BigInt) -> Self {
                n.$conv().expect("integer does not fit the scalar width")
            }
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }

        impl IntScalar for $t {
            fn to_bigint(&self) -> BigInt {
                BigInt::from(*self)
            }
            fn try_from_bigint(n: &BigInt) -> Option<Self> {
                n.$conv()
            }
        }
    )*};
}

prim_int_scalar!(i64 => to_i64, i128 => to_i128);

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Scalar for DyadicInterval {
    fn from_bigint(n: &BigInt) -> Self {
        DyadicInterval::from_int(n.clone(), 0)
    }
}
