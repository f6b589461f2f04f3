//! Exact integers and outward-rounded dyadic interval arithmetic.
//!
//! All inexact real computation in the sampler goes through
//! [`DyadicInterval`]. Decisions are three-valued ([`Trilean`]); an
//! `Unknown` answer means the current working precision is too low and the
//! caller is expected to retry at higher precision.

mod dyadic;
mod introot;
mod trilean;

pub use dyadic::{compare3, DyadicInterval, GUARD_BITS};
pub use introot::{ceil_root, floor_root};
pub use trilean::Trilean;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("divisor interval contains zero")]
    DivisorStraddlesZero,
    #[error("even root of an interval with a negative lower endpoint")]
    NegativeEvenRoot,
    #[error("root degree must be positive")]
    ZeroRootDegree,
}
