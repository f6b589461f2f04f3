//! Rejection sampler for `GL2(Z)`-orbits of irreducible integral binary
//! cubic forms of signature `r` with `0 < |disc| ≤ T`.
//!
//! One attempt draws a point `n(t)a(s)` of a Siegel set, a lattice point `f`
//! in a sheared box around it, and accepts `f` if it lies in the ball of
//! radius `R|disc f|^{1/4}` around `n(t)a(s)`. Conditioned on success, each
//! orbit appears with probability proportional to `1/#Stab(f)`.
//!
//! Every real number is handled as an interval at working precision `p`.
//! If any comparison, floor or ceiling cannot be decided, the attempt body
//! is rerun at `2p` on the same random digits; a decided failure is final.

mod attempt;
mod driver;
mod params;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use attempt::{
    attempt, evaluate_at, run_attempt, AttemptReport, AttemptStreams, Decision, Rejection, SampleOutcome, Undecided,
};
pub use driver::{abs_disc, sample, sample_many, sample_uniform, sample_weighted, success_rate, Draw, Mode};
pub use params::{default_radius, make_params, minimal_bound, Constants, SamplerParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("bound {bound} is below {minimum}, the smallest |disc| of signature {signature}")]
    BoundTooSmall { signature: u8, bound: BigInt, minimum: u32 },
    #[error("signature must be 1 or 3, got {0}")]
    InvalidSignature(u8),
    #[error("radius must be positive, got {0}")]
    InvalidRadius(BigRational),
}
