use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::SamplerError;
use crate::numeric::DyadicInterval;

/// Largest supported `log2` of the working precision.
pub const MAX_PRECISION_LOG2: u32 = 31;

/// Smallest `|disc|` of an irreducible orbit of signature `r`.
pub fn minimal_bound(signature: u8) -> u32 {
    if signature == 1 {
        23
    } else {
        49
    }
}

/// Default ball radius: 7/4 for one real root, 5/4 for three.
pub fn default_radius(signature: u8) -> BigRational {
    if signature == 1 {
        BigRational::new(7.into(), 4.into())
    } else {
        BigRational::new(5.into(), 4.into())
    }
}

/// Sampler configuration for a signature `r` and bound `T`, together with
/// its real constants, computed lazily once per working precision.
pub struct SamplerParams {
    signature: u8,
    bound: BigInt,
    radius: BigRational,
    initial_precision: u32,
    constants: [OnceLock<Constants>; MAX_PRECISION_LOG2 as usize + 1],
}

/// The real constants of the sampler at one working precision.
#[derive(Debug, Clone)]
pub struct Constants {
    /// `λ = R·T^{1/4}`
    pub lambda: DyadicInterval,
    pub sqrt5_lambda: DyadicInterval,
    pub s_min: DyadicInterval,
    pub s_min_inv: DyadicInterval,
    /// `s_min² = √3/2`
    pub s_min_sq: DyadicInterval,
    pub s_max: DyadicInterval,
    /// `s_min²/s_max²`, the lower bound for `σ`.
    pub sigma_floor: DyadicInterval,
    /// `L₁′·L₂′·L₃′·L₄′`
    pub box_volume: DyadicInterval,
    pub radius_sq: DyadicInterval,
}

impl std::fmt::Debug for SamplerParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SamplerParams")
            .field("signature", &self.signature)
            .field("bound", &self.bound)
            .field("radius", &self.radius)
            .field("initial_precision", &self.initial_precision)
            .finish()
    }
}

/// Parameters for signature `r ∈ {1, 3}` and bound `T`, rejecting bounds
/// below the smallest discriminant of the signature.
pub fn make_params(
    signature: u8,
    bound: BigInt,
    radius: Option<BigRational>,
) -> Result<SamplerParams, SamplerError> {
    check_signature(signature)?;
    let minimum = minimal_bound(signature);
    if bound < BigInt::from(minimum) {
        return Err(SamplerError::BoundTooSmall { signature, bound, minimum });
    }
    SamplerParams::relaxed(signature, bound, radius)
}

fn check_signature(signature: u8) -> Result<(), SamplerError> {
    if signature == 1 || signature == 3 {
        Ok(())
    } else {
        Err(SamplerError::InvalidSignature(signature))
    }
}

impl SamplerParams {
    /// Like [`make_params`] but accepts any `T ≥ 1`. With no orbit below the
    /// bound, the drivers never return.
    ///
    /// An overridden radius must keep `R·B` meeting the forms of
    /// discriminant `±1` of the signature; this is not checked.
    pub fn relaxed(signature: u8, bound: BigInt, radius: Option<BigRational>) -> Result<Self, SamplerError> {
        check_signature(signature)?;
        if !bound.is_positive() {
            return Err(SamplerError::BoundTooSmall { signature, bound, minimum: 1 });
        }
        let radius = radius.unwrap_or_else(|| default_radius(signature));
        if !radius.is_positive() {
            return Err(SamplerError::InvalidRadius(radius));
        }
        Ok(SamplerParams {
            signature,
            bound,
            radius,
            initial_precision: 2,
            constants: std::array::from_fn(|_| OnceLock::new()),
        })
    }

    /// Start the precision loop at `p` (a power of two, at least 2) instead
    /// of 2. Decisions are exact, so only the reported precision changes.
    pub fn with_initial_precision(mut self, p: u32) -> Self {
        assert!(p >= 2 && p.is_power_of_two(), "initial precision must be a power of two >= 2");
        self.initial_precision = p;
        self
    }

    pub fn signature(&self) -> u8 {
        self.signature
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn initial_precision(&self) -> u32 {
        self.initial_precision
    }

    /// Constants at working precision `p` (a power of two).
    pub fn constants(&self, p: u32) -> &Constants {
        assert!(p.is_power_of_two(), "precision must be a power of two");
        let slot = p.trailing_zeros() as usize;
        self.constants[slot].get_or_init(|| compute_constants(&self.bound, &self.radius, p))
    }
}

fn compute_constants(bound: &BigInt, radius: &BigRational, p: u32) -> Constants {
    let int = |n: i64| DyadicInterval::from_int(n, p);
    let sqrt = |x: &DyadicInterval| x.sqrt().expect("positive constant");
    let div = |x: &DyadicInterval, y: &DyadicInterval| x.checked_div(y).expect("positive divisor");

    let r = DyadicInterval::from_rational(radius, p);
    let lambda = &r * &DyadicInterval::from_int(bound.clone(), p).root(4).expect("positive bound");
    let sqrt5_lambda = &sqrt(&int(5)) * &lambda;
    let s_min_sq = sqrt(&int(3)).mul_pow2(-1);
    let s_min = sqrt(&s_min_sq);
    let s_min_inv = div(&int(1), &s_min);
    let s_max = lambda.mul_pow2(-1).root(3).expect("positive lambda");
    let sigma_floor = div(&s_min_sq, &s_max.square());

    let big_l1 = &s_max.powi(3) + &lambda;
    let big_l2 = &s_max + &sqrt5_lambda;
    let big_l3 = &s_min_inv + &sqrt5_lambda;
    let big_l4 = &s_min_inv.powi(3) + &lambda;
    let box_volume = &(&big_l1 * &big_l2) * &(&big_l3 * &big_l4);

    Constants {
        lambda,
        sqrt5_lambda,
        s_min,
        s_min_inv,
        s_min_sq,
        s_max,
        sigma_floor,
        box_volume,
        radius_sq: DyadicInterval::from_rational(&(radius * radius), p),
    }
}

impl Constants {
    /// `1` as an interval at this precision.
    pub fn one(&self) -> DyadicInterval {
        DyadicInterval::from_int(BigInt::one(), self.lambda.prec())
    }
}
