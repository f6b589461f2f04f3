//! Random cubic orders by rejection sampling of GL2(Z)-orbits of integral
//! binary cubic forms.
//!
//! The pieces, bottom-up:
//!
//! * [`numeric`]: outward-rounded dyadic intervals and three-valued decisions,
//! * [`random`]: counter-based random bits and lazily revealed uniform reals,
//! * [`forms`]: binary cubic forms, their discriminant, GL2 action,
//!   irreducibility, stabilizers and canonical orbit representatives,
//! * [`lattice`]: uniform lattice points in a sheared box,
//! * [`sampler`]: the orbit sampler with its precision-doubling loop,
//! * [`census`]: brute-force orbit enumeration for small bounds,
//! * [`stats`]: chi-square goodness of fit.
//!
//! Most of the form and lattice code is generic over the [`Scalar`]
//! coefficient type; the aliases below name the instantiations in use.

pub mod census;
pub mod forms;
pub mod lattice;
pub mod numeric;
pub mod random;
pub mod sampler;
pub mod scalar;
pub mod stats;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use forms::{BinaryCubic, FormError, Gl2, RingTable};
pub use numeric::{compare3, DyadicInterval, NumericError, Trilean};
pub use scalar::{IntScalar, Scalar};

/// An integral binary cubic form with arbitrary-precision coefficients.
pub type CubicForm = BinaryCubic<BigInt>;
/// Integral forms with machine-width coefficients, used by the census.
pub type SmallCubicForm = BinaryCubic<i128>;
/// A real binary cubic form with interval coefficients.
pub type RealCubicForm = BinaryCubic<DyadicInterval>;
/// A binary cubic form with exact rational coefficients.
pub type RationalCubicForm = BinaryCubic<BigRational>;
/// `GL2(Z)` with arbitrary-precision entries.
pub type Gl2Matrix = Gl2<BigInt>;
/// Multiplication table of a cubic ring with integer structure constants.
pub type CubicRingTable = RingTable<BigInt>;
