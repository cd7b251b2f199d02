//! Exact computational workbench for the quantum group of the rational circle.
//!
//! Three cross-checkable models are provided:
//!
//! * [`quiver_hall`]: the twisted Hall algebra of nilpotent representations of the
//!   cyclic quiver over a finite field, computed by exhaustive enumeration;
//! * [`circle_quantum`]: the interval-generator presentation, its Drinfeld double
//!   normal form and the fundamental representations;
//! * [`mirror`]: the Hall algebra of interval constructible sheaves on the circle.
//!
//! The [`shuffle`] module realizes the genus-dependent shuffle presentation of the
//! spherical Hall algebra. All arithmetic is exact and lives in [`coefficients`].

pub mod circle_quantum;
pub mod coefficients;
pub mod error;
pub mod intervals_ktheory;
pub mod mirror;
pub mod quiver_hall;
pub mod rational;
pub mod shuffle;
pub mod suite;

pub use coefficients::{quantum_integer, RationalFunctionSeries, Scalar};
pub use error::{Error, Result};
pub use intervals_ktheory::{Arc, CirclePoint, KClass, StepFunction};
pub use rational::Rational;
