//! Arithmetic and combinatorics of weighted complete intersections.
//!
//! * [`arith`]: gcd/lcm, factorization, numerical semigroups, Frobenius
//!   numbers and Brauer's bound.
//! * [`pairs`]: degree/weight pairs and the regular-pair calculus.
//! * [`wci`]: weighted projective spaces and families of general complete
//!   intersections (well-formedness, quasi-smoothness, Cartier index,
//!   smoothness, base loci).
//! * [`hilbert`]: section dimensions from the Poincaré series.
//! * [`verify`]: bounded exhaustive enumeration and claim verification.

pub mod arith;
pub mod error;
pub mod hilbert;
pub mod notation;
pub mod pairs;
pub mod verify;
pub mod wci;

pub use error::{Error, Result};
pub use pairs::{Pair, PairSplit};
pub use wci::{WciFamily, WeightClasses};
