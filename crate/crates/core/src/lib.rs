//! Scalar linear network coding over finite commutative rings.
//!
//! * [`ring`]: exact arithmetic for fields, Z(n), dual numbers and products.
//! * [`partitions`]: integer partitions under partition division.
//! * [`dominance`]: which ring alphabets dominate which, and maximal rings.
//! * [`network`]: networks, scalar linear codes, verification and exhaustive solving.
//! * [`cli`]: the `ringcode` command line front end.

pub mod cli;
pub mod dominance;
pub mod network;
pub mod numtheory;
pub mod partitions;
pub mod ring;
