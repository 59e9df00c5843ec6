//! Young wall realizations of crystal bases for the classical Lie algebras
//! `A_n`, `B_n`, `C_n` and `D_n`.
//!
//! * [`liealg`]: root data, weights, and the Weyl dimension and Freudenthal
//!   multiplicity oracles.
//! * [`wall`]: level-one Young walls of the affine types `A_n^(1)`,
//!   `A_{2n-1}^(2)`, `B_n^(1)` and `D_n^(1)`.
//! * [`crystal`]: signature rule and Kashiwara operators on walls.
//! * [`classical`]: highest and lowest weight walls of a classical weight and
//!   the membership conditions cutting out its crystal.
//! * [`graphgen`]: crystal graph generation, verification and export.

pub mod liealg;
pub mod wall;
pub mod crystal;
pub mod classical;
pub mod graphgen;
