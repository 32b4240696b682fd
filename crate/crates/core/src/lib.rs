//! Exact computations linking Cayley-graph colorings of `Z` and `GL(2, Z)`
//! with Diophantine approximation.
//!
//! * [`arith`]: rationals, quadratic surds, p-adic absolute values, enclosures
//! * [`cf`]: continued fractions of quadratic irrationals and their matrices
//! * [`lacunary`]: nested-interval certificates for lacunary sequences
//! * [`cayley`]: finite windows of Cayley graphs of `Z`, colorings, exact `chi`
//! * [`projective`]: the p-adic metric on primitive vectors and its covers
//! * [`witness`]: explicit p-adic Littlewood witnesses for quadratic irrationals
//! * [`cli`]: the command-line front end

pub mod arith;
pub mod cayley;
pub mod cf;
pub mod cli;
pub mod error;
pub mod lacunary;
pub mod matrix;
pub mod projective;
pub mod witness;

pub use arith::{PAdicAbs, QuadNum, Rat, Surd};
pub use cf::{CfExpansion, Convergent};
pub use error::{Error, Result};
pub use matrix::Mat2Z;
