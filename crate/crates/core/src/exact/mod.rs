//! Exact arithmetic: arbitrary-precision rationals and the quadratic
//! field they generate with sqrt5. No floating point anywhere; decimal
//! strings are produced by integer scaling for display only.

mod quad;
mod rational;

pub use quad::QuadNumber;
pub use rational::{frac, Rational};
