//! Exact evaluation of Bernstein operators and the midpoint gap identity.
//!
//! For a convex `f` on `[0, 1]` and `x, y` in the unit square,
//!
//! ```text
//! (B_{2n} f)((x+y)/2) >= sum_{i,j=0..n} p_{n,i}(x) p_{n,j}(y) f((i+j)/(2n)).
//! ```
//!
//! The difference between the two sides equals
//! `sum_k Δ²a_k · g^(k)(-1)/k!` with `a_k = f(k/(2n))` and a gap polynomial
//! `g` whose Taylor coefficients at `-1` are nonnegative. This crate computes
//! every piece of that statement in exact rational arithmetic so that the
//! identity and the inequalities can be checked bit-exactly.

pub mod bernstein;
pub mod binomial;
pub mod error;
pub mod functions;
pub mod gap;
pub mod poly;
pub mod rational;
mod scaled;

pub use bernstein::{BasisRow, SampleVector, Samples};
pub use binomial::binomial;
pub use error::{Error, Result};
pub use functions::{FunctionSpec, Mode};
pub use gap::{FloatGapReport, GapCoefficients, GapReport};
pub use poly::DensePoly;
pub use rational::Rational;
