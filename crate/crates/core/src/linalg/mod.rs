//! Exact dense linear algebra over the rationals.

mod matrix;
mod rational;
mod subset;

pub use matrix::{exterior_power, minor, Kernel, RationalMatrix};
pub use rational::{primitive_integer_vector, rational_sign, Rational};
pub use subset::{binomial, colex_rank, colex_subsets, ColexSubsets, SubsetIndex};
