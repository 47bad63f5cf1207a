//! Exact linear algebra over GF(2) and the rationals.

pub mod gf2;
pub mod rational;

pub use gf2::{gf2_reduce, gf2_reduce_with, gf2_solve, Gf2Matrix, ReductionResult};
pub use rational::{rational_rank, rational_solve, RationalMatrix};
