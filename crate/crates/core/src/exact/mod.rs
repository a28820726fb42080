//! Exact arithmetic over ℚ: rationals, polynomials, matrices, Sturm
//! isolation and real algebraic numbers.

pub mod algebraic;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sturm;

pub use algebraic::{algebraic_refine, AlgebraicReal};
pub use matrix::{polymatrix_det, PolyMatrix};
pub use poly::{poly_shift, Poly};
pub use rational::{parse_rational, Rational};
pub use sturm::{sturm_isolate, RealRoot, SturmChain};
