//! Operator radii in a semi-Hilbertian geometry.
//!
//! A positive-semidefinite weight A induces the semi-inner product
//! `<x,z>_A = <Ax,z>` and seminorm `||z||_A = ||A^{1/2} z||`. For operators
//! that map the null space of A into itself this crate computes the
//! weighted operator norm, numerical radius, Crawford number, minimum
//! modulus, and Davis-Wielandt radius, evaluates a family of upper and
//! lower bounds on the Davis-Wielandt radius with slack accounting, checks
//! the block-matrix equalities behind them, and property-tests the
//! auxiliary vector inequalities. Everything is computed through the rank-r
//! compression of the operator onto the range of the weight, which carries
//! the weighted geometry isometrically onto the standard geometry of C^r.

pub mod error;
pub mod mat;
pub mod operator;
pub mod reduce;
pub mod semi;
pub mod weight;
pub mod rng;
pub mod scan;
pub mod sphere;
pub mod radii;
pub mod bounds;
pub mod blocks;
pub mod lemmas;
pub mod io;
pub mod fuzz;
pub mod reproduce;
