//! Exact arithmetic foundations: arbitrary-precision rationals, sparse
//! multivariate polynomials over ℚ, dense univariate polynomials over ℤ/ℚ,
//! resultants, polynomial n-th roots, and integer lattice algorithms
//! (Hermite/Smith normal forms, LLL).

pub mod lattice;
pub mod multipoly;
pub mod nthroot;
pub mod primes;
pub mod resultant;
pub mod unipoly;

pub use lattice::IntLattice;
pub use multipoly::{Mono, MultiPoly, Var};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// The fraction a/b (b ≠ 0).
pub fn rat_frac(a: i64, b: i64) -> Rat {
    Rat::new(Int::from(a), Int::from(b))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}
