//! quadcycles — a verification toolkit for rational periodic cycles of the
//! quadratic family x ↦ x² + c, centered on the period-6 classifying curve.
//!
//! The crate mechanically reconstructs and re-checks, at desk scale, every
//! computational step behind the statement that the smooth projective curve
//! classifying period-6 orbits (a genus-4 curve of bidegree (3,3) in ℙ¹×ℙ¹)
//! has exactly ten rational points, conditional on its Jacobian having
//! Mordell–Weil rank ≤ 3:
//!
//! * exact model chain from the dynatomic polynomial to the smooth model,
//! * bad primes and the local data at them,
//! * Euler factors, Jacobian orders, torsion and endomorphism certificates,
//! * divisor-class relations, the Mordell–Weil report G ≅ ℤ³,
//! * the p = 5 Chabauty–Coleman residue-disc certificate,
//! * numerical evaluation of the L-series and its derivatives at s = 1,
//! * the elementary integral-cycle enumeration.
//!
//! Start with the runnable examples (`cargo run --example model_chain`, …) or
//! the `quadcycles` binary, which exposes each pipeline stage as a
//! subcommand and emits a machine-readable certificate.

pub mod arith;
pub mod curve;
pub mod dynatomic;
pub mod ff;
pub mod jacobian;
pub mod field;
pub mod series;
pub mod zerodim;
pub mod zeta;
