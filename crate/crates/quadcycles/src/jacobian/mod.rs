//! Divisor arithmetic on the curve: Riemann–Roch spaces by form
//! interpolation, principality certificates, the divisor-class relations
//! among the ten known points, per-prime class-group computations, the
//! kernel lattice of the multi-prime reduction map, and the Mordell–Weil
//! report.

pub mod group;
pub mod point;
pub mod rr;

pub use point::{ClosedPoint, Divisor};
pub use rr::{dim_l, is_principal, rr_space, Atom, BaseField, Form, Principality};
