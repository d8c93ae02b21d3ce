//! Executable verification suites.
//!
//! Everything the library's operator calculus relies on is re-checked
//! mechanically here, in two styles: polynomial identities are expanded
//! in an auxiliary multivariable Laurent ring and compared coefficient
//! by coefficient, and operator relations are applied to every basis
//! vector of a finite window with the residual required to vanish
//! exactly. No numerical tolerance appears anywhere; a check passes only
//! if the difference is the zero element of the exact coefficient ring.

pub mod drinfeld;
pub mod identities;
pub mod multivar;
pub mod product;
