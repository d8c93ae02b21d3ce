//! Exact arithmetic in the deformation parameter `q`.
//!
//! - [`LaurentPoly`]: sparse Laurent polynomials with exact coefficients,
//!   instantiated as [`IntPoly`] over `Z` and [`RatPoly`] over `Q`.
//! - Balanced q-integers, q-factorials and q-binomials ([`qint`], [`qfact`],
//!   [`qbinom`]).
//! - [`CyclotomicNum`]: elements of `Q[x]/Φ_l(x)`, the image of `q` under
//!   specialization at a primitive `l`-th root of unity ([`specialize`]).

mod cyclotomic;
mod laurent;

pub use cyclotomic::{cyclotomic_poly, specialize, specialize_at_power, CyclotomicNum};
pub use laurent::{
    qbinom, qfact, qint, CoeffRing, IntPoly, LaurentPoly, NonDivisible, ParsePolyError, RatPoly,
};
