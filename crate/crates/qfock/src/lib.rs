//! Exact computer algebra for the level-one Fock space representation of a
//! simply laced (ADE) quantum affine algebra.
//!
//! The crate builds, over `Z[q, q^-1]` and `Q(q)`:
//!
//! - the bosonic Fock module `V = Sym ⊗ Q(q)[Q]` attached to an ADE root
//!   lattice `Q`, with its vertex operator action ([`fock`]),
//! - the integral lattice spanned by monomials in the divided-power creation
//!   generators, preserved by divided powers of the loop generators,
//! - exact specialization of the deformation parameter at complex roots of
//!   unity ([`rootsofunity`]), including the dual Heisenberg elements and the
//!   kernel computations behind the irreducibility certificate,
//! - independent symbolic checks of the defining relations and of the
//!   symmetrized product formula for vertex operator coefficients
//!   ([`verify`]).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals,
//! sparse Laurent polynomials, and cyclotomic field elements. No floating
//! point is used anywhere.

pub mod fock;
pub mod qarith;
pub mod rootdata;
pub mod rootsofunity;
pub mod symcore;
pub mod verify;
