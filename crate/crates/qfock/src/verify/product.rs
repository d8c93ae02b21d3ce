//! Dual-route check of the symmetrized multi-mode product of raising
//! coefficients.
//!
//! Route A iterates the single-mode operator `r` times at a fixed mode
//! and multiplies by `r!` (the diagonal coefficient of the symmetrized
//! product over all variable orderings). Route B evaluates the closed
//! form of that symmetrized product directly: the squared difference
//! product over the auxiliary variables, the multi-marker shift of the
//! state's creation generators, one creation series per variable, the
//! sign from the group-algebra twist, and the prefactor
//! `q^{-r(r-1)/2} [r]!`. The two routes share only the primitive
//! contraction tables, so agreement across every mode of the window is
//! an independent consistency proof of the single-mode bookkeeping.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::fock::{apply_x, FockVector, Sign};
use crate::qarith::{qfact, RatPoly};
use crate::rootdata::{QElement, RootDatum};
use crate::symcore::{
    cartan_ratio, generator_expanded, shift_generators_multi, Basis, ColoredPartition, SymVector,
};
use crate::verify::multivar::vandermonde;

/// Outcome of comparing the two routes over a full mode window.
#[derive(Clone, Debug)]
pub struct ProductCheck {
    pub i: usize,
    pub r: u32,
    /// Number of series coefficients compared.
    pub modes_checked: usize,
    pub ok: bool,
    /// Mode index of the first disagreeing coefficient, if any.
    pub failed_mode: Option<i64>,
}

fn factorial(r: u32) -> BigRational {
    let mut f = BigInt::from(1);
    for k in 2..=r as i64 {
        f *= BigInt::from(k);
    }
    BigRational::from_integer(f)
}

/// Compares the two evaluation routes for the `r`-fold product of
/// raising coefficients of node `i` on the basis state `part ⊗ e^eta`,
/// over every mode whose image can be nonzero plus a margin of
/// vanishing modes on both sides.
pub fn verify_product_formula(
    datum: &RootDatum,
    i: usize,
    r: u32,
    part: &ColoredPartition,
    eta: &QElement,
) -> ProductCheck {
    assert!(r >= 1, "product order must be positive");
    let rank = datum.rank();
    let alpha = datum.simple(i);
    let m = datum.pairing(eta, &alpha);
    let ri = r as i64;

    // Mode-independent ingredients of the closed form.
    let p_form = SymVector::from_monomial(Basis::Complete, part.clone(), RatPoly::one())
        .to_power_sums();
    let shift = |j: usize, d: u32| {
        cartan_ratio(datum, i, j, d).to_rat().mul_qpow(-(d as i64)).neg()
    };
    let multi = shift_generators_multi(&p_form, r as usize, &shift);
    let squared_vandermonde = vandermonde(r as usize).pow(2);
    let new_eta = eta.add(&alpha.scaled(ri));
    let mut eps = datum.cocycle(&alpha.scaled(ri), eta);
    for k in 1..ri {
        eps *= datum.cocycle(&alpha, &alpha.scaled(k));
    }
    let mut prefactor = qfact(r).to_rat().mul_qpow(-(ri * (ri - 1) / 2));
    if eps < 0 {
        prefactor = prefactor.neg();
    }

    // The result partition total decreases linearly in the mode, so the
    // window covers every total in [0, part total] plus margin on each
    // side where both routes must vanish.
    let total = part.total() as i64;
    let n_lo = -m - ri - 4;
    let n_hi = (total.div_euclid(ri) - m - ri + 2).max(n_lo);

    let mut check = ProductCheck { i, r, modes_checked: 0, ok: true, failed_mode: None };
    for n in n_lo..=n_hi {
        // Route A: iterated single-mode application, times r!.
        let mut iterated =
            FockVector::basis_vector(part.clone(), eta.clone(), RatPoly::one());
        for _ in 0..r {
            iterated = apply_x(datum, i, Sign::Plus, n, &iterated);
        }
        let route_a = iterated.scale(&RatPoly::constant(factorial(r)));

        // Route B: diagonal coefficient of the closed form.
        let mut acc = SymVector::zero(rank, Basis::PowerSum);
        for (key, weight) in squared_vandermonde.terms() {
            let (zexps, qexp) = key;
            debug_assert_eq!(*qexp, 0, "difference product is q-free");
            for (marks, sv) in &multi {
                // Creation orders forced by matching every variable's
                // total exponent to -n-1.
                let mut orders = Vec::with_capacity(r as usize);
                let mut admissible = true;
                for k in 0..r as usize {
                    let c = -n - 1 - m - zexps[k] + marks[k] as i64;
                    if c < 0 {
                        admissible = false;
                        break;
                    }
                    orders.push(c as u32);
                }
                if !admissible {
                    continue;
                }
                let mut term = sv.scale_rat(&BigRational::from_integer(weight.clone()));
                for &c in &orders {
                    if c > 0 {
                        term = term.mul(&generator_expanded(rank, Basis::PowerSum, i, c));
                    }
                }
                acc = acc.add(&term);
            }
        }
        let mut route_b = FockVector::zero(rank);
        for (p, c) in acc.to_h_basis().terms() {
            route_b.add_term(p.clone(), new_eta.clone(), c.mul(&prefactor));
        }

        check.modes_checked += 1;
        if !route_a.sub(&route_b).is_zero() && check.ok {
            check.ok = false;
            check.failed_mode = Some(n);
        }
    }
    check
}
