//! Symbolic checks of the two standalone permutation identities that feed
//! the divided-power argument: the antisymmetrized q-shifted Vandermonde
//! evaluation and the squared-Vandermonde expansion with its divisibility
//! consequence.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::multivar::{elementary_symmetric, vandermonde, MultivarLaurent};
use crate::qarith::qfact;

fn inversions(perm: &[usize]) -> u32 {
    let mut count = 0;
    for a in 0..perm.len() {
        for b in (a + 1)..perm.len() {
            if perm[a] > perm[b] {
                count += 1;
            }
        }
    }
    count
}

/// Difference of the two sides of the antisymmetrization identity
///   Σ_σ (-1)^{l(σ)} ∏_{k<s} (z_{σ(k)} - q^{-2} z_{σ(s)})
///     = q^{-r(r-1)/2} [r]! ∏_{k<s} (z_k - z_s),
/// as a polynomial; the identity holds exactly when this is zero.
pub fn lemma_id_residual(r: usize) -> MultivarLaurent {
    assert!(r >= 1);
    let mut lhs = MultivarLaurent::zero(r);
    for perm in (0..r).permutations(r) {
        let mut prod = MultivarLaurent::one(r);
        for k in 0..r {
            for s in (k + 1)..r {
                let factor = MultivarLaurent::var(r, perm[k]).sub(
                    &MultivarLaurent::var(r, perm[s]).mul(&MultivarLaurent::q_power(r, -2)),
                );
                prod = prod.mul(&factor);
            }
        }
        if inversions(&perm) % 2 == 1 {
            prod = prod.neg();
        }
        lhs = lhs.add(&prod);
    }
    let scale = MultivarLaurent::from_qpoly(r, &qfact(r as u32))
        .mul(&MultivarLaurent::q_power(r, -((r as i64) * (r as i64 - 1) / 2)));
    let rhs = vandermonde(r).mul(&scale);
    lhs.sub(&rhs)
}

pub fn verify_lemma_id(r: usize) -> bool {
    lemma_id_residual(r).is_zero()
}

/// Expansion check: `∏_{j<k}(z_j - z_k)^2` equals the signed double
/// permutation sum over exponent tuples `δ + τ(δ)` with `δ = (r-1,...,0)`.
pub fn verify_rfact_expansion(r: usize) -> bool {
    assert!(r >= 1);
    let direct = vandermonde(r).pow(2);
    let delta: Vec<i64> = (0..r).map(|i| (r - 1 - i) as i64).collect();
    let mut sum = MultivarLaurent::zero(r);
    for tau in (0..r).permutations(r) {
        let mu: Vec<i64> = (0..r).map(|i| delta[i] + delta[tau[i]]).collect();
        let sign = if inversions(&tau) % 2 == 1 { -1 } else { 1 };
        for rho in (0..r).permutations(r) {
            let exps: Vec<i64> = (0..r).map(|i| mu[rho[i]]).collect();
            sum.add_term(exps, 0, BigInt::from(sign));
        }
    }
    direct == sum
}

/// Divisibility check: for every symmetric `G` sampled from monomials in
/// the elementary symmetric polynomials of total degree at most `max_deg`,
/// each coefficient of `(z_1...z_r)^n` in `∏(z_j - z_k)^2 · G` is divisible
/// by `r!`.
pub fn verify_rfact_divisibility(r: usize, max_deg: usize) -> bool {
    assert!(r >= 1);
    let square = vandermonde(r).pow(2);
    let mut r_factorial = BigInt::from(1);
    for t in 1..=r {
        r_factorial *= BigInt::from(t);
    }
    for exps in elementary_monomials(r, max_deg) {
        let mut g = MultivarLaurent::one(r);
        for (k, e) in exps.iter().enumerate() {
            for _ in 0..*e {
                g = g.mul(&elementary_symmetric(r, k + 1));
            }
        }
        let prod = square.mul(&g);
        for ((z, _), c) in prod.terms() {
            if z.iter().all(|e| *e == z[0]) && !c.mod_floor(&r_factorial).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn verify_rfact(r: usize) -> bool {
    verify_rfact_expansion(r) && verify_rfact_divisibility(r, 4)
}

/// Exponent vectors `(a_1..a_r)` of monomials `e_1^{a_1} ... e_r^{a_r}`
/// with weighted degree `Σ k a_k` at most `max_deg`.
fn elementary_monomials(r: usize, max_deg: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; r]];
    for k in 1..=r {
        let mut next = Vec::new();
        for base in out {
            let used: usize = base.iter().enumerate().map(|(i, a)| (i + 1) * a).sum();
            let mut e = 0;
            while used + k * e <= max_deg {
                let mut with = base.clone();
                with[k - 1] = e;
                next.push(with);
                e += 1;
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::qint;

    #[test]
    fn antisymmetrization_at_small_ranks() {
        for r in 1..=4 {
            assert!(verify_lemma_id(r), "r={r}");
        }
    }

    #[test]
    fn antisymmetrization_two_variable_closed_form() {
        // At r=2 the sum collapses to (1 + q^-2)(z_1 - z_2).
        let lhs_direct = {
            let z1 = MultivarLaurent::var(2, 0);
            let z2 = MultivarLaurent::var(2, 1);
            let one_plus = MultivarLaurent::one(2).add(&MultivarLaurent::q_power(2, -2));
            z1.sub(&z2).mul(&one_plus)
        };
        let rhs = vandermonde(2)
            .mul(&MultivarLaurent::from_qpoly(2, &qint(2)))
            .mul(&MultivarLaurent::q_power(2, -1));
        assert_eq!(lhs_direct, rhs);
    }

    #[test]
    fn squared_vandermonde_expansion() {
        for r in 2..=4 {
            assert!(verify_rfact_expansion(r), "r={r}");
        }
        // Frozen r=2 cross term: coefficient of z_1 z_2 is -2.
        let sq = vandermonde(2).pow(2);
        assert_eq!(sq.coeff(&[1, 1], 0), BigInt::from(-2));
    }

    #[test]
    fn diagonal_coefficients_divisible_by_factorial() {
        for r in 2..=3 {
            assert!(verify_rfact_divisibility(r, 4), "r={r}");
        }
    }
}
