//! Sparse Laurent polynomials in several commuting variables `z_1..z_r`
//! together with the deformation parameter `q`, over the integers.
//!
//! This ring hosts the standalone symbolic identities: permutation sums,
//! Vandermonde products, and their q-scaled closed forms. Everything is
//! exact; equality of two expansions is literal equality of sparse maps.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::qarith::IntPoly;

/// Exponent key: one exponent per `z`-variable, then the `q`-exponent.
type Key = (Vec<i64>, i64);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultivarLaurent {
    vars: usize,
    terms: BTreeMap<Key, BigInt>,
}

impl MultivarLaurent {
    pub fn zero(vars: usize) -> Self {
        MultivarLaurent { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::term(vars, vec![0; vars], 0, BigInt::from(1))
    }

    pub fn constant(vars: usize, c: BigInt) -> Self {
        Self::term(vars, vec![0; vars], 0, c)
    }

    /// The variable `z_idx`.
    pub fn var(vars: usize, idx: usize) -> Self {
        assert!(idx < vars, "variable index out of range");
        let mut exps = vec![0; vars];
        exps[idx] = 1;
        Self::term(vars, exps, 0, BigInt::from(1))
    }

    pub fn q_power(vars: usize, e: i64) -> Self {
        Self::term(vars, vec![0; vars], e, BigInt::from(1))
    }

    pub fn term(vars: usize, z_exps: Vec<i64>, q_exp: i64, c: BigInt) -> Self {
        assert_eq!(z_exps.len(), vars, "exponent arity mismatch");
        let mut p = Self::zero(vars);
        p.add_term(z_exps, q_exp, c);
        p
    }

    /// Injects a one-variable Laurent polynomial in `q`.
    pub fn from_qpoly(vars: usize, p: &IntPoly) -> Self {
        let mut out = Self::zero(vars);
        for (e, c) in p.terms() {
            out.add_term(vec![0; vars], *e, c.clone());
        }
        out
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, z_exps: &[i64], q_exp: i64) -> BigInt {
        self.terms.get(&(z_exps.to_vec(), q_exp)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The `q`-polynomial multiplying a fixed `z`-monomial.
    pub fn coeff_of_z(&self, z_exps: &[i64]) -> IntPoly {
        let mut out = IntPoly::zero();
        for ((z, qe), c) in &self.terms {
            if z == z_exps {
                out.add_term(*qe, c.clone());
            }
        }
        out
    }

    pub fn add_term(&mut self, z_exps: Vec<i64>, q_exp: i64, c: BigInt) {
        assert_eq!(z_exps.len(), self.vars, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        let key = (z_exps, q_exp);
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "arity mismatch");
        let mut out = self.clone();
        for ((z, qe), c) in other.terms() {
            out.add_term(z.clone(), *qe, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for ((z, qe), c) in self.terms() {
            out.add_term(z.clone(), *qe, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "arity mismatch");
        let mut out = Self::zero(self.vars);
        for ((za, qa), ca) in self.terms() {
            for ((zb, qb), cb) in other.terms() {
                let z: Vec<i64> = za.iter().zip(zb).map(|(x, y)| x + y).collect();
                out.add_term(z, qa + qb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.vars);
        if c.is_zero() {
            return out;
        }
        for ((z, qe), k) in self.terms() {
            out.add_term(z.clone(), *qe, k * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.vars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for MultivarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((z, qe), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if *qe != 0 {
                write!(f, "*q^{qe}")?;
            }
            for (i, e) in z.iter().enumerate() {
                if *e != 0 {
                    write!(f, "*z{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// The elementary symmetric polynomial `e_k(z_1..z_vars)`.
pub fn elementary_symmetric(vars: usize, k: usize) -> MultivarLaurent {
    assert!(k <= vars, "degree exceeds variable count");
    let mut out = MultivarLaurent::zero(vars);
    let mut subset = vec![0usize; k];
    fn rec(
        vars: usize,
        k: usize,
        start: usize,
        depth: usize,
        subset: &mut Vec<usize>,
        out: &mut MultivarLaurent,
    ) {
        if depth == k {
            let mut exps = vec![0i64; vars];
            for idx in subset.iter() {
                exps[*idx] = 1;
            }
            out.add_term(exps, 0, BigInt::from(1));
            return;
        }
        for idx in start..vars {
            subset[depth] = idx;
            rec(vars, k, idx + 1, depth + 1, subset, out);
        }
    }
    if k == 0 {
        return MultivarLaurent::one(vars);
    }
    rec(vars, k, 0, 0, &mut subset, &mut out);
    out
}

/// `∏_{j<k} (z_j - z_k)`, the antisymmetric Vandermonde product.
pub fn vandermonde(vars: usize) -> MultivarLaurent {
    let mut acc = MultivarLaurent::one(vars);
    for j in 0..vars {
        for k in (j + 1)..vars {
            let factor = MultivarLaurent::var(vars, j).sub(&MultivarLaurent::var(vars, k));
            acc = acc.mul(&factor);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(vars: usize, seed: u64) -> MultivarLaurent {
        // Small deterministic pseudorandom polynomial.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        let mut p = MultivarLaurent::zero(vars);
        for _ in 0..4 {
            let z: Vec<i64> = (0..vars).map(|_| next().rem_euclid(5) - 2).collect();
            let qe = next().rem_euclid(5) - 2;
            let c = next().rem_euclid(9) - 4;
            p.add_term(z, qe, BigInt::from(c));
        }
        p
    }

    #[test]
    fn ring_axioms_on_pseudorandom_triples() {
        for seed in 0..6u64 {
            let a = sample(3, seed);
            let b = sample(3, seed + 100);
            let c = sample(3, seed + 200);
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.sub(&a), MultivarLaurent::zero(3));
            assert_eq!(a.mul(&MultivarLaurent::one(3)), a);
        }
    }

    #[test]
    fn one_variable_collapses_to_q_laurent() {
        use crate::qarith::qint;
        let p = MultivarLaurent::from_qpoly(1, &qint(3));
        let q = MultivarLaurent::from_qpoly(1, &qint(2));
        let prod = p.mul(&q);
        assert_eq!(prod.coeff_of_z(&[0]), qint(3).mul(&qint(2)));
    }

    #[test]
    fn elementary_symmetric_counts() {
        assert_eq!(elementary_symmetric(4, 2).num_terms(), 6);
        assert_eq!(elementary_symmetric(3, 3).num_terms(), 1);
        assert_eq!(elementary_symmetric(3, 0), MultivarLaurent::one(3));
    }

    #[test]
    fn vandermonde_is_antisymmetric() {
        let v = vandermonde(3);
        // Swapping z_1 and z_2 negates the product.
        let mut swapped = MultivarLaurent::zero(3);
        for ((z, qe), c) in v.terms() {
            swapped.add_term(vec![z[1], z[0], z[2]], *qe, c.clone());
        }
        assert_eq!(swapped, v.neg());
    }
}
