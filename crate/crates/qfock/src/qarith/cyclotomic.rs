//! Exact arithmetic in `Q(ζ_l) = Q[x]/Φ_l(x)`.
//!
//! Specializing `q` at a primitive `l`-th root of unity maps a Laurent
//! polynomial to a [`CyclotomicNum`]; zero tests in this field are exact, so
//! vanishing and nonvanishing statements become certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{CoeffRing, LaurentPoly};

/// Coefficients of the cyclotomic polynomial `Φ_l`, ascending, monic.
///
/// Computed by exact division of `x^l - 1` by all `Φ_d` with `d | l`,
/// `d < l`; results are cached per process.
pub fn cyclotomic_poly(l: u32) -> Arc<Vec<BigInt>> {
    assert!(l >= 1, "cyclotomic index must be positive");
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&l) {
        return p.clone();
    }
    // x^l - 1
    let mut num = vec![BigInt::zero(); l as usize + 1];
    num[0] = -BigInt::one();
    num[l as usize] = BigInt::one();
    for d in 1..l {
        if l % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    let arc = Arc::new(trim_int(num));
    cache.lock().unwrap().insert(l, arc.clone());
    arc
}

fn trim_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact division of integer polynomials by a monic divisor.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dn)];
    for i in (dn..rem.len()).rev() {
        let c = std::mem::replace(&mut rem[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate().take(dn) {
            let delta = d * &c;
            rem[i - dn + j] -= delta;
        }
        quot[i - dn] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// An element of `Q[x]/Φ_l(x)`, stored as the reduced residue with
/// `deg < φ(l)` coefficients (trailing zeros retained for fixed length).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicNum {
    l: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNum {
    fn phi_rational(l: u32) -> Vec<BigRational> {
        cyclotomic_poly(l).iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }

    fn degree(l: u32) -> usize {
        cyclotomic_poly(l).len() - 1
    }

    fn from_dense(l: u32, mut v: Vec<BigRational>) -> Self {
        let phi = Self::phi_rational(l);
        let deg = phi.len() - 1;
        for i in (deg..v.len()).rev() {
            let c = std::mem::replace(&mut v[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, p) in phi.iter().enumerate().take(deg) {
                let delta = p * &c;
                v[i - deg + j] -= delta;
            }
        }
        v.truncate(deg);
        v.resize(deg, BigRational::zero());
        CyclotomicNum { l, coeffs: v }
    }

    pub fn zero(l: u32) -> Self {
        CyclotomicNum { l, coeffs: vec![BigRational::zero(); Self::degree(l)] }
    }

    pub fn one(l: u32) -> Self {
        Self::from_rational(l, BigRational::one())
    }

    pub fn from_rational(l: u32, r: BigRational) -> Self {
        let mut v = Self::zero(l);
        if !v.coeffs.is_empty() {
            v.coeffs[0] = r;
        } else {
            // l = 1 has Φ_1 = x - 1 of degree 1, so this branch is unreachable;
            // degree is always at least 1.
            unreachable!("cyclotomic polynomial has positive degree");
        }
        v
    }

    pub fn from_int(l: u32, n: i64) -> Self {
        Self::from_rational(l, BigRational::from_integer(BigInt::from(n)))
    }

    /// The residue of `x^k` (so `zeta_pow(l, 1)` is the chosen primitive
    /// root itself). Exponents are taken mod `l` since `x^l = 1` in the
    /// quotient.
    pub fn zeta_pow(l: u32, k: i64) -> Self {
        let e = k.rem_euclid(l as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Self::from_dense(l, v)
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.l)
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.l, other.l, "mixed cyclotomic orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicNum { l: self.l, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same(other);
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicNum { l: self.l, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNum { l: self.l, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let delta = a * b;
                prod[i + j] += delta;
            }
        }
        Self::from_dense(self.l, prod)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CyclotomicNum { l: self.l, coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]`; `None` for zero. Since `Φ_l` is irreducible over `Q`, every
    /// nonzero residue is a unit.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = Self::phi_rational(self.l);
        let mut r0 = trim_rat(self.coeffs.clone());
        let mut r1 = phi;
        // s tracks the cofactor of `self`: s0 * self = r0 (mod Φ_l).
        let mut s0 = vec![BigRational::one()];
        let mut s1: Vec<BigRational> = vec![];
        while !r1.is_empty() {
            let (q, r) = rat_poly_divmod(&r0, &r1);
            let s = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert_eq!(r0.len(), 1, "cyclotomic polynomial must be coprime to a nonzero residue");
        let scale = r0[0].recip();
        let inv: Vec<BigRational> = s0.iter().map(|c| c * &scale).collect();
        Some(Self::from_dense(self.l, inv))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("cannot invert zero").pow(-e);
        }
        let mut acc = Self::one(self.l);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

fn trim_rat(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim_rat(out)
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let delta = x * y;
            out[i + j] += delta;
        }
    }
    trim_rat(out)
}

fn rat_poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return (vec![], trim_rat(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            rem[i] = BigRational::zero();
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            let delta = d * &c;
            rem[i - dn + j] -= delta;
        }
        quot[i - dn] = c;
    }
    (trim_rat(quot), trim_rat(rem))
}

impl fmt::Display for CyclotomicNum {
    /// Residue polynomial in the primitive root, ascending powers of `z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{mag}*z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Image of a Laurent polynomial under `q -> ζ_l`.
pub fn specialize<C: CoeffRing>(p: &LaurentPoly<C>, l: u32) -> CyclotomicNum {
    specialize_at_power(p, l, 1)
}

/// Image of a Laurent polynomial under `q -> ζ_l^k`, evaluated inside
/// `Q(ζ_l)`. For `gcd(k, l) > 1` the image of `q` is a root of unity of
/// smaller order, which is exactly what the nonvanishing scans probe.
pub fn specialize_at_power<C: CoeffRing>(p: &LaurentPoly<C>, l: u32, k: i64) -> CyclotomicNum {
    assert!(l >= 1, "root of unity order must be positive");
    let mut dense = vec![BigRational::zero(); l as usize];
    for (e, c) in p.terms() {
        let idx = (*e as i128 * k as i128).rem_euclid(l as i128) as usize;
        dense[idx] += c.to_big_rational();
    }
    CyclotomicNum::from_dense(l, dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::{qint, IntPoly};

    fn euler_phi(l: u32) -> u32 {
        (1..=l).filter(|k| num_integer::gcd(*k, l) == 1).count() as u32
    }

    #[test]
    fn cyclotomic_poly_small() {
        let as_i64 = |l: u32| -> Vec<i64> {
            cyclotomic_poly(l).iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_degree_is_euler_phi() {
        for l in 1..=30 {
            assert_eq!(cyclotomic_poly(l).len() as u32 - 1, euler_phi(l), "l = {l}");
        }
    }

    #[test]
    fn primitive_root_invariant() {
        // ζ^l = 1 and ζ^d != 1 for every proper divisor d of l.
        for l in 1..=30u32 {
            let z = CyclotomicNum::zeta_pow(l, 1);
            assert!(z.pow(l as i64).is_one(), "zeta_{l}^{l} != 1");
            for d in 1..l {
                if l % d == 0 {
                    assert!(!z.pow(d as i64).is_one(), "zeta_{l}^{d} == 1");
                }
            }
        }
    }

    #[test]
    fn specialize_examples() {
        for m in 1..=6 {
            let v = specialize(&qint(m), 1);
            assert_eq!(v, CyclotomicNum::from_int(1, m));
        }
        assert!(specialize(&qint(2), 4).is_zero());
        assert_eq!(specialize(&qint(3), 2), CyclotomicNum::from_int(2, 3));
        assert!(specialize(&qint(3), 3).is_zero());
        assert!(!specialize_at_power(&qint(3), 3, 3).is_zero());
    }

    #[test]
    fn field_inverse() {
        let z = CyclotomicNum::zeta_pow(5, 1);
        let a = z.add(&CyclotomicNum::from_int(5, 2));
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert!(CyclotomicNum::zero(5).inv().is_none());
    }

    #[test]
    fn specialization_is_ring_hom() {
        let a = qint(4);
        let b = qint(5).mul(&IntPoly::qpow(-3)).sub(&qint(2));
        for l in 1..=12 {
            for k in 1..=(2 * l as i64) {
                let sa = specialize_at_power(&a, l, k);
                let sb = specialize_at_power(&b, l, k);
                assert_eq!(specialize_at_power(&a.mul(&b), l, k), sa.mul(&sb));
                assert_eq!(specialize_at_power(&a.add(&b), l, k), sa.add(&sb));
            }
        }
    }
}
