//! Sparse Laurent polynomials in `q` and the balanced q-combinatorics built
//! on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact coefficient ring for [`LaurentPoly`]: the integers or the rationals.
///
/// Promotion `Z -> Q` is lossless; demotion `Q -> Z` exists only for
/// coefficients with denominator one and is surfaced as an `Option`.
pub trait CoeffRing: Clone + Eq + Ord + fmt::Debug + fmt::Display + Signed {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Exact quotient; `None` when `other` is zero or does not divide `self`.
    fn exact_div_ref(&self, other: &Self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Ratio `num/den` if it exists in this ring (`den != 0`).
    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self>;
    fn to_big_rational(&self) -> BigRational;
}

impl CoeffRing for BigInt {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div_ref(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if (self % other).is_zero() {
            Some(self / other)
        } else {
            None
        }
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        num.exact_div_ref(&den)
    }
    fn to_big_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl CoeffRing for BigRational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div_ref(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            None
        } else {
            Some(self / other)
        }
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: BigInt, den: BigInt) -> Option<Self> {
        if Zero::is_zero(&den) {
            None
        } else {
            Some(BigRational::new(num, den))
        }
    }
    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }
}

/// Returned by [`LaurentPoly::exact_div`] when the divisor does not divide
/// the dividend inside the Laurent polynomial ring (or is zero).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("exact Laurent division failed: divisor is zero or does not divide the dividend")]
pub struct NonDivisible;

/// Sparse Laurent polynomial: a map from exponents of `q` to nonzero
/// coefficients. The zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly<C: CoeffRing> {
    terms: BTreeMap<i64, C>,
}

/// Laurent polynomials over `Z`.
pub type IntPoly = LaurentPoly<BigInt>;
/// Laurent polynomials over `Q`.
pub type RatPoly = LaurentPoly<BigRational>;

impl<C: CoeffRing> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::qpow(0)
    }

    /// The monomial `q^e`.
    pub fn qpow(e: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, C::one());
        LaurentPoly { terms }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(0, c);
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    /// The monomial `c * q^e`.
    pub fn monomial(c: C, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| *c == C::one())
    }

    /// Coefficient of `q^e` (zero when absent).
    pub fn coeff(&self, e: i64) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Term iterator in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Adds `c * q^e`, dropping the entry if the sum cancels.
    pub fn add_term(&mut self, e: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = old.add_ref(&c);
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(*e, c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, k)| (*e, k.mul_ref(c))).collect() }
    }

    /// Multiplication by the unit `q^e`.
    pub fn mul_qpow(&self, e: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Exact division in the Laurent ring. Divides leading terms from the
    /// top; a failed coefficient quotient or a nonzero final remainder means
    /// the divisor does not divide the dividend.
    pub fn exact_div(&self, den: &Self) -> Result<Self, NonDivisible> {
        if den.is_zero() {
            return Err(NonDivisible);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let den_width = den.max_exp().unwrap() - den.min_exp().unwrap();
        let de = den.max_exp().unwrap();
        let dc = den.terms.get(&de).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let width = rem.max_exp().unwrap() - rem.min_exp().unwrap();
            if width < den_width {
                return Err(NonDivisible);
            }
            let re = rem.max_exp().unwrap();
            let rc = rem.terms.get(&re).unwrap();
            let qc = rc.exact_div_ref(dc).ok_or(NonDivisible)?;
            let qe = re - de;
            for (e, c) in den.terms() {
                rem.add_term(e + qe, c.mul_ref(&qc).neg_ref());
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Evaluation at a nonzero rational point.
    pub fn eval_rational(&self, q0: &BigRational) -> BigRational {
        assert!(!Zero::is_zero(q0), "evaluation point must be nonzero");
        let mut acc = BigRational::zero();
        let mut pow_cache: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in self.terms() {
            let p = pow_cache.entry(*e).or_insert_with(|| rational_pow(q0, *e));
            acc += c.to_big_rational() * &*p;
        }
        acc
    }

    fn map_coeffs<D: CoeffRing>(&self, f: impl Fn(&C) -> Option<D>) -> Option<LaurentPoly<D>> {
        let mut terms = BTreeMap::new();
        for (e, c) in self.terms() {
            terms.insert(*e, f(c)?);
        }
        Some(LaurentPoly { terms })
    }
}

fn rational_pow(q0: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    let base = if e >= 0 { q0.clone() } else { q0.recip() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl IntPoly {
    /// Lossless promotion into the rational coefficient ring.
    pub fn to_rat(&self) -> RatPoly {
        self.map_coeffs(|c| Some(BigRational::from_integer(c.clone()))).unwrap()
    }
}

impl RatPoly {
    /// Demotion into the integer coefficient ring; `None` when any reduced
    /// coefficient has denominator other than one.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.map_coeffs(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
    }

    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, c)| c.is_integer())
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> RatPoly {
        p.to_rat()
    }
}

/// Balanced q-integer `[m] = (q^m - q^-m) / (q - q^-1)`; odd under `m -> -m`.
pub fn qint(m: i64) -> IntPoly {
    let mut p = IntPoly::zero();
    let a = m.abs();
    let mut e = a - 1;
    while e >= -(a - 1) {
        p.add_term(e, BigInt::one());
        e -= 2;
    }
    if m < 0 {
        p.neg()
    } else {
        p
    }
}

/// Balanced q-factorial `[m]! = [m][m-1]...[1]`.
pub fn qfact(m: u32) -> IntPoly {
    let mut p = IntPoly::one();
    for k in 1..=m {
        p = p.mul(&qint(k as i64));
    }
    p
}

/// Balanced q-binomial `[m; r] = [m]! / ([r]! [m-r]!)`, a bar-invariant
/// element of `Z[q, q^-1]`.
pub fn qbinom(m: u32, r: u32) -> IntPoly {
    assert!(r <= m, "qbinom requires 0 <= r <= m, got ({m}, {r})");
    let den = qfact(r).mul(&qfact(m - r));
    qfact(m)
        .exact_div(&den)
        .expect("q-factorial quotient is always a Laurent polynomial")
}

impl<C: CoeffRing> fmt::Display for LaurentPoly<C> {
    /// Canonical rendering: ascending exponents, explicit signs, `q^-2`
    /// style exponents, `*` between a non-unit coefficient and `q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = if neg { c.neg_ref() } else { c.clone() };
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
            let mag_is_one = mag == C::one();
            match (*e, mag_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parse failure for the Laurent polynomial grammar; `pos` is a byte offset
/// into the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParsePolyError> {
        Err(ParsePolyError { pos: self.pos, msg: msg.to_string() })
    }

    fn digits(&mut self) -> Result<BigInt, ParsePolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(BigInt::from_str(s).unwrap())
    }

    fn signed_int(&mut self) -> Result<i64, ParsePolyError> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.bump();
                true
            }
            Some(b'+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let start = self.pos;
        let d = self.digits()?;
        let v: i64 = match d.try_into() {
            Ok(v) => v,
            Err(_) => {
                return Err(ParsePolyError { pos: start, msg: "exponent out of range".into() })
            }
        };
        Ok(if neg { -v } else { v })
    }
}

impl<C: CoeffRing> FromStr for LaurentPoly<C> {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut sc = Scanner::new(s);
        let mut out = Self::zero();
        sc.skip_ws();
        if sc.peek().is_none() {
            return sc.err("empty input");
        }
        let mut first = true;
        loop {
            sc.skip_ws();
            let sign = match sc.peek() {
                Some(b'+') => {
                    sc.bump();
                    false
                }
                Some(b'-') => {
                    sc.bump();
                    true
                }
                None if !first => break,
                None => return sc.err("expected term"),
                _ if first => false,
                _ => return sc.err("expected '+' or '-' between terms"),
            };
            sc.skip_ws();
            let (e, c) = parse_term::<C>(&mut sc)?;
            out.add_term(e, if sign { c.neg_ref() } else { c });
            first = false;
            sc.skip_ws();
            if sc.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }
}

fn parse_term<C: CoeffRing>(sc: &mut Scanner<'_>) -> Result<(i64, C), ParsePolyError> {
    match sc.peek() {
        Some(b'q') => {
            sc.bump();
            Ok((parse_exponent(sc)?, C::one()))
        }
        Some(b) if b.is_ascii_digit() => {
            let start = sc.pos;
            let num = sc.digits()?;
            let den = if sc.peek() == Some(b'/') {
                sc.bump();
                sc.digits()?
            } else {
                BigInt::one()
            };
            let c = match C::from_ratio(num, den) {
                Some(c) => c,
                None => {
                    return Err(ParsePolyError {
                        pos: start,
                        msg: "coefficient not representable in this ring".into(),
                    })
                }
            };
            sc.skip_ws();
            match sc.peek() {
                Some(b'*') => {
                    sc.bump();
                    sc.skip_ws();
                    if sc.peek() != Some(b'q') {
                        return sc.err("expected 'q' after '*'");
                    }
                    sc.bump();
                    Ok((parse_exponent(sc)?, c))
                }
                Some(b'q') => {
                    sc.bump();
                    Ok((parse_exponent(sc)?, c))
                }
                _ => Ok((0, c)),
            }
        }
        _ => sc.err("expected coefficient or 'q'"),
    }
}

fn parse_exponent(sc: &mut Scanner<'_>) -> Result<i64, ParsePolyError> {
    if sc.peek() == Some(b'^') {
        sc.bump();
        sc.signed_int()
    } else {
        Ok(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn qint_small_values() {
        assert_eq!(qint(0), IntPoly::zero());
        assert_eq!(qint(1), IntPoly::one());
        assert_eq!(qint(2), ip("q^-1+q"));
        assert_eq!(qint(3), ip("q^-2+1+q^2"));
        assert_eq!(qint(-3), qint(3).neg());
    }

    #[test]
    fn qint_matches_defining_quotient() {
        // [m] = (q^m - q^-m) / (q - q^-1), computed by independent division.
        let den = IntPoly::qpow(1).sub(&IntPoly::qpow(-1));
        for m in 1..=12 {
            let num = IntPoly::qpow(m).sub(&IntPoly::qpow(-m));
            assert_eq!(num.exact_div(&den).unwrap(), qint(m));
        }
    }

    #[test]
    fn qbinom_values() {
        assert_eq!(qbinom(5, 0), IntPoly::one());
        assert_eq!(qbinom(2, 1), ip("q^-1+q"));
        assert_eq!(qbinom(4, 2), ip("q^-4+q^-2+2+q^2+q^4"));
    }

    #[test]
    fn qbinom_pascal() {
        // [m; r] = [m-1; r-1] q^(m-r) + [m-1; r] q^-r
        for m in 1..=12u32 {
            for r in 1..m {
                let lhs = qbinom(m, r);
                let rhs = qbinom(m - 1, r - 1)
                    .mul_qpow((m - r) as i64)
                    .add(&qbinom(m - 1, r).mul_qpow(-(r as i64)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn bar_symmetry() {
        for m in 0..=9 {
            assert_eq!(qint(m).bar(), qint(m));
            assert_eq!(qfact(m as u32).bar(), qfact(m as u32));
        }
        for m in 0..=9u32 {
            for r in 0..=m {
                assert_eq!(qbinom(m, r).bar(), qbinom(m, r));
            }
        }
    }

    #[test]
    fn exact_div_detects_failure() {
        let num = ip("q^-1+q");
        let den = ip("-q^-1+q");
        assert_eq!(num.exact_div(&den), Err(NonDivisible));
        assert!(IntPoly::one().exact_div(&ip("1+q")).is_err());
        assert!(ip("1+q").exact_div(&IntPoly::zero()).is_err());
        assert_eq!(IntPoly::zero().exact_div(&den).unwrap(), IntPoly::zero());
    }

    #[test]
    fn exact_div_recovers_factor() {
        let a = ip("-2*q^-3+1+q^2");
        let b = ip("q^-1+3+q^4");
        assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
        assert_eq!(a.mul(&b).exact_div(&a).unwrap(), b);
    }

    #[test]
    fn render_round_trip() {
        for s in ["0", "1", "-1", "q", "-q^-2+1+q^2", "1/2*q^-1+3", "-5*q+q^3"] {
            let p: RatPoly = s.parse().unwrap();
            let back: RatPoly = p.to_string().parse().unwrap();
            assert_eq!(p, back);
        }
        assert_eq!(ip("q^-2+1+q^2").to_string(), "q^-2+1+q^2");
        assert_eq!(qint(2).to_string(), "q^-1+q");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = "q^".parse::<IntPoly>().unwrap_err();
        assert_eq!(e.pos, 2);
        assert!("1/2".parse::<IntPoly>().is_err());
        assert!("1/2".parse::<RatPoly>().is_ok());
    }

    #[test]
    fn promotion_round_trip() {
        let p = ip("-2*q^-3+1+q^2");
        assert_eq!(p.to_rat().to_int().unwrap(), p);
        let r: RatPoly = "1/2*q".parse().unwrap();
        assert!(r.to_int().is_none());
        assert!(!r.is_integral());
    }

    #[test]
    fn eval_rational_point() {
        let p = ip("q^-1+q");
        let q0 = BigRational::new(BigInt::from(2), BigInt::from(1));
        assert_eq!(p.eval_rational(&q0), BigRational::new(BigInt::from(5), BigInt::from(2)));
    }
}
