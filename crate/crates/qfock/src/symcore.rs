//! The symmetric algebra core: one commutative polynomial algebra with one
//! family of generators per node of the Dynkin diagram.
//!
//! Two monomial bases are used side by side, both indexed by colored
//! partitions:
//!
//! - [`Basis::Complete`]: monomials in the divided-power creation generators
//!   (the analogues of complete homogeneous symmetric functions); this is
//!   the stored lattice basis.
//! - [`Basis::PowerSum`]: monomials in the primitive Heisenberg generators
//!   (the analogues of power sums); annihilation acts diagonally here.
//!
//! Newton-type recursions convert between the bases; the annihilation
//! operators are derivations whose contraction with a creation generator of
//! the same degree is the exact Laurent polynomial [`pair_ht`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::qarith::{qint, IntPoly, ParsePolyError, RatPoly};
use crate::rootdata::RootDatum;

/// A partition per node color; `parts[color]` is weakly decreasing and
/// `total` caches the sum of all parts (the energy contribution).
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct ColoredPartition {
    total: u32,
    parts: Vec<Vec<u32>>,
}

impl ColoredPartition {
    pub fn empty(rank: usize) -> Self {
        ColoredPartition { total: 0, parts: vec![Vec::new(); rank] }
    }

    pub fn from_parts(parts: Vec<Vec<u32>>) -> Self {
        let mut p = ColoredPartition { total: 0, parts };
        for color in &mut p.parts {
            assert!(color.iter().all(|k| *k > 0), "parts must be positive");
            color.sort_unstable_by(|a, b| b.cmp(a));
        }
        p.total = p.parts.iter().flatten().sum();
        p
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    /// Cached total size; equals the recomputed sum of all parts.
    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn recomputed_total(&self) -> u32 {
        self.parts.iter().flatten().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn parts(&self, color: usize) -> &[u32] {
        &self.parts[color]
    }

    /// New partition with one extra part `k` in `color`.
    pub fn with_part(&self, color: usize, k: u32) -> Self {
        assert!(k > 0, "parts must be positive");
        let mut out = self.clone();
        let pos = out.parts[color].partition_point(|p| *p >= k);
        out.parts[color].insert(pos, k);
        out.total += k;
        out
    }

    /// New partition with one part `k` removed from `color`; `None` if no
    /// such part exists.
    pub fn without_part(&self, color: usize, k: u32) -> Option<Self> {
        let pos = self.parts[color].iter().position(|p| *p == k)?;
        let mut out = self.clone();
        out.parts[color].remove(pos);
        out.total -= k;
        Some(out)
    }

    /// Distinct parts with multiplicities, per color.
    pub fn part_multiplicities(&self) -> Vec<(usize, u32, u32)> {
        let mut out = Vec::new();
        for (color, parts) in self.parts.iter().enumerate() {
            let mut idx = 0;
            while idx < parts.len() {
                let k = parts[idx];
                let mut mult = 0;
                while idx < parts.len() && parts[idx] == k {
                    mult += 1;
                    idx += 1;
                }
                out.push((color, k, mult));
            }
        }
        out
    }

    /// Multiset union per color.
    pub fn merged(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let mut parts = self.parts.clone();
        for (color, ps) in other.parts.iter().enumerate() {
            parts[color].extend_from_slice(ps);
        }
        Self::from_parts(parts)
    }

    /// Parses the rendering produced by `Display`, e.g. `{1:[2,1], 3:[1]}`
    /// with 1-based colors; `{}` is the empty partition.
    pub fn parse(s: &str, rank: usize) -> Result<Self, ParsePolyError> {
        let err = |pos: usize, msg: &str| ParsePolyError { pos, msg: msg.to_string() };
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let parse_uint = |pos: &mut usize| -> Result<u32, ParsePolyError> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == start {
                return Err(err(start, "expected number"));
            }
            std::str::from_utf8(&bytes[start..*pos])
                .unwrap()
                .parse()
                .map_err(|_| err(start, "number out of range"))
        };
        skip_ws(&mut pos);
        if pos >= bytes.len() || bytes[pos] != b'{' {
            return Err(err(pos, "expected '{'"));
        }
        pos += 1;
        let mut parts = vec![Vec::new(); rank];
        loop {
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'}' {
                pos += 1;
                break;
            }
            let color_pos = pos;
            let color = parse_uint(&mut pos)? as usize;
            if color == 0 || color > rank {
                return Err(err(color_pos, "color out of range"));
            }
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b':' {
                return Err(err(pos, "expected ':'"));
            }
            pos += 1;
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'[' {
                return Err(err(pos, "expected '['"));
            }
            pos += 1;
            loop {
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b']' {
                    pos += 1;
                    break;
                }
                let part_pos = pos;
                let part = parse_uint(&mut pos)?;
                if part == 0 {
                    return Err(err(part_pos, "parts must be positive"));
                }
                parts[color - 1].push(part);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b']') => {}
                    _ => return Err(err(pos, "expected ',' or ']'")),
                }
            }
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b'}') => {}
                _ => return Err(err(pos, "expected ',' or '}'")),
            }
        }
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(err(pos, "trailing input"));
        }
        Ok(Self::from_parts(parts))
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (color, parts) in self.parts.iter().enumerate() {
            if parts.is_empty() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}:[", color + 1)?;
            for (t, p) in parts.iter().enumerate() {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "}}")
    }
}

/// Which monomial basis the coordinates of a [`SymVector`] refer to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    /// Monomials in the divided-power creation generators (stored basis).
    Complete,
    /// Monomials in the primitive Heisenberg generators.
    PowerSum,
}

/// A vector in the symmetric algebra: coordinates over `Q(q)` in one of the
/// two monomial bases. All terms share the single basis tag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymVector {
    rank: usize,
    basis: Basis,
    terms: BTreeMap<ColoredPartition, RatPoly>,
}

impl SymVector {
    pub fn zero(rank: usize, basis: Basis) -> Self {
        SymVector { rank, basis, terms: BTreeMap::new() }
    }

    /// The unit monomial (empty partition).
    pub fn unit(rank: usize, basis: Basis) -> Self {
        Self::from_monomial(basis, ColoredPartition::empty(rank), RatPoly::one())
    }

    pub fn from_monomial(basis: Basis, part: ColoredPartition, coeff: RatPoly) -> Self {
        let mut v = Self::zero(part.rank(), basis);
        v.add_term(part, coeff);
        v
    }

    /// The degree-`k` generator of `color` in the given basis.
    pub fn generator(rank: usize, basis: Basis, color: usize, k: u32) -> Self {
        Self::from_monomial(basis, ColoredPartition::empty(rank).with_part(color, k), RatPoly::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ColoredPartition, &RatPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, part: &ColoredPartition) -> RatPoly {
        self.terms.get(part).cloned().unwrap_or_else(RatPoly::zero)
    }

    pub fn max_total(&self) -> u32 {
        self.terms.keys().map(|p| p.total()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, part: ColoredPartition, coeff: RatPoly) {
        assert_eq!(part.rank(), self.rank, "rank mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&part) {
            None => {
                self.terms.insert(part, coeff);
            }
            Some(old) => {
                let s = old.add(&coeff);
                if !s.is_zero() {
                    self.terms.insert(part, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &RatPoly) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank, self.basis);
        }
        let mut out = Self::zero(self.rank, self.basis);
        for (p, k) in self.terms() {
            out.add_term(p.clone(), k.mul(c));
        }
        out
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        self.scale(&RatPoly::constant(r.clone()))
    }

    /// Product in the free commutative algebra (same basis on both sides).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = Self::zero(self.rank, self.basis);
        for (p1, c1) in self.terms() {
            for (p2, c2) in other.terms() {
                out.add_term(p1.merged(p2), c1.mul(c2));
            }
        }
        out
    }

    /// Change of coordinates into the power-sum basis.
    pub fn to_power_sums(&self) -> Self {
        assert_eq!(self.basis, Basis::Complete, "input must be in the stored basis");
        self.convert(Basis::PowerSum, complete_in_power_sums)
    }

    /// Change of coordinates into the stored (creation monomial) basis.
    pub fn to_h_basis(&self) -> Self {
        assert_eq!(self.basis, Basis::PowerSum, "input must be in the power-sum basis");
        self.convert(Basis::Complete, power_sum_in_complete)
    }

    fn convert(&self, target: Basis, table: fn(u32) -> Arc<ClassicalExpansion>) -> Self {
        let mut out = Self::zero(self.rank, target);
        for (part, coeff) in self.terms() {
            let mut acc = Self::from_monomial(target, ColoredPartition::empty(self.rank), coeff.clone());
            for (color, k, mult) in part.part_multiplicities() {
                let expansion = colored_expansion(self.rank, target, color, k, &table);
                for _ in 0..mult {
                    acc = acc.mul(&expansion);
                }
            }
            for (p, c) in acc.terms() {
                out.add_term(p.clone(), c.clone());
            }
        }
        out
    }
}

/// Expansion of one classical generator as a linear combination of
/// monomials in the other family: pairs `(partition, coefficient)`.
pub type ClassicalExpansion = Vec<(Vec<u32>, BigRational)>;

fn classical_cache(
    cell: &'static OnceLock<Mutex<BTreeMap<u32, Arc<ClassicalExpansion>>>>,
    k: u32,
    compute: impl FnOnce() -> ClassicalExpansion,
) -> Arc<ClassicalExpansion> {
    let cache = cell.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&k) {
        return hit.clone();
    }
    let value = Arc::new(compute());
    cache.lock().unwrap().insert(k, value.clone());
    value
}

/// `h_k` in power sums: `h_k = (1/k) Σ_{m=1..k} p_m h_{k-m}`, `h_0 = 1`.
fn complete_in_power_sums(k: u32) -> Arc<ClassicalExpansion> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<ClassicalExpansion>>>> = OnceLock::new();
    classical_cache(&CACHE, k, || {
        if k == 0 {
            return vec![(vec![], BigRational::one())];
        }
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        let inv_k = BigRational::new(BigInt::one(), BigInt::from(k));
        for m in 1..=k {
            let lower = complete_in_power_sums(k - m);
            for (mu, c) in lower.iter() {
                let mut nu = mu.clone();
                let pos = nu.partition_point(|p| *p >= m);
                nu.insert(pos, m);
                let entry = acc.entry(nu).or_insert_with(BigRational::zero);
                *entry += c * &inv_k;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    })
}

/// `p_k` in complete generators: `p_k = k h_k - Σ_{m=1..k-1} p_m h_{k-m}`.
fn power_sum_in_complete(k: u32) -> Arc<ClassicalExpansion> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<ClassicalExpansion>>>> = OnceLock::new();
    classical_cache(&CACHE, k, || {
        assert!(k > 0);
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        acc.insert(vec![k], BigRational::from_integer(BigInt::from(k)));
        for m in 1..k {
            let lower = power_sum_in_complete(m);
            for (mu, c) in lower.iter() {
                let mut nu = mu.clone();
                let part = k - m;
                let pos = nu.partition_point(|p| *p >= part);
                nu.insert(pos, part);
                let entry = acc.entry(nu).or_insert_with(BigRational::zero);
                *entry -= c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    })
}

/// Coefficients of the inverse creation series: `g_0 = 1`,
/// `g_k = -Σ_{m=1..k} h_m g_{k-m}`, so `Σ g_k u^k = (Σ h_k u^k)^-1`.
/// These are the lowering-sign creation generators, with integer
/// coefficients in the stored basis.
pub fn inverse_series_in_complete(k: u32) -> Arc<ClassicalExpansion> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<ClassicalExpansion>>>> = OnceLock::new();
    classical_cache(&CACHE, k, || {
        if k == 0 {
            return vec![(vec![], BigRational::one())];
        }
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for m in 1..=k {
            let lower = inverse_series_in_complete(k - m);
            for (mu, c) in lower.iter() {
                let mut nu = mu.clone();
                let pos = nu.partition_point(|p| *p >= m);
                nu.insert(pos, m);
                let entry = acc.entry(nu).or_insert_with(BigRational::zero);
                *entry -= c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    })
}

/// Inverse-series coefficients in power sums: the generating series is
/// `exp(-Σ p_k u^k / k)`, so each expansion term of
/// [`complete_in_power_sums`] picks up `(-1)^length`.
pub fn inverse_series_in_power_sums(k: u32) -> Arc<ClassicalExpansion> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<ClassicalExpansion>>>> = OnceLock::new();
    classical_cache(&CACHE, k, || {
        complete_in_power_sums(k)
            .iter()
            .map(|(mu, c)| {
                let signed = if mu.len() % 2 == 1 { -c.clone() } else { c.clone() };
                (mu.clone(), signed)
            })
            .collect()
    })
}

/// Lifts a classical expansion to `color`, as a vector in `basis`.
pub fn colored_expansion(
    rank: usize,
    basis: Basis,
    color: usize,
    k: u32,
    table: &impl Fn(u32) -> Arc<ClassicalExpansion>,
) -> SymVector {
    let mut out = SymVector::zero(rank, basis);
    for (mu, c) in table(k).iter() {
        let mut part = ColoredPartition::empty(rank);
        for p in mu {
            part = part.with_part(color, *p);
        }
        out.add_term(part, RatPoly::constant(c.clone()));
    }
    out
}

/// The degree-`k` generator of `color` expanded in the opposite basis.
pub fn generator_expanded(rank: usize, target: Basis, color: usize, k: u32) -> SymVector {
    match target {
        Basis::PowerSum => colored_expansion(rank, target, color, k, &complete_in_power_sums),
        Basis::Complete => colored_expansion(rank, target, color, k, &power_sum_in_complete),
    }
}

/// `[m a_ij] / [m]` as an exact Laurent polynomial; on a simply laced
/// diagram this is `q^m + q^-m`, `-1` or `0`.
pub fn cartan_ratio(datum: &RootDatum, i: usize, j: usize, m: u32) -> IntPoly {
    let m = m as i64;
    match datum.cartan_entry(i, j) {
        2 => IntPoly::qpow(m).add(&IntPoly::qpow(-m)),
        -1 => IntPoly::int(-1),
        0 => IntPoly::zero(),
        a => unreachable!("simply laced Cartan entries are 2, -1, 0; got {a}"),
    }
}

/// Contraction of the level-`k` annihilation generator of node `i` with the
/// degree-`k` creation generator of node `j`: `k [k a_ij] / [k]`.
pub fn pair_ht(datum: &RootDatum, i: usize, j: usize, k: u32) -> IntPoly {
    cartan_ratio(datum, i, j, k).scale(&BigInt::from(k))
}

/// Annihilation by the level-`k` primitive generator of node `i`: a
/// derivation on the power-sum basis, contracting each degree-`k` part.
pub fn act_annihilate(datum: &RootDatum, i: usize, k: u32, v: &SymVector) -> SymVector {
    assert_eq!(v.basis(), Basis::PowerSum, "annihilation acts on the power-sum basis");
    assert!(k > 0, "annihilation level must be positive");
    let rank = v.rank();
    let mut out = SymVector::zero(rank, Basis::PowerSum);
    for (part, coeff) in v.terms() {
        for j in 0..rank {
            let mult = part.parts(j).iter().filter(|p| **p == k).count();
            if mult == 0 {
                continue;
            }
            let pairing = pair_ht(datum, i, j, k);
            if pairing.is_zero() {
                continue;
            }
            let reduced = part.without_part(j, k).unwrap();
            let scalar = pairing.to_rat().scale(&BigRational::from_integer(BigInt::from(mult)));
            out.add_term(reduced, coeff.mul(&scalar));
        }
    }
    out
}

/// Multiplication by the degree-`k` generator of node `i` in the vector's
/// own basis (creation).
pub fn act_create(i: usize, k: u32, v: &SymVector) -> SymVector {
    assert!(k > 0, "creation degree must be positive");
    let mut out = SymVector::zero(v.rank(), v.basis());
    for (part, coeff) in v.terms() {
        out.add_term(part.with_part(i, k), coeff.clone());
    }
    out
}

/// Coefficients of the two-point contraction series for nodes `i, j`: entry
/// `m` is the coefficient of `(uv)^m` in
/// `exp(Σ_k k [k a_ij]/[k] (uv)^k / k^2)`, which closes to `1/((1-q uv)(1-q^-1 uv))`,
/// `1 - uv`, or `1` according to `a_ij = 2, -1, 0`. Entry `m` for the
/// adjacent-node case is the balanced q-integer `[m+1]`.
pub fn f_series(datum: &RootDatum, i: usize, j: usize, order: u32) -> Vec<IntPoly> {
    let mut out = Vec::with_capacity(order as usize + 1);
    match datum.cartan_entry(i, j) {
        2 => {
            for m in 0..=order {
                out.push(qint(m as i64 + 1));
            }
        }
        -1 => {
            out.push(IntPoly::one());
            if order >= 1 {
                out.push(IntPoly::int(-1));
            }
            for _ in 2..=order {
                out.push(IntPoly::zero());
            }
        }
        0 => {
            out.push(IntPoly::one());
            for _ in 1..=order {
                out.push(IntPoly::zero());
            }
        }
        a => unreachable!("simply laced Cartan entries are 2, -1, 0; got {a}"),
    }
    out
}

/// Applies the algebra automorphism that shifts each power-sum generator of
/// color `j` and degree `m` by `shift(j, m)` times a formal marker power
/// `t_1^m + ... + t_r^m` (with `r = markers`), to a power-sum basis vector.
///
/// The result is grouped by the vector of marker exponents. This is the
/// exact finite form of conjugating by an exponential of annihilation
/// operators: each generator is replaced independently, and the expansion
/// is multinomial over the multiplicity of equal parts.
pub fn shift_generators_multi(
    v: &SymVector,
    markers: usize,
    shift: &dyn Fn(usize, u32) -> RatPoly,
) -> BTreeMap<Vec<u32>, SymVector> {
    assert_eq!(v.basis(), Basis::PowerSum, "shift acts on the power-sum basis");
    let rank = v.rank();
    let mut out: BTreeMap<Vec<u32>, SymVector> = BTreeMap::new();
    for (part, coeff) in v.terms() {
        // branches: (marker exponents, partial partition, coefficient)
        let mut branches: Vec<(Vec<u32>, ColoredPartition, RatPoly)> =
            vec![(vec![0; markers], ColoredPartition::empty(rank), coeff.clone())];
        for (color, m, mult) in part.part_multiplicities() {
            let s = shift(color, m);
            let mut next = Vec::new();
            for (exps, partial, c) in &branches {
                // Keep `mult - u` generators, replace `u` of them by the
                // shift scalar, distributed over the markers.
                for u in 0..=mult {
                    let kept = mult - u;
                    let mut with_kept = partial.clone();
                    for _ in 0..kept {
                        with_kept = with_kept.with_part(color, m);
                    }
                    if u == 0 {
                        next.push((exps.clone(), with_kept, c.clone()));
                        continue;
                    }
                    if s.is_zero() {
                        continue;
                    }
                    let s_pow = s.pow(u);
                    for dist in compositions(u, markers) {
                        let weight = multinomial(u, &dist);
                        let mut exps2 = exps.clone();
                        for (t, d) in dist.iter().enumerate() {
                            exps2[t] += d * m;
                        }
                        let scalar = s_pow
                            .scale(&BigRational::from_integer(binomial(mult as u64, u as u64)))
                            .scale(&BigRational::from_integer(weight));
                        next.push((exps2, with_kept.clone(), c.mul(&scalar)));
                    }
                }
            }
            branches = next;
        }
        for (exps, partial, c) in branches {
            out.entry(exps)
                .or_insert_with(|| SymVector::zero(rank, Basis::PowerSum))
                .add_term(partial, c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Single-marker form of [`shift_generators_multi`]: entry `t` of the
/// result collects the coefficient of marker degree `t`.
pub fn shift_generators(
    v: &SymVector,
    shift: &dyn Fn(usize, u32) -> RatPoly,
) -> BTreeMap<u32, SymVector> {
    shift_generators_multi(v, 1, shift)
        .into_iter()
        .map(|(exps, vec)| (exps[0], vec))
        .collect()
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k.min(n - k) {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    num / den
}

fn multinomial(n: u32, parts: &[u32]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<u32>(), n);
    let mut acc = BigInt::one();
    let mut rest = n as u64;
    for p in parts {
        acc *= binomial(rest, *p as u64);
        rest -= *p as u64;
    }
    acc
}

/// All ways to write `n` as an ordered sum of `parts` nonnegative integers.
fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// All classical partitions of `n`, parts descending, in deterministic
/// order.
pub fn classical_partitions(n: u32) -> Arc<Vec<Vec<u32>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Arc<Vec<Vec<u32>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = n.min(max);
        for k in (1..=top).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    let arc = Arc::new(out);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// All colored partitions with the given total, in canonical order.
pub fn colored_partitions(rank: usize, total: u32) -> Vec<ColoredPartition> {
    fn rec(rank: usize, color: usize, left: u32, prefix: &mut Vec<Vec<u32>>, out: &mut Vec<ColoredPartition>) {
        if color == rank {
            if left == 0 {
                out.push(ColoredPartition::from_parts(prefix.clone()));
            }
            return;
        }
        let budget = if color + 1 == rank { left..=left } else { 0..=left };
        for m in budget {
            for mu in classical_partitions(m).iter() {
                prefix.push(mu.clone());
                rec(rank, color + 1, left - m, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(rank, 0, total, &mut Vec::new(), &mut out);
    out.sort();
    out
}
