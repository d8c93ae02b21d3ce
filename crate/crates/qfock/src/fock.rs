//! The level-one bosonic module: the symmetric algebra tensored with the
//! group algebra of the root lattice.
//!
//! Basis vectors are pairs (colored partition, lattice weight); coordinates
//! are Laurent polynomials in `q` over `Q`, stored in the creation-monomial
//! basis. The integral span of these basis vectors is the lattice that the
//! divided powers of the vertex operator coefficients are expected to
//! preserve; [`FockVector::is_integral`] tests membership.
//!
//! The raising and lowering series act through three exactly computable
//! pieces: a creation series (multiplication), an annihilation exponential
//! (an algebra automorphism that shifts each primitive generator by a
//! scalar marker), and a lattice translation with a sign cocycle and a
//! weight-dependent power shift. [`apply_x`] extracts one series
//! coefficient; all steps are finite and exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qarith::{qfact, RatPoly};
use crate::rootdata::{QElement, RootDatum};
use crate::symcore::{
    act_annihilate, act_create, cartan_ratio, colored_partitions, generator_expanded,
    inverse_series_in_power_sums, colored_expansion, shift_generators, Basis, ColoredPartition,
    SymVector,
};

/// Which of the two vertex operator families acts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// Grouplike operators acting diagonally on the basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TorusOp {
    /// `q` to the pairing of the weight with the given simple root.
    K(usize),
    KInv(usize),
    /// `q` to minus the energy; fixes the vacuum, and conjugation scales a
    /// mode that lowers energy by `r` by `q^r`.
    D,
    DInv,
    /// The central element, acting as `q` itself at level one.
    C,
    CInv,
}

/// Label of a weight space: lattice weight together with total energy.
/// `K_i` acts on the space by `q^{pairing(eta, α_i)}` and `D` by
/// `q^{-energy}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeightLabel {
    pub eta: QElement,
    pub energy: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum FockError {
    #[error("coordinate of {part} at weight {eta} is not divisible by [{r}]!")]
    DividedPower { part: ColoredPartition, eta: QElement, r: u32 },
}

/// A vector in the module, stored in the creation-monomial basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVector {
    rank: usize,
    terms: BTreeMap<(ColoredPartition, QElement), RatPoly>,
}

impl FockVector {
    pub fn zero(rank: usize) -> Self {
        FockVector { rank, terms: BTreeMap::new() }
    }

    /// The vacuum `1 ⊗ e^0`.
    pub fn vacuum(rank: usize) -> Self {
        Self::basis_vector(ColoredPartition::empty(rank), QElement::zero(rank), RatPoly::one())
    }

    pub fn basis_vector(part: ColoredPartition, eta: QElement, coeff: RatPoly) -> Self {
        assert_eq!(part.rank(), eta.rank(), "rank mismatch");
        let mut v = Self::zero(part.rank());
        v.add_term(part, eta, coeff);
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ColoredPartition, QElement), &RatPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, part: &ColoredPartition, eta: &QElement) -> RatPoly {
        self.terms.get(&(part.clone(), eta.clone())).cloned().unwrap_or_else(RatPoly::zero)
    }

    pub fn add_term(&mut self, part: ColoredPartition, eta: QElement, coeff: RatPoly) {
        assert_eq!(part.rank(), self.rank, "rank mismatch");
        assert_eq!(eta.rank(), self.rank, "rank mismatch");
        if coeff.is_zero() {
            return;
        }
        let key = (part, eta);
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, coeff);
            }
            Some(old) => {
                let s = old.add(&coeff);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, e), c) in other.terms() {
            out.add_term(p.clone(), e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, e), c) in other.terms() {
            out.add_term(p.clone(), e.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &RatPoly) -> Self {
        let mut out = Self::zero(self.rank);
        if c.is_zero() {
            return out;
        }
        for ((p, e), k) in self.terms() {
            out.add_term(p.clone(), e.clone(), k.mul(c));
        }
        out
    }

    /// Membership in the integral span of the basis: every coordinate lies
    /// in `Z[q, q^-1]`.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integral())
    }

    /// `Some(d)` if every term has energy `d`; `None` for zero or mixed.
    pub fn homogeneous_energy(&self, datum: &RootDatum) -> Option<i64> {
        let mut energy = None;
        for ((p, e), _) in self.terms() {
            let d = term_energy(datum, p, e);
            match energy {
                None => energy = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        energy
    }

    /// `Some(η)` if every term has weight `η`; `None` for zero or mixed.
    pub fn homogeneous_weight(&self) -> Option<QElement> {
        let mut weight: Option<QElement> = None;
        for ((_, e), _) in self.terms() {
            match &weight {
                None => weight = Some(e.clone()),
                Some(w) if w != e => return None,
                _ => {}
            }
        }
        weight
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((p, e), c) in self.terms() {
            if !first {
                write!(f, " ; ")?;
            }
            first = false;
            write!(f, "({c}) * {p} @ eta={e}")?;
        }
        Ok(())
    }
}

/// Energy of a basis vector: partition size plus half the weight norm.
pub fn term_energy(datum: &RootDatum, part: &ColoredPartition, eta: &QElement) -> i64 {
    let norm = datum.norm(eta);
    debug_assert!(norm % 2 == 0, "root lattice norms are even");
    part.total() as i64 + norm / 2
}

/// One series coefficient of the raising (`Sign::Plus`) or lowering
/// (`Sign::Minus`) vertex operator of node `i`: the coefficient indexed by
/// `n` in the expansion of the series in `z^{-n-1}`. Lowers energy by `n`
/// and moves the weight by plus or minus the simple root.
pub fn apply_x(datum: &RootDatum, i: usize, sign: Sign, n: i64, v: &FockVector) -> FockVector {
    let rank = datum.rank();
    assert_eq!(v.rank(), rank, "rank mismatch");
    assert!(i < rank, "node index out of range");
    let alpha = datum.simple(i);
    let mut out = FockVector::zero(rank);
    for ((part, eta), coeff) in v.terms() {
        let m = datum.pairing(eta, &alpha);
        let (new_eta, shift_root) = match sign {
            Sign::Plus => (eta.add(&alpha), alpha.clone()),
            Sign::Minus => (eta.sub(&alpha), alpha.neg()),
        };
        let eps = datum.cocycle(&shift_root, eta);
        let p_form = SymVector::from_monomial(Basis::Complete, part.clone(), coeff.clone())
            .to_power_sums();
        // Annihilation exponential, grouped by the extracted z-degree.
        let shifted = shift_generators(&p_form, &|j, d| {
            let ratio = cartan_ratio(datum, i, j, d).to_rat();
            match sign {
                Sign::Plus => ratio.mul_qpow(-(d as i64)).neg(),
                Sign::Minus => ratio,
            }
        });
        let mut acc = SymVector::zero(rank, Basis::PowerSum);
        for (t, w) in shifted {
            // Creation order forced by matching total z-degree to -n-1.
            let k = match sign {
                Sign::Plus => -n - 1 - m + t as i64,
                Sign::Minus => m - n - 1 + t as i64,
            };
            if k < 0 {
                continue;
            }
            let k = k as u32;
            let mut contrib = if k == 0 {
                w
            } else {
                let creation = match sign {
                    Sign::Plus => generator_expanded(rank, Basis::PowerSum, i, k),
                    Sign::Minus => {
                        colored_expansion(rank, Basis::PowerSum, i, k, &inverse_series_in_power_sums)
                    }
                };
                w.mul(&creation)
            };
            if sign == Sign::Minus && k > 0 {
                contrib = contrib.scale(&RatPoly::qpow(k as i64));
            }
            acc = acc.add(&contrib);
        }
        if eps < 0 {
            acc = acc.scale_rat(&-BigRational::one());
        }
        let d_in = term_energy(datum, part, eta);
        for (p, c) in acc.to_h_basis().terms() {
            debug_assert_eq!(term_energy(datum, p, &new_eta), d_in - n, "energy bookkeeping");
            out.add_term(p.clone(), new_eta.clone(), c.clone());
        }
    }
    out
}

/// The `r`-th divided power of one series coefficient: iterate [`apply_x`]
/// `r` times and divide every coordinate exactly by `[r]!`. Divisibility
/// failure is reported with the offending basis vector; integrality of the
/// quotient is a separate question, left to [`FockVector::is_integral`].
pub fn apply_x_divided(
    datum: &RootDatum,
    i: usize,
    sign: Sign,
    n: i64,
    r: u32,
    v: &FockVector,
) -> Result<FockVector, FockError> {
    let mut w = v.clone();
    for _ in 0..r {
        w = apply_x(datum, i, sign, n, &w);
    }
    let denom = qfact(r).to_rat();
    let mut out = FockVector::zero(w.rank());
    for ((p, e), c) in w.terms() {
        match c.exact_div(&denom) {
            Ok(qt) => out.add_term(p.clone(), e.clone(), qt),
            Err(_) => {
                return Err(FockError::DividedPower { part: p.clone(), eta: e.clone(), r });
            }
        }
    }
    Ok(out)
}

/// The Heisenberg generator of node `i` and level `k` (nonzero):
/// annihilation for `k > 0`, creation for `k < 0`. Both directions are the
/// primitive-generator operators rescaled by `[|k|] / |k|`.
pub fn apply_h(datum: &RootDatum, i: usize, k: i64, v: &FockVector) -> FockVector {
    assert!(k != 0, "level must be nonzero");
    let rank = datum.rank();
    assert_eq!(v.rank(), rank, "rank mismatch");
    let level = k.unsigned_abs() as u32;
    let scale = crate::qarith::qint(level as i64)
        .to_rat()
        .scale(&BigRational::new(BigInt::one(), BigInt::from(level)));
    let mut out = FockVector::zero(rank);
    for ((part, eta), coeff) in v.terms() {
        let p_form = SymVector::from_monomial(Basis::Complete, part.clone(), coeff.clone())
            .to_power_sums();
        let moved = if k > 0 {
            act_annihilate(datum, i, level, &p_form)
        } else {
            act_create(i, level, &p_form)
        };
        for (p, c) in moved.to_h_basis().terms() {
            out.add_term(p.clone(), eta.clone(), c.mul(&scale));
        }
    }
    out
}

/// A diagonal grouplike operator.
pub fn apply_torus(datum: &RootDatum, op: TorusOp, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(v.rank());
    for ((part, eta), coeff) in v.terms() {
        let power = match op {
            TorusOp::K(i) => datum.pairing(eta, &datum.simple(i)),
            TorusOp::KInv(i) => -datum.pairing(eta, &datum.simple(i)),
            TorusOp::D => -term_energy(datum, part, eta),
            TorusOp::DInv => term_energy(datum, part, eta),
            TorusOp::C => 1,
            TorusOp::CInv => -1,
        };
        out.add_term(part.clone(), eta.clone(), coeff.mul_qpow(power));
    }
    out
}

/// All lattice elements with `(η, η) <= max_norm`, in canonical order.
/// Exact search: the Gram matrix is split as a sum of complete rational
/// squares and coordinates are scanned over the integer ranges the
/// remaining budget allows.
pub fn lattice_points_up_to(datum: &RootDatum, max_norm: i64) -> Vec<QElement> {
    let rank = datum.rank();
    if max_norm < 0 {
        return Vec::new();
    }
    // G = Lᵀ D L with L unit upper triangular:
    // Q(x) = Σ_i d_i (x_i + Σ_{j>i} l_ij x_j)².
    let mut a: Vec<Vec<BigRational>> = datum
        .cartan()
        .iter()
        .map(|row| row.iter().map(|e| BigRational::from_integer(BigInt::from(*e))).collect())
        .collect();
    let mut l = vec![vec![BigRational::zero(); rank]; rank];
    let mut d = vec![BigRational::zero(); rank];
    for i in 0..rank {
        d[i] = a[i][i].clone();
        assert!(d[i].is_positive(), "Gram matrix must be positive definite");
        for j in (i + 1)..rank {
            l[i][j] = &a[i][j] / &d[i];
        }
        for r in (i + 1)..rank {
            for s in (i + 1)..rank {
                let delta = &a[i][r] * &a[i][s] / &d[i];
                a[r][s] -= delta;
            }
        }
    }
    let budget = BigRational::from_integer(BigInt::from(max_norm));
    let mut coords = vec![0i64; rank];
    let mut out = Vec::new();
    // Scan from the last coordinate: at level i the remaining budget bounds
    // d_i (x_i + c_i)², with c_i determined by the already chosen tail.
    fn rec(
        i: usize,
        budget: BigRational,
        l: &[Vec<BigRational>],
        d: &[BigRational],
        coords: &mut Vec<i64>,
        out: &mut Vec<QElement>,
    ) {
        if budget.is_negative() {
            return;
        }
        if i == usize::MAX {
            unreachable!();
        }
        let mut center = BigRational::zero();
        for j in (i + 1)..coords.len() {
            center += &l[i][j] * BigRational::from_integer(BigInt::from(coords[j]));
        }
        // x ranges over integers with d_i (x + center)² <= budget; scan
        // outward from the flooring of -center in both directions.
        let neg_center = -&center;
        let start = neg_center.floor().to_integer();
        let start: i64 = i64::try_from(&start).expect("coordinate fits i64");
        let fits = |x: i64| -> Option<BigRational> {
            let offset = BigRational::from_integer(BigInt::from(x)) + &center;
            let used = &d[i] * &offset * &offset;
            if used <= budget {
                Some(&budget - used)
            } else {
                None
            }
        };
        let visit = |x: i64, left: BigRational, coords: &mut Vec<i64>, out: &mut Vec<QElement>| {
            coords[i] = x;
            if i == 0 {
                out.push(QElement::new(coords.clone()));
            } else {
                rec(i - 1, left, l, d, coords, out);
            }
            coords[i] = 0;
        };
        let mut x = start;
        while let Some(left) = fits(x) {
            visit(x, left, coords, out);
            x -= 1;
        }
        x = start + 1;
        while let Some(left) = fits(x) {
            visit(x, left, coords, out);
            x += 1;
        }
    }
    rec(rank - 1, budget, &l, &d, &mut coords, &mut out);
    out.sort();
    out
}

/// All basis vectors of energy exactly `d`, in canonical order.
pub fn enumerate_basis_at_energy(datum: &RootDatum, d: u32) -> Vec<(ColoredPartition, QElement)> {
    let rank = datum.rank();
    let mut out = Vec::new();
    for eta in lattice_points_up_to(datum, 2 * d as i64) {
        let w = datum.norm(&eta) / 2;
        let rest = d as i64 - w;
        debug_assert!(rest >= 0);
        for part in colored_partitions(rank, rest as u64 as u32) {
            out.push((part, eta.clone()));
        }
    }
    out.sort();
    out
}

/// All basis vectors of energy at most `depth`, in canonical order. Finite
/// because the weight norm is bounded by twice the energy.
pub fn enumerate_basis(datum: &RootDatum, depth: u32) -> Vec<(ColoredPartition, QElement)> {
    let mut out = Vec::new();
    for d in 0..=depth {
        out.extend(enumerate_basis_at_energy(datum, d));
    }
    out.sort();
    out
}

/// Number of colored partitions of each total `0..=max` with `rank` colors
/// (coefficients of the Euler product with exponent `-rank`).
pub fn colored_partition_count(rank: usize, max: u32) -> Vec<u64> {
    let max = max as usize;
    let mut c = vec![0u64; max + 1];
    c[0] = 1;
    for k in 1..=max {
        for _ in 0..rank {
            for t in k..=max {
                c[t] = c[t].checked_add(c[t - k]).expect("count overflow");
            }
        }
    }
    c
}

/// Weight-space multiplicities for all energies `0..=depth`: each label
/// `(η, d)` maps to the number of colored partitions of `d - (η,η)/2`.
pub fn character(datum: &RootDatum, depth: u32) -> BTreeMap<WeightLabel, u64> {
    let rank = datum.rank();
    let partition_counts = colored_partition_count(rank, depth);
    let mut out = BTreeMap::new();
    for eta in lattice_points_up_to(datum, 2 * depth as i64) {
        let w = (datum.norm(&eta) / 2) as u32;
        for d in w..=depth {
            out.insert(
                WeightLabel { eta: eta.clone(), energy: d },
                partition_counts[(d - w) as usize],
            );
        }
    }
    out
}

/// Graded total dimensions for energies `0..=max`: the counting route,
/// combining lattice point counts by norm with the colored partition
/// counting function. Independent of the basis enumeration.
pub fn character_totals(datum: &RootDatum, max: u32) -> Vec<u64> {
    let rank = datum.rank();
    let partition_counts = colored_partition_count(rank, max);
    let mut points_by_half_norm = vec![0u64; max as usize + 1];
    for eta in lattice_points_up_to(datum, 2 * max as i64) {
        let w = datum.norm(&eta) / 2;
        points_by_half_norm[w as usize] += 1;
    }
    (0..=max as usize)
        .map(|d| {
            (0..=d)
                .map(|w| points_by_half_norm[w] * partition_counts[d - w])
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::qint;
    use crate::rootdata::Family;

    fn a1() -> RootDatum {
        RootDatum::new(Family::A, 1).unwrap()
    }

    fn a2() -> RootDatum {
        RootDatum::new(Family::A, 2).unwrap()
    }

    fn weight(coords: &[i64]) -> QElement {
        QElement::new(coords.to_vec())
    }

    #[test]
    fn vacuum_annihilated_by_nonnegative_raising_modes() {
        let d = a1();
        let v = FockVector::vacuum(1);
        for n in 0..4 {
            assert!(apply_x(&d, 0, Sign::Plus, n, &v).is_zero(), "n={n}");
        }
        assert!(!apply_x(&d, 0, Sign::Plus, -1, &v).is_zero());
        // Divided powers of a vanishing mode vanish too.
        assert!(apply_x_divided(&d, 0, Sign::Plus, 0, 2, &v).unwrap().is_zero());
    }

    #[test]
    fn rank_one_formulas_on_pure_weights() {
        // On 1 ⊗ e^η, the extreme mode acts as a pure lattice translation
        // with the cocycle sign.
        let d = a2();
        for c1 in -1..=1i64 {
            for c2 in -1..=1i64 {
                let eta = weight(&[c1, c2]);
                let v = FockVector::basis_vector(
                    ColoredPartition::empty(2),
                    eta.clone(),
                    RatPoly::one(),
                );
                for i in 0..2 {
                    let alpha = d.simple(i);
                    let m = d.pairing(&eta, &alpha);
                    let up = apply_x(&d, i, Sign::Plus, -m - 1, &v);
                    let mut expect = FockVector::zero(2);
                    let sign = d.cocycle(&alpha, &eta);
                    expect.add_term(
                        ColoredPartition::empty(2),
                        eta.add(&alpha),
                        RatPoly::int(sign),
                    );
                    assert_eq!(up, expect, "plus i={i} eta={eta}");
                    let down = apply_x(&d, i, Sign::Minus, m - 1, &v);
                    let mut expect = FockVector::zero(2);
                    let sign = d.cocycle(&alpha.neg(), &eta);
                    expect.add_term(
                        ColoredPartition::empty(2),
                        eta.sub(&alpha),
                        RatPoly::int(sign),
                    );
                    assert_eq!(down, expect, "minus i={i} eta={eta}");
                }
            }
        }
    }

    #[test]
    fn divided_square_of_lowest_mode() {
        // Twice-iterated raising coefficient at n = -2 on the vacuum,
        // divided by [2]!, is -q^{-1} ⊗ e^{2α}.
        let d = a1();
        let v = FockVector::vacuum(1);
        let got = apply_x_divided(&d, 0, Sign::Plus, -2, 2, &v).unwrap();
        let mut expect = FockVector::zero(1);
        expect.add_term(ColoredPartition::empty(1), weight(&[2]), RatPoly::qpow(-1).neg());
        assert_eq!(got, expect);
        assert!(got.is_integral());
    }

    #[test]
    fn raising_and_lowering_preserve_gradings() {
        let d = a2();
        let mut v = FockVector::vacuum(2);
        // Build a deep vector and watch the homogeneity bookkeeping.
        for (i, sign, n) in [
            (0, Sign::Plus, -1),
            (1, Sign::Plus, -2),
            (0, Sign::Minus, 0),
            (1, Sign::Plus, -1),
        ] {
            v = apply_x(&d, i, sign, n, &v);
            assert!(!v.is_zero());
        }
        assert_eq!(v.homogeneous_energy(&d), Some(4));
        assert_eq!(v.homogeneous_weight(), Some(weight(&[0, 2])));
    }

    #[test]
    fn heisenberg_bracket_on_module() {
        // [h_{i,k}, h_{j,-k}] acts as the scalar [k a_ij][k]/k.
        let d = a2();
        let mut sample = FockVector::vacuum(2);
        sample.add_term(
            ColoredPartition::parse("{1:[2,1], 2:[1]}", 2).unwrap(),
            weight(&[1, 0]),
            RatPoly::qpow(2),
        );
        for i in 0..2 {
            for j in 0..2 {
                for k in 1..=3i64 {
                    let ab = apply_h(&d, i, k, &apply_h(&d, j, -k, &sample));
                    let ba = apply_h(&d, j, -k, &apply_h(&d, i, k, &sample));
                    let bracket = ab.sub(&ba);
                    let a = d.cartan_entry(i, j);
                    let scalar = qint(k * a)
                        .mul(&qint(k))
                        .to_rat()
                        .scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
                    assert_eq!(bracket, sample.scale(&scalar), "i={i} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn torus_operators_are_diagonal_scalars() {
        let d = a2();
        let part = ColoredPartition::parse("{1:[1]}", 2).unwrap();
        let v = FockVector::basis_vector(part, weight(&[1, 0]), RatPoly::one());
        // (η, α₁) = 2, energy = 1 + 1 = 2.
        assert_eq!(apply_torus(&d, TorusOp::K(0), &v), v.scale(&RatPoly::qpow(2)));
        assert_eq!(apply_torus(&d, TorusOp::KInv(1), &v), v.scale(&RatPoly::qpow(1)));
        assert_eq!(apply_torus(&d, TorusOp::D, &v), v.scale(&RatPoly::qpow(-2)));
        assert_eq!(apply_torus(&d, TorusOp::DInv, &v), v.scale(&RatPoly::qpow(2)));
        assert_eq!(apply_torus(&d, TorusOp::C, &v), v.scale(&RatPoly::qpow(1)));
        assert_eq!(apply_torus(&d, TorusOp::CInv, &v), v.scale(&RatPoly::qpow(-1)));
        // The vacuum is fixed by D.
        let vac = FockVector::vacuum(2);
        assert_eq!(apply_torus(&d, TorusOp::D, &vac), vac);
        // An energy-3 vector scales by q^{-3}.
        let w = apply_x(&d, 0, Sign::Plus, -3, &vac);
        assert!(!w.is_zero());
        assert_eq!(apply_torus(&d, TorusOp::D, &w), w.scale(&RatPoly::qpow(-3)));
    }

    #[test]
    fn lattice_points_exact_norm_layers() {
        let d = a2();
        let pts = lattice_points_up_to(&d, 8);
        // Norm layers of the hexagonal root lattice: 1, 6, 0, 6, 6 points
        // at norms 0, 2, 4, 6, 8.
        let mut by_norm = std::collections::BTreeMap::new();
        for p in &pts {
            *by_norm.entry(d.norm(p)).or_insert(0u32) += 1;
        }
        assert_eq!(by_norm.get(&0), Some(&1));
        assert_eq!(by_norm.get(&2), Some(&6));
        assert_eq!(by_norm.get(&4), None);
        assert_eq!(by_norm.get(&6), Some(&6));
        assert_eq!(by_norm.get(&8), Some(&6));
        assert_eq!(pts.len(), 19);
        // Sorted and duplicate-free.
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn character_matches_explicit_enumeration() {
        for datum in [a1(), a2()] {
            let counted = character_totals(&datum, 5);
            let labelled = character(&datum, 5);
            for d in 0..=5u32 {
                let listed = enumerate_basis_at_energy(&datum, d);
                assert_eq!(listed.len() as u64, counted[d as usize], "{} d={d}", datum.family());
                assert!(listed.windows(2).all(|w| w[0] < w[1]));
                let mut by_weight: BTreeMap<QElement, u64> = BTreeMap::new();
                for (p, e) in &listed {
                    assert_eq!(term_energy(&datum, p, e), d as i64);
                    *by_weight.entry(e.clone()).or_insert(0) += 1;
                }
                // Per-label multiplicities agree with the enumeration.
                for (eta, n) in &by_weight {
                    let label = WeightLabel { eta: eta.clone(), energy: d };
                    assert_eq!(labelled.get(&label), Some(n));
                }
                let at_d: u64 = labelled
                    .iter()
                    .filter(|(l, _)| l.energy == d)
                    .map(|(_, n)| *n)
                    .sum();
                assert_eq!(at_d, counted[d as usize]);
            }
        }
    }

    #[test]
    fn basis_enumeration_is_cumulative() {
        let d = a1();
        assert_eq!(
            enumerate_basis(&d, 0),
            vec![(ColoredPartition::empty(1), weight(&[0]))]
        );
        // Depth 1 adds three energy-1 labels to the vacuum label.
        assert_eq!(enumerate_basis(&d, 1).len(), 4);
        assert_eq!(enumerate_basis_at_energy(&d, 3).len(), 7);
    }

    #[test]
    fn labelled_multiplicity_examples() {
        let d2 = a2();
        let chi = character(&d2, 2);
        let alpha1 = weight(&[1, 0]);
        assert_eq!(chi.get(&WeightLabel { eta: QElement::zero(2), energy: 0 }), Some(&1));
        assert_eq!(chi.get(&WeightLabel { eta: alpha1.clone(), energy: 1 }), Some(&1));
        assert_eq!(chi.get(&WeightLabel { eta: alpha1, energy: 2 }), Some(&2));
    }

    #[test]
    fn rank_one_graded_dimensions() {
        assert_eq!(character_totals(&a1(), 6), vec![1, 3, 4, 7, 13, 19, 29]);
        let chi = character(&a1(), 2);
        let at2: u64 = chi.iter().filter(|(l, _)| l.energy == 2).map(|(_, n)| *n).sum();
        assert_eq!(at2, 4);
    }

    #[test]
    fn lowering_keeps_the_lattice_on_samples() {
        let d = a2();
        let mut v = FockVector::vacuum(2);
        v = apply_x(&d, 0, Sign::Plus, -2, &v);
        v = apply_x(&d, 1, Sign::Minus, -1, &v);
        assert!(v.is_integral());
        let w = apply_x_divided(&d, 0, Sign::Minus, 0, 2, &v).unwrap();
        assert!(w.is_integral());
    }
}
