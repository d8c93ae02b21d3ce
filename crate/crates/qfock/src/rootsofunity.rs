//! Specialization of the module at a root of unity, with exact linear
//! algebra over the cyclotomic field.
//!
//! Coordinates of lattice vectors are specialized entrywise; operators
//! become matrices over `Q(ζ)` on the finite energy slices. The module
//! provides the dual annihilators (combinations of primitive annihilators
//! whose contraction with the creation generators is exactly the identity
//! pairing), joint kernels of the specialized annihilators, a generic-q
//! rank control with no specialization, and a finite-depth search for
//! vectors killed by every specialized operator that stays inside the
//! energy window.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::fock::{apply_x, enumerate_basis_at_energy, FockVector, Sign};
use crate::qarith::{specialize, CyclotomicNum, IntPoly, RatPoly};
use crate::rootdata::{QElement, RootDatum};
use crate::symcore::{
    act_annihilate, colored_partitions, pair_ht, Basis, ColoredPartition, SymVector,
};

pub type CycMatrix = Vec<Vec<CyclotomicNum>>;

/// The contraction matrix of some level is singular at the given root of
/// unity (the root order shares a factor with the Coxeter number), so no
/// dual annihilators exist there. Carries the vanished determinant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error(
    "coprimality violated: level-{k} contraction matrix is singular at the \
     order-{l} root of unity (det = {det})"
)]
pub struct SingularContraction {
    pub k: u32,
    pub l: u32,
    pub det: CyclotomicNum,
}

/// A combination of level-`k` primitive annihilators whose bracket with the
/// degree-`k` creation generator of node `j` is exactly `δ_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualHeisenberg {
    pub i: usize,
    pub k: u32,
    /// Coefficient of the node-`j` primitive annihilator, over `j`.
    pub coeffs: Vec<CyclotomicNum>,
}

/// A module vector with coordinates in `Q(ζ)`, stored over the same
/// canonical basis as [`FockVector`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecializedVector {
    rank: usize,
    l: u32,
    terms: BTreeMap<(ColoredPartition, QElement), CyclotomicNum>,
}

impl SpecializedVector {
    pub fn zero(rank: usize, l: u32) -> Self {
        SpecializedVector { rank, l, terms: BTreeMap::new() }
    }

    pub fn basis_vector(part: ColoredPartition, eta: QElement, coeff: CyclotomicNum) -> Self {
        let mut v = Self::zero(part.rank(), coeff.order());
        v.add_term(part, eta, coeff);
        v
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ColoredPartition, QElement), &CyclotomicNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, part: &ColoredPartition, eta: &QElement) -> CyclotomicNum {
        self.terms
            .get(&(part.clone(), eta.clone()))
            .cloned()
            .unwrap_or_else(|| CyclotomicNum::zero(self.l))
    }

    pub fn add_term(&mut self, part: ColoredPartition, eta: QElement, coeff: CyclotomicNum) {
        assert_eq!(part.rank(), self.rank, "rank mismatch");
        assert_eq!(coeff.order(), self.l, "root order mismatch");
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
        assert_eq!(self.l, other.l, "root order mismatch");
        let mut out = self.clone();
        for ((p, e), c) in other.terms() {
            out.add_term(p.clone(), e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.l, other.l, "root order mismatch");
        let mut out = self.clone();
        for ((p, e), c) in other.terms() {
            out.add_term(p.clone(), e.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &CyclotomicNum) -> Self {
        let mut out = Self::zero(self.rank, self.l);
        if c.is_zero() {
            return out;
        }
        for ((p, e), k) in self.terms() {
            out.add_term(p.clone(), e.clone(), k.mul(c));
        }
        out
    }
}

impl fmt::Display for SpecializedVector {
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

/// Specializes a lattice vector at the order-`l` root of unity. The input
/// must lie in the integral span; coordinates outside `Z[q, q^-1]` have no
/// canonical meaning at the specialized level.
pub fn specialize_vector(v: &FockVector, l: u32) -> SpecializedVector {
    assert!(v.is_integral(), "only lattice vectors specialize");
    let mut out = SpecializedVector::zero(v.rank(), l);
    for ((p, e), c) in v.terms() {
        out.add_term(p.clone(), e.clone(), specialize(c, l));
    }
    out
}

// ---------------------------------------------------------------------
// Exact linear algebra over Q(ζ).
// ---------------------------------------------------------------------

/// Reduced row echelon form in place; returns the pivot columns.
fn cyc_rref(mat: &mut CycMatrix, ncols: usize, l: u32) -> Vec<usize> {
    let nrows = mat.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(src) = (row..nrows).find(|r| !mat[*r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, src);
        let inv = mat[row][col].inv().expect("pivot is nonzero");
        for c in col..ncols {
            mat[row][c] = mat[row][c].mul(&inv);
        }
        for r in 0..nrows {
            if r == row || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in col..ncols {
                let delta = factor.mul(&mat[row][c]);
                mat[r][c] = mat[r][c].sub(&delta);
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let _ = l;
    pivots
}

pub fn cyc_rank(mat: &CycMatrix, ncols: usize, l: u32) -> usize {
    let mut m = mat.clone();
    cyc_rref(&mut m, ncols, l).len()
}

/// Basis of the right kernel, one vector per non-pivot column, in the
/// canonical echelon normalization.
pub fn cyc_kernel(mat: &CycMatrix, ncols: usize, l: u32) -> Vec<Vec<CyclotomicNum>> {
    let mut m = mat.clone();
    let pivots = cyc_rref(&mut m, ncols, l);
    let pivot_set: BTreeMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, c)| (*c, r)).collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains_key(&free) {
            continue;
        }
        let mut v = vec![CyclotomicNum::zero(l); ncols];
        v[free] = CyclotomicNum::one(l);
        for (col, row) in &pivot_set {
            v[*col] = m[*row][free].neg();
        }
        out.push(v);
    }
    out
}

/// Inverse of a square matrix, or `None` if singular.
pub fn cyc_inverse(mat: &CycMatrix, l: u32) -> Option<CycMatrix> {
    let n = mat.len();
    let mut aug: CycMatrix = mat
        .iter()
        .enumerate()
        .map(|(r, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut a = row.clone();
            for c in 0..n {
                a.push(if c == r { CyclotomicNum::one(l) } else { CyclotomicNum::zero(l) });
            }
            a
        })
        .collect();
    let pivots = cyc_rref(&mut aug, 2 * n, l);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn cyc_det(mat: &CycMatrix, l: u32) -> CyclotomicNum {
    let n = mat.len();
    let mut m = mat.clone();
    let mut det = CyclotomicNum::one(l);
    for col in 0..n {
        let Some(src) = (col..n).find(|r| !m[*r][col].is_zero()) else {
            return CyclotomicNum::zero(l);
        };
        if src != col {
            m.swap(col, src);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].inv().expect("pivot is nonzero");
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            for c in col..n {
                let delta = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
    }
    det
}

/// Rank of a matrix over `Q` by Gaussian elimination.
fn rat_rank(mat: &mut Vec<Vec<BigRational>>, ncols: usize) -> usize {
    let nrows = mat.len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(src) = (rank..nrows).find(|r| !mat[*r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, src);
        let pivot = mat[rank][col].clone();
        for r in (rank + 1)..nrows {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pivot;
            for c in col..ncols {
                let delta = &factor * &mat[rank][c];
                mat[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Rank of a matrix of Laurent polynomials by fraction-free elimination;
/// every division is exact by the Sylvester determinant identity.
pub fn bareiss_rank(mat: &[Vec<RatPoly>]) -> usize {
    let nrows = mat.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = mat[0].len();
    let mut m: Vec<Vec<RatPoly>> = mat.to_vec();
    let mut prev = RatPoly::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(src) = (rank..nrows).find(|r| !m[*r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, src);
        let pivot = m[rank][col].clone();
        for r in (rank + 1)..nrows {
            for c in (col + 1)..ncols {
                let t = m[r][c].mul(&pivot).sub(&m[r][col].mul(&m[rank][c]));
                m[r][c] = t.exact_div(&prev).expect("fraction-free division is exact");
            }
            m[r][col] = RatPoly::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------
// Contraction duals.
// ---------------------------------------------------------------------

/// The level-`k` contraction matrix: entry `(i, j)` is the bracket of the
/// level-`k` annihilator of node `i` with the degree-`k` creator of node
/// `j`, the Laurent polynomial `k [k a_ij] / [k]`.
pub fn contraction_matrix(datum: &RootDatum, k: u32) -> Vec<Vec<IntPoly>> {
    let n = datum.rank();
    (0..n)
        .map(|i| (0..n).map(|j| pair_ht(datum, i, j, k)).collect())
        .collect()
}

/// The level-`k` contraction matrix specialized at the order-`l` root of
/// unity.
pub fn contraction_matrix_at(datum: &RootDatum, k: u32, l: u32) -> CycMatrix {
    contraction_matrix(datum, k)
        .iter()
        .map(|row| row.iter().map(|p| specialize(p, l)).collect())
        .collect()
}

/// Row `i` of the result gives the coefficients expressing the dual
/// annihilator of node `i` at level `k` in the primitive annihilators,
/// after specializing at the order-`l` root of unity: the inverse of the
/// specialized contraction matrix. Fails exactly when that matrix is
/// singular; invertibility is decided on the computed matrix, never on a
/// closed-form determinant.
pub fn dual_heisenberg_matrix(
    datum: &RootDatum,
    k: u32,
    l: u32,
) -> Result<CycMatrix, SingularContraction> {
    let spec = contraction_matrix_at(datum, k, l);
    cyc_inverse(&spec, l).ok_or_else(|| SingularContraction { k, l, det: cyc_det(&spec, l) })
}

/// The dual annihilator of node `i` at level `k` over the order-`l` root of
/// unity.
pub fn dual_heisenberg(
    datum: &RootDatum,
    i: usize,
    k: u32,
    l: u32,
) -> Result<DualHeisenberg, SingularContraction> {
    let inv = dual_heisenberg_matrix(datum, k, l)?;
    Ok(DualHeisenberg { i, k, coeffs: inv[i].clone() })
}

// ---------------------------------------------------------------------
// Specialized operator action and kernels.
// ---------------------------------------------------------------------

/// Applies a generic lattice operator to a specialized vector, linearly
/// over the specialized coordinates. The operator's matrix on the lattice
/// basis must be integral; this is asserted.
pub fn apply_specialized(
    v: &SpecializedVector,
    op: &dyn Fn(&FockVector) -> FockVector,
) -> SpecializedVector {
    let l = v.order();
    let mut out = SpecializedVector::zero(v.rank(), l);
    for ((p, e), c) in v.terms() {
        let image = op(&FockVector::basis_vector(p.clone(), e.clone(), RatPoly::one()));
        for ((p2, e2), coeff) in image.terms() {
            assert!(coeff.is_integral(), "lattice operator must have integral matrix");
            out.add_term(p2.clone(), e2.clone(), specialize(coeff, l).mul(c));
        }
    }
    out
}

/// The specialized primitive annihilator of node `i` at level `k` (acts on
/// the partition side only).
pub fn apply_annihilator_spec(
    datum: &RootDatum,
    i: usize,
    k: u32,
    v: &SpecializedVector,
) -> SpecializedVector {
    apply_specialized(v, &|w| {
        let mut out = FockVector::zero(w.rank());
        for ((p, e), c) in w.terms() {
            let moved = act_annihilate(
                datum,
                i,
                k,
                &SymVector::from_monomial(Basis::Complete, p.clone(), c.clone()).to_power_sums(),
            );
            for (p2, c2) in moved.to_h_basis().terms() {
                out.add_term(p2.clone(), e.clone(), c2.clone());
            }
        }
        out
    })
}

/// The specialized creation generator of node `i` in degree `k`.
pub fn apply_creator_spec(
    datum: &RootDatum,
    i: usize,
    k: u32,
    v: &SpecializedVector,
) -> SpecializedVector {
    let _ = datum;
    apply_specialized(v, &|w| {
        let mut out = FockVector::zero(w.rank());
        for ((p, e), c) in w.terms() {
            let created = crate::symcore::act_create(
                i,
                k,
                &SymVector::from_monomial(Basis::Complete, p.clone(), c.clone()).to_power_sums(),
            );
            for (p2, c2) in created.to_h_basis().terms() {
                out.add_term(p2.clone(), e.clone(), c2.clone());
            }
        }
        out
    })
}

/// Applies a dual annihilator: the stored combination of same-level
/// primitive annihilators.
pub fn apply_dual_annihilator(
    datum: &RootDatum,
    dual: &DualHeisenberg,
    v: &SpecializedVector,
) -> SpecializedVector {
    let mut out = SpecializedVector::zero(v.rank(), v.order());
    for (j, b) in dual.coeffs.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        out = out.add(&apply_annihilator_spec(datum, j, dual.k, v).scale(b));
    }
    out
}

/// Matrix of the primitive annihilator of node `i` at level `k` on the
/// degree-`d` slice of the symmetric algebra, in the stored basis:
/// columns over partitions of `d`, rows over partitions of `d - k`.
/// Entries are integral Laurent polynomials; integrality is asserted.
pub fn annihilator_matrix(datum: &RootDatum, i: usize, k: u32, d: u32) -> Vec<Vec<RatPoly>> {
    let rank = datum.rank();
    assert!(k >= 1 && k <= d, "level must land in a nonnegative degree");
    let cols = colored_partitions(rank, d);
    let rows = colored_partitions(rank, d - k);
    let row_index: BTreeMap<&ColoredPartition, usize> =
        rows.iter().enumerate().map(|(t, p)| (p, t)).collect();
    let mut mat = vec![vec![RatPoly::zero(); cols.len()]; rows.len()];
    for (c, part) in cols.iter().enumerate() {
        let image = act_annihilate(
            datum,
            i,
            k,
            &SymVector::from_monomial(Basis::Complete, part.clone(), RatPoly::one())
                .to_power_sums(),
        )
        .to_h_basis();
        for (p, coeff) in image.terms() {
            assert!(coeff.is_integral(), "annihilator matrix must be integral");
            mat[row_index[p]][c] = coeff.clone();
        }
    }
    mat
}

/// Joint kernel over `Q(ζ)` of all specialized primitive annihilators on
/// the degree-`d` slice of the symmetric algebra, as coordinate vectors
/// over the canonical partition list. Empty output means the specialized
/// Heisenberg action has no invariants in this degree.
pub fn heisenberg_kernel_at_degree(
    datum: &RootDatum,
    l: u32,
    d: u32,
) -> Vec<Vec<CyclotomicNum>> {
    assert!(d >= 1, "degree zero is always invariant");
    let ncols = colored_partitions(datum.rank(), d).len();
    let mut stacked: CycMatrix = Vec::new();
    for k in 1..=d {
        for i in 0..datum.rank() {
            for row in annihilator_matrix(datum, i, k, d) {
                stacked.push(row.iter().map(|p| specialize(p, l)).collect());
            }
        }
    }
    cyc_kernel(&stacked, ncols, l)
}

/// Joint kernel dimensions of the specialized annihilators on the degree
/// slices `1..=depth`. All zeros is the finite-depth witness that the
/// specialized symmetric algebra has no invariant vectors below the top.
pub fn heisenberg_kernel(datum: &RootDatum, l: u32, depth: u32) -> Vec<usize> {
    (1..=depth).map(|d| heisenberg_kernel_at_degree(datum, l, d).len()).collect()
}

/// Control without specialization: the same stacked annihilators have zero
/// joint kernel over `Q(q)`. Full column rank at a rational sample point
/// certifies this; if every sample point degenerates, exact fraction-free
/// elimination decides.
pub fn generic_heisenberg_kernel_is_zero(datum: &RootDatum, d: u32) -> bool {
    assert!(d >= 1);
    let ncols = colored_partitions(datum.rank(), d).len();
    let mut stacked: Vec<Vec<RatPoly>> = Vec::new();
    for k in 1..=d {
        for i in 0..datum.rank() {
            stacked.extend(annihilator_matrix(datum, i, k, d));
        }
    }
    for point in [2i64, 3, 5] {
        let q0 = BigRational::from_integer(point.into());
        let mut at_point: Vec<Vec<BigRational>> = stacked
            .iter()
            .map(|row| row.iter().map(|p| p.eval_rational(&q0)).collect())
            .collect();
        if rat_rank(&mut at_point, ncols) == ncols {
            return true;
        }
    }
    bareiss_rank(&stacked) == ncols
}

/// A candidate singular vector: a nonzero vector of one weight-and-energy
/// slice killed by every specialized annihilator of its slice and by every
/// raising coefficient whose image is representable inside the window.
#[derive(Clone, Debug)]
pub struct SingularCandidate {
    pub eta: QElement,
    pub energy: u32,
    pub vector: SpecializedVector,
}

/// Finite-depth necessary-condition search for singular vectors of the
/// specialized module. Scans every weight-and-energy slice of the window
/// except the top vector `1 ⊗ e^0` (the trivial candidate, always present
/// and excluded); on each slice of partition degree `t` it stacks
///   - the specialized primitive annihilators of levels `1..=t` (rescaled
///     combinations of them realize the full specialized torus action, so
///     nothing is lost by using the primitive normalization), and
///   - the specialized raising coefficients whose image lands in a slice of
///     partition degree within `[0, depth]` (images of lower modes leave
///     the computed window and yield no constraint at this depth),
/// then reports every nonzero joint-kernel vector. An empty result is the
/// finite-depth witness that no proper submodule has its extremal vector
/// inside the window.
pub fn singular_vector_search(datum: &RootDatum, l: u32, depth: u32) -> Vec<SingularCandidate> {
    let rank = datum.rank();
    let mut out = Vec::new();
    for eta in crate::fock::lattice_points_up_to(datum, 2 * depth as i64) {
        let w = datum.norm(&eta) / 2;
        for total in 0..=(depth as i64 - w) {
            let energy = (total + w) as u32;
            if energy == 0 {
                // The top vector; reported by no slice, excluded by fiat.
                continue;
            }
            let total = total as u32;
            let cols = colored_partitions(rank, total);
            let mut stacked: CycMatrix = Vec::new();
            // Specialized annihilators; levels above the slice degree act
            // as zero and add no constraint.
            for k in 1..=total {
                for i in 0..rank {
                    for row in annihilator_matrix(datum, i, k, total) {
                        stacked.push(row.iter().map(|p| specialize(p, l)).collect());
                    }
                }
            }
            // Raising coefficients with representable images. The image of
            // mode n on this slice is homogeneous of partition degree
            // total - n - (η, α_i) - 1.
            for i in 0..rank {
                let alpha = datum.simple(i);
                let up_eta = eta.add(&alpha);
                let m = datum.pairing(&eta, &alpha);
                for target_total in 0..=depth {
                    let n = total as i64 - m - 1 - target_total as i64;
                    let target = colored_partitions(rank, target_total);
                    let index: BTreeMap<&ColoredPartition, usize> =
                        target.iter().enumerate().map(|(t, p)| (p, t)).collect();
                    let mut mat =
                        vec![vec![CyclotomicNum::zero(l); cols.len()]; target.len()];
                    for (c, part) in cols.iter().enumerate() {
                        let image = apply_x(
                            datum,
                            i,
                            Sign::Plus,
                            n,
                            &FockVector::basis_vector(part.clone(), eta.clone(), RatPoly::one()),
                        );
                        for ((p, e), coeff) in image.terms() {
                            debug_assert_eq!(e, &up_eta);
                            debug_assert_eq!(p.total(), target_total);
                            assert!(coeff.is_integral(), "raising must preserve the lattice");
                            mat[index[p]][c] = specialize(coeff, l);
                        }
                    }
                    stacked.extend(mat);
                }
            }
            let kernel = cyc_kernel(&stacked, cols.len(), l);
            for coords in kernel {
                let mut vector = SpecializedVector::zero(rank, l);
                for (part, c) in cols.iter().zip(coords) {
                    vector.add_term(part.clone(), eta.clone(), c);
                }
                out.push(SingularCandidate { eta: eta.clone(), energy, vector });
            }
        }
    }
    out
}

/// Graded dimensions of the specialized module: the lattice basis maps to
/// a `Q(ζ)`-basis, so the counts agree with the generic character.
pub fn specialized_dimensions(datum: &RootDatum, max: u32) -> Vec<usize> {
    (0..=max).map(|d| enumerate_basis_at_energy(datum, d).len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    fn a1() -> RootDatum {
        RootDatum::new(Family::A, 1).unwrap()
    }

    fn a2() -> RootDatum {
        RootDatum::new(Family::A, 2).unwrap()
    }

    fn cyc(l: u32, n: i64) -> CyclotomicNum {
        CyclotomicNum::from_rational(l, BigRational::from_integer(n.into()))
    }

    #[test]
    fn linear_algebra_over_cyclotomic_field() {
        let l = 5;
        let z = CyclotomicNum::zeta_pow(l, 1);
        // [[ζ, 1], [1, ζ^-1]] has determinant 0; kernel is 1-dimensional.
        let mat = vec![
            vec![z.clone(), cyc(l, 1)],
            vec![cyc(l, 1), CyclotomicNum::zeta_pow(l, -1)],
        ];
        assert!(cyc_det(&mat, l).is_zero());
        assert_eq!(cyc_rank(&mat, 2, l), 1);
        let ker = cyc_kernel(&mat, 2, l);
        assert_eq!(ker.len(), 1);
        for row in &mat {
            let dot = row[0].mul(&ker[0][0]).add(&row[1].mul(&ker[0][1]));
            assert!(dot.is_zero());
        }
        assert!(cyc_inverse(&mat, l).is_none());
        // A perturbed matrix is invertible; inverse times matrix is 1.
        let mat2 = vec![
            vec![z.clone(), cyc(l, 1)],
            vec![cyc(l, 1), CyclotomicNum::zeta_pow(l, -1).add(&cyc(l, 1))],
        ];
        let inv = cyc_inverse(&mat2, l).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                let mut dot = CyclotomicNum::zero(l);
                for t in 0..2 {
                    dot = dot.add(&inv[r][t].mul(&mat2[t][c]));
                }
                assert_eq!(dot, if r == c { cyc(l, 1) } else { cyc(l, 0) });
            }
        }
        // det = ζ(ζ^-1 + 1) - 1 = ζ.
        assert_eq!(cyc_det(&mat2, l), z);
    }

    #[test]
    fn bareiss_rank_matches_field_rank() {
        let rows = vec![
            vec![RatPoly::qpow(1), RatPoly::one(), RatPoly::zero()],
            vec![RatPoly::qpow(2), RatPoly::qpow(1), RatPoly::zero()],
            vec![RatPoly::one(), RatPoly::qpow(-1), RatPoly::qpow(3)],
        ];
        // Row 2 is q times row 1.
        assert_eq!(bareiss_rank(&rows), 2);
        assert_eq!(bareiss_rank(&rows[..2].to_vec()), 1);
    }

    #[test]
    fn dual_annihilators_exist_and_contract_to_identity() {
        // Frozen rank-one value: at l = 3 the level-1 contraction is
        // ζ + ζ^-1 = -1, so the dual coefficient is -1.
        let dual = dual_heisenberg(&a1(), 0, 1, 3).unwrap();
        assert_eq!(dual.coeffs, vec![cyc(3, -1)]);
        assert_eq!((dual.i, dual.k), (0, 1));
        // Matrix identity B · C|_ζ = I for a rank-two case.
        let d = a2();
        for (k, l) in [(1u32, 5u32), (2, 5), (1, 2), (2, 2)] {
            let c = contraction_matrix_at(&d, k, l);
            for r in 0..2 {
                let b = dual_heisenberg(&d, r, k, l).unwrap();
                for s in 0..2 {
                    let mut dot = CyclotomicNum::zero(l);
                    for t in 0..2 {
                        dot = dot.add(&b.coeffs[t].mul(&c[t][s]));
                    }
                    assert_eq!(dot, cyc(l, (r == s) as i64), "k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn dual_annihilators_contract_on_the_module() {
        // [dual_i, creator_j] acts as δ_ij on specialized vectors.
        let d = a2();
        let l = 5;
        let mut sample = SpecializedVector::basis_vector(
            ColoredPartition::parse("{1:[1]}", 2).unwrap(),
            QElement::zero(2),
            CyclotomicNum::zeta_pow(l, 2),
        );
        sample.add_term(
            ColoredPartition::parse("{2:[2]}", 2).unwrap(),
            QElement::zero(2),
            cyc(l, 3),
        );
        for k in 1..=2u32 {
            for i in 0..2 {
                let dual = dual_heisenberg(&d, i, k, l).unwrap();
                for j in 0..2 {
                    let created = apply_creator_spec(&d, j, k, &sample);
                    let ab = apply_dual_annihilator(&d, &dual, &created);
                    let ba =
                        apply_creator_spec(&d, j, k, &apply_dual_annihilator(&d, &dual, &sample));
                    let bracket = ab.sub(&ba);
                    let expect = if i == j {
                        sample.clone()
                    } else {
                        SpecializedVector::zero(2, l)
                    };
                    assert_eq!(bracket, expect, "i={i} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn contraction_degenerates_at_the_bad_order() {
        // Rank two, order 3: the level-1 contraction matrix specializes to
        // all entries -1 and is exactly singular.
        let d = a2();
        let err = dual_heisenberg(&d, 0, 1, 3).unwrap_err();
        assert_eq!(err, SingularContraction { k: 1, l: 3, det: cyc(3, 0) });
        assert!(err.to_string().contains("coprimality violated"));
        let spec = contraction_matrix_at(&d, 1, 3);
        assert!(cyc_det(&spec, 3).is_zero());
        for row in &spec {
            for entry in row {
                assert_eq!(*entry, cyc(3, -1));
            }
        }
    }

    #[test]
    fn specialized_kernels_vanish_at_good_orders() {
        assert_eq!(heisenberg_kernel(&a2(), 2, 3), vec![0, 0, 0]);
        assert_eq!(heisenberg_kernel(&a1(), 3, 3), vec![0, 0, 0]);
    }

    #[test]
    fn specialized_kernel_appears_at_the_bad_order() {
        // Rank two at order 3: the difference of the two degree-1 creation
        // generators is killed by both level-1 annihilators.
        let d = a2();
        let kernel = heisenberg_kernel_at_degree(&d, 3, 1);
        assert_eq!(kernel.len(), 1);
        let cols = colored_partitions(2, 1);
        assert_eq!(cols.len(), 2);
        // Kernel vector is proportional to (1, -1).
        let ratio = kernel[0][1].mul(&kernel[0][0].inv().unwrap());
        assert_eq!(ratio, cyc(3, -1));
        assert_eq!(heisenberg_kernel(&d, 3, 2)[0], 1);
    }

    #[test]
    fn generic_kernels_vanish() {
        for d in 1..=3u32 {
            assert!(generic_heisenberg_kernel_is_zero(&a2(), d));
            assert!(generic_heisenberg_kernel_is_zero(&a1(), d));
        }
    }

    #[test]
    fn specialize_vector_respects_the_lattice() {
        let d = a1();
        let v = crate::fock::apply_x(&d, 0, Sign::Plus, -2, &FockVector::vacuum(1));
        let s = specialize_vector(&v, 4);
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s.order(), 4);
    }

    #[test]
    fn specialization_of_scaled_vectors() {
        // [2] at the fourth root i + i^-1 = 0; [3] at -1 is 3.
        let e1 = FockVector::basis_vector(
            ColoredPartition::empty(1),
            QElement::new(vec![1]),
            crate::qarith::qint(2).to_rat(),
        );
        assert!(specialize_vector(&e1, 4).is_zero());
        let v = FockVector::basis_vector(
            ColoredPartition::parse("{1:[2]}", 1).unwrap(),
            QElement::new(vec![-1]),
            crate::qarith::qint(3).to_rat(),
        );
        let s = specialize_vector(&v, 2);
        assert_eq!(s.num_terms(), 1);
        let (_, c) = s.terms().next().unwrap();
        assert_eq!(*c, cyc(2, 3));
    }

    #[test]
    fn singular_search_empty_at_good_orders_shallow() {
        assert!(singular_vector_search(&a2(), 2, 2).is_empty());
        assert!(singular_vector_search(&a1(), 3, 2).is_empty());
        // Depth 0 windows contain only the excluded top vector.
        assert!(singular_vector_search(&a2(), 2, 0).is_empty());
    }

    #[test]
    fn specialized_dimensions_match_generic_character() {
        let d = a2();
        let dims = specialized_dimensions(&d, 4);
        let chi = crate::fock::character_totals(&d, 4);
        for (a, b) in dims.iter().zip(chi.iter()) {
            assert_eq!(*a as u64, *b);
        }
    }
}
