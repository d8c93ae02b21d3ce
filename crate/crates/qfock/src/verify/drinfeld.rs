//! Residual checks of the loop-generator relations on the truncated
//! module.
//!
//! Each relation family is instantiated over a finite range of node
//! indices and mode indices and applied to every basis vector of energy
//! at most `depth`; the difference of the two sides must be the zero
//! vector exactly. The central element acts by `q` and the scaling
//! operator by `q^{-energy}`, so central powers appear below as explicit
//! `q`-powers. In the mixed Heisenberg/loop brackets the same-sign pairs
//! (annihilation level against a raising mode, creation level against a
//! lowering mode) carry no central factor, while the two cross pairs
//! carry inverse central powers `q^{-r}` and `q^{+r}`; both follow from
//! the series arguments `z` and `(qz)^{-1}` of the half-vertex factors.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::fock::{apply_h, apply_torus, apply_x, enumerate_basis, FockVector, Sign, TorusOp};
use crate::qarith::{qbinom, qint, RatPoly};
use crate::rootdata::{QElement, RootDatum};
use crate::symcore::{classical_partitions, ColoredPartition};

/// Outcome of scanning one relation family over the whole window.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub relation: String,
    /// Number of (instance, basis vector) pairs examined.
    pub cases: usize,
    pub failures: usize,
    /// The first failing instance, if any.
    pub first_failure: Option<String>,
}

impl RelationReport {
    fn new(relation: &str) -> Self {
        RelationReport { relation: relation.to_string(), cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

/// True when every family passed on every case.
pub fn drinfeld_all_pass(reports: &[RelationReport]) -> bool {
    reports.iter().all(RelationReport::ok)
}

/// Memoizes single-generator images of basis terms; all operators are
/// coefficient-linear, so arbitrary vectors reduce to cached lookups.
struct OpCache<'a> {
    datum: &'a RootDatum,
    x: BTreeMap<(usize, bool, i64, ColoredPartition, QElement), FockVector>,
    h: BTreeMap<(usize, i64, ColoredPartition, QElement), FockVector>,
}

impl<'a> OpCache<'a> {
    fn new(datum: &'a RootDatum) -> Self {
        OpCache { datum, x: BTreeMap::new(), h: BTreeMap::new() }
    }

    fn x(&mut self, i: usize, sign: Sign, n: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero(v.rank());
        for ((part, eta), coeff) in v.terms() {
            let key = (i, sign == Sign::Plus, n, part.clone(), eta.clone());
            let image = self.x.entry(key).or_insert_with(|| {
                let unit = FockVector::basis_vector(part.clone(), eta.clone(), RatPoly::one());
                apply_x(self.datum, i, sign, n, &unit)
            });
            out = out.add(&image.scale(coeff));
        }
        out
    }

    fn h(&mut self, i: usize, k: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero(v.rank());
        for ((part, eta), coeff) in v.terms() {
            let key = (i, k, part.clone(), eta.clone());
            let image = self.h.entry(key).or_insert_with(|| {
                let unit = FockVector::basis_vector(part.clone(), eta.clone(), RatPoly::one());
                apply_h(self.datum, i, k, &unit)
            });
            out = out.add(&image.scale(coeff));
        }
        out
    }

    fn torus(&self, op: TorusOp, v: &FockVector) -> FockVector {
        apply_torus(self.datum, op, v)
    }
}

/// `[r a] / r` as an exact rational Laurent polynomial, `r > 0`.
fn bracket_over_r(a: i64, r: i64) -> RatPoly {
    qint(r * a).to_rat().scale(&BigRational::new(BigInt::one(), BigInt::from(r)))
}

fn q_minus_qinv() -> RatPoly {
    RatPoly::qpow(1).sub(&RatPoly::qpow(-1))
}

/// The grouplike coefficient series applied to `v`: the `u^{|t|}`
/// coefficient of `K_i^{±1} exp(±(q - q^{-1}) Σ_{s≥1} h_{i,±s} u^{±s})`.
/// Zero when the mode index `t` lies on the wrong side of zero.
fn psi(cache: &mut OpCache, i: usize, t: i64, sign: Sign, v: &FockVector) -> FockVector {
    let plus = sign == Sign::Plus;
    if (plus && t < 0) || (!plus && t > 0) {
        return FockVector::zero(v.rank());
    }
    let deg = t.unsigned_abs() as u32;
    let factor = if plus { q_minus_qinv() } else { q_minus_qinv().neg() };
    let mut acc = FockVector::zero(v.rank());
    for mu in classical_partitions(deg).iter() {
        let mut moved = v.clone();
        let mut coeff = RatPoly::one();
        for &m in mu {
            let level = if plus { m as i64 } else { -(m as i64) };
            moved = cache.h(i, level, &moved);
            coeff = coeff.mul(&factor);
        }
        let mut repeats = BigInt::one();
        let mut run = 1u64;
        for w in mu.windows(2) {
            if w[0] == w[1] {
                run += 1;
                repeats *= BigInt::from(run);
            } else {
                run = 1;
            }
        }
        coeff = coeff.scale(&BigRational::new(BigInt::one(), repeats));
        acc = acc.add(&moved.scale(&coeff));
    }
    let group = if plus { TorusOp::K(i) } else { TorusOp::KInv(i) };
    cache.torus(group, &acc)
}

fn check_torus(
    cache: &mut OpCache,
    vectors: &[FockVector],
    rmax: i64,
) -> RelationReport {
    let rank = cache.datum.rank();
    let mut rep = RelationReport::new("torus conjugation");
    for v in vectors {
        for j in 0..rank {
            for sign in [Sign::Plus, Sign::Minus] {
                let sig = if sign == Sign::Plus { 1 } else { -1 };
                for n in -rmax..=rmax {
                    let xv = cache.x(j, sign, n, v);
                    for i in 0..rank {
                        let inner = cache.torus(TorusOp::KInv(i), v);
                        let moved = cache.x(j, sign, n, &inner);
                        let lhs = cache.torus(TorusOp::K(i), &moved);
                        let rhs = xv.scale(&RatPoly::qpow(sig * cache.datum.cartan_entry(i, j)));
                        rep.record(lhs.sub(&rhs).is_zero(), || {
                            format!("K_{i} x({j},{sig:+},{n}) K_{i}^-1")
                        });
                    }
                    let inner = cache.torus(TorusOp::DInv, v);
                    let moved = cache.x(j, sign, n, &inner);
                    let lhs = cache.torus(TorusOp::D, &moved);
                    let rhs = xv.scale(&RatPoly::qpow(n));
                    rep.record(lhs.sub(&rhs).is_zero(), || {
                        format!("D x({j},{sig:+},{n}) D^-1")
                    });
                }
            }
            for k in -rmax..=rmax {
                if k == 0 {
                    continue;
                }
                let hv = cache.h(j, k, v);
                let inner = cache.torus(TorusOp::DInv, v);
                let moved = cache.h(j, k, &inner);
                let lhs = cache.torus(TorusOp::D, &moved);
                let rhs = hv.scale(&RatPoly::qpow(k));
                rep.record(lhs.sub(&rhs).is_zero(), || format!("D h({j},{k}) D^-1"));
                for i in 0..rank {
                    let lhs = cache.torus(TorusOp::K(i), &hv);
                    let scaled = cache.torus(TorusOp::K(i), v);
                    let rhs = cache.h(j, k, &scaled);
                    rep.record(lhs.sub(&rhs).is_zero(), || format!("[K_{i}, h({j},{k})]"));
                }
            }
        }
    }
    rep
}

fn check_heisenberg(cache: &mut OpCache, vectors: &[FockVector], rmax: i64) -> RelationReport {
    let rank = cache.datum.rank();
    let mut rep = RelationReport::new("level pair bracket");
    for v in vectors {
        for i in 0..rank {
            for j in 0..rank {
                for r in 1..=rmax {
                    for s in -rmax..=rmax {
                        if s == 0 {
                            continue;
                        }
                        let first = cache.h(j, s, v);
                        let second = cache.h(i, r, v);
                        let lhs = cache.h(i, r, &first).sub(&cache.h(j, s, &second));
                        let rhs = if s == -r {
                            let scalar = bracket_over_r(cache.datum.cartan_entry(i, j), r)
                                .mul(&qint(r).to_rat());
                            v.scale(&scalar)
                        } else {
                            FockVector::zero(v.rank())
                        };
                        rep.record(lhs.sub(&rhs).is_zero(), || {
                            format!("[h({i},{r}), h({j},{s})]")
                        });
                    }
                }
            }
        }
    }
    rep
}

fn check_h_x(cache: &mut OpCache, vectors: &[FockVector], rmax: i64, central: bool) -> RelationReport {
    let rank = cache.datum.rank();
    let name = if central {
        "level/mode bracket (central twist)"
    } else {
        "level/mode bracket (plain)"
    };
    let mut rep = RelationReport::new(name);
    for v in vectors {
        for i in 0..rank {
            for j in 0..rank {
                let a = cache.datum.cartan_entry(i, j);
                for r in 1..=rmax {
                    for s in -rmax..=rmax {
                        for sign in [Sign::Plus, Sign::Minus] {
                            let plus = sign == Sign::Plus;
                            // Plain: [h_{i,r}, x+_{j,s}] = [ra]/r x+_{j,s+r}
                            //        [h_{i,-r}, x-_{j,s}] = -[ra]/r x-_{j,s-r}
                            // Twist: [h_{i,-r}, x+_{j,s}] = q^{-r} [ra]/r x+_{j,s-r}
                            //        [h_{i,r}, x-_{j,s}] = -q^{+r} [ra]/r x-_{j,s+r}
                            let (level, target, scalar) = match (central, plus) {
                                (false, true) => (r, s + r, bracket_over_r(a, r)),
                                (false, false) => (-r, s - r, bracket_over_r(a, r).neg()),
                                (true, true) => (-r, s - r, bracket_over_r(a, r).mul_qpow(-r)),
                                (true, false) => (r, s + r, bracket_over_r(a, r).mul_qpow(r).neg()),
                            };
                            let first = cache.x(j, sign, s, v);
                            let second = cache.h(i, level, v);
                            let lhs =
                                cache.h(i, level, &first).sub(&cache.x(j, sign, s, &second));
                            let rhs = cache.x(j, sign, target, v).scale(&scalar);
                            rep.record(lhs.sub(&rhs).is_zero(), || {
                                format!("[h({i},{level}), x({j},{:+},{s})]", if plus { 1 } else { -1 })
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}

fn check_psi_bracket(cache: &mut OpCache, vectors: &[FockVector], rmax: i64) -> RelationReport {
    let rank = cache.datum.rank();
    let mut rep = RelationReport::new("raising/lowering bracket");
    for v in vectors {
        for i in 0..rank {
            for j in 0..rank {
                for r in -rmax..=rmax {
                    for s in -rmax..=rmax {
                        let lowered = cache.x(j, Sign::Minus, s, v);
                        let raised = cache.x(i, Sign::Plus, r, v);
                        let lhs = cache
                            .x(i, Sign::Plus, r, &lowered)
                            .sub(&cache.x(j, Sign::Minus, s, &raised))
                            .scale(&q_minus_qinv());
                        let rhs = if i == j {
                            let up = psi(cache, i, r + s, Sign::Plus, v);
                            let down = psi(cache, i, r + s, Sign::Minus, v);
                            up.scale(&RatPoly::qpow(-s)).sub(&down.scale(&RatPoly::qpow(-r)))
                        } else {
                            FockVector::zero(v.rank())
                        };
                        rep.record(lhs.sub(&rhs).is_zero(), || {
                            format!("[x({i},+,{r}), x({j},-,{s})]")
                        });
                    }
                }
            }
        }
    }
    rep
}

fn check_quadratic(cache: &mut OpCache, vectors: &[FockVector], rmax: i64) -> RelationReport {
    let rank = cache.datum.rank();
    let mut rep = RelationReport::new("quadratic exchange");
    for v in vectors {
        for sign in [Sign::Plus, Sign::Minus] {
            let sig: i64 = if sign == Sign::Plus { 1 } else { -1 };
            for i in 0..rank {
                for j in 0..rank {
                    let qa = RatPoly::qpow(sig * cache.datum.cartan_entry(i, j));
                    for r in -rmax..rmax {
                        for s in -rmax..rmax {
                            let js = cache.x(j, sign, s, v);
                            let ir1 = cache.x(i, sign, r + 1, v);
                            let js1 = cache.x(j, sign, s + 1, v);
                            let ir = cache.x(i, sign, r, v);
                            let t1 = cache.x(i, sign, r + 1, &js);
                            let t2 = cache.x(j, sign, s, &ir1);
                            let t3 = cache.x(i, sign, r, &js1);
                            let t4 = cache.x(j, sign, s + 1, &ir);
                            let residual =
                                t1.sub(&t2.scale(&qa)).sub(&t3.scale(&qa)).add(&t4);
                            rep.record(residual.is_zero(), || {
                                format!("exchange x({i},{sig:+},{}) x({j},{sig:+},{s})", r + 1)
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}

fn check_serre(cache: &mut OpCache, vectors: &[FockVector]) -> RelationReport {
    let rank = cache.datum.rank();
    let mut rep = RelationReport::new("serre relations");
    let modes: [i64; 3] = [-1, 0, 1];
    for v in vectors {
        for sign in [Sign::Plus, Sign::Minus] {
            for i in 0..rank {
                for j in 0..rank {
                    if i == j {
                        continue;
                    }
                    let m = (1 - cache.datum.cartan_entry(i, j)) as usize;
                    for tuple in (0..m).map(|_| modes).multi_cartesian_product() {
                        for s in modes {
                            let mut residual = FockVector::zero(v.rank());
                            for perm in (0..m).permutations(m) {
                                for k in 0..=m {
                                    // Word x_i..x_i (k of them) x_j x_i..x_i, applied right to left.
                                    let mut w = v.clone();
                                    for t in (k..m).rev() {
                                        w = cache.x(i, sign, tuple[perm[t]], &w);
                                    }
                                    w = cache.x(j, sign, s, &w);
                                    for t in (0..k).rev() {
                                        w = cache.x(i, sign, tuple[perm[t]], &w);
                                    }
                                    let mut c = qbinom(m as u32, k as u32).to_rat();
                                    if k % 2 == 1 {
                                        c = c.neg();
                                    }
                                    residual = residual.add(&w.scale(&c));
                                }
                            }
                            rep.record(residual.is_zero(), || {
                                format!("serre i={i} j={j} modes={tuple:?} s={s}")
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}

/// Runs every relation family on all basis vectors of energy at most
/// `depth`, instantiating mode and level indices in `[-rmax, rmax]`.
/// The cubic relations are restricted to energies at most
/// `min(depth, 3)` and mode indices in `[-1, 1]` to keep the window
/// affordable; they are the only family with three-fold products.
pub fn verify_drinfeld(datum: &RootDatum, depth: u32, rmax: i64) -> Vec<RelationReport> {
    assert!(rmax >= 1, "mode range must be positive");
    let vectors: Vec<FockVector> = enumerate_basis(datum, depth)
        .into_iter()
        .map(|(part, eta)| FockVector::basis_vector(part, eta, RatPoly::one()))
        .collect();
    let serre_vectors: Vec<FockVector> = enumerate_basis(datum, depth.min(3))
        .into_iter()
        .map(|(part, eta)| FockVector::basis_vector(part, eta, RatPoly::one()))
        .collect();
    let mut cache = OpCache::new(datum);
    vec![
        check_torus(&mut cache, &vectors, rmax),
        check_heisenberg(&mut cache, &vectors, rmax),
        check_h_x(&mut cache, &vectors, rmax, false),
        check_h_x(&mut cache, &vectors, rmax, true),
        check_psi_bracket(&mut cache, &vectors, rmax),
        check_quadratic(&mut cache, &vectors, rmax),
        check_serre(&mut cache, &serre_vectors),
    ]
}
