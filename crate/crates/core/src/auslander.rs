//! The Auslander category of a filtered A∞-algebra.
//!
//! For `F^0 = R ⊇ ⋯ ⊇ F^n = 0` the objects are `0, …, n−1` and
//! `hom(j → i) = F^{max(j−i,0)} / F^{n−i}`. Operations are induced from `R`
//! on chosen coset representatives:
//! `m_p^Γ(ā_1, …, ā_p) = class of m_p(a_1, …, a_p)`.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::ainf::{terms_from_dense, AInfCategory, AInfError, BasisElement, Terms};
use crate::filtration::{check_filtration, describe, eval_dense, Filtration, FiltrationError};
use crate::functor::AInfFunctor;
use crate::linalg::{homogeneous_degree, unit_vector, LinalgError, QuotientPresentation, Vector};
use crate::par;
use crate::report::{Check, ValidationReport, Witness};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AuslanderError {
    #[error("filtration check failed: {0}")]
    InvalidFiltration(String),
    #[error("the filtration has no objects (n = 0)")]
    Empty,
    #[error("m_{arity}({tuple}) leaves F^{level}: {value}")]
    NotWellDefined {
        arity: usize,
        tuple: String,
        level: usize,
        value: String,
    },
    #[error("embedding of the algebra at object 0 does not intertwine the operations: {0}")]
    EmbeddingMismatch(String),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    AInf(#[from] AInfError),
}

/// `max(i_{p+1} − i_1, 0) ≤ Σ_u max(i_{u+1} − i_u, 0)`: the filtration index
/// of a product of hom-spaces dominates that of the target hom-space.
pub fn product_index_inequality(idx: &[usize]) -> bool {
    let p = idx.len() - 1;
    let lhs = (idx[p] as i64 - idx[0] as i64).max(0);
    let rhs: i64 = idx.windows(2).map(|w| (w[1] as i64 - w[0] as i64).max(0)).sum();
    lhs <= rhs
}

/// For every slot `k`, replacing the `k`-th argument by an element of its
/// denominator `F^{n−i_k}` lands in the target denominator `F^{n−i_1}`:
/// `Σ_{u≠k} max(i_{u+1}−i_u, 0) + (n−i_k) ≥ Σ_{u<k−1} max(i_{u+1}−i_u, 0) + (n−i_{k−1}) ≥ n − i_1`.
pub fn quotient_index_inequality(idx: &[usize], n: usize) -> bool {
    let p = idx.len() - 1;
    let step = |u: usize| (idx[u + 1] as i64 - idx[u] as i64).max(0);
    let n = n as i64;
    let floor = n - idx[0] as i64;
    for k in 0..p {
        let lhs: i64 = (0..p).filter(|&u| u != k).map(step).sum::<i64>() + (n - idx[k] as i64);
        let mid = if k == 0 {
            floor
        } else {
            (0..k - 1).map(step).sum::<i64>() + (n - idx[k - 1] as i64)
        };
        if lhs < mid || mid < floor {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct AuslanderCategory {
    base: AInfCategory,
    filtration: Filtration,
    gamma: AInfCategory,
    /// `homs[j][i]` presents `hom(j → i)`.
    homs: Vec<Vec<QuotientPresentation>>,
    /// First basis index of `hom(j → i)` in `gamma`.
    offsets: Vec<Vec<usize>>,
}

impl AuslanderCategory {
    pub fn build(r: &AInfCategory, f: &Filtration) -> Result<Self, AuslanderError> {
        let report = check_filtration(r, f)?;
        if !report.passed() {
            return Err(AuslanderError::InvalidFiltration(report.summary()));
        }
        let n = f.n();
        if n == 0 {
            return Err(AuslanderError::Empty);
        }
        let field = r.field();
        let dim = r.dim();
        let degrees = r.degrees();
        let unit = unit_vector(field, dim, r.unit(0));
        let mut homs = vec![Vec::with_capacity(n); n];
        for (j, row) in homs.iter_mut().enumerate() {
            for i in 0..n {
                let num = f.level(j.saturating_sub(i));
                let den = f.level(n - i);
                let preferred: Vec<Vector> = if j <= i { vec![unit.clone()] } else { Vec::new() };
                row.push(QuotientPresentation::with_preferred(num, den, &preferred)?);
            }
        }
        // basis ordered by target, then source
        let mut offsets = vec![vec![0; n]; n];
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                offsets[j][i] = basis.len();
                let mut fresh = 0;
                for v in homs[j][i].representatives() {
                    let t = terms_from_dense(v);
                    let name = if t.len() == 1 && t[0].1.is_one() {
                        r.label(t[0].0).to_string()
                    } else {
                        fresh += 1;
                        format!("v{}", fresh - 1)
                    };
                    basis.push(BasisElement {
                        label: format!("{name}[{j},{i}]"),
                        source: j,
                        target: i,
                        degree: homogeneous_degree(v, &degrees).unwrap_or(0),
                    });
                }
            }
        }
        let units: Vec<usize> = (0..n).map(|i| offsets[i][i]).collect();
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let skeleton = AInfCategory::from_parts(field, objects.clone(), basis.clone(), units.clone(), BTreeMap::new())?;
        let mut a = AuslanderCategory {
            base: r.clone(),
            filtration: f.clone(),
            gamma: skeleton,
            homs,
            offsets,
        };
        let mut ops = BTreeMap::new();
        for &p in r.ops().keys() {
            let per_first = par::map_range(a.gamma.dim(), |first| {
                let mut entries = Vec::new();
                for tuple in a.gamma.composable_tuples_from(first, p) {
                    let lifts: Vec<Vector> = tuple.iter().map(|&g| a.lift(g)).collect();
                    match a.induced(&tuple, &lifts) {
                        Ok(t) if !t.is_empty() => entries.push((tuple, t)),
                        Ok(_) => {}
                        Err(e) => return Err(e),
                    }
                }
                Ok(entries)
            });
            let mut table = BTreeMap::new();
            for res in per_first {
                for (k, v) in res? {
                    table.insert(k, v);
                }
            }
            ops.insert(p, table);
        }
        a.gamma = AInfCategory::from_parts(field, objects, basis, units, ops)?;
        Ok(a)
    }

    pub fn base(&self) -> &AInfCategory {
        &self.base
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn gamma(&self) -> &AInfCategory {
        &self.gamma
    }

    pub fn n(&self) -> usize {
        self.filtration.n()
    }

    /// Presentation of `hom(j → i) = F^{max(j−i,0)} / F^{n−i}`.
    pub fn hom(&self, j: usize, i: usize) -> &QuotientPresentation {
        &self.homs[j][i]
    }

    /// `dims[i][j] = dim hom(j → i)`, rows indexed by target as in the
    /// matrix picture.
    pub fn hom_dims(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.homs[j][i].dim()).collect()).collect()
    }

    /// Basis indices of `gamma` spanning `hom(j → i)`.
    pub fn hom_indices(&self, j: usize, i: usize) -> std::ops::Range<usize> {
        let start = self.offsets[j][i];
        start..start + self.homs[j][i].dim()
    }

    /// Representative in `R` of a basis element of `gamma`.
    pub fn lift(&self, g: usize) -> Vector {
        let b = &self.gamma.basis()[g];
        let k = g - self.offsets[b.source][b.target];
        self.homs[b.source][b.target].representatives()[k].clone()
    }

    /// Class in `hom(j → i)` of a vector of the numerator, as `gamma` terms.
    pub fn class_of(&self, j: usize, i: usize, v: &[Scalar]) -> Option<Terms> {
        let h = &self.homs[j][i];
        if !h.numerator().contains(v).ok()? {
            return None;
        }
        let off = self.offsets[j][i];
        Some(terms_from_dense(&h.project(v)).into_iter().map(|(k, x)| (off + k, x)).collect())
    }

    fn induced(&self, tuple: &[usize], lifts: &[Vector]) -> Result<Terms, AuslanderError> {
        let refs: Vec<&Vector> = lifts.iter().collect();
        let out = eval_dense(&self.base, &refs);
        let (j, i) = self.gamma.output_hom(tuple);
        self.class_of(j, i, &out).ok_or_else(|| AuslanderError::NotWellDefined {
            arity: tuple.len(),
            tuple: self.gamma.labels_of(tuple).join(", "),
            level: j.saturating_sub(i),
            value: describe(&self.base, &out),
        })
    }

    /// Recomputes every entry of every `m_p^Γ` (zero ones included) with
    /// lifts perturbed by random denominator elements, `rounds` times.
    pub fn check_lift_independence<R: Rng>(&self, rounds: usize, rng: &mut R) -> ValidationReport {
        let field = self.base.field();
        let mut check = Check::new("lift independence");
        let base: u64 = rng.gen();
        for &p in self.base.ops().keys() {
            let per_first = par::map_range(self.gamma.dim(), |first| {
                let mut rng = StdRng::seed_from_u64(base ^ first as u64);
                let mut failures = Vec::new();
                for tuple in self.gamma.composable_tuples_from(first, p) {
                    let expected = self.gamma.op(&tuple).cloned().unwrap_or_default();
                    for _ in 0..rounds {
                        let lifts: Vec<Vector> = tuple
                            .iter()
                            .map(|&g| {
                                let b = &self.gamma.basis()[g];
                                let mut v = self.lift(g);
                                for d in self.homs[b.source][b.target].denominator().basis() {
                                    let c = field.from_i64(rng.gen_range(-3..=3));
                                    crate::linalg::axpy(&mut v, &c, d);
                                }
                                v
                            })
                            .collect();
                        let got = self.induced(&tuple, &lifts);
                        if got.as_ref().ok() != Some(&expected) {
                            failures.push(Witness {
                                arity: p,
                                tuple: self.gamma.labels_of(&tuple),
                                discrepancy: got.map(|t| self.gamma.format_terms(&t)).unwrap_or_default(),
                                note: "perturbed lifts give a different class".into(),
                            });
                            break;
                        }
                    }
                }
                failures
            });
            for ws in per_first {
                let c = ws.len();
                check.absorb(c, ws);
            }
        }
        ValidationReport {
            checks: vec![check],
            minimal: None,
        }
    }

    /// The two integer inequalities for every index tuple `(i_1, …, i_{p+1})`
    /// over `0..n` with `p` an arity carrying operations.
    pub fn check_index_inequalities(&self) -> ValidationReport {
        let n = self.n();
        let mut product = Check::new("product index inequality");
        let mut quotient = Check::new("quotient index inequality");
        for &p in self.base.ops().keys() {
            for idx in crate::filtration::index_tuples(n, p + 1) {
                let w = || Witness {
                    arity: p,
                    tuple: idx.iter().map(|i| i.to_string()).collect(),
                    discrepancy: Vec::new(),
                    note: String::new(),
                };
                if !product_index_inequality(&idx) {
                    product.fail(w());
                }
                if !quotient_index_inequality(&idx, n) {
                    quotient.fail(w());
                }
            }
        }
        ValidationReport {
            checks: vec![product, quotient],
            minimal: None,
        }
    }

    /// The strict functor `R → Γ` onto object 0, verified against every
    /// operation. `hom(0 → 0) = F^0/F^n = R`, so this is an isomorphism onto
    /// the full subcategory at 0.
    pub fn embed_generator(&self) -> Result<AInfFunctor, AuslanderError> {
        let r = &self.base;
        let images: Vec<Terms> = (0..r.dim())
            .map(|k| {
                self.class_of(0, 0, &unit_vector(r.field(), r.dim(), k))
                    .expect("hom(0 → 0) is all of R")
            })
            .collect();
        let functor = AInfFunctor::strict(r, &self.gamma, vec![0], images)
            .map_err(|e| AuslanderError::EmbeddingMismatch(e.to_string()))?;
        // intertwining on the nose, entry by entry
        for (&p, table) in r.ops() {
            for tuple in crate::filtration::index_tuples(r.dim(), p) {
                let lhs: Vec<Terms> = tuple.iter().map(|&k| functor.component(&[k]).cloned().unwrap_or_default()).collect();
                let refs: Vec<&[(usize, Scalar)]> = lhs.iter().map(|t| t.as_slice()).collect();
                let via_gamma = self.gamma.evaluate(&refs);
                let direct = table.get(&tuple).cloned().unwrap_or_default();
                let refs = [direct.as_slice()];
                let mapped = if direct.is_empty() {
                    Vec::new()
                } else {
                    functor.apply_linear(refs[0])
                };
                if via_gamma != mapped {
                    return Err(AuslanderError::EmbeddingMismatch(r.labels_of(&tuple).join(", ")));
                }
            }
        }
        let report = functor.verify(r, &self.gamma, None);
        if !report.passed() {
            return Err(AuslanderError::EmbeddingMismatch(report.summary()));
        }
        Ok(functor)
    }

    /// The one-object algebra `⊕_{i,j} hom(j → i)` with non-composable
    /// products set to zero. Its unit `1 = Σ_i 1_i` replaces the unit of
    /// object 0 in the basis.
    pub fn flatten(&self) -> Result<AInfCategory, AuslanderError> {
        let g = &self.gamma;
        let field = g.field();
        let u0 = g.unit(0);
        let basis: Vec<BasisElement> = g
            .basis()
            .iter()
            .enumerate()
            .map(|(k, b)| BasisElement {
                label: if k == u0 { "1".to_string() } else { b.label.clone() },
                source: 0,
                target: 0,
                degree: b.degree,
            })
            .collect();
        // new basis vector k in old coordinates: k itself, except 1 = Σ_i 1_i
        let to_old = |k: usize| -> Terms {
            if k == u0 {
                g.units().iter().map(|&u| (u, field.one())).collect()
            } else {
                vec![(k, field.one())]
            }
        };
        // old 1_0 = 1 − Σ_{i>0} 1_i
        let to_new = |t: &Terms| -> Terms {
            let mut acc = crate::ainf::Lin::new();
            for (k, x) in t {
                if *k == u0 {
                    crate::ainf::lin_add(&mut acc, u0, x.clone());
                    for &u in &g.units()[1..] {
                        crate::ainf::lin_add(&mut acc, u, -x.clone());
                    }
                } else {
                    crate::ainf::lin_add(&mut acc, *k, x.clone());
                }
            }
            crate::ainf::lin_to_terms(acc)
        };
        let mut ops = BTreeMap::new();
        for &p in g.ops().keys() {
            let mut table = BTreeMap::new();
            for key in crate::filtration::index_tuples(g.dim(), p) {
                let args: Vec<Terms> = key.iter().map(|&k| to_old(k)).collect();
                let refs: Vec<&[(usize, Scalar)]> = args.iter().map(|t| t.as_slice()).collect();
                // `evaluate` only finds composable keys, so the rest are zero
                let out = to_new(&g.evaluate(&refs));
                if !out.is_empty() {
                    table.insert(key, out);
                }
            }
            ops.insert(p, table);
        }
        Ok(AInfCategory::from_parts(field, vec!["*".into()], basis, vec![u0], ops)?)
    }
}
