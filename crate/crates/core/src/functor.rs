//! A∞-functors between finite categories and their verification.
//!
//! Components `F_n` are stored in the same convention as the operations
//! (`F_n` has degree `1 − n`). Verification passes to the bar picture, where
//! with `x_j = s a_j`, `|x_j| = |a_j| − 1`,
//! `b_n(x_1, …, x_n) = (−1)^{Σ_j (n−j)|a_j|} s m_n(a_1, …, a_n)` (and the same
//! rule for `F`), and checks
//!
//! `Σ_{r+s+t=n} (−1)^{|x_1|+⋯+|x_r|} F(x_1, …, x_r, b_s(…), …)
//!   = Σ_{i_1+⋯+i_k=n} b'_k(F_{i_1}(…), …, F_{i_k}(…))`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ainf::{expand, lin_add_terms, lin_to_terms, AInfCategory, Lin, Terms};
use crate::report::{Check, ValidationReport, Witness};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FunctorError {
    #[error("object map has {found} entries, source has {expected} objects")]
    ObjectMap { expected: usize, found: usize },
    #[error("component key {0:?} has the wrong arity or an out-of-range index")]
    BadKey(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfFunctor {
    object_map: Vec<usize>,
    components: BTreeMap<usize, BTreeMap<Vec<usize>, Terms>>,
}

/// `Σ_j (n−j)|a_j|`, the sign of `s^{⊗n}` on `a_1 ⊗ ⋯ ⊗ a_n`.
fn suspension_parity(degrees: impl Iterator<Item = i64>, n: usize) -> bool {
    let mut e = 0i64;
    for (j, d) in degrees.enumerate() {
        e += (n - 1 - j) as i64 * d;
    }
    e.rem_euclid(2) == 1
}

impl AInfFunctor {
    pub fn new(
        source: &AInfCategory,
        target: &AInfCategory,
        object_map: Vec<usize>,
        components: BTreeMap<usize, BTreeMap<Vec<usize>, Terms>>,
    ) -> Result<Self, FunctorError> {
        if object_map.len() != source.objects().len() {
            return Err(FunctorError::ObjectMap {
                expected: source.objects().len(),
                found: object_map.len(),
            });
        }
        for (&n, table) in &components {
            for (key, out) in table {
                if key.len() != n
                    || key.iter().any(|&k| k >= source.dim())
                    || out.iter().any(|(i, _)| *i >= target.dim())
                {
                    return Err(FunctorError::BadKey(key.clone()));
                }
            }
        }
        Ok(AInfFunctor {
            object_map,
            components,
        })
    }

    /// The strict functor with only a first component, given basis-wise.
    pub fn strict(
        source: &AInfCategory,
        target: &AInfCategory,
        object_map: Vec<usize>,
        images: Vec<Terms>,
    ) -> Result<Self, FunctorError> {
        let table = images
            .into_iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(i, t)| (vec![i], t))
            .collect();
        Self::new(source, target, object_map, [(1, table)].into_iter().collect())
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn components(&self) -> &BTreeMap<usize, BTreeMap<Vec<usize>, Terms>> {
        &self.components
    }

    pub fn is_strict(&self) -> bool {
        self.components.keys().all(|&n| n == 1)
    }

    pub fn component(&self, key: &[usize]) -> Option<&Terms> {
        self.components.get(&key.len())?.get(key)
    }

    /// `F_1` applied to a linear combination.
    pub fn apply_linear(&self, v: &[(usize, Scalar)]) -> Terms {
        let mut acc = Lin::new();
        for (k, x) in v {
            if let Some(img) = self.component(&[*k]) {
                lin_add_terms(&mut acc, x, img);
            }
        }
        lin_to_terms(acc)
    }

    fn arity_bound(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    /// `F^b_n` on the suspension of a basis tuple, as the coefficients of `s·e`.
    fn bar_component(&self, source: &AInfCategory, key: &[usize]) -> Option<Terms> {
        let out = self.component(key)?;
        let odd = suspension_parity(key.iter().map(|&k| source.degree(k)), key.len());
        Some(out.iter().map(|(i, x)| (*i, x.clone().signed(odd))).collect())
    }

    fn bar_op(cat: &AInfCategory, key: &[usize]) -> Option<Terms> {
        let out = cat.op(key)?;
        let odd = suspension_parity(key.iter().map(|&k| cat.degree(k)), key.len());
        Some(out.iter().map(|(i, x)| (*i, x.clone().signed(odd))).collect())
    }

    /// Difference of the two sides of the functor equation on a basis tuple.
    pub fn residual(&self, source: &AInfCategory, target: &AInfCategory, tuple: &[usize]) -> Terms {
        let n = tuple.len();
        let one = source.field().one();
        let mut acc = Lin::new();
        // left side
        let mut prefix = 0i64;
        for r in 0..n {
            for s in 1..=n - r {
                let Some(inner) = Self::bar_op(source, &tuple[r..r + s]) else {
                    continue;
                };
                let sign = one.clone().signed(prefix.rem_euclid(2) == 1);
                for (c, x) in &inner {
                    let mut key = tuple[..r].to_vec();
                    key.push(*c);
                    key.extend_from_slice(&tuple[r + s..]);
                    if let Some(out) = self.bar_component(source, &key) {
                        lin_add_terms(&mut acc, &(&sign * x), &out);
                    }
                }
            }
            prefix += source.degree(tuple[r]) - 1;
        }
        // right side, subtracted
        let minus = -one.clone();
        let mut parts = Vec::new();
        self.compositions(source, tuple, 0, &mut parts, &mut |blocks| {
            let refs: Vec<&[(usize, Scalar)]> = blocks.iter().map(|b| b.as_slice()).collect();
            let mut key = vec![0; refs.len()];
            expand(&refs, 0, &minus, &mut key, &mut |k, c| {
                if let Some(out) = Self::bar_op(target, k) {
                    lin_add_terms(&mut acc, c, &out);
                }
            });
        });
        lin_to_terms(acc)
    }

    fn compositions(
        &self,
        source: &AInfCategory,
        tuple: &[usize],
        start: usize,
        parts: &mut Vec<Terms>,
        f: &mut dyn FnMut(&[Terms]),
    ) {
        if start == tuple.len() {
            f(parts);
            return;
        }
        let max = self.arity_bound().min(tuple.len() - start);
        for len in 1..=max {
            if let Some(block) = self.bar_component(source, &tuple[start..start + len]) {
                parts.push(block);
                self.compositions(source, tuple, start + len, parts, f);
                parts.pop();
            }
        }
    }

    /// Checks degrees, strict unitality and the functor equations for all
    /// composable tuples of length `≤ n_max` (default: enough to cover every
    /// nonzero term).
    pub fn verify(&self, source: &AInfCategory, target: &AInfCategory, n_max: Option<usize>) -> ValidationReport {
        let mut degrees = Check::new("functor degrees");
        let mut units = Check::new("functor units");
        for (&n, table) in &self.components {
            for (key, out) in table {
                let expected = key.iter().map(|&k| source.degree(k)).sum::<i64>() + 1 - n as i64;
                if out.iter().any(|(i, _)| target.degree(*i) != expected) {
                    degrees.fail(Witness {
                        arity: n,
                        tuple: source.labels_of(key),
                        discrepancy: target.format_terms(out),
                        note: format!("expected degree {expected}"),
                    });
                }
                if n >= 2 && key.iter().any(|&k| source.is_unit(k)) {
                    units.fail(Witness {
                        arity: n,
                        tuple: source.labels_of(key),
                        discrepancy: target.format_terms(out),
                        note: "higher component does not vanish on a unit".into(),
                    });
                }
            }
        }
        for (o, &u) in source.units().iter().enumerate() {
            let expected = vec![(target.unit(self.object_map[o]), target.field().one())];
            let got = self.component(&[u]).cloned().unwrap_or_default();
            if got != expected {
                units.fail(Witness {
                    arity: 1,
                    tuple: vec![source.label(u).to_string()],
                    discrepancy: target.format_terms(&got),
                    note: "unit not sent to unit".into(),
                });
            }
        }
        let f = self.arity_bound().max(1);
        let bound = (f + source.arity_bound()).saturating_sub(1).max(target.arity_bound() * f);
        let n_max = n_max.unwrap_or(bound);
        let mut equations = Check::new("functor equations");
        for n in 1..=n_max {
            for first in 0..source.dim() {
                for tuple in source.composable_tuples_from(first, n) {
                    let r = self.residual(source, target, &tuple);
                    if !r.is_empty() {
                        equations.fail(Witness {
                            arity: n,
                            tuple: source.labels_of(&tuple),
                            discrepancy: target.format_terms(&r),
                            note: String::new(),
                        });
                    }
                }
            }
        }
        ValidationReport {
            checks: vec![degrees, units, equations],
            minimal: None,
        }
    }
}
