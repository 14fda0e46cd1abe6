//! Finite strictly unital A∞-categories given by structure constants.
//!
//! # Conventions
//!
//! * A basis element `a` with `source = x`, `target = y` lies in `hom(x, y)`.
//!   Arguments of `m_p` are written `a_1, …, a_p` with `a_u ∈ hom(x_{u+1}, x_u)`
//!   and the output lies in `hom(x_{p+1}, x_1)`; in particular
//!   `m_2(f, g) = f ∘ g`.
//! * `m_p` has degree `2 − p`.
//! * The Stasheff identities are
//!   `Σ_{r+s+t=n} (−1)^{r+st} m_{r+1+t}(1^{⊗r} ⊗ m_s ⊗ 1^{⊗t}) = 0`,
//!   where applying `1^{⊗r} ⊗ m_s ⊗ 1^{⊗t}` to `a_1 ⊗ ⋯ ⊗ a_n` costs the
//!   Koszul sign `(−1)^{(2−s)(|a_1|+⋯+|a_r|)}`.
//!
//! Tables are sparse: an absent input tuple means the zero output.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::par;
use crate::report::{Check, ValidationReport, Witness, MAX_WITNESSES};
use crate::scalar::{ExactField, Scalar};

/// A sparse vector: `(basis index, coefficient)` sorted by index, no zeros.
pub type Terms = Vec<(usize, Scalar)>;

/// Accumulator for sparse vectors.
pub type Lin = BTreeMap<usize, Scalar>;

pub fn lin_add(acc: &mut Lin, idx: usize, value: Scalar) {
    if value.is_zero() {
        return;
    }
    match acc.get_mut(&idx) {
        Some(v) => {
            let s = &*v + &value;
            if s.is_zero() {
                acc.remove(&idx);
            } else {
                *v = s;
            }
        }
        None => {
            acc.insert(idx, value);
        }
    }
}

pub fn lin_add_terms(acc: &mut Lin, coeff: &Scalar, terms: &[(usize, Scalar)]) {
    for (i, x) in terms {
        lin_add(acc, *i, coeff * x);
    }
}

pub fn lin_to_terms(acc: Lin) -> Terms {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn terms_from_dense(v: &[Scalar]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn terms_to_dense(field: ExactField, dim: usize, t: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    for (i, x) in t {
        v[*i] = x.clone();
    }
    v
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AInfError {
    #[error("duplicate object label {0:?}")]
    DuplicateObject(String),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown basis element {0:?}")]
    UnknownElement(String),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("object {0:?} has no unit")]
    MissingUnit(String),
    #[error("unit {label:?} of object {object:?} must be a degree-0 endomorphism of that object")]
    BadUnit { object: String, label: String },
    #[error("scalar from the wrong field in entry {0:?}")]
    FieldMismatch(Vec<String>),
    #[error("operations of arity 0 are not supported")]
    ZeroArity,
    #[error("structure check failed: {0}")]
    InvalidStructure(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// A finite A∞-category (an A∞-algebra when there is one object).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfCategory {
    field: ExactField,
    objects: Vec<String>,
    basis: Vec<BasisElement>,
    units: Vec<usize>,
    ops: BTreeMap<usize, BTreeMap<Vec<usize>, Terms>>,
    hom_index: Vec<Vec<Vec<usize>>>,
    by_target: Vec<Vec<usize>>,
    label_index: HashMap<String, usize>,
}

impl AInfCategory {
    /// Assembles a category. Only structural problems (bad indices,
    /// duplicate labels, missing units) are errors here; degree,
    /// composability and unitality are checked by [`validate_structure`].
    ///
    /// [`validate_structure`]: AInfCategory::validate_structure
    pub fn from_parts(
        field: ExactField,
        objects: Vec<String>,
        basis: Vec<BasisElement>,
        units: Vec<usize>,
        ops: BTreeMap<usize, BTreeMap<Vec<usize>, Terms>>,
    ) -> Result<Self, AInfError> {
        let mut seen = HashMap::new();
        for o in &objects {
            if seen.insert(o.clone(), ()).is_some() {
                return Err(AInfError::DuplicateObject(o.clone()));
            }
        }
        let mut label_index = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if b.source >= objects.len() || b.target >= objects.len() {
                return Err(AInfError::IndexOutOfRange(i));
            }
            if label_index.insert(b.label.clone(), i).is_some() {
                return Err(AInfError::DuplicateLabel(b.label.clone()));
            }
        }
        if units.len() != objects.len() {
            let missing = objects.get(units.len()).cloned().unwrap_or_default();
            return Err(AInfError::MissingUnit(missing));
        }
        for (o, &u) in units.iter().enumerate() {
            let b = basis.get(u).ok_or(AInfError::IndexOutOfRange(u))?;
            if b.source != o || b.target != o || b.degree != 0 {
                return Err(AInfError::BadUnit {
                    object: objects[o].clone(),
                    label: b.label.clone(),
                });
            }
        }
        let mut clean_ops = BTreeMap::new();
        for (arity, table) in ops {
            if arity == 0 {
                return Err(AInfError::ZeroArity);
            }
            let mut clean = BTreeMap::new();
            for (key, out) in table {
                if key.len() != arity {
                    return Err(AInfError::IndexOutOfRange(key.len()));
                }
                let labels = || key.iter().map(|&k| basis.get(k).map_or("?".into(), |b| b.label.clone())).collect();
                for &k in &key {
                    if k >= basis.len() {
                        return Err(AInfError::IndexOutOfRange(k));
                    }
                }
                let mut acc = Lin::new();
                for (i, x) in out {
                    if i >= basis.len() {
                        return Err(AInfError::IndexOutOfRange(i));
                    }
                    if x.field() != field {
                        return Err(AInfError::FieldMismatch(labels()));
                    }
                    lin_add(&mut acc, i, x);
                }
                if !acc.is_empty() {
                    clean.insert(key, lin_to_terms(acc));
                }
            }
            if !clean.is_empty() {
                clean_ops.insert(arity, clean);
            }
        }
        let n = objects.len();
        let mut hom_index = vec![vec![Vec::new(); n]; n];
        let mut by_target = vec![Vec::new(); n];
        for (i, b) in basis.iter().enumerate() {
            hom_index[b.source][b.target].push(i);
            by_target[b.target].push(i);
        }
        Ok(AInfCategory {
            field,
            objects,
            basis,
            units,
            ops: clean_ops,
            hom_index,
            by_target,
            label_index,
        })
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.basis.iter().map(|b| b.degree).collect()
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn unit(&self, object: usize) -> usize {
        self.units[object]
    }

    pub fn is_unit(&self, i: usize) -> bool {
        self.units.contains(&i)
    }

    /// Basis indices of `hom(source, target)`.
    pub fn hom(&self, source: usize, target: usize) -> &[usize] {
        &self.hom_index[source][target]
    }

    /// Basis elements with the given target.
    pub fn into_object(&self, target: usize) -> &[usize] {
        &self.by_target[target]
    }

    pub fn ops(&self) -> &BTreeMap<usize, BTreeMap<Vec<usize>, Terms>> {
        &self.ops
    }

    pub fn op(&self, inputs: &[usize]) -> Option<&Terms> {
        self.ops.get(&inputs.len())?.get(inputs)
    }

    /// Largest arity with a nonzero table (0 when all tables vanish).
    pub fn arity_bound(&self) -> usize {
        self.ops.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_minimal(&self) -> bool {
        !self.ops.contains_key(&1)
    }

    pub fn is_one_object(&self) -> bool {
        self.objects.len() == 1
    }

    pub fn composable(&self, tuple: &[usize]) -> bool {
        tuple
            .windows(2)
            .all(|w| self.basis[w[0]].source == self.basis[w[1]].target)
    }

    /// `(source, target)` of the output of `m_p(tuple)`.
    pub fn output_hom(&self, tuple: &[usize]) -> (usize, usize) {
        let first = &self.basis[tuple[0]];
        let last = &self.basis[tuple[tuple.len() - 1]];
        (last.source, first.target)
    }

    pub fn format_terms(&self, t: &[(usize, Scalar)]) -> Vec<(String, String)> {
        t.iter()
            .map(|(i, x)| (self.basis[*i].label.clone(), x.to_string()))
            .collect()
    }

    pub fn labels_of(&self, tuple: &[usize]) -> Vec<String> {
        tuple.iter().map(|&i| self.basis[i].label.clone()).collect()
    }

    /// Multilinear evaluation of `m_p` on sparse vectors.
    pub fn evaluate(&self, args: &[&[(usize, Scalar)]]) -> Terms {
        let mut acc = Lin::new();
        let Some(table) = self.ops.get(&args.len()) else {
            return Vec::new();
        };
        let mut key = vec![0; args.len()];
        expand(args, 0, &self.field.one(), &mut key, &mut |k, c| {
            if let Some(out) = table.get(k) {
                lin_add_terms(&mut acc, c, out);
            }
        });
        lin_to_terms(acc)
    }

    /// All composable `n`-tuples starting with `first`, in lexicographic order.
    pub fn composable_tuples_from(&self, first: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![first];
        self.extend_tuples(n, &mut cur, &mut out);
        out
    }

    fn extend_tuples(&self, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let src = self.basis[*cur.last().unwrap()].source;
        for &b in &self.by_target[src] {
            cur.push(b);
            self.extend_tuples(n, cur, out);
            cur.pop();
        }
    }

    /// Left-hand side of the `n = tuple.len()` Stasheff identity on a basis tuple.
    pub fn stasheff_residual(&self, tuple: &[usize]) -> Terms {
        let mut acc = Lin::new();
        let degrees = |i: usize| self.basis[i].degree;
        insertion_sum(
            tuple,
            &degrees,
            1,
            &|args: &[usize], _| self.op(args),
            &|args: &[usize]| self.op(args),
            &self.field.one(),
            &mut acc,
        );
        lin_to_terms(acc)
    }

    /// Degree, composability and strict unitality checks; reports minimality.
    pub fn validate_structure(&self) -> ValidationReport {
        let mut degrees = Check::new("degrees");
        let mut composability = Check::new("composability");
        let mut units = Check::new("units");
        for (&p, table) in &self.ops {
            for (key, out) in table {
                let labels = self.labels_of(key);
                if !self.composable(key) {
                    composability.fail(Witness {
                        arity: p,
                        tuple: labels.clone(),
                        discrepancy: self.format_terms(out),
                        note: "arguments are not composable".into(),
                    });
                } else {
                    let (s, t) = self.output_hom(key);
                    let stray: Terms = out
                        .iter()
                        .filter(|(i, _)| self.basis[*i].source != s || self.basis[*i].target != t)
                        .cloned()
                        .collect();
                    if !stray.is_empty() {
                        composability.fail(Witness {
                            arity: p,
                            tuple: labels.clone(),
                            discrepancy: self.format_terms(&stray),
                            note: "output outside the expected hom-space".into(),
                        });
                    }
                }
                let expected = key.iter().map(|&k| self.degree(k)).sum::<i64>() + 2 - p as i64;
                let wrong: Terms = out
                    .iter()
                    .filter(|(i, _)| self.degree(*i) != expected)
                    .cloned()
                    .collect();
                if !wrong.is_empty() {
                    degrees.fail(Witness {
                        arity: p,
                        tuple: labels.clone(),
                        discrepancy: self.format_terms(&wrong),
                        note: format!("expected output degree {expected}"),
                    });
                }
                if p != 2 && key.iter().any(|&k| self.is_unit(k)) {
                    units.fail(Witness {
                        arity: p,
                        tuple: labels,
                        discrepancy: self.format_terms(out),
                        note: "higher operation does not vanish on a unit".into(),
                    });
                }
            }
        }
        for (f, b) in self.basis.iter().enumerate() {
            let expected: Terms = vec![(f, self.field.one())];
            for key in [vec![self.units[b.target], f], vec![f, self.units[b.source]]] {
                let got = self.op(&key).cloned().unwrap_or_default();
                if got != expected {
                    let mut acc: Lin = got.into_iter().collect();
                    lin_add(&mut acc, f, -self.field.one());
                    units.fail(Witness {
                        arity: 2,
                        tuple: self.labels_of(&key),
                        discrepancy: self.format_terms(&lin_to_terms(acc)),
                        note: "unit law".into(),
                    });
                }
            }
        }
        ValidationReport {
            checks: vec![degrees, composability, units],
            minimal: Some(self.is_minimal()),
        }
    }

    /// Checks every Stasheff identity for `n ≤ n_max` on every composable
    /// basis tuple. Defaults to `2·arity_bound − 1`, past which every term
    /// vanishes. One check per `n`; witnesses are in lexicographic order of
    /// basis indices.
    pub fn check_stasheff(&self, n_max: Option<usize>) -> ValidationReport {
        let n_max = n_max.unwrap_or_else(|| (2 * self.arity_bound()).saturating_sub(1));
        let mut checks = Vec::new();
        for n in 1..=n_max {
            let per_first = par::map_range(self.dim(), |first| {
                let mut failures = 0usize;
                let mut witnesses = Vec::new();
                for tuple in self.composable_tuples_from(first, n) {
                    let r = self.stasheff_residual(&tuple);
                    if !r.is_empty() {
                        failures += 1;
                        if witnesses.len() < MAX_WITNESSES {
                            witnesses.push(Witness {
                                arity: n,
                                tuple: self.labels_of(&tuple),
                                discrepancy: self.format_terms(&r),
                                note: String::new(),
                            });
                        }
                    }
                }
                (failures, witnesses)
            });
            let mut check = Check::new(format!("stasheff n={n}"));
            for (f, w) in per_first {
                check.absorb(f, w);
            }
            checks.push(check);
        }
        ValidationReport {
            checks,
            minimal: None,
        }
    }

    fn require_valid(&self) -> Result<(), AInfError> {
        let r = self.validate_structure();
        if r.passed() {
            Ok(())
        } else {
            Err(AInfError::InvalidStructure(r.summary()))
        }
    }

    /// The opposite category: `hom^op(x, y) = hom(y, x)` on the same basis and
    /// `m_p^op(a_1, …, a_p) = (−1)^{σ + (p−1)(p+2)/2} m_p(a_p, …, a_1)` with
    /// `σ = Σ_{u<v} |a_u||a_v|`. The extra arity-dependent sign is what makes
    /// the reversal compatible with the Stasheff signs once `m_1` or several
    /// higher products are present; it is trivial for `p = 2`.
    pub fn opposite(&self) -> Result<AInfCategory, AInfError> {
        self.require_valid()?;
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                label: b.label.clone(),
                source: b.target,
                target: b.source,
                degree: b.degree,
            })
            .collect();
        let mut ops = BTreeMap::new();
        for (&p, table) in &self.ops {
            let arity_sign = ((p - 1) * (p + 2) / 2) % 2 == 1;
            let mut t = BTreeMap::new();
            for (key, out) in table {
                let rev: Vec<usize> = key.iter().rev().copied().collect();
                let mut sigma = 0i64;
                for u in 0..p {
                    for v in u + 1..p {
                        sigma += self.degree(rev[u]) * self.degree(rev[v]);
                    }
                }
                let odd = (sigma.rem_euclid(2) == 1) != arity_sign;
                let out: Terms = out.iter().map(|(i, x)| (*i, x.clone().signed(odd))).collect();
                t.insert(rev, out);
            }
            ops.insert(p, t);
        }
        AInfCategory::from_parts(self.field, self.objects.clone(), basis, self.units.clone(), ops)
    }

    /// Restriction to the named objects, keeping their relative order.
    pub fn full_subcategory(&self, objs: &[&str]) -> Result<AInfCategory, AInfError> {
        let mut keep = Vec::new();
        for o in objs {
            let i = self.object_index(o).ok_or_else(|| AInfError::UnknownObject(o.to_string()))?;
            if !keep.contains(&i) {
                keep.push(i);
            }
        }
        keep.sort_unstable();
        self.restrict_objects(&keep)
    }

    pub(crate) fn restrict_objects(&self, keep: &[usize]) -> Result<AInfCategory, AInfError> {
        let obj_map: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let mut idx_map = HashMap::new();
        let mut basis = Vec::new();
        for (i, b) in self.basis.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (obj_map.get(&b.source), obj_map.get(&b.target)) {
                idx_map.insert(i, basis.len());
                basis.push(BasisElement {
                    label: b.label.clone(),
                    source: s,
                    target: t,
                    degree: b.degree,
                });
            }
        }
        let mut ops = BTreeMap::new();
        for (&p, table) in &self.ops {
            let mut t = BTreeMap::new();
            for (key, out) in table {
                let Some(new_key) = key.iter().map(|k| idx_map.get(k).copied()).collect::<Option<Vec<_>>>()
                else {
                    continue;
                };
                let new_out: Terms = out
                    .iter()
                    .filter_map(|(i, x)| idx_map.get(i).map(|&j| (j, x.clone())))
                    .collect();
                t.insert(new_key, new_out);
            }
            ops.insert(p, t);
        }
        let objects = keep.iter().map(|&o| self.objects[o].clone()).collect();
        let units = keep.iter().map(|&o| idx_map[&self.units[o]]).collect();
        AInfCategory::from_parts(self.field, objects, basis, units, ops)
    }

    /// Copy with relabeled basis elements (same structure constants).
    pub fn relabeled(&self, labels: Vec<String>) -> Result<AInfCategory, AInfError> {
        let basis = self
            .basis
            .iter()
            .zip(labels)
            .map(|(b, label)| BasisElement { label, ..b.clone() })
            .collect();
        AInfCategory::from_parts(self.field, self.objects.clone(), basis, self.units.clone(), self.ops.clone())
    }
}

/// Calls `f(key, coeff)` for each basis tuple in the expansion of a tensor
/// product of sparse vectors.
pub(crate) fn expand(
    args: &[&[(usize, Scalar)]],
    pos: usize,
    coeff: &Scalar,
    key: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize], &Scalar),
) {
    if pos == args.len() {
        f(key, coeff);
        return;
    }
    for (i, x) in args[pos] {
        key[pos] = *i;
        expand(args, pos + 1, &(coeff * x), key, f);
    }
}

/// Accumulates `coeff · Σ_{r+s+t=n, s ≥ s_min} (−1)^{r+st+s(|a_1|+⋯+|a_r|)}
/// outer(a_1, …, a_r, inner(a_{r+1}, …, a_{r+s}), a_{r+s+1}, …, a_n)`.
pub(crate) fn insertion_sum<'a>(
    tuple: &[usize],
    degree: &dyn Fn(usize) -> i64,
    s_min: usize,
    inner: &dyn Fn(&[usize], usize) -> Option<&'a Terms>,
    outer: &dyn Fn(&[usize]) -> Option<&'a Terms>,
    coeff: &Scalar,
    acc: &mut Lin,
) {
    insertion_sum_at(tuple, degree, &|_| 0, s_min, inner, outer, coeff, acc)
}

/// [`insertion_sum`] where `inner` also receives `at(r)`, the object at the
/// insertion point. That object is what selects an arity-0 component when
/// `s = 0`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn insertion_sum_at<'a>(
    tuple: &[usize],
    degree: &dyn Fn(usize) -> i64,
    at: &dyn Fn(usize) -> usize,
    s_min: usize,
    inner: &dyn Fn(&[usize], usize) -> Option<&'a Terms>,
    outer: &dyn Fn(&[usize]) -> Option<&'a Terms>,
    coeff: &Scalar,
    acc: &mut Lin,
) {
    let n = tuple.len();
    let mut prefix = vec![0i64; n + 1];
    for (i, &a) in tuple.iter().enumerate() {
        prefix[i + 1] = prefix[i] + degree(a);
    }
    let mut key = Vec::with_capacity(n + 1);
    for s in s_min..=n {
        for r in 0..=n - s {
            let t = n - r - s;
            let Some(inner_out) = inner(&tuple[r..r + s], at(r)) else {
                continue;
            };
            let parity = (r as i64 + (s * t) as i64 + s as i64 * prefix[r]).rem_euclid(2) == 1;
            let sign = coeff.clone().signed(parity);
            for (c, x) in inner_out {
                key.clear();
                key.extend_from_slice(&tuple[..r]);
                key.push(*c);
                key.extend_from_slice(&tuple[r + s..]);
                if let Some(out) = outer(&key) {
                    lin_add_terms(acc, &(&sign * x), out);
                }
            }
        }
    }
}

/// Incremental construction of categories by label.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    field: ExactField,
    objects: Vec<String>,
    basis: Vec<BasisElement>,
    units: BTreeMap<usize, usize>,
    ops: BTreeMap<usize, BTreeMap<Vec<usize>, Lin>>,
}

impl CategoryBuilder {
    pub fn new(field: ExactField) -> Self {
        CategoryBuilder {
            field,
            objects: Vec::new(),
            basis: Vec::new(),
            units: BTreeMap::new(),
            ops: BTreeMap::new(),
        }
    }

    /// A builder with a single object named `*`.
    pub fn algebra(field: ExactField) -> Self {
        let mut b = Self::new(field);
        b.objects.push("*".into());
        b
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn object(&mut self, label: &str) -> Result<usize, AInfError> {
        if self.objects.iter().any(|o| o == label) {
            return Err(AInfError::DuplicateObject(label.into()));
        }
        self.objects.push(label.into());
        Ok(self.objects.len() - 1)
    }

    fn object_index(&self, label: &str) -> Result<usize, AInfError> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| AInfError::UnknownObject(label.into()))
    }

    pub fn index(&self, label: &str) -> Result<usize, AInfError> {
        self.basis
            .iter()
            .position(|b| b.label == label)
            .ok_or_else(|| AInfError::UnknownElement(label.into()))
    }

    pub fn element(&mut self, label: &str, source: &str, target: &str, degree: i64) -> Result<usize, AInfError> {
        if self.basis.iter().any(|b| b.label == label) {
            return Err(AInfError::DuplicateLabel(label.into()));
        }
        let source = self.object_index(source)?;
        let target = self.object_index(target)?;
        self.basis.push(BasisElement {
            label: label.into(),
            source,
            target,
            degree,
        });
        Ok(self.basis.len() - 1)
    }

    /// Adds an element of the (first) object's endomorphisms.
    pub fn endo(&mut self, label: &str, degree: i64) -> Result<usize, AInfError> {
        let o = self.objects.first().cloned().ok_or_else(|| AInfError::UnknownObject("*".into()))?;
        self.element(label, &o, &o, degree)
    }

    pub fn unit(&mut self, object: &str, element: &str) -> Result<(), AInfError> {
        let o = self.object_index(object)?;
        let e = self.index(element)?;
        self.units.insert(o, e);
        Ok(())
    }

    /// Adds `m_2(1, f) = f = m_2(f, 1)` for every basis element.
    pub fn unit_laws(&mut self) -> Result<(), AInfError> {
        let one = self.field.one();
        for f in 0..self.basis.len() {
            let b = &self.basis[f];
            let ut = *self
                .units
                .get(&b.target)
                .ok_or_else(|| AInfError::MissingUnit(self.objects[b.target].clone()))?;
            let us = *self
                .units
                .get(&b.source)
                .ok_or_else(|| AInfError::MissingUnit(self.objects[b.source].clone()))?;
            self.set(vec![ut, f], vec![(f, one.clone())]);
            self.set(vec![f, us], vec![(f, one.clone())]);
        }
        Ok(())
    }

    pub fn set(&mut self, inputs: Vec<usize>, output: Terms) {
        let mut acc = Lin::new();
        for (i, x) in output {
            lin_add(&mut acc, i, x);
        }
        self.ops.entry(inputs.len()).or_default().insert(inputs, acc);
    }

    pub fn add(&mut self, inputs: Vec<usize>, out: usize, coeff: Scalar) {
        let e = self.ops.entry(inputs.len()).or_default().entry(inputs).or_default();
        lin_add(e, out, coeff);
    }

    /// Sets `m_p(inputs) = Σ coeff·label` by labels; coefficients are parsed.
    pub fn set_labels(&mut self, inputs: &[&str], output: &[(&str, &str)]) -> Result<(), AInfError> {
        let key = inputs.iter().map(|l| self.index(l)).collect::<Result<Vec<_>, _>>()?;
        let mut out = Vec::new();
        for (l, c) in output {
            let x = self
                .field
                .parse(c)
                .map_err(|_| AInfError::FieldMismatch(inputs.iter().map(|s| s.to_string()).collect()))?;
            out.push((self.index(l)?, x));
        }
        self.set(key, out);
        Ok(())
    }

    pub fn build(self) -> Result<AInfCategory, AInfError> {
        let mut units = Vec::new();
        for (o, label) in self.objects.iter().enumerate() {
            units.push(*self.units.get(&o).ok_or_else(|| AInfError::MissingUnit(label.clone()))?);
        }
        let ops = self
            .ops
            .into_iter()
            .map(|(p, t)| (p, t.into_iter().map(|(k, v)| (k, lin_to_terms(v))).collect()))
            .collect();
        AInfCategory::from_parts(self.field, self.objects, self.basis, units, ops)
    }
}
