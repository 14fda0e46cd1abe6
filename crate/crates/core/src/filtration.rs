//! Decreasing filtrations of A∞-algebras: compatibility checking, the
//! degree filtration, Jacobson radicals and the two-degree construction
//! `J^p + R_{−κ}`, …, `Σ_{u+v=q} J^u R_{−κ} J^v`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ainf::{terms_from_dense, terms_to_dense, AInfCategory, AInfError, BasisElement, Terms};
use crate::linalg::{is_zero_vector, unit_vector, LinalgError, Matrix, QuotientPresentation, Subspace, Vector};
use crate::par;
use crate::report::{Check, ValidationReport, Witness};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FiltrationError {
    #[error("expected a one-object category (an algebra), found {0} objects")]
    NotOneObject(usize),
    #[error("basis element {label:?} has positive degree {degree}")]
    PositiveDegree { label: String, degree: i64 },
    #[error("the algebra is not minimal (m_1 ≠ 0)")]
    NotMinimal,
    #[error("radicals are only computed in characteristic 0, field has characteristic {0}")]
    PositiveCharacteristic(u64),
    #[error("basis element {label:?} has degree {degree}, outside {{0, -{kappa}}}")]
    TwoDegreeHypothesis { label: String, degree: i64, kappa: i64 },
    #[error("kappa must be positive, got {0}")]
    BadKappa(i64),
    #[error("a filtration needs at least the levels F^0 and F^n")]
    TooShort,
    #[error("level {level} has ambient dimension {found}, algebra has dimension {expected}")]
    AmbientMismatch { level: usize, expected: usize, found: usize },
    #[error("subspace is not a two-sided ideal: {0}")]
    NotIdeal(String),
    #[error("quotient by this ideal is zero")]
    ZeroQuotient,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    AInf(#[from] AInfError),
}

/// `F^0 ⊇ F^1 ⊇ ⋯ ⊇ F^n` as subspaces of the algebra's underlying space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    levels: Vec<Subspace>,
}

impl Filtration {
    pub fn new(levels: Vec<Subspace>) -> Result<Self, FiltrationError> {
        if levels.len() < 2 {
            return Err(FiltrationError::TooShort);
        }
        Ok(Filtration { levels })
    }

    /// The index `n` of the last level.
    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    /// `F^p`; indices past `n` give `F^n`.
    pub fn level(&self, p: usize) -> &Subspace {
        &self.levels[p.min(self.n())]
    }

    pub fn levels(&self) -> &[Subspace] {
        &self.levels
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim()).collect()
    }
}

fn require_algebra(r: &AInfCategory) -> Result<(), FiltrationError> {
    if r.objects().len() != 1 {
        return Err(FiltrationError::NotOneObject(r.objects().len()));
    }
    Ok(())
}

fn vector_labels(r: &AInfCategory, v: &[crate::scalar::Scalar]) -> Vec<(String, String)> {
    r.format_terms(&terms_from_dense(v))
}

/// All tuples in `{0, …, base−1}^len`, lexicographically.
pub fn index_tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Evaluates `m_p` on dense vectors.
pub(crate) fn eval_dense(r: &AInfCategory, args: &[&Vector]) -> Vector {
    let sparse: Vec<Terms> = args.iter().map(|v| terms_from_dense(v)).collect();
    let refs: Vec<&[(usize, crate::scalar::Scalar)]> = sparse.iter().map(|t| t.as_slice()).collect();
    terms_to_dense(r.field(), r.dim(), &r.evaluate(&refs))
}

/// Verifies the level invariants and `m_p(F^{i_1} ⊗ ⋯ ⊗ F^{i_p}) ⊆ F^{i_1+⋯+i_p}`
/// for every `p` with a nonzero table and every index tuple in `{0,…,n−1}^p`
/// (sums past `n` require landing in `F^n = 0`). Checked on echelon spanning
/// vectors of each level.
pub fn check_filtration(r: &AInfCategory, f: &Filtration) -> Result<ValidationReport, FiltrationError> {
    require_algebra(r)?;
    let dim = r.dim();
    for (i, l) in f.levels.iter().enumerate() {
        if l.ambient_dim() != dim {
            return Err(FiltrationError::AmbientMismatch {
                level: i,
                expected: dim,
                found: l.ambient_dim(),
            });
        }
    }
    let n = f.n();
    let degrees = r.degrees();
    let mut bounds = Check::new("filtration bounds");
    if f.level(0).dim() != dim {
        let missing = (0..dim)
            .map(|i| unit_vector(r.field(), dim, i))
            .find(|e| !f.level(0).contains(e).unwrap_or(false))
            .unwrap_or_default();
        bounds.fail(Witness {
            arity: 0,
            tuple: vec!["F^0".into()],
            discrepancy: vector_labels(r, &missing),
            note: "F^0 is not the whole algebra".into(),
        });
    }
    if let Some(v) = f.level(n).basis().first() {
        bounds.fail(Witness {
            arity: 0,
            tuple: vec![format!("F^{n}")],
            discrepancy: vector_labels(r, v),
            note: "last level is not zero".into(),
        });
    }
    let mut decreasing = Check::new("filtration decreasing");
    for p in 0..n {
        if let Some(v) = f.level(p + 1).find_outside(f.level(p))? {
            decreasing.fail(Witness {
                arity: 0,
                tuple: vec![format!("F^{}", p + 1), format!("F^{p}")],
                discrepancy: vector_labels(r, &v),
                note: "vector of the smaller level missing from the larger".into(),
            });
        }
    }
    let mut graded = Check::new("filtration graded");
    for (p, l) in f.levels.iter().enumerate() {
        if let Some(v) = l
            .basis()
            .iter()
            .find(|v| crate::linalg::homogeneous_degree(v, &degrees).is_none())
        {
            graded.fail(Witness {
                arity: 0,
                tuple: vec![format!("F^{p}")],
                discrepancy: vector_labels(r, v),
                note: "level is not spanned by homogeneous vectors".into(),
            });
        }
    }
    let mut compat = Check::new("filtration compatibility");
    for &p in r.ops().keys() {
        let tuples = index_tuples(n, p);
        let results = par::map(tuples, |idx| {
            let target = idx.iter().sum::<usize>().min(n);
            let target_space = f.level(target);
            let spans: Vec<&[Vector]> = idx.iter().map(|&i| f.level(i).basis()).collect();
            let mut failures = Vec::new();
            let mut choice = vec![0usize; p];
            if spans.iter().any(|s| s.is_empty()) {
                return failures;
            }
            loop {
                let args: Vec<&Vector> = (0..p).map(|u| &spans[u][choice[u]]).collect();
                let out = eval_dense(r, &args);
                if !is_zero_vector(&out) && !target_space.contains(&out).unwrap_or(false) {
                    failures.push(Witness {
                        arity: p,
                        tuple: idx
                            .iter()
                            .zip(&args)
                            .map(|(i, v)| format!("F^{i}:{}", describe(r, v)))
                            .collect(),
                        discrepancy: vector_labels(r, &out),
                        note: format!("output not in F^{target}"),
                    });
                }
                let mut u = p;
                loop {
                    if u == 0 {
                        return failures;
                    }
                    u -= 1;
                    choice[u] += 1;
                    if choice[u] < spans[u].len() {
                        break;
                    }
                    choice[u] = 0;
                }
            }
        });
        for ws in results {
            let count = ws.len();
            compat.absorb(count, ws);
        }
    }
    Ok(ValidationReport {
        checks: vec![bounds, decreasing, graded, compat],
        minimal: None,
    })
}

/// Short human-readable form of a vector, e.g. `e+2t`.
pub(crate) fn describe(r: &AInfCategory, v: &[crate::scalar::Scalar]) -> String {
    let terms = terms_from_dense(v);
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .enumerate()
        .map(|(k, (i, x))| {
            let label = r.label(*i);
            let s = x.to_string();
            let body = if x.is_one() { label.to_string() } else { format!("{s}*{label}") };
            if k > 0 && !s.starts_with('-') {
                format!("+{body}")
            } else {
                body
            }
        })
        .collect()
}

/// `F^p = span{basis elements of degree ≤ −p}`, `n = 1 + max |degree|`.
pub fn degree_filtration(r: &AInfCategory) -> Result<Filtration, FiltrationError> {
    require_algebra(r)?;
    for b in r.basis() {
        if b.degree > 0 {
            return Err(FiltrationError::PositiveDegree {
                label: b.label.clone(),
                degree: b.degree,
            });
        }
    }
    if !r.is_minimal() {
        return Err(FiltrationError::NotMinimal);
    }
    let depth = r.basis().iter().map(|b| -b.degree).max().unwrap_or(0) as usize;
    let levels = (0..=depth + 1)
        .map(|p| {
            Subspace::coordinate(
                r.field(),
                r.dim(),
                r.basis()
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| -b.degree >= p as i64)
                    .map(|(i, _)| i),
            )
        })
        .collect();
    Filtration::new(levels)
}

/// Span of all products `m_2(x, y)` with `x ∈ a`, `y ∈ b`.
pub fn product(r: &AInfCategory, a: &Subspace, b: &Subspace) -> Result<Subspace, FiltrationError> {
    let mut out = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            let v = eval_dense(r, &[x, y]);
            if !is_zero_vector(&v) {
                out.push(v);
            }
        }
    }
    Ok(Subspace::span(r.field(), r.dim(), &out)?)
}

/// Indices of the degree-0 basis elements.
fn degree_zero_part(r: &AInfCategory) -> Vec<usize> {
    (0..r.dim()).filter(|&i| r.degree(i) == 0).collect()
}

/// Kernel of the trace form `(x, y) ↦ tr(L_{xy})` on `span(elements)`, where
/// `L_z` is left multiplication restricted to that span.
fn trace_form_kernel(r: &AInfCategory, elements: &[Vector]) -> Result<Vec<Vector>, FiltrationError> {
    let field = r.field();
    let k = elements.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let span = Subspace::span(field, r.dim(), elements)?;
    // coordinates relative to `elements` (assumed independent)
    let basis_mat = Matrix::from_columns(field, r.dim(), elements)?;
    let coords = |v: &Vector| -> Result<Vector, FiltrationError> {
        basis_mat.solve(v).ok_or_else(|| FiltrationError::NotIdeal(describe(r, v)))
    };
    let trace = |z: &Vector| -> Result<crate::scalar::Scalar, FiltrationError> {
        let mut t = field.zero();
        for (c, e) in elements.iter().enumerate() {
            let img = eval_dense(r, &[z, e]);
            if !span.contains(&img)? {
                return Err(FiltrationError::NotIdeal(describe(r, &img)));
            }
            let cc = coords(&img)?;
            t = &t + &cc[c];
        }
        Ok(t)
    };
    let mut g = Matrix::zeros(field, k, k);
    for u in 0..k {
        for v in 0..k {
            let prod = eval_dense(r, &[&elements[u], &elements[v]]);
            g.set(u, v, trace(&prod)?);
        }
    }
    // x = Σ x_u e_u is in the kernel iff Σ_u x_u G_{uv} = 0 for all v
    Ok(g
        .transpose()
        .nullspace()
        .into_iter()
        .map(|c| {
            let mut v = vec![field.zero(); r.dim()];
            for (u, e) in elements.iter().enumerate() {
                crate::linalg::axpy(&mut v, &c[u], e);
            }
            v
        })
        .collect())
}

/// Jacobson radical of the degree-0 part `R_0` with its product `m_2`,
/// returned as a subspace of the whole algebra.
///
/// In characteristic 0 the radical is the kernel of the trace form
/// `(x, y) ↦ tr(L_{xy})`. The kernel is recomputed on the quotient until it
/// vanishes, which both confirms the result and makes `R_0/J` semisimple by
/// construction.
pub fn radical(r: &AInfCategory) -> Result<Subspace, FiltrationError> {
    require_algebra(r)?;
    if r.field().characteristic() != 0 {
        return Err(FiltrationError::PositiveCharacteristic(r.field().characteristic()));
    }
    let field = r.field();
    let zero_part: Vec<Vector> = degree_zero_part(r)
        .into_iter()
        .map(|i| unit_vector(field, r.dim(), i))
        .collect();
    let r0 = Subspace::span(field, r.dim(), &zero_part)?;
    let mut j = Subspace::span(field, r.dim(), &trace_form_kernel(r, &zero_part)?)?;
    loop {
        if j.is_zero() {
            return Ok(j);
        }
        check_ideal(r, &r0, &j)?;
        let sub = degree_zero_subalgebra(r)?;
        let (quot, pres) = quotient_algebra(&sub, &restrict_to(&sub, r, &j)?)?;
        let reps: Vec<Vector> = (0..quot.dim())
            .map(|i| unit_vector(field, quot.dim(), i))
            .collect();
        let extra = trace_form_kernel(&quot, &reps)?;
        if extra.is_empty() {
            return Ok(j);
        }
        let lifted: Vec<Vector> = extra
            .iter()
            .map(|v| extend_from(&sub, r, &pres.lift(v)))
            .collect();
        j = j.sum(&Subspace::span(field, r.dim(), &lifted)?)?;
    }
}

fn check_ideal(r: &AInfCategory, ambient: &Subspace, j: &Subspace) -> Result<(), FiltrationError> {
    for x in ambient.basis() {
        for y in j.basis() {
            for v in [eval_dense(r, &[x, y]), eval_dense(r, &[y, x])] {
                if !j.contains(&v)? {
                    return Err(FiltrationError::NotIdeal(describe(r, &v)));
                }
            }
        }
    }
    Ok(())
}

/// The degree-0 elements of `r` with `m_2` only.
pub fn degree_zero_subalgebra(r: &AInfCategory) -> Result<AInfCategory, FiltrationError> {
    let keep = degree_zero_part(r);
    let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let basis: Vec<BasisElement> = keep.iter().map(|&i| r.basis()[i].clone()).collect();
    let mut table = BTreeMap::new();
    if let Some(m2) = r.ops().get(&2) {
        for (key, out) in m2 {
            if let (Some(&a), Some(&b)) = (index.get(&key[0]), index.get(&key[1])) {
                let o: Terms = out.iter().filter_map(|(i, x)| index.get(i).map(|&k| (k, x.clone()))).collect();
                table.insert(vec![a, b], o);
            }
        }
    }
    let units = r.units().iter().map(|u| index[u]).collect();
    Ok(AInfCategory::from_parts(
        r.field(),
        r.objects().to_vec(),
        basis,
        units,
        [(2, table)].into_iter().collect(),
    )?)
}

fn restrict_to(sub: &AInfCategory, r: &AInfCategory, s: &Subspace) -> Result<Subspace, FiltrationError> {
    let keep = degree_zero_part(r);
    let vs: Vec<Vector> = s.basis().iter().map(|v| keep.iter().map(|&i| v[i].clone()).collect()).collect();
    Ok(Subspace::span(sub.field(), sub.dim(), &vs)?)
}

fn extend_from(sub: &AInfCategory, r: &AInfCategory, v: &Vector) -> Vector {
    let keep = degree_zero_part(r);
    let mut out = vec![sub.field().zero(); r.dim()];
    for (k, &i) in keep.iter().enumerate() {
        out[i] = v[k].clone();
    }
    out
}

/// `R/I` for a two-sided ideal `I` of every `m_p`, with operations induced on
/// coset representatives. Representatives that are basis elements keep their
/// labels; others are named `v0`, `v1`, ….
pub fn quotient_algebra(
    r: &AInfCategory,
    ideal: &Subspace,
) -> Result<(AInfCategory, QuotientPresentation), FiltrationError> {
    require_algebra(r)?;
    let field = r.field();
    let dim = r.dim();
    let unit = unit_vector(field, dim, r.unit(0));
    let pres = QuotientPresentation::with_preferred(&Subspace::full(field, dim), ideal, &[unit])?;
    if pres.dim() == 0 {
        return Err(FiltrationError::ZeroQuotient);
    }
    let degrees = r.degrees();
    let mut fresh = 0;
    let basis: Vec<BasisElement> = pres
        .representatives()
        .iter()
        .map(|v| {
            let terms = terms_from_dense(v);
            let label = if terms.len() == 1 && terms[0].1.is_one() {
                r.label(terms[0].0).to_string()
            } else {
                fresh += 1;
                format!("v{}", fresh - 1)
            };
            BasisElement {
                label,
                source: 0,
                target: 0,
                degree: crate::linalg::homogeneous_degree(v, &degrees).unwrap_or(0),
            }
        })
        .collect();
    let q = pres.dim();
    let mut ops = BTreeMap::new();
    for &p in r.ops().keys() {
        // ideal property: any slot in I lands in I
        for slot in 0..p {
            for y in ideal.basis() {
                for others in index_tuples(dim, p - 1) {
                    let mut args: Vec<Vector> = others.iter().map(|&i| unit_vector(field, dim, i)).collect();
                    args.insert(slot, y.clone());
                    let refs: Vec<&Vector> = args.iter().collect();
                    let out = eval_dense(r, &refs);
                    if !ideal.contains(&out)? {
                        return Err(FiltrationError::NotIdeal(describe(r, &out)));
                    }
                }
            }
        }
        let mut table = BTreeMap::new();
        for key in index_tuples(q, p) {
            let args: Vec<Vector> = key.iter().map(|&k| pres.representatives()[k].clone()).collect();
            let refs: Vec<&Vector> = args.iter().collect();
            let out = pres.project(&eval_dense(r, &refs));
            let t = terms_from_dense(&out);
            if !t.is_empty() {
                table.insert(key, t);
            }
        }
        ops.insert(p, table);
    }
    let quot = AInfCategory::from_parts(field, r.objects().to_vec(), basis, vec![0], ops)?;
    Ok((quot, pres))
}

/// Parameters of the two-degree filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppendixParams {
    pub kappa: i64,
    /// Radical of `R_0`.
    pub j: Subspace,
    /// Least `a` with `J^a = 0`.
    pub a: usize,
    /// Plateau length `N ≥ (κ+2)(a−1)`.
    pub n_big: usize,
}

/// Filtration of an algebra concentrated in degrees `0` and `−κ`:
/// `F^p = J^p + R_{−κ}` for `p ≤ N` (with `J^0 = R_0`), then
/// `F^{N+q} = Σ_{u+v=q} J^u R_{−κ} J^v`, truncated at the first zero level.
///
/// `N = (κ+2)(a−1)` unless that is smaller than `a` while `R_{−κ} ≠ 0`
/// (only possible for `a = 1`); then `N = a`, so that `F^1 = R_{−κ}` and
/// `R/F^1 = R_0/J` stays semisimple.
pub fn appendix_filtration(r: &AInfCategory, kappa: i64) -> Result<(Filtration, AppendixParams), FiltrationError> {
    require_algebra(r)?;
    if kappa <= 0 {
        return Err(FiltrationError::BadKappa(kappa));
    }
    if r.field().characteristic() != 0 {
        return Err(FiltrationError::PositiveCharacteristic(r.field().characteristic()));
    }
    for b in r.basis() {
        if b.degree != 0 && b.degree != -kappa {
            return Err(FiltrationError::TwoDegreeHypothesis {
                label: b.label.clone(),
                degree: b.degree,
                kappa,
            });
        }
    }
    if !r.is_minimal() {
        return Err(FiltrationError::NotMinimal);
    }
    let field = r.field();
    let dim = r.dim();
    let r0 = Subspace::coordinate(field, dim, degree_zero_part(r));
    let rk = Subspace::coordinate(field, dim, (0..dim).filter(|&i| r.degree(i) == -kappa));
    let j = radical(r)?;

    let mut powers = vec![r0.clone(), j.clone()];
    while !powers.last().unwrap().is_zero() {
        let next = product(r, powers.last().unwrap(), &j)?;
        powers.push(next);
    }
    let a = powers.len() - 1;
    let mut n_big = (kappa as usize + 2) * (a - 1);
    if n_big < a && !rk.is_zero() {
        n_big = a;
    }
    let jpow = |p: usize| -> Subspace { powers.get(p).cloned().unwrap_or_else(|| Subspace::zero(field, dim)) };

    let mut levels = Vec::new();
    for p in 0..=n_big {
        levels.push(jpow(p).sum(&rk)?);
    }
    // J^u R_{−κ} J^v with J^0 acting as the scalars
    let left = |u: usize, s: &Subspace| -> Result<Subspace, FiltrationError> {
        if u == 0 {
            Ok(s.clone())
        } else {
            product(r, &jpow(u), s)
        }
    };
    let right = |s: &Subspace, v: usize| -> Result<Subspace, FiltrationError> {
        if v == 0 {
            Ok(s.clone())
        } else {
            product(r, s, &jpow(v))
        }
    };
    if !levels.last().unwrap().is_zero() {
        let mut q = 1;
        loop {
            let mut lvl = Subspace::zero(field, dim);
            for u in 0..=q {
                let piece = right(&left(u, &rk)?, q - u)?;
                lvl = lvl.sum(&piece)?;
            }
            let done = lvl.is_zero();
            levels.push(lvl);
            if done {
                break;
            }
            q += 1;
        }
    } else {
        // R_{−κ} = 0: truncate at the first vanishing power of J
        while levels.len() >= 2 && levels[levels.len() - 2].is_zero() {
            levels.pop();
        }
    }
    let filtration = Filtration::new(levels)?;
    Ok((
        filtration,
        AppendixParams {
            kappa,
            j,
            a,
            n_big,
        },
    ))
}

/// `J^a` computed by repeated products, for checking nilpotency claims.
pub fn power(r: &AInfCategory, j: &Subspace, a: usize) -> Result<Subspace, FiltrationError> {
    let mut p = Subspace::coordinate(r.field(), r.dim(), degree_zero_part(r));
    for _ in 0..a {
        p = product(r, &p, j)?;
    }
    Ok(p)
}
