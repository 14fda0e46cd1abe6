//! Hochschild cochains with bimodule coefficients, square-zero extensions and
//! deformations by cocycles.
//!
//! A bimodule `M` over `C` is stored through its action maps. Keys are tuples
//! over the combined index space `0..dim C + dim M` (C's basis first, then
//! M's). Each key has exactly one `M` index, and values are vectors in `M`.
//! These are exactly the operations of the square-zero extension `C ⊕ M`
//! with one `M` input.
//!
//! A cochain of total degree `n` has components `φ_k: C^{⊗k} → M` of degree
//! `n − k`. Placed in `E = C ⊕ Σ^{n−2}M` it has the degree `2 − k` of an
//! operation. The differential is the term linear in `φ` of the Stasheff
//! expression for `m^E + φ`, so `m^E + η` is an A∞-structure exactly when
//! `dη = 0`.

use std::collections::BTreeMap;

use rand::Rng;
use thiserror::Error;

use crate::ainf::{insertion_sum, insertion_sum_at, lin_to_terms, AInfCategory, AInfError, BasisElement, Lin, Terms};
use crate::functor::AInfFunctor;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HochschildError {
    #[error("action key {0:?} must contain exactly one module index")]
    BadActionKey(Vec<usize>),
    #[error("action on {0:?} has the wrong degree")]
    ActionDegree(Vec<String>),
    #[error("action on {0:?} is not composable")]
    ActionComposability(Vec<String>),
    #[error("cochain does not vanish on the unit at {0:?}")]
    NotNormalized(Vec<String>),
    #[error("cochain entry {tuple:?} has degree {found}, expected {expected}")]
    CochainDegree { tuple: Vec<String>, found: i64, expected: i64 },
    #[error("cochain key {0:?} is not a composable tuple of the base")]
    CochainKey(Vec<usize>),
    #[error("arity-0 components cannot be added to the operations")]
    ArityZero,
    #[error(transparent)]
    AInf(#[from] AInfError),
}

/// A `C`-bimodule given by its basis and action tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    basis: Vec<BasisElement>,
    actions: BTreeMap<Vec<usize>, Terms>,
}

impl Bimodule {
    pub fn new(c: &AInfCategory, basis: Vec<BasisElement>, actions: BTreeMap<Vec<usize>, Terms>) -> Result<Self, HochschildError> {
        let dc = c.dim();
        let deg = |i: usize| if i < dc { c.degree(i) } else { basis[i - dc].degree };
        let ends = |i: usize| {
            if i < dc {
                (c.basis()[i].source, c.basis()[i].target)
            } else {
                (basis[i - dc].source, basis[i - dc].target)
            }
        };
        let label = |i: usize| {
            if i < dc {
                c.label(i).to_string()
            } else {
                basis[i - dc].label.clone()
            }
        };
        for (key, out) in &actions {
            if key.iter().filter(|&&i| i >= dc).count() != 1 || key.iter().any(|&i| i >= dc + basis.len()) {
                return Err(HochschildError::BadActionKey(key.clone()));
            }
            let labels = || key.iter().map(|&i| label(i)).collect::<Vec<_>>();
            if key.windows(2).any(|w| ends(w[0]).0 != ends(w[1]).1) {
                return Err(HochschildError::ActionComposability(labels()));
            }
            let want = key.iter().map(|&i| deg(i)).sum::<i64>() + 2 - key.len() as i64;
            let (src, tgt) = (ends(key[key.len() - 1]).0, ends(key[0]).1);
            for (m, _) in out {
                let b = basis.get(*m).ok_or_else(|| HochschildError::BadActionKey(key.clone()))?;
                if b.degree != want {
                    return Err(HochschildError::ActionDegree(labels()));
                }
                if (b.source, b.target) != (src, tgt) {
                    return Err(HochschildError::ActionComposability(labels()));
                }
            }
        }
        let actions = actions.into_iter().filter(|(_, t)| !t.is_empty()).collect();
        Ok(Bimodule { basis, actions })
    }

    pub fn zero() -> Self {
        Bimodule {
            basis: Vec::new(),
            actions: BTreeMap::new(),
        }
    }

    /// `M = C` with all of `C`'s operations as actions. Labels get a trailing `'`.
    pub fn diagonal(c: &AInfCategory) -> Self {
        let dc = c.dim();
        let basis = c
            .basis()
            .iter()
            .map(|b| BasisElement {
                label: format!("{}'", b.label),
                ..b.clone()
            })
            .collect();
        let mut actions = BTreeMap::new();
        for table in c.ops().values() {
            for (key, out) in table {
                for u in 0..key.len() {
                    let mut k = key.clone();
                    k[u] += dc;
                    actions.insert(k, out.clone());
                }
            }
        }
        Bimodule { basis, actions }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn actions(&self) -> &BTreeMap<Vec<usize>, Terms> {
        &self.actions
    }

    /// `M ⊕ N`, with `N`'s basis after `M`'s. Clashing labels of `N` get extra `'`s.
    pub fn direct_sum(&self, other: &Bimodule, c: &AInfCategory) -> Self {
        let dc = c.dim();
        let dm = self.dim();
        let mut basis = self.basis.clone();
        let taken: std::collections::BTreeSet<String> = self.basis.iter().chain(c.basis()).map(|b| b.label.clone()).collect();
        basis.extend(other.basis.iter().map(|b| {
            let mut b = b.clone();
            while taken.contains(&b.label) {
                b.label.push('\'');
            }
            b
        }));
        let mut actions = self.actions.clone();
        for (key, out) in &other.actions {
            let k = key.iter().map(|&i| if i >= dc { i + dm } else { i }).collect();
            actions.insert(k, out.iter().map(|(i, x)| (i + dm, x.clone())).collect());
        }
        Bimodule { basis, actions }
    }
}

/// `C ⊕ Σ^{shift} M`: `M`'s basis follows `C`'s with degrees lowered by
/// `shift`. An action with the module argument in slot `u` picks up
/// `(−1)^{shift·(|c_{u+1}| + ⋯ + |c_p|)}`; products with two module inputs vanish.
pub fn square_zero_extension(c: &AInfCategory, m: &Bimodule, shift: i64) -> Result<AInfCategory, HochschildError> {
    let dc = c.dim();
    let mut basis = c.basis().to_vec();
    basis.extend(m.basis.iter().map(|b| BasisElement {
        degree: b.degree - shift,
        ..b.clone()
    }));
    let mut ops = c.ops().clone();
    for (key, out) in &m.actions {
        let u = key.iter().position(|&i| i >= dc).expect("checked on construction");
        let after: i64 = key[u + 1..].iter().map(|&i| c.degree(i)).sum();
        let odd = (shift * after).rem_euclid(2) == 1;
        let t: Terms = out.iter().map(|(i, x)| (dc + i, x.clone().signed(odd))).collect();
        ops.entry(key.len()).or_default().insert(key.clone(), t);
    }
    Ok(AInfCategory::from_parts(c.field(), c.objects().to_vec(), basis, c.units().to_vec(), ops)?)
}

/// A cochain `φ = Σ_k φ_k` of total degree `n` with values in a bimodule.
/// `components[k]` maps composable `k`-tuples of base basis indices to
/// vectors in `M`; arity-0 components are keyed by `[object]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildCochain {
    pub degree: i64,
    pub components: BTreeMap<usize, BTreeMap<Vec<usize>, Terms>>,
}

impl HochschildCochain {
    pub fn zero(degree: i64) -> Self {
        HochschildCochain {
            degree,
            components: BTreeMap::new(),
        }
    }

    /// A single-arity cochain from a table.
    pub fn from_table(degree: i64, arity: usize, table: BTreeMap<Vec<usize>, Terms>) -> Self {
        let table: BTreeMap<_, _> = table.into_iter().filter(|(_, t)| !t.is_empty()).collect();
        let mut components = BTreeMap::new();
        if !table.is_empty() {
            components.insert(arity, table);
        }
        HochschildCochain { degree, components }
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|t| t.is_empty())
    }

    pub fn component(&self, key: &[usize]) -> Option<&Terms> {
        self.components.get(&key.len())?.get(key)
    }

    pub fn scale(&self, x: &Scalar) -> Self {
        let mut out = HochschildCochain::zero(self.degree);
        for (&k, t) in &self.components {
            let mut tt = BTreeMap::new();
            for (key, v) in t {
                let v: Terms = v.iter().map(|(i, y)| (*i, x * y)).filter(|(_, y)| !y.is_zero()).collect();
                if !v.is_empty() {
                    tt.insert(key.clone(), v);
                }
            }
            if !tt.is_empty() {
                out.components.insert(k, tt);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<usize, BTreeMap<Vec<usize>, Lin>> = BTreeMap::new();
        for c in [self, other] {
            for (&k, t) in &c.components {
                for (key, v) in t {
                    let l = acc.entry(k).or_default().entry(key.clone()).or_default();
                    crate::ainf::lin_add_terms(l, &v[0].1.field().one(), v);
                }
            }
        }
        let mut out = HochschildCochain::zero(self.degree);
        for (k, t) in acc {
            let t: BTreeMap<_, _> = t
                .into_iter()
                .map(|(key, l)| (key, lin_to_terms(l)))
                .filter(|(_, v)| !v.is_empty())
                .collect();
            if !t.is_empty() {
                out.components.insert(k, t);
            }
        }
        out
    }

    /// Structural checks: keys composable in `c`, values in the right
    /// hom-space of `m` with degree `Σ|a| + n − k`.
    pub fn validate(&self, c: &AInfCategory, m: &Bimodule) -> Result<(), HochschildError> {
        for (&k, table) in &self.components {
            for (key, out) in table {
                let (src, tgt) = if k == 0 {
                    let o = *key.first().ok_or_else(|| HochschildError::CochainKey(key.clone()))?;
                    if key.len() != 1 || o >= c.objects().len() {
                        return Err(HochschildError::CochainKey(key.clone()));
                    }
                    (o, o)
                } else {
                    if key.len() != k || key.iter().any(|&i| i >= c.dim()) || !c.composable(key) {
                        return Err(HochschildError::CochainKey(key.clone()));
                    }
                    c.output_hom(key)
                };
                let base: i64 = if k == 0 { 0 } else { key.iter().map(|&i| c.degree(i)).sum() };
                let expected = base + self.degree - k as i64;
                for (i, _) in out {
                    let b = m.basis.get(*i).ok_or_else(|| HochschildError::CochainKey(key.clone()))?;
                    if b.degree != expected || (b.source, b.target) != (src, tgt) {
                        return Err(HochschildError::CochainDegree {
                            tuple: if k == 0 { vec![c.objects()[key[0]].clone()] } else { c.labels_of(key) },
                            found: b.degree,
                            expected,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Vanishing whenever a positive-arity component sees a unit.
    pub fn check_normalized(&self, c: &AInfCategory) -> Result<(), HochschildError> {
        for (&k, table) in &self.components {
            if k == 0 {
                continue;
            }
            for key in table.keys() {
                if key.iter().any(|&i| c.is_unit(i)) {
                    return Err(HochschildError::NotNormalized(c.labels_of(key)));
                }
            }
        }
        Ok(())
    }

    fn in_extension(&self, dc: usize) -> BTreeMap<usize, BTreeMap<Vec<usize>, Terms>> {
        self.components
            .iter()
            .map(|(&k, t)| {
                let t = t
                    .iter()
                    .map(|(key, v)| (key.clone(), v.iter().map(|(i, x)| (dc + i, x.clone())).collect()))
                    .collect();
                (k, t)
            })
            .collect()
    }
}

/// All composable `k`-tuples of `c` (for `k = 0`, the objects as `[o]`).
fn tuples(c: &AInfCategory, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return (0..c.objects().len()).map(|o| vec![o]).collect();
    }
    (0..c.dim()).flat_map(|f| c.composable_tuples_from(f, k)).collect()
}

/// `dφ`, a cochain of degree `n + 1`. For an associative base and a
/// degree-`n` cochain of arity `n` this is the classical
/// `a_1 φ(a_2, …) + Σ_i (−1)^i φ(…, a_i a_{i+1}, …) + (−1)^{n+1} φ(…, a_n) a_{n+1}`
/// (with Koszul signs for graded inputs).
pub fn hochschild_differential(c: &AInfCategory, m: &Bimodule, phi: &HochschildCochain) -> Result<HochschildCochain, HochschildError> {
    phi.validate(c, m)?;
    let dc = c.dim();
    let n = phi.degree;
    let e = square_zero_extension(c, m, n - 2)?;
    let phi_e = phi.in_extension(dc);
    let deg = |i: usize| e.degree(i);
    let one = c.field().one();
    // the degree-dependent part matches the classical formula; the
    // tuple-dependent part makes d² = 0 across the changing shifts of M
    let base = n.rem_euclid(2) == 1;
    let arities: Vec<usize> = {
        let mut v = Vec::new();
        for &k in phi.components.keys() {
            for &p in c.ops().keys() {
                v.push(k + p - 1);
            }
        }
        v.sort();
        v.dedup();
        v
    };
    let mut components = BTreeMap::new();
    for nn in arities {
        let mut table = BTreeMap::new();
        for tuple in tuples(c, nn) {
            let mut acc = Lin::new();
            let weight: i64 = if nn == 0 { 0 } else { tuple.iter().map(|&i| c.degree(i)).sum() };
            let sign = one.clone().signed(base ^ ((weight + nn as i64).rem_euclid(2) == 1));
            if nn == 0 {
                // only m_1(φ_0) contributes
                if let Some(v) = phi_e.get(&0).and_then(|t| t.get(&tuple)) {
                    let args: Vec<&[(usize, Scalar)]> = vec![v.as_slice()];
                    let out = e.evaluate(&args);
                    crate::ainf::lin_add_terms(&mut acc, &sign, &out);
                }
            } else {
                let at = |r: usize| {
                    if r == 0 {
                        e.basis()[tuple[0]].target
                    } else {
                        e.basis()[tuple[r - 1]].source
                    }
                };
                let inner_phi = |args: &[usize], obj: usize| -> Option<&Terms> {
                    if args.is_empty() {
                        phi_e.get(&0)?.get(&vec![obj])
                    } else {
                        phi_e.get(&args.len())?.get(args)
                    }
                };
                insertion_sum_at(&tuple, &deg, &at, 0, &inner_phi, &|k: &[usize]| e.op(k), &sign, &mut acc);
                insertion_sum(
                    &tuple,
                    &deg,
                    1,
                    &|k: &[usize], _| c.op(k),
                    &|k: &[usize]| phi_e.get(&k.len())?.get(k),
                    &sign,
                    &mut acc,
                );
            }
            let t: Terms = lin_to_terms(acc)
                .into_iter()
                .map(|(i, x)| {
                    assert!(i >= dc, "linear term lands in the module");
                    (i - dc, x)
                })
                .collect();
            if !t.is_empty() {
                table.insert(tuple, t);
            }
        }
        if !table.is_empty() {
            components.insert(nn, table);
        }
    }
    Ok(HochschildCochain {
        degree: n + 1,
        components,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeformOptions {
    pub require_normalized: bool,
}

impl Default for DeformOptions {
    fn default() -> Self {
        DeformOptions { require_normalized: true }
    }
}

/// `C ⊕ Σ^{n−2}M` with `η` added to the operations on pure-`C` inputs.
pub fn deform_by_cocycle(
    c: &AInfCategory,
    m: &Bimodule,
    eta: &HochschildCochain,
    options: DeformOptions,
) -> Result<AInfCategory, HochschildError> {
    eta.validate(c, m)?;
    if options.require_normalized {
        eta.check_normalized(c)?;
    }
    if eta.components.contains_key(&0) {
        return Err(HochschildError::ArityZero);
    }
    let e = square_zero_extension(c, m, eta.degree - 2)?;
    let mut ops = e.ops().clone();
    for (k, table) in eta.in_extension(c.dim()) {
        let t = ops.entry(k).or_default();
        for (key, v) in table {
            let mut acc = Lin::new();
            if let Some(old) = t.get(&key) {
                crate::ainf::lin_add_terms(&mut acc, &c.field().one(), old);
            }
            crate::ainf::lin_add_terms(&mut acc, &c.field().one(), &v);
            t.insert(key, lin_to_terms(acc));
        }
    }
    Ok(AInfCategory::from_parts(
        e.field(),
        e.objects().to_vec(),
        e.basis().to_vec(),
        e.units().to_vec(),
        ops,
    )?)
}

/// For `η = dφ`, the A∞-isomorphism `F: E_η → E_0` with `F_1 = id` plus
/// `φ_1` and `F_k = φ_k` for `k ≥ 2`, components read in the extensions
/// `C ⊕ Σ^{n−2}M` and signed by `(−1)^{|a_1| + ⋯ + |a_k|}`. For a single
/// arity-1 `φ` on an ungraded algebra this is the strict `1 + φ`.
pub fn coboundary_isomorphism(
    c: &AInfCategory,
    m: &Bimodule,
    phi: &HochschildCochain,
) -> Result<(AInfCategory, AInfCategory, AInfFunctor), HochschildError> {
    let eta = hochschild_differential(c, m, phi)?;
    let deformed = deform_by_cocycle(c, m, &eta, DeformOptions { require_normalized: false })?;
    let plain = square_zero_extension(c, m, eta.degree - 2)?;
    let dc = c.dim();
    let mut components: BTreeMap<usize, BTreeMap<Vec<usize>, Terms>> = BTreeMap::new();
    let ident = components.entry(1).or_default();
    for i in 0..plain.dim() {
        ident.insert(vec![i], vec![(i, c.field().one())]);
    }
    for (k, table) in phi.in_extension(dc) {
        if k == 0 {
            return Err(HochschildError::ArityZero);
        }
        let t = components.entry(k).or_default();
        for (key, v) in table {
            let mut acc = Lin::new();
            if let Some(old) = t.get(&key) {
                crate::ainf::lin_add_terms(&mut acc, &c.field().one(), old);
            }
            let weight: i64 = key.iter().map(|&i| c.degree(i)).sum();
            crate::ainf::lin_add_terms(&mut acc, &c.field().one().signed(weight.rem_euclid(2) == 1), &v);
            t.insert(key, lin_to_terms(acc));
        }
    }
    let object_map = (0..c.objects().len()).collect();
    let f = AInfFunctor::new(&deformed, &plain, object_map, components).expect("indices in range");
    Ok((deformed, plain, f))
}

/// Basis of the cochains of total degree `n` and arity `k`: one per composable
/// tuple (avoiding units when `normalized`) and compatible module basis
/// vector.
pub fn cochain_basis(c: &AInfCategory, m: &Bimodule, n: i64, k: usize, normalized: bool) -> Vec<HochschildCochain> {
    let mut out = Vec::new();
    for key in tuples(c, k) {
        if k > 0 && normalized && key.iter().any(|&i| c.is_unit(i)) {
            continue;
        }
        let (src, tgt, base) = if k == 0 {
            (key[0], key[0], 0)
        } else {
            let (s, t) = c.output_hom(&key);
            (s, t, key.iter().map(|&i| c.degree(i)).sum::<i64>())
        };
        for (j, b) in m.basis.iter().enumerate() {
            if b.source == src && b.target == tgt && b.degree == base + n - k as i64 {
                let table = [(key.clone(), vec![(j, c.field().one())])].into_iter().collect();
                out.push(HochschildCochain::from_table(n, k, table));
            }
        }
    }
    out
}

/// A random integer combination of basis cochains (coefficients in `−2..=2`).
pub fn random_combination<R: Rng>(basis: &[HochschildCochain], degree: i64, field: crate::scalar::ExactField, rng: &mut R) -> HochschildCochain {
    let mut acc = HochschildCochain::zero(degree);
    for b in basis {
        let x = field.from_i64(rng.gen_range(-2..=2));
        if !x.is_zero() {
            acc = acc.add(&b.scale(&x));
        }
    }
    acc
}

/// Basis of the normalized cocycles of total degree `n` and arity `k`.
pub fn cocycle_basis(c: &AInfCategory, m: &Bimodule, n: i64, k: usize) -> Result<Vec<HochschildCochain>, HochschildError> {
    let basis = cochain_basis(c, m, n, k, true);
    let images: Vec<HochschildCochain> =
        crate::par::map(basis.clone(), |b| hochschild_differential(c, m, &b)).into_iter().collect::<Result<_, _>>()?;
    let mut coords: BTreeMap<(usize, Vec<usize>, usize), usize> = BTreeMap::new();
    for img in &images {
        for (&kk, t) in &img.components {
            for (key, v) in t {
                for (i, _) in v {
                    let len = coords.len();
                    coords.entry((kk, key.clone(), *i)).or_insert(len);
                }
            }
        }
    }
    let field = c.field();
    let mut d = Matrix::zeros(field, coords.len(), basis.len());
    for (col, img) in images.iter().enumerate() {
        for (&kk, t) in &img.components {
            for (key, v) in t {
                for (i, x) in v {
                    d.set(coords[&(kk, key.clone(), *i)], col, x.clone());
                }
            }
        }
    }
    Ok(d
        .nullspace()
        .into_iter()
        .map(|z| {
            let mut acc = HochschildCochain::zero(n);
            for (b, x) in basis.iter().zip(&z) {
                if !x.is_zero() {
                    acc = acc.add(&b.scale(x));
                }
            }
            acc
        })
        .collect())
}

/// Every composable `k`-tuple with a unit argument, for explicit
/// normalization checks on arbitrary tables.
pub fn unit_tuples(c: &AInfCategory, k: usize) -> Vec<Vec<usize>> {
    tuples(c, k).into_iter().filter(|t| t.iter().any(|&i| c.is_unit(i))).collect()
}
