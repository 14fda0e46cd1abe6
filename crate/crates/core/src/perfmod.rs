//! Perfect modules as one-sided twisted complexes.
//!
//! Modules over `Γ` are covariant: `P_i = Γ(i, −)`, so `P_i(j) = Γ(i, j)`.
//! These are the representables `hom_C(−, i)` of `C = Γ^op`, and twisted
//! complexes are built over `C`.
//!
//! Conventions:
//! * An entry `(o, k)` stands for `o[k]`; an element `c ∈ hom_C(o_a, o_b)`
//!   viewed as a map `o_a[k_a] → o_b[k_b]` has degree `|c| + k_a − k_b`.
//! * The connection has components `δ_{ba} ∈ hom_C(o_a, o_b)` for `b > a`
//!   only, each of degree one as a map.
//! * Operations on shifted objects are
//!   `b'_p(x_1, …, x_p) = (−1)^{k} b_p(x_1, …, x_p)` in the bar picture, with
//!   `k` the shift of the final target. Twisted operations insert the
//!   connections everywhere: `b^Tw_p(f_1, …, f_p) = Σ b'(δ…δ, f_1, δ…δ, …, f_p, δ…δ)`.
//! * `cone(f: X → Y) = X[1] ⊕ Y` with `X`'s entries first and `f` in the
//!   off-diagonal block.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ainf::{expand, lin_add_terms, lin_to_terms, AInfCategory, AInfError, Lin, Terms};
use crate::auslander::AuslanderCategory;
use crate::filtration::{describe, eval_dense, quotient_algebra, FiltrationError};
use crate::linalg::{unit_vector, Cohomology, FiniteComplex, LinalgError, Matrix, Vector};
use crate::par;
use crate::report::{Check, ValidationReport, Witness};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PerfError {
    #[error("object {0} out of range")]
    ObjectOutOfRange(usize),
    #[error("connection component ({to}, {from}) is not strictly lower triangular")]
    NotLowerTriangular { to: usize, from: usize },
    #[error("component ({to}, {from}) has the wrong degree")]
    BadDegree { to: usize, from: usize },
    #[error("Maurer-Cartan equation fails at ({to}, {from}): {value}")]
    MaurerCartan { to: usize, from: usize, value: String },
    #[error("morphism is not closed")]
    NotClosed,
    #[error("cone needs a degree-0 morphism, got degree {0}")]
    ConeDegree(i64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    AInf(#[from] AInfError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub object: usize,
    pub shift: i64,
}

/// `⊕_a o_a[k_a]` with a strictly lower-triangular connection, keyed by
/// `(target entry, source entry)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    entries: Vec<Entry>,
    delta: BTreeMap<(usize, usize), Terms>,
}

impl TwistedComplex {
    pub fn zero() -> Self {
        TwistedComplex {
            entries: Vec::new(),
            delta: BTreeMap::new(),
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn delta(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.delta
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A homogeneous morphism of twisted complexes, keyed by
/// `(target entry, source entry)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwMorphism {
    pub degree: i64,
    pub entries: BTreeMap<(usize, usize), Terms>,
}

impl TwMorphism {
    pub fn zero(degree: i64) -> Self {
        TwMorphism {
            degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One basis vector of a Hom-complex: a basis element of
/// `hom_C(o_source, o_target)` between the given entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub source: usize,
    pub target: usize,
    pub element: usize,
}

#[derive(Clone, Debug)]
pub struct HomComplex {
    /// Basis of each degree, in the order used by the complex.
    pub basis: BTreeMap<i64, Vec<HomBasis>>,
    pub complex: FiniteComplex,
    pub cohomology: Cohomology,
}

impl HomComplex {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.cohomology.dims()
    }

    /// Coordinates of a morphism in the basis of its degree.
    pub fn coordinates(&self, f: &TwMorphism) -> Vector {
        let basis = self.basis.get(&f.degree).map_or(&[][..], |b| b.as_slice());
        let field = self.complex.field();
        let mut v = vec![field.zero(); basis.len()];
        for (pos, hb) in basis.iter().enumerate() {
            if let Some(t) = f.entries.get(&(hb.target, hb.source)) {
                if let Some((_, x)) = t.iter().find(|(i, _)| *i == hb.element) {
                    v[pos] = x.clone();
                }
            }
        }
        v
    }

    pub fn morphism(&self, degree: i64, v: &[Scalar]) -> TwMorphism {
        let mut entries: BTreeMap<(usize, usize), Lin> = BTreeMap::new();
        if let Some(basis) = self.basis.get(&degree) {
            for (hb, x) in basis.iter().zip(v) {
                if !x.is_zero() {
                    entries
                        .entry((hb.target, hb.source))
                        .or_default()
                        .insert(hb.element, x.clone());
                }
            }
        }
        TwMorphism {
            degree,
            entries: entries.into_iter().map(|(k, l)| (k, lin_to_terms(l))).collect(),
        }
    }
}

/// Twisted complexes over `C = Γ^op` for a finite A∞-category `Γ`.
#[derive(Clone, Debug)]
pub struct TwistedCategory {
    gamma: AInfCategory,
    c: AInfCategory,
}

fn bar_parity(cat: &AInfCategory, key: &[usize]) -> bool {
    let n = key.len();
    let e: i64 = key.iter().enumerate().map(|(j, &k)| (n - 1 - j) as i64 * cat.degree(k)).sum();
    e.rem_euclid(2) == 1
}

impl TwistedCategory {
    pub fn new(gamma: &AInfCategory) -> Result<Self, PerfError> {
        Ok(TwistedCategory {
            gamma: gamma.clone(),
            c: gamma.opposite()?,
        })
    }

    pub fn gamma(&self) -> &AInfCategory {
        &self.gamma
    }

    /// The category the complexes are built over.
    pub fn base(&self) -> &AInfCategory {
        &self.c
    }

    fn check_object(&self, i: usize) -> Result<(), PerfError> {
        if i < self.c.objects().len() {
            Ok(())
        } else {
            Err(PerfError::ObjectOutOfRange(i))
        }
    }

    /// `P_i[shift]`.
    pub fn representable(&self, i: usize, shift: i64) -> Result<TwistedComplex, PerfError> {
        self.check_object(i)?;
        Ok(TwistedComplex {
            entries: vec![Entry { object: i, shift }],
            delta: BTreeMap::new(),
        })
    }

    /// Validates shape, degrees and the Maurer-Cartan equation.
    pub fn twisted_complex(
        &self,
        entries: Vec<Entry>,
        delta: BTreeMap<(usize, usize), Terms>,
    ) -> Result<TwistedComplex, PerfError> {
        for e in &entries {
            self.check_object(e.object)?;
        }
        let delta: BTreeMap<_, _> = delta.into_iter().filter(|(_, t)| !t.is_empty()).collect();
        for (&(b, a), t) in &delta {
            if b <= a || b >= entries.len() {
                return Err(PerfError::NotLowerTriangular { to: b, from: a });
            }
            let (ea, eb) = (entries[a], entries[b]);
            let want = 1 + eb.shift - ea.shift;
            let ok = t.iter().all(|(c, _)| {
                let el = &self.c.basis()[*c];
                el.source == ea.object && el.target == eb.object && el.degree == want
            });
            if !ok {
                return Err(PerfError::BadDegree { to: b, from: a });
            }
        }
        let x = TwistedComplex { entries, delta };
        let mc = self.b_tw(&[&x], &[]);
        if let Some(((b, a), t)) = mc.into_iter().next() {
            return Err(PerfError::MaurerCartan {
                to: b,
                from: a,
                value: format!("{:?}", self.c.format_terms(&t)),
            });
        }
        Ok(x)
    }

    /// `b^Tw_p(f_1, …, f_p)` with `f_u: X^u → X^{u−1}`; `complexes` lists
    /// `X^0, …, X^p`. With `p = 0` this is the Maurer-Cartan expression.
    pub fn b_tw(&self, complexes: &[&TwistedComplex], fs: &[&TwMorphism]) -> BTreeMap<(usize, usize), Terms> {
        let mut out: BTreeMap<(usize, usize), Lin> = BTreeMap::new();
        let bound = self.c.arity_bound();
        let mut word: Vec<&Terms> = Vec::new();
        for start in 0..complexes[0].len() {
            self.walk(complexes, fs, bound, start, 0, start, &mut word, &mut out);
        }
        out.into_iter()
            .map(|(k, l)| (k, lin_to_terms(l)))
            .filter(|(_, t)| !t.is_empty())
            .collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn walk<'a>(
        &self,
        complexes: &[&'a TwistedComplex],
        fs: &[&'a TwMorphism],
        bound: usize,
        start: usize,
        u: usize,
        e: usize,
        word: &mut Vec<&'a Terms>,
        out: &mut BTreeMap<(usize, usize), Lin>,
    ) {
        let p = fs.len();
        if u == p && !word.is_empty() {
            let shift = complexes[0].entries[start].shift;
            let value = self.bar_eval(word, shift.rem_euclid(2) == 1);
            if !value.is_empty() {
                let acc = out.entry((start, e)).or_default();
                lin_add_terms(acc, &self.c.field().one(), &value);
            }
        }
        if word.len() >= bound {
            return;
        }
        let x = complexes[u];
        for (&(b, a), t) in x.delta.range((e, 0)..(e + 1, 0)) {
            debug_assert_eq!(b, e);
            word.push(t);
            self.walk(complexes, fs, bound, start, u, a, word, out);
            word.pop();
        }
        if u < p {
            for (&(b, a), t) in fs[u].entries.range((e, 0)..(e + 1, 0)) {
                debug_assert_eq!(b, e);
                word.push(t);
                self.walk(complexes, fs, bound, start, u + 1, a, word, out);
                word.pop();
            }
        }
    }

    fn bar_eval(&self, word: &[&Terms], negate: bool) -> Terms {
        let n = word.len();
        let Some(table) = self.c.ops().get(&n) else {
            return Vec::new();
        };
        let args: Vec<&[(usize, Scalar)]> = word.iter().map(|t| t.as_slice()).collect();
        let one = self.c.field().one().signed(negate);
        let mut acc = Lin::new();
        let mut key = vec![0; n];
        expand(&args, 0, &one, &mut key, &mut |k, coeff| {
            if let Some(o) = table.get(k) {
                lin_add_terms(&mut acc, &coeff.clone().signed(bar_parity(&self.c, k)), o);
            }
        });
        lin_to_terms(acc)
    }

    /// The Hom-complex `hom(X, Y)` with differential `b^Tw_1`.
    pub fn hom_complex(&self, x: &TwistedComplex, y: &TwistedComplex) -> HomComplex {
        let field = self.c.field();
        let mut basis: BTreeMap<i64, Vec<HomBasis>> = BTreeMap::new();
        for (a, ea) in x.entries.iter().enumerate() {
            for (b, eb) in y.entries.iter().enumerate() {
                for &c in self.c.hom(ea.object, eb.object) {
                    let q = self.c.degree(c) + ea.shift - eb.shift;
                    basis.entry(q).or_default().push(HomBasis {
                        source: a,
                        target: b,
                        element: c,
                    });
                }
            }
        }
        let position: BTreeMap<(usize, usize, usize), usize> = basis
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(i, hb)| ((hb.source, hb.target, hb.element), i)))
            .collect();
        let mut differentials = BTreeMap::new();
        for (&q, bq) in &basis {
            let rows = basis.get(&(q + 1)).map_or(0, |v| v.len());
            let mut d = Matrix::zeros(field, rows, bq.len());
            for (col, hb) in bq.iter().enumerate() {
                let f = TwMorphism {
                    degree: q,
                    entries: [((hb.target, hb.source), vec![(hb.element, field.one())])].into_iter().collect(),
                };
                for (&(b, a), t) in &self.b_tw(&[y, x], &[&f]) {
                    for (c, v) in t {
                        let row = position[&(a, b, *c)];
                        d.set(row, col, v.clone());
                    }
                }
            }
            if rows > 0 {
                differentials.insert(q, d);
            }
        }
        let dims = basis.iter().map(|(q, v)| (*q, v.len())).collect();
        let complex = FiniteComplex::new(field, dims, differentials).expect("b^Tw_1 squares to zero");
        let cohomology = complex.cohomology();
        HomComplex {
            basis,
            complex,
            cohomology,
        }
    }

    /// `d f = b^Tw_1(f)` for `f: X → Y`.
    pub fn differential(&self, x: &TwistedComplex, y: &TwistedComplex, f: &TwMorphism) -> TwMorphism {
        TwMorphism {
            degree: f.degree + 1,
            entries: self.b_tw(&[y, x], &[f]),
        }
    }

    /// `m_2^Tw(f, g) = f ∘ g` for `g: X → Y`, `f: Y → Z`.
    pub fn compose(
        &self,
        x: &TwistedComplex,
        y: &TwistedComplex,
        z: &TwistedComplex,
        f: &TwMorphism,
        g: &TwMorphism,
    ) -> TwMorphism {
        let odd = f.degree.rem_euclid(2) == 1;
        let entries = self
            .b_tw(&[z, y, x], &[f, g])
            .into_iter()
            .map(|(k, t)| (k, t.into_iter().map(|(i, v)| (i, v.signed(odd))).collect()))
            .collect();
        TwMorphism {
            degree: f.degree + g.degree,
            entries,
        }
    }

    /// `cone(f) = X[1] ⊕ Y` for a closed degree-0 `f: X → Y`.
    pub fn cone(&self, x: &TwistedComplex, y: &TwistedComplex, f: &TwMorphism) -> Result<TwistedComplex, PerfError> {
        if f.degree != 0 {
            return Err(PerfError::ConeDegree(f.degree));
        }
        if !self.differential(x, y, f).is_zero() {
            return Err(PerfError::NotClosed);
        }
        let off = x.len();
        let mut entries: Vec<Entry> = x
            .entries
            .iter()
            .map(|e| Entry {
                object: e.object,
                shift: e.shift + 1,
            })
            .collect();
        entries.extend_from_slice(&y.entries);
        let mut delta = x.delta.clone();
        for (&(b, a), t) in &y.delta {
            delta.insert((b + off, a + off), t.clone());
        }
        for (&(b, a), t) in &f.entries {
            delta.insert((b + off, a), t.clone());
        }
        self.twisted_complex(entries, delta)
    }

    /// The module `X` evaluated at `j`: `⊕_a Γ(o_a, j)` with `Γ(o_a, j)` in
    /// degrees shifted down by `k_a`, and differential from the right
    /// `Γ`-action through the connection,
    /// `d x = Σ ± m^Γ_{p+1}(x, δ, …, δ)`.
    pub fn evaluate_at(&self, x: &TwistedComplex, j: usize) -> FiniteComplex {
        let g = &self.gamma;
        let field = g.field();
        let mut basis: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (a, e) in x.entries.iter().enumerate() {
            for &el in g.hom(e.object, j) {
                basis.entry(g.degree(el) - e.shift).or_default().push((a, el));
            }
        }
        let position: BTreeMap<(usize, usize), usize> = basis
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(i, &k)| (k, i)))
            .collect();
        let mut differentials = BTreeMap::new();
        for (&q, bq) in &basis {
            let rows = basis.get(&(q + 1)).map_or(0, |v| v.len());
            if rows == 0 {
                continue;
            }
            let mut d = Matrix::zeros(field, rows, bq.len());
            for (col, &(a, el)) in bq.iter().enumerate() {
                let mut acc: BTreeMap<usize, Lin> = BTreeMap::new();
                let x_terms = vec![(el, field.one())];
                let mut chain = vec![&x_terms];
                self.right_action(x, a, &mut chain, &mut acc);
                for (b, l) in acc {
                    for (c, v) in lin_to_terms(l) {
                        d.set(position[&(b, c)], col, v);
                    }
                }
            }
            differentials.insert(q, d);
        }
        let dims = basis.iter().map(|(q, v)| (*q, v.len())).collect();
        FiniteComplex::new(field, dims, differentials).expect("module differential squares to zero")
    }

    /// Adds `±m^Γ(x, δ_{c_1 a}, δ_{c_2 c_1}, …)` for every chain leaving entry `a`.
    fn right_action<'a>(
        &self,
        x: &'a TwistedComplex,
        a: usize,
        chain: &mut Vec<&'a Terms>,
        acc: &mut BTreeMap<usize, Lin>,
    ) {
        let g = &self.gamma;
        if chain.len() >= g.arity_bound() {
            return;
        }
        for (&(b, src), t) in &x.delta {
            if src != a {
                continue;
            }
            chain.push(t);
            let n = chain.len();
            if let Some(table) = g.ops().get(&n) {
                let args: Vec<&[(usize, Scalar)]> = chain.iter().map(|t| t.as_slice()).collect();
                let shift_odd = x.entries[b].shift.rem_euclid(2) == 1;
                let arity_odd = ((n - 1) * (n + 2) / 2) % 2 == 1;
                let lin = acc.entry(b).or_default();
                let mut key = vec![0; n];
                expand(&args, 0, &g.field().one(), &mut key, &mut |k, coeff| {
                    if let Some(o) = table.get(k) {
                        // reversed word in C is (δ…δ, x); its bar sign and the
                        // opposite sign, then the shift of the target entry
                        let rev: Vec<usize> = k.iter().rev().copied().collect();
                        let mut sigma = 0i64;
                        for u in 0..n {
                            for v in u + 1..n {
                                sigma += g.degree(k[u]) * g.degree(k[v]);
                            }
                        }
                        let odd = bar_parity(g, &rev) ^ (sigma.rem_euclid(2) == 1) ^ arity_odd ^ shift_odd;
                        lin_add_terms(lin, &coeff.clone().signed(odd), o);
                    }
                });
            }
            self.right_action(x, b, chain, acc);
            chain.pop();
        }
    }

    /// A random twisted complex: a shifted representable followed by
    /// `steps` cones of random closed degree-0 maps to or from further
    /// shifted representables.
    pub fn random_complex<R: Rng>(&self, steps: usize, rng: &mut R) -> TwistedComplex {
        let field = self.c.field();
        let objects = self.c.objects().len();
        let mut x = self
            .representable(rng.gen_range(0..objects), rng.gen_range(-1..=1))
            .expect("object in range");
        for _ in 0..steps {
            let y = self
                .representable(rng.gen_range(0..objects), rng.gen_range(-1..=1))
                .expect("object in range");
            let forward = rng.gen_bool(0.5);
            let (src, tgt) = if forward { (&x, &y) } else { (&y, &x) };
            let h = self.hom_complex(src, tgt);
            let cycles = h.complex.differential(0).kernel();
            let mut v = vec![field.zero(); h.complex.dim(0)];
            for z in cycles.basis() {
                crate::linalg::axpy(&mut v, &field.from_i64(rng.gen_range(-2..=2)), z);
            }
            let f = h.morphism(0, &v);
            x = self.cone(src, tgt, &f).expect("closed degree-0 maps have cones");
        }
        x
    }
}

/// `H^*` of a one-object category's `m_1`.
pub fn algebra_cohomology(r: &AInfCategory) -> Cohomology {
    let field = r.field();
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for k in 0..r.dim() {
        by_degree.entry(r.degree(k)).or_default().push(k);
    }
    let mut differentials = BTreeMap::new();
    for (&q, cols) in &by_degree {
        let Some(rows) = by_degree.get(&(q + 1)) else {
            continue;
        };
        let mut d = Matrix::zeros(field, rows.len(), cols.len());
        for (ci, &k) in cols.iter().enumerate() {
            for (i, v) in r.op(&[k]).cloned().unwrap_or_default() {
                let ri = rows.iter().position(|&x| x == i).expect("m_1 has degree 1");
                d.set(ri, ci, v);
            }
        }
        differentials.insert(q, d);
    }
    let dims = by_degree.iter().map(|(q, v)| (*q, v.len())).collect();
    FiniteComplex::new(field, dims, differentials)
        .expect("m_1 squares to zero")
        .cohomology()
}

/// Which algebra `End^*(S_i)` was compared with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndomorphismComparison {
    /// Structure constants of the product matched those of `H^*(R̄)^op`.
    OppositeAlgebra,
    /// `m_1 ≠ 0` on `R`: only graded dimensions were compared.
    DimensionsOnly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SodReport {
    pub n: usize,
    /// Graded dimensions of `H^*(R̄)`.
    pub rbar: BTreeMap<i64, usize>,
    /// `p_to_s[j][i]` = graded dims of `H^* hom(P_j, S_i)`.
    pub p_to_s: Vec<Vec<BTreeMap<i64, usize>>>,
    /// `s_to_s[j][i]` = graded dims of `H^* hom(S_j, S_i)`.
    pub s_to_s: Vec<Vec<BTreeMap<i64, usize>>>,
    pub endomorphisms: EndomorphismComparison,
    /// How each `P_i` is built from the `S`'s by triangles.
    pub generation: Vec<String>,
    pub report: ValidationReport,
}

impl SodReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    /// Total dimensions, `[j][i]`.
    pub fn totals(table: &[Vec<BTreeMap<i64, usize>>]) -> Vec<Vec<usize>> {
        table.iter().map(|row| row.iter().map(|m| m.values().sum()).collect()).collect()
    }
}

/// The representables, the maps `ψ_i` and the cones `S_i` of an Auslander
/// category.
pub struct AuslanderModules<'a> {
    pub auslander: &'a AuslanderCategory,
    pub tw: TwistedCategory,
    pub p: Vec<TwistedComplex>,
    pub s: Vec<TwistedComplex>,
}

impl<'a> AuslanderModules<'a> {
    pub fn new(a: &'a AuslanderCategory) -> Result<Self, PerfError> {
        let tw = TwistedCategory::new(a.gamma())?;
        let n = a.n();
        let p: Vec<TwistedComplex> = (0..n).map(|i| tw.representable(i, 0)).collect::<Result<_, _>>()?;
        let mut s = Vec::with_capacity(n);
        for i in 0..n {
            if i + 1 < n {
                s.push(tw.cone(&p[i + 1], &p[i], &psi(a, i)?)?);
            } else {
                s.push(tw.cone(&TwistedComplex::zero(), &p[i], &TwMorphism::zero(0))?);
            }
        }
        Ok(AuslanderModules { auslander: a, tw, p, s })
    }

    /// `Φ(r)`: right multiplication by `r ∈ R` on `S_i`, diagonal in the
    /// entries, with a sign on the shifted entry.
    pub fn right_multiplication(&self, i: usize, r: &[Scalar]) -> Option<TwMorphism> {
        let a = self.auslander;
        let degree = crate::linalg::homogeneous_degree(r, &a.base().degrees()).unwrap_or(0);
        let mut entries = BTreeMap::new();
        for (pos, e) in self.s[i].entries.iter().enumerate() {
            let t = a.class_of(e.object, e.object, r)?;
            let odd = e.shift.rem_euclid(2) == 1;
            let t: Terms = t.into_iter().map(|(k, v)| (k, v.signed(odd))).collect();
            if !t.is_empty() {
                entries.insert((pos, pos), t);
            }
        }
        Some(TwMorphism { degree, entries })
    }
}

/// `ψ_i: P_{i+1} → P_i`, the class of `1` in `Γ(i, i+1) = hom_C(i+1, i)`.
pub fn psi(a: &AuslanderCategory, i: usize) -> Result<TwMorphism, PerfError> {
    if i + 1 >= a.n() {
        return Err(PerfError::ObjectOutOfRange(i));
    }
    let r = a.base();
    let one = unit_vector(r.field(), r.dim(), r.unit(0));
    let t = a.class_of(i, i + 1, &one).expect("F^0 is everything");
    Ok(TwMorphism {
        degree: 0,
        entries: [((0, 0), t)].into_iter().collect(),
    })
}

fn dims_witness(tuple: Vec<String>, got: &BTreeMap<i64, usize>, note: &str) -> Witness {
    Witness {
        arity: 2,
        tuple,
        discrepancy: got.iter().map(|(q, d)| (format!("H^{q}"), d.to_string())).collect(),
        note: note.to_string(),
    }
}

/// Hom tables between the `P`'s and `S`'s and the semi-orthogonality
/// verdict: `Hom(P_j, S_i) = 0` and `Hom(S_j, S_i) = 0` for `j > i`,
/// `Hom(P_i, S_i) ≅ H^*(R̄)` and `End(S_i) ≅ H^*(R̄)^op` as algebras.
pub fn sod_report(a: &AuslanderCategory) -> Result<SodReport, PerfError> {
    let n = a.n();
    let m = AuslanderModules::new(a)?;
    let r = a.base();
    let (rbar, pres) = quotient_algebra(r, a.filtration().level(1))?;
    let h_rbar = algebra_cohomology(&rbar);
    let rbar_dims = h_rbar.dims();

    let cells: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..n).map(move |i| (j, i))).collect();
    let computed = par::map(cells.clone(), |(j, i)| {
        let ps = m.tw.hom_complex(&m.p[j], &m.s[i]).dims();
        let ss = m.tw.hom_complex(&m.s[j], &m.s[i]).dims();
        let eval = m.tw.evaluate_at(&m.s[i], j);
        let chi = (
            eval.euler_characteristic(),
            m.tw.evaluate_at(&m.p[i], j).euler_characteristic(),
            if i + 1 < n { m.tw.evaluate_at(&m.p[i + 1], j).euler_characteristic() } else { 0 },
        );
        (ps, ss, eval.cohomology().dims(), chi)
    });
    let mut p_to_s = vec![vec![BTreeMap::new(); n]; n];
    let mut s_to_s = vec![vec![BTreeMap::new(); n]; n];
    let mut below_ps = Check::new("hom(P_j, S_i) = 0 for j > i");
    let mut diag_ps = Check::new("hom(P_i, S_i) = H(Rbar)");
    let mut below_ss = Check::new("hom(S_j, S_i) = 0 for j > i");
    let mut yoneda = Check::new("yoneda");
    let mut euler = Check::new("triangle euler characteristics");
    for ((j, i), (ps, ss, eval, chi)) in cells.into_iter().zip(computed) {
        let label = vec![format!("{j}"), format!("{i}")];
        if j > i && !ps.is_empty() {
            below_ps.fail(dims_witness(label.clone(), &ps, "hom(P_j, S_i)"));
        }
        if j == i && ps != rbar_dims {
            diag_ps.fail(dims_witness(label.clone(), &ps, "hom(P_i, S_i)"));
        }
        if j > i && !ss.is_empty() {
            below_ss.fail(dims_witness(label.clone(), &ss, "hom(S_j, S_i)"));
        }
        if ps != eval {
            yoneda.fail(dims_witness(label.clone(), &eval, "S_i evaluated at j"));
        }
        if chi.0 != chi.1 - chi.2 {
            euler.fail(Witness {
                arity: 2,
                tuple: label,
                discrepancy: vec![("chi S_i(j)".into(), chi.0.to_string()), ("chi P_i(j) - chi P_i+1(j)".into(), (chi.1 - chi.2).to_string())],
                note: String::new(),
            });
        }
        p_to_s[j][i] = ps;
        s_to_s[j][i] = ss;
    }

    let (endomorphisms, end_check) = if r.is_minimal() {
        (EndomorphismComparison::OppositeAlgebra, endomorphism_algebra_check(&m, &rbar, &pres, &h_rbar))
    } else {
        let mut c = Check::new("End(S_i) = H(Rbar)^op");
        for i in 0..n {
            if s_to_s[i][i] != rbar_dims {
                c.fail(dims_witness(vec![i.to_string(), i.to_string()], &s_to_s[i][i], "End(S_i)"));
            }
        }
        (EndomorphismComparison::DimensionsOnly, c)
    };

    let mut generation = vec![format!("P_{} = S_{}", n - 1, n - 1)];
    for i in (0..n.saturating_sub(1)).rev() {
        generation.push(format!("P_{} -> P_{} -> S_{}: P_{} = cone(S_{}[-1] -> P_{})", i + 1, i, i, i, i, i + 1));
    }
    Ok(SodReport {
        n,
        rbar: rbar_dims,
        p_to_s,
        s_to_s,
        endomorphisms,
        generation,
        report: ValidationReport {
            checks: vec![below_ps, diag_ps, below_ss, end_check, yoneda, euler],
            minimal: None,
        },
    })
}

/// `Φ: H^*(R̄) → H^* End(S_i)` on cocycle representatives lifted to `R`:
/// closed images, bijective on classes, and `Φ(x)Φ(y) = ±Φ(yx)`.
fn endomorphism_algebra_check(
    m: &AuslanderModules<'_>,
    rbar: &AInfCategory,
    pres: &crate::linalg::QuotientPresentation,
    h: &Cohomology,
) -> Check {
    let mut check = Check::new("End(S_i) = H(Rbar)^op");
    let field = rbar.field();
    // (degree, R̄ coordinates, lift to R)
    let mut reps: Vec<(i64, Vector, Vector)> = Vec::new();
    for &q in h.dims().keys() {
        for v in h.representatives(q) {
            reps.push((q, v.clone(), pres.lift(v)));
        }
    }
    for i in 0..m.s.len() {
        let s = &m.s[i];
        let end = m.tw.hom_complex(s, s);
        let fail = |check: &mut Check, note: String| {
            check.fail(Witness {
                arity: 1,
                tuple: vec![format!("S_{i}")],
                discrepancy: Vec::new(),
                note,
            })
        };
        let mut images: Vec<(i64, Vector, TwMorphism)> = Vec::new();
        for (q, _, lift) in &reps {
            match m.right_multiplication(i, lift) {
                Some(phi) if m.tw.differential(s, s, &phi).is_zero() => {
                    let coords = end.coordinates(&phi);
                    let class = end.cohomology.class_of(*q, &coords).unwrap_or_default();
                    images.push((*q, class, phi));
                }
                _ => fail(&mut check, format!("image of a class of degree {q} is not closed")),
            }
        }
        if images.len() != reps.len() {
            continue;
        }
        // bijectivity, degree by degree
        for (&q, &d) in h.dims().iter() {
            let classes: Vec<Vector> = images.iter().filter(|x| x.0 == q).map(|x| x.1.clone()).collect();
            let rank = Matrix::from_rows(field, end.cohomology.dim(q), &classes).map_or(0, |mm| mm.rank());
            if rank != d || end.cohomology.dim(q) != d {
                fail(&mut check, format!("classes of degree {q} do not match"));
            }
        }
        // multiplicativity against the opposite product of R̄
        for (x_idx, (qx, vx, _)) in reps.iter().enumerate() {
            for (y_idx, (qy, vy, _)) in reps.iter().enumerate() {
                let prod = m.tw.compose(s, s, s, &images[x_idx].2, &images[y_idx].2);
                let lhs = end.cohomology.class_of(qx + qy, &end.coordinates(&prod)).unwrap_or_default();
                let yx = eval_dense(rbar, &[vy, vx]);
                let odd = (qx * qy).rem_euclid(2) == 1;
                let yx: Vector = yx.into_iter().map(|c| c.signed(odd)).collect();
                let expected = match m.right_multiplication(i, &pres.lift(&yx)) {
                    Some(phi) => end.cohomology.class_of(qx + qy, &end.coordinates(&phi)).unwrap_or_default(),
                    None => Vec::new(),
                };
                if lhs != expected {
                    check.fail(Witness {
                        arity: 2,
                        tuple: vec![format!("S_{i}"), describe(rbar, vx), describe(rbar, vy)],
                        discrepancy: Vec::new(),
                        note: "product of images differs from the image of the opposite product".into(),
                    });
                }
            }
        }
    }
    check
}
