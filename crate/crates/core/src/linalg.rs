//! Exact graded linear algebra: echelon forms, subspaces, quotients and the
//! cohomology of finite cochain complexes.
//!
//! Vectors are dense coordinate vectors over a fixed ambient basis. A
//! [`Subspace`] is stored in reduced row echelon form, which makes equality of
//! subspaces a plain comparison of their echelon rows.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::scalar::{ExactField, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("denominator is not contained in numerator (witness {witness:?})")]
    NotContained { witness: Vec<String> },
    #[error("d∘d ≠ 0 in degree {degree}: entry ({row}, {col}) is {value}")]
    DifferentialNotSquareZero {
        degree: i64,
        row: usize,
        col: usize,
        value: String,
    },
    #[error("differential in degree {degree} has shape {found:?}, expected {expected:?}")]
    BadDifferentialShape {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
}

pub fn zero_vector(field: ExactField, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: ExactField, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub fn scale(v: &[Scalar], a: &Scalar) -> Vector {
    v.iter().map(|x| a * x).collect()
}

pub fn vector_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// A dense matrix with exact entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: ExactField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: ExactField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: ExactField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: ExactField, cols: usize, rows: &[Vector]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(field: ExactField, rows: usize, cols: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        let v = cur + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            let pivot_row: Vector = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        let v = self.get(i, j) - &(&f * &pivot_row[j]);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{ v : self · v = 0 }`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = zero_vector(self.field, self.cols);
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Some solution of `self · x = v` (free variables set to zero).
    pub fn solve(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.rows, "right-hand side dimension mismatch");
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, v[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.field, self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Column space as a subspace of the codomain.
    pub fn image(&self) -> Subspace {
        let cols: Vec<Vector> = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::span(self.field, self.rows, &cols).expect("columns have matching length")
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(self.field, self.cols, &self.nullspace()).expect("kernel vectors")
    }
}

/// A finite graded vector space with a labeled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    labels: Vec<String>,
    degrees: Vec<i64>,
}

impl GradedSpace {
    pub fn new(labels: Vec<String>, degrees: Vec<i64>) -> Result<Self, LinalgError> {
        if labels.len() != degrees.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: labels.len(),
                found: degrees.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LinalgError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GradedSpace { labels, degrees })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree_dims(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for d in &self.degrees {
            *m.entry(*d).or_insert(0) += 1;
        }
        m
    }
}

/// A subspace of `field^ambient`, held as the rows of its reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: ExactField,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: ExactField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: ExactField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: (0..ambient).map(|i| unit_vector(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of `vectors`, in reduced echelon form.
    pub fn span(field: ExactField, ambient: usize, vectors: &[Vector]) -> Result<Self, LinalgError> {
        let mut m = Matrix::from_rows(field, ambient, vectors)?;
        let pivots = m.rref();
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Ok(Subspace {
            field,
            ambient,
            rows,
            pivots,
        })
    }

    /// Span of a set of ambient basis vectors.
    pub fn coordinate(field: ExactField, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let idx: BTreeSet<usize> = indices.into_iter().collect();
        let rows = idx.iter().map(|&i| unit_vector(field, ambient, i)).collect();
        Subspace {
            field,
            ambient,
            rows,
            pivots: idx.into_iter().collect(),
        }
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        self.check_len(v)?;
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = r[p].clone();
            if !f.is_zero() {
                axpy(&mut r, &-f, row);
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(is_zero_vector(&self.reduce(v)?))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// First echelon vector of `self` not contained in `other`.
    pub fn find_outside(&self, other: &Subspace) -> Result<Option<Vector>, LinalgError> {
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(Some(r.clone()));
            }
        }
        Ok(None)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        Ok(self.find_outside(other)?.is_none())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::span(self.field, self.ambient, &v)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if other.ambient != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        // a·A = b·B  <=>  [A; -B]^T (a, b) = 0
        let mut cols = self.rows.clone();
        cols.extend(other.rows.iter().map(|r| scale(r, &-self.field.one())));
        if cols.is_empty() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let m = Matrix::from_columns(self.field, self.ambient, &cols)?;
        let vecs: Vec<Vector> = m
            .nullspace()
            .into_iter()
            .map(|c| {
                let mut v = zero_vector(self.field, self.ambient);
                for (k, r) in self.rows.iter().enumerate() {
                    axpy(&mut v, &c[k], r);
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.ambient, &vecs)
    }

    /// True when every echelon row is homogeneous for the given degrees.
    /// A subspace is graded exactly when its reduced echelon basis is.
    pub fn is_graded(&self, degrees: &[i64]) -> bool {
        self.rows.iter().all(|r| homogeneous_degree(r, degrees).is_some() || is_zero_vector(r))
    }

    /// Dimension of each homogeneous component (meaningful for graded subspaces).
    pub fn degree_dims(&self, degrees: &[i64]) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for r in &self.rows {
            if let Some(d) = homogeneous_degree(r, degrees) {
                *m.entry(d).or_insert(0) += 1;
            }
        }
        m
    }
}

/// Degree of a nonzero homogeneous vector.
pub fn homogeneous_degree(v: &[Scalar], degrees: &[i64]) -> Option<i64> {
    let mut deg = None;
    for (x, d) in v.iter().zip(degrees) {
        if x.is_zero() {
            continue;
        }
        match deg {
            None => deg = Some(*d),
            Some(e) if e != *d => return None,
            _ => {}
        }
    }
    deg
}

/// `numerator / denominator` with chosen coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    numerator: Subspace,
    denominator: Subspace,
    representatives: Vec<Vector>,
    projection: Matrix,
    lift: Matrix,
}

impl QuotientPresentation {
    pub fn new(numerator: &Subspace, denominator: &Subspace) -> Result<Self, LinalgError> {
        Self::with_preferred(numerator, denominator, &[])
    }

    /// Like [`QuotientPresentation::new`], but tries the `preferred` vectors
    /// first when choosing coset representatives. Standard basis vectors are
    /// tried next, then the echelon basis of the numerator; representatives
    /// are therefore homogeneous whenever the inputs are graded.
    pub fn with_preferred(
        numerator: &Subspace,
        denominator: &Subspace,
        preferred: &[Vector],
    ) -> Result<Self, LinalgError> {
        let field = numerator.field;
        let n = numerator.ambient;
        if denominator.ambient != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: denominator.ambient,
            });
        }
        if let Some(w) = denominator.find_outside(numerator)? {
            return Err(LinalgError::NotContained {
                witness: vector_strings(&w),
            });
        }
        let target = numerator.dim() - denominator.dim();
        let mut span = denominator.clone();
        let mut reps: Vec<(Option<usize>, Vector)> = Vec::new();
        let standard = (0..n).map(|i| unit_vector(field, n, i));
        let candidates = preferred
            .iter()
            .cloned()
            .chain(standard)
            .chain(numerator.rows.iter().cloned());
        for c in candidates {
            if reps.len() == target {
                break;
            }
            if c.len() != n || !numerator.contains(&c)? || span.contains(&c)? {
                continue;
            }
            span = span.sum(&Subspace::span(field, n, std::slice::from_ref(&c))?)?;
            let std_index = standard_index(&c);
            reps.push((std_index, c));
        }
        debug_assert_eq!(reps.len(), target);
        // preferred reps keep their order; standard ones follow in ambient order
        let n_pref = reps
            .iter()
            .take_while(|(_, r)| preferred.contains(r))
            .count();
        let rest = reps.split_off(n_pref);
        let (mut std_reps, other): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(s, _)| s.is_some());
        std_reps.sort_by_key(|(s, _)| *s);
        let representatives: Vec<Vector> = reps
            .into_iter()
            .chain(std_reps)
            .chain(other)
            .map(|(_, v)| v)
            .collect();

        // complete denominator ∪ representatives to an ambient basis and invert
        let mut cols: Vec<Vector> = denominator.rows.clone();
        cols.extend(representatives.iter().cloned());
        let mut full = Subspace::span(field, n, &cols)?;
        for i in 0..n {
            let e = unit_vector(field, n, i);
            if !full.contains(&e)? {
                full = full.sum(&Subspace::span(field, n, std::slice::from_ref(&e))?)?;
                cols.push(e);
            }
        }
        let basis = Matrix::from_columns(field, n, &cols)?;
        let inv = basis.inverse().expect("completed basis is invertible");
        let d = denominator.dim();
        let q = representatives.len();
        let mut projection = Matrix::zeros(field, q, n);
        for k in 0..q {
            for j in 0..n {
                projection.set(k, j, inv.get(d + k, j).clone());
            }
        }
        let lift = Matrix::from_columns(field, n, &representatives)?;
        Ok(QuotientPresentation {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
            representatives,
            projection,
            lift,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn lift_matrix(&self) -> &Matrix {
        &self.lift
    }

    /// Quotient coordinates of `v`; `v` is expected to lie in the numerator.
    pub fn project(&self, v: &[Scalar]) -> Vector {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        self.lift.mul_vec(coords)
    }
}

fn standard_index(v: &[Scalar]) -> Option<usize> {
    let mut idx = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if idx.is_some() || !x.is_one() {
            return None;
        }
        idx = Some(i);
    }
    idx
}

/// A bounded cochain complex `C^q → C^{q+1}` of finite-dimensional spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    field: ExactField,
    dims: BTreeMap<i64, usize>,
    differentials: BTreeMap<i64, Matrix>,
}

impl FiniteComplex {
    /// `differentials[q]` is the matrix of `d: C^q → C^{q+1}` (rows index
    /// `C^{q+1}`). Missing differentials are zero.
    pub fn new(
        field: ExactField,
        dims: BTreeMap<i64, usize>,
        differentials: BTreeMap<i64, Matrix>,
    ) -> Result<Self, LinalgError> {
        let dim = |q: i64| dims.get(&q).copied().unwrap_or(0);
        for (&q, d) in &differentials {
            let expected = (dim(q + 1), dim(q));
            if (d.rows(), d.cols()) != expected {
                return Err(LinalgError::BadDifferentialShape {
                    degree: q,
                    expected,
                    found: (d.rows(), d.cols()),
                });
            }
        }
        for (&q, d) in &differentials {
            if let Some(next) = differentials.get(&(q + 1)) {
                let dd = next.mul(d);
                for i in 0..dd.rows() {
                    for j in 0..dd.cols() {
                        if !dd.get(i, j).is_zero() {
                            return Err(LinalgError::DifferentialNotSquareZero {
                                degree: q,
                                row: i,
                                col: j,
                                value: dd.get(i, j).to_string(),
                            });
                        }
                    }
                }
            }
        }
        let dims = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        Ok(FiniteComplex {
            field,
            dims,
            differentials,
        })
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn dim(&self, q: i64) -> usize {
        self.dims.get(&q).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn differential(&self, q: i64) -> Matrix {
        self.differentials
            .get(&q)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(q + 1), self.dim(q)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(q, d)| if q.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) })
            .sum()
    }

    pub fn cohomology(&self) -> Cohomology {
        let mut groups = BTreeMap::new();
        for &q in self.dims.keys() {
            let cycles = self.differential(q).kernel();
            let boundaries = self.differential(q - 1).image();
            let quotient =
                QuotientPresentation::new(&cycles, &boundaries).expect("boundaries are cycles");
            if quotient.dim() > 0 {
                groups.insert(q, quotient);
            }
        }
        Cohomology { groups }
    }
}

/// Cohomology of a [`FiniteComplex`], one quotient `Z^q / B^q` per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    groups: BTreeMap<i64, QuotientPresentation>,
}

impl Cohomology {
    pub fn dim(&self, q: i64) -> usize {
        self.groups.get(&q).map_or(0, |g| g.dim())
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.groups.iter().map(|(q, g)| (*q, g.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.groups.values().map(|g| g.dim()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|(q, g)| if q.rem_euclid(2) == 0 { g.dim() as i64 } else { -(g.dim() as i64) })
            .sum()
    }

    /// Representative cocycles in degree `q`.
    pub fn representatives(&self, q: i64) -> &[Vector] {
        self.groups.get(&q).map_or(&[], |g| g.representatives())
    }

    pub fn group(&self, q: i64) -> Option<&QuotientPresentation> {
        self.groups.get(&q)
    }

    /// Class of a cocycle in degree `q`, or `None` if `v` is not a cocycle.
    pub fn class_of(&self, q: i64, v: &[Scalar]) -> Option<Vector> {
        match self.groups.get(&q) {
            Some(g) => g.numerator().contains(v).ok()?.then(|| g.project(v)),
            None => Some(Vec::new()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ExactField {
        ExactField::Rationals
    }

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn echelon_examples() {
        let s = Subspace::span(q(), 3, &[v(&[1, 0, 0]), v(&[1, 1, 0])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &[v(&[1, 0, 0]), v(&[0, 1, 0])]);

        let z = Subspace::span(q(), 3, &[]).unwrap();
        assert_eq!(z.dim(), 0);

        let p = Subspace::span(q(), 2, &[v(&[2, 4]), v(&[1, 2])]).unwrap();
        assert_eq!(p.basis(), &[v(&[1, 2])]);

        assert!(matches!(
            Subspace::span(q(), 2, &[v(&[1, 2, 3])]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let s = Subspace::span(q(), 2, &[v(&[1, 0])]).unwrap();
        assert!(s.contains(&v(&[3, 0])).unwrap());
        assert!(!s.contains(&v(&[0, 1])).unwrap());
        let z = Subspace::zero(q(), 2);
        assert!(z.contains(&v(&[0, 0])).unwrap());
        assert!(s.contains(&v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn quotient_edge_cases() {
        let full = Subspace::full(q(), 3);
        let same = QuotientPresentation::new(&full, &full).unwrap();
        assert_eq!(same.dim(), 0);

        let zero = Subspace::zero(q(), 3);
        let qp = QuotientPresentation::new(&full, &zero).unwrap();
        assert_eq!(qp.lift_matrix(), &Matrix::identity(q(), 3));

        let line = Subspace::span(q(), 3, &[v(&[1, 1, 0])]).unwrap();
        let other = Subspace::span(q(), 3, &[v(&[1, 0, 0])]).unwrap();
        assert!(matches!(
            QuotientPresentation::new(&other, &line),
            Err(LinalgError::NotContained { .. })
        ));
    }

    #[test]
    fn quotient_of_toy_levels() {
        // span{1, ε, t} / span{ε, t}: the class of 1 survives
        let full = Subspace::full(q(), 3);
        let den = Subspace::coordinate(q(), 3, [1, 2]);
        let qp = QuotientPresentation::new(&full, &den).unwrap();
        assert_eq!(qp.dim(), 1);
        assert_eq!(qp.representatives(), &[v(&[1, 0, 0])]);
    }

    #[test]
    fn preferred_representative_is_used() {
        let full = Subspace::full(q(), 2);
        let den = Subspace::span(q(), 2, &[v(&[1, -1])]).unwrap();
        let qp = QuotientPresentation::with_preferred(&full, &den, &[v(&[0, 1])]).unwrap();
        assert_eq!(qp.representatives(), &[v(&[0, 1])]);
        assert_eq!(qp.project(&v(&[1, 0])), v(&[1]));
    }

    #[test]
    fn cohomology_examples() {
        let dims: BTreeMap<i64, usize> = [(0, 2), (1, 3)].into_iter().collect();
        let c = FiniteComplex::new(q(), dims, BTreeMap::new()).unwrap();
        assert_eq!(c.cohomology().dims(), [(0, 2), (1, 3)].into_iter().collect());

        let dims: BTreeMap<i64, usize> = [(0, 1), (1, 1)].into_iter().collect();
        let d: BTreeMap<i64, Matrix> = [(0, Matrix::identity(q(), 1))].into_iter().collect();
        let c = FiniteComplex::new(q(), dims, d).unwrap();
        assert_eq!(c.cohomology().total_dim(), 0);
    }

    #[test]
    fn cone_of_level_inclusion() {
        // span{ε,t} ↪ span{1,ε,t} placed in degrees -1, 0
        let dims: BTreeMap<i64, usize> = [(-1, 2), (0, 3)].into_iter().collect();
        let inc = Matrix::from_columns(q(), 3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let c = FiniteComplex::new(q(), dims, [(-1, inc)].into_iter().collect()).unwrap();
        let h = c.cohomology();
        assert_eq!(h.dims(), [(0, 1)].into_iter().collect());
        assert_eq!(h.representatives(0), &[v(&[1, 0, 0])]);
    }

    #[test]
    fn non_square_zero_differential_is_rejected() {
        let dims: BTreeMap<i64, usize> = [(0, 1), (1, 1), (2, 1)].into_iter().collect();
        let one = Matrix::identity(q(), 1);
        let d: BTreeMap<i64, Matrix> = [(0, one.clone()), (1, one)].into_iter().collect();
        assert!(matches!(
            FiniteComplex::new(q(), dims, d),
            Err(LinalgError::DifferentialNotSquareZero { degree: 0, .. })
        ));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::coordinate(q(), 3, [0, 1]);
        let b = Subspace::span(q(), 3, &[v(&[1, 1, 1]), v(&[0, 1, 0])]).unwrap();
        assert_eq!(a.intersection(&b).unwrap().dim(), 1);
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
    }

    #[test]
    fn graded_detection() {
        let degrees = [0, 0, -1];
        let g = Subspace::span(q(), 3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert!(g.is_graded(&degrees));
        let ng = Subspace::span(q(), 3, &[v(&[1, 0, 1])]).unwrap();
        assert!(!ng.is_graded(&degrees));
    }
}
