//! Random finite-dimensional algebras and filtrations for property tests.

use rand::Rng;

use crate::ainf::AInfCategory;
use crate::corpus::algebra_from_matrices;
use crate::filtration::{power, product, radical, Filtration, FiltrationError};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::ExactField;

const Q: ExactField = ExactField::Rationals;

fn flatten(m: &Matrix) -> Vector {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn unflatten(size: usize, v: &[crate::scalar::Scalar]) -> Matrix {
    let rows: Vec<Vector> = v.chunks(size).map(|c| c.to_vec()).collect();
    Matrix::from_rows(Q, size, &rows).expect("square")
}

fn random_upper_triangular<R: Rng>(size: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(Q, size, size);
    for i in 0..size {
        for j in i..size {
            if rng.gen_bool(0.5) {
                m.set(i, j, Q.from_i64(rng.gen_range(-2..=2)));
            }
        }
    }
    m
}

/// The unital subalgebra of upper-triangular `size × size` matrices
/// (`size ≤ 3`) generated by `gens` random elements, with basis `1, a1, a2, …`.
pub fn random_matrix_algebra<R: Rng>(size: usize, gens: usize, rng: &mut R) -> AInfCategory {
    let id = Matrix::identity(Q, size);
    let ambient = size * size;
    let mut span = Subspace::span(Q, ambient, &[flatten(&id)]).expect("lengths agree");
    for _ in 0..gens {
        let g = flatten(&random_upper_triangular(size, rng));
        span = span.sum(&Subspace::span(Q, ambient, &[g]).unwrap()).unwrap();
    }
    loop {
        let mats: Vec<Matrix> = span.basis().iter().map(|v| unflatten(size, v)).collect();
        let mut prods = Vec::new();
        for a in &mats {
            for b in &mats {
                prods.push(flatten(&a.mul(b)));
            }
        }
        let next = span.sum(&Subspace::span(Q, ambient, &prods).unwrap()).unwrap();
        if next.dim() == span.dim() {
            break;
        }
        span = next;
    }
    // identity first, then the echelon basis vectors that complete it
    let mut basis = vec![flatten(&id)];
    for v in span.basis() {
        let trial: Vec<Vector> = basis.iter().cloned().chain(std::iter::once(v.clone())).collect();
        if Subspace::span(Q, ambient, &trial).unwrap().dim() == trial.len() {
            basis.push(v.clone());
        }
    }
    let labels: Vec<String> = (0..basis.len())
        .map(|i| if i == 0 { "1".to_string() } else { format!("a{i}") })
        .collect();
    let mats: Vec<Matrix> = basis.iter().map(|v| unflatten(size, v)).collect();
    algebra_from_matrices(Q, &labels, &mats).expect("closed under products")
}

/// Two-sided ideal generated by `gens`.
pub fn ideal_generated(r: &AInfCategory, gens: &[Vector]) -> Result<Subspace, FiltrationError> {
    let full = Subspace::full(r.field(), r.dim());
    let mut ideal = Subspace::span(r.field(), r.dim(), gens)?;
    loop {
        let next = ideal
            .sum(&product(r, &full, &ideal)?)?
            .sum(&product(r, &ideal, &full)?)?;
        if next.dim() == ideal.dim() {
            return Ok(ideal);
        }
        ideal = next;
    }
}

/// `F^p = I^{⌈p/c⌉}` for a random ideal `I` inside the radical and a random
/// stretch `c ∈ {1, 2}`, cut at the first zero level and at `max_n`.
/// Returns `None` when the cut would leave a nonzero last level.
pub fn random_ideal_filtration<R: Rng>(r: &AInfCategory, max_n: usize, rng: &mut R) -> Option<Filtration> {
    let j = radical(r).ok()?;
    let gens: Vec<Vector> = (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut v = vec![Q.zero(); r.dim()];
            for b in j.basis() {
                crate::linalg::axpy(&mut v, &Q.from_i64(rng.gen_range(-1..=1)), b);
            }
            v
        })
        .collect();
    let ideal = ideal_generated(r, &gens).ok()?;
    let c = rng.gen_range(1..=2usize);
    let mut levels = vec![Subspace::full(Q, r.dim())];
    for p in 1..=max_n {
        let level = power(r, &ideal, p.div_ceil(c)).ok()?;
        let done = level.is_zero();
        levels.push(level);
        if done {
            return Filtration::new(levels).ok();
        }
    }
    None
}

/// A random filtered algebra of dimension `≤ 6` with `n ≤ max_n` that
/// passes the filtration check.
pub fn random_filtered_algebra<R: Rng>(max_n: usize, rng: &mut R) -> (AInfCategory, Filtration) {
    loop {
        let size = rng.gen_range(2..=3);
        let r = random_matrix_algebra(size, rng.gen_range(1..=3), rng);
        if let Some(f) = random_ideal_filtration(&r, max_n, rng) {
            if crate::filtration::check_filtration(&r, &f).map(|x| x.passed()).unwrap_or(false) {
                return (r, f);
            }
        }
    }
}
