//! Named example algebras and categories used by tests, benches and the CLI
//! fixtures.

use std::collections::BTreeMap;

use crate::ainf::{AInfCategory, AInfError, BasisElement, CategoryBuilder, Terms};
use crate::linalg::{Matrix, Vector};
use crate::scalar::ExactField;

const Q: ExactField = ExactField::Rationals;

fn finish(b: CategoryBuilder) -> AInfCategory {
    b.build().expect("corpus entries are well formed")
}

fn unital(labels: &[(&str, i64)]) -> CategoryBuilder {
    let mut b = CategoryBuilder::algebra(Q);
    for (l, d) in labels {
        b.endo(l, *d).unwrap();
    }
    b.unit("*", labels[0].0).unwrap();
    b.unit_laws().unwrap();
    b
}

/// `k[ε]/ε² ⊕ k·t` with `|t| = −1`, `ε·t = t·ε = 0` and `m_3(ε, ε, ε) = t`.
pub fn toy() -> AInfCategory {
    let mut b = unital(&[("1", 0), ("eps", 0), ("t", -1)]);
    b.set_labels(&["eps", "eps", "eps"], &[("t", "1")]).unwrap();
    finish(b)
}

/// `x·x = y`, `x·y = x`, `y·x = 0`: fails associativity at `(x, x, x)`.
pub fn nonassoc() -> AInfCategory {
    let mut b = unital(&[("1", 0), ("x", 0), ("y", 0)]);
    b.set_labels(&["x", "x"], &[("y", "1")]).unwrap();
    b.set_labels(&["x", "y"], &[("x", "1")]).unwrap();
    finish(b)
}

/// The ground field.
pub fn field_k() -> AInfCategory {
    finish(unital(&[("1", 0)]))
}

/// `k × k` with basis `1, e` and `e² = e`.
pub fn k_times_k() -> AInfCategory {
    let mut b = unital(&[("1", 0), ("e", 0)]);
    b.set_labels(&["e", "e"], &[("e", "1")]).unwrap();
    finish(b)
}

/// `k[ε]/ε²`.
pub fn dual_numbers() -> AInfCategory {
    finish(unital(&[("1", 0), ("eps", 0)]))
}

fn matrix_unit(m: usize, i: usize, j: usize) -> Matrix {
    let mut a = Matrix::zeros(Q, m, m);
    a.set(i, j, Q.one());
    a
}

fn flatten(m: &Matrix) -> Vector {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Structure constants of the matrix algebra spanned by `matrices` (closed
/// under products; the first matrix must be the identity).
pub fn algebra_from_matrices(
    field: ExactField,
    labels: &[String],
    matrices: &[Matrix],
) -> Result<AInfCategory, AInfError> {
    let size = matrices[0].rows();
    let cols: Vec<Vector> = matrices.iter().map(flatten).collect();
    let basis_mat = Matrix::from_columns(field, size * size, &cols).expect("square matrices of equal size");
    let mut table: BTreeMap<Vec<usize>, Terms> = BTreeMap::new();
    for (a, ma) in matrices.iter().enumerate() {
        for (b, mb) in matrices.iter().enumerate() {
            let prod = flatten(&ma.mul(mb));
            let coords = basis_mat
                .solve(&prod)
                .ok_or_else(|| AInfError::InvalidStructure("matrices are not closed under products".into()))?;
            let t: Terms = coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
            if !t.is_empty() {
                table.insert(vec![a, b], t);
            }
        }
    }
    let basis = labels
        .iter()
        .map(|l| BasisElement {
            label: l.clone(),
            source: 0,
            target: 0,
            degree: 0,
        })
        .collect();
    AInfCategory::from_parts(
        field,
        vec!["*".into()],
        basis,
        vec![0],
        [(2, table)].into_iter().collect(),
    )
}

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

/// Upper-triangular 2×2 matrices, basis `1, e11, e12`.
pub fn upper_triangular_2() -> AInfCategory {
    let id = Matrix::identity(Q, 2);
    algebra_from_matrices(
        Q,
        &labels(&["1", "e11", "e12"]),
        &[id, matrix_unit(2, 0, 0), matrix_unit(2, 0, 1)],
    )
    .unwrap()
}

/// Upper-triangular 3×3 matrices, basis `1, e11, e22, e12, e13, e23`.
pub fn upper_triangular_3() -> AInfCategory {
    let id = Matrix::identity(Q, 3);
    algebra_from_matrices(
        Q,
        &labels(&["1", "e11", "e22", "e12", "e13", "e23"]),
        &[
            id,
            matrix_unit(3, 0, 0),
            matrix_unit(3, 1, 1),
            matrix_unit(3, 0, 1),
            matrix_unit(3, 0, 2),
            matrix_unit(3, 1, 2),
        ],
    )
    .unwrap()
}

/// Path algebra of `1 →a 2 →b 3`, basis `1, e1, e2, a, b, ba`
/// (`e3 = 1 − e1 − e2`, products are composition of paths).
pub fn path_algebra_a3() -> AInfCategory {
    let id = Matrix::identity(Q, 3);
    algebra_from_matrices(
        Q,
        &labels(&["1", "e1", "e2", "a", "b", "ba"]),
        &[
            id,
            matrix_unit(3, 0, 0),
            matrix_unit(3, 1, 1),
            matrix_unit(3, 1, 0),
            matrix_unit(3, 2, 1),
            matrix_unit(3, 2, 0),
        ],
    )
    .unwrap()
}

/// The `A_2` quiver as a category: objects `x, y` and one arrow `f: x → y`.
pub fn a2_category() -> AInfCategory {
    let mut b = CategoryBuilder::new(Q);
    b.object("x").unwrap();
    b.object("y").unwrap();
    b.element("1x", "x", "x", 0).unwrap();
    b.element("1y", "y", "y", 0).unwrap();
    b.element("f", "x", "y", 0).unwrap();
    b.unit("x", "1x").unwrap();
    b.unit("y", "1y").unwrap();
    b.unit_laws().unwrap();
    finish(b)
}

/// Two-degree algebra: `k[ε]/ε²` in degree 0, `t, s` in degree `−1`,
/// with `ε·t = s` and all other products of non-units zero.
pub fn two_degree_chain() -> AInfCategory {
    let mut b = unital(&[("1", 0), ("eps", 0), ("t", -1), ("s", -1)]);
    b.set_labels(&["eps", "t"], &[("s", "1")]).unwrap();
    finish(b)
}

/// A small dg algebra with nonzero differential: `d a = b`, `|a| = −1`,
/// `|b| = 0`, all products of non-units zero.
pub fn small_dg() -> AInfCategory {
    let mut b = unital(&[("1", 0), ("a", -1), ("b", 0)]);
    b.set_labels(&["a"], &[("b", "1")]).unwrap();
    finish(b)
}

/// Associative unital algebras encoded with `m_2` only.
pub fn associative_corpus() -> Vec<(&'static str, AInfCategory)> {
    vec![
        ("k", field_k()),
        ("k_x_k", k_times_k()),
        ("dual_numbers", dual_numbers()),
        ("upper_triangular_2", upper_triangular_2()),
        ("upper_triangular_3", upper_triangular_3()),
        ("path_algebra_a3", path_algebra_a3()),
    ]
}
