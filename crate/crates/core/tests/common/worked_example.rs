//! The worked example: `I5 ⊕ I2 ⊕ I1 ⊕ I0` inside `3I3 ⊕ I1` through the
//! linking module `I3 ⊕ 2I2 ⊕ I1 ⊕ 2I0`, with the hand-built embedding,
//! projection, factorizations and completion blocks.

#![allow(dead_code)]

use subpencil_core::{Field, Matrix, Pencil, PreinjInvariants};

/// Builds a matrix from sparse signed rows: entry `k > 0` puts `+1` in column
/// `k - 1`, entry `k < 0` puts `-1` in column `-k - 1`.
pub fn signed_unit_rows<F: Field>(field: &F, cols: usize, rows: &[&[i64]]) -> Matrix<F> {
    let mut m = Matrix::zeros(field, rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for &k in row.iter() {
            let (j, v) = if k > 0 { (k - 1, 1) } else { (-k - 1, -1) };
            let cur = field.add(m.get(i, j as usize), &field.from_i64(v));
            m.set(i, j as usize, cur);
        }
    }
    m
}

/// Builds a matrix with a single `1` at each listed 1-indexed position.
pub fn ones_at<F: Field>(field: &F, rows: usize, cols: usize, at: &[(usize, usize)]) -> Matrix<F> {
    let mut m = Matrix::zeros(field, rows, cols);
    for &(i, j) in at {
        m.set(i - 1, j - 1, field.one());
    }
    m
}

/// `I5 ⊕ I2 ⊕ I1 ⊕ I0`, an 8 × 12 pencil.
pub fn sub_module() -> PreinjInvariants {
    PreinjInvariants::new(vec![1, 1, 1, 0, 0, 1])
}

/// `3I3 ⊕ I1`, a 10 × 14 pencil.
pub fn sup_module() -> PreinjInvariants {
    PreinjInvariants::new(vec![0, 1, 0, 3])
}

/// `I3 ⊕ 2I2 ⊕ I1 ⊕ 2I0`.
pub fn linking_module() -> PreinjInvariants {
    PreinjInvariants::new(vec![2, 1, 2, 1])
}

/// Vertex-2 map of the embedding of the sub module into the linking module (14 × 12).
pub fn embed_vertex2<F: Field>(f: &F) -> Matrix<F> {
    signed_unit_rows(
        f,
        12,
        &[&[5], &[1], &[2], &[3], &[4], &[5], &[5], &[6], &[7], &[8], &[9], &[10], &[11], &[12]],
    )
}

/// Vertex-1 map of the embedding (8 × 8).
pub fn embed_vertex1<F: Field>(f: &F) -> Matrix<F> {
    Matrix::identity(f, 8)
}

/// Vertex-2 map of the projection of the sup module onto the linking module (14 × 14).
pub fn project_vertex2<F: Field>(f: &F) -> Matrix<F> {
    signed_unit_rows(
        f,
        14,
        &[&[8], &[9], &[1], &[2], &[3], &[4], &[5], &[6], &[7], &[10], &[11], &[12], &[13], &[14]],
    )
}

/// Vertex-1 map of the projection (8 × 10).
pub fn project_vertex1<F: Field>(f: &F) -> Matrix<F> {
    signed_unit_rows(f, 10, &[&[1], &[2], &[3], &[4], &[5], &[8], &[9], &[10]])
}

/// Left factor of `project_vertex2⁻¹ · embed_vertex2 = C1 (I; 0) C2` (14 × 14).
pub fn c1<F: Field>(f: &F) -> Matrix<F> {
    signed_unit_rows(
        f,
        14,
        &[
            &[-3],
            &[-4],
            &[-5],
            &[-1, 13],
            &[-1, 14],
            &[6],
            &[7],
            &[-1],
            &[-2],
            &[-8],
            &[-9],
            &[-10],
            &[-11],
            &[-12],
        ],
    )
}

/// Right factor `C2` (12 × 12).
pub fn c2<F: Field>(f: &F) -> Matrix<F> {
    signed_unit_rows(
        f,
        12,
        &[&[-5], &[-1], &[-2], &[-3], &[-4], &[6], &[7], &[-8], &[-9], &[-10], &[-11], &[-12]],
    )
}

/// Left factor of `embed_vertex1⁻¹ · project_vertex1 = D1 (I 0) D2` (8 × 8).
pub fn d1<F: Field>(f: &F) -> Matrix<F> {
    Matrix::identity(f, 8)
}

/// Right factor `D2` (10 × 10), which is also the row transform of the completion.
pub fn d2<F: Field>(f: &F) -> Matrix<F> {
    signed_unit_rows(f, 10, &[&[1], &[2], &[3], &[4], &[5], &[8], &[9], &[10], &[6], &[7]])
}

/// Column transform of the completion, `C1 · diag(C2, I2)` (14 × 14).
pub fn column_transform<F: Field>(f: &F) -> Matrix<F> {
    signed_unit_rows(
        f,
        14,
        &[
            &[2],
            &[3],
            &[4],
            &[5, 13],
            &[5, 14],
            &[6],
            &[7],
            &[5],
            &[1],
            &[8],
            &[9],
            &[10],
            &[11],
            &[12],
        ],
    )
}

/// Completion blocks `(A12, B12, A21, B21, A22, B22)`.
pub fn completion_blocks<F: Field>(f: &F) -> [Matrix<F>; 6] {
    [
        ones_at(f, 8, 2, &[(3, 1)]),
        ones_at(f, 8, 2, &[(4, 2)]),
        ones_at(f, 2, 12, &[(1, 5), (2, 8)]),
        ones_at(f, 2, 12, &[(1, 7), (2, 1)]),
        Matrix::zeros(f, 2, 2),
        Matrix::zeros(f, 2, 2),
    ]
}

/// A pencil given by the 1-indexed positions of its `λ` entries, each followed
/// by a constant `1` immediately to its right (the shape of `L_ε` blocks).
pub fn staircase_pencil<F: Field>(field: &F, rows: usize, cols: usize, lambdas: &[(usize, usize)]) -> Pencil<F> {
    let ones: Vec<(usize, usize)> = lambdas.iter().map(|&(i, j)| (i, j + 1)).collect();
    Pencil::new(ones_at(field, rows, cols, &ones), ones_at(field, rows, cols, lambdas)).expect("same shape")
}

/// The displayed 10 × 14 pencil with minimal column indices 3, 3, 3, 1.
pub fn displayed_sup_pencil<F: Field>(f: &F) -> Pencil<F> {
    staircase_pencil(
        f,
        10,
        14,
        &[(1, 1), (2, 2), (3, 3), (4, 5), (5, 6), (6, 7), (7, 9), (8, 10), (9, 11), (10, 13)],
    )
}

/// The displayed 8 × 12 pencil with minimal column indices 0, 5, 2, 1.
pub fn displayed_sub_pencil<F: Field>(f: &F) -> Pencil<F> {
    staircase_pencil(f, 8, 12, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 8), (7, 9), (8, 11)])
}
