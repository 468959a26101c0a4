//! Dense exact matrices over a [`Field`].
//!
//! Every elimination picks the first nonzero pivot in (row, column) order, so
//! all derived outputs (echelon forms, kernel bases, factorizations) are
//! deterministic and byte-stable.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;

/// A dense row-major matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from small integers given row by row.
    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j])))
    }

    /// Builds a `rows x cols` matrix from small integers in row-major order.
    pub fn from_i64(field: &F, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::from_vec(field, rows, cols, data.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|a| f.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        if let Some(data) = f.fast_mul(self.rows, self.cols, other.cols, &self.data, &other.data) {
            return Ok(Matrix { field: f.clone(), rows: self.rows, cols: other.cols, data });
        }
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The block of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols, "submatrix out of range");
        Self::from_fn(&self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Selects the given columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Selects the given rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Places `self` to the left of `other`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    /// Places `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        Ok(out)
    }

    /// Block-diagonal matrix with the given blocks along the diagonal.
    pub fn block_diag(field: &F, blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// `(I_k ; 0)`, the `rows x k` standard injection.
    pub fn injection(field: &F, rows: usize, k: usize) -> Self {
        Self::from_fn(field, rows, k, |i, j| if i == j { field.one() } else { field.zero() })
    }

    /// `(I_k 0)`, the `k x cols` standard projection.
    pub fn projection(field: &F, k: usize, cols: usize) -> Self {
        Self::from_fn(field, k, cols, |i, j| if i == j { field.one() } else { field.zero() })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        if let Some((data, pivots)) = self.field.fast_rref(self.rows, self.cols, &self.data) {
            let m = Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data };
            return (m, pivots);
        }
        self.elimination_rref()
    }

    /// Reduced row echelon form by Gauss–Jordan elimination in the field.
    pub fn elimination_rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub_mul(m.get(i, j), &factor, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        match self.field.fast_rank(self.rows, self.cols, &self.data) {
            Some(r) => r,
            None => self.elimination_rank(),
        }
    }

    /// Rank by forward elimination in the field, cheaper than a full reduction.
    pub fn elimination_rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..m.cols {
                    let v = f.sub_mul(m.get(i, j), &factor, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right null space as columns, in reduced-echelon form: one
    /// column per free variable, with a 1 in that variable's position.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (col, &fv) in free.iter().enumerate() {
            k.set(fv, col, f.one());
            for (row, &pc) in pivots.iter().enumerate() {
                k.set(pc, col, f.neg(r.get(row, fv)));
            }
        }
        k
    }

    /// Exact inverse of a square matrix.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n))?;
        let (r, pivots) = aug.rref();
        if pivots.iter().filter(|&&p| p < n).count() < n {
            return Err(Error::SingularMatrix);
        }
        Ok(r.submatrix(0, n, n, 2 * n))
    }

    /// Factors a tall matrix of full column rank as `M = C1 (I; 0) C2`.
    ///
    /// `C2` is the identity and `C1 = [M | e_j ...]`, where the appended
    /// standard vectors are the coordinates that are not pivots of `Mᵀ`.
    pub fn full_rank_factor_tall(&self) -> Result<(Self, Self)> {
        let k = self.cols;
        let rank = self.rank();
        if self.rows < k || rank < k {
            return Err(Error::RankDeficient { rank, expected: k });
        }
        let f = &self.field;
        let (_, pivots) = self.transpose().rref();
        let mut c1 = Self::zeros(f, self.rows, self.rows);
        c1.set_block(0, 0, self);
        for (col, j) in (k..).zip((0..self.rows).filter(|j| !pivots.contains(j))) {
            c1.set(j, col, f.one());
        }
        Ok((c1, Self::identity(f, k)))
    }

    /// Factors a wide matrix of full row rank as `M = D1 (I 0) D2`, with
    /// `D1 = I` and `D2 = [M ; e_j ...]` completed by non-pivot coordinates.
    pub fn full_rank_factor_wide(&self) -> Result<(Self, Self)> {
        let (c1, c2) = self.transpose().full_rank_factor_tall()?;
        Ok((c2.transpose(), c1.transpose()))
    }

    /// Random matrix with entries from [`Field::random_small`].
    pub fn random<R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random_small(rng))
    }

    /// Random invertible matrix, redrawing until the exact rank is full.
    pub fn random_invertible<R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format_elem(x)).collect();
            writeln!(out, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[Vec<i64>]) -> Matrix<Rationals> {
        Matrix::from_i64_rows(&Rationals, rows).unwrap()
    }

    #[test]
    fn empty_matrix_has_rank_zero_and_full_kernel() {
        let m = Matrix::zeros(&Rationals, 0, 0);
        assert_eq!(m.rank(), 0);
        let w = Matrix::zeros(&Rationals, 0, 3);
        assert_eq!(w.kernel(), Matrix::identity(&Rationals, 3));
    }

    #[test]
    fn identity_rank_and_kernel() {
        let i8 = Matrix::identity(&Rationals, 8);
        assert_eq!(i8.rank(), 8);
        assert_eq!(i8.kernel().cols(), 0);
        assert_eq!(i8.invert().unwrap(), i8);
    }

    #[test]
    fn coordinate_kernel() {
        let k = q(&[vec![1, 0]]).kernel();
        assert_eq!(k, q(&[vec![0], vec![1]]));
    }

    #[test]
    fn diagonal_inverse() {
        let m = q(&[vec![2, 0], vec![0, 3]]);
        let inv = m.invert().unwrap();
        let half = Rationals.parse_elem("1/2").unwrap();
        let third = Rationals.parse_elem("1/3").unwrap();
        assert_eq!(inv.get(0, 0), &half);
        assert_eq!(inv.get(1, 1), &third);
        assert!(Rationals.is_zero(inv.get(0, 1)));
    }

    #[test]
    fn singular_inverse_fails() {
        assert_eq!(q(&[vec![1, 2], vec![2, 4]]).invert(), Err(Error::SingularMatrix));
    }

    #[test]
    fn tall_factor_of_standard_injection_is_trivial() {
        let m = Matrix::injection(&Rationals, 4, 2);
        let (c1, c2) = m.full_rank_factor_tall().unwrap();
        assert!(c1.is_identity());
        assert!(c2.is_identity());
    }

    #[test]
    fn tall_factor_of_second_coordinate_is_a_swap() {
        let m = q(&[vec![0], vec![1]]);
        let (c1, c2) = m.full_rank_factor_tall().unwrap();
        assert_eq!(c1, q(&[vec![0, 1], vec![1, 0]]));
        assert!(c2.is_identity());
    }

    #[test]
    fn wide_factor_cases() {
        let (d1, d2) = Matrix::projection(&Rationals, 2, 3).full_rank_factor_wide().unwrap();
        assert!(d1.is_identity() && d2.is_identity());
        let (d1, d2) = q(&[vec![0, 1]]).full_rank_factor_wide().unwrap();
        assert!(d1.is_identity());
        assert_eq!(d2, q(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn rank_deficient_factor_is_rejected() {
        let m = q(&[vec![1, 2], vec![2, 4], vec![0, 0]]);
        assert_eq!(
            m.full_rank_factor_tall(),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        );
    }

    #[test]
    fn prime_field_rank() {
        let f = PrimeField::new(2).unwrap();
        // Over GF(2) the rows (1 1), (1 1) and (0 0) only span one dimension,
        // while (1 1), (1 -1) are dependent only in characteristic 2.
        let m = Matrix::from_i64_rows(&f, &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::from_i64_rows(&Rationals, &[vec![1, 1], vec![1, -1]]).unwrap().rank(), 2);
    }
}
