//! Matrix pencils `A + λB` and their dictionary with Kronecker modules.
//!
//! A pencil with only minimal column indices `ε_1, …, ε_p` is strictly
//! equivalent to `diag(L_{ε_1}, …, L_{ε_p})`, where `L_ε = (0 I) + λ(I 0)` is
//! `ε × (ε+1)`; it corresponds to the preinjective module `⊕ I_{ε_j}`.
//! Canonical pencils list the `ε = 0` (zero) columns first and then the
//! blocks by descending index.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariants::{PreinjInvariants, PreprojInvariants};
use crate::matrix::Matrix;

/// The pencil `A + λB`; both matrices share shape and field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil<F: Field> {
    a: Matrix<F>,
    b: Matrix<F>,
}

impl<F: Field> Pencil<F> {
    pub fn new(a: Matrix<F>, b: Matrix<F>) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::ShapeMismatch(format!(
                "pencil parts are {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.field() != b.field() {
            return Err(Error::ShapeMismatch("pencil parts over different fields".into()));
        }
        Ok(Pencil { a, b })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Pencil {
            a: Matrix::zeros(field, rows, cols),
            b: Matrix::zeros(field, rows, cols),
        }
    }

    pub fn a(&self) -> &Matrix<F> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.a.shape()
    }

    /// `(Aᵀ, Bᵀ)`.
    pub fn transpose(&self) -> Self {
        Pencil {
            a: self.a.transpose(),
            b: self.b.transpose(),
        }
    }

    /// `left · (A + λB) · right`.
    pub fn transform(&self, left: &Matrix<F>, right: &Matrix<F>) -> Result<Self> {
        Ok(Pencil {
            a: left.mul(&self.a)?.mul(right)?,
            b: left.mul(&self.b)?.mul(right)?,
        })
    }

    /// `left · (A + λB)`.
    pub fn left_mul(&self, left: &Matrix<F>) -> Result<Self> {
        Ok(Pencil {
            a: left.mul(&self.a)?,
            b: left.mul(&self.b)?,
        })
    }

    /// `(A + λB) · right`.
    pub fn right_mul(&self, right: &Matrix<F>) -> Result<Self> {
        Ok(Pencil {
            a: self.a.mul(right)?,
            b: self.b.mul(right)?,
        })
    }

    /// The sub-pencil on rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Pencil {
            a: self.a.submatrix(r0, r1, c0, c1),
            b: self.b.submatrix(r0, r1, c0, c1),
        }
    }

    /// Block-diagonal sum of pencils.
    pub fn block_diag(field: &F, parts: &[Self]) -> Self {
        let a: Vec<Matrix<F>> = parts.iter().map(|p| p.a.clone()).collect();
        let b: Vec<Matrix<F>> = parts.iter().map(|p| p.b.clone()).collect();
        Pencil {
            a: Matrix::block_diag(field, &a),
            b: Matrix::block_diag(field, &b),
        }
    }

    /// Assembles `[[p11, p12], [p21, p22]]`.
    pub fn from_blocks(p11: &Self, p12: &Self, p21: &Self, p22: &Self) -> Result<Self> {
        let a = p11.a.hstack(&p12.a)?.vstack(&p21.a.hstack(&p22.a)?)?;
        let b = p11.b.hstack(&p12.b)?.vstack(&p21.b.hstack(&p22.b)?)?;
        Pencil::new(a, b)
    }
}

/// The canonical block `L_ε = (0 I) + λ(I 0)` of size `ε × (ε+1)`.
pub fn column_block<F: Field>(field: &F, eps: usize) -> Pencil<F> {
    let a = Matrix::from_fn(field, eps, eps + 1, |i, j| if j == i + 1 { field.one() } else { field.zero() });
    let b = Matrix::from_fn(field, eps, eps + 1, |i, j| if j == i { field.one() } else { field.zero() });
    Pencil { a, b }
}

/// Canonical pencil of a preinjective module: the zero columns of the `I_0`
/// summands first, then the blocks `L_ε` by descending `ε`.
pub fn pencil_of_module<F: Field>(field: &F, inv: &PreinjInvariants) -> Pencil<F> {
    let mut parts = Vec::new();
    for _ in 0..inv.get(0) {
        parts.push(column_block(field, 0));
    }
    for eps in inv.positive_indices_descending() {
        parts.push(column_block(field, eps));
    }
    Pencil::block_diag(field, &parts)
}

/// Canonical pencil of a preprojective module: the transpose of the
/// preinjective canonical pencil with the same multiplicities.
pub fn pencil_of_preprojective<F: Field>(field: &F, inv: &PreprojInvariants) -> Pencil<F> {
    pencil_of_module(field, &inv.reinterpret()).transpose()
}

/// The block-Toeplitz matrix `T_k` of size `(k+1)m × kn` whose kernel is the
/// space of polynomial solutions of `(A + λB) x(λ) = 0` with `deg x < k`.
pub fn toeplitz<F: Field>(p: &Pencil<F>, k: usize) -> Matrix<F> {
    let (m, n) = p.shape();
    let mut t = Matrix::zeros(p.field(), (k + 1) * m, k * n);
    for j in 0..k {
        t.set_block(j * m, j * n, p.a());
        t.set_block((j + 1) * m, j * n, p.b());
    }
    t
}

/// `ν_k = k·n − rank(T_k)` for `k = 0..=kmax`.
pub fn nu_sequence<F: Field>(p: &Pencil<F>, kmax: usize) -> Vec<usize> {
    (0..=kmax).map(|k| nu(p, k)).collect()
}

fn nu<F: Field>(p: &Pencil<F>, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    k * p.cols() - toeplitz(p, k).rank()
}

/// Minimal column indices of a pencil that has no other Kronecker invariants.
///
/// With `ν_k = Σ_i max(0, k − ε_i)` the multiplicity of index `e` is the
/// second difference `ν_{e+1} − 2ν_e + ν_{e−1}` (with `ν_{−1} = ν_0 = 0`). The
/// pencil is accepted iff the indices found account for every row and column:
/// `Σ a_e = n − m` and `Σ e·a_e = m`.
pub fn minimal_column_indices<F: Field>(p: &Pencil<F>) -> Result<PreinjInvariants> {
    let (m, n) = p.shape();
    let mut nus = vec![0usize, nu(p, 1)];
    let mut mult = vec![nus[1]];
    let (mut count, mut weight) = (nus[1], 0usize);
    // Every minimal column index is at most m, so k = m + 1 suffices.
    let mut k = 1;
    while !(count + weight == n && weight == m) && k <= m {
        k += 1;
        nus.push(nu(p, k));
        let e = k - 1;
        let a_e = (nus[k] + nus[k - 2]) as i64 - 2 * nus[k - 1] as i64;
        if a_e < 0 {
            return Err(Error::NotColumnMinimalOnly(format!(
                "rank sequence is not convex at k = {k}"
            )));
        }
        mult.push(a_e as usize);
        count += a_e as usize;
        weight += e * a_e as usize;
    }
    if count + m != n || weight != m {
        return Err(Error::NotColumnMinimalOnly(format!(
            "indices found account for {count} blocks of total index {weight}, \
             but a {m}x{n} pencil needs {} blocks of total index {m}",
            n as i64 - m as i64
        )));
    }
    Ok(PreinjInvariants::new(mult))
}

/// Minimal row indices of a pencil that has no other Kronecker invariants,
/// read as a preprojective module.
pub fn minimal_row_indices<F: Field>(p: &Pencil<F>) -> Result<PreprojInvariants> {
    match minimal_column_indices(&p.transpose()) {
        Ok(inv) => Ok(inv.reinterpret()),
        Err(Error::NotColumnMinimalOnly(msg)) => Err(Error::NotRowMinimalOnly(msg)),
        Err(e) => Err(e),
    }
}

/// `P_l · P · Q_r` for seeded random invertible `P_l`, `Q_r`.
pub fn scramble<F: Field>(p: &Pencil<F>, seed: u64) -> Pencil<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = Matrix::random_invertible(p.field(), p.rows(), &mut rng);
    let right = Matrix::random_invertible(p.field(), p.cols(), &mut rng);
    p.transform(&left, &right).expect("shapes agree by construction")
}

/// Strict equivalence of two pencils that have only minimal column indices.
pub fn strictly_equivalent_cm<F: Field>(p1: &Pencil<F>, p2: &Pencil<F>) -> Result<bool> {
    let i1 = minimal_column_indices(p1)?;
    let i2 = minimal_column_indices(p2)?;
    Ok(p1.shape() == p2.shape() && i1 == i2)
}

/// A pencil reduced to canonical form: `P · right = left · canonical`, with
/// `left` and `right` invertible, so `P = left · canonical · right⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm<F: Field> {
    pub invariants: PreinjInvariants,
    pub canonical: Pencil<F>,
    pub left: Matrix<F>,
    pub right: Matrix<F>,
}

/// The linear system on `(v_0, …, v_d)` for kernel vectors
/// `x(λ) = Σ (−λ)^k v_k`: `A v_0 = 0`, `A v_k = B v_{k−1}`, `B v_d = 0`.
fn kernel_system<F: Field>(p: &Pencil<F>, d: usize) -> Matrix<F> {
    let (m, n) = p.shape();
    let mut s = Matrix::zeros(p.field(), (d + 2) * m, (d + 1) * n);
    let neg_b = p.b().neg();
    for k in 0..=d {
        s.set_block(k * m, k * n, p.a());
        s.set_block((k + 1) * m, k * n, &neg_b);
    }
    s
}

/// Reduces a pencil with only minimal column indices to its canonical block
/// form, using a minimal polynomial basis of its right kernel.
///
/// Kernel vectors are chosen degree by degree, independent of the shifts
/// `λ^s x` of those already chosen; their coefficient vectors form the right
/// transform, and their images under `A` the left transform.
pub fn canonical_form<F: Field>(p: &Pencil<F>) -> Result<CanonicalForm<F>> {
    let field = p.field().clone();
    let invariants = minimal_column_indices(p)?;
    let canonical = pencil_of_module(&field, &invariants);
    let (m, n) = p.shape();
    if *p == canonical {
        return Ok(CanonicalForm {
            invariants,
            canonical,
            left: Matrix::identity(&field, m),
            right: Matrix::identity(&field, n),
        });
    }
    let fail = |why: &str| Error::ConstructionFailed(format!("canonical reduction: {why}"));
    // chosen[d] holds the coefficient lists (v_0..v_d) of the degree-d vectors.
    let top = invariants.top_index().unwrap_or(0);
    let mut chosen: Vec<Vec<Vec<Vec<F::Elem>>>> = vec![Vec::new(); top + 1];
    for d in 0..=top {
        let want = invariants.get(d);
        if want == 0 {
            continue;
        }
        // Shifts λ^s x of the lower-degree vectors, then the kernel basis; the
        // kernel columns that are pivots of the combined matrix are exactly the
        // ones a greedy independent choice would keep.
        let len = (d + 1) * n;
        let mut columns: Vec<Vec<F::Elem>> = Vec::new();
        for (e, vecs) in chosen.iter().enumerate().take(d) {
            for coeffs in vecs {
                for s in 0..=(d - e) {
                    let mut flat = vec![field.zero(); len];
                    for (k, v) in coeffs.iter().enumerate() {
                        flat[(s + k) * n..(s + k + 1) * n].clone_from_slice(v);
                    }
                    columns.push(flat);
                }
            }
        }
        let shifts = columns.len();
        let kernel = kernel_system(p, d).kernel();
        columns.extend((0..kernel.cols()).map(|col| (0..len).map(|r| kernel.get(r, col).clone()).collect()));
        let combined = Matrix::from_fn(&field, len, columns.len(), |r, c| columns[c][r].clone());
        let (_, pivots) = combined.rref();
        for &c in pivots.iter().filter(|&&c| c >= shifts).take(want) {
            chosen[d].push(columns[c].chunks(n).map(<[F::Elem]>::to_vec).collect());
        }
        if chosen[d].len() != want {
            return Err(fail("too few independent kernel vectors"));
        }
    }
    // Columns: ε = 0 vectors first, then descending degree.
    let mut right = Matrix::zeros(&field, n, n);
    let mut left = Matrix::zeros(&field, m, m);
    let (mut col, mut row) = (0, 0);
    let order = std::iter::once(0).chain((1..=top).rev());
    for d in order {
        for coeffs in chosen.get(d).into_iter().flatten() {
            for (k, v) in coeffs.iter().enumerate() {
                for (r, x) in v.iter().enumerate() {
                    right.set(r, col + k, x.clone());
                }
                if k >= 1 {
                    let vk = Matrix::from_vec(&field, n, 1, v.clone())?;
                    let w = p.a().mul(&vk)?;
                    for r in 0..m {
                        left.set(r, row + k - 1, w.get(r, 0).clone());
                    }
                }
            }
            col += d + 1;
            row += d;
        }
    }
    if right.rank() != n || left.rank() != m {
        return Err(fail("transforms are singular"));
    }
    if p.right_mul(&right)? != canonical.left_mul(&left)? {
        return Err(fail("transforms do not reproduce the canonical form"));
    }
    Ok(CanonicalForm {
        invariants,
        canonical,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn block_shapes() {
        let p = pencil_of_module(&Rationals, &PreinjInvariants::new(vec![0, 1, 0, 3]));
        assert_eq!(p.shape(), (10, 14));
        let p = pencil_of_module(&Rationals, &PreinjInvariants::new(vec![1, 1, 1, 0, 0, 1]));
        assert_eq!(p.shape(), (8, 12));
        assert_eq!(pencil_of_module(&Rationals, &PreinjInvariants::zero()).shape(), (0, 0));
    }

    #[test]
    fn single_block_kernel_has_dimension_one() {
        let t = toeplitz(&column_block(&Rationals, 1), 2);
        assert_eq!(t.shape(), (3, 4));
        assert_eq!(t.kernel().cols(), 1);
    }

    #[test]
    fn nu_counts_polynomial_solutions() {
        let p = pencil_of_module(&Rationals, &PreinjInvariants::new(vec![0, 1, 0, 3]));
        // ε = {1,3,3,3}: ν_k = Σ max(0, k − ε).
        assert_eq!(nu_sequence(&p, 5), vec![0, 0, 1, 2, 6, 10]);
    }

    #[test]
    fn eigenvalue_is_rejected() {
        let p = Pencil::new(
            Matrix::from_i64(&Rationals, 1, 1, &[0]).unwrap(),
            Matrix::from_i64(&Rationals, 1, 1, &[1]).unwrap(),
        )
        .unwrap();
        assert!(matches!(minimal_column_indices(&p), Err(Error::NotColumnMinimalOnly(_))));
    }

    #[test]
    fn row_block_is_rejected_as_column_minimal() {
        let p = column_block(&Rationals, 2).transpose();
        assert!(minimal_column_indices(&p).is_err());
        assert_eq!(minimal_row_indices(&p).unwrap().mult(), &[0, 0, 1]);
    }

    #[test]
    fn scrambled_pencil_keeps_indices_over_gf5() {
        let f = PrimeField::new(5).unwrap();
        let p = pencil_of_module(&f, &PreinjInvariants::new(vec![0, 2]));
        for seed in 0..10 {
            assert_eq!(minimal_column_indices(&scramble(&p, seed)).unwrap().mult(), &[0, 2]);
        }
    }

    #[test]
    fn equivalence_by_invariants() {
        let p = pencil_of_module(&Rationals, &PreinjInvariants::new(vec![0, 2]));
        let q = pencil_of_module(&Rationals, &PreinjInvariants::new(vec![1, 0, 1]));
        assert_eq!(p.shape(), q.shape());
        assert!(!strictly_equivalent_cm(&p, &q).unwrap());
        assert!(strictly_equivalent_cm(&p, &scramble(&p, 3)).unwrap());
    }

    #[test]
    fn canonical_form_undoes_scramble() {
        for mult in [vec![0, 1, 0, 3], vec![1, 1, 1, 0, 0, 1], vec![2, 0, 2]] {
            let inv = PreinjInvariants::new(mult);
            let c = pencil_of_module(&Rationals, &inv);
            for seed in 0..5 {
                let p = scramble(&c, seed);
                let cf = canonical_form(&p).unwrap();
                assert_eq!(cf.canonical, c);
                assert_eq!(p.right_mul(&cf.right).unwrap(), c.left_mul(&cf.left).unwrap());
            }
        }
    }
}
