//! Subpencil decisions and explicit completions.
//!
//! `A' + λB'` (`m' × n'`) is a subpencil of `A + λB` (`m × n`) when some pencil
//! strictly equivalent to `A + λB` has `A' + λB'` as its top-left block. For
//! pencils with only minimal column indices this holds iff the module of
//! `A' + λB'` is a subfactor of the module of `A + λB`; the completion is
//! built from an embedding into the linking module and a projection onto it.

use crate::criteria::{subfactor_check, subfactor_check_preproj, SubfactorWitness};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariants::Preprojective;
use crate::matrix::Matrix;
use crate::morphisms::{construct_epimorphism_p0_kernel, construct_monomorphism};
use crate::pencil::{canonical_form, minimal_column_indices, minimal_row_indices, strictly_equivalent_cm, Pencil};

/// The blocks completing `A' + λB'` to a pencil strictly equivalent to `A + λB`:
/// `left · (A + λB) · right = [[A' + λB', A12 + λB12], [A21 + λB21, A22 + λB22]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionResult<F: Field> {
    pub a12: Matrix<F>,
    pub b12: Matrix<F>,
    pub a21: Matrix<F>,
    pub b21: Matrix<F>,
    pub a22: Matrix<F>,
    pub b22: Matrix<F>,
    pub left: Matrix<F>,
    pub right: Matrix<F>,
    pub witness: SubfactorWitness,
}

impl<F: Field> CompletionResult<F> {
    /// The full block pencil with `sub` in the top-left corner.
    pub fn assemble(&self, sub: &Pencil<F>) -> Result<Pencil<F>> {
        Pencil::from_blocks(
            sub,
            &Pencil::new(self.a12.clone(), self.b12.clone())?,
            &Pencil::new(self.a21.clone(), self.b21.clone())?,
            &Pencil::new(self.a22.clone(), self.b22.clone())?,
        )
    }
}

/// Decides the subpencil relation for pencils with only minimal column indices.
pub fn is_subpencil_cm<F: Field>(sub: &Pencil<F>, sup: &Pencil<F>) -> Result<Option<SubfactorWitness>> {
    let a = minimal_column_indices(sub)?;
    let c = minimal_column_indices(sup)?;
    Ok(subfactor_check(&a, &c))
}

/// Decides the subpencil relation for pencils with only minimal row indices,
/// by transposing both and reading the linking module as preprojective.
pub fn is_subpencil_rm<F: Field>(
    sub: &Pencil<F>,
    sup: &Pencil<F>,
) -> Result<Option<SubfactorWitness<Preprojective>>> {
    let a = minimal_row_indices(sub)?;
    let c = minimal_row_indices(sup)?;
    Ok(subfactor_check_preproj(&a, &c))
}

/// Builds an explicit completion of `sub` to a pencil strictly equivalent to `sup`.
///
/// Both pencils are first reduced to canonical form. With an embedding
/// `(F_1, F_2)` of the module of `sub` into the linking module `L` and a
/// projection `(G_1, G_2)` of the module of `sup` onto `L`, the vertex-1 map of
/// the embedding and the vertex-2 map of the projection are square and
/// invertible; the canonical `sub` then equals `X · sup_can · Y` with
/// `X = F_1⁻¹ G_1 = D_1 (I 0) D_2` and `Y = G_2⁻¹ F_2 = C_1 (I; 0) C_2`.
pub fn complete<F: Field>(sub: &Pencil<F>, sup: &Pencil<F>, seed: u64) -> Result<CompletionResult<F>> {
    let field = sup.field().clone();
    let cs = canonical_form(sub)?;
    let cl = canonical_form(sup)?;
    let witness = subfactor_check(&cs.invariants, &cl.invariants).ok_or(Error::NotSubpencil)?;
    let (m1, n1) = sub.shape();
    let (m, n) = sup.shape();
    let mono = construct_monomorphism(&field, &cs.invariants, &witness.linking, seed)?;
    let epi = construct_epimorphism_p0_kernel(&field, &cl.invariants, &witness.linking, seed.wrapping_add(1))?;

    let x = mono.f1.invert()?.mul(&epi.f1)?;
    let y = epi.f2.invert()?.mul(&mono.f2)?;
    let (d1, d2) = x.full_rank_factor_wide()?;
    let (c1, c2) = y.full_rank_factor_tall()?;
    let left_c = Matrix::block_diag(&field, &[d1, Matrix::identity(&field, m - m1)]).mul(&d2)?;
    let right_c = c1.mul(&Matrix::block_diag(&field, &[c2, Matrix::identity(&field, n - n1)]))?;

    let left = Matrix::block_diag(&field, &[cs.left.clone(), Matrix::identity(&field, m - m1)])
        .mul(&left_c)?
        .mul(&cl.left.invert()?)?;
    let right = cl
        .right
        .mul(&right_c)?
        .mul(&Matrix::block_diag(&field, &[cs.right.invert()?, Matrix::identity(&field, n - n1)]))?;

    let full = sup.transform(&left, &right)?;
    let result = CompletionResult {
        a12: full.a().submatrix(0, m1, n1, n),
        b12: full.b().submatrix(0, m1, n1, n),
        a21: full.a().submatrix(m1, m, 0, n1),
        b21: full.b().submatrix(m1, m, 0, n1),
        a22: full.a().submatrix(m1, m, n1, n),
        b22: full.b().submatrix(m1, m, n1, n),
        left,
        right,
        witness,
    };
    // Invertible transforms with an exact match already make the assembled
    // pencil strictly equivalent to `sup`, so the index comparison is skipped.
    if !transforms_match(sub, sup, &result)? {
        return Err(Error::ConstructionFailed("assembled completion failed verification".into()));
    }
    Ok(result)
}

/// Completion for pencils with only minimal row indices, by transposition:
/// a completion of `subᵀ` inside `supᵀ` transposes to one of `sub` inside `sup`.
pub fn complete_rm<F: Field>(sub: &Pencil<F>, sup: &Pencil<F>, seed: u64) -> Result<CompletionResult<F>> {
    let t = complete(&sub.transpose(), &sup.transpose(), seed).map_err(|e| match e {
        Error::NotColumnMinimalOnly(msg) => Error::NotRowMinimalOnly(msg),
        other => other,
    })?;
    Ok(CompletionResult {
        a12: t.a21.transpose(),
        b12: t.b21.transpose(),
        a21: t.a12.transpose(),
        b21: t.b12.transpose(),
        a22: t.a22.transpose(),
        b22: t.b22.transpose(),
        left: t.right.transpose(),
        right: t.left.transpose(),
        witness: t.witness,
    })
}

/// Checks a completion: block shapes, invertible transforms, exact equality
/// `left · sup · right = assembled` (which fixes the top-left block to `sub`),
/// and strict equivalence of the assembled pencil with `sup`.
pub fn verify_completion<F: Field>(sub: &Pencil<F>, sup: &Pencil<F>, r: &CompletionResult<F>) -> Result<bool> {
    if !transforms_match(sub, sup, r)? {
        return Ok(false);
    }
    match strictly_equivalent_cm(&r.assemble(sub)?, sup) {
        Ok(eq) => Ok(eq),
        Err(Error::NotColumnMinimalOnly(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Shapes, invertibility of both transforms, and `left · sup · right = assembled`.
fn transforms_match<F: Field>(sub: &Pencil<F>, sup: &Pencil<F>, r: &CompletionResult<F>) -> Result<bool> {
    let (m1, n1) = sub.shape();
    let (m, n) = sup.shape();
    if m1 > m || n1 > n {
        return Err(Error::ShapeMismatch(format!(
            "{m1}x{n1} pencil cannot sit inside a {m}x{n} pencil"
        )));
    }
    let expect = [
        (&r.a12, (m1, n - n1)),
        (&r.b12, (m1, n - n1)),
        (&r.a21, (m - m1, n1)),
        (&r.b21, (m - m1, n1)),
        (&r.a22, (m - m1, n - n1)),
        (&r.b22, (m - m1, n - n1)),
        (&r.left, (m, m)),
        (&r.right, (n, n)),
    ];
    for (mat, shape) in expect {
        if mat.shape() != shape {
            return Err(Error::ShapeMismatch(format!(
                "completion block is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                shape.0,
                shape.1
            )));
        }
    }
    if r.left.rank() != m || r.right.rank() != n {
        return Ok(false);
    }
    let transformed = sup.transform(&r.left, &r.right)?;
    if transformed.block(0, m1, 0, n1) != *sub {
        return Ok(false);
    }
    Ok(transformed == r.assemble(sub)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::invariants::PreinjInvariants;
    use crate::pencil::{pencil_of_module, scramble};

    fn canon<F: Field>(f: &F, v: &[usize]) -> Pencil<F> {
        pencil_of_module(f, &PreinjInvariants::new(v.to_vec()))
    }

    #[test]
    fn worked_example_completes() {
        let sub = canon(&Rationals, &[1, 1, 1, 0, 0, 1]);
        let sup = canon(&Rationals, &[0, 1, 0, 3]);
        let r = complete(&sub, &sup, 0).unwrap();
        assert_eq!(r.a12.shape(), (8, 2));
        assert_eq!(r.a21.shape(), (2, 12));
        assert_eq!(r.a22.shape(), (2, 2));
        assert!(verify_completion(&sub, &sup, &r).unwrap());
    }

    #[test]
    fn pencil_inside_itself() {
        let p = scramble(&canon(&Rationals, &[1, 0, 2]), 4);
        let r = complete(&p, &p, 0).unwrap();
        assert_eq!((r.witness.alpha, r.witness.beta), (0, 0));
        assert_eq!(r.a22.shape(), (0, 0));
        assert_eq!(p.transform(&r.left, &r.right).unwrap(), p);
    }

    #[test]
    fn zero_column_inside_single_block() {
        let f = PrimeField::new(5).unwrap();
        let sub = canon(&f, &[1]);
        let sup = scramble(&canon(&f, &[0, 1]), 2);
        let r = complete(&sub, &sup, 0).unwrap();
        assert_eq!(r.a12.shape(), (0, 1));
        assert_eq!(r.a21.shape(), (1, 1));
        assert!(verify_completion(&sub, &sup, &r).unwrap());
    }

    #[test]
    fn perturbed_completion_is_rejected() {
        let sub = canon(&Rationals, &[1, 1, 1, 0, 0, 1]);
        let sup = canon(&Rationals, &[0, 1, 0, 3]);
        let mut r = complete(&sub, &sup, 0).unwrap();
        let bumped = Rationals.add(r.a22.get(0, 0), &Rationals.one());
        r.a22.set(0, 0, bumped);
        assert!(!verify_completion(&sub, &sup, &r).unwrap());
    }

    #[test]
    fn negative_case_is_not_a_subpencil() {
        let sub = canon(&Rationals, &[0, 0, 2]);
        let sup = canon(&Rationals, &[0, 1, 0, 1]);
        assert_eq!(is_subpencil_cm(&sub, &sup).unwrap(), None);
        assert_eq!(complete(&sub, &sup, 0), Err(Error::NotSubpencil));
        assert_eq!(is_subpencil_rm(&sub.transpose(), &sup.transpose()).unwrap(), None);
    }

    #[test]
    fn row_minimal_completion_by_transposition() {
        let sub = canon(&Rationals, &[1, 1]).transpose();
        let sup = scramble(&canon(&Rationals, &[0, 1, 1]), 9).transpose();
        let r = complete_rm(&sub, &sup, 0).unwrap();
        let full = sup.transform(&r.left, &r.right).unwrap();
        assert_eq!(full, r.assemble(&sub).unwrap());
    }
}
