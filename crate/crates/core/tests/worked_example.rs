mod common;

use common::worked_example::*;
use subpencil_core::{
    canonical_representation, complete, compute_b_sequence, is_subpencil_cm, minimal_column_indices, mono_exists,
    pencil_of_module, scramble, subfactor_check, verify_completion, verify_morphism, CompletionResult, DimVector, Field, Matrix,
    MorphismPair, Pencil, PrimeField, Rationals,
};

fn q() -> Rationals {
    Rationals
}

#[test]
fn module_dimensions() {
    assert_eq!((sub_module().dim().d1, sub_module().dim().d2), (8, 12));
    assert_eq!((sup_module().dim().d1, sup_module().dim().d2), (10, 14));
    assert_eq!((linking_module().dim().d1, linking_module().dim().d2), (8, 14));
    assert_eq!(sub_module().to_string(), "I5 ⊕ I2 ⊕ I1 ⊕ I0");
    assert_eq!(linking_module().format_with("+"), "I3+2I2+I1+2I0");
}

#[test]
fn subfactor_witness_matches_hand_computation() {
    let w = subfactor_check(&sub_module(), &sup_module()).expect("worked pair is a subfactor");
    assert_eq!(w.linking, linking_module());
    assert_eq!(w.b_seq, vec![2, 1, 2, 1, 0, 0]);
    assert_eq!(compute_b_sequence(sub_module().mult(), sup_module().mult()), vec![2, 1, 2, 1, 0, 0]);
    assert_eq!((w.alpha, w.beta), (2, 2));
    assert!(mono_exists(&sub_module(), &linking_module()));
}

#[test]
fn embedding_vertex2_map_has_full_column_rank() {
    assert_eq!(embed_vertex2(&q()).rank(), 12);
    assert!(embed_vertex1(&q()).is_identity());
}

#[test]
fn projection_vertex2_map_is_a_permutation() {
    let g = project_vertex2(&q());
    assert_eq!(g.invert().unwrap(), g.transpose());
    assert_eq!(project_vertex1(&q()).rank(), 8);
}

#[test]
fn hand_built_embedding_commutes_and_is_injective() {
    let f = q();
    let src = canonical_representation(&f, &sub_module());
    let dst = canonical_representation(&f, &linking_module());
    let m = MorphismPair { f1: embed_vertex1(&f), f2: embed_vertex2(&f) };
    let r = verify_morphism(&src, &dst, &m).unwrap();
    assert!(r.commutes);
    assert!(r.is_mono(src.dim()));
}

#[test]
fn hand_built_projection_commutes_and_is_surjective() {
    let f = q();
    let src = canonical_representation(&f, &sup_module());
    let dst = canonical_representation(&f, &linking_module());
    let m = MorphismPair { f1: project_vertex1(&f), f2: project_vertex2(&f) };
    let r = verify_morphism(&src, &dst, &m).unwrap();
    assert!(r.commutes);
    assert!(r.is_epi(dst.dim()));
    assert_eq!(r.kernel_dim, DimVector::new(2, 0));
}

#[test]
fn factorizations_reassemble() {
    let f = q();
    let y = project_vertex2(&f).invert().unwrap().mul(&embed_vertex2(&f)).unwrap();
    let y_fact = c1(&f).mul(&Matrix::injection(&f, 14, 12)).unwrap().mul(&c2(&f)).unwrap();
    assert_eq!(y, y_fact);

    let x = embed_vertex1(&f).invert().unwrap().mul(&project_vertex1(&f)).unwrap();
    let x_fact = d1(&f).mul(&Matrix::projection(&f, 8, 10)).unwrap().mul(&d2(&f)).unwrap();
    assert_eq!(x, x_fact);

    let c_prime = c1(&f).mul(&Matrix::block_diag(&f, &[c2(&f), Matrix::identity(&f, 2)])).unwrap();
    assert_eq!(c_prime, column_transform(&f));
}

#[test]
fn hand_built_completion_reproduces_the_blocks() {
    let f = q();
    let sub = pencil_of_module(&f, &sub_module());
    let sup = pencil_of_module(&f, &sup_module());
    let full = sup.transform(&d2(&f), &column_transform(&f)).unwrap();
    assert_eq!(full.block(0, 8, 0, 12), sub);
    let [a12, b12, a21, b21, a22, b22] = completion_blocks(&f);
    assert_eq!(full.block(0, 8, 12, 14), Pencil::new(a12.clone(), b12.clone()).unwrap());
    assert_eq!(full.block(8, 10, 0, 12), Pencil::new(a21.clone(), b21.clone()).unwrap());
    assert_eq!(full.block(8, 10, 12, 14), Pencil::new(a22.clone(), b22.clone()).unwrap());

    let witness = subfactor_check(&sub_module(), &sup_module()).unwrap();
    let result = CompletionResult { a12, b12, a21, b21, a22, b22, left: d2(&f), right: column_transform(&f), witness };
    assert!(verify_completion(&sub, &sup, &result).unwrap());
}

#[test]
fn computed_completion_verifies_over_rationals() {
    let f = q();
    let sub = pencil_of_module(&f, &sub_module());
    let sup = pencil_of_module(&f, &sup_module());
    let r = complete(&sub, &sup, 7).unwrap();
    assert_eq!(r.a12.shape(), (8, 2));
    assert_eq!(r.a21.shape(), (2, 12));
    assert_eq!(r.a22.shape(), (2, 2));
    assert!(verify_completion(&sub, &sup, &r).unwrap());
}

#[test]
fn computed_completion_verifies_on_scrambled_inputs_over_gf7() {
    let f = PrimeField::new(7).unwrap();
    let sub = scramble(&pencil_of_module(&f, &sub_module()), 11);
    let sup = scramble(&pencil_of_module(&f, &sup_module()), 12);
    assert_eq!(minimal_column_indices(&sub).unwrap(), sub_module());
    assert_eq!(minimal_column_indices(&sup).unwrap(), sup_module());
    assert!(is_subpencil_cm(&sub, &sup).unwrap().is_some());
    let r = complete(&sub, &sup, 3).unwrap();
    let full = sup.transform(&r.left, &r.right).unwrap();
    assert_eq!(full, r.assemble(&sub).unwrap());
    assert!(verify_completion(&sub, &sup, &r).unwrap());
}

#[test]
fn perturbing_a_hand_built_block_breaks_verification() {
    let f = q();
    let sub = pencil_of_module(&f, &sub_module());
    let sup = pencil_of_module(&f, &sup_module());
    let [a12, mut b12, a21, b21, a22, b22] = completion_blocks(&f);
    b12.set(0, 0, f.one());
    let witness = subfactor_check(&sub_module(), &sup_module()).unwrap();
    let result = CompletionResult { a12, b12, a21, b21, a22, b22, left: d2(&f), right: column_transform(&f), witness };
    assert!(!verify_completion(&sub, &sup, &result).unwrap());
}

#[test]
fn displayed_pencils_are_the_canonical_ones() {
    let f = q();
    assert_eq!(displayed_sup_pencil(&f), pencil_of_module(&f, &sup_module()));
    assert_eq!(displayed_sub_pencil(&f), pencil_of_module(&f, &sub_module()));
    assert_eq!(minimal_column_indices(&displayed_sup_pencil(&f)).unwrap().epsilons(), vec![1, 3, 3, 3]);
    assert_eq!(minimal_column_indices(&displayed_sub_pencil(&f)).unwrap().epsilons(), vec![0, 1, 2, 5]);
}
