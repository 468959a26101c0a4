//! Exact decision and construction of subpencils for matrix pencils with only
//! minimal column indices, through the dictionary with preinjective Kronecker
//! modules.
//!
//! The layers, bottom up:
//! - [`field`] and [`matrix`]: exact arithmetic over ℚ and GF(p);
//! - [`invariants`]: multiplicity vectors, dimension vectors and defect;
//! - [`criteria`]: numerical tests for embeddings, projections and subfactors;
//! - [`pencil`]: canonical pencils, minimal index extraction, canonical reduction;
//! - [`morphisms`]: explicit embeddings and projections between canonical modules;
//! - [`completion`]: the subpencil decision and explicit completion blocks;
//! - [`oracle`]: brute-force ground truth used by the test suites.

pub mod completion;
pub mod criteria;
pub mod error;
pub mod field;
pub mod invariants;
pub mod matrix;
pub mod morphisms;
pub mod oracle;
pub mod pencil;

pub use completion::{complete, complete_rm, is_subpencil_cm, is_subpencil_rm, verify_completion, CompletionResult};
pub use criteria::{
    compute_b_sequence, epi_with_p0_kernel, mono_exists, mono_exists_partition_form, ses_with_i0_cokernel,
    shift_transform, subfactor_check, subfactor_check_preproj, ShiftedSes, SubfactorWitness,
};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use invariants::{
    defect_of, dim_of, from_epsilon_list, DimVector, Invariants, ModuleKind, PreinjInvariants, Preinjective,
    PreprojInvariants, Preprojective,
};
pub use matrix::Matrix;
pub use morphisms::{
    canonical_representation, construct_epimorphism_p0_kernel, construct_monomorphism, verify_morphism,
    MorphismPair, MorphismReport, Representation,
};
pub use pencil::{
    canonical_form, minimal_column_indices, minimal_row_indices, pencil_of_module, pencil_of_preprojective,
    scramble, strictly_equivalent_cm, CanonicalForm, Pencil,
};
