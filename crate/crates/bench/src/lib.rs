//! Workloads shared by the benchmarks.

use subpencil_core::{pencil_of_module, scramble, subfactor_check, Field, Pencil, PreinjInvariants};

/// Module of the 8×12 pencil in the worked example: `I5 ⊕ I2 ⊕ I1 ⊕ I0`.
pub fn example_sub_module() -> PreinjInvariants {
    PreinjInvariants::from_epsilon_list(&[0, 1, 2, 5])
}

/// Module of the 10×14 pencil in the worked example: `3I3 ⊕ I1`.
pub fn example_sup_module() -> PreinjInvariants {
    PreinjInvariants::from_epsilon_list(&[1, 3, 3, 3])
}

/// The worked-example pair in canonical form, with the larger pencil scrambled.
pub fn example_pencils<F: Field>(field: &F, seed: u64) -> (Pencil<F>, Pencil<F>) {
    let sub = pencil_of_module(field, &example_sub_module());
    let sup = scramble(&pencil_of_module(field, &example_sup_module()), seed);
    (sub, sup)
}

/// Runs the subfactor test on every pair of modules with indices up to
/// `max_index` and multiplicities up to `max_mult`; returns the number of
/// positive answers.
pub fn subfactor_sweep(max_index: usize, max_mult: usize) -> usize {
    let all = PreinjInvariants::enumerate_bounded(max_index, max_mult);
    all.iter()
        .map(|a| all.iter().filter(|c| subfactor_check(a, c).is_some()).count())
        .sum()
}
