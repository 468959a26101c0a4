//! Numerical decision procedures on multiplicity vectors: embeddings,
//! short exact sequences with semisimple end terms, and the subfactor test
//! with its explicit linking module.

use crate::error::{Error, Result};
use crate::invariants::{Invariants, ModuleKind, PreinjInvariants, Preinjective, PreprojInvariants};

/// Certificate that `I'` is a subfactor of `I`: `I' ↪ L ↞ I` with
/// `L / I' ≅ β I_0` and kernel of `I ↠ L` equal to `α P_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfactorWitness<K: ModuleKind = Preinjective> {
    /// The linking module `L = ⊕ b_i I_i`.
    pub linking: Invariants<K>,
    /// The raw sequence `(b_0, …, b_n)` on the common padded length.
    pub b_seq: Vec<i64>,
    /// Multiplicity of `P_0` in the kernel of `I ↠ L`: `∂L − ∂I`.
    pub alpha: usize,
    /// Multiplicity of `I_0` in the cokernel of `I' ↪ L`: `∂L − ∂I'`.
    pub beta: usize,
}

fn weighted_prefix(v: &[usize], k: usize) -> i64 {
    (1..=k).map(|i| (i * v.get(i).copied().unwrap_or(0)) as i64).sum()
}

/// Whether `I'` embeds in `I`: `a_0 ≤ b_0` and, for every `k ≥ 1`,
/// `a_1 + 2a_2 + … + k a_k ≤ b_1 + 2b_2 + … + k b_k`.
pub fn mono_exists(iprime: &PreinjInvariants, i: &PreinjInvariants) -> bool {
    let (a, b) = (iprime.mult(), i.mult());
    let len = a.len().max(b.len());
    iprime.get(0) <= i.get(0) && (1..len).all(|k| weighted_prefix(a, k) <= weighted_prefix(b, k))
}

/// The same decision in partition form: with `I' = I_{d_1} ⊕ … ⊕ I_{d_n} ⊕ d I_0`
/// and `I = I_{c_1} ⊕ … ⊕ I_{c_m} ⊕ c I_0` (indices descending), an embedding
/// exists iff `d ≤ c` and `d_i + … + d_n ≤ Σ_{c_j ≤ d_i} c_j` for every `i`.
pub fn mono_exists_partition_form(iprime: &PreinjInvariants, i: &PreinjInvariants) -> bool {
    let d = iprime.positive_indices_descending();
    let c = i.positive_indices_descending();
    if iprime.get(0) > i.get(0) {
        return false;
    }
    (0..d.len()).all(|k| {
        let tail: usize = d[k..].iter().sum();
        let bound: usize = c.iter().filter(|&&cj| cj <= d[k]).sum();
        tail <= bound
    })
}

/// Whether there is a short exact sequence `0 → I' → I → β I_0 → 0`; returns
/// `β` when there is. This is an embedding with equal vertex-1 dimension.
pub fn ses_with_i0_cokernel(iprime: &PreinjInvariants, i: &PreinjInvariants) -> Option<usize> {
    let top = iprime.mult().len().max(i.mult().len());
    let equal_top = weighted_prefix(iprime.mult(), top) == weighted_prefix(i.mult(), top);
    if equal_top && mono_exists(iprime, i) {
        Some((i.defect() - iprime.defect()) as usize)
    } else {
        None
    }
}

/// Whether there is a short exact sequence `0 → α P_0 → I → L → 0`; returns `α`.
///
/// Decided by raising every index of both modules by one and asking for
/// `0 → I^(+1) → L^(+1) → α I_0 → 0`. Errors when `L` has fewer summands than
/// `I`, which would make `α` negative.
pub fn epi_with_p0_kernel(i: &PreinjInvariants, l: &PreinjInvariants) -> Result<Option<usize>> {
    let alpha = l.defect() - i.defect();
    if alpha < 0 {
        return Err(Error::InvalidShape(format!(
            "{} has fewer summands than {}, so no P0 kernel fits",
            l, i
        )));
    }
    Ok(ses_with_i0_cokernel(&i.shifted(1), &l.shifted(1)))
}

/// The transformed short-exact-sequence question for a preprojective kernel.
///
/// `0 → P_{a_1} ⊕ … ⊕ P_{a_n} → I_{c_1} ⊕ … → I_{d_1} ⊕ … → 0` exists iff
/// `0 → ⊕ I_{c_j + s} → ⊕ I_{d_i + s} → I_{a_n − a_1} ⊕ … ⊕ I_{a_n − a_{n−1}} ⊕ I_0 → 0`
/// does, where `s = a_n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSes {
    /// Index shift `a_n + 1` applied to both preinjective terms.
    pub shift: usize,
    /// Shifted indices of the middle term of the original sequence (new submodule).
    pub sub: Vec<usize>,
    /// Shifted indices of the quotient of the original sequence (new middle term).
    pub middle: Vec<usize>,
    /// Indices of the new cokernel, `a_n − a_1, …, a_n − a_{n−1}, 0`.
    pub cokernel: Vec<usize>,
}

/// Builds the shifted question from `d` (quotient indices, descending, length `q`),
/// `c` (middle indices, descending, length `q − n`) and `a` (kernel indices,
/// ascending, length `n`). Does not decide existence.
pub fn shift_transform(d: &[usize], c: &[usize], a: &[usize]) -> Result<ShiftedSes> {
    let (q, n) = (d.len(), a.len());
    if n == 0 || q <= n {
        return Err(Error::InvalidShape(format!(
            "need q > n > 0, got q = {q}, n = {n}"
        )));
    }
    if c.len() != q - n {
        return Err(Error::InvalidShape(format!(
            "middle term has {} summands, expected q - n = {}",
            c.len(),
            q - n
        )));
    }
    let descending = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
    if !descending(d) || !descending(c) || !a.windows(2).all(|w| w[0] <= w[1]) {
        return Err(Error::InvalidShape(
            "d and c must be descending and a ascending".into(),
        ));
    }
    let an = a[n - 1];
    let shift = an + 1;
    let mut cokernel: Vec<usize> = a[..n - 1].iter().map(|&ai| an - ai).collect();
    cokernel.push(0);
    Ok(ShiftedSes {
        shift,
        sub: c.iter().map(|&x| x + shift).collect(),
        middle: d.iter().map(|&x| x + shift).collect(),
        cokernel,
    })
}

/// The decreasing recursion for `(b_0, …, b_n)` on the zero-padded vectors.
///
/// `b_1` and `b_0` are given by their closing equalities for every `n`; the
/// top value `min(a_n, c_n)` applies only when `n ≥ 2`. Values are returned raw
/// and may be negative when the subfactor test fails.
pub fn compute_b_sequence(a: &[usize], c: &[usize]) -> Vec<i64> {
    let len = a.len().max(c.len()).max(1);
    let n = len - 1;
    let av: Vec<i64> = (0..len).map(|i| a.get(i).copied().unwrap_or(0) as i64).collect();
    let cv: Vec<i64> = (0..len).map(|i| c.get(i).copied().unwrap_or(0) as i64).collect();
    let mut b = vec![0i64; len];
    // Weighted suffix sums of the already-fixed b's.
    let sum_a = |from: usize| (from..len).map(|i| i as i64 * av[i]).sum::<i64>();
    let sum_c = |from: usize| (from..len).map(|i| (i as i64 + 1) * cv[i]).sum::<i64>();
    if n >= 2 {
        b[n] = av[n].min(cv[n]);
        for t in (2..n).rev() {
            let sb: i64 = (t + 1..len).map(|i| i as i64 * b[i]).sum();
            let sb1: i64 = (t + 1..len).map(|i| (i as i64 + 1) * b[i]).sum();
            let x = (sum_a(t) - sb).div_euclid(t as i64);
            let y = (sum_c(t) - sb1).div_euclid(t as i64 + 1);
            // floor(min(p, q)) = min(floor(p), floor(q)).
            b[t] = x.min(y);
        }
    }
    if n >= 1 {
        b[1] = sum_a(1) - (2..len).map(|i| i as i64 * b[i]).sum::<i64>();
    }
    b[0] = sum_c(0) - (1..len).map(|i| (i as i64 + 1) * b[i]).sum::<i64>();
    b
}

fn subfactor_core<K: ModuleKind>(a: &Invariants<K>, c: &Invariants<K>) -> Option<SubfactorWitness<K>> {
    let b = compute_b_sequence(a.mult(), c.mult());
    let len = b.len();
    let c_weight: i64 = (1..len).map(|i| (i as i64 + 1) * c.get(i) as i64).sum();
    let b_weight: i64 = (2..len).map(|i| (i as i64 + 1) * b[i]).sum();
    let b1 = b.get(1).copied().unwrap_or(0);
    let first = 2 * b1 <= c_weight - b_weight;
    let second = b[0] >= a.get(0) as i64;
    if !(first && second) || b.iter().any(|&x| x < 0) {
        return None;
    }
    let linking = Invariants::<K>::new(b.iter().map(|&x| x as usize).collect());
    let (dl, di, dip) = (linking.summand_count() as i64, c.summand_count() as i64, a.summand_count() as i64);
    if dl < di || dl < dip {
        return None;
    }
    Some(SubfactorWitness {
        alpha: (dl - di) as usize,
        beta: (dl - dip) as usize,
        linking,
        b_seq: b,
    })
}

/// Whether `I'` (multiplicities `a`) is a subfactor of `I` (multiplicities `c`),
/// with the linking module `⊕ b_i I_i` when it is.
pub fn subfactor_check(a: &PreinjInvariants, c: &PreinjInvariants) -> Option<SubfactorWitness> {
    subfactor_core(a, c)
}

/// The same test for preprojective modules; the arithmetic is identical and
/// the linking module is read as `⊕ b_i P_i`.
pub fn subfactor_check_preproj(
    a: &PreprojInvariants,
    c: &PreprojInvariants,
) -> Option<SubfactorWitness<crate::invariants::Preprojective>> {
    subfactor_core(a, c)
}
