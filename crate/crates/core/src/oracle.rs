//! Independent brute-force ground truth for the numerical criteria.
//!
//! Nothing here calls into [`crate::criteria`]: morphisms are found by
//! solving the commutation equations and enumerating the solution space over
//! GF(p), quotients by enumerating subspaces, and the linking system by
//! exhaustive integer search.

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::invariants::{DimVector, PreinjInvariants};
use crate::matrix::Matrix;
use crate::morphisms::{canonical_representation, Representation};

/// Largest number of free coordinates an enumeration may range over.
pub const MAX_ENUMERATION_DIM: usize = 16;

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank of a row-major `rows x cols` matrix over GF(p); clobbers `data`.
fn rank_mod_p(data: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                data.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = pow_mod(data[rank * cols + c], p - 2, p);
        for j in c..cols {
            data[rank * cols + j] = data[rank * cols + j] * inv % p;
        }
        for r in rank + 1..rows {
            let factor = data[r * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = factor * data[rank * cols + j] % p;
                data[r * cols + j] = (data[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn to_u64(m: &Matrix<PrimeField>) -> Vec<u64> {
    m.entries().to_vec()
}

/// Whether `p` is an admissible prime; returns the field.
fn prime_field(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

/// Basis (as rows) of the solution space of the commutation equations
/// `f1 α_S = α_M f2`, `f1 β_S = β_M f2`; unknowns are `vec(f1)` then `vec(f2)`,
/// both row-major.
fn hom_basis(f: &PrimeField, s: &Representation<PrimeField>, m: &Representation<PrimeField>) -> Vec<Vec<u64>> {
    let (ds, dm) = (s.dim(), m.dim());
    let n1 = dm.d1 * ds.d1;
    let n2 = dm.d2 * ds.d2;
    let eqs = 2 * dm.d1 * ds.d2;
    let mut sys = Matrix::zeros(f, eqs, n1 + n2);
    let mut row = 0;
    for (src, dst) in [(&s.alpha, &m.alpha), (&s.beta, &m.beta)] {
        for r in 0..dm.d1 {
            for c in 0..ds.d2 {
                // (f1 src)_{rc} = Σ_k f1[r,k] src[k,c]
                for k in 0..ds.d1 {
                    let v = src.get(k, c);
                    if *v != 0 {
                        let idx = r * ds.d1 + k;
                        let cur = *sys.get(row, idx);
                        sys.set(row, idx, f.add(&cur, v));
                    }
                }
                // − (dst f2)_{rc} = − Σ_k dst[r,k] f2[k,c]
                for k in 0..dm.d2 {
                    let v = dst.get(r, k);
                    if *v != 0 {
                        let idx = n1 + k * ds.d2 + c;
                        let cur = *sys.get(row, idx);
                        sys.set(row, idx, f.sub(&cur, v));
                    }
                }
                row += 1;
            }
        }
    }
    let k = sys.kernel();
    (0..k.cols()).map(|j| (0..k.rows()).map(|i| *k.get(i, j)).collect()).collect()
}

/// Row basis of the span of `vectors`.
fn span_basis(f: &PrimeField, vectors: &[Vec<u64>], len: usize) -> Vec<Vec<u64>> {
    if vectors.is_empty() || len == 0 {
        return Vec::new();
    }
    let m = Matrix::from_vec(f, vectors.len(), len, vectors.concat()).expect("rectangular");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Visits every GF(p)-combination of `basis` (including zero) by an odometer
/// in which each step adds a single basis vector; stops when `visit` is true.
fn any_combination(basis: &[Vec<u64>], len: usize, p: u64, mut visit: impl FnMut(&[u64]) -> bool) -> bool {
    let mut cur = vec![0u64; len];
    let mut digits = vec![0u64; basis.len()];
    loop {
        if visit(&cur) {
            return true;
        }
        let mut j = 0;
        loop {
            if j == basis.len() {
                return false;
            }
            for (x, b) in cur.iter_mut().zip(&basis[j]) {
                *x = (*x + b) % p;
            }
            digits[j] += 1;
            if digits[j] < p {
                break;
            }
            // p additions of the same vector return to the previous state.
            digits[j] = 0;
            j += 1;
        }
    }
}

/// Dimension of the common kernel of both arrows at vertex 2.
fn socle_dim(r: &Representation<PrimeField>) -> usize {
    let stacked = r.alpha.vstack(&r.beta).expect("same width");
    r.dim().d2 - stacked.rank()
}

/// Whether an injective morphism `I' → I` exists over GF(p), by enumeration.
///
/// Morphisms with `f1 = 0` are exactly those with `f2` landing in the socle
/// `Z(I)` (vectors killed by both arrows), and any such map may be added to a
/// morphism. Given injective `f1`, the vertex-2 kernel of a morphism lies in
/// `Z(I')`, which any morphism maps into `Z(I)`; so a correction from the
/// socle part makes `f2` injective iff `dim Z(I') ≤ dim Z(I)`. The search thus
/// ranges over the vertex-1 components of `Hom(I', I)` only.
pub fn mono_exists_bruteforce(iprime: &PreinjInvariants, i: &PreinjInvariants, p: u64) -> Result<bool> {
    let f = prime_field(p)?;
    let (s, m) = (canonical_representation(&f, iprime), canonical_representation(&f, i));
    mono_exists_between(&f, &s, &m)
}

fn mono_exists_between(f: &PrimeField, s: &Representation<PrimeField>, m: &Representation<PrimeField>) -> Result<bool> {
    let (ds, dm) = (s.dim(), m.dim());
    if ds.d1 > dm.d1 || ds.d2 > dm.d2 || socle_dim(s) > socle_dim(m) {
        return Ok(false);
    }
    if ds.d1 == 0 {
        return Ok(true);
    }
    let n1 = dm.d1 * ds.d1;
    let hom = hom_basis(f, s, m);
    let projected: Vec<Vec<u64>> = hom.iter().map(|v| v[..n1].to_vec()).collect();
    let basis = span_basis(f, &projected, n1);
    if basis.len() > MAX_ENUMERATION_DIM {
        return Err(Error::BudgetExceeded(format!(
            "{} free coordinates exceed the limit of {MAX_ENUMERATION_DIM}",
            basis.len()
        )));
    }
    let p = f.modulus();
    let mut scratch = vec![0u64; n1];
    Ok(any_combination(&basis, n1, p, |f1| {
        scratch.copy_from_slice(f1);
        rank_mod_p(&mut scratch, dm.d1, ds.d1, p) == ds.d1
    }))
}

/// Plain enumeration of all of `Hom(I', I)` for an injective element; only
/// usable at tiny sizes, as a check on the reduction above.
pub fn mono_exists_bruteforce_naive(iprime: &PreinjInvariants, i: &PreinjInvariants, p: u64) -> Result<bool> {
    let f = prime_field(p)?;
    let (s, m) = (canonical_representation(&f, iprime), canonical_representation(&f, i));
    let (ds, dm) = (s.dim(), m.dim());
    let (n1, n2) = (dm.d1 * ds.d1, dm.d2 * ds.d2);
    let hom = hom_basis(&f, &s, &m);
    if hom.len() > MAX_ENUMERATION_DIM {
        return Err(Error::BudgetExceeded(format!("Hom dimension {}", hom.len())));
    }
    let mut s1 = vec![0u64; n1];
    let mut s2 = vec![0u64; n2];
    Ok(any_combination(&hom, n1 + n2, p, |v| {
        s1.copy_from_slice(&v[..n1]);
        s2.copy_from_slice(&v[n1..]);
        rank_mod_p(&mut s1, dm.d1, ds.d1, p) == ds.d1 && rank_mod_p(&mut s2, dm.d2, ds.d2, p) == ds.d2
    }))
}

/// `ν_k = k·n − rank(T_k)` of the pencil `A + λB` over GF(p), row-major `m x n` parts.
fn nu_mod_p(a: &[u64], b: &[u64], m: usize, n: usize, k: usize, p: u64) -> usize {
    let rows = (k + 1) * m;
    let cols = k * n;
    let mut t = vec![0u64; rows * cols];
    for j in 0..k {
        for r in 0..m {
            for c in 0..n {
                t[(j * m + r) * cols + j * n + c] = a[r * n + c];
                t[((j + 1) * m + r) * cols + j * n + c] = b[r * n + c];
            }
        }
    }
    cols - rank_mod_p(&mut t, rows, cols, p)
}

/// Visits every `r x n` matrix in reduced row echelon form of rank `r` over
/// GF(p); stops when `visit` is true.
fn any_rref(r: usize, n: usize, p: u64, visit: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn pivots_rec(start: usize, r: usize, n: usize, piv: &mut Vec<usize>, p: u64, visit: &mut impl FnMut(&[u64]) -> bool) -> bool {
        if piv.len() == r {
            let mut free = Vec::new();
            for (row, &pc) in piv.iter().enumerate() {
                for col in pc + 1..n {
                    if !piv.contains(&col) {
                        free.push(row * n + col);
                    }
                }
            }
            let mut m = vec![0u64; r * n];
            for (row, &pc) in piv.iter().enumerate() {
                m[row * n + pc] = 1;
            }
            let mut digits = vec![0u64; free.len()];
            loop {
                if visit(&m) {
                    return true;
                }
                let mut j = 0;
                loop {
                    if j == free.len() {
                        return false;
                    }
                    digits[j] = (digits[j] + 1) % p;
                    m[free[j]] = digits[j];
                    if digits[j] != 0 {
                        break;
                    }
                    j += 1;
                }
            }
        }
        for c in start..n {
            piv.push(c);
            if pivots_rec(c + 1, r, n, piv, p, visit) {
                return true;
            }
            piv.pop();
        }
        false
    }
    pivots_rec(0, r, n, &mut Vec::new(), p, visit)
}

/// Number of `r`-dimensional subspaces of GF(p)^n (Gaussian binomial), saturating.
fn subspace_count(n: usize, r: usize, p: u64) -> u128 {
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num = num.saturating_mul(p.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(p.saturating_pow((i + 1) as u32).saturating_sub(1));
    }
    num / den.max(1)
}

/// Whether some surjection `I → L` over GF(p) has kernel of dimension `(α, 0)`,
/// i.e. `α P_0`.
///
/// Such kernels are exactly the subspaces `U ⊂ V_1(I)` (with zero at vertex 2),
/// so the search runs over all quotient maps `V_1(I) → k^{d_1(L)}` in reduced
/// echelon form and compares the quotient with `L` through its `ν` sequence.
pub fn epi_p0_kernel_exists_bruteforce(i: &PreinjInvariants, l: &PreinjInvariants, p: u64) -> Result<bool> {
    let f = prime_field(p)?;
    let (di, dl) = (i.dim(), l.dim());
    if di.d2 != dl.d2 || di.d1 < dl.d1 {
        return Ok(false);
    }
    let r = dl.d1;
    if subspace_count(di.d1, r, p) > 2 * (p as u128).pow(MAX_ENUMERATION_DIM as u32) {
        return Err(Error::BudgetExceeded(format!(
            "too many {r}-dimensional quotients of a {}-dimensional space",
            di.d1
        )));
    }
    let rep = canonical_representation(&f, i);
    let (a, b) = (to_u64(&rep.beta), to_u64(&rep.alpha));
    let target = canonical_representation(&f, l);
    let (ta, tb) = (to_u64(&target.beta), to_u64(&target.alpha));
    let n = di.d2;
    let kmax = l.top_index().unwrap_or(0) + 1;
    let want: Vec<usize> = (1..=kmax).map(|k| nu_mod_p(&ta, &tb, r, n, k, p)).collect();
    let project = |rm: &[u64], x: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; r * n];
        for row in 0..r {
            for k in 0..di.d1 {
                let c = rm[row * di.d1 + k];
                if c == 0 {
                    continue;
                }
                for col in 0..n {
                    out[row * n + col] = (out[row * n + col] + c * x[k * n + col]) % p;
                }
            }
        }
        out
    };
    Ok(any_rref(r, di.d1, p, &mut |rm| {
        let (qa, qb) = (project(rm, &a), project(rm, &b));
        (1..=kmax).all(|k| nu_mod_p(&qa, &qb, r, n, k, p) == want[k - 1])
    }))
}

/// Whether `I'` is a subfactor of `I` at the matrix level over GF(p): some
/// preinjective `L` of dimension `(d_1(I'), d_2(I))` receives an embedding of
/// `I'` and a surjection from `I` with kernel `α P_0`.
pub fn subfactor_bruteforce_matrix(iprime: &PreinjInvariants, i: &PreinjInvariants, p: u64) -> Result<bool> {
    const MAX_D2: usize = 8;
    if i.dim().d2 > MAX_D2 {
        return Err(Error::BudgetExceeded(format!(
            "vertex-2 dimension {} exceeds {MAX_D2}",
            i.dim().d2
        )));
    }
    let want = DimVector::new(iprime.dim().d1, i.dim().d2);
    for l in PreinjInvariants::enumerate_by_d2(want.d2) {
        if l.dim() != want {
            continue;
        }
        if mono_exists_bruteforce(iprime, &l, p)? && epi_p0_kernel_exists_bruteforce(i, &l, p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustive search for nonnegative integers `u_0, …, u_n` satisfying the
/// linking system: `u_0 ≥ a_0`; `Σ_{i≥t} i·u_i ≤ Σ_{i≥t} i·a_i` for `t ≥ 2`, with
/// equality at `t = 1`; `Σ_{i≥t} (i+1)·u_i ≤ Σ_{i≥t} (i+1)·c_i` for `t ≥ 1`, with
/// equality at `t = 0`. Supports `n ≤ 8` and multiplicities `≤ 6`.
pub fn linking_system_feasible(a: &[usize], c: &[usize]) -> Result<bool> {
    let len = a.len().max(c.len()).max(1);
    if len > 9 || a.iter().chain(c).any(|&x| x > 6) {
        return Err(Error::BudgetExceeded("linking search supports n ≤ 8 and multiplicities ≤ 6".into()));
    }
    let av: Vec<i64> = (0..len).map(|i| a.get(i).copied().unwrap_or(0) as i64).collect();
    let cv: Vec<i64> = (0..len).map(|i| c.get(i).copied().unwrap_or(0) as i64).collect();
    let n = len - 1;
    // Suffix sums of the right-hand sides.
    let mut ra = vec![0i64; len + 1];
    let mut rc = vec![0i64; len + 1];
    for t in (0..len).rev() {
        ra[t] = ra[t + 1] + t as i64 * av[t];
        rc[t] = rc[t + 1] + (t as i64 + 1) * cv[t];
    }
    fn go(t: usize, su: i64, su1: i64, ra: &[i64], rc: &[i64], a0: i64) -> bool {
        // su = Σ_{i>t} i·u_i, su1 = Σ_{i>t} (i+1)·u_i.
        if t == 1 {
            let u1 = ra[1] - su;
            if u1 < 0 || su1 + 2 * u1 > rc[1] {
                return false;
            }
            let u0 = rc[0] - su1 - 2 * u1;
            return u0 >= a0;
        }
        let ti = t as i64;
        let mut u = 0;
        while su + ti * u <= ra[t] && su1 + (ti + 1) * u <= rc[t] {
            if go(t - 1, su + ti * u, su1 + (ti + 1) * u, ra, rc, a0) {
                return true;
            }
            u += 1;
        }
        false
    }
    if n == 0 {
        return Ok(rc[0] >= av[0]);
    }
    Ok(go(n, 0, 0, &ra, &rc, av[0]))
}
