//! Explicit morphisms between preinjective representations.
//!
//! A representation is a pair of linear maps `α, β : V_2 → V_1`; a morphism
//! `(f1, f2)` satisfies `f1 α = α' f2` and `f1 β = β' f2`. In the canonical
//! basis every morphism is a block matrix whose block from `I_d` to `I_c`
//! (`d ≥ c`) is a band `h_{i,j} = γ_{j−i}` for `0 ≤ j − i ≤ d − c`, with the
//! same pattern in the vertex-1 block. Blocks into `I_c` (`c ≥ 1`) from `I_0`
//! vanish, while blocks into `I_0` are unconstrained.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::criteria::{epi_with_p0_kernel, mono_exists};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariants::{DimVector, PreinjInvariants};
use crate::matrix::Matrix;
use crate::pencil::{pencil_of_module, Pencil};

/// Number of randomized parameter draws tried after the greedy choice.
pub const RETRY_BUDGET: usize = 64;

/// A Kronecker representation `α, β : V_2 → V_1` given by `dim V_1 × dim V_2` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<F: Field> {
    pub alpha: Matrix<F>,
    pub beta: Matrix<F>,
}

impl<F: Field> Representation<F> {
    /// The representation of `A + λB`: `α = B`, `β = A`.
    pub fn from_pencil(p: &Pencil<F>) -> Self {
        Representation {
            alpha: p.b().clone(),
            beta: p.a().clone(),
        }
    }

    pub fn to_pencil(&self) -> Pencil<F> {
        Pencil::new(self.beta.clone(), self.alpha.clone()).expect("parts share a shape")
    }

    pub fn dim(&self) -> DimVector {
        DimVector::new(self.alpha.rows(), self.alpha.cols())
    }
}

/// A morphism: `f1` acts on vertex 1, `f2` on vertex 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismPair<F: Field> {
    pub f1: Matrix<F>,
    pub f2: Matrix<F>,
}

/// Exact commutation and rank data of a candidate morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub commutes: bool,
    pub f1_rank: usize,
    pub f2_rank: usize,
    pub kernel_dim: DimVector,
}

impl MorphismReport {
    /// Injective at both vertices.
    pub fn is_mono(&self, src: DimVector) -> bool {
        self.commutes && self.f1_rank == src.d1 && self.f2_rank == src.d2
    }

    /// Surjective at both vertices.
    pub fn is_epi(&self, dst: DimVector) -> bool {
        self.commutes && self.f1_rank == dst.d1 && self.f2_rank == dst.d2
    }
}

/// Canonical representation of a preinjective module, laid out like
/// [`pencil_of_module`]: `I_0` columns first, then blocks by descending index.
pub fn canonical_representation<F: Field>(field: &F, inv: &PreinjInvariants) -> Representation<F> {
    Representation::from_pencil(&pencil_of_module(field, inv))
}

/// Checks `f1 α = α' f2` and `f1 β = β' f2` and reports ranks and kernel dimensions.
pub fn verify_morphism<F: Field>(
    src: &Representation<F>,
    dst: &Representation<F>,
    m: &MorphismPair<F>,
) -> Result<MorphismReport> {
    let (s, t) = (src.dim(), dst.dim());
    if m.f1.shape() != (t.d1, s.d1) || m.f2.shape() != (t.d2, s.d2) {
        return Err(Error::ShapeMismatch(format!(
            "morphism {}x{} / {}x{} between modules of dimension {s} and {t}",
            m.f1.rows(),
            m.f1.cols(),
            m.f2.rows(),
            m.f2.cols()
        )));
    }
    let commutes = m.f1.mul(&src.alpha)? == dst.alpha.mul(&m.f2)?
        && m.f1.mul(&src.beta)? == dst.beta.mul(&m.f2)?;
    let (f1_rank, f2_rank) = (m.f1.rank(), m.f2.rank());
    Ok(MorphismReport {
        commutes,
        f1_rank,
        f2_rank,
        kernel_dim: DimVector::new(s.d1 - f1_rank, s.d2 - f2_rank),
    })
}

/// Summand layout of a canonical preinjective representation.
#[derive(Clone, Debug)]
struct Layout {
    zeros: usize,
    /// Positive indices, descending.
    blocks: Vec<usize>,
    /// Vertex-1 offset of each block.
    off1: Vec<usize>,
    /// Vertex-2 offset of each block (after the `I_0` columns).
    off2: Vec<usize>,
    dim: DimVector,
}

impl Layout {
    fn of(inv: &PreinjInvariants) -> Self {
        let zeros = inv.get(0);
        let blocks = inv.positive_indices_descending();
        let (mut o1, mut o2) = (0, zeros);
        let (mut off1, mut off2) = (Vec::new(), Vec::new());
        for &d in &blocks {
            off1.push(o1);
            off2.push(o2);
            o1 += d;
            o2 += d + 1;
        }
        Layout {
            zeros,
            blocks,
            off1,
            off2,
            dim: DimVector::new(o1, o2),
        }
    }
}

/// Free parameters of `Hom(src, dst)` in the canonical bases.
#[derive(Clone, Debug)]
struct HomParams<F: Field> {
    /// `gamma[i][j]`: band coefficients from source block `j` to target block `i`
    /// (empty when the source index is smaller).
    gamma: Vec<Vec<Vec<F::Elem>>>,
    /// Target `I_0` rows × source `I_0` columns.
    h00: Matrix<F>,
    /// Target `I_0` rows × columns of source block `j`.
    h0j: Vec<Matrix<F>>,
}

impl<F: Field> HomParams<F> {
    fn zero(field: &F, src: &Layout, dst: &Layout) -> Self {
        let gamma = dst
            .blocks
            .iter()
            .map(|&c| {
                src.blocks
                    .iter()
                    .map(|&d| if d >= c { vec![field.zero(); d - c + 1] } else { Vec::new() })
                    .collect()
            })
            .collect();
        HomParams {
            gamma,
            h00: Matrix::zeros(field, dst.zeros, src.zeros),
            h0j: src.blocks.iter().map(|&d| Matrix::zeros(field, dst.zeros, d + 1)).collect(),
        }
    }

    fn random<R: rand::Rng>(field: &F, src: &Layout, dst: &Layout, rng: &mut R) -> Self {
        let mut p = Self::zero(field, src, dst);
        for row in p.gamma.iter_mut() {
            for g in row.iter_mut() {
                for x in g.iter_mut() {
                    *x = field.random_small(rng);
                }
            }
        }
        p.h00 = Matrix::random(field, dst.zeros, src.zeros, rng);
        for (m, &d) in p.h0j.iter_mut().zip(&src.blocks) {
            *m = Matrix::random(field, dst.zeros, d + 1, rng);
        }
        p
    }

    fn assemble(&self, field: &F, src: &Layout, dst: &Layout) -> MorphismPair<F> {
        let mut f1 = Matrix::zeros(field, dst.dim.d1, src.dim.d1);
        let mut f2 = Matrix::zeros(field, dst.dim.d2, src.dim.d2);
        f2.set_block(0, 0, &self.h00);
        for (j, m) in self.h0j.iter().enumerate() {
            f2.set_block(0, src.off2[j], m);
        }
        for (i, &c) in dst.blocks.iter().enumerate() {
            for (j, &d) in src.blocks.iter().enumerate() {
                let g = &self.gamma[i][j];
                if g.is_empty() {
                    continue;
                }
                for (t, x) in g.iter().enumerate() {
                    if field.is_zero(x) {
                        continue;
                    }
                    for r in 0..=c {
                        f2.set(dst.off2[i] + r, src.off2[j] + r + t, x.clone());
                    }
                    for r in 0..c {
                        f1.set(dst.off1[i] + r, src.off1[j] + r + t, x.clone());
                    }
                }
                debug_assert!(g.len() == d - c + 1);
            }
        }
        MorphismPair { f1, f2 }
    }
}

/// Greedy embedding: each source block takes unused target blocks of smaller
/// or equal index, largest first, and spreads them over its coordinates.
fn greedy_mono<F: Field>(field: &F, src: &Layout, dst: &Layout) -> Option<HomParams<F>> {
    let mut p = HomParams::zero(field, src, dst);
    if src.zeros > dst.zeros {
        return None;
    }
    p.h00 = Matrix::injection(field, dst.zeros, src.zeros);
    let mut used = vec![false; dst.blocks.len()];
    for (j, &d) in src.blocks.iter().enumerate() {
        let mut covered = 0;
        for (i, &c) in dst.blocks.iter().enumerate() {
            if covered >= d {
                break;
            }
            if used[i] || c > d {
                continue;
            }
            used[i] = true;
            let shift = covered.min(d - c);
            p.gamma[i][j][shift] = field.one();
            covered += c;
        }
        if covered < d {
            return None;
        }
    }
    Some(p)
}

/// Greedy projection: each target block is fed by the unused source block
/// with the smallest admissible index; every remaining source coordinate at
/// vertex 2 is sent to its own target `I_0` coordinate.
fn greedy_epi<F: Field>(field: &F, src: &Layout, dst: &Layout) -> Option<HomParams<F>> {
    let mut p = HomParams::zero(field, src, dst);
    let mut feeder: Vec<Option<usize>> = vec![None; src.blocks.len()];
    for (i, &c) in dst.blocks.iter().enumerate() {
        let j = (0..src.blocks.len())
            .filter(|&j| feeder[j].is_none() && src.blocks[j] >= c)
            .min_by_key(|&j| (src.blocks[j], j))?;
        feeder[j] = Some(c);
        p.gamma[i][j][0] = field.one();
    }
    let mut next = 0;
    for s in 0..src.zeros {
        if next == dst.zeros {
            return None;
        }
        p.h00.set(next, s, field.one());
        next += 1;
    }
    for (j, &d) in src.blocks.iter().enumerate() {
        let first_free = feeder[j].map_or(0, |c| c + 1);
        for col in first_free..=d {
            if next == dst.zeros {
                return None;
            }
            p.h0j[j].set(next, col, field.one());
            next += 1;
        }
    }
    (next == dst.zeros).then_some(p)
}

fn search<F: Field>(
    field: &F,
    src: &Layout,
    dst: &Layout,
    greedy: Option<HomParams<F>>,
    seed: u64,
    accept: impl Fn(&MorphismPair<F>) -> Result<bool>,
) -> Result<MorphismPair<F>> {
    if let Some(p) = greedy {
        let m = p.assemble(field, src, dst);
        if accept(&m)? {
            return Ok(m);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let m = HomParams::random(field, src, dst, &mut rng).assemble(field, src, dst);
        if accept(&m)? {
            return Ok(m);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no suitable morphism after {RETRY_BUDGET} randomized attempts"
    )))
}

/// An injective morphism `I' → I` in the canonical bases.
pub fn construct_monomorphism<F: Field>(
    field: &F,
    iprime: &PreinjInvariants,
    i: &PreinjInvariants,
    seed: u64,
) -> Result<MorphismPair<F>> {
    if !mono_exists(iprime, i) {
        return Err(Error::NoMonomorphism);
    }
    let (src, dst) = (Layout::of(iprime), Layout::of(i));
    let (rs, rd) = (canonical_representation(field, iprime), canonical_representation(field, i));
    search(field, &src, &dst, greedy_mono(field, &src, &dst), seed, |m| {
        Ok(verify_morphism(&rs, &rd, m)?.is_mono(src.dim))
    })
}

/// A surjective morphism `I → L` whose kernel is `α P_0`, in the canonical bases.
pub fn construct_epimorphism_p0_kernel<F: Field>(
    field: &F,
    i: &PreinjInvariants,
    l: &PreinjInvariants,
    seed: u64,
) -> Result<MorphismPair<F>> {
    let alpha = match epi_with_p0_kernel(i, l) {
        Ok(Some(alpha)) => alpha,
        _ => return Err(Error::NoEpimorphism),
    };
    let (src, dst) = (Layout::of(i), Layout::of(l));
    let (rs, rd) = (canonical_representation(field, i), canonical_representation(field, l));
    search(field, &src, &dst, greedy_epi(field, &src, &dst), seed, |m| {
        let r = verify_morphism(&rs, &rd, m)?;
        Ok(r.is_epi(dst.dim) && r.kernel_dim == DimVector::new(alpha, 0))
    })
}

/// Whether every block between positive-index summands of a morphism between
/// canonical representations has the band shape `h_{i,j} = γ_{j−i}`,
/// `0 ≤ j − i ≤ d − c`, and blocks from `I_0` into positive summands vanish.
pub fn has_band_structure<F: Field>(
    iprime: &PreinjInvariants,
    i: &PreinjInvariants,
    m: &MorphismPair<F>,
) -> bool {
    let (src, dst) = (Layout::of(iprime), Layout::of(i));
    let f = m.f2.field();
    for (bi, &c) in dst.blocks.iter().enumerate() {
        let r0 = dst.off2[bi];
        if (0..=c).any(|r| (0..src.zeros).any(|s| !f.is_zero(m.f2.get(r0 + r, s)))) {
            return false;
        }
        for (bj, &d) in src.blocks.iter().enumerate() {
            let c0 = src.off2[bj];
            for r in 0..=c {
                for s in 0..=d {
                    let x = m.f2.get(r0 + r, c0 + s);
                    let inside = s >= r && s - r + c <= d;
                    if !inside {
                        if !f.is_zero(x) {
                            return false;
                        }
                    } else if r > 0 && m.f2.get(r0 + r - 1, c0 + s - 1) != x {
                        return false;
                    }
                }
            }
        }
    }
    true
}
