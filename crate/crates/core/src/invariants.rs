//! Multiplicity vectors of preinjective and preprojective Kronecker modules.
//!
//! A module `a_0 I_0 ⊕ a_1 I_1 ⊕ … ⊕ a_n I_n` is stored as its multiplicity
//! vector with trailing zeros trimmed, so the zero module is the empty vector
//! and equality of values is isomorphism of modules.

use std::fmt;
use std::marker::PhantomData;

/// Marker for the family of indecomposables a multiplicity vector counts.
pub trait ModuleKind: Copy + Clone + fmt::Debug + Default + PartialEq + Eq + std::hash::Hash + Send + Sync {
    /// Letter used when printing summands (`I` or `P`).
    const SYMBOL: char;
    /// Human-readable family name.
    const NAME: &'static str;
    /// Dimension vector of the indecomposable with index `n`.
    fn indecomposable_dim(n: usize) -> DimVector;
}

/// Preinjective indecomposables `I_n`, of dimension `(n, n+1)` and defect `+1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Preinjective;

/// Preprojective indecomposables `P_n`, of dimension `(n+1, n)` and defect `-1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Preprojective;

impl ModuleKind for Preinjective {
    const SYMBOL: char = 'I';
    const NAME: &'static str = "preinjective";

    fn indecomposable_dim(n: usize) -> DimVector {
        DimVector { d1: n, d2: n + 1 }
    }
}

impl ModuleKind for Preprojective {
    const SYMBOL: char = 'P';
    const NAME: &'static str = "preprojective";

    fn indecomposable_dim(n: usize) -> DimVector {
        DimVector { d1: n + 1, d2: n }
    }
}

/// Dimension vector `(dim V_1, dim V_2)` of a Kronecker module.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector {
    pub d1: usize,
    pub d2: usize,
}

impl DimVector {
    pub fn new(d1: usize, d2: usize) -> Self {
        DimVector { d1, d2 }
    }

    /// `d2 - d1`.
    pub fn defect(&self) -> i64 {
        self.d2 as i64 - self.d1 as i64
    }
}

impl std::ops::Add for DimVector {
    type Output = DimVector;

    fn add(self, o: DimVector) -> DimVector {
        DimVector::new(self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// Multiplicity vector `(a_0, …, a_n)` of a module of kind `K`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Invariants<K: ModuleKind> {
    mult: Vec<usize>,
    kind: PhantomData<K>,
}

pub type PreinjInvariants = Invariants<Preinjective>;
pub type PreprojInvariants = Invariants<Preprojective>;

impl<K: ModuleKind> Invariants<K> {
    /// Builds the canonical (trimmed) form of a multiplicity vector.
    pub fn new(mut mult: Vec<usize>) -> Self {
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Invariants {
            mult,
            kind: PhantomData,
        }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    /// `a_i = #{j : eps_j = i}`.
    pub fn from_epsilon_list(eps: &[usize]) -> Self {
        let len = eps.iter().max().map_or(0, |&m| m + 1);
        let mut mult = vec![0; len];
        for &e in eps {
            mult[e] += 1;
        }
        Self::new(mult)
    }

    /// The canonical multiplicity vector.
    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    /// Multiplicity of the indecomposable with index `i` (zero past the end).
    pub fn get(&self, i: usize) -> usize {
        self.mult.get(i).copied().unwrap_or(0)
    }

    /// Multiplicities padded with zeros to length `len` (never truncates).
    pub fn padded(&self, len: usize) -> Vec<usize> {
        let mut v = self.mult.clone();
        if v.len() < len {
            v.resize(len, 0);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    /// Largest index with nonzero multiplicity.
    pub fn top_index(&self) -> Option<usize> {
        self.mult.len().checked_sub(1)
    }

    /// Number of indecomposable summands.
    pub fn summand_count(&self) -> usize {
        self.mult.iter().sum()
    }

    /// Indices of all summands in ascending order, with repetition.
    pub fn epsilons(&self) -> Vec<usize> {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i, a))
            .collect()
    }

    /// Indices of the summands of positive index, largest first.
    pub fn positive_indices_descending(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.epsilons().into_iter().filter(|&e| e > 0).collect();
        v.reverse();
        v
    }

    pub fn dim(&self) -> DimVector {
        self.mult
            .iter()
            .enumerate()
            .fold(DimVector::default(), |acc, (i, &a)| {
                let d = K::indecomposable_dim(i);
                acc + DimVector::new(a * d.d1, a * d.d2)
            })
    }

    pub fn defect(&self) -> i64 {
        self.dim().defect()
    }

    /// Direct sum: multiplicity vectors add.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let len = self.mult.len().max(other.mult.len());
        Self::new((0..len).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// Raises every summand index by `k`.
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.mult);
        Self::new(v)
    }

    /// The same multiplicities read in the other family.
    pub fn reinterpret<L: ModuleKind>(&self) -> Invariants<L> {
        Invariants::new(self.mult.clone())
    }

    /// Summands joined by `sep`, largest index first, e.g. `I3 ⊕ 2I2 ⊕ I0`.
    pub fn format_with(&self, sep: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = (0..self.mult.len())
            .rev()
            .filter(|&i| self.mult[i] > 0)
            .map(|i| match self.mult[i] {
                1 => format!("{}{}", K::SYMBOL, i),
                a => format!("{a}{}{}", K::SYMBOL, i),
            })
            .collect();
        parts.join(sep)
    }

    /// Every module whose multiplicity vector has length at most
    /// `max_index + 1` and entries at most `max_mult`.
    pub fn enumerate_bounded(max_index: usize, max_mult: usize) -> Vec<Self> {
        let len = max_index + 1;
        let base = max_mult + 1;
        let total = base.pow(len as u32);
        (0..total)
            .map(|mut code| {
                let mut v = vec![0; len];
                for slot in v.iter_mut() {
                    *slot = code % base;
                    code /= base;
                }
                Self::new(v)
            })
            .collect()
    }

    /// Every module whose vertex-2 dimension is at most `d2_max`.
    pub fn enumerate_by_d2(d2_max: usize) -> Vec<Self> {
        fn go<K: ModuleKind>(i: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Invariants<K>>, d2_max: usize) {
            let w = K::indecomposable_dim(i).d2;
            // Indices whose indecomposable has zero vertex-2 dimension would be
            // unbounded; they only occur for P_0 and are capped by `d2_max`.
            let cap = budget.checked_div(w).unwrap_or(d2_max);
            if i > d2_max + 1 {
                out.push(Invariants::new(cur.clone()));
                return;
            }
            for a in 0..=cap {
                cur.push(a);
                go(i + 1, budget - a * w, cur, out, d2_max);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go::<K>(0, d2_max, &mut Vec::new(), &mut out, d2_max);
        out.sort_by(|a, b| a.mult.cmp(&b.mult));
        out.dedup();
        out
    }
}

impl<K: ModuleKind> fmt::Debug for Invariants<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", K::SYMBOL, self.mult)
    }
}

impl<K: ModuleKind> fmt::Display for Invariants<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(" ⊕ "))
    }
}

/// Dimension vector of a preinjective module.
pub fn dim_of(i: &PreinjInvariants) -> DimVector {
    i.dim()
}

/// Defect of a preinjective module (its number of summands).
pub fn defect_of(i: &PreinjInvariants) -> i64 {
    i.defect()
}

/// Preinjective module with one summand `I_e` per listed index.
pub fn from_epsilon_list(eps: &[usize]) -> PreinjInvariants {
    PreinjInvariants::from_epsilon_list(eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_defect() {
        let i3 = PreinjInvariants::new(vec![0, 0, 0, 1]);
        assert_eq!(dim_of(&i3), DimVector::new(3, 4));
        assert_eq!(defect_of(&i3), 1);
        let sup = PreinjInvariants::new(vec![0, 1, 0, 3]);
        assert_eq!(dim_of(&sup), DimVector::new(10, 14));
        assert_eq!(defect_of(&sup), 4);
        assert_eq!(dim_of(&PreinjInvariants::zero()), DimVector::new(0, 0));
        assert_eq!(defect_of(&PreinjInvariants::zero()), 0);
    }

    #[test]
    fn epsilon_lists() {
        assert_eq!(from_epsilon_list(&[3, 3, 3, 1]).mult(), &[0, 1, 0, 3]);
        assert_eq!(from_epsilon_list(&[0, 5, 2, 1]).mult(), &[1, 1, 1, 0, 0, 1]);
        assert!(from_epsilon_list(&[]).is_zero());
        assert_eq!(from_epsilon_list(&[0, 5, 2, 1]).epsilons(), vec![0, 1, 2, 5]);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(PreinjInvariants::new(vec![1, 0, 0]), PreinjInvariants::new(vec![1]));
        assert!(PreinjInvariants::new(vec![0, 0]).is_zero());
    }

    #[test]
    fn preprojective_dimensions() {
        let p = PreprojInvariants::new(vec![1, 0, 2]);
        assert_eq!(p.dim(), DimVector::new(7, 4));
        assert_eq!(p.defect(), -3);
    }

    #[test]
    fn formatting() {
        let l = PreinjInvariants::new(vec![2, 1, 2, 1]);
        assert_eq!(l.to_string(), "I3 ⊕ 2I2 ⊕ I1 ⊕ 2I0");
        assert_eq!(l.format_with("+"), "I3+2I2+I1+2I0");
        assert_eq!(PreinjInvariants::zero().to_string(), "0");
    }

    #[test]
    fn shifting() {
        let l = PreinjInvariants::new(vec![2, 1]);
        assert_eq!(l.shifted(1).mult(), &[0, 2, 1]);
        assert!(PreinjInvariants::zero().shifted(3).is_zero());
    }

    #[test]
    fn enumeration_by_dimension_is_complete() {
        let all = PreinjInvariants::enumerate_by_d2(4);
        assert!(all.iter().all(|m| m.dim().d2 <= 4));
        // Partitions of d2 in parts of size (i+1), for every d2 <= 4, plus the
        // I_0 summands: count them independently.
        let brute = PreinjInvariants::enumerate_bounded(3, 4)
            .into_iter()
            .filter(|m| m.dim().d2 <= 4)
            .count();
        assert_eq!(all.len(), brute);
    }
}
