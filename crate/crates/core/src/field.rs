//! Exact scalar fields: the rationals and prime fields GF(p).
//!
//! A [`Field`] value is the arithmetic context; elements are plain data
//! (`BigRational` or a residue) and every operation goes through the context.
//! This keeps the modulus of GF(p) a runtime value while the algorithms stay
//! generic and monomorphized.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive). Products of two residues fit in `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// Runtime description of a field, as it appears in files and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidField(format!("unrecognized field `{s}`")))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad modulus in `{s}`")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::PrimeField(p))
    }
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `a - b * c`, the elimination kernel.
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// A random element for generic-position choices: integers in `-2..=2`
    /// over the rationals, uniform residues over GF(p).
    fn random_small<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Parses the canonical text form (`"num"`, `"num/den"`, or a residue).
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// Canonical text form; `parse_elem(format_elem(x)) == x`.
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Rank of a row-major `rows × cols` array by a field-specific exact
    /// method, or `None` to use generic elimination.
    fn fast_rank(&self, _rows: usize, _cols: usize, _data: &[Self::Elem]) -> Option<usize> {
        None
    }

    /// Reduced row echelon form and pivot columns of a row-major
    /// `rows × cols` array by a field-specific exact method, or `None` to use
    /// generic elimination.
    fn fast_rref(&self, _rows: usize, _cols: usize, _data: &[Self::Elem]) -> Option<(Vec<Self::Elem>, Vec<usize>)> {
        None
    }

    /// Product of a row-major `rows × inner` and `inner × cols` array by a
    /// field-specific exact method, or `None` to use the generic product.
    fn fast_mul(
        &self,
        _rows: usize,
        _inner: usize,
        _cols: usize,
        _a: &[Self::Elem],
        _b: &[Self::Elem],
    ) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// Forward elimination over the integers, dividing a row by the gcd of its
/// entries once they grow past a machine word. Rows with a zero in the pivot
/// column are left alone, so sparse inputs stay cheap, and no fractions are
/// ever formed.
fn integer_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let (u, v) = (&pivot_row[c] / &g, &row[c] / &g);
            let mut widest = 0;
            for j in c + 1..cols {
                if pivot_row[j].is_zero() {
                    if !u.is_one() {
                        row[j] = &u * &row[j];
                    }
                } else {
                    row[j] = &u * &row[j] - &v * &pivot_row[j];
                }
                widest = widest.max(row[j].bits());
            }
            row[c] = BigInt::zero();
            // Dividing out the content only pays off once entries outgrow a word.
            if widest <= 64 {
                continue;
            }
            let content = row[c + 1..].iter().fold(BigInt::zero(), |g, x| if x.is_zero() { g } else { g.gcd(x) });
            if !content.is_zero() && !content.is_one() {
                for x in row[c + 1..].iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        r += 1;
    }
    r
}

/// [`integer_rank`] on machine words; `None` as soon as an entry would
/// overflow, in which case the caller starts over with big integers.
fn word_rank(m: &mut [Vec<i64>], cols: usize) -> Option<usize> {
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let (u, v) = (pivot_row[c] / g, row[c] / g);
            let mut widest = 0u64;
            for j in c + 1..cols {
                row[j] = u.checked_mul(row[j])?.checked_sub(v.checked_mul(pivot_row[j])?)?;
                widest = widest.max(row[j].unsigned_abs());
            }
            // Keep clear of `i64::MIN`, whose absolute value does not exist.
            if widest >= 1 << 62 {
                return None;
            }
            row[c] = 0;
            if widest < 1 << 31 {
                continue;
            }
            let content = row[c + 1..].iter().fold(0i64, |g, x| g.gcd(x));
            if content > 1 {
                for x in row[c + 1..].iter_mut() {
                    *x /= content;
                }
            }
        }
        r += 1;
    }
    Some(r)
}

/// Rows scaled to integers by their common denominator, if every entry fits
/// in a machine word.
fn word_rows(data: &[BigRational], cols: usize) -> Option<Vec<Vec<i64>>> {
    data.chunks(cols)
        .map(|row| {
            let l = row.iter().try_fold(1i64, |acc, x| {
                let d = x.denom().to_i64()?;
                (acc / acc.gcd(&d)).checked_mul(d)
            })?;
            row.iter()
                .map(|x| {
                    if x.numer().is_zero() {
                        return Some(0);
                    }
                    x.numer().to_i64()?.checked_mul(l / x.denom().to_i64()?)
                })
                .collect()
        })
        .collect()
}

/// Rows scaled to integers by their common denominator.
fn integer_rows(data: &[BigRational], cols: usize) -> Vec<Vec<BigInt>> {
    data.chunks(cols)
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Divides a row by the gcd of its entries.
fn remove_content(row: &mut [BigInt]) {
    let content = row.iter().fold(BigInt::zero(), |g, x| if x.is_zero() { g } else { g.gcd(x) });
    if !content.is_zero() && !content.is_one() {
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x = &*x / &content;
        }
    }
}

/// Fraction-free Gauss–Jordan elimination on integer rows. Each row is kept
/// primitive, and the pivots are divided out only at the end, so the result
/// is the exact reduced row echelon form.
fn integer_rref(m: &mut [Vec<BigInt>], cols: usize) -> (Vec<BigRational>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        remove_content(&mut m[r]);
        let pivot_row = std::mem::take(&mut m[r]);
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let (u, v) = (&pivot_row[c] / &g, &row[c] / &g);
            let mut widest = 0;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if y.is_zero() {
                    if !u.is_one() && !x.is_zero() {
                        *x = &u * &*x;
                    }
                } else {
                    *x = &u * &*x - &v * y;
                }
                widest = widest.max(x.bits());
            }
            // Dividing out the content only pays off once entries outgrow a word.
            if widest > 64 {
                remove_content(row);
            }
        }
        m[r] = pivot_row;
        pivots.push(c);
    }
    let mut out = Vec::with_capacity(rows * cols);
    for (i, row) in m.iter().enumerate() {
        match pivots.get(i) {
            Some(&c) => {
                let d = row[c].clone();
                out.extend(row.iter().map(|x| BigRational::new(x.clone(), d.clone())));
            }
            None => out.extend(row.iter().map(|_| BigRational::zero())),
        }
    }
    (out, pivots)
}

/// The field of rational numbers with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        if b.is_zero() || c.is_zero() {
            return a.clone();
        }
        a - b * c
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn random_small<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-2..=2))
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("invalid rational `{s}`"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            // `BigRational` keeps lowest terms with a positive denominator.
            debug_assert!(a.denom().is_positive());
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn fast_rank(&self, rows: usize, cols: usize, data: &[BigRational]) -> Option<usize> {
        if cols == 0 {
            return Some(0);
        }
        let data = &data[..rows * cols];
        if let Some(rank) = word_rows(data, cols).and_then(|mut w| word_rank(&mut w, cols)) {
            return Some(rank);
        }
        Some(integer_rank(&mut integer_rows(data, cols), cols))
    }

    /// Clears denominators row-wise in `a` and column-wise in `b`, multiplies
    /// integers, and forms each fraction once at the end.
    fn fast_mul(
        &self,
        rows: usize,
        inner: usize,
        cols: usize,
        a: &[BigRational],
        b: &[BigRational],
    ) -> Option<Vec<BigRational>> {
        let ai = if inner == 0 { vec![Vec::new(); rows] } else { integer_rows(&a[..rows * inner], inner) };
        let row_den: Vec<BigInt> = (0..rows)
            .map(|i| a[i * inner..(i + 1) * inner].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
            .collect();
        let col_den: Vec<BigInt> =
            (0..cols).map(|j| (0..inner).fold(BigInt::one(), |acc, k| acc.lcm(b[k * cols + j].denom()))).collect();
        let bi: Vec<BigInt> = (0..inner * cols)
            .map(|idx| {
                let x = &b[idx];
                if x.numer().is_zero() {
                    BigInt::zero()
                } else {
                    x.numer() * (&col_den[idx % cols] / x.denom())
                }
            })
            .collect();
        let mut acc = vec![BigInt::zero(); rows * cols];
        for i in 0..rows {
            for (k, x) in ai[i].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let y = &bi[k * cols + j];
                    if !y.is_zero() {
                        acc[i * cols + j] += x * y;
                    }
                }
            }
        }
        Some(
            acc.into_iter()
                .enumerate()
                .map(|(idx, x)| {
                    if x.is_zero() {
                        return BigRational::zero();
                    }
                    let (i, j) = (idx / cols, idx % cols);
                    BigRational::new(x, &row_den[i] * &col_den[j])
                })
                .collect(),
        )
    }

    fn fast_rref(&self, rows: usize, cols: usize, data: &[BigRational]) -> Option<(Vec<BigRational>, Vec<usize>)> {
        if cols == 0 {
            return Some((Vec::new(), Vec::new()));
        }
        Some(integer_rref(&mut integer_rows(&data[..rows * cols], cols), cols))
    }
}

/// The prime field GF(p) for a prime `p < 2^31`; elements are residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    Some(old_s.rem_euclid(p as i64) as u64)
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }

    fn random_small<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid residue `{s}` for GF({})", self.p)))?;
        Ok(self.from_i64(v))
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rank_survives_word_overflow() {
        // Entries near 2^40 overflow machine words after one elimination step,
        // forcing the big-integer path; row 2 = row 0 + row 1 keeps rank 2.
        let big = |x: i64| BigRational::from_integer((BigInt::from(x) << 40) + 1);
        let rows = [[big(3), big(5), big(7)], [big(11), big(-13), big(17)]];
        let mut data: Vec<BigRational> = rows.iter().flatten().cloned().collect();
        data.extend((0..3).map(|j| &rows[0][j] + &rows[1][j]));
        assert_eq!(Rationals.fast_rank(3, 3, &data), Some(2));
        let mut wide: Vec<Vec<i64>> =
            data.chunks(3).map(|r| r.iter().map(|x| x.numer().to_i64().unwrap()).collect()).collect();
        assert_eq!(word_rank(&mut wide, 3), None);
    }

    #[test]
    fn prime_field_rejects_composites_and_large_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(MAX_PRIME + 11).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn inverse_mod_p() {
        let f = PrimeField::new(2_147_483_647).unwrap();
        for a in [1u64, 2, 3, 12345, 2_147_483_646] {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rational_text_round_trip() {
        let q = Rationals;
        for s in ["0", "7", "-3", "1/2", "-5/3"] {
            assert_eq!(q.format_elem(&q.parse_elem(s).unwrap()), s);
        }
        assert_eq!(q.format_elem(&q.parse_elem("4/-6").unwrap()), "-2/3");
        assert!(q.parse_elem("1/0").is_err());
        assert!(q.parse_elem("x").is_err());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("GF(5)".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(5));
        assert!("GF(6)".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::PrimeField(7).to_string(), "GF(7)");
    }

    #[test]
    fn residues_normalize() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.parse_elem("-1").unwrap(), 4);
        assert_eq!(f.parse_elem("12").unwrap(), 2);
    }
}
