//! Integer-matrix Smith normal form and abelian invariants of
//! presentations, in exact arbitrary-precision arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::presentation::Presentation;
use crate::words::{Alphabet, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbelianError {
    #[error("relator set does not contain the commutator [{0},{1}]; the quotient is not known to be abelian")]
    MissingCommutator(String, String),
}

/// Rectangular matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must match dimensions");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

/// Invariant factors `d_1 | d_2 | ...` with trailing zeros allowed, and
/// optional unimodular transforms with `U * A * V = S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diag: Vec<BigInt>,
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

/// Smith normal form by row/column reduction. The pivot is the nonzero
/// entry of least absolute value in the working submatrix, ties broken
/// by lowest row then lowest column.
pub fn smith_normal_form(a: &IntMatrix, want_transforms: bool) -> SnfResult {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut u = if want_transforms { Some(IntMatrix::identity(rows)) } else { None };
    let mut v = if want_transforms { Some(IntMatrix::identity(cols)) } else { None };
    let n = rows.min(cols);

    for k in 0..n {
        loop {
            let pivot = find_pivot(&m, k);
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            m.swap_rows(k, pi);
            if let Some(u) = u.as_mut() {
                u.swap_rows(k, pi);
            }
            m.swap_cols(k, pj);
            if let Some(v) = v.as_mut() {
                v.swap_cols(k, pj);
            }

            let mut dirty = false;
            for i in k + 1..rows {
                if !m.get(i, k).is_zero() {
                    let q = -(m.get(i, k) / m.get(k, k));
                    m.add_row(i, k, &q);
                    if let Some(u) = u.as_mut() {
                        u.add_row(i, k, &q);
                    }
                    if !m.get(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !m.get(k, j).is_zero() {
                    let q = -(m.get(k, j) / m.get(k, k));
                    m.add_col(j, k, &q);
                    if let Some(v) = v.as_mut() {
                        v.add_col(j, k, &q);
                    }
                    if !m.get(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }

            // enforce the divisibility chain: fold in any entry the
            // pivot does not divide and re-reduce
            let pv = m.get(k, k).clone();
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(m.get(i, j) % &pv).is_zero());
            match offender {
                Some((i, _)) => {
                    m.add_row(k, i, &BigInt::one());
                    if let Some(u) = u.as_mut() {
                        u.add_row(k, i, &BigInt::one());
                    }
                }
                None => break,
            }
        }
        if m.get(k, k).is_negative() {
            m.negate_row(k);
            if let Some(u) = u.as_mut() {
                u.negate_row(k);
            }
        }
    }

    let diag = (0..n).map(|k| m.get(k, k).clone()).collect();
    SnfResult { diag, transforms: u.zip(v) }
}

fn find_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for j in k..m.cols {
        for i in k..m.rows {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((ba, bi, bj))
                    if *ba < a || (*ba == a && (*bi < i || (*bi == i && *bj < j))) => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Abelian invariants of `Z^n / rowspace(exponent matrix)`: the torsion
/// coefficients `d_i > 1` plus the free rank, reported separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

pub fn exponent_matrix(alphabet: &Alphabet, relators: &[Word]) -> IntMatrix {
    let cols = alphabet.len();
    let mut data = Vec::with_capacity(relators.len() * cols);
    for w in relators {
        data.extend(w.exponent_vector().into_iter().map(BigInt::from));
    }
    IntMatrix::new(relators.len(), cols, data)
}

pub fn abelian_invariants(alphabet: &Alphabet, relators: &[Word]) -> AbelianInvariants {
    let m = exponent_matrix(alphabet, relators);
    let snf = smith_normal_form(&m, false);
    let rank = snf.diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = snf
        .diag
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    AbelianInvariants { torsion, free_rank: alphabet.len() - rank }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientSize {
    Finite(BigInt),
    Infinite,
}

/// Order of the abelian quotient presented by `relators`. Refuses to
/// answer unless all pairwise generator commutators are present among
/// the relators, since otherwise the question is a non-abelian
/// finiteness problem.
pub fn abelian_quotient_size(
    alphabet: &Alphabet,
    relators: &[Word],
) -> Result<QuotientSize, AbelianError> {
    check_commutators_present(alphabet, relators)?;
    let inv = abelian_invariants(alphabet, relators);
    if inv.free_rank > 0 {
        return Ok(QuotientSize::Infinite);
    }
    Ok(QuotientSize::Finite(inv.torsion.iter().product()))
}

fn check_commutators_present(alphabet: &Alphabet, relators: &[Word]) -> Result<(), AbelianError> {
    use std::collections::HashSet;
    let set: HashSet<&Word> = relators.iter().collect();
    if relators.is_empty() {
        return if alphabet.len() > 1 {
            Err(AbelianError::MissingCommutator(
                alphabet.name(0).to_string(),
                alphabet.name(1).to_string(),
            ))
        } else {
            Ok(())
        };
    }
    let arc = relators[0].alphabet().clone();
    for i in 0..alphabet.len() as u32 {
        for j in i + 1..alphabet.len() as u32 {
            let gi = Word::generator(&arc, i).unwrap();
            let gj = Word::generator(&arc, j).unwrap();
            let c = gi.commutator(&gj).unwrap();
            let c_rev = gj.commutator(&gi).unwrap();
            if !set.contains(&c) && !set.contains(&c_rev) && !set.contains(&c.invert()) {
                return Err(AbelianError::MissingCommutator(
                    alphabet.name(i).to_string(),
                    alphabet.name(j).to_string(),
                ));
            }
        }
    }
    Ok(())
}

/// True iff the presentation abelianizes to the trivial group, i.e. the
/// Smith normal form of its exponent matrix is all ones.
pub fn perfectness_check(p: &Presentation) -> bool {
    let words: Vec<Word> = p.relator_words().cloned().collect();
    let inv = abelian_invariants(p.alphabet(), &words);
    inv.torsion.is_empty() && inv.free_rank == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_diag(rows: usize, cols: usize, entries: &[i64]) -> Vec<BigInt> {
        smith_normal_form(&IntMatrix::from_i64(rows, cols, entries), false).diag
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        assert_eq!(snf_diag(2, 2, &[2, 0, 0, 3]), ints(&[1, 6]));
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(snf_diag(2, 3, &[0; 6]), ints(&[0, 0]));
        assert_eq!(snf_diag(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]), ints(&[1, 1, 1]));
    }

    #[test]
    fn transforms_are_unimodular_and_exact() {
        let a = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, 4, 16]);
        let snf = smith_normal_form(&a, true);
        let (u, v) = snf.transforms.clone().unwrap();
        assert_eq!(u.determinant().abs(), BigInt::one());
        assert_eq!(v.determinant().abs(), BigInt::one());
        let s = u.mul(&a).mul(&v);
        for k in 0..3 {
            assert_eq!(s.get(k, k), &snf.diag[k]);
            for j in 0..3 {
                if j != k {
                    assert!(s.get(k, j).is_zero());
                }
            }
        }
        // divisibility chain
        for w in snf.diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn determinant_preserved_for_nonsingular() {
        let a = IntMatrix::from_i64(3, 3, &[3, 1, 4, 1, 5, 9, 2, 6, 5]);
        let snf = smith_normal_form(&a, false);
        let prod: BigInt = snf.diag.iter().product();
        assert_eq!(prod, a.determinant().abs());
    }

    #[test]
    fn free_group_invariants() {
        let alpha = Alphabet::new(["x", "y", "z"]).unwrap();
        let inv = abelian_invariants(&alpha, &[]);
        assert!(inv.torsion.is_empty());
        assert_eq!(inv.free_rank, 3);
    }

    #[test]
    fn cyclic_quotient_size() {
        let alpha = Alphabet::new(["g"]).unwrap();
        let g3 = crate::io::parse_word(&alpha, "g^3").unwrap();
        let size = abelian_quotient_size(&alpha, &[g3]).unwrap();
        assert_eq!(size, QuotientSize::Finite(BigInt::from(3)));
    }

    #[test]
    fn quotient_size_refuses_without_commutators() {
        let alpha = Alphabet::new(["x", "y"]).unwrap();
        let r = crate::io::parse_word(&alpha, "x^2").unwrap();
        assert!(matches!(
            abelian_quotient_size(&alpha, &[r]),
            Err(AbelianError::MissingCommutator(_, _))
        ));
    }

    #[test]
    fn invariants_stable_under_permutation_and_conjugation() {
        let alpha = Alphabet::new(["x", "y"]).unwrap();
        let p = |s: &str| crate::io::parse_word(&alpha, s).unwrap();
        let base = vec![p("x^2*y^4"), p("x*y^-1"), p("x*y*x^-1*y^-1")];
        let permuted = vec![base[2].clone(), base[0].clone(), base[1].clone()];
        let conj = p("y*x^2*y^4*y^-1");
        let conjugated = vec![conj, base[1].clone(), base[2].clone()];
        let i0 = abelian_invariants(&alpha, &base);
        assert_eq!(i0, abelian_invariants(&alpha, &permuted));
        assert_eq!(i0, abelian_invariants(&alpha, &conjugated));
    }
}
