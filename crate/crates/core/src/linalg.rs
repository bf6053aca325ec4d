//! Exact linear algebra over the rationals.
//!
//! Inversion and rank use fraction-free (Bareiss) elimination on integer
//! matrices; rational input is scaled to integers first. Linear solves use
//! ordinary rational Gauss-Jordan elimination.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::SetPartition;

/// Square matrix of exact rationals whose rows and columns are labelled by
/// partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    labels: Vec<SetPartition>,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(labels: Vec<SetPartition>, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != labels.len() * labels.len() {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for {} labels",
                entries.len(),
                labels.len()
            )));
        }
        Ok(RationalMatrix { labels, entries })
    }

    pub fn from_fn(
        labels: Vec<SetPartition>,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Self {
        let n = labels.len();
        let entries = (0..n * n).map(|t| f(t / n, t % n)).collect();
        RationalMatrix { labels, entries }
    }

    pub fn identity(labels: Vec<SetPartition>) -> Self {
        Self::from_fn(labels, |r, c| {
            if r == c {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[SetPartition] {
        &self.labels
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.size() + col]
    }

    /// Entry addressed by partition labels.
    pub fn entry(&self, row: &SetPartition, col: &SetPartition) -> Option<&BigRational> {
        let r = self.labels.iter().position(|l| l == row)?;
        let c = self.labels.iter().position(|l| l == col)?;
        Some(self.get(r, c))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|r| (r + 1..n).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_identity(&self) -> bool {
        let n = self.size();
        (0..n).all(|r| {
            (0..n).all(|c| {
                let v = self.get(r, c);
                if r == c {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    /// Matrix product; labels are taken from `self`.
    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        let n = self.size();
        if other.size() != n {
            return Err(Error::InvalidMatrix(format!(
                "cannot multiply {n}x{n} by {m}x{m}",
                m = other.size()
            )));
        }
        Ok(Self::from_fn(self.labels.clone(), |r, c| {
            (0..n).fold(BigRational::zero(), |acc, t| {
                acc + self.get(r, t) * other.get(t, c)
            })
        }))
    }

    /// `trace(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &RationalMatrix) -> BigRational {
        let n = self.size();
        let mut acc = BigRational::zero();
        for r in 0..n {
            for c in 0..n {
                acc += self.get(r, c) * other.get(c, r);
            }
        }
        acc
    }

    /// The principal submatrix on the given row/column indices.
    pub fn principal_submatrix(&self, keep: &[usize]) -> RationalMatrix {
        let labels = keep.iter().map(|&t| self.labels[t].clone()).collect();
        Self::from_fn(labels, |r, c| self.get(keep[r], keep[c]).clone())
    }

    // Scales by the lcm of all denominators so every entry is an integer.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let scale = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let n = self.size();
        let rows = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let v = self.get(r, c);
                        v.numer() * (&scale / v.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    /// Column indices of a maximal linearly independent set of columns
    /// (the pivot columns of row-echelon form).
    pub fn pivot_columns(&self) -> Vec<usize> {
        let (rows, _) = self.integer_rows();
        bareiss_pivot_columns(rows)
    }

    pub fn rank(&self) -> usize {
        self.pivot_columns().len()
    }

    /// Exact inverse, or [`Error::SingularGram`] carrying the rank.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        let (rows, scale) = self.integer_rows();
        let n = self.size();
        match bareiss_inverse(rows) {
            Some((adj, det)) => Ok(Self::from_fn(self.labels.clone(), |r, c| {
                BigRational::new(&adj[r][c] * &scale, det[r].clone())
            })),
            None => Err(Error::SingularGram {
                rank: self.rank(),
                size: n,
            }),
        }
    }

    /// TSV: a header row of partition labels, then one labelled row per
    /// partition, entries as lowest-term fractions.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("partition");
        for l in &self.labels {
            write!(out, "\t{l}").unwrap();
        }
        out.push('\n');
        for (r, l) in self.labels.iter().enumerate() {
            write!(out, "{l}").unwrap();
            for c in 0..self.size() {
                write!(out, "\t{}", self.get(r, c)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())
    }
}

/// Fraction-free Gauss-Jordan. Returns `(m, d)` with `A⁻¹[r][c] = m[r][c] / d[r]`,
/// or `None` when `A` is singular.
fn bareiss_inverse(mut a: Vec<Vec<BigInt>>) -> Option<(Vec<Vec<BigInt>>, Vec<BigInt>)> {
    let n = a.len();
    for (r, row) in a.iter_mut().enumerate() {
        row.extend((0..n).map(|c| if c == r { BigInt::one() } else { BigInt::zero() }));
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        let (top, rest) = a.split_at_mut(k);
        let (pivot_row, bottom) = rest.split_first_mut().unwrap();
        let pivot = pivot_row[k].clone();
        for (i, row) in top
            .iter_mut()
            .enumerate()
            .chain(bottom.iter_mut().enumerate().map(|(t, r)| (k + 1 + t, r)))
        {
            let factor = std::mem::take(&mut row[k]);
            // Left block: only the diagonal of finished rows and the columns
            // right of the pivot are nonzero.
            if i < k {
                row[i] = (&pivot * &row[i]) / &prev;
            }
            for j in (k + 1..n).chain(n..2 * n) {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot;
    }
    let diag = (0..n).map(|r| a[r][r].clone()).collect();
    let right = a.into_iter().map(|row| row[n..].to_vec()).collect();
    Some((right, diag))
}

/// Pivot columns of fraction-free forward elimination with row pivoting.
fn bareiss_pivot_columns(mut a: Vec<Vec<BigInt>>) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&t| !a[t][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (upper, lower) = a.split_at_mut(r + 1);
        let pivot_row = &upper[r];
        for row in lower.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b` by rational Gauss-Jordan, setting free variables to zero.
/// Returns `None` when the system is inconsistent.
pub fn solve(a: &RationalMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.size();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..n).map(|c| a.get(r, c).clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&t| !m[t][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (t, row) in m.iter_mut().enumerate() {
            if t == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (t, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[t][n].clone();
    }
    Some(x)
}
