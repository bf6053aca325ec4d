//! Gram and Weingarten matrices and Haar-state moments for the eight
//! unprimed categories.
//!
//! The Haar state on the words `u_{i₁j₁}…u_{iₛjₛ}` is
//!
//! ```text
//! h(u_{i₁j₁}…u_{iₛjₛ}) = Σ_{π,σ ∈ D(s)} δ_π(i) δ_σ(j) W_{sn}(π,σ),   W_{sn} = G_{sn}⁻¹,
//! G_{sn}(π,σ) = n^{|π∨σ|}.
//! ```
//!
//! When `G_{sn}` is singular (small `n` against `s`), [`weingarten_matrix`]
//! refuses, while [`haar_moment`] restricts the sum to a maximal linearly
//! independent family of partitions, which spans the same fixed-point space.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::partitions::{PartitionCategory, SetPartition};

/// A word `u_{i₁j₁}…u_{iₛjₛ}` with every index in `1..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MomentWord {
    dim: usize,
    letters: Vec<(usize, usize)>,
}

impl MomentWord {
    pub fn new(dim: usize, letters: Vec<(usize, usize)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for &(i, j) in &letters {
            for index in [i, j] {
                if index == 0 || index > dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
        }
        Ok(MomentWord { dim, letters })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    /// Parses space-separated `i,j` pairs; the empty string is the empty word.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|pair| {
                let (i, j) = pair
                    .split_once(',')
                    .ok_or_else(|| Error::MalformedPair(pair.to_string()))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::MalformedPair(pair.to_string()))
                };
                Ok((parse(i)?, parse(j)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, letters)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[(usize, usize)] {
        &self.letters
    }

    pub fn rows(&self) -> Vec<usize> {
        self.letters.iter().map(|l| l.0).collect()
    }

    pub fn cols(&self) -> Vec<usize> {
        self.letters.iter().map(|l| l.1).collect()
    }

    /// Evaluates the word on a concrete row-major `dim × dim` matrix.
    pub fn evaluate<T>(&self, matrix: &[T]) -> T
    where
        T: Copy + One + std::ops::Mul<Output = T>,
    {
        self.letters.iter().fold(T::one(), |acc, &(i, j)| {
            acc * matrix[(i - 1) * self.dim + (j - 1)]
        })
    }
}

impl fmt::Display for MomentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, (i, j)) in self.letters.iter().enumerate() {
            if t > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i},{j}")?;
        }
        Ok(())
    }
}

fn check_unprimed(cat: PartitionCategory, n: usize) -> Result<()> {
    if cat.is_primed() {
        return Err(Error::PrimedCategory(cat));
    }
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(())
}

/// `G_{sn}(π,σ) = n^{|π∨σ|}` over `D(s)` in canonical order.
pub fn gram_matrix(cat: PartitionCategory, s: usize, n: usize) -> Result<RationalMatrix> {
    check_unprimed(cat, n)?;
    let labels = cat.enumerate(s);
    let base = BigInt::from(n);
    let powers: Vec<BigRational> = (0..=s)
        .map(|e| BigRational::from_integer(Pow::pow(&base, e)))
        .collect();
    let blocks = |a: &SetPartition, b: &SetPartition| {
        a.join_count(b).expect("labels share a point count")
    };
    let matrix = RationalMatrix::from_fn(labels.clone(), |r, c| {
        powers[blocks(&labels[r], &labels[c])].clone()
    });
    Ok(matrix)
}

pub fn gram_rank(cat: PartitionCategory, s: usize, n: usize) -> Result<usize> {
    Ok(gram_matrix(cat, s, n)?.rank())
}

/// `W_{sn} = G_{sn}⁻¹`, or [`Error::SingularGram`].
pub fn weingarten_matrix(cat: PartitionCategory, s: usize, n: usize) -> Result<RationalMatrix> {
    let kernel = WeingartenCache::global().get(cat, s, n)?;
    if kernel.rank < kernel.size {
        return Err(Error::SingularGram {
            rank: kernel.rank,
            size: kernel.size,
        });
    }
    Ok(kernel.matrix.clone())
}

/// The Haar state on a word.
pub fn haar_moment(cat: PartitionCategory, n: usize, word: &MomentWord) -> Result<BigRational> {
    check_unprimed(cat, n)?;
    if word.dim() != n {
        return Err(Error::DimensionMismatch {
            word: word.dim(),
            n,
        });
    }
    let kernel = WeingartenCache::global().get(cat, word.len(), n)?;
    Ok(kernel.moment(&word.rows(), &word.cols()))
}

/// `h(χˢ)` for `χ = Σ u_ii`, computed as `trace(W_{sn} G_{sn})`.
pub fn character_moment(cat: PartitionCategory, n: usize, s: usize) -> Result<BigRational> {
    let w = weingarten_matrix(cat, s, n)?;
    let g = gram_matrix(cat, s, n)?;
    Ok(w.trace_of_product(&g))
}

/// The inverse Gram matrix on a basis of the span of the partition vectors.
#[derive(Debug)]
pub struct WeingartenKernel {
    /// `|D(s)|`.
    pub size: usize,
    /// Rank of `G_{sn}`.
    pub rank: usize,
    /// Inverse Gram matrix of the basis; `W_{sn}` itself when `rank == size`.
    pub matrix: RationalMatrix,
}

impl WeingartenKernel {
    pub fn compute(cat: PartitionCategory, s: usize, n: usize) -> Result<Self> {
        let gram = gram_matrix(cat, s, n)?;
        let size = gram.size();
        match gram.inverse() {
            Ok(matrix) => Ok(WeingartenKernel {
                size,
                rank: size,
                matrix,
            }),
            Err(Error::SingularGram { rank, .. }) => {
                let basis = gram.pivot_columns();
                let matrix = gram.principal_submatrix(&basis).inverse()?;
                Ok(WeingartenKernel { size, rank, matrix })
            }
            Err(e) => Err(e),
        }
    }

    pub fn basis(&self) -> &[SetPartition] {
        self.matrix.labels()
    }

    /// `Σ_{π,σ} δ_π(rows) δ_σ(cols) K(π,σ)`.
    pub fn moment(&self, rows: &[usize], cols: &[usize]) -> BigRational {
        let basis = self.basis();
        let active = |idx: &[usize]| -> Vec<usize> {
            (0..basis.len())
                .filter(|&t| basis[t].delta(idx).expect("word length matches s"))
                .collect()
        };
        let (r, c) = (active(rows), active(cols));
        let mut acc = BigRational::zero();
        for &a in &r {
            for &b in &c {
                acc += self.matrix.get(a, b);
            }
        }
        acc
    }
}

type CacheKey = (PartitionCategory, usize, usize);
type Slot = Arc<OnceLock<std::result::Result<Arc<WeingartenKernel>, Error>>>;

/// In-process table of Weingarten kernels keyed by `(category, s, n)`.
///
/// Each key is computed at most once; concurrent readers of a key block on
/// the single writer instead of recomputing.
#[derive(Default)]
pub struct WeingartenCache {
    slots: Mutex<HashMap<CacheKey, Slot>>,
}

impl WeingartenCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static WeingartenCache {
        static CACHE: OnceLock<WeingartenCache> = OnceLock::new();
        CACHE.get_or_init(WeingartenCache::new)
    }

    pub fn get(&self, cat: PartitionCategory, s: usize, n: usize) -> Result<Arc<WeingartenKernel>> {
        check_unprimed(cat, n)?;
        let slot = {
            let mut slots = self.slots.lock().unwrap_or_else(|e| e.into_inner());
            slots.entry((cat, s, n)).or_default().clone()
        };
        slot.get_or_init(|| WeingartenKernel::compute(cat, s, n).map(Arc::new))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.slots.lock().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PartitionCategory::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn word(n: usize, letters: &[(usize, usize)]) -> MomentWord {
        MomentWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(S, 2, 3).unwrap();
        let (d, f) = (SetPartition::discrete(2), SetPartition::single_block(2));
        assert_eq!(*g.entry(&d, &d).unwrap(), q(9, 1));
        assert_eq!(*g.entry(&d, &f).unwrap(), q(3, 1));
        assert_eq!(*g.entry(&f, &d).unwrap(), q(3, 1));
        assert_eq!(*g.entry(&f, &f).unwrap(), q(3, 1));

        for n in 1..5 {
            let g = gram_matrix(OFree, 2, n).unwrap();
            assert_eq!(g.size(), 1);
            assert_eq!(*g.get(0, 0), q(n as i64, 1));
        }
        for cat in PartitionCategory::UNPRIMED {
            let g = gram_matrix(cat, 0, 4).unwrap();
            assert_eq!(g.size(), 1);
            assert_eq!(*g.get(0, 0), q(1, 1));
        }
        assert_eq!(gram_matrix(SPrime, 2, 3), Err(Error::PrimedCategory(SPrime)));
        assert_eq!(gram_matrix(S, 2, 0), Err(Error::ZeroDimension));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(gram_rank(S, 3, 2).unwrap(), 4);
        assert_eq!(gram_rank(S, 3, 5).unwrap(), 5);
        for cat in PartitionCategory::UNPRIMED {
            assert_eq!(gram_rank(cat, 0, 3).unwrap(), 1);
        }
    }

    #[test]
    fn weingarten_examples() {
        for n in 1..5i64 {
            let w = weingarten_matrix(OFree, 2, n as usize).unwrap();
            assert_eq!(*w.get(0, 0), q(1, n));
        }
        let w = weingarten_matrix(S, 2, 3).unwrap();
        let (d, f) = (SetPartition::discrete(2), SetPartition::single_block(2));
        assert_eq!(*w.entry(&d, &d).unwrap(), q(1, 6));
        assert_eq!(*w.entry(&d, &f).unwrap(), q(-1, 6));
        assert_eq!(*w.entry(&f, &f).unwrap(), q(1, 2));
        assert_eq!(
            weingarten_matrix(S, 3, 2),
            Err(Error::SingularGram { rank: 4, size: 5 })
        );
    }

    #[test]
    fn haar_moment_examples() {
        for n in 1..6 {
            assert_eq!(
                haar_moment(OFree, n, &word(n, &[(1, 1), (1, 1)])).unwrap(),
                q(1, n as i64)
            );
        }
        assert_eq!(haar_moment(S, 4, &word(4, &[(1, 1), (2, 2)])).unwrap(), q(1, 12));
        assert_eq!(haar_moment(OFree, 2, &word(2, &[(1, 1), (2, 1)])).unwrap(), q(0, 1));
        assert_eq!(haar_moment(O, 3, &word(3, &[(1, 1), (2, 2), (3, 3)])).unwrap(), q(0, 1));
        assert_eq!(haar_moment(B, 5, &MomentWord::empty(5).unwrap()).unwrap(), q(1, 1));
        assert!(matches!(
            haar_moment(S, 3, &word(4, &[(1, 1)])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn haar_moment_survives_singular_gram() {
        // S classical, s=3, n=2: P(3) has a partition with 3 blocks, which
        // cannot be realised by indices in {1,2}. Average over S₂.
        let w = word(2, &[(1, 1), (1, 1), (2, 2)]);
        assert_eq!(haar_moment(S, 2, &w).unwrap(), q(1, 2));
        let w = word(2, &[(1, 1), (2, 1), (2, 2)]);
        assert_eq!(haar_moment(S, 2, &w).unwrap(), q(0, 1));
    }

    #[test]
    fn character_moment_examples() {
        assert_eq!(character_moment(S, 5, 4).unwrap(), q(15, 1));
        assert_eq!(character_moment(OFree, 4, 4).unwrap(), q(2, 1));
        for cat in PartitionCategory::UNPRIMED {
            assert_eq!(character_moment(cat, 3, 0).unwrap(), q(1, 1));
        }
        assert_eq!(character_moment(OFree, 4, 3).unwrap(), q(0, 1));
        assert!(matches!(
            character_moment(S, 2, 3),
            Err(Error::SingularGram { rank: 4, size: 5 })
        ));
    }

    #[test]
    fn word_parsing() {
        assert_eq!(MomentWord::parse("1,1 2,2", 4).unwrap(), word(4, &[(1, 1), (2, 2)]));
        assert!(MomentWord::parse("", 4).unwrap().is_empty());
        assert_eq!(
            MomentWord::parse("5,1", 4),
            Err(Error::IndexOutOfRange { index: 5, dim: 4 })
        );
        assert!(matches!(MomentWord::parse("1;1", 4), Err(Error::MalformedPair(_))));
        assert!(matches!(MomentWord::parse("1,x", 4), Err(Error::MalformedPair(_))));
        assert_eq!(word(3, &[(1, 2), (3, 3)]).to_string(), "1,2 3,3");
    }

    #[test]
    fn fresh_cache_agrees_with_global() {
        let fresh = WeingartenCache::new();
        assert!(fresh.is_empty());
        let a = fresh.get(HFree, 4, 3).unwrap();
        let b = WeingartenCache::global().get(HFree, 4, 3).unwrap();
        assert_eq!(a.matrix, b.matrix);
        assert!(Arc::ptr_eq(&a, &fresh.get(HFree, 4, 3).unwrap()));
        assert_eq!(fresh.len(), 1);
    }
}
