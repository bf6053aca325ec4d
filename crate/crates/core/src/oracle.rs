//! Ground truth for the Weingarten engine: exact averages over the finite
//! groups `S_n`, `H_n`, and seeded Monte Carlo over `O_n` and `B_n`.
//!
//! Monte Carlo runs split the sample budget into fixed-size shards. Shard `t`
//! draws from its own generator seeded with `seed + t`, and shard statistics
//! are merged in shard order, so a report depends only on `(seed, samples)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homspace::ClassicalGroup;
use crate::weingarten::MomentWord;

/// Name of the generator behind every stochastic result.
pub const GENERATOR: &str = "ChaCha8";

/// Samples per shard.
pub const SHARD_SIZE: usize = 4096;

/// Exact average of the word over all defining matrices of `S_n` or `H_n`.
pub fn exact_group_average(group: ClassicalGroup, n: usize, word: &MomentWord) -> Result<BigRational> {
    if word.dim() != n {
        return Err(Error::DimensionMismatch {
            word: word.dim(),
            n,
        });
    }
    let mut total: i64 = 0;
    for m in group.matrices(n)? {
        total += i64::from(word.evaluate(&m));
    }
    Ok(BigRational::new(
        BigInt::from(total),
        BigInt::from(group.order(n)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleReport {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

impl SampleReport {
    /// `|mean - exact| ≤ max(4·stderr, 0.01)`.
    pub fn agrees_with(&self, exact: f64) -> bool {
        (self.mean - exact).abs() <= self.band()
    }

    pub fn band(&self) -> f64 {
        (4.0 * self.stderr).max(0.01)
    }

    /// `mean\tstderr\tsamples\tseed`.
    pub fn to_tsv(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.mean, self.stderr, self.samples, self.seed)
    }
}

impl fmt::Display for SampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())
    }
}

/// A standard normal deviate by Marsaglia's polar method.
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen_range(-1.0..1.0);
        let v: f64 = rng.gen_range(-1.0..1.0);
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

/// Haar-distributed `n × n` orthogonal matrix, row-major: Gram-Schmidt on the
/// columns of a Gaussian matrix, which leaves every pivot positive.
pub fn haar_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| standard_normal(rng)).collect())
        .collect();
    for c in 0..n {
        let (done, rest) = cols.split_at_mut(c);
        let v = &mut rest[0];
        // Twice is enough for full working precision.
        for _ in 0..2 {
            for e in done.iter() {
                let dot: f64 = e.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(e) {
                    *x -= dot * y;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    let mut out = vec![0.0; n * n];
    for (c, col) in cols.iter().enumerate() {
        for (r, x) in col.iter().enumerate() {
            out[r * n + c] = *x;
        }
    }
    out
}

/// Haar-distributed element of `B_n`: `R (1 ⊕ Q) Rᵀ` with `Q` Haar on
/// `O_{n-1}` and `R` the Householder reflection sending `e₁` to `𝟙/√n`.
pub fn haar_bistochastic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    assert!(n >= 1);
    let q = haar_orthogonal(n - 1, rng);
    let mut block = vec![0.0; n * n];
    block[0] = 1.0;
    for r in 1..n {
        for c in 1..n {
            block[r * n + c] = q[(r - 1) * (n - 1) + (c - 1)];
        }
    }
    let h = householder_to_ones(n);
    matmul(&matmul(&h, &block, n), &h, n)
}

// Symmetric and orthogonal, so it is its own transpose.
fn householder_to_ones(n: usize) -> Vec<f64> {
    let u = 1.0 / (n as f64).sqrt();
    let mut v = vec![-u; n];
    v[0] += 1.0;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let mut h = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            let id = if r == c { 1.0 } else { 0.0 };
            h[r * n + c] = if vv == 0.0 { id } else { id - 2.0 * v[r] * v[c] / vv };
        }
    }
    h
}

fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for r in 0..n {
        for t in 0..n {
            let x = a[r * n + t];
            for c in 0..n {
                out[r * n + c] += x * b[t * n + c];
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let d = x - self.mean;
        self.mean += d / self.count;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.count == 0.0 {
            return self;
        }
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let d = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + d * other.count / count,
            m2: self.m2 + other.m2 + d * d * self.count * other.count / count,
        }
    }
}

/// Which compact group a Monte Carlo run samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampledGroup {
    Orthogonal,
    Bistochastic,
}

impl SampledGroup {
    pub fn sample<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> Vec<f64> {
        match self {
            SampledGroup::Orthogonal => haar_orthogonal(n, rng),
            SampledGroup::Bistochastic => haar_bistochastic(n, rng),
        }
    }
}

/// Monte Carlo means of several words over the same sample stream.
pub fn mc_averages(
    group: SampledGroup,
    n: usize,
    words: &[MomentWord],
    samples: usize,
    seed: u64,
) -> Result<Vec<SampleReport>> {
    if samples == 0 {
        return Err(Error::Usage("samples must be at least 1".into()));
    }
    if group == SampledGroup::Bistochastic && n < 2 {
        return Err(Error::Usage("bistochastic sampling needs n >= 2".into()));
    }
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if let Some(w) = words.iter().find(|w| w.dim() != n) {
        return Err(Error::DimensionMismatch { word: w.dim(), n });
    }
    let shards = samples.div_ceil(SHARD_SIZE);
    let per_shard: Vec<Vec<Moments>> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(shard as u64));
            let count = SHARD_SIZE.min(samples - shard * SHARD_SIZE);
            let mut acc = vec![Moments::default(); words.len()];
            for _ in 0..count {
                let m = group.sample(n, &mut rng);
                for (a, w) in acc.iter_mut().zip(words) {
                    a.push(w.evaluate(&m));
                }
            }
            acc
        })
        .collect();
    Ok((0..words.len())
        .map(|t| {
            let m = per_shard
                .iter()
                .fold(Moments::default(), |acc, shard| acc.merge(shard[t]));
            let variance = if m.count > 1.0 { m.m2 / (m.count - 1.0) } else { 0.0 };
            SampleReport {
                mean: m.mean,
                stderr: (variance / m.count).sqrt(),
                samples,
                seed,
            }
        })
        .collect())
}

pub fn mc_orthogonal_average(n: usize, word: &MomentWord, samples: usize, seed: u64) -> Result<SampleReport> {
    Ok(mc_averages(SampledGroup::Orthogonal, n, std::slice::from_ref(word), samples, seed)?[0])
}

pub fn mc_bistochastic_average(n: usize, word: &MomentWord, samples: usize, seed: u64) -> Result<SampleReport> {
    Ok(mc_averages(SampledGroup::Bistochastic, n, std::slice::from_ref(word), samples, seed)?[0])
}
