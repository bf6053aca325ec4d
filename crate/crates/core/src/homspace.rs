//! Row algebras of the homogeneous spaces `G_n/G_k`: invariant-state
//! moments, the four classes of transposed isometries, fixed-point sums in
//! commuting models, quotient counts for `S_n/S_k` and `H_n/H_k`, and the
//! two-projection noncommutation witness.
//!
//! Rows of a truncated matrix carry their absolute labels `k+1,…,n`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, RationalMatrix};
use crate::partitions::{BlockRule, PartitionCategory, SetPartition};
use crate::weingarten::{gram_matrix, MomentWord};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Where a truncated matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Enumerated(ClassicalGroup),
    Sampled,
    UserSupplied,
}

/// The rows `k+1,…,n` of an `n × n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    provenance: Provenance,
}

impl TruncatedMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix("dimensions must be positive".into()));
        }
        if rows > cols {
            return Err(Error::InvalidMatrix(format!("{rows} rows exceed {cols} columns")));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(TruncatedMatrix {
            rows,
            cols,
            entries,
            provenance,
        })
    }

    /// Bottom `n - k` rows of a row-major `n × n` matrix.
    pub fn from_square(square: &[f64], n: usize, k: usize, provenance: Provenance) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidMatrix(format!("no rows left below cutoff {k} of {n}")));
        }
        Self::new(n - k, n, square[k * n..].to_vec(), provenance)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `n - rows`.
    pub fn cutoff(&self) -> usize {
        self.cols - self.rows
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entry at internal row `r` (0-based), column `c` (0-based).
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.cols + c]
    }

    fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Internal row of an absolute row label in `k+1..=n`.
    pub fn row_of_label(&self, label: usize) -> Result<usize> {
        let k = self.cutoff();
        if label <= k {
            return Err(Error::RowNotBelowCutoff { row: label, k });
        }
        if label > self.cols {
            return Err(Error::IndexOutOfRange {
                index: label,
                dim: self.cols,
            });
        }
        Ok(label - k - 1)
    }

    /// Parses TSV (or any whitespace) rows of decimals.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let rows: Vec<Vec<f64>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|x| {
                        x.parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry `{x}`")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat(), Provenance::UserSupplied)
    }

    pub fn to_tsv(&self) -> String {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(f64::to_string).join("\t") + "\n")
            .collect()
    }
}

/// The four classes of transposed isometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixClass {
    Orthogonal,
    Magic,
    Cubic,
    Stochastic,
}

impl MatrixClass {
    pub fn label(self) -> &'static str {
        match self {
            MatrixClass::Orthogonal => "orthogonal-isometry",
            MatrixClass::Magic => "magic-isometry",
            MatrixClass::Cubic => "cubic-isometry",
            MatrixClass::Stochastic => "stochastic-isometry",
        }
    }

    /// The class whose relations make `Σ_l Π_{t∈block} p_{i_t l} = δ` hold for
    /// every block of every partition in the category.
    pub fn for_category(cat: PartitionCategory) -> MatrixClass {
        match cat.rule() {
            BlockRule::Pairings => MatrixClass::Orthogonal,
            BlockRule::All => MatrixClass::Magic,
            BlockRule::Even => MatrixClass::Cubic,
            BlockRule::SinglesAndPairs => MatrixClass::Stochastic,
        }
    }

    /// Smallest class needed for a single partition's blocks.
    pub fn for_partition(p: &SetPartition) -> MatrixClass {
        let sizes = || p.blocks().iter().map(Vec::len);
        if sizes().all(|k| k == 2) {
            MatrixClass::Orthogonal
        } else if sizes().all(|k| k % 2 == 0) {
            MatrixClass::Cubic
        } else if sizes().all(|k| k <= 2) {
            MatrixClass::Stochastic
        } else {
            MatrixClass::Magic
        }
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for MatrixClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            MatrixClass::Orthogonal,
            MatrixClass::Magic,
            MatrixClass::Cubic,
            MatrixClass::Stochastic,
        ]
        .into_iter()
        .find(|c| c.label() == s)
        .ok_or_else(|| Error::Parse(format!("unknown matrix class `{s}`")))
    }
}

/// Renders a class set as a comma-separated list.
pub fn format_classes(classes: &BTreeSet<MatrixClass>) -> String {
    classes.iter().map(|c| c.label()).join(",")
}

/// Classifies a numeric (hence commuting) truncated matrix.
pub fn classify(m: &TruncatedMatrix, tol: f64) -> BTreeSet<MatrixClass> {
    let mut out = BTreeSet::new();
    let near = |a: f64, b: f64| (a - b).abs() <= tol;
    let orthogonal = (0..m.rows).all(|a| {
        (0..m.rows).all(|b| {
            let dot: f64 = m.row(a).iter().zip(m.row(b)).map(|(x, y)| x * y).sum();
            near(dot, if a == b { 1.0 } else { 0.0 })
        })
    });
    if !orthogonal {
        return out;
    }
    out.insert(MatrixClass::Orthogonal);

    let idempotent = m.entries.iter().all(|&x| near(x * x, x));
    let column_products_vanish = (0..m.cols).all(|c| {
        (0..m.rows)
            .tuple_combinations()
            .all(|(a, b)| near(m.at(a, c) * m.at(b, c), 0.0))
    });
    let row_products_vanish = (0..m.rows).all(|r| {
        m.row(r)
            .iter()
            .tuple_combinations()
            .all(|(x, y)| near(x * y, 0.0))
    });
    let row_sums_one = (0..m.rows).all(|r| near(m.row(r).iter().sum(), 1.0));

    if idempotent && column_products_vanish {
        out.insert(MatrixClass::Magic);
    }
    if row_products_vanish {
        out.insert(MatrixClass::Cubic);
    }
    if row_sums_one {
        out.insert(MatrixClass::Stochastic);
    }
    out
}

/// magic ⟺ cubic and stochastic, evaluated on `m`.
pub fn prop52_equivalence(m: &TruncatedMatrix, tol: f64) -> bool {
    let c = classify(m, tol);
    c.contains(&MatrixClass::Magic)
        == (c.contains(&MatrixClass::Cubic) && c.contains(&MatrixClass::Stochastic))
}

/// Checks `Σ_l Π_{t∈block} m_{i_t l} = δ_block(i)` for every block of `p`
/// and that the product over blocks equals `δ_p(i)`. Row labels in `i` are
/// absolute (`k+1..=n`).
pub fn fixed_point_sum_check(
    m: &TruncatedMatrix,
    p: &SetPartition,
    i: &[usize],
    tol: f64,
) -> Result<bool> {
    if i.len() != p.points() {
        return Err(Error::LengthMismatch {
            expected: p.points(),
            got: i.len(),
        });
    }
    let required = MatrixClass::for_partition(p);
    if !classify(m, tol).contains(&required) {
        return Err(Error::ClassMismatch { required });
    }
    let rows = i
        .iter()
        .map(|&label| m.row_of_label(label))
        .collect::<Result<Vec<_>>>()?;
    let mut product = 1.0;
    for block in p.blocks() {
        let sum: f64 = (0..m.cols)
            .map(|l| block.iter().map(|&t| m.at(rows[t - 1], l)).product::<f64>())
            .sum();
        let expected = if block.iter().all(|&t| i[t - 1] == i[block[0] - 1]) {
            1.0
        } else {
            0.0
        };
        if (sum - expected).abs() > tol {
            return Ok(false);
        }
        product *= sum;
    }
    let delta = if p.delta(i)? { 1.0 } else { 0.0 };
    Ok((product - delta).abs() <= tol)
}

/// The unique invariant state on a word in the row generators `p_{ij}`,
/// `i > k`.
///
/// Computed from the ergodicity identity: the one-block sums
/// `Σ_l p_{i_1 l}…p_{i_s l}` collapse to `δ_π(i)` block by block (peeling
/// interval blocks, which always exist for noncrossing `π`), and the
/// remaining Weingarten contraction is a linear solve against the Gram
/// matrix rather than an explicit inverse.
pub fn invariant_state_moment(
    cat: PartitionCategory,
    n: usize,
    k: usize,
    word: &MomentWord,
) -> Result<BigRational> {
    if k > n {
        return Err(Error::CutoffTooLarge { k, n });
    }
    if word.dim() != n {
        return Err(Error::DimensionMismatch {
            word: word.dim(),
            n,
        });
    }
    if let Some(&(row, _)) = word.letters().iter().find(|&&(row, _)| row <= k) {
        return Err(Error::RowNotBelowCutoff { row, k });
    }
    let gram: RationalMatrix = gram_matrix(cat, word.len(), n)?;
    if gram.size() == 0 {
        return Ok(BigRational::zero());
    }
    let rows = word.rows();
    let cols = word.cols();
    let indicator = |v: bool| {
        if v {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    let col_delta: Vec<BigRational> = gram
        .labels()
        .iter()
        .map(|sigma| indicator(sigma.delta(&cols).expect("length checked")))
        .collect();
    // G y = δ(j) is consistent: δ(j) lies in the column space of the Gram matrix.
    let y = linalg::solve(&gram, &col_delta).expect("Gram systems are consistent");
    let mut acc = BigRational::zero();
    for (pi, weight) in gram.labels().iter().zip(&y) {
        if collapse_fixed_point_sums(pi, &rows) {
            acc += weight;
        }
    }
    Ok(acc)
}

// Evaluates Σ_{l fits π} p_{i_1 l_1}…p_{i_s l_s} by repeatedly summing out a
// block: an interval block when one exists (always, for noncrossing π),
// otherwise the first block, which is legitimate in the commuting case.
fn collapse_fixed_point_sums(pi: &SetPartition, rows: &[usize]) -> bool {
    let mut labels: Vec<usize> = pi.rgs().to_vec();
    let mut rows: Vec<usize> = rows.to_vec();
    while let Some(&first) = labels.first() {
        let block = (0..labels.len())
            .map(|t| labels[t])
            .find(|&b| {
                let pos: Vec<usize> = (0..labels.len()).filter(|&t| labels[t] == b).collect();
                pos.windows(2).all(|w| w[1] == w[0] + 1)
            })
            .unwrap_or(first);
        let members: Vec<usize> = (0..labels.len()).filter(|&t| labels[t] == block).collect();
        if !members.iter().all(|&t| rows[t] == rows[members[0]]) {
            return false;
        }
        let keep: Vec<usize> = (0..labels.len()).filter(|&t| labels[t] != block).collect();
        labels = keep.iter().map(|&t| labels[t]).collect();
        rows = keep.iter().map(|&t| rows[t]).collect();
    }
    true
}

/// `S_n` (permutation matrices) or `H_n` (signed permutation matrices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalGroup {
    S,
    H,
}

impl ClassicalGroup {
    /// Default enumeration cap on `n`.
    pub fn cap(self) -> usize {
        match self {
            ClassicalGroup::S => 8,
            ClassicalGroup::H => 5,
        }
    }

    pub fn check_cap(self, n: usize) -> Result<()> {
        if n > self.cap() {
            return Err(Error::EnumerationCap { n, cap: self.cap() });
        }
        Ok(())
    }

    /// Every defining matrix, row-major with entries in `{-1,0,1}`.
    pub fn matrices(self, n: usize) -> Result<impl Iterator<Item = Vec<i8>>> {
        self.check_cap(n)?;
        let signs = match self {
            ClassicalGroup::S => 1u32,
            ClassicalGroup::H => 1 << n,
        };
        Ok((0..n).permutations(n).flat_map(move |perm| {
            (0..signs).map(move |mask| {
                let mut m = vec![0i8; n * n];
                for (r, &c) in perm.iter().enumerate() {
                    m[r * n + c] = if mask & (1 << r) != 0 { -1 } else { 1 };
                }
                m
            })
        }))
    }

    pub fn order(self, n: usize) -> u64 {
        let fact: u64 = (1..=n as u64).product();
        match self {
            ClassicalGroup::S => fact,
            ClassicalGroup::H => fact << n,
        }
    }
}

impl FromStr for ClassicalGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(ClassicalGroup::S),
            "H" => Ok(ClassicalGroup::H),
            other => Err(Error::Usage(format!("expected group S or H, got `{other}`"))),
        }
    }
}

/// Distinct bottom-`(n-k)`-row truncations, deduplicated exactly.
pub fn truncations(group: ClassicalGroup, n: usize, k: usize) -> Result<Vec<TruncatedMatrix>> {
    if k > n {
        return Err(Error::CutoffTooLarge { k, n });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in group.matrices(n)? {
        let bottom = m[k * n..].to_vec();
        if seen.insert(bottom.clone()) && k < n {
            let entries = bottom.into_iter().map(f64::from).collect();
            out.push(TruncatedMatrix::new(
                n - k,
                n,
                entries,
                Provenance::Enumerated(group),
            )?);
        }
    }
    Ok(out)
}

/// `#(G_n/G_k)` by enumeration; an empty truncation (`k = n`) counts once.
pub fn count_truncations(group: ClassicalGroup, n: usize, k: usize) -> Result<u64> {
    if k > n {
        return Err(Error::CutoffTooLarge { k, n });
    }
    let mut seen = HashSet::new();
    for m in group.matrices(n)? {
        seen.insert(m[k * n..].to_vec());
    }
    Ok(seen.len() as u64)
}

/// Operator norm of `[q p′ q + q⊥ p′ q⊥, p′]` where `q` projects onto the
/// first axis of the plane and `p′` onto the line at angle `theta`.
pub fn free_projection_witness(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let q = [[1.0, 0.0], [0.0, 0.0]];
    let q_perp = [[0.0, 0.0], [0.0, 1.0]];
    let p = [[c * c, c * s], [c * s, s * s]];
    let x = add(mul(mul(q, p), q), mul(mul(q_perp, p), q_perp));
    let comm = sub(mul(x, p), mul(p, x));
    operator_norm(comm)
}

type M2 = [[f64; 2]; 2];

fn mul(a: M2, b: M2) -> M2 {
    let mut out = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

fn add(a: M2, b: M2) -> M2 {
    [[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]]
}

fn sub(a: M2, b: M2) -> M2 {
    [[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]]
}

// Largest singular value: sqrt of the top eigenvalue of AᵀA.
fn operator_norm(a: M2) -> f64 {
    let t = [[a[0][0], a[1][0]], [a[0][1], a[1][1]]];
    let s = mul(t, a);
    let tr = s[0][0] + s[1][1];
    let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    ((tr + disc) / 2.0).max(0.0).sqrt()
}
