//! Set partitions of `{1,…,s}` and the ten categories of partitions attached
//! to the easy groups `O, S, H, B`, their free versions, and the primed
//! versions `S′, B′`.
//!
//! A [`SetPartition`] is kept in canonical form: blocks ordered by their
//! minimum, elements ascending inside each block. The canonical order on
//! partitions is lexicographic order on the restricted-growth string, and all
//! matrices indexed by partitions use that order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition of the points `{1,…,s}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    // Restricted-growth string: rgs[t] is the block index of point t+1.
    // Field order matters: the derived Ord compares this first.
    rgs: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// The partition of zero points.
    pub fn empty() -> Self {
        SetPartition {
            rgs: Vec::new(),
            blocks: Vec::new(),
        }
    }

    /// All singletons.
    pub fn discrete(points: usize) -> Self {
        Self::from_rgs_unchecked((0..points).collect())
    }

    /// One block holding every point (the empty partition when `points == 0`).
    pub fn single_block(points: usize) -> Self {
        Self::from_rgs_unchecked(vec![0; points])
    }

    /// Builds a partition from 1-based blocks, in any order.
    pub fn from_blocks(points: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; points];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x == 0 || x > points {
                    return Err(Error::InvalidPartition(format!(
                        "point {x} outside 1..={points}"
                    )));
                }
                if owner[x - 1] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("point {x} repeated")));
                }
                owner[x - 1] = b;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "point {} not covered",
                missing + 1
            )));
        }
        Ok(Self::kernel_of(&owner))
    }

    /// Builds a partition from a restricted-growth string (0-based labels).
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        let mut next = 0;
        for &r in &rgs {
            if r > next {
                return Err(Error::InvalidPartition(format!(
                    "not a restricted-growth string: {rgs:?}"
                )));
            }
            if r == next {
                next += 1;
            }
        }
        Ok(Self::from_rgs_unchecked(rgs))
    }

    fn from_rgs_unchecked(rgs: Vec<usize>) -> Self {
        let count = rgs.iter().map(|&r| r + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (t, &r) in rgs.iter().enumerate() {
            blocks[r].push(t + 1);
        }
        SetPartition { rgs, blocks }
    }

    /// The kernel of a labelling: positions with equal labels share a block.
    pub fn kernel_of<T: Eq + Hash>(labels: &[T]) -> Self {
        let mut seen: HashMap<&T, usize> = HashMap::new();
        let rgs = labels
            .iter()
            .map(|x| {
                let next = seen.len();
                *seen.entry(x).or_insert(next)
            })
            .collect();
        Self::from_rgs_unchecked(rgs)
    }

    pub fn points(&self) -> usize {
        self.rgs.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    /// Block index (0-based, canonical) of the 1-based point `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.rgs[x - 1]
    }

    /// No `a<b<c<d` with `a,c` in one block and `b,d` in another.
    pub fn is_noncrossing(&self) -> bool {
        let r = &self.rgs;
        let s = r.len();
        for a in 0..s {
            for b in a + 1..s {
                if r[b] == r[a] {
                    continue;
                }
                for c in b + 1..s {
                    if r[c] != r[a] {
                        continue;
                    }
                    if (c + 1..s).any(|d| r[d] == r[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The finest partition coarser than both `self` and `other`.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.points() != other.points() {
            return Err(Error::PointMismatch {
                left: self.points(),
                right: other.points(),
            });
        }
        let mut uf = UnionFind::new(self.points());
        for block in self.blocks.iter().chain(other.blocks.iter()) {
            for w in block.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        let roots: Vec<usize> = (0..self.points()).map(|t| uf.find(t)).collect();
        Ok(Self::kernel_of(&roots))
    }

    /// `|self ∨ other|`.
    pub fn join_count(&self, other: &SetPartition) -> Result<usize> {
        self.join(other).map(|j| j.block_count())
    }

    /// True when every block of `self` sits inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.points() == other.points()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&x| other.block_of(x) == other.block_of(b[0])))
    }

    /// `δ_π(i)`: true iff the indices are constant on every block.
    pub fn delta(&self, indices: &[usize]) -> Result<bool> {
        if indices.len() != self.points() {
            return Err(Error::LengthMismatch {
                expected: self.points(),
                got: indices.len(),
            });
        }
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| indices[x - 1] == indices[b[0] - 1])))
    }

    /// The partition left after deleting the blocks whose bit is set in
    /// `removed`, relabelled order-preservingly onto `{1,…,s′}`.
    pub fn remove_blocks(&self, removed: u64) -> SetPartition {
        let kept: Vec<usize> = self
            .rgs
            .iter()
            .copied()
            .filter(|&r| removed & (1 << r) == 0)
            .collect();
        Self::kernel_of(&kept)
    }

    /// Every partition obtained by removing some (possibly none, possibly all)
    /// blocks.
    pub fn block_removal_subpartitions(&self) -> BTreeSet<SetPartition> {
        assert!(self.block_count() < 64, "too many blocks");
        (0..1u64 << self.block_count())
            .map(|mask| self.remove_blocks(mask))
            .collect()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            write!(f, "{{")?;
            for (t, x) in block.iter().enumerate() {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `"{1,3}{2,4}"`. The empty string is the empty partition.
    fn from_str(text: &str) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut blocks = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| Error::InvalidPartition(format!("expected `{{` in `{text}`")))?;
            let close = body
                .find('}')
                .ok_or_else(|| Error::InvalidPartition(format!("unclosed block in `{text}`")))?;
            let block = body[..close]
                .split(',')
                .map(|x| {
                    x.parse::<usize>()
                        .map_err(|_| Error::InvalidPartition(format!("bad point `{x}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = &body[close + 1..];
        }
        let points = blocks.iter().map(Vec::len).sum();
        Self::from_blocks(points, blocks)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// A tuple of indices `(i₁,…,iₛ)`, each in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexTuple(pub Vec<usize>);

impl IndexTuple {
    pub fn kernel(&self) -> SetPartition {
        SetPartition::kernel_of(&self.0)
    }
}

impl std::ops::Deref for IndexTuple {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for IndexTuple {
    fn from(v: Vec<usize>) -> Self {
        IndexTuple(v)
    }
}

/// Which block sizes a category admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockRule {
    /// Every block has size 2.
    Pairings,
    /// Anything.
    All,
    /// Every block has even size.
    Even,
    /// Blocks of size 1 or 2.
    SinglesAndPairs,
}

impl BlockRule {
    pub fn admits(self, size: usize) -> bool {
        match self {
            BlockRule::Pairings => size == 2,
            BlockRule::All => true,
            BlockRule::Even => size.is_multiple_of(2),
            BlockRule::SinglesAndPairs => size == 1 || size == 2,
        }
    }
}

/// The ten categories of partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionCategory {
    O,
    S,
    H,
    B,
    OFree,
    SFree,
    HFree,
    BFree,
    SPrime,
    BPrime,
}

impl PartitionCategory {
    pub const ALL: [PartitionCategory; 10] = [
        PartitionCategory::O,
        PartitionCategory::S,
        PartitionCategory::H,
        PartitionCategory::B,
        PartitionCategory::OFree,
        PartitionCategory::SFree,
        PartitionCategory::HFree,
        PartitionCategory::BFree,
        PartitionCategory::SPrime,
        PartitionCategory::BPrime,
    ];

    pub const UNPRIMED: [PartitionCategory; 8] = [
        PartitionCategory::O,
        PartitionCategory::S,
        PartitionCategory::H,
        PartitionCategory::B,
        PartitionCategory::OFree,
        PartitionCategory::SFree,
        PartitionCategory::HFree,
        PartitionCategory::BFree,
    ];

    pub const FREE: [PartitionCategory; 4] = [
        PartitionCategory::OFree,
        PartitionCategory::SFree,
        PartitionCategory::HFree,
        PartitionCategory::BFree,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PartitionCategory::O => "O",
            PartitionCategory::S => "S",
            PartitionCategory::H => "H",
            PartitionCategory::B => "B",
            PartitionCategory::OFree => "Ofree",
            PartitionCategory::SFree => "Sfree",
            PartitionCategory::HFree => "Hfree",
            PartitionCategory::BFree => "Bfree",
            PartitionCategory::SPrime => "Sprime",
            PartitionCategory::BPrime => "Bprime",
        }
    }

    pub fn rule(self) -> BlockRule {
        use PartitionCategory::*;
        match self {
            O | OFree => BlockRule::Pairings,
            S | SFree | SPrime => BlockRule::All,
            H | HFree => BlockRule::Even,
            B | BFree | BPrime => BlockRule::SinglesAndPairs,
        }
    }

    pub fn is_free(self) -> bool {
        use PartitionCategory::*;
        matches!(self, OFree | SFree | HFree | BFree)
    }

    pub fn is_primed(self) -> bool {
        matches!(self, PartitionCategory::SPrime | PartitionCategory::BPrime)
    }

    /// Membership `π ∈ D(s)`.
    pub fn contains(self, p: &SetPartition) -> bool {
        if self.is_primed() && p.points() % 2 == 1 {
            return false;
        }
        let rule = self.rule();
        p.blocks().iter().all(|b| rule.admits(b.len())) && (!self.is_free() || p.is_noncrossing())
    }

    /// `D(s)` in canonical order.
    pub fn enumerate(self, points: usize) -> Vec<SetPartition> {
        if self.is_primed() && points % 2 == 1 {
            return Vec::new();
        }
        let rule = self.rule();
        let mut out = Vec::new();
        let mut rgs = vec![0; points];
        let mut sizes = Vec::new();
        self.grow(rule, 0, &mut rgs, &mut sizes, &mut out);
        out
    }

    // Depth-first over restricted-growth strings in lexicographic order,
    // pruning prefixes that already violate the block-size rule.
    fn grow(
        self,
        rule: BlockRule,
        t: usize,
        rgs: &mut Vec<usize>,
        sizes: &mut Vec<usize>,
        out: &mut Vec<SetPartition>,
    ) {
        let s = rgs.len();
        if t == s {
            if sizes.iter().all(|&k| rule.admits(k)) {
                let p = SetPartition::from_rgs_unchecked(rgs.clone());
                if !self.is_free() || p.is_noncrossing() {
                    out.push(p);
                }
            }
            return;
        }
        let remaining = s - t;
        for b in 0..=sizes.len() {
            if b == sizes.len() {
                sizes.push(0);
            }
            sizes[b] += 1;
            let too_big = matches!(rule, BlockRule::Pairings | BlockRule::SinglesAndPairs)
                && sizes[b] > 2;
            // Pairings need every open singleton closed by a later point.
            let unfillable = rule == BlockRule::Pairings
                && sizes.iter().filter(|&&k| k == 1).count() > remaining - 1;
            if !too_big && !unfillable {
                rgs[t] = b;
                self.grow(rule, t + 1, rgs, sizes, out);
            }
            sizes[b] -= 1;
            if sizes[b] == 0 {
                sizes.pop();
            }
        }
    }
}

impl fmt::Display for PartitionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PartitionCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PartitionCategory::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::UnknownCategory(s.to_string()))
    }
}

/// A failed block-removal check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityWitness {
    pub partition: SetPartition,
    /// Removed blocks, 1-based, as they appear in `partition`.
    pub removed: Vec<Vec<usize>>,
    pub subpartition: SetPartition,
}

impl fmt::Display for StabilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} minus ", self.partition)?;
        for b in &self.removed {
            let parts: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", parts.join(","))?;
        }
        write!(f, " gives {} outside D({})", self.subpartition, self.subpartition.points())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStability {
    pub stable: bool,
    pub witness: Option<StabilityWitness>,
}

/// Checks that removing blocks never leaves the category, for all
/// `s ≤ s_max`. Reports the first failure in canonical order.
pub fn is_block_stable(cat: PartitionCategory, s_max: usize) -> BlockStability {
    for s in 0..=s_max {
        for p in cat.enumerate(s) {
            for mask in 0..1u64 << p.block_count() {
                let sub = p.remove_blocks(mask);
                if !cat.contains(&sub) {
                    let removed = (0..p.block_count())
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| p.blocks()[b].clone())
                        .collect();
                    return BlockStability {
                        stable: false,
                        witness: Some(StabilityWitness {
                            partition: p,
                            removed,
                            subpartition: sub,
                        }),
                    };
                }
            }
        }
    }
    BlockStability {
        stable: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> SetPartition {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_display_canonicalize() {
        let q = p("{2,4}{3,1}");
        assert_eq!(q.to_string(), "{1,3}{2,4}");
        assert_eq!(q.rgs(), &[0, 1, 0, 1]);
        assert_eq!(p(""), SetPartition::empty());
        assert!("{1,1}".parse::<SetPartition>().is_err());
        assert!("{1,3}".parse::<SetPartition>().is_err());
        assert!("{}".parse::<SetPartition>().is_err());
    }

    #[test]
    fn noncrossing_examples() {
        assert!(!p("{1,3}{2,4}").is_noncrossing());
        assert!(p("{1,4}{2,3}").is_noncrossing());
        assert!(SetPartition::single_block(5).is_noncrossing());
        assert!(!p("{1,3,5}{2,6}{4}").is_noncrossing());
    }

    #[test]
    fn join_examples() {
        let a = p("{1,2}{3,4}");
        assert_eq!(a.join(&a).unwrap(), a);
        let j = a.join(&p("{2,3}{1,4}")).unwrap();
        assert_eq!(j, SetPartition::single_block(4));
        assert_eq!(j.block_count(), 1);
        let j = SetPartition::discrete(3).join(&p("{1,2}{3}")).unwrap();
        assert_eq!(j, p("{1,2}{3}"));
        assert_eq!(j.block_count(), 2);
        assert_eq!(
            a.join(&SetPartition::discrete(3)),
            Err(Error::PointMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn delta_examples() {
        let pair = SetPartition::single_block(2);
        assert!(pair.delta(&[1, 1]).unwrap());
        assert!(!pair.delta(&[1, 2]).unwrap());
        assert!(SetPartition::discrete(3).delta(&[3, 1, 2]).unwrap());
        assert!(pair.delta(&[1]).is_err());
    }

    #[test]
    fn block_removal_examples() {
        let subs = p("{1,2}{3}").block_removal_subpartitions();
        let expected: BTreeSet<_> = [p("{1,2}{3}"), p("{1,2}"), p("{1}"), p("")].into();
        assert_eq!(subs, expected);

        let subs = SetPartition::single_block(3).block_removal_subpartitions();
        assert_eq!(subs, [SetPartition::single_block(3), p("")].into());

        let subs = SetPartition::discrete(2).block_removal_subpartitions();
        assert_eq!(subs, [SetPartition::discrete(2), p("{1}"), p("")].into());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(PartitionCategory::S.enumerate(4).len(), 15);
        assert_eq!(PartitionCategory::O.enumerate(4).len(), 3);
        assert_eq!(PartitionCategory::OFree.enumerate(4).len(), 2);
        assert!(PartitionCategory::SPrime.enumerate(3).is_empty());
        for cat in PartitionCategory::ALL {
            assert_eq!(cat.enumerate(0), vec![SetPartition::empty()], "{cat}");
        }
        let all = PartitionCategory::S.enumerate(3);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[0], SetPartition::single_block(3));
        assert_eq!(all[4], SetPartition::discrete(3));
    }

    #[test]
    fn enumeration_matches_membership_filter() {
        for cat in PartitionCategory::ALL {
            for s in 0..=6 {
                let filtered: Vec<_> = PartitionCategory::S
                    .enumerate(s)
                    .into_iter()
                    .filter(|q| cat.contains(q))
                    .collect();
                assert_eq!(cat.enumerate(s), filtered, "{cat} s={s}");
            }
        }
    }

    #[test]
    fn block_stability_examples() {
        assert!(is_block_stable(PartitionCategory::S, 6).stable);
        assert!(is_block_stable(PartitionCategory::HFree, 6).stable);
        let r = is_block_stable(PartitionCategory::SPrime, 2);
        assert!(!r.stable);
        let w = r.witness.unwrap();
        assert_eq!(w.partition, SetPartition::discrete(2));
        assert_eq!(w.removed, vec![vec![1]]);
        assert_eq!(w.subpartition, p("{1}"));
    }

    #[test]
    fn category_labels_round_trip() {
        for cat in PartitionCategory::ALL {
            assert_eq!(cat.label().parse::<PartitionCategory>().unwrap(), cat);
        }
        assert!("Oprime".parse::<PartitionCategory>().is_err());
    }
}
