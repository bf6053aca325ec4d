//! Independent ground truth for integration and acceptance tests. Nothing
//! here calls into the enumeration, join, or elimination code it checks.

#![allow(dead_code)]

use std::collections::HashSet;

use eqg::group_dual::{FiniteGroup, Permutation};
use eqg::SetPartition;

/// All set partitions of {1..s} as block lists, by inserting point s into
/// each block of a partition of {1..s-1} or opening a new block.
pub fn bell_partitions(s: usize) -> Vec<Vec<Vec<usize>>> {
    if s == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in bell_partitions(s - 1) {
        for b in 0..p.len() {
            let mut q = p.clone();
            q[b].push(s);
            out.push(q);
        }
        let mut q = p.clone();
        q.push(vec![s]);
        out.push(q);
    }
    out
}

/// Perfect matchings of {1..s}: pair the smallest point with each other one.
pub fn pairings(points: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    if points.len() % 2 == 1 {
        return Vec::new();
    }
    let first = points[0];
    let mut out = Vec::new();
    for t in 1..points.len() {
        let rest: Vec<usize> = points[1..].iter().copied().filter(|&x| x != points[t]).collect();
        for mut m in pairings(&rest) {
            m.push(vec![first, points[t]]);
            out.push(m);
        }
    }
    out
}

pub fn crosses(blocks: &[Vec<usize>]) -> bool {
    for (x, a) in blocks.iter().enumerate() {
        for b in &blocks[x + 1..] {
            for &p in a {
                for &q in a {
                    if p >= q {
                        continue;
                    }
                    let inside = b.iter().any(|&r| p < r && r < q);
                    let outside = b.iter().any(|&r| r < p || r > q);
                    if inside && outside {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn catalan(m: u64) -> u64 {
    (0..m).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

pub fn double_factorial_odd(s: u64) -> u64 {
    // (s-1)!! for even s
    (1..s).step_by(2).product()
}

pub fn to_partition(s: usize, blocks: &[Vec<usize>]) -> SetPartition {
    SetPartition::from_blocks(s, blocks.to_vec()).unwrap()
}

/// Every tuple in {1..n}^s.
pub fn tuples(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=n).map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

pub fn constant_on_blocks(blocks: &[Vec<usize>], i: &[usize]) -> bool {
    blocks.iter().all(|b| b.iter().all(|&x| i[x - 1] == i[b[0] - 1]))
}

/// Σ_i δ_π(i) δ_σ(i) by brute force.
pub fn brute_inner_product(p: &SetPartition, q: &SetPartition, n: usize) -> u64 {
    tuples(n, p.points())
        .iter()
        .filter(|i| constant_on_blocks(p.blocks(), i) && constant_on_blocks(q.blocks(), i))
        .count() as u64
}

/// Index tuple whose kernel is `p`, using labels 1, 2, ... by block.
pub fn tuple_with_kernel(p: &SetPartition, offset: usize) -> Vec<usize> {
    p.rgs().iter().map(|&r| r + 1 + offset).collect()
}

fn compose(a: &Permutation, b: &Permutation) -> Permutation {
    a.compose(b)
}

/// Normal closure by brute force: conjugate by every element and regenerate
/// until nothing new appears.
pub fn brute_normal_closure(group: &FiniteGroup, subset: &[Permutation]) -> HashSet<Permutation> {
    let mut current: HashSet<Permutation> = subset.iter().cloned().collect();
    current.insert(Permutation::identity(group.degree()));
    loop {
        let mut next = current.clone();
        for g in group.elements() {
            for h in &current {
                next.insert(h.conjugate_by(g));
            }
        }
        let snapshot: Vec<Permutation> = next.iter().cloned().collect();
        for a in &snapshot {
            for b in &snapshot {
                next.insert(compose(a, b));
            }
        }
        if next.len() == current.len() {
            return current;
        }
        current = next;
    }
}

/// Kernel of Γ → Γ/⟨S = 1⟩: the congruence on Γ generated by s ~ e,
/// closed under left and right multiplication by generators; the kernel is
/// the class of the identity.
pub fn quotient_kernel(group: &FiniteGroup, subset: &[Permutation]) -> HashSet<Permutation> {
    let elements: Vec<Permutation> = group.elements().cloned().collect();
    let index = |p: &Permutation| elements.iter().position(|e| e == p).unwrap();
    let mut parent: Vec<usize> = (0..elements.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let identity = index(&Permutation::identity(group.degree()));
    let mut pending: Vec<(usize, usize)> = subset.iter().map(|s| (index(s), identity)).collect();
    while let Some((a, b)) = pending.pop() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            continue;
        }
        parent[ra] = rb;
        for g in group.generators() {
            pending.push((index(&g.compose(&elements[a])), index(&g.compose(&elements[b]))));
            pending.push((index(&elements[a].compose(g)), index(&elements[b].compose(g))));
        }
    }
    let root = find(&mut parent, identity);
    (0..elements.len())
        .filter(|&t| find(&mut parent, t) == root)
        .map(|t| elements[t].clone())
        .collect()
}
