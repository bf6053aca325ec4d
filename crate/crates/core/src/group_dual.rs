//! Finite group duals `Γ̂ ⊂ U_n⁺` embedded via `u ↦ J D J*`, `D = diag(g_i)`.
//!
//! For `H = Γ̂ ∩ U_k⁺` the row algebra of `G/H` is `C*(Λ)` with
//! `Λ = ⟨g_r : J_{ir} ≠ 0 for some i > k⟩`, the full quotient algebra is
//! `C*(Λ′)` with `Λ′` the normal closure, and the two agree exactly when `Λ`
//! is normal in `Γ`. Only the zero pattern of `J` matters.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 1_000_000;

/// A permutation of `{1,…,d}`, stored 0-based as the image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| Error::InvalidPermutation(format!("image {x} out of range")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
        }
        Ok(Permutation(images))
    }

    /// Parses cycle notation such as `(1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected `(` in `{text}`")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in `{text}`")))?;
            let points = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(x) if (1..=degree).contains(&x) => Ok(x - 1),
                    _ => Err(Error::InvalidPermutation(format!(
                        "bad point `{s}` for degree {degree}"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            for &x in &points {
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears twice in `{text}`",
                        x + 1
                    )));
                }
            }
            for (t, &x) in points.iter().enumerate() {
                images[x] = points[(t + 1) % points.len()] as u32;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(t, &x)| t as u32 == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (t, &x) in self.0.iter().enumerate() {
            inv[x as usize] = t as u32;
        }
        Permutation(inv)
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A permutation group together with the ordered generator list it came from.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: HashSet<Permutation>,
    generators: Vec<Permutation>,
}

impl FiniteGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.contains(g)
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    /// Subset test on elements.
    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }
}

/// The group generated by `gens`, by breadth-first closure under left
/// multiplication by generators.
pub fn close_generators(degree: usize, gens: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::InvalidPermutation(format!(
            "{g} has degree {} but the group has degree {degree}",
            g.degree()
        )));
    }
    let identity = Permutation::identity(degree);
    let mut elements = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if !elements.contains(&y) {
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                elements.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(FiniteGroup {
        degree,
        elements,
        generators: gens.to_vec(),
    })
}

/// The smallest normal subgroup of `group` containing `subset`: close the
/// generating set under conjugation by the generators of `group`.
pub fn normal_closure(group: &FiniteGroup, subset: &[Permutation]) -> Result<FiniteGroup> {
    let cap = group.order().max(1);
    let mut gens: Vec<Permutation> = subset.to_vec();
    let mut closure = close_generators(group.degree, &gens, cap)?;
    loop {
        let fresh: Vec<Permutation> = closure
            .generators
            .iter()
            .flat_map(|h| group.generators.iter().map(move |g| h.conjugate_by(g)))
            .filter(|c| !closure.contains(c))
            .collect();
        if fresh.is_empty() {
            return Ok(closure);
        }
        for c in fresh {
            if !gens.contains(&c) {
                gens.push(c);
            }
        }
        closure = close_generators(group.degree, &gens, cap)?;
    }
}

/// `g h g⁻¹ ∈ H` for all generators `g` of `G` and `h` of `H`.
pub fn is_normal(group: &FiniteGroup, sub: &FiniteGroup) -> bool {
    sub.generators
        .iter()
        .all(|h| group.generators.iter().all(|g| sub.contains(&h.conjugate_by(g))))
}

/// `Γ = ⟨g₁,…,gₙ⟩` with the support pattern of `J` and the cutoff `k`.
#[derive(Debug, Clone)]
pub struct DualEmbedding {
    group: FiniteGroup,
    pattern: Vec<Vec<bool>>,
    cutoff: usize,
}

impl DualEmbedding {
    pub fn new(group: FiniteGroup, pattern: Vec<Vec<bool>>, cutoff: usize) -> Result<Self> {
        let n = group.generators.len();
        if pattern.len() != n || pattern.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidEmbedding(format!(
                "pattern must be {n}x{n} to match the generator list"
            )));
        }
        if cutoff > n {
            return Err(Error::CutoffTooLarge { k: cutoff, n });
        }
        if let Some(r) = (0..n).find(|&r| !pattern[r].iter().any(|&x| x)) {
            return Err(Error::InvalidEmbedding(format!("row {} of the pattern is empty", r + 1)));
        }
        if let Some(c) = (0..n).find(|&c| !pattern.iter().any(|row| row[c])) {
            return Err(Error::InvalidEmbedding(format!("column {} of the pattern is empty", c + 1)));
        }
        Ok(DualEmbedding {
            group,
            pattern,
            cutoff,
        })
    }

    /// Diagonal embedding `J = 1`.
    pub fn diagonal(group: FiniteGroup, cutoff: usize) -> Result<Self> {
        let n = group.generators.len();
        let pattern = (0..n).map(|r| (0..n).map(|c| r == c).collect()).collect();
        Self::new(group, pattern, cutoff)
    }

    /// Validates `J Jᵀ = 1` within `1e-9` and keeps the support of `J`.
    pub fn from_matrix(group: FiniteGroup, j: &[Vec<f64>], cutoff: usize) -> Result<Self> {
        let n = j.len();
        if j.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidEmbedding("J must be square".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = j[a].iter().zip(&j[b]).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                if (dot - target).abs() > 1e-9 {
                    return Err(Error::InvalidEmbedding("J is not orthogonal".into()));
                }
            }
        }
        let pattern = j
            .iter()
            .map(|row| row.iter().map(|x| x.abs() > 1e-9).collect())
            .collect();
        Self::new(group, pattern, cutoff)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn pattern(&self) -> &[Vec<bool>] {
        &self.pattern
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Generator positions `r` (0-based) with `J_{ir} ≠ 0` for some row `i > k`.
    pub fn active_generators(&self) -> Vec<usize> {
        let n = self.pattern.len();
        (0..n)
            .filter(|&r| self.pattern[self.cutoff..].iter().any(|row| row[r]))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct DualAnalysis {
    pub lambda: FiniteGroup,
    pub lambda_closure: FiniteGroup,
    pub group_order: usize,
}

impl DualAnalysis {
    /// `|Λ| = dim C×(G/H)`.
    pub fn lambda_order(&self) -> usize {
        self.lambda.order()
    }

    /// `|Λ′| = dim C(G/H)`.
    pub fn lambda_closure_order(&self) -> usize {
        self.lambda_closure.order()
    }

    /// `|Θ| = |Γ| / |Λ′|`.
    pub fn theta_order(&self) -> usize {
        self.group_order / self.lambda_closure_order()
    }

    /// True when `C×(G/H) = C(G/H)`.
    pub fn verdict(&self) -> bool {
        self.lambda_order() == self.lambda_closure_order()
    }

    pub fn to_key_values(&self) -> String {
        format!(
            "lambda_order={}\nlambda_closure_order={}\ntheta_order={}\nverdict={}\n",
            self.lambda_order(),
            self.lambda_closure_order(),
            self.theta_order(),
            if self.verdict() { "isomorphism" } else { "proper" }
        )
    }
}

pub fn analyze_embedding(e: &DualEmbedding) -> Result<DualAnalysis> {
    let gens: Vec<Permutation> = e
        .active_generators()
        .into_iter()
        .map(|r| e.group.generators[r].clone())
        .collect();
    let lambda = close_generators(e.group.degree, &gens, e.group.order())?;
    let lambda_closure = normal_closure(&e.group, &gens)?;
    Ok(DualAnalysis {
        lambda,
        lambda_closure,
        group_order: e.group.order(),
    })
}

/// Parses the key-per-line embedding format:
///
/// ```text
/// degree=3
/// k=2
/// generator=(1 2)
/// generator=(1 3)
/// generator=(2 3)
/// pattern=
/// 1 0 0
/// 0 1 0
/// 0 0 1
/// ```
///
/// A `J=` block of decimals may replace `pattern=`. The first matrix row may
/// also follow the `=` on the same line.
pub fn parse_embedding(text: &str, cap: usize) -> Result<DualEmbedding> {
    let mut degree = None;
    let mut cutoff = None;
    let mut generators = Vec::new();
    let mut matrix: Option<(bool, Vec<Vec<String>>)> = None;
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    while let Some(line) = lines.next() {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{line}`")))?;
        let value = value.trim();
        match key.trim() {
            "degree" => {
                degree = Some(value.parse::<usize>().map_err(|_| Error::Parse(format!("bad degree `{value}`")))?)
            }
            "k" => cutoff = Some(value.parse::<usize>().map_err(|_| Error::Parse(format!("bad k `{value}`")))?),
            "generator" => {
                let d = degree.ok_or_else(|| Error::Parse("degree must precede generators".into()))?;
                generators.push(Permutation::parse_cycles(value, d)?);
            }
            key @ ("pattern" | "J") => {
                let n = generators.len();
                let mut rows: Vec<Vec<String>> = Vec::new();
                if !value.is_empty() {
                    rows.push(value.split_whitespace().map(String::from).collect());
                }
                while rows.len() < n {
                    let row = lines
                        .next()
                        .ok_or_else(|| Error::Parse(format!("{key} needs {n} rows")))?;
                    rows.push(row.split_whitespace().map(String::from).collect());
                }
                matrix = Some((key == "J", rows));
            }
            other => return Err(Error::Parse(format!("unknown key `{other}`"))),
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing degree".into()))?;
    let cutoff = cutoff.ok_or_else(|| Error::Parse("missing k".into()))?;
    let (explicit, rows) = matrix.ok_or_else(|| Error::Parse("missing pattern or J".into()))?;
    let group = close_generators(degree, &generators, cap)?;
    if explicit {
        let j = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.parse::<f64>().map_err(|_| Error::Parse(format!("bad J entry `{x}`"))))
                    .collect()
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        DualEmbedding::from_matrix(group, &j, cutoff)
    } else {
        let pattern = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| match x.as_str() {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        _ => Err(Error::Parse(format!("pattern entries are 0 or 1, got `{x}`"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>>>()?;
        DualEmbedding::new(group, pattern, cutoff)
    }
}
