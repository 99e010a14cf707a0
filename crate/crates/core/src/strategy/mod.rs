//! Succinct recursive strategies for hat guessing games.
//!
//! A [`Strategy`] is a tree whose leaves are explicit strategies on small
//! graphs (cliques and the three-vertex path) and whose inner nodes combine or
//! transform them: clique joins glue two games along a separator, scale nodes
//! multiply every hatness and guess count, pad nodes add guesses.
//!
//! Vertices are named by [`Slot`]s. Inside the right-hand block of a join the
//! pivot vertex (which does not exist in the joined graph) is [`Slot::Pivot`];
//! it always refers to the pivot of the nearest enclosing join whose right
//! block contains it.

mod eval;
mod format;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graph::Graph;
use crate::numerics::{lcm_list, Rational};

pub use eval::{guesses, ColorSource, CompiledStrategy, FullView};
pub use format::{deserialize, serialize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("bear on {vertex} needs the color of neighbor {neighbor}")]
    MissingNeighborColor { vertex: usize, neighbor: usize },
    #[error("malformed strategy: {0}")]
    MalformedStrategy(String),
    #[error("inconsistent composition: {0}")]
    InconsistentComposition(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("hatness does not fit in 64 bits")]
    Overflow,
    #[error("path strategy bound violated for h = {hatness}, g = {guesses}")]
    P3BoundViolated { hatness: u64, guesses: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn malformed(msg: impl Into<String>) -> StrategyError {
    StrategyError::MalformedStrategy(msg.into())
}

/// A vertex reference inside a strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Vertex(usize),
    /// The pivot of the innermost enclosing join (right block only).
    Pivot,
}

impl Slot {
    pub fn vertex(self) -> Option<usize> {
        match self {
            Slot::Vertex(v) => Some(v),
            Slot::Pivot => None,
        }
    }
}

impl From<usize> for Slot {
    fn from(v: usize) -> Self {
        Slot::Vertex(v)
    }
}

/// A non-uniform game `(G, h, g)`. A vertex with `g = 0` abstains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    graph: Graph,
    hatness: Vec<u64>,
    guesses: Vec<u64>,
}

impl GameSpec {
    pub fn new(graph: Graph, hatness: Vec<u64>, guesses: Vec<u64>) -> Result<Self, StrategyError> {
        let n = graph.vertex_count();
        if hatness.len() != n || guesses.len() != n {
            return Err(StrategyError::InvalidGame(format!(
                "expected {n} hatness and guess values"
            )));
        }
        for v in 0..n {
            if hatness[v] == 0 || guesses[v] > hatness[v] {
                return Err(StrategyError::InvalidGame(format!(
                    "vertex {v} has h = {}, g = {}",
                    hatness[v], guesses[v]
                )));
            }
        }
        Ok(Self {
            graph,
            hatness,
            guesses,
        })
    }

    pub fn uniform(graph: Graph, hatness: u64, guesses: u64) -> Result<Self, StrategyError> {
        let n = graph.vertex_count();
        Self::new(graph, vec![hatness; n], vec![guesses; n])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn hatness(&self) -> &[u64] {
        &self.hatness
    }

    pub fn guesses(&self) -> &[u64] {
        &self.guesses
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `g_v / h_v` per vertex.
    pub fn ratios(&self) -> Vec<Rational> {
        self.hatness
            .iter()
            .zip(&self.guesses)
            .map(|(&h, &g)| Rational::new(g.into(), h.into()))
            .collect()
    }

    /// Number of hat arrangements, `Π h_v`, if it fits in a `u64`.
    pub fn arrangement_count(&self) -> Option<u64> {
        self.hatness
            .iter()
            .try_fold(1u64, |acc, &h| acc.checked_mul(h))
    }
}

/// One color per vertex, `0 <= color[v] < h_v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrangement {
    pub colors: Vec<u64>,
}

impl Arrangement {
    pub fn new(colors: Vec<u64>) -> Self {
        Self { colors }
    }

    pub fn is_valid_for(&self, spec: &GameSpec) -> bool {
        self.colors.len() == spec.vertex_count()
            && self.colors.iter().zip(spec.hatness()).all(|(c, h)| c < h)
    }
}

impl std::fmt::Display for Arrangement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Modular interval strategy on a clique.
///
/// With `ℓ = lcm(h)`, `d_i = ℓ / h_i` and `b_i = Σ_{j<i} d_j g_j`, the bear on
/// the `i`-th vertex guesses every color `a` with
/// `b_i <= (s_i + a·d_i) mod ℓ < b_i + d_i·g_i`, where `s_i` is the weighted
/// sum of the colors it sees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueLeaf {
    vertices: Vec<Slot>,
    hatness: Vec<u64>,
    guesses: Vec<u64>,
    modulus: u64,
    steps: Vec<u64>,
    starts: Vec<u64>,
}

impl CliqueLeaf {
    pub fn new(
        vertices: Vec<Slot>,
        hatness: Vec<u64>,
        guesses: Vec<u64>,
    ) -> Result<Self, StrategyError> {
        let k = vertices.len();
        if k == 0 || hatness.len() != k || guesses.len() != k {
            return Err(malformed("clique needs matching, non-empty V/H/G lists"));
        }
        if let Some(i) = (0..k).find(|&i| hatness[i] == 0 || guesses[i] > hatness[i]) {
            return Err(malformed(format!(
                "clique entry {i} has h = {}, g = {}",
                hatness[i], guesses[i]
            )));
        }
        let big: Vec<BigUint> = hatness.iter().map(|&h| BigUint::from(h)).collect();
        let modulus = lcm_list(&big).to_u64().ok_or(StrategyError::Overflow)?;
        let steps: Vec<u64> = hatness.iter().map(|&h| modulus / h).collect();
        let mut starts = Vec::with_capacity(k);
        let mut acc: u128 = 0;
        for i in 0..k {
            starts.push(u64::try_from(acc).map_err(|_| StrategyError::Overflow)?);
            acc += steps[i] as u128 * guesses[i] as u128;
        }
        Ok(Self {
            vertices,
            hatness,
            guesses,
            modulus,
            steps,
            starts,
        })
    }

    pub fn vertices(&self) -> &[Slot] {
        &self.vertices
    }

    pub fn hatness(&self) -> &[u64] {
        &self.hatness
    }

    pub fn guesses(&self) -> &[u64] {
        &self.guesses
    }

    /// `ℓ`, the least common multiple of the hatness values.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `d_i = ℓ / h_i`.
    pub fn steps(&self) -> &[u64] {
        &self.steps
    }

    /// `b_i`, the start of the `i`-th interval.
    pub fn starts(&self) -> &[u64] {
        &self.starts
    }

    /// Total interval length `Σ d_i g_i`; the leaf wins iff this is `>= ℓ`.
    pub fn coverage(&self) -> u128 {
        self.steps
            .iter()
            .zip(&self.guesses)
            .map(|(&d, &g)| d as u128 * g as u128)
            .sum()
    }

    pub fn is_winning(&self) -> bool {
        self.coverage() >= self.modulus as u128
    }
}

/// Clique join of a left strategy on `G1` and a right strategy on `G2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinNode {
    /// Clique of `G1` that replaces the pivot.
    pub separator: Vec<Slot>,
    /// Hatness and guess count of the pivot in the right game.
    pub pivot_hatness: u64,
    pub pivot_guesses: u64,
    pub left: Box<Strategy>,
    /// Strategy on `G2`; the pivot is [`Slot::Pivot`].
    pub right: Box<Strategy>,
}

/// Explicit strategy for the path `u - v - w` with uniform `(h, g)`,
/// valid when `g² - 3gh + h² < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P3Leaf {
    pub end_u: Slot,
    pub center: Slot,
    pub end_w: Slot,
    pub hatness: u64,
    pub guesses: u64,
}

/// Every hatness and guess count multiplied by `factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleNode {
    pub factor: u64,
    pub inner: Box<Strategy>,
}

/// Raises guess counts; extra guesses are the smallest unguessed colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadNode {
    /// Target guess counts for the inner strategy's vertices in ascending
    /// slot order (vertices by id, then the pivot).
    pub guesses: Vec<u64>,
    pub inner: Box<Strategy>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    Clique(CliqueLeaf),
    Join(JoinNode),
    P3(P3Leaf),
    Scale(ScaleNode),
    Pad(PadNode),
}

/// Per-slot `(h, g)` of the vertices a strategy plays on.
pub type Cover = BTreeMap<Slot, (u64, u64)>;

impl Strategy {
    pub fn join(
        left: Strategy,
        right: Strategy,
        separator: Vec<Slot>,
    ) -> Result<Strategy, StrategyError> {
        let cover = right.cover()?;
        let &(pivot_hatness, pivot_guesses) = cover
            .get(&Slot::Pivot)
            .ok_or_else(|| malformed("right strategy does not contain the pivot"))?;
        let s = Strategy::Join(JoinNode {
            separator,
            pivot_hatness,
            pivot_guesses,
            left: Box::new(left),
            right: Box::new(right),
        });
        s.cover()?;
        Ok(s)
    }

    /// The `(h, g)` this strategy is valid for, per slot it covers, computed
    /// bottom-up with every composition rule checked.
    pub fn cover(&self) -> Result<Cover, StrategyError> {
        match self {
            Strategy::Clique(c) => {
                let mut out = Cover::new();
                for (i, &s) in c.vertices.iter().enumerate() {
                    if out.insert(s, (c.hatness[i], c.guesses[i])).is_some() {
                        return Err(malformed(format!("clique repeats {s:?}")));
                    }
                }
                Ok(out)
            }
            Strategy::P3(p) => {
                if p.guesses == 0 || p.guesses > p.hatness {
                    return Err(malformed("path leaf needs 1 <= g <= h"));
                }
                let mut out = Cover::new();
                for s in [p.end_u, p.center, p.end_w] {
                    if out.insert(s, (p.hatness, p.guesses)).is_some() {
                        return Err(malformed("path leaf repeats a vertex"));
                    }
                }
                Ok(out)
            }
            Strategy::Scale(sc) => {
                if sc.factor == 0 {
                    return Err(malformed("scale factor must be positive"));
                }
                sc.inner
                    .cover()?
                    .into_iter()
                    .map(|(s, (h, g))| {
                        let h = h.checked_mul(sc.factor).ok_or(StrategyError::Overflow)?;
                        Ok((s, (h, g * sc.factor)))
                    })
                    .collect()
            }
            Strategy::Pad(p) => {
                let inner = p.inner.cover()?;
                if inner.len() != p.guesses.len() {
                    return Err(malformed(format!(
                        "pad lists {} counts for {} vertices",
                        p.guesses.len(),
                        inner.len()
                    )));
                }
                inner
                    .into_iter()
                    .zip(&p.guesses)
                    .map(|((s, (h, g)), &target)| {
                        if target < g || target > h {
                            Err(malformed(format!(
                                "pad target {target} outside [{g}, {h}] for {s:?}"
                            )))
                        } else {
                            Ok((s, (h, target)))
                        }
                    })
                    .collect()
            }
            Strategy::Join(j) => {
                let left = j.left.cover()?;
                let right = j.right.cover()?;
                match right.get(&Slot::Pivot) {
                    None => return Err(malformed("right block lacks the pivot")),
                    Some(&(h, g)) if (h, g) != (j.pivot_hatness, j.pivot_guesses) => {
                        return Err(StrategyError::InconsistentComposition(format!(
                            "pivot declared ({}, {}) but right game has ({h}, {g})",
                            j.pivot_hatness, j.pivot_guesses
                        )))
                    }
                    Some(_) => {}
                }
                let mut out = Cover::new();
                for (i, s) in j.separator.iter().enumerate() {
                    if j.separator[..i].contains(s) {
                        return Err(malformed(format!("separator repeats {s:?}")));
                    }
                    let (h1, g1) = left.get(s).copied().unwrap_or((1, 0));
                    let h = h1
                        .checked_mul(j.pivot_hatness)
                        .ok_or(StrategyError::Overflow)?;
                    out.insert(*s, (h, g1 * j.pivot_guesses));
                }
                for (s, hg) in left {
                    out.entry(s).or_insert(hg);
                }
                for (s, hg) in right {
                    if s == Slot::Pivot {
                        continue;
                    }
                    if out.insert(s, hg).is_some() {
                        return Err(StrategyError::InconsistentComposition(format!(
                            "{s:?} appears on both sides of a join"
                        )));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Renames vertices through `map`. Pivot tokens are left alone. A vertex
    /// mapped to [`Slot::Pivot`] inside a nested right block would be shadowed
    /// by that block's own pivot and is rejected.
    pub fn relabel(&self, map: &dyn Fn(usize) -> Slot) -> Result<Strategy, StrategyError> {
        self.relabel_inner(map, false)
    }

    fn relabel_inner(
        &self,
        map: &dyn Fn(usize) -> Slot,
        shadowed: bool,
    ) -> Result<Strategy, StrategyError> {
        let m = |s: Slot| -> Result<Slot, StrategyError> {
            match s {
                Slot::Pivot => Ok(Slot::Pivot),
                Slot::Vertex(v) => {
                    let t = map(v);
                    if shadowed && t == Slot::Pivot {
                        Err(malformed(format!(
                            "vertex {v} would become a pivot inside a nested right block"
                        )))
                    } else {
                        Ok(t)
                    }
                }
            }
        };
        Ok(match self {
            Strategy::Clique(c) => Strategy::Clique(CliqueLeaf::new(
                c.vertices.iter().map(|&s| m(s)).collect::<Result<_, _>>()?,
                c.hatness.clone(),
                c.guesses.clone(),
            )?),
            Strategy::P3(p) => Strategy::P3(P3Leaf {
                end_u: m(p.end_u)?,
                center: m(p.center)?,
                end_w: m(p.end_w)?,
                hatness: p.hatness,
                guesses: p.guesses,
            }),
            Strategy::Scale(s) => Strategy::Scale(ScaleNode {
                factor: s.factor,
                inner: Box::new(s.inner.relabel_inner(map, shadowed)?),
            }),
            Strategy::Pad(p) => {
                // Pad counts follow slot order, which a relabel may permute.
                let old: Vec<Slot> = p.inner.cover()?.into_keys().collect();
                let inner = p.inner.relabel_inner(map, shadowed)?;
                let mut pairs: Vec<(Slot, u64)> = old
                    .iter()
                    .zip(&p.guesses)
                    .map(|(&s, &g)| Ok((m(s)?, g)))
                    .collect::<Result<_, StrategyError>>()?;
                pairs.sort();
                Strategy::Pad(PadNode {
                    guesses: pairs.into_iter().map(|(_, g)| g).collect(),
                    inner: Box::new(inner),
                })
            }
            Strategy::Join(j) => Strategy::Join(JoinNode {
                separator: j
                    .separator
                    .iter()
                    .map(|&s| m(s))
                    .collect::<Result<_, _>>()?,
                pivot_hatness: j.pivot_hatness,
                pivot_guesses: j.pivot_guesses,
                left: Box::new(j.left.relabel_inner(map, shadowed)?),
                right: Box::new(j.right.relabel_inner(map, true)?),
            }),
        })
    }
}

/// The game a strategy is valid for on `graph`: vertices outside every leaf
/// abstain with `h = 1, g = 0`.
pub fn game_of(s: &Strategy, graph: &Graph) -> Result<GameSpec, StrategyError> {
    let n = graph.vertex_count();
    let mut hatness = vec![1; n];
    let mut guesses = vec![0; n];
    for (slot, (h, g)) in s.cover()? {
        match slot {
            Slot::Vertex(v) if v < n => {
                hatness[v] = h;
                guesses[v] = g;
            }
            Slot::Vertex(v) => {
                return Err(malformed(format!(
                    "vertex {v} outside a graph on {n} vertices"
                )))
            }
            Slot::Pivot => return Err(malformed("pivot token outside a join")),
        }
    }
    GameSpec::new(graph.clone(), hatness, guesses)
}

#[cfg(test)]
mod tests;
