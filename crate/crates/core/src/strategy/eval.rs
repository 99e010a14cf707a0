//! Evaluation of strategies to guess sets.
//!
//! A strategy is compiled once into an arena with the cover of every node
//! cached. Evaluation threads a [`ColorSource`] down the tree; join and scale
//! nodes wrap it in views that decode pair colors and synthesize the pivot.

use super::{malformed, Cover, GameSpec, Slot, Strategy, StrategyError};
use crate::graph::Graph;

/// Colors visible to the bear being evaluated.
pub trait ColorSource {
    fn color(&self, s: Slot) -> Result<u64, StrategyError>;
}

/// Arrangement seen by the bear on `target`: only its neighbors are readable.
pub struct FullView<'a> {
    pub graph: &'a Graph,
    pub colors: &'a [u64],
    pub target: usize,
}

impl ColorSource for FullView<'_> {
    fn color(&self, s: Slot) -> Result<u64, StrategyError> {
        match s {
            Slot::Vertex(u) if self.graph.has_edge(self.target, u) => Ok(self.colors[u]),
            Slot::Vertex(u) => Err(StrategyError::MissingNeighborColor {
                vertex: self.target,
                neighbor: u,
            }),
            Slot::Pivot => Err(malformed("pivot read outside a join")),
        }
    }
}

struct VisibleView<'a> {
    visible: &'a [Option<u64>],
    graph: &'a Graph,
    target: usize,
}

impl ColorSource for VisibleView<'_> {
    fn color(&self, s: Slot) -> Result<u64, StrategyError> {
        let missing = |u| StrategyError::MissingNeighborColor {
            vertex: self.target,
            neighbor: u,
        };
        match s {
            Slot::Vertex(u) if self.graph.has_edge(self.target, u) => self
                .visible
                .get(u)
                .copied()
                .flatten()
                .ok_or_else(|| missing(u)),
            Slot::Vertex(u) => Err(missing(u)),
            Slot::Pivot => Err(malformed("pivot read outside a join")),
        }
    }
}

/// Left side of a join: separator colors contribute their high component.
struct LeftView<'a> {
    parent: &'a dyn ColorSource,
    separator: &'a [Slot],
    modulus: u64,
}

impl ColorSource for LeftView<'_> {
    fn color(&self, s: Slot) -> Result<u64, StrategyError> {
        let c = self.parent.color(s)?;
        Ok(if self.separator.contains(&s) {
            c / self.modulus
        } else {
            c
        })
    }
}

/// Right side of a join: the pivot's color is the sum of the low components
/// on the separator.
struct RightView<'a> {
    parent: &'a dyn ColorSource,
    separator: &'a [Slot],
    modulus: u64,
}

impl ColorSource for RightView<'_> {
    fn color(&self, s: Slot) -> Result<u64, StrategyError> {
        match s {
            Slot::Pivot => {
                let mut acc = 0u64;
                for &u in self.separator {
                    acc = (acc + self.parent.color(u)? % self.modulus) % self.modulus;
                }
                Ok(acc)
            }
            s => self.parent.color(s),
        }
    }
}

/// Inner side of a scale node: colors reduced modulo the inner hatness.
struct ScaleView<'a> {
    parent: &'a dyn ColorSource,
    cover: &'a Cover,
}

impl ColorSource for ScaleView<'_> {
    fn color(&self, s: Slot) -> Result<u64, StrategyError> {
        let &(h, _) = self
            .cover
            .get(&s)
            .ok_or_else(|| malformed(format!("scaled strategy reads uncovered {s:?}")))?;
        Ok(self.parent.color(s)? % h)
    }
}

enum Kind {
    Clique(super::CliqueLeaf),
    P3 {
        u: Slot,
        v: Slot,
        w: Slot,
        h: u64,
        g: u64,
    },
    Scale {
        inner: usize,
    },
    Pad {
        inner: usize,
    },
    Join {
        separator: Vec<Slot>,
        modulus: u64,
        left: usize,
        right: usize,
    },
}

struct Node {
    kind: Kind,
    cover: Cover,
}

/// A strategy prepared for repeated evaluation.
pub struct CompiledStrategy {
    nodes: Vec<Node>,
    root: usize,
}

/// `⌊t·h/g⌉` with ties rounded up.
fn spread(t: u64, h: u64, g: u64) -> u64 {
    ((2 * t as u128 * h as u128 + g as u128) / (2 * g as u128)) as u64
}

/// Largest `h·g` for which path leaves are checked for all color pairs at
/// compile time. Larger leaves are checked on every full evaluation.
const P3_PRECHECK_LIMIT: u128 = 1 << 22;

fn p3_center_bounds(h: u64, g: u64, delta: u64) -> Result<(), StrategyError> {
    // With c_u = 0 and c_w = delta; both sets are translation invariant.
    let mut hit = vec![false; h as usize];
    for t in 0..g {
        hit[(t % h) as usize] = true;
    }
    let mut both = 0u64;
    for t in 0..g {
        let x = ((delta + spread(t, h, g)) % h) as usize;
        if hit[x] {
            both += 1;
        }
        hit[x] = true;
    }
    let free = hit.iter().filter(|&&b| !b).count() as u64;
    if both + h > 3 * g || free > g {
        return Err(StrategyError::P3BoundViolated {
            hatness: h,
            guesses: g,
        });
    }
    Ok(())
}

impl CompiledStrategy {
    pub fn compile(s: &Strategy) -> Result<Self, StrategyError> {
        let mut nodes = Vec::new();
        let root = Self::build(s, &mut nodes)?;
        if nodes[root].cover.contains_key(&Slot::Pivot) {
            return Err(malformed("pivot token outside a join"));
        }
        Ok(Self { nodes, root })
    }

    fn build(s: &Strategy, nodes: &mut Vec<Node>) -> Result<usize, StrategyError> {
        let kind = match s {
            Strategy::Clique(c) => Kind::Clique(c.clone()),
            Strategy::P3(p) => {
                if (p.hatness as u128) * (p.guesses as u128) <= P3_PRECHECK_LIMIT {
                    for delta in 0..p.hatness {
                        p3_center_bounds(p.hatness, p.guesses, delta)?;
                    }
                }
                Kind::P3 {
                    u: p.end_u,
                    v: p.center,
                    w: p.end_w,
                    h: p.hatness,
                    g: p.guesses,
                }
            }
            Strategy::Scale(sc) => Kind::Scale {
                inner: Self::build(&sc.inner, nodes)?,
            },
            Strategy::Pad(p) => Kind::Pad {
                inner: Self::build(&p.inner, nodes)?,
            },
            Strategy::Join(j) => Kind::Join {
                separator: j.separator.clone(),
                modulus: j.pivot_hatness,
                left: Self::build(&j.left, nodes)?,
                right: Self::build(&j.right, nodes)?,
            },
        };
        // Covers are recomputed per node; strategies are small next to the
        // arrangement spaces they are evaluated on.
        let cover = s.cover()?;
        nodes.push(Node { kind, cover });
        Ok(nodes.len() - 1)
    }

    /// `(h, g)` per covered slot of the whole strategy.
    pub fn cover(&self) -> &Cover {
        &self.nodes[self.root].cover
    }

    /// Full guess set of the bear on `target`, sorted ascending.
    pub fn guesses(&self, target: Slot, src: &dyn ColorSource) -> Result<Vec<u64>, StrategyError> {
        let mut out = Vec::new();
        self.guesses_at(self.root, target, src, &mut out)?;
        Ok(out)
    }

    /// Whether `color` is among the guesses of the bear on `target`.
    pub fn contains(
        &self,
        target: Slot,
        color: u64,
        src: &dyn ColorSource,
    ) -> Result<bool, StrategyError> {
        self.contains_at(self.root, target, color, src)
    }

    /// Whether the bear on `v` guesses its own hat in `colors`.
    pub fn is_correct(
        &self,
        graph: &Graph,
        colors: &[u64],
        v: usize,
    ) -> Result<bool, StrategyError> {
        let view = FullView {
            graph,
            colors,
            target: v,
        };
        self.contains(Slot::Vertex(v), colors[v], &view)
    }

    fn guesses_at(
        &self,
        node: usize,
        target: Slot,
        src: &dyn ColorSource,
        out: &mut Vec<u64>,
    ) -> Result<(), StrategyError> {
        let n = &self.nodes[node];
        let Some(&(h, g)) = n.cover.get(&target) else {
            return Ok(());
        };
        match &n.kind {
            Kind::Clique(c) => {
                let i = c.vertices().iter().position(|&s| s == target).unwrap();
                let l = c.modulus() as i128;
                let d = c.steps()[i] as i128;
                let b = c.starts()[i] as i128;
                let s = clique_offset(c, i, src)? as i128;
                let (q, rho) = (s / d, s % d);
                let lo = div_ceil(b - rho, d).max(0);
                let hi = div_ceil(b - rho + d * g as i128, d).min(h as i128);
                debug_assert!(l == d * h as i128);
                for m in lo..hi {
                    out.push((m - q).rem_euclid(h as i128) as u64);
                }
                out.sort_unstable();
            }
            Kind::P3 { u, v, w, h, g } => {
                let (h, g) = (*h, *g);
                if target == *u {
                    let cv = src.color(*v)?;
                    out.extend((0..g).map(|t| (cv + h - t % h) % h));
                } else if target == *w {
                    let cv = src.color(*v)?;
                    out.extend((0..g).map(|t| (cv + h - spread(t, h, g) % h) % h));
                } else {
                    let cu = src.color(*u)?;
                    let cw = src.color(*w)?;
                    p3_center_bounds(h, g, (cw + h - cu % h) % h)?;
                    let mut hit = vec![false; h as usize];
                    for t in 0..g {
                        hit[((cu + t) % h) as usize] = true;
                        hit[((cw + spread(t, h, g)) % h) as usize] = true;
                    }
                    out.extend((0..h).filter(|&x| !hit[x as usize]));
                }
                out.sort_unstable();
                out.dedup();
            }
            Kind::Scale { inner } => {
                let cover = &self.nodes[*inner].cover;
                let hi = cover[&target].0;
                let view = ScaleView { parent: src, cover };
                let mut base = Vec::new();
                self.guesses_at(*inner, target, &view, &mut base)?;
                for i in 0..h / hi {
                    out.extend(base.iter().map(|c| i * hi + c));
                }
            }
            Kind::Pad { inner } => {
                let mut base = Vec::new();
                self.guesses_at(*inner, target, src, &mut base)?;
                let mut next = 0u64;
                let mut k = 0usize;
                out.extend_from_slice(&base);
                while (out.len() as u64) < g {
                    if k < base.len() && base[k] == next {
                        k += 1;
                    } else {
                        out.push(next);
                    }
                    next += 1;
                }
                out.sort_unstable();
            }
            Kind::Join {
                separator,
                modulus,
                left,
                right,
            } => {
                let lv = LeftView {
                    parent: src,
                    separator,
                    modulus: *modulus,
                };
                let rv = RightView {
                    parent: src,
                    separator,
                    modulus: *modulus,
                };
                if separator.contains(&target) {
                    let mut a = Vec::new();
                    self.guesses_at(*left, target, &lv, &mut a)?;
                    if a.is_empty() {
                        return Ok(());
                    }
                    let mut b = Vec::new();
                    self.guesses_at(*right, Slot::Pivot, &rv, &mut b)?;
                    let others = separator_sum(separator, target, src, *modulus)?;
                    let mut low: Vec<u64> =
                        b.iter().map(|c| (c + modulus - others) % modulus).collect();
                    low.sort_unstable();
                    for x in &a {
                        out.extend(low.iter().map(|y| x * modulus + y));
                    }
                } else if self.nodes[*left].cover.contains_key(&target) {
                    self.guesses_at(*left, target, &lv, out)?;
                } else if target != Slot::Pivot {
                    self.guesses_at(*right, target, &rv, out)?;
                }
            }
        }
        Ok(())
    }

    fn contains_at(
        &self,
        node: usize,
        target: Slot,
        color: u64,
        src: &dyn ColorSource,
    ) -> Result<bool, StrategyError> {
        let n = &self.nodes[node];
        let Some(&(h, g)) = n.cover.get(&target) else {
            return Ok(false);
        };
        if color >= h || g == 0 {
            return Ok(false);
        }
        match &n.kind {
            Kind::Clique(c) => {
                let i = c.vertices().iter().position(|&s| s == target).unwrap();
                let l = c.modulus() as u128;
                let d = c.steps()[i] as u128;
                let b = c.starts()[i] as u128;
                let s = clique_offset(c, i, src)? as u128;
                let x = (s + color as u128 * d) % l;
                Ok(b <= x && x < b + d * g as u128)
            }
            Kind::P3 { u, v, w, h, g } => {
                let (h, g) = (*h, *g);
                if target == *u {
                    let cv = src.color(*v)?;
                    Ok((cv + h - color) % h < g)
                } else if target == *w {
                    let cv = src.color(*v)?;
                    Ok(p3_w_hit(h, g, (cv + h - color) % h))
                } else {
                    let cu = src.color(*u)?;
                    let cw = src.color(*w)?;
                    Ok((color + h - cu % h) % h >= g && !p3_w_hit(h, g, (color + h - cw % h) % h))
                }
            }
            Kind::Scale { inner } => {
                let cover = &self.nodes[*inner].cover;
                let hi = cover[&target].0;
                let view = ScaleView { parent: src, cover };
                self.contains_at(*inner, target, color % hi, &view)
            }
            Kind::Pad { .. } => {
                let mut all = Vec::new();
                self.guesses_at(node, target, src, &mut all)?;
                Ok(all.binary_search(&color).is_ok())
            }
            Kind::Join {
                separator,
                modulus,
                left,
                right,
            } => {
                let lv = LeftView {
                    parent: src,
                    separator,
                    modulus: *modulus,
                };
                let rv = RightView {
                    parent: src,
                    separator,
                    modulus: *modulus,
                };
                if separator.contains(&target) {
                    let (hi, lo) = (color / modulus, color % modulus);
                    if !self.contains_at(*left, target, hi, &lv)? {
                        return Ok(false);
                    }
                    let others = separator_sum(separator, target, src, *modulus)?;
                    self.contains_at(*right, Slot::Pivot, (lo + others) % modulus, &rv)
                } else if self.nodes[*left].cover.contains_key(&target) {
                    self.contains_at(*left, target, color, &lv)
                } else if target != Slot::Pivot {
                    self.contains_at(*right, target, color, &rv)
                } else {
                    Ok(false)
                }
            }
        }
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// `s_i = Σ_{j≠i} c_j d_j mod ℓ`.
fn clique_offset(
    c: &super::CliqueLeaf,
    i: usize,
    src: &dyn ColorSource,
) -> Result<u64, StrategyError> {
    let l = c.modulus() as u128;
    let mut s: u128 = 0;
    for (j, &slot) in c.vertices().iter().enumerate() {
        if j != i {
            let cj = src.color(slot)? as u128 % c.hatness()[j] as u128;
            s = (s + cj * c.steps()[j] as u128) % l;
        }
    }
    Ok(s as u64)
}

/// Sum of the low components on the separator, without `target`.
fn separator_sum(
    separator: &[Slot],
    target: Slot,
    src: &dyn ColorSource,
    modulus: u64,
) -> Result<u64, StrategyError> {
    let mut acc = 0u64;
    for &u in separator {
        if u != target {
            acc = (acc + src.color(u)? % modulus) % modulus;
        }
    }
    Ok(acc)
}

/// Whether `δ = ⌊t·h/g⌉ mod h` for some `t < g`.
fn p3_w_hit(h: u64, g: u64, delta: u64) -> bool {
    let t0 = (delta as u128 * g as u128 / h as u128) as u64;
    (t0.saturating_sub(1)..=(t0 + 1).min(g - 1)).any(|t| spread(t, h, g) % h == delta)
}

/// Guess set of the bear on `v` given the colors it sees.
///
/// `visible[u]` must be set for every neighbor `u` of `v`; other entries are
/// ignored. Returns [`StrategyError::MalformedStrategy`] when no leaf covers
/// `v`.
pub fn guesses(
    s: &Strategy,
    spec: &GameSpec,
    v: usize,
    visible: &[Option<u64>],
) -> Result<Vec<u64>, StrategyError> {
    let compiled = CompiledStrategy::compile(s)?;
    if !compiled.cover().contains_key(&Slot::Vertex(v)) {
        return Err(malformed(format!("vertex {v} is not covered by any leaf")));
    }
    let graph = spec.graph();
    if let Some(&u) = graph
        .neighbors(v)
        .iter()
        .find(|&&u| visible.get(u).copied().flatten().is_none())
    {
        return Err(StrategyError::MissingNeighborColor {
            vertex: v,
            neighbor: u,
        });
    }
    let view = VisibleView {
        visible,
        graph,
        target: v,
    };
    compiled.guesses(Slot::Vertex(v), &view)
}
