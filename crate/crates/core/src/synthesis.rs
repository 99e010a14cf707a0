//! Strategy constructors and the chordal region decision.
//!
//! The chordal recursion repeatedly peels a leaf clique `C` off a clique tree.
//! If the ratios on `C` already sum to at least one, the bears on `C` win on
//! their own. Otherwise the exclusive part `R` of the leaf is removed and the
//! separator ratios are divided by `α = 1 - Σ_R r`. Strategies are rebuilt by
//! folding the recorded steps backwards with clique joins.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{clique_tree, induced_subgraph, Graph, GraphError};
use crate::numerics::Rational;
use crate::strategy::{
    game_of, CliqueLeaf, P3Leaf, PadNode, ScaleNode, Slot, Strategy, StrategyError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("graph is not chordal")]
    NotChordal,
    #[error("ratio of vertex {0} is outside [0, 1]")]
    RatioOutOfRange(usize),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("guess ratios sum to less than one")]
    RatioSumBelowOne,
    #[error("separator is not a clique of the left graph")]
    SeparatorNotClique,
    #[error("pivot {0} is not a vertex of the right graph")]
    PivotNotInRightGraph(usize),
    #[error("g² - 3gh + h² < 0 does not hold for h = {h}, g = {g}")]
    InequalityNotSatisfied { h: u64, g: u64 },
    #[error("epsilon must lie strictly between 0 and 1/4")]
    EpsilonOutOfRange,
    #[error("too many steps for this epsilon")]
    TooManySteps,
    #[error("target ratio is not dominated by the base game")]
    RatioNotDominated,
    #[error("base strategy is not uniform")]
    NonUniformBase,
    #[error("hatness does not fit in 64 bits")]
    Overflow,
    #[error(transparent)]
    Graph(GraphError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

impl From<GraphError> for SynthesisError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotChordal => SynthesisError::NotChordal,
            e => SynthesisError::Graph(e),
        }
    }
}

/// A graph together with a strategy on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub graph: Graph,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthesisResult {
    Winning {
        hatness: Vec<u64>,
        guesses: Vec<u64>,
        strategy: Strategy,
    },
    InRegion,
}

/// Lowest-terms `(h, g)` with `g / h = r`; ratios above one are capped at
/// `(1, 1)`.
pub fn minimal_pair(r: &Rational) -> Result<(u64, u64), SynthesisError> {
    if r >= &Rational::one() {
        return Ok((1, 1));
    }
    let h = r.denom().to_u64().ok_or(SynthesisError::Overflow)?;
    let g = r.numer().to_u64().ok_or(SynthesisError::Overflow)?;
    Ok((h, g))
}

fn ratio_sum(h: &[u64], g: &[u64]) -> Rational {
    h.iter()
        .zip(g)
        .map(|(&h, &g)| Rational::new(g.into(), h.into()))
        .sum()
}

/// Modular interval strategy on `K_k` with vertices `0..k`.
pub fn clique_strategy(h: &[u64], g: &[u64]) -> Result<Strategy, SynthesisError> {
    clique_strategy_on((0..h.len()).map(Slot::Vertex).collect(), h, g)
}

/// [`clique_strategy`] on explicit vertex slots.
pub fn clique_strategy_on(
    vertices: Vec<Slot>,
    h: &[u64],
    g: &[u64],
) -> Result<Strategy, SynthesisError> {
    if h.len() != g.len() {
        return Err(SynthesisError::LengthMismatch {
            expected: h.len(),
            got: g.len(),
        });
    }
    if h.contains(&0) || h.iter().zip(g).any(|(h, g)| g > h) {
        return Err(StrategyError::InvalidGame("need 0 <= g <= h, h >= 1".into()).into());
    }
    if ratio_sum(h, g) < Rational::one() {
        return Err(SynthesisError::RatioSumBelowOne);
    }
    Ok(Strategy::Clique(CliqueLeaf::new(
        vertices,
        h.to_vec(),
        g.to_vec(),
    )?))
}

/// Clique join of two games: `separator` (a clique of the left graph)
/// replaces `pivot` of the right graph.
///
/// Left vertices keep their ids; the right vertices other than the pivot are
/// appended in increasing order.
pub fn clique_join(
    left: &Game,
    right: &Game,
    separator: &[usize],
    pivot: usize,
) -> Result<Game, SynthesisError> {
    let n1 = left.graph.vertex_count();
    let n2 = right.graph.vertex_count();
    if pivot >= n2 {
        return Err(SynthesisError::PivotNotInRightGraph(pivot));
    }
    if separator.iter().any(|&s| s >= n1) || !left.graph.is_clique(separator) {
        return Err(SynthesisError::SeparatorNotClique);
    }
    let id = |v: usize| -> usize {
        if v < pivot {
            n1 + v
        } else {
            n1 + v - 1
        }
    };
    let mut graph = Graph::empty(n1 + n2 - 1);
    for (u, v) in left.graph.edges() {
        graph.add_edge(u, v)?;
    }
    for (u, v) in right.graph.edges() {
        if u != pivot && v != pivot {
            graph.add_edge(id(u), id(v))?;
        }
    }
    for &s in separator {
        for &x in right.graph.neighbors(pivot) {
            graph.add_edge(s, id(x))?;
        }
    }
    let relabeled = right.strategy.relabel(&|v| {
        if v == pivot {
            Slot::Pivot
        } else {
            Slot::Vertex(id(v))
        }
    })?;
    let strategy = Strategy::join(
        left.strategy.clone(),
        relabeled,
        separator.iter().map(|&s| Slot::Vertex(s)).collect(),
    )?;
    Ok(Game { graph, strategy })
}

struct Step {
    exclusive: Vec<(usize, Rational)>,
    alpha: Rational,
    separator: Vec<usize>,
}

enum Outcome {
    /// Ratios on the clique that wins outright.
    Win(Vec<(usize, Rational)>),
    InRegion,
}

fn check_ratios(g: &Graph, r: &[Rational]) -> Result<(), SynthesisError> {
    if r.len() != g.vertex_count() {
        return Err(SynthesisError::LengthMismatch {
            expected: g.vertex_count(),
            got: r.len(),
        });
    }
    if let Some(v) = r
        .iter()
        .position(|x| x.is_negative() || x > &Rational::one())
    {
        return Err(SynthesisError::RatioOutOfRange(v));
    }
    Ok(())
}

/// Runs the leaf elimination, returning the steps taken and how it ended.
fn eliminate(g: &Graph, r: &[Rational]) -> Result<(Vec<Step>, Outcome), SynthesisError> {
    check_ratios(g, r)?;
    let tree = clique_tree(g)?;
    let k = tree.nodes.len();
    let mut r = r.to_vec();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(a, b) in &tree.tree_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut alive = vec![true; k];
    let mut steps = Vec::new();
    let with_ratios = |c: &[usize], r: &[Rational]| -> Vec<(usize, Rational)> {
        c.iter().map(|&v| (v, r[v].clone())).collect()
    };
    for remaining in (1..=k).rev() {
        if remaining == 1 {
            let last = (0..k).find(|&i| alive[i]).unwrap();
            let c = &tree.nodes[last];
            let sum: Rational = c.iter().map(|&v| &r[v]).sum();
            return Ok((
                steps,
                if sum >= Rational::one() {
                    Outcome::Win(with_ratios(c, &r))
                } else {
                    Outcome::InRegion
                },
            ));
        }
        let leaf = (0..k)
            .find(|&i| alive[i] && adj[i].iter().filter(|&&j| alive[j]).count() == 1)
            .expect("a tree with two or more nodes has a leaf");
        let parent = *adj[leaf].iter().find(|&&j| alive[j]).unwrap();
        let c = &tree.nodes[leaf];
        let sum: Rational = c.iter().map(|&v| &r[v]).sum();
        if sum >= Rational::one() {
            return Ok((steps, Outcome::Win(with_ratios(c, &r))));
        }
        let p = &tree.nodes[parent];
        let (separator, exclusive): (Vec<usize>, Vec<usize>) =
            c.iter().partition(|v| p.binary_search(v).is_ok());
        let alpha = Rational::one() - exclusive.iter().map(|&v| &r[v]).sum::<Rational>();
        for &v in &separator {
            r[v] = &r[v] / &alpha;
        }
        steps.push(Step {
            exclusive: exclusive.iter().map(|&v| (v, r[v].clone())).collect(),
            alpha,
            separator,
        });
        alive[leaf] = false;
    }
    Ok((steps, Outcome::InRegion))
}

/// True iff `r` lies outside the region, i.e. some game with ratios at most
/// `r` is winning.
pub fn decide_region(g: &Graph, r: &[Rational]) -> Result<bool, SynthesisError> {
    Ok(matches!(eliminate(g, r)?.1, Outcome::Win(_)))
}

/// Winning strategy with `g_v / h_v <= r_v` for every vertex, or `InRegion`.
pub fn chordal_synthesize(g: &Graph, r: &[Rational]) -> Result<SynthesisResult, SynthesisError> {
    let (steps, outcome) = eliminate(g, r)?;
    let Outcome::Win(base) = outcome else {
        return Ok(SynthesisResult::InRegion);
    };
    let pairs = base
        .iter()
        .map(|(_, r)| minimal_pair(r))
        .collect::<Result<Vec<_>, _>>()?;
    let (h, gs): (Vec<u64>, Vec<u64>) = pairs.into_iter().unzip();
    let mut strategy = clique_strategy_on(
        base.iter().map(|&(v, _)| Slot::Vertex(v)).collect(),
        &h,
        &gs,
    )?;
    for step in steps.iter().rev() {
        let cover = strategy.cover()?;
        if !step
            .separator
            .iter()
            .any(|&v| cover.contains_key(&Slot::Vertex(v)))
        {
            continue;
        }
        let mut slots: Vec<Slot> = step
            .exclusive
            .iter()
            .map(|&(v, _)| Slot::Vertex(v))
            .collect();
        slots.push(Slot::Pivot);
        let mut pairs = step
            .exclusive
            .iter()
            .map(|(_, r)| minimal_pair(r))
            .collect::<Result<Vec<_>, _>>()?;
        pairs.push(minimal_pair(&step.alpha)?);
        let (h, gs): (Vec<u64>, Vec<u64>) = pairs.into_iter().unzip();
        let right = clique_strategy_on(slots, &h, &gs)?;
        strategy = Strategy::join(
            strategy,
            right,
            step.separator.iter().map(|&v| Slot::Vertex(v)).collect(),
        )?;
    }
    let spec = game_of(&strategy, g)?;
    Ok(SynthesisResult::Winning {
        hatness: spec.hatness().to_vec(),
        guesses: spec.guesses().to_vec(),
        strategy,
    })
}

/// Exact `Z_G(w)` for a chordal graph by leaf elimination.
///
/// Removing the exclusive part `R` of a leaf gives
/// `Z_G(w) = α·Z_{G-R}(w')` with `α = 1 - Σ_R w` and separator weights divided
/// by `α`; when `α = 0` the identity `Z_G = Z_{G-R} - (Σ_R w)·Z_{G-C}` is
/// used instead.
pub fn chordal_z_eval(g: &Graph, w: &[Rational]) -> Result<Rational, SynthesisError> {
    if w.len() != g.vertex_count() {
        return Err(SynthesisError::LengthMismatch {
            expected: g.vertex_count(),
            got: w.len(),
        });
    }
    let mut weights = w.to_vec();
    let mut current = g.clone();
    let mut factor = Rational::one();
    loop {
        if current.vertex_count() == 0 {
            return Ok(factor);
        }
        let tree = clique_tree(&current)?;
        if tree.nodes.len() == 1 {
            let sum: Rational = weights.iter().sum();
            return Ok(factor * (Rational::one() - sum));
        }
        let leaf = (0..tree.nodes.len())
            .find(|&i| tree.neighbors_of(i).len() == 1)
            .unwrap();
        let parent = tree.neighbors_of(leaf)[0];
        let c = &tree.nodes[leaf];
        let p = &tree.nodes[parent];
        let (sep, excl): (Vec<usize>, Vec<usize>) =
            c.iter().partition(|v| p.binary_search(v).is_ok());
        let excl_sum: Rational = excl.iter().map(|&v| &weights[v]).sum();
        let alpha = Rational::one() - &excl_sum;
        if alpha.is_zero() {
            let (g1, w1) = restrict(&current, &weights, &excl)?;
            let (g2, w2) = restrict(&current, &weights, c)?;
            let z = chordal_z_eval(&g1, &w1)? - excl_sum * chordal_z_eval(&g2, &w2)?;
            return Ok(factor * z);
        }
        for &v in &sep {
            weights[v] = &weights[v] / &alpha;
        }
        let (g1, w1) = restrict(&current, &weights, &excl)?;
        factor *= alpha;
        current = g1;
        weights = w1;
    }
}

fn restrict(
    g: &Graph,
    w: &[Rational],
    drop: &[usize],
) -> Result<(Graph, Vec<Rational>), SynthesisError> {
    let keep: Vec<usize> = (0..g.vertex_count())
        .filter(|v| !drop.contains(v))
        .collect();
    if keep.is_empty() {
        return Ok((Graph::empty(0), Vec::new()));
    }
    let sub = induced_subgraph(g, &keep)?;
    let ws = sub.new_to_old.iter().map(|&v| w[v].clone()).collect();
    Ok((sub.graph, ws))
}

/// Explicit strategy on the path `0 - 1 - 2` with center 1.
pub fn p3_strategy(h: u64, g: u64) -> Result<Strategy, SynthesisError> {
    let (h2, g2) = (h as u128, g as u128);
    if g == 0 || g > h || g2 * g2 + h2 * h2 >= 3 * g2 * h2 {
        return Err(SynthesisError::InequalityNotSatisfied { h, g });
    }
    Ok(Strategy::P3(P3Leaf {
        end_u: Slot::Vertex(0),
        center: Slot::Vertex(1),
        end_w: Slot::Vertex(2),
        hatness: h,
        guesses: g,
    }))
}

/// `(F_{2i}, F_{2i-2})` with `F_0 = F_1 = 1`.
pub fn fibonacci_game(i: usize) -> (BigUint, BigUint) {
    assert!(i >= 1, "index starts at 1");
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    let mut f = vec![a.clone(), b.clone()];
    while f.len() <= 2 * i {
        let c = &a + &b;
        a = b;
        b = c.clone();
        f.push(c);
    }
    (f[2 * i].clone(), f[2 * i - 2].clone())
}

/// A path game built outward from a single edge: each step clique-joins a
/// two-vertex game with ratios `1/2 + jε` (pivot side) and `1/2 - jε` onto
/// both endpoints. `steps = None` uses `⌈1/(4ε)⌉`.
///
/// Vertices are numbered along the path.
pub fn path_game(epsilon: &Rational, steps: Option<usize>) -> Result<Game, SynthesisError> {
    let quarter = Rational::new(1.into(), 4.into());
    if !epsilon.is_positive() || epsilon >= &quarter {
        return Err(SynthesisError::EpsilonOutOfRange);
    }
    let k = match steps {
        Some(k) => k,
        None => (quarter / epsilon)
            .ceil()
            .to_integer()
            .to_usize()
            .ok_or(SynthesisError::Overflow)?,
    };
    let half = Rational::new(1.into(), 2.into());
    let edge = Game {
        graph: Graph::from_edges(2, &[(0, 1)])?,
        strategy: clique_strategy(&[2, 2], &[1, 1])?,
    };
    // Endpoints of the current path.
    let (mut a, mut b) = (0usize, 1usize);
    let mut game = edge;
    for j in 1..=k {
        let shift = epsilon * Rational::from_integer(j.into());
        if shift >= half {
            return Err(SynthesisError::TooManySteps);
        }
        let (hp, gp) = minimal_pair(&(&half + &shift))?;
        let (hn, gn) = minimal_pair(&(&half - &shift))?;
        let piece = Game {
            graph: Graph::from_edges(2, &[(0, 1)])?,
            strategy: clique_strategy(&[hp, hn], &[gp, gn])?,
        };
        for end in [&mut a, &mut b] {
            game = clique_join(&game, &piece, &[*end], 0)?;
            *end = game.graph.vertex_count() - 1;
        }
    }
    let spec = game_of(&game.strategy, &game.graph)?;
    spec.arrangement_count().ok_or(SynthesisError::Overflow)?;
    // Walk from one end to relabel along the path.
    let n = game.graph.vertex_count();
    let mut order = vec![a];
    let mut prev = usize::MAX;
    while order.len() < n {
        let cur = *order.last().unwrap();
        let next = *game
            .graph
            .neighbors(cur)
            .iter()
            .find(|&&x| x != prev)
            .unwrap();
        prev = cur;
        order.push(next);
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let strategy = game.strategy.relabel(&|v| Slot::Vertex(pos[v]))?;
    let graph = Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())?;
    Ok(Game { graph, strategy })
}

/// Strategy for the uniform game with `h'/g' = target` derived from a
/// uniform base `(h, g)` with `target <= h/g`: scale by `ℓ/h` with
/// `ℓ = lcm(h, p)`, then pad to `ℓq/p` guesses.
pub fn derive_ratio_game(
    base: &Strategy,
    target: &Rational,
) -> Result<(u64, u64, Strategy), SynthesisError> {
    let cover = base.cover()?;
    let mut values = cover.values();
    let &(h, g) = values.next().ok_or(SynthesisError::NonUniformBase)?;
    if values.any(|&hg| hg != (h, g)) {
        return Err(SynthesisError::NonUniformBase);
    }
    if target < &Rational::one() || g == 0 || target > &Rational::new(h.into(), g.into()) {
        return Err(SynthesisError::RatioNotDominated);
    }
    let p = target.numer().to_u64().ok_or(SynthesisError::Overflow)?;
    let q = target.denom().to_u64().ok_or(SynthesisError::Overflow)?;
    let l = h.lcm(&p);
    let new_g = (l / p).checked_mul(q).ok_or(SynthesisError::Overflow)?;
    let scaled = Strategy::Scale(ScaleNode {
        factor: l / h,
        inner: Box::new(base.clone()),
    });
    let strategy = Strategy::Pad(PadNode {
        guesses: vec![new_g; cover.len()],
        inner: Box::new(scaled),
    });
    strategy.cover()?;
    Ok((l, new_g, strategy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_clique, make_path, random_chordal};
    use crate::numerics::rat;
    use crate::polynomial::{region_oracle, z_eval, RegionQuery};
    use crate::strategy::CompiledStrategy;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive check that every arrangement has a correct bear.
    fn wins(game: &Game) -> bool {
        let spec = game_of(&game.strategy, &game.graph).unwrap();
        let c = CompiledStrategy::compile(&game.strategy).unwrap();
        let h = spec.hatness();
        let n = h.len();
        let mut colors = vec![0u64; n];
        loop {
            if !(0..n).any(|v| c.is_correct(&game.graph, &colors, v).unwrap()) {
                return false;
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                colors[i] += 1;
                if colors[i] < h[i] {
                    break;
                }
                colors[i] = 0;
            }
        }
    }

    fn uniform(n: usize, r: Rational) -> Vec<Rational> {
        vec![r; n]
    }

    #[test]
    fn clique_examples() {
        let s = clique_strategy(&[3, 3, 3], &[1, 1, 1]).unwrap();
        let Strategy::Clique(c) = &s else { panic!() };
        assert_eq!(c.modulus(), 3);
        assert_eq!(c.steps(), &[1, 1, 1]);
        assert_eq!(c.starts(), &[0, 1, 2]);
        let Strategy::Clique(c) = clique_strategy(&[2, 2], &[1, 1]).unwrap() else {
            panic!()
        };
        assert_eq!(c.modulus(), 2);
        assert_eq!(c.starts(), &[0, 1]);
        assert_eq!(
            clique_strategy(&[3, 3], &[1, 1]),
            Err(SynthesisError::RatioSumBelowOne)
        );
    }

    fn edge(h: [u64; 2], g: [u64; 2]) -> Game {
        Game {
            graph: make_clique(2).unwrap(),
            strategy: clique_strategy(&h, &g).unwrap(),
        }
    }

    #[test]
    fn join_examples() {
        let e = edge([2, 2], [1, 1]);
        let p3 = clique_join(&e, &e, &[1], 0).unwrap();
        assert_eq!(p3.graph, make_path(3).unwrap());
        let spec = game_of(&p3.strategy, &p3.graph).unwrap();
        assert_eq!(spec.hatness(), &[2, 4, 2]);
        assert_eq!(spec.guesses(), &[1, 1, 1]);
        assert!(wins(&p3));

        let p4 = clique_join(&p3, &e, &[2], 0).unwrap();
        assert_eq!(p4.graph, make_path(4).unwrap());
        let spec = game_of(&p4.strategy, &p4.graph).unwrap();
        assert_eq!(spec.hatness(), &[2, 4, 4, 2]);
        assert!(wins(&p4));

        assert_eq!(
            clique_join(&p3, &e, &[0, 2], 0),
            Err(SynthesisError::SeparatorNotClique)
        );
        assert_eq!(
            clique_join(&p3, &e, &[0], 2),
            Err(SynthesisError::PivotNotInRightGraph(2))
        );
    }

    #[test]
    fn join_connects_separator_to_pivot_neighbors() {
        let tri = Game {
            graph: make_clique(3).unwrap(),
            strategy: clique_strategy(&[3, 3, 3], &[1, 1, 1]).unwrap(),
        };
        let j = clique_join(&tri, &tri, &[0, 1], 1).unwrap();
        assert_eq!(j.graph.vertex_count(), 5);
        let mut edges = j.graph.edges();
        edges.sort();
        assert_eq!(
            edges,
            vec![
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (3, 4)
            ]
        );
        assert!(wins(&j));
    }

    #[test]
    fn decide_examples() {
        let p3 = make_path(3).unwrap();
        assert!(!decide_region(&p3, &uniform(3, rat(1, 3))).unwrap());
        assert!(decide_region(&p3, &uniform(3, rat(2, 5))).unwrap());
        for n in 1..7 {
            let k = make_clique(n).unwrap();
            assert!(decide_region(&k, &uniform(n, rat(1, n as i64))).unwrap());
        }
        let c4 = crate::graph::make_cycle(4).unwrap();
        assert_eq!(
            decide_region(&c4, &uniform(4, rat(1, 3))),
            Err(SynthesisError::NotChordal)
        );
        assert_eq!(
            decide_region(&p3, &[rat(1, 2), rat(3, 2), rat(0, 1)]),
            Err(SynthesisError::RatioOutOfRange(1))
        );
    }

    #[test]
    fn synth_examples() {
        let p3 = make_path(3).unwrap();
        let SynthesisResult::Winning {
            hatness,
            guesses,
            strategy,
        } = chordal_synthesize(&p3, &uniform(3, rat(2, 5))).unwrap()
        else {
            panic!()
        };
        assert_eq!(hatness, vec![5, 15, 5]);
        assert_eq!(guesses, vec![2, 6, 2]);
        let Strategy::Join(j) = &strategy else {
            panic!()
        };
        let Strategy::Clique(left) = j.left.as_ref() else {
            panic!()
        };
        let Strategy::Clique(right) = j.right.as_ref() else {
            panic!()
        };
        assert_eq!(left.hatness(), &[3, 5]);
        assert_eq!(left.guesses(), &[2, 2]);
        assert_eq!(right.hatness(), &[5, 5]);
        assert_eq!(right.guesses(), &[2, 3]);
        assert!(wins(&Game {
            graph: p3.clone(),
            strategy
        }));

        let k4 = make_clique(4).unwrap();
        let SynthesisResult::Winning {
            hatness,
            guesses,
            strategy,
        } = chordal_synthesize(&k4, &uniform(4, rat(1, 4))).unwrap()
        else {
            panic!()
        };
        assert_eq!(hatness, vec![4; 4]);
        assert_eq!(guesses, vec![1; 4]);
        assert!(matches!(strategy, Strategy::Clique(_)));

        assert_eq!(
            chordal_synthesize(&p3, &uniform(3, rat(1, 3))).unwrap(),
            SynthesisResult::InRegion
        );
    }

    #[test]
    fn early_win_leaves_the_rest_abstaining() {
        // Leaf {0, 1} already sums to one.
        let p3 = make_path(3).unwrap();
        let r = [rat(1, 2), rat(1, 2), rat(1, 10)];
        let SynthesisResult::Winning {
            hatness, guesses, ..
        } = chordal_synthesize(&p3, &r).unwrap()
        else {
            panic!()
        };
        assert_eq!(guesses[2], 0);
        assert_eq!(hatness[2], 1);
    }

    fn random_ratios(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
        if rng.gen_bool(0.5) {
            let q = rng.gen_range(2..12);
            let p = rng.gen_range(1..q);
            vec![rat(p, q); n]
        } else {
            (0..n)
                .map(|_| {
                    let q = rng.gen_range(1..10);
                    rat(rng.gen_range(0..=q), q)
                })
                .collect()
        }
    }

    #[test]
    fn decision_matches_region_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rng.gen_range(1..=9);
            let g = random_chordal(n, &mut rng);
            let r = random_ratios(n, &mut rng);
            let q = RegionQuery::new(g.clone(), r.clone()).unwrap();
            assert_eq!(
                decide_region(&g, &r).unwrap(),
                !region_oracle(&q).unwrap(),
                "{g:?} {r:?}"
            );
        }
    }

    #[test]
    fn synthesized_strategies_win_and_respect_ratios() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        for _ in 0..120 {
            let n = rng.gen_range(1..=6);
            let g = random_chordal(n, &mut rng);
            let r = random_ratios(n, &mut rng);
            let res = chordal_synthesize(&g, &r).unwrap();
            assert_eq!(
                matches!(res, SynthesisResult::Winning { .. }),
                decide_region(&g, &r).unwrap()
            );
            if let SynthesisResult::Winning {
                hatness,
                guesses,
                strategy,
            } = res
            {
                for v in 0..n {
                    assert!(rat(guesses[v] as i64, hatness[v] as i64) <= r[v]);
                }
                let total: u128 = hatness.iter().map(|&h| h as u128).product();
                if total <= 200_000 {
                    assert!(wins(&Game {
                        graph: g.clone(),
                        strategy
                    }));
                    checked += 1;
                }
            }
        }
        assert!(checked >= 20, "only {checked} strategies checked");
    }

    #[test]
    fn chordal_z_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(1..=10);
            let g = random_chordal(n, &mut rng);
            let w: Vec<Rational> = if rng.gen_bool(0.3) {
                // Weights hitting the α = 0 branch.
                vec![rat(1, rng.gen_range(1..4)); n]
            } else {
                (0..n).map(|_| rat(rng.gen_range(0..7), 6)).collect()
            };
            assert_eq!(chordal_z_eval(&g, &w).unwrap(), z_eval(&g, &w).unwrap());
        }
    }

    #[test]
    fn p3_examples() {
        for (h, g, count) in [(2, 1, 8), (5, 2, 125)] {
            let game = Game {
                graph: make_path(3).unwrap(),
                strategy: p3_strategy(h, g).unwrap(),
            };
            let spec = game_of(&game.strategy, &game.graph).unwrap();
            assert_eq!(spec.arrangement_count(), Some(count));
            assert!(wins(&game));
        }
        assert_eq!(
            p3_strategy(3, 1),
            Err(SynthesisError::InequalityNotSatisfied { h: 3, g: 1 })
        );
    }

    #[test]
    fn fibonacci_examples() {
        let pair = |i| {
            let (h, g) = fibonacci_game(i);
            (h.to_u64().unwrap(), g.to_u64().unwrap())
        };
        assert_eq!(pair(1), (2, 1));
        assert_eq!(pair(2), (5, 2));
        assert_eq!(pair(3), (13, 5));
        for i in 1..=20 {
            let (h, g) = fibonacci_game(i);
            assert!(h.gcd(&g).is_one());
            let (h, g) = (num_bigint::BigInt::from(h), num_bigint::BigInt::from(g));
            assert_eq!(&g * &g - 3 * &g * &h + &h * &h, (-1).into());
        }
    }

    #[test]
    fn path_examples() {
        let one = path_game(&rat(1, 8), Some(1)).unwrap();
        let spec = game_of(&one.strategy, &one.graph).unwrap();
        assert_eq!(one.graph, make_path(4).unwrap());
        assert_eq!(spec.hatness(), &[8, 16, 16, 8]);
        assert_eq!(spec.guesses(), &[3, 5, 5, 3]);
        assert!(wins(&one));

        let two = path_game(&rat(1, 8), None).unwrap();
        let spec = game_of(&two.strategy, &two.graph).unwrap();
        assert_eq!(spec.hatness(), &[4, 32, 16, 16, 32, 4]);
        assert_eq!(spec.guesses(), &[1, 9, 5, 5, 9, 1]);
        let bound = rat(3, 8);
        for r in spec.ratios() {
            assert!(r <= bound);
        }
        assert_eq!(
            path_game(&rat(1, 2), None),
            Err(SynthesisError::EpsilonOutOfRange)
        );
        assert_eq!(
            path_game(&rat(1, 8), Some(4)),
            Err(SynthesisError::TooManySteps)
        );
    }

    #[test]
    fn path_endpoints_match_at_every_step() {
        for steps in 0..=3 {
            let game = path_game(&rat(1, 10), Some(steps)).unwrap();
            let spec = game_of(&game.strategy, &game.graph).unwrap();
            let n = spec.vertex_count();
            for v in 0..n {
                assert_eq!(spec.hatness()[v], spec.hatness()[n - 1 - v]);
                assert_eq!(spec.guesses()[v], spec.guesses()[n - 1 - v]);
            }
        }
    }

    #[test]
    fn derived_games() {
        let base = clique_strategy(&[2, 2], &[1, 1]).unwrap();
        let (h, g, s) = derive_ratio_game(&base, &rat(3, 2)).unwrap();
        assert_eq!((h, g), (6, 4));
        let k2 = make_clique(2).unwrap();
        assert!(wins(&Game {
            graph: k2.clone(),
            strategy: s
        }));
        let (h, g, s) = derive_ratio_game(&base, &rat(2, 1)).unwrap();
        assert_eq!((h, g), (2, 1));
        assert!(wins(&Game {
            graph: k2.clone(),
            strategy: s
        }));
        assert_eq!(
            derive_ratio_game(&base, &rat(3, 1)).map(|x| x.0),
            Err(SynthesisError::RatioNotDominated)
        );
        let p = p3_strategy(5, 2).unwrap();
        let (h, g, s) = derive_ratio_game(&p, &rat(7, 3)).unwrap();
        assert_eq!((h, g), (35, 15));
        assert!(wins(&Game {
            graph: make_path(3).unwrap(),
            strategy: s
        }));
    }
}
