//! Simple undirected graphs, chordality recognition and clique trees.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid size {0} for this graph family")]
    InvalidSize(usize),
    #[error("graph is not chordal")]
    NotChordal,
    #[error("vertex set must not be empty")]
    EmptyVertexSet,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Self-loops are rejected; duplicate
    /// edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::Parse {
                line: 0,
                message: format!("self-loop at {u}"),
            });
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// True if every pair of distinct listed vertices is adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    /// Graph text format: `n m` then one `u v` line per edge, sorted, LF.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = String::new();
        writeln!(out, "{} {}", self.vertex_count(), edges.len()).unwrap();
        for (u, v) in edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses the graph text format. `#` lines are comments.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.starts_with('#'));
        let parse_pair = |line: usize, s: &str| -> Result<(usize, usize), GraphError> {
            let err = |message: &str| GraphError::Parse {
                line,
                message: message.to_string(),
            };
            let mut it = s.split_whitespace();
            let a = it.next().ok_or_else(|| err("expected two integers"))?;
            let b = it.next().ok_or_else(|| err("expected two integers"))?;
            if it.next().is_some() {
                return Err(err("trailing tokens"));
            }
            let a = a.parse().map_err(|_| err("invalid integer"))?;
            let b = b.parse().map_err(|_| err("invalid integer"))?;
            Ok((a, b))
        };
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut g = Self::empty(n);
        let mut last_line = hline;
        for k in 0..m {
            let (line, s) = lines.next().ok_or(GraphError::Parse {
                line: last_line + 1,
                message: format!("expected {m} edges, found {k}"),
            })?;
            last_line = line;
            let (u, v) = parse_pair(line, s)?;
            if !(u < v && v < n) {
                return Err(GraphError::Parse {
                    line,
                    message: format!("edge {u} {v} must satisfy u < v < {n}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(GraphError::Parse {
                    line,
                    message: format!("duplicate edge {u} {v}"),
                });
            }
            g.add_edge(u, v)?;
        }
        if let Some((line, _)) = lines.next() {
            return Err(GraphError::Parse {
                line,
                message: "unexpected content after edge list".into(),
            });
        }
        Ok(g)
    }
}

pub fn make_path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize(n));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn make_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidSize(n));
    }
    let mut g = make_path(n)?;
    g.add_edge(0, n - 1)?;
    Ok(g)
}

pub fn make_clique(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize(n));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Star with center 0 and leaves `1..=leaves`.
pub fn make_star(leaves: usize) -> Result<Graph, GraphError> {
    if leaves == 0 {
        return Err(GraphError::InvalidSize(leaves));
    }
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, &edges)
}

/// Maximum cardinality search visiting order, lowest index first on ties.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .unwrap();
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// Checks that `order` is a perfect elimination ordering: the neighbors of
/// each vertex that come later in the order form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let n = g.vertex_count();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        let Some(&first) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        if !later.iter().all(|&u| u == first || g.has_edge(first, u)) {
            return false;
        }
    }
    true
}

/// Returns a perfect elimination ordering if `g` is chordal.
pub fn perfect_elimination_ordering(g: &Graph) -> Option<Vec<usize>> {
    let mut order = mcs_order(g);
    order.reverse();
    is_perfect_elimination_ordering(g, &order).then_some(order)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_ordering(g).is_some()
}

/// Tree over the maximal cliques of a chordal graph with the running
/// intersection property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueTree {
    /// Each node is a maximal clique, vertices sorted ascending.
    pub nodes: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl CliqueTree {
    pub fn neighbors_of(&self, node: usize) -> Vec<usize> {
        self.tree_edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == node {
                    Some(b)
                } else if b == node {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Checks the clique-tree invariants against `g`: nodes are exactly the
    /// maximal cliques, the edges form a spanning tree, and the nodes holding
    /// any vertex induce a connected subtree.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let k = self.nodes.len();
        if k == 0 {
            return g.vertex_count() == 0;
        }
        if self.tree_edges.len() != k - 1 {
            return false;
        }
        for c in &self.nodes {
            if !g.is_clique(c) {
                return false;
            }
            // maximal: no outside vertex adjacent to all of c
            let extendable = (0..g.vertex_count())
                .filter(|v| c.binary_search(v).is_err())
                .any(|v| c.iter().all(|&u| g.has_edge(u, v)));
            if extendable {
                return false;
            }
        }
        for (u, v) in g.edges() {
            if !self.nodes.iter().any(|c| c.contains(&u) && c.contains(&v)) {
                return false;
            }
        }
        for v in 0..g.vertex_count() {
            let holding: Vec<usize> = (0..k).filter(|&i| self.nodes[i].contains(&v)).collect();
            if holding.is_empty() || !self.is_connected_subset(&holding) {
                return false;
            }
        }
        self.is_connected_subset(&(0..k).collect::<Vec<_>>())
    }

    fn is_connected_subset(&self, subset: &[usize]) -> bool {
        let mut seen = BTreeSet::from([subset[0]]);
        let mut stack = vec![subset[0]];
        while let Some(x) = stack.pop() {
            for y in self.neighbors_of(x) {
                if subset.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len() == subset.len()
    }
}

/// Builds a clique tree as a maximum-weight spanning tree of the clique
/// intersection graph. Disconnected graphs get a single tree whose
/// cross-component edges carry empty separators.
pub fn clique_tree(g: &Graph) -> Result<CliqueTree, GraphError> {
    let peo = perfect_elimination_ordering(g).ok_or(GraphError::NotChordal)?;
    let n = g.vertex_count();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    let mut candidates: Vec<Vec<usize>> = peo
        .iter()
        .map(|&v| {
            let mut c: Vec<usize> = std::iter::once(v)
                .chain(g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]))
                .collect();
            c.sort_unstable();
            c
        })
        .collect();
    candidates.sort();
    candidates.dedup();
    let is_subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let nodes: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|c| {
            !candidates
                .iter()
                .any(|d| d.len() > c.len() && is_subset(c, d))
        })
        .cloned()
        .collect();

    let k = nodes.len();
    let overlap = |a: usize, b: usize| {
        nodes[a]
            .iter()
            .filter(|x| nodes[b].binary_search(x).is_ok())
            .count()
    };
    // Prim: heaviest edge first, then lowest outside node, then lowest inside node.
    let mut in_tree = vec![false; k];
    let mut tree_edges = Vec::with_capacity(k.saturating_sub(1));
    if k > 0 {
        in_tree[0] = true;
    }
    for _ in 1..k {
        let mut best: Option<(usize, usize, usize)> = None;
        for j in (0..k).filter(|&j| !in_tree[j]) {
            for i in (0..k).filter(|&i| in_tree[i]) {
                let w = overlap(i, j);
                let better = match best {
                    None => true,
                    Some((bw, bj, bi)) => w > bw || (w == bw && (j, i) < (bj, bi)),
                };
                if better {
                    best = Some((w, j, i));
                }
            }
        }
        let (_, j, i) = best.unwrap();
        in_tree[j] = true;
        tree_edges.push((i.min(j), i.max(j)));
    }
    Ok(CliqueTree { nodes, tree_edges })
}

/// Induced subgraph with dense re-indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `new_to_old[i]` is the original index of new vertex `i`.
    pub new_to_old: Vec<usize>,
    /// `old_to_new[v]` is the new index of original vertex `v`, if kept.
    pub old_to_new: Vec<Option<usize>>,
}

pub fn induced_subgraph(g: &Graph, keep: &[usize]) -> Result<InducedSubgraph, GraphError> {
    if keep.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    let n = g.vertex_count();
    let mut new_to_old: Vec<usize> = keep.to_vec();
    new_to_old.sort_unstable();
    new_to_old.dedup();
    if let Some(&v) = new_to_old.iter().find(|&&v| v >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n });
    }
    let mut old_to_new = vec![None; n];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let mut sub = Graph::empty(new_to_old.len());
    for (i, &v) in new_to_old.iter().enumerate() {
        for &u in g.neighbors(v) {
            if let Some(j) = old_to_new[u] {
                if i < j {
                    sub.add_edge(i, j)?;
                }
            }
        }
    }
    Ok(InducedSubgraph {
        graph: sub,
        new_to_old,
        old_to_new,
    })
}

/// Random chordal graph: each new vertex attaches to a random clique of the
/// graph built so far (so insertion order reversed is a perfect elimination
/// ordering), then the labels are shuffled. About one vertex in eight starts a
/// new component.
pub fn random_chordal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        if rng.gen_ratio(1, 8) {
            continue;
        }
        let anchor = rng.gen_range(0..v);
        let mut clique = vec![anchor];
        let mut pool: Vec<usize> = g
            .neighbors(anchor)
            .iter()
            .copied()
            .filter(|&u| u < v)
            .collect();
        pool.shuffle(rng);
        for u in pool {
            if rng.gen_bool(0.5) && clique.iter().all(|&c| g.has_edge(c, u)) {
                clique.push(u);
            }
        }
        for u in clique {
            g.add_edge(u, v).unwrap();
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute force: a graph is chordal iff no vertex subset of size at least
    /// four induces a cycle.
    fn has_chordless_cycle(g: &Graph) -> bool {
        let n = g.vertex_count();
        (0u32..1 << n).filter(|m| m.count_ones() >= 4).any(|mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let deg_two = vs.iter().all(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&u| mask >> u & 1 == 1)
                    .count()
                    == 2
            });
            if !deg_two {
                return false;
            }
            let mut seen = vec![vs[0]];
            let mut stack = vec![vs[0]];
            while let Some(x) = stack.pop() {
                for &y in g.neighbors(x) {
                    if mask >> y & 1 == 1 && !seen.contains(&y) {
                        seen.push(y);
                        stack.push(y);
                    }
                }
            }
            seen.len() == vs.len()
        })
    }

    fn brute_maximal_cliques(g: &Graph) -> BTreeSet<Vec<usize>> {
        let n = g.vertex_count();
        let cliques: Vec<Vec<usize>> = (1u32..1 << n)
            .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
            .filter(|c| g.is_clique(c))
            .collect();
        cliques
            .iter()
            .filter(|c| {
                !cliques
                    .iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|x| d.contains(x)))
            })
            .cloned()
            .collect()
    }

    #[test]
    fn constructors() {
        assert_eq!(make_path(3).unwrap().edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(make_clique(3).unwrap().edge_count(), 3);
        let s = make_star(4).unwrap();
        assert_eq!(s.edge_count(), 4);
        assert_eq!(s.max_degree(), 4);
        assert_eq!(s.degree(0), 4);
        assert!(make_cycle(4).unwrap().has_edge(0, 3));
        assert_eq!(make_path(0), Err(GraphError::InvalidSize(0)));
        assert_eq!(make_cycle(2), Err(GraphError::InvalidSize(2)));
        assert_eq!(make_star(0), Err(GraphError::InvalidSize(0)));
    }

    #[test]
    fn chordality_examples() {
        assert!(!is_chordal(&make_cycle(4).unwrap()));
        assert!(is_chordal(&make_path(5).unwrap()));
        assert!(is_chordal(&make_clique(6).unwrap()));
        assert!(is_chordal(&make_cycle(3).unwrap()));
        assert!(!is_chordal(&make_cycle(7).unwrap()));
    }

    #[test]
    fn chordality_matches_brute_force_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..600 {
            let n = 1 + trial % 8;
            let p = [0.2, 0.4, 0.6, 0.8][trial % 4];
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            assert_eq!(is_chordal(&g), !has_chordless_cycle(&g), "{g:?}");
        }
    }

    #[test]
    fn clique_tree_examples() {
        let t = clique_tree(&make_path(3).unwrap()).unwrap();
        assert_eq!(t.nodes, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(t.tree_edges.len(), 1);

        let t = clique_tree(&make_clique(4).unwrap()).unwrap();
        assert_eq!(t.nodes, vec![vec![0, 1, 2, 3]]);
        assert!(t.tree_edges.is_empty());

        // two triangles sharing the edge 1-2, plus a pendant vertex 4 on 3
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let t = clique_tree(&g).unwrap();
        let expected = brute_maximal_cliques(&g);
        assert_eq!(t.nodes.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert!(t.is_valid_for(&g));
        let a = t.nodes.iter().position(|c| c == &vec![0, 1, 2]).unwrap();
        let b = t.nodes.iter().position(|c| c == &vec![1, 2, 3]).unwrap();
        assert!(t.tree_edges.contains(&(a.min(b), a.max(b))));

        assert_eq!(
            clique_tree(&make_cycle(5).unwrap()),
            Err(GraphError::NotChordal)
        );
    }

    #[test]
    fn clique_trees_of_random_chordal_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..300 {
            let n = 1 + trial % 12;
            let g = random_chordal(n, &mut rng);
            assert!(is_chordal(&g));
            let t = clique_tree(&g).unwrap();
            assert!(t.is_valid_for(&g), "{g:?} {t:?}");
            assert_eq!(
                t.nodes.iter().cloned().collect::<BTreeSet<_>>(),
                brute_maximal_cliques(&g)
            );
            assert_eq!(clique_tree(&g).unwrap(), t);
        }
    }

    #[test]
    fn induced_subgraphs() {
        let p5 = make_path(5).unwrap();
        let sub = induced_subgraph(&p5, &[1, 2, 3]).unwrap();
        assert_eq!(sub.graph, make_path(3).unwrap());
        assert_eq!(sub.old_to_new[0], None);
        assert_eq!(sub.old_to_new[2], Some(1));
        assert_eq!(sub.new_to_old, vec![1, 2, 3]);

        let k2 = induced_subgraph(&make_clique(4).unwrap(), &[3, 1]).unwrap();
        assert_eq!(k2.graph, make_clique(2).unwrap());

        let leaves = induced_subgraph(&make_star(3).unwrap(), &[1, 2, 3]).unwrap();
        assert_eq!(leaves.graph, Graph::empty(3));

        assert_eq!(induced_subgraph(&p5, &[]), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn text_format() {
        let g = make_cycle(4).unwrap();
        let text = g.to_text();
        assert_eq!(text, "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(Graph::parse(&text).unwrap(), g);
        assert_eq!(
            Graph::parse("# comment\n3 1\n# another\n0 2\n").unwrap(),
            Graph::from_edges(3, &[(0, 2)]).unwrap()
        );
        assert!(matches!(
            Graph::parse("3 2\n0 1\n"),
            Err(GraphError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            Graph::parse("3 1\n1 0\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("3 2\n0 1\n0 1\n"),
            Err(GraphError::Parse { line: 3, .. })
        ));
        assert!(matches!(Graph::parse(""), Err(GraphError::Parse { .. })));
    }
}
