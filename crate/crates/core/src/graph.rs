//! Simple undirected graphs on the vertex set `1..=n`.
//!
//! Adjacency is stored as one `u64` bitmask per vertex, which caps graphs at
//! [`MAX_VERTICES`] vertices. Every search in this crate runs on graphs far
//! below that bound.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 63;

/// Default vertex bound for the exhaustive closed-labeling search.
pub const CLOSED_SEARCH_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("clique join needs t >= {min}, got {t}")]
    CliqueTooSmall { t: usize, min: usize },
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("labeling is not a bijection onto 1..={0}")]
    NotBijective(usize),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// A subset of `1..=63`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits & !1)
    }

    /// All vertices `1..=n`.
    pub fn full(n: usize) -> Self {
        if n == 0 {
            return VertexSet(0);
        }
        VertexSet(((1u128 << (n + 1)) - 2) as u64)
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1 << v);
    }

    pub fn with(mut self, v: Vertex) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: Vertex) -> Self {
        self.remove(v);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Vertex)
    }

    pub fn max(self) -> Option<Vertex> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as Vertex)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vs = Vec::<Vertex>::deserialize(d)?;
        if let Some(&bad) = vs.iter().find(|&&v| v == 0 || v > MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(vs.into_iter().collect())
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = Vertex;
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as Vertex;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A simple graph on `1..=n`. Equality is structural on the edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let edges: Vec<(Vertex, Vertex)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(raw.n, &edges).map_err(serde::de::Error::custom)
    }
}

/// Result of an induced-subgraph extraction: `original[k]` is the vertex of
/// the parent graph that became vertex `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original: Vec<Vertex>,
}

impl InducedSubgraph {
    /// Image of a parent vertex under the order-preserving relabeling.
    pub fn relabel(&self, v: Vertex) -> Option<Vertex> {
        self.original.binary_search(&v).ok().map(|k| k + 1)
    }
}

/// Six vertices inducing a net: `leaves[k]` hangs off `triangle[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NetWitness {
    pub triangle: [Vertex; 3],
    pub leaves: [Vertex; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedSearch {
    Closed(Labeling),
    NotClosed,
    /// The vertex count exceeded the search cap.
    Unknown,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n + 1] })
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).expect("path within bounds")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("complete graph within bounds");
        for i in 1..=n {
            for j in i + 1..=n {
                g.link(i, j);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.link(1, n);
        }
        g
    }

    /// Star with center 1 and leaves `2..=n`.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (2..=n).map(|i| (1, i)).collect();
        Graph::from_edges(n, &edges).expect("star within bounds")
    }

    /// Triangle `1,2,3` with leaves `4,5,6` attached to `1,2,3` respectively.
    pub fn net() -> Self {
        Graph::from_edges(6, &[(1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<(), GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.link(a, b);
        Ok(())
    }

    fn link(&mut self, a: Vertex, b: Vertex) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a >= 1 && a <= self.n && b < 64 && self.adj[a] & (1 << b) != 0
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in VertexSet(self.adj[i]).iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Connected components of the graph with `removed` deleted, sorted by
    /// their minimum vertex.
    pub fn connected_components(&self, removed: VertexSet) -> Vec<VertexSet> {
        let mut remaining = self.vertices().difference(removed);
        let mut comps = Vec::new();
        while let Some(start) = remaining.min() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier {
                    next |= self.adj[v];
                }
                let fresh = VertexSet(next).intersection(remaining).difference(comp);
                comp = comp.union(fresh);
                frontier = fresh;
            }
            remaining = remaining.difference(comp);
            comps.push(comp);
        }
        comps
    }

    /// Number of components after deleting `removed`, written `c(U)` for cut sets.
    pub fn component_count(&self, removed: VertexSet) -> usize {
        self.connected_components(removed).len()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count(VertexSet::empty()) == 1
    }

    pub fn induced_subgraph(&self, keep: VertexSet) -> InducedSubgraph {
        let original: Vec<Vertex> = keep.intersection(self.vertices()).to_vec();
        let mut g = Graph::empty(original.len()).expect("subgraph is smaller");
        for (a, &u) in original.iter().enumerate() {
            for (b, &w) in original.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, w) {
                    g.link(a + 1, b + 1);
                }
            }
        }
        InducedSubgraph { graph: g, original }
    }

    /// Shortest-path edge count; `None` when `v` and `w` are disconnected.
    pub fn distance(&self, v: Vertex, w: Vertex) -> Option<usize> {
        if v == w {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n + 1];
        let mut queue = VecDeque::from([v]);
        dist[v] = 0;
        while let Some(u) = queue.pop_front() {
            for x in self.neighbors(u) {
                if dist[x] == usize::MAX {
                    dist[x] = dist[u] + 1;
                    if x == w {
                        return Some(dist[x]);
                    }
                    queue.push_back(x);
                }
            }
        }
        None
    }

    /// Attaches `K_t` at vertex `v`, adding vertices `n+1..=n+t-1`.
    pub fn clique_join_vertex(&self, v: Vertex, t: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        if t < 2 {
            return Err(GraphError::CliqueTooSmall { t, min: 2 });
        }
        self.attach_clique(&[v], t - 1)
    }

    /// Attaches `K_t` along the edge `{a, b}`, adding `t - 2` vertices.
    pub fn clique_join_edge(&self, a: Vertex, b: Vertex, t: usize) -> Result<Graph, GraphError> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if t < 3 {
            return Err(GraphError::CliqueTooSmall { t, min: 3 });
        }
        if !self.has_edge(a, b) {
            return Err(GraphError::NotAnEdge(a.min(b), a.max(b)));
        }
        self.attach_clique(&[a, b], t - 2)
    }

    fn attach_clique(&self, base: &[Vertex], fresh: usize) -> Result<Graph, GraphError> {
        let n = self.n + fresh;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut g = self.clone();
        g.n = n;
        g.adj.resize(n + 1, 0);
        for u in self.n + 1..=n {
            for &b in base {
                g.link(u, b);
            }
            for w in u + 1..=n {
                g.link(u, w);
            }
        }
        Ok(g)
    }

    pub fn cut_vertices(&self) -> VertexSet {
        let base = self.component_count(VertexSet::empty());
        (1..=self.n)
            .filter(|&v| self.component_count(VertexSet::singleton(v)) > base)
            .collect()
    }

    /// Vertices whose neighborhood is not a clique.
    pub fn non_simplicial_vertices(&self) -> VertexSet {
        (1..=self.n).filter(|&v| !self.is_clique(self.neighbors(v))).collect()
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset(self.neighbors(v)))
    }

    /// Vertex sets of the blocks (maximal biconnected subgraphs and bridges),
    /// sorted. Isolated vertices form singleton blocks.
    pub fn blocks(&self) -> Vec<VertexSet> {
        struct Dfs<'a> {
            g: &'a Graph,
            disc: Vec<usize>,
            low: Vec<usize>,
            time: usize,
            stack: Vec<(Vertex, Vertex)>,
            out: Vec<VertexSet>,
        }
        impl Dfs<'_> {
            fn visit(&mut self, u: Vertex, parent: Vertex) {
                self.time += 1;
                self.disc[u] = self.time;
                self.low[u] = self.time;
                for w in self.g.neighbors(u) {
                    if self.disc[w] == 0 {
                        self.stack.push((u, w));
                        self.visit(w, u);
                        self.low[u] = self.low[u].min(self.low[w]);
                        if self.low[w] >= self.disc[u] {
                            let mut block = VertexSet::empty();
                            while let Some((a, b)) = self.stack.pop() {
                                block = block.with(a).with(b);
                                if (a, b) == (u, w) {
                                    break;
                                }
                            }
                            self.out.push(block);
                        }
                    } else if w != parent && self.disc[w] < self.disc[u] {
                        self.stack.push((u, w));
                        self.low[u] = self.low[u].min(self.disc[w]);
                    }
                }
            }
        }
        let mut dfs = Dfs {
            g: self,
            disc: vec![0; self.n + 1],
            low: vec![0; self.n + 1],
            time: 0,
            stack: Vec::new(),
            out: Vec::new(),
        };
        for v in 1..=self.n {
            if dfs.disc[v] == 0 {
                if self.degree(v) == 0 {
                    dfs.out.push(VertexSet::singleton(v));
                }
                dfs.visit(v, 0);
            }
        }
        let mut out = dfs.out;
        out.sort();
        out
    }

    /// Connected, with every block complete.
    pub fn is_block_graph(&self) -> bool {
        self.is_connected() && self.blocks().into_iter().all(|b| self.is_clique(b))
    }

    /// Searches all 6-subsets for an induced net (a triangle with one pendant
    /// leaf on each of its vertices).
    pub fn contains_induced_net(&self) -> Option<NetWitness> {
        if self.n < 6 {
            return None;
        }
        // Triangle vertices need degree >= 3, leaves >= 1.
        let candidates: Vec<Vertex> = (1..=self.n).filter(|&v| self.degree(v) >= 1).collect();
        let mut chosen = Vec::with_capacity(6);
        self.net_search(&candidates, 0, &mut chosen)
    }

    fn net_search(&self, cand: &[Vertex], from: usize, chosen: &mut Vec<Vertex>) -> Option<NetWitness> {
        if chosen.len() == 6 {
            return self.net_witness(chosen);
        }
        let need = 6 - chosen.len();
        for k in from..cand.len() {
            if cand.len() - k < need {
                break;
            }
            chosen.push(cand[k]);
            if let Some(w) = self.net_search(cand, k + 1, chosen) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }

    fn net_witness(&self, vs: &[Vertex]) -> Option<NetWitness> {
        let set: VertexSet = vs.iter().copied().collect();
        let deg = |v: Vertex| VertexSet(self.adj[v]).intersection(set).len();
        let mut degrees: Vec<usize> = vs.iter().map(|&v| deg(v)).collect();
        degrees.sort_unstable();
        if degrees != [1, 1, 1, 3, 3, 3] {
            return None;
        }
        let tri: Vec<Vertex> = vs.iter().copied().filter(|&v| deg(v) == 3).collect();
        if !(self.has_edge(tri[0], tri[1]) && self.has_edge(tri[0], tri[2]) && self.has_edge(tri[1], tri[2])) {
            return None;
        }
        let mut leaves = [0; 3];
        for (k, &t) in tri.iter().enumerate() {
            let own = VertexSet(self.adj[t]).intersection(set).difference(tri.iter().copied().collect());
            if own.len() != 1 {
                return None;
            }
            leaves[k] = own.min().unwrap();
        }
        Some(NetWitness { triangle: [tri[0], tri[1], tri[2]], leaves })
    }

    /// Checks the closedness condition with respect to `labeling`.
    pub fn is_closed_wrt(&self, labeling: &Labeling) -> bool {
        let g = labeling.apply(self);
        let edges = g.edges();
        for &(i, j) in &edges {
            for &(k, l) in &edges {
                if (i, j) == (k, l) {
                    continue;
                }
                if i == k && !g.has_edge(j, l) {
                    return false;
                }
                if j == l && !g.has_edge(i, k) {
                    return false;
                }
            }
        }
        true
    }

    /// Exhaustive closed-labeling search, capped at [`CLOSED_SEARCH_CAP`] vertices.
    pub fn is_closed(&self) -> ClosedSearch {
        self.is_closed_capped(CLOSED_SEARCH_CAP)
    }

    pub fn is_closed_capped(&self, cap: usize) -> ClosedSearch {
        if self.n > cap {
            return ClosedSearch::Unknown;
        }
        // order[k] is the vertex receiving label k + 1.
        let mut order = Vec::with_capacity(self.n);
        if self.closed_extend(&mut order, VertexSet::empty()) {
            let mut sigma = vec![0; self.n];
            for (k, &v) in order.iter().enumerate() {
                sigma[v - 1] = k + 1;
            }
            ClosedSearch::Closed(Labeling { sigma })
        } else {
            ClosedSearch::NotClosed
        }
    }

    fn closed_extend(&self, order: &mut Vec<Vertex>, placed: VertexSet) -> bool {
        if order.len() == self.n {
            return true;
        }
        for w in self.vertices().difference(placed) {
            let lower = VertexSet(self.adj[w]).intersection(placed);
            // Every pair of smaller neighbours of the new maximum must be adjacent.
            let clique_ok = lower
                .iter()
                .all(|a| lower.is_subset(VertexSet(self.adj[a]).with(a)));
            if !clique_ok {
                continue;
            }
            // For each smaller neighbour i, its neighbours labelled above i must see w.
            let pos = |v: Vertex| order.iter().position(|&u| u == v).unwrap();
            let above_ok = lower.iter().all(|i| {
                let pi = pos(i);
                order[pi + 1..]
                    .iter()
                    .filter(|&&l| self.has_edge(i, l))
                    .all(|&l| self.has_edge(w, l))
            });
            if !above_ok {
                continue;
            }
            order.push(w);
            if self.closed_extend(order, placed.with(w)) {
                return true;
            }
            order.pop();
        }
        false
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 1..=self.n {
            let _ = writeln!(s, "  {v};");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  {a} -- {b};");
        }
        s.push_str("}\n");
        s
    }
}

/// A bijection `V(G) -> 1..=n`; `sigma[v - 1]` is the label of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    sigma: Vec<Vertex>,
}

impl Labeling {
    pub fn new(sigma: Vec<Vertex>) -> Result<Self, GraphError> {
        let n = sigma.len();
        let image: BTreeSet<Vertex> = sigma.iter().copied().collect();
        if image.len() != n || image.iter().any(|&l| l == 0 || l > n) {
            return Err(GraphError::NotBijective(n));
        }
        Ok(Labeling { sigma })
    }

    pub fn identity(n: usize) -> Self {
        Labeling { sigma: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn label(&self, v: Vertex) -> Vertex {
        self.sigma[v - 1]
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.sigma
    }

    pub fn inverse(&self) -> Labeling {
        let mut inv = vec![0; self.sigma.len()];
        for (v, &l) in self.sigma.iter().enumerate() {
            inv[l - 1] = v + 1;
        }
        Labeling { sigma: inv }
    }

    /// The graph with every vertex `v` renamed to `label(v)`.
    pub fn apply(&self, g: &Graph) -> Graph {
        assert_eq!(g.n(), self.sigma.len(), "labeling size mismatch");
        let mut out = Graph::empty(g.n()).unwrap();
        for (a, b) in g.edges() {
            out.link(self.label(a), self.label(b));
        }
        out
    }
}

/// All labelings of `1..=n` (test and small-search helper).
pub fn permutations(n: usize) -> Vec<Vec<Vertex>> {
    fn go(cur: &mut Vec<Vertex>, used: &mut Vec<bool>, out: &mut Vec<Vec<Vertex>>) {
        let n = used.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Canonical form under relabeling: the lexicographically smallest sorted
/// edge list over all permutations. Exponential; intended for `n <= 7`.
pub fn canonical_form(g: &Graph) -> Vec<(Vertex, Vertex)> {
    permutations(g.n())
        .into_iter()
        .map(|p| Labeling { sigma: p }.apply(g).edges())
        .min()
        .unwrap_or_default()
}

/// One representative of every connected graph on exactly `n` vertices, up
/// to isomorphism. Exhaustive over labeled graphs; intended for `n <= 6`.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> =
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if (mask.count_ones() as usize) + 1 < n {
            continue;
        }
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| Labeling { sigma: p.clone() }.apply(&g).edges())
            .min()
            .unwrap();
        if seen.insert(canon.clone()) {
            out.push(Graph::from_edges(n, &canon).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_decomposition() {
        // Two triangles sharing vertex 3, plus a pendant edge 5-6.
        let g = Graph::from_edges(6, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (5, 6)]).unwrap();
        let blocks: Vec<Vec<Vertex>> = g.blocks().into_iter().map(VertexSet::to_vec).collect();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.contains(&vec![1, 2, 3]) && blocks.contains(&vec![3, 4, 5]) && blocks.contains(&vec![5, 6]));
        assert!(g.is_block_graph());
        assert!(!Graph::cycle(4).is_block_graph());
        assert_eq!(Graph::cycle(4).blocks().len(), 1);
        assert!(Graph::net().is_block_graph());
        assert_eq!(Graph::empty(1).unwrap().blocks().len(), 1);
    }

    #[test]
    fn components_of_path_minus_middle() {
        let g = Graph::path(4);
        let comps = g.connected_components(VertexSet::singleton(2));
        assert_eq!(comps, vec![[1].into_iter().collect(), [3, 4].into_iter().collect()]);
        assert_eq!(Graph::complete(5).connected_components(VertexSet::empty()), vec![VertexSet::full(5)]);
        assert!(g.connected_components(VertexSet::full(4)).is_empty());
    }

    #[test]
    fn induced_subgraph_relabels_in_order() {
        let sub = Graph::complete(4).induced_subgraph([1, 3].into_iter().collect());
        assert_eq!(sub.graph, Graph::complete(2));
        assert_eq!(sub.relabel(3), Some(2));
        let sub = Graph::path(4).induced_subgraph([1, 3, 4].into_iter().collect());
        assert_eq!(sub.graph.edges(), vec![(2, 3)]);
        assert_eq!(sub.original, vec![1, 3, 4]);
        let tri = Graph::net().induced_subgraph([1, 2, 3].into_iter().collect());
        assert_eq!(tri.graph, Graph::complete(3));
    }

    #[test]
    fn distances() {
        assert_eq!(Graph::path(4).distance(1, 4), Some(3));
        assert_eq!(Graph::complete(6).distance(2, 5), Some(1));
        let two = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(two.distance(1, 3), None);
        assert_eq!(two.distance(2, 2), Some(0));
    }

    #[test]
    fn clique_joins() {
        let g = Graph::path(3).clique_join_vertex(3, 3).unwrap();
        assert_eq!(g.edges(), vec![(1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]);
        let w = Graph::complete(2).clique_join_vertex(1, 2).unwrap();
        assert_eq!(w.edges(), vec![(1, 2), (1, 3)]);
        assert_eq!(Graph::empty(1).unwrap().clique_join_vertex(1, 4).unwrap(), Graph::complete(4));
        assert!(matches!(
            Graph::path(2).clique_join_vertex(1, 1),
            Err(GraphError::CliqueTooSmall { .. })
        ));

        assert_eq!(Graph::complete(2).clique_join_edge(1, 2, 3).unwrap(), Graph::complete(3));
        let e = Graph::path(3).clique_join_edge(1, 2, 4).unwrap();
        assert_eq!(e.edges(), vec![(1, 2), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (4, 5)]);
        assert_eq!(Graph::path(3).clique_join_edge(1, 3, 3), Err(GraphError::NotAnEdge(1, 3)));
        assert!(Graph::path(3).clique_join_edge(1, 2, 2).is_err());
    }

    #[test]
    fn clique_join_edge_counts() {
        let g = Graph::path(5);
        for t in 2..6 {
            let h = g.clique_join_vertex(3, t).unwrap();
            assert_eq!(h.n(), 5 + t - 1);
            assert_eq!(h.edge_count(), 4 + (t - 1) + (t - 1) * (t - 2) / 2);
        }
        for t in 3..7 {
            let h = g.clique_join_edge(2, 3, t).unwrap();
            assert_eq!(h.edge_count(), 4 + 2 * (t - 2) + (t - 2) * (t - 3) / 2);
        }
    }

    #[test]
    fn net_detection() {
        let w = Graph::net().contains_induced_net().unwrap();
        assert_eq!(w.triangle, [1, 2, 3]);
        assert_eq!(w.leaves, [4, 5, 6]);
        assert!(Graph::complete(6).contains_induced_net().is_none());
        assert!(Graph::path(6).contains_induced_net().is_none());
    }

    #[test]
    fn closed_graphs() {
        let k = Graph::complete(4);
        for p in permutations(4) {
            assert!(k.is_closed_wrt(&Labeling::new(p).unwrap()));
        }
        assert!(Graph::path(4).is_closed_wrt(&Labeling::identity(4)));
        // Middle vertex labelled 1: edges {1,2},{1,3} would need {2,3}.
        let bad = Labeling::new(vec![2, 1, 3, 4]).unwrap();
        assert!(!Graph::path(4).is_closed_wrt(&bad));
        let claw = Graph::star(4);
        assert_eq!(claw.is_closed(), ClosedSearch::NotClosed);
        assert!(permutations(4).into_iter().all(|p| !claw.is_closed_wrt(&Labeling::new(p).unwrap())));
        match Graph::cycle(4).is_closed() {
            ClosedSearch::NotClosed => {}
            other => panic!("C4 is not closed, got {other:?}"),
        }
        assert_eq!(Graph::path(11).is_closed(), ClosedSearch::Unknown);
    }

    #[test]
    fn closed_search_witness_is_closed() {
        for g in connected_graphs_up_to_iso(5) {
            let exhaustive = permutations(5).into_iter().find(|p| g.is_closed_wrt(&Labeling::new(p.clone()).unwrap()));
            match g.is_closed() {
                ClosedSearch::Closed(l) => {
                    assert!(g.is_closed_wrt(&l));
                    assert!(exhaustive.is_some());
                }
                ClosedSearch::NotClosed => assert!(exhaustive.is_none(), "{g:?}"),
                ClosedSearch::Unknown => unreachable!(),
            }
        }
    }

    #[test]
    fn graph_json_round_trip() {
        let g = Graph::net();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":6,"edges":[[1,2],[1,3],[1,4],[2,3],[2,5],[3,6]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,3]]}"#).is_err());
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn iso_class_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn labeling_must_be_bijective() {
        assert!(Labeling::new(vec![1, 1, 2]).is_err());
        assert!(Labeling::new(vec![1, 2, 4]).is_err());
        let l = Labeling::new(vec![3, 1, 2]).unwrap();
        assert_eq!(l.inverse().as_slice(), &[2, 3, 1]);
    }
}
