//! Graph families built by clique joins along a path, with canonical
//! labelings and a self-certifying recognizer.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Labeling, Vertex, VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    PendantCliques,
    GeneralizedPendantCliques,
    GeneralizedCaterpillar,
}

impl Family {
    pub const ALL: [Family; 3] =
        [Family::PendantCliques, Family::GeneralizedPendantCliques, Family::GeneralizedCaterpillar];

    pub fn name(self) -> &'static str {
        match self {
            Family::PendantCliques => "pendant-cliques",
            Family::GeneralizedPendantCliques => "generalized-pendant-cliques",
            Family::GeneralizedCaterpillar => "generalized-caterpillar",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s || format!("{f:?}").eq_ignore_ascii_case(&s.replace(['-', '_'], "")))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("recipe is not a {0} recipe: {1}")]
    WrongFamily(&'static str, String),
    #[error("graph is not a {0} graph")]
    NotInFamily(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::InvalidRecipe(msg.into()))
}

/// Clique joins along a path `v_1..v_r`.
///
/// Positions are 1-based; edge `i` is `{v_i, v_{i+1}}`. `whiskers` lists path
/// positions receiving a pendant edge. `clique_whiskers[i]` lists 1-based
/// offsets into the extra vertices of the clique joined via edge `i`, each
/// receiving a pendant edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRecipe {
    pub path_len: usize,
    #[serde(default)]
    pub vertex_joins: BTreeMap<usize, Vec<usize>>,
    #[serde(default)]
    pub edge_joins: BTreeMap<usize, usize>,
    #[serde(default)]
    pub whiskers: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub clique_whiskers: BTreeMap<usize, Vec<usize>>,
}

/// Where an attached clique sits. Keys order attachments by construction id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Attach {
    /// The `k`-th clique (0-based, whiskers last) joined via `v_pos`.
    Vertex { pos: usize, k: usize },
    Edge { pos: usize },
    /// The `k`-th whisker on an extra of the clique joined via edge `pos`.
    CliqueWhisker { pos: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub at: Attach,
    /// Clique size including the anchor vertices.
    pub size: usize,
    /// The new vertices, ascending.
    pub members: Vec<Vertex>,
}

/// Output of [`GraphRecipe::build`]. Vertices carry construction ids: the path
/// is `1..=r` and attachments follow in [`Attach`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub graph: Graph,
    pub path: Vec<Vertex>,
    pub labeling: Labeling,
    pub attachments: Vec<Attachment>,
}

impl Built {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The graph with every vertex replaced by its label.
    pub fn labeled_graph(&self) -> Graph {
        self.labeling.apply(&self.graph)
    }

    pub fn labeled_path(&self) -> Vec<Vertex> {
        self.path.iter().map(|&v| self.labeling.label(v)).collect()
    }

    /// Per path position, the labels of all vertices joined via that vertex.
    pub fn labeled_vertex_cliques(&self) -> Vec<Vec<Vec<Vertex>>> {
        let mut out = vec![Vec::new(); self.path.len()];
        for a in &self.attachments {
            if let Attach::Vertex { pos, .. } = a.at {
                out[pos - 1].push(a.members.iter().map(|&v| self.labeling.label(v)).collect());
            }
        }
        out
    }
}

impl GraphRecipe {
    pub fn path(r: usize) -> Self {
        GraphRecipe { path_len: r, ..Default::default() }
    }

    pub fn with_vertex_join(mut self, pos: usize, t: usize) -> Self {
        self.vertex_joins.entry(pos).or_default().push(t);
        self
    }

    pub fn with_edge_join(mut self, pos: usize, t: usize) -> Self {
        self.edge_joins.insert(pos, t);
        self
    }

    pub fn with_whisker(mut self, pos: usize) -> Self {
        self.whiskers.push(pos);
        self
    }

    pub fn with_clique_whisker(mut self, pos: usize, offset: usize) -> Self {
        self.clique_whiskers.entry(pos).or_default().push(offset);
        self
    }

    pub fn from_json(s: &str) -> Result<Self, FamilyError> {
        let r: GraphRecipe = serde_json::from_str(s).map_err(|e| FamilyError::InvalidRecipe(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("recipe serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.path_len
            + self.vertex_joins.values().flatten().map(|t| t - 1).sum::<usize>()
            + self.whiskers.len()
            + self.edge_joins.values().map(|t| t - 2).sum::<usize>()
            + self.clique_whiskers.values().map(Vec::len).sum::<usize>()
    }

    /// Structural checks shared by all families.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let r = self.path_len;
        if r == 0 {
            return invalid("path_len must be at least 1");
        }
        for (&i, ts) in &self.vertex_joins {
            if i == 0 || i > r {
                return invalid(format!("vertex join position {i} outside 1..={r}"));
            }
            if let Some(t) = ts.iter().find(|&&t| t < 2) {
                return invalid(format!("vertex join K{t} at position {i}: sizes must be >= 2"));
            }
        }
        for (&i, &t) in &self.edge_joins {
            if i == 0 || i >= r {
                return invalid(format!("edge join position {i} outside 1..={}", r.saturating_sub(1)));
            }
            if t < 3 {
                return invalid(format!("edge join K{t} on edge {i}: sizes must be >= 3"));
            }
        }
        if let Some(i) = self.whiskers.iter().find(|&&i| i == 0 || i > r) {
            return invalid(format!("whisker position {i} outside 1..={r}"));
        }
        for (&i, offs) in &self.clique_whiskers {
            let Some(&t) = self.edge_joins.get(&i) else {
                return invalid(format!("clique whisker on edge {i} without an edge join"));
            };
            if let Some(k) = offs.iter().find(|&&k| k == 0 || k > t - 2) {
                return invalid(format!("clique whisker offset {k} outside 1..={} on edge {i}", t - 2));
            }
        }
        let n = self.vertex_count();
        if n > MAX_VERTICES {
            return Err(FamilyError::Graph(GraphError::TooManyVertices(n)));
        }
        Ok(())
    }

    /// Checks the family-specific constraints on top of [`validate`](Self::validate).
    pub fn validate_for(&self, family: Family) -> Result<(), FamilyError> {
        self.validate()?;
        let wrong = |msg: &str| Err(FamilyError::WrongFamily(family.name(), msg.to_string()));
        match family {
            Family::PendantCliques => {
                if !self.edge_joins.is_empty() {
                    return wrong("edge joins are not allowed");
                }
                let joins = self.effective_vertex_joins();
                if let Some((i, _)) = joins.iter().find(|(_, ts)| ts.len() > 1) {
                    return wrong(&format!("more than one clique joined via v{i}"));
                }
            }
            Family::GeneralizedPendantCliques => {
                if !self.clique_whiskers.is_empty() {
                    return wrong("whiskers on clique vertices are not allowed");
                }
            }
            Family::GeneralizedCaterpillar => {
                if self.vertex_joins.values().flatten().any(|&t| t != 2) {
                    return wrong("vertex joins other than whiskers are not allowed");
                }
            }
        }
        Ok(())
    }

    pub fn is_in(&self, family: Family) -> bool {
        self.validate_for(family).is_ok()
    }

    /// Vertex joins with whiskers folded in as `K_2` joins, appended last.
    pub fn effective_vertex_joins(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut joins = self.vertex_joins.clone();
        joins.retain(|_, ts| !ts.is_empty());
        for &i in &self.whiskers {
            joins.entry(i).or_default().push(2);
        }
        joins
    }

    /// Builds the graph and the canonical block labeling: `v_i`, then the
    /// cliques joined via `v_i` one after another, then the extras of the
    /// clique joined via `{v_i, v_{i+1}}` (and whiskers hanging off them), then
    /// `v_{i+1}`.
    pub fn build(&self) -> Result<Built, FamilyError> {
        self.validate()?;
        let r = self.path_len;
        let mut g = Graph::path(r);
        let mut attachments = Vec::new();
        for (&pos, ts) in &self.effective_vertex_joins() {
            for (k, &t) in ts.iter().enumerate() {
                let before = g.n();
                g = g.clique_join_vertex(pos, t)?;
                attachments.push(Attachment { at: Attach::Vertex { pos, k }, size: t, members: (before + 1..=g.n()).collect() });
            }
        }
        let mut edge_members = BTreeMap::new();
        for (&pos, &t) in &self.edge_joins {
            let before = g.n();
            g = g.clique_join_edge(pos, pos + 1, t)?;
            let members: Vec<Vertex> = (before + 1..=g.n()).collect();
            edge_members.insert(pos, members.clone());
            attachments.push(Attachment { at: Attach::Edge { pos }, size: t, members });
        }
        for (&pos, offs) in &self.clique_whiskers {
            for (k, &off) in offs.iter().enumerate() {
                let anchor = edge_members[&pos][off - 1];
                g = g.clique_join_vertex(anchor, 2)?;
                attachments.push(Attachment { at: Attach::CliqueWhisker { pos, k }, size: 2, members: vec![g.n()] });
            }
        }
        let labeling = block_labeling(r, &attachments, false);
        Ok(Built { graph: g, path: (1..=r).collect(), labeling, attachments })
    }

    /// Labeling for pendant cliques recipes in which the clique joined via
    /// `v_1` is labeled before `v_1`; elsewhere it agrees with [`build`](Self::build).
    pub fn pendant_labeling(&self) -> Result<Labeling, FamilyError> {
        self.validate_for(Family::PendantCliques)?;
        let built = self.build()?;
        Ok(block_labeling(self.path_len, &built.attachments, true))
    }

    /// The same graph presented on a path that cannot be extended: when an
    /// end vertex carries a vertex join, the path continues into that clique and
    /// the rest of the clique becomes an edge join.
    pub fn centralize(&self) -> Result<GraphRecipe, FamilyError> {
        self.validate_for(Family::GeneralizedPendantCliques)?;
        let mut joins = self.effective_vertex_joins();
        let mut edges = self.edge_joins.clone();
        let mut r = self.path_len;
        if let Some(t) = take_first(&mut joins, 1) {
            joins = joins.into_iter().map(|(i, ts)| (i + 1, ts)).collect();
            edges = edges.into_iter().map(|(i, t)| (i + 1, t)).collect();
            if t >= 3 {
                edges.insert(1, t);
            }
            r += 1;
        }
        if let Some(t) = take_first(&mut joins, r) {
            if t >= 3 {
                edges.insert(r, t);
            }
            r += 1;
        }
        Ok(GraphRecipe { path_len: r, vertex_joins: joins, edge_joins: edges, whiskers: Vec::new(), clique_whiskers: BTreeMap::new() })
    }

    /// The recipe read along the reversed path.
    pub fn reversed(&self) -> GraphRecipe {
        let r = self.path_len;
        let mut whiskers: Vec<usize> = self.whiskers.iter().map(|&i| r + 1 - i).collect();
        whiskers.sort_unstable();
        GraphRecipe {
            path_len: r,
            vertex_joins: self.vertex_joins.iter().map(|(&i, ts)| (r + 1 - i, ts.clone())).collect(),
            edge_joins: self.edge_joins.iter().map(|(&i, &t)| (r - i, t)).collect(),
            whiskers,
            clique_whiskers: self.clique_whiskers.iter().map(|(&i, o)| (r - i, o.clone())).collect(),
        }
    }

    /// Sorted join lists, smaller of the two path orientations.
    pub fn canonical(&self) -> GraphRecipe {
        fn norm(r: &GraphRecipe) -> GraphRecipe {
            let mut r = r.clone();
            r.vertex_joins.retain(|_, ts| !ts.is_empty());
            r.vertex_joins.values_mut().for_each(|ts| ts.sort_unstable());
            r.whiskers.sort_unstable();
            r.clique_whiskers.retain(|_, o| !o.is_empty());
            r.clique_whiskers.values_mut().for_each(|o| o.sort_unstable());
            r
        }
        let a = norm(self);
        let b = norm(&self.reversed());
        a.min(b)
    }
}

fn take_first(joins: &mut BTreeMap<usize, Vec<usize>>, pos: usize) -> Option<usize> {
    let ts = joins.get_mut(&pos)?;
    if ts.is_empty() {
        return None;
    }
    let t = ts.remove(0);
    if ts.is_empty() {
        joins.remove(&pos);
    }
    Some(t)
}

fn block_labeling(r: usize, attachments: &[Attachment], first_clique_before: bool) -> Labeling {
    let n = r + attachments.iter().map(|a| a.members.len()).sum::<usize>();
    let mut sigma = vec![0; n];
    let mut next = 1;
    let mut assign = |v: Vertex, next: &mut usize| {
        sigma[v - 1] = *next;
        *next += 1;
    };
    let at_vertex = |pos: usize| attachments.iter().filter(move |a| matches!(a.at, Attach::Vertex { pos: p, .. } if p == pos));
    for pos in 1..=r {
        if pos == 1 && first_clique_before {
            for a in at_vertex(1) {
                a.members.iter().for_each(|&v| assign(v, &mut next));
            }
            assign(1, &mut next);
        } else {
            assign(pos, &mut next);
            for a in at_vertex(pos) {
                a.members.iter().for_each(|&v| assign(v, &mut next));
            }
        }
        for a in attachments {
            if let Attach::Edge { pos: p } = a.at {
                if p == pos {
                    a.members.iter().for_each(|&v| assign(v, &mut next));
                }
            }
        }
        for a in attachments {
            if let Attach::CliqueWhisker { pos: p, .. } = a.at {
                if p == pos {
                    a.members.iter().for_each(|&v| assign(v, &mut next));
                }
            }
        }
    }
    Labeling::new(sigma).expect("block labeling is a bijection")
}

/// A recipe recovered from a graph, with the explicit isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub family: Family,
    pub recipe: GraphRecipe,
    /// The central path as vertices of the input graph.
    pub central_path: Vec<Vertex>,
    /// `map[k - 1]` is the input vertex playing construction id `k`.
    pub map: Vec<Vertex>,
}

impl Recognition {
    /// Labeling of the input graph induced by the recipe's block labeling.
    pub fn labeling(&self) -> Result<Labeling, FamilyError> {
        let built = self.recipe.build()?;
        self.transport(&built.labeling)
    }

    /// Moves a labeling of construction ids onto the input vertices.
    pub fn transport(&self, construction: &Labeling) -> Result<Labeling, FamilyError> {
        let mut sigma = vec![0; self.map.len()];
        for (k, &v) in self.map.iter().enumerate() {
            sigma[v - 1] = construction.label(k + 1);
        }
        Ok(Labeling::new(sigma)?)
    }
}

/// Candidate paths of a block graph: the unique induced path between each
/// pair of vertices, oriented lexicographically, longest first.
fn candidate_paths(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut seen = BTreeSet::new();
    for a in 1..=n {
        let mut parent = vec![0; n + 1];
        let mut order = vec![a];
        let mut visited = VertexSet::singleton(a);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in g.neighbors(u) {
                if !visited.contains(w) {
                    visited.insert(w);
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        for b in 1..=n {
            if b == a || !visited.contains(b) {
                continue;
            }
            let mut p = vec![b];
            while *p.last().unwrap() != a {
                p.push(parent[*p.last().unwrap()]);
            }
            let rev: Vec<Vertex> = p.iter().rev().copied().collect();
            seen.insert(p.min(rev));
        }
        seen.insert(vec![a]);
    }
    let mut out: Vec<Vec<Vertex>> = seen.into_iter().collect();
    out.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
    out
}

/// Reads `g` as a clique-join construction on `path`, if possible.
fn decompose(g: &Graph, path: &[Vertex], family: Family) -> Option<Recognition> {
    let r = path.len();
    let on_path: VertexSet = path.iter().copied().collect();
    let pos_of = |v: Vertex| path.iter().position(|&p| p == v).map(|i| i + 1);
    let mut recipe = GraphRecipe::path(r);
    let mut members: BTreeMap<Attach, Vec<Vertex>> = BTreeMap::new();
    let mut whisker_leaves: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for comp in g.connected_components(on_path) {
        let mut nbrs = VertexSet::empty();
        for v in comp {
            nbrs = nbrs.union(g.neighbors(v));
        }
        let anchors: Vec<usize> = nbrs.intersection(on_path).iter().filter_map(pos_of).collect::<BTreeSet<_>>().into_iter().collect();
        match (anchors.as_slice(), family) {
            (&[i], Family::GeneralizedCaterpillar) => {
                if comp.len() != 1 {
                    return None;
                }
                whisker_leaves.entry(i).or_default().push(comp.min().unwrap());
            }
            (&[i], _) => {
                if !g.is_clique(comp.with(path[i - 1])) {
                    return None;
                }
                let ts = recipe.vertex_joins.entry(i).or_default();
                if family == Family::PendantCliques && !ts.is_empty() {
                    return None;
                }
                members.insert(Attach::Vertex { pos: i, k: ts.len() }, comp.to_vec());
                ts.push(comp.len() + 1);
            }
            (&[i, j], Family::GeneralizedPendantCliques) if j == i + 1 => {
                let base = VertexSet::singleton(path[i - 1]).with(path[j - 1]);
                if !g.is_clique(comp.union(base)) || recipe.edge_joins.contains_key(&i) {
                    return None;
                }
                recipe.edge_joins.insert(i, comp.len() + 2);
                members.insert(Attach::Edge { pos: i }, comp.to_vec());
            }
            (&[i, j], Family::GeneralizedCaterpillar) if j == i + 1 => {
                let (a, b) = (path[i - 1], path[j - 1]);
                let extras = comp.intersection(g.neighbors(a)).intersection(g.neighbors(b));
                let leaves = comp.difference(extras);
                if extras.is_empty() || !g.is_clique(extras.with(a).with(b)) || recipe.edge_joins.contains_key(&i) {
                    return None;
                }
                let xs = extras.to_vec();
                let mut offsets = Vec::new();
                let mut leaf_list = Vec::new();
                for l in leaves {
                    let nb = g.neighbors(l);
                    if nb.len() != 1 || !nb.is_subset(extras) {
                        return None;
                    }
                    offsets.push(xs.iter().position(|&x| nb.contains(x)).unwrap() + 1);
                    leaf_list.push(l);
                }
                recipe.edge_joins.insert(i, xs.len() + 2);
                members.insert(Attach::Edge { pos: i }, xs);
                if !offsets.is_empty() {
                    for (k, l) in leaf_list.into_iter().enumerate() {
                        members.insert(Attach::CliqueWhisker { pos: i, k }, vec![l]);
                    }
                    recipe.clique_whiskers.insert(i, offsets);
                }
            }
            _ => return None,
        }
    }
    for (i, leaves) in whisker_leaves {
        for (k, l) in leaves.into_iter().enumerate() {
            recipe.whiskers.push(i);
            members.insert(Attach::Vertex { pos: i, k }, vec![l]);
        }
    }
    recipe.validate_for(family).ok()?;
    let built = recipe.build().ok()?;
    let mut map = path.to_vec();
    for a in &built.attachments {
        let m = members.get(&a.at)?;
        if m.len() != a.members.len() {
            return None;
        }
        map.extend_from_slice(m);
    }
    verify_map(&built.graph, g, &map).then(|| Recognition { family, recipe, central_path: path.to_vec(), map })
}

/// `map` is a bijection carrying the edges of `built` exactly onto those of `g`.
fn verify_map(built: &Graph, g: &Graph, map: &[Vertex]) -> bool {
    if built.n() != g.n() || map.len() != g.n() || built.edge_count() != g.edge_count() {
        return false;
    }
    let image: VertexSet = map.iter().copied().collect();
    image == g.vertices() && built.edges().into_iter().all(|(a, b)| g.has_edge(map[a - 1], map[b - 1]))
}

/// Recognizes `g` in `family` along a longest valid path (ties broken by the
/// lexicographically smallest vertex sequence).
pub fn recognize(g: &Graph, family: Family) -> Option<Recognition> {
    if g.n() == 0 || !g.is_block_graph() {
        return None;
    }
    candidate_paths(g).into_iter().find_map(|p| decompose(g, &p, family))
}

/// All longest valid paths, one orientation each.
pub fn central_paths(g: &Graph, family: Family) -> Result<Vec<Vec<Vertex>>, FamilyError> {
    if g.n() == 0 || !g.is_block_graph() {
        return Err(FamilyError::NotInFamily(family.name()));
    }
    let mut best: Option<usize> = None;
    let mut out = Vec::new();
    for p in candidate_paths(g) {
        if best.is_some_and(|b| p.len() < b) {
            break;
        }
        if decompose(g, &p, family).is_some() {
            best = Some(p.len());
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(FamilyError::NotInFamily(family.name()));
    }
    Ok(out)
}

pub fn is_net_free_generalized_caterpillar(g: &Graph) -> bool {
    recognize(g, Family::GeneralizedCaterpillar).is_some() && g.contains_induced_net().is_none()
}

/// Every recipe of `family` with at most `max_n` vertices, path length at most
/// `max_path_len` and clique sizes at most `max_clique`. Whiskers on clique
/// vertices are limited to one per vertex.
pub fn enumerate_recipes(family: Family, max_n: usize, max_path_len: usize, max_clique: usize) -> Vec<GraphRecipe> {
    let mut out = Vec::new();
    for r in 1..=max_path_len.min(max_n) {
        let mut recipe = GraphRecipe::path(r);
        enum_vertices(family, &mut recipe, 1, max_n, max_clique, &mut out);
    }
    out
}

fn vertex_options(family: Family, budget: usize, max_clique: usize) -> Vec<Vec<usize>> {
    // Non-increasing lists of clique sizes whose extras fit in `budget`.
    fn go(max_t: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, single: bool) {
        out.push(cur.clone());
        if single && !cur.is_empty() {
            return;
        }
        for t in 2..=max_t {
            if t - 1 <= budget {
                cur.push(t);
                go(t, budget - (t - 1), cur, out, single);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    match family {
        Family::PendantCliques => go(max_clique, budget, &mut Vec::new(), &mut out, true),
        Family::GeneralizedPendantCliques => go(max_clique, budget, &mut Vec::new(), &mut out, false),
        Family::GeneralizedCaterpillar => go(2, budget, &mut Vec::new(), &mut out, false),
    }
    out
}

fn enum_vertices(family: Family, recipe: &mut GraphRecipe, pos: usize, max_n: usize, max_clique: usize, out: &mut Vec<GraphRecipe>) {
    if pos > recipe.path_len {
        enum_edges(family, recipe, 1, max_n, max_clique, out);
        return;
    }
    let budget = max_n - recipe.vertex_count();
    for ts in vertex_options(family, budget, max_clique) {
        if family == Family::GeneralizedCaterpillar {
            let before = recipe.whiskers.len();
            recipe.whiskers.extend(std::iter::repeat(pos).take(ts.len()));
            enum_vertices(family, recipe, pos + 1, max_n, max_clique, out);
            recipe.whiskers.truncate(before);
        } else {
            if !ts.is_empty() {
                recipe.vertex_joins.insert(pos, ts);
            }
            enum_vertices(family, recipe, pos + 1, max_n, max_clique, out);
            recipe.vertex_joins.remove(&pos);
        }
    }
}

fn enum_edges(family: Family, recipe: &mut GraphRecipe, pos: usize, max_n: usize, max_clique: usize, out: &mut Vec<GraphRecipe>) {
    if family == Family::PendantCliques || pos >= recipe.path_len {
        enum_clique_whiskers(family, recipe, 1, max_n, out);
        return;
    }
    enum_edges(family, recipe, pos + 1, max_n, max_clique, out);
    for t in 3..=max_clique {
        if recipe.vertex_count() + t - 2 > max_n {
            break;
        }
        recipe.edge_joins.insert(pos, t);
        enum_edges(family, recipe, pos + 1, max_n, max_clique, out);
        recipe.edge_joins.remove(&pos);
    }
}

fn enum_clique_whiskers(family: Family, recipe: &mut GraphRecipe, pos: usize, max_n: usize, out: &mut Vec<GraphRecipe>) {
    if family != Family::GeneralizedCaterpillar || pos >= recipe.path_len {
        out.push(recipe.clone());
        return;
    }
    let Some(&t) = recipe.edge_joins.get(&pos) else {
        enum_clique_whiskers(family, recipe, pos + 1, max_n, out);
        return;
    };
    // Each subset of the extras receives one whisker per chosen vertex.
    for mask in 0u32..(1 << (t - 2)) {
        if recipe.vertex_count() + mask.count_ones() as usize > max_n {
            continue;
        }
        let offs: Vec<usize> = (0..t - 2).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect();
        if !offs.is_empty() {
            recipe.clique_whiskers.insert(pos, offs);
        }
        enum_clique_whiskers(family, recipe, pos + 1, max_n, out);
        recipe.clique_whiskers.remove(&pos);
    }
}

/// A random recipe of `family` with at most `max_n` vertices.
pub fn random_recipe<R: Rng>(rng: &mut R, family: Family, max_n: usize, max_clique: usize) -> GraphRecipe {
    let r = rng.gen_range(1..=max_n.clamp(1, 8));
    let mut recipe = GraphRecipe::path(r);
    let attempts = rng.gen_range(0..=max_n);
    for _ in 0..attempts {
        let room = max_n - recipe.vertex_count();
        if room == 0 {
            break;
        }
        let mut candidate = recipe.clone();
        match (family, rng.gen_range(0..3)) {
            (Family::GeneralizedCaterpillar, 0) | (Family::GeneralizedCaterpillar, 1) if r > 1 => {
                let pos = rng.gen_range(1..r);
                candidate.edge_joins.insert(pos, rng.gen_range(3..=max_clique.max(3)));
            }
            (Family::GeneralizedCaterpillar, _) => {
                if rng.gen_bool(0.5) || candidate.edge_joins.is_empty() {
                    candidate.whiskers.push(rng.gen_range(1..=r));
                } else {
                    let keys: Vec<_> = candidate.edge_joins.iter().map(|(&i, &t)| (i, t)).collect();
                    let (i, t) = keys[rng.gen_range(0..keys.len())];
                    candidate.clique_whiskers.entry(i).or_default().push(rng.gen_range(1..=t - 2));
                }
            }
            (Family::GeneralizedPendantCliques, 0) if r > 1 => {
                let pos = rng.gen_range(1..r);
                candidate.edge_joins.insert(pos, rng.gen_range(3..=max_clique.max(3)));
            }
            (Family::PendantCliques, _) => {
                let pos = rng.gen_range(1..=r);
                candidate.vertex_joins.insert(pos, vec![rng.gen_range(2..=max_clique.max(2))]);
            }
            _ => {
                let pos = rng.gen_range(1..=r);
                candidate.vertex_joins.entry(pos).or_default().push(rng.gen_range(2..=max_clique.max(2)));
            }
        }
        if candidate.vertex_count() <= max_n && candidate.is_in(family) {
            recipe = candidate;
        }
    }
    recipe
}

/// Small named examples shipped as fixtures.
pub mod fixtures {
    use super::GraphRecipe;
    use crate::graph::{Graph, Vertex};
    use serde::Serialize;
    use std::collections::BTreeMap;

    #[derive(Clone, Debug, Serialize)]
    pub struct Fixture {
        pub name: &'static str,
        pub description: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        pub recipe: Option<GraphRecipe>,
        pub graph: Graph,
        #[serde(skip_serializing_if = "BTreeMap::is_empty")]
        pub vertex_names: BTreeMap<String, Vertex>,
    }

    pub const NAMES: [&str; 4] = ["generalized-caterpillar", "pendant-cliques", "generalized-pendant-cliques", "net"];

    /// Path of six; `K_4` on edge 2 with a whisker on one of its extras;
    /// `K_3` on edge 4; whiskers at positions 2, 4, 4.
    pub fn generalized_caterpillar() -> GraphRecipe {
        GraphRecipe::path(6)
            .with_edge_join(2, 4)
            .with_edge_join(4, 3)
            .with_whisker(2)
            .with_whisker(4)
            .with_whisker(4)
            .with_clique_whisker(2, 2)
    }

    /// Path of six; `K_3` at `v_1`, a whisker at `v_3`, `K_4` at `v_4`.
    pub fn pendant_cliques() -> GraphRecipe {
        GraphRecipe::path(6).with_vertex_join(1, 3).with_vertex_join(3, 2).with_vertex_join(4, 4)
    }

    /// Path `c,d,e,f,g`; cliques `{a,b,c}` and a `K_4` at `c`; two triangles
    /// at `e`; a `K_4` on `{c,d}` and a triangle on `{e,f}`.
    pub fn generalized_pendant_cliques() -> GraphRecipe {
        GraphRecipe::path(5)
            .with_vertex_join(1, 3)
            .with_vertex_join(1, 4)
            .with_vertex_join(3, 3)
            .with_vertex_join(3, 3)
            .with_edge_join(1, 4)
            .with_edge_join(3, 3)
    }

    pub fn get(name: &str) -> Option<Fixture> {
        let from_recipe = |name, description, recipe: GraphRecipe, names: &[(&str, Vertex)]| {
            let graph = recipe.build().expect("fixture recipe is valid").graph;
            Fixture {
                name,
                description,
                recipe: Some(recipe),
                graph,
                vertex_names: names.iter().map(|(s, v)| (s.to_string(), *v)).collect(),
            }
        };
        Some(match name {
            "generalized-caterpillar" => from_recipe(
                "generalized-caterpillar",
                "generalized caterpillar on 13 vertices with a whisker on a clique vertex",
                generalized_caterpillar(),
                &[],
            ),
            "pendant-cliques" => {
                from_recipe("pendant-cliques", "pendant cliques graph on 12 vertices", pendant_cliques(), &[])
            }
            "generalized-pendant-cliques" => from_recipe(
                "generalized-pendant-cliques",
                "generalized pendant cliques graph on 17 vertices",
                generalized_pendant_cliques(),
                &[("a", 6), ("b", 7), ("c", 1), ("d", 2), ("e", 3), ("f", 4), ("g", 5)],
            ),
            "net" => Fixture {
                name: "net",
                description: "triangle 1,2,3 with leaves 4,5,6",
                recipe: None,
                graph: Graph::net(),
                vertex_names: BTreeMap::new(),
            },
            _ => return None,
        })
    }

    pub fn all() -> Vec<Fixture> {
        NAMES.iter().map(|n| get(n).unwrap()).collect()
    }
}
