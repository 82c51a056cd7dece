//! Minimal primes `p_U` of binomial edge ideals, heights, and the
//! component-count formula for generalized pendant cliques graphs.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Domain, Monomial, PolyIdeal, Polynomial};
use crate::families::{Built, FamilyError, GraphRecipe};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimesError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid cut set: {0}")]
    InvalidCutSet(String),
    #[error("path end v{0} carries a vertex join, so the path is not central")]
    NotCentral(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// `U` together with the components of `G - U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeComponent {
    #[serde(rename = "U")]
    pub u: VertexSet,
    pub components: Vec<VertexSet>,
    pub height: usize,
}

impl PrimeComponent {
    pub fn new(g: &Graph, u: VertexSet) -> Self {
        let components = g.connected_components(u);
        let height = u.len() + g.n() - components.len();
        PrimeComponent { u, components, height }
    }

    pub fn c(&self) -> usize {
        self.components.len()
    }
}

/// `p_U(G)`: the variables of `U` plus the binomial edge ideals of the
/// complete graphs on the components of `G - U`.
pub fn prime_pu(g: &Graph, u: VertexSet) -> (PrimeComponent, PolyIdeal) {
    prime_pu_over(g, u, Domain::Rational)
}

pub fn prime_pu_over(g: &Graph, u: VertexSet, domain: Domain) -> (PrimeComponent, PolyIdeal) {
    let n = g.n();
    let pc = PrimeComponent::new(g, u);
    let mut gens = Vec::new();
    for s in u {
        gens.push(Polynomial::monomial(Monomial::x(n, s), domain));
        gens.push(Polynomial::monomial(Monomial::y(n, s), domain));
    }
    for comp in &pc.components {
        let vs = comp.to_vec();
        for (a, &i) in vs.iter().enumerate() {
            for &j in &vs[a + 1..] {
                gens.push(Polynomial::edge_binomial(n, i, j, domain));
            }
        }
    }
    (pc, PolyIdeal::new(2 * n, domain, gens))
}

/// `|U| + n - c(U)`.
pub fn height(g: &Graph, u: VertexSet) -> usize {
    u.len() + g.n() - g.component_count(u)
}

/// `U = ∅`, or removing any single vertex of `U` from `U` lowers the component count.
pub fn is_minimal_prime(g: &Graph, u: VertexSet) -> Result<bool, PrimesError> {
    if !g.is_connected() {
        return Err(PrimesError::Disconnected);
    }
    Ok(minimal_condition(g, u))
}

fn minimal_condition(g: &Graph, u: VertexSet) -> bool {
    let c = g.component_count(u);
    u.iter().all(|i| g.component_count(u.without(i)) < c)
}

fn sort_key(p: &PrimeComponent) -> (usize, Vec<Vertex>) {
    (p.u.len(), p.u.to_vec())
}

fn subsets(base: VertexSet) -> Vec<VertexSet> {
    let vs = base.to_vec();
    (0u64..1 << vs.len())
        .map(|mask| vs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

fn filter_minimal(g: &Graph, candidates: Vec<VertexSet>) -> Vec<PrimeComponent> {
    let mut out: Vec<PrimeComponent> = candidates
        .into_par_iter()
        .filter(|&u| minimal_condition(g, u))
        .map(|u| PrimeComponent::new(g, u))
        .collect();
    out.sort_by_key(sort_key);
    out
}

/// All minimal primes, sorted by `(|U|, U)`. Only subsets of non-simplicial
/// vertices are searched: a simplicial vertex is never a cut point.
pub fn minimal_primes(g: &Graph) -> Result<Vec<PrimeComponent>, PrimesError> {
    if !g.is_connected() {
        return Err(PrimesError::Disconnected);
    }
    let out = filter_minimal(g, subsets(g.non_simplicial_vertices()));
    #[cfg(debug_assertions)]
    if g.n() <= 8 {
        debug_assert_eq!(out, minimal_primes_exhaustive(g)?);
    }
    Ok(out)
}

/// Minimal primes by filtering every subset of the vertex set.
pub fn minimal_primes_exhaustive(g: &Graph) -> Result<Vec<PrimeComponent>, PrimesError> {
    if !g.is_connected() {
        return Err(PrimesError::Disconnected);
    }
    Ok(filter_minimal(g, subsets(g.vertices())))
}

/// Quantities entering the component-count formula for a cut set
/// `s_1 < .. < s_m` (labels).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaLedger {
    pub s: Vec<Vertex>,
    /// Number of cliques joined via each `s_i`.
    pub p: Vec<usize>,
    /// Number of vertices joined via each `s_i`.
    pub gamma: Vec<usize>,
    /// `alpha_0..alpha_m`.
    pub alpha: Vec<u8>,
}

impl GammaLedger {
    pub fn count(&self) -> usize {
        self.alpha.iter().map(|&a| a as usize).sum::<usize>() + self.p.iter().sum::<usize>()
    }
}

/// Checks that `s` is a strictly increasing list of labeled path vertices
/// avoiding `1` and `n`, on a path whose ends carry no vertex joins.
fn check_cut_set(built: &Built, s: &[Vertex]) -> Result<Vec<usize>, PrimesError> {
    let n = built.n();
    let path = built.labeled_path();
    let cliques = built.labeled_vertex_cliques();
    let r = path.len();
    if !cliques[0].is_empty() {
        return Err(PrimesError::NotCentral(1));
    }
    if r > 1 && !cliques[r - 1].is_empty() {
        return Err(PrimesError::NotCentral(r));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PrimesError::InvalidCutSet(format!("{s:?} is not strictly increasing")));
    }
    s.iter()
        .map(|&v| {
            if v == 1 || v == n {
                return Err(PrimesError::InvalidCutSet(format!("{v} is an end label")));
            }
            path.iter()
                .position(|&p| p == v)
                .ok_or_else(|| PrimesError::InvalidCutSet(format!("{v} is not on the central path")))
        })
        .collect()
}

fn ledger(built: &Built, s: &[Vertex]) -> Result<GammaLedger, PrimesError> {
    let positions = check_cut_set(built, s)?;
    let cliques = built.labeled_vertex_cliques();
    let p: Vec<usize> = positions.iter().map(|&k| cliques[k].len()).collect();
    let gamma: Vec<usize> = positions.iter().map(|&k| cliques[k].iter().map(Vec::len).sum()).collect();
    let m = s.len();
    let mut alpha = vec![1u8; m + 1];
    for i in 1..m {
        // Interval [s_i + gamma_i + 1, s_{i+1} - 1] in 1-based cut indices.
        alpha[i] = u8::from(s[i - 1] + gamma[i - 1] + 1 < s[i]);
    }
    Ok(GammaLedger { s: s.to_vec(), p, gamma, alpha })
}

/// `c(S) = Σ alpha_i + Σ p(s_i)` for a cut set given in the block labeling of
/// `recipe`.
pub fn count_components_formula(recipe: &GraphRecipe, s: &[Vertex]) -> Result<(usize, GammaLedger), PrimesError> {
    let built = recipe.build()?;
    let l = ledger(&built, s)?;
    Ok((l.count(), l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ComponentTag {
    C1,
    C2,
    C3,
    C4,
}

/// A component of `G - S` and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaggedComponent {
    pub tag: ComponentTag,
    /// `[a, b]` for interval components.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<(Vertex, Vertex)>,
    /// The cut vertex a clique remainder was joined at.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique_at: Option<Vertex>,
    pub vertices: VertexSet,
}

fn interval(a: Vertex, b: Vertex) -> VertexSet {
    (a..=b).collect()
}

/// Components of `G - S` (labels) classified as the first interval (C1), the
/// intervals between cut vertices (C2), clique remainders at cut vertices
/// (C3) and the last interval (C4). Fails if the union disagrees with a direct
/// search.
pub fn components_c1_to_c4(recipe: &GraphRecipe, s: &[Vertex]) -> Result<Vec<TaggedComponent>, PrimesError> {
    if s.is_empty() {
        return Err(PrimesError::InvalidCutSet("empty cut set".into()));
    }
    let built = recipe.build()?;
    let l = ledger(&built, s)?;
    let positions = check_cut_set(&built, s)?;
    let cliques = built.labeled_vertex_cliques();
    let n = built.n();
    let m = s.len();
    let mut out = vec![TaggedComponent {
        tag: ComponentTag::C1,
        interval: Some((1, s[0] - 1)),
        clique_at: None,
        vertices: interval(1, s[0] - 1),
    }];
    for i in 0..m {
        for clique in &cliques[positions[i]] {
            out.push(TaggedComponent {
                tag: ComponentTag::C3,
                interval: None,
                clique_at: Some(s[i]),
                vertices: clique.iter().copied().collect(),
            });
        }
        let lo = s[i] + l.gamma[i] + 1;
        if i + 1 < m {
            if lo < s[i + 1] {
                out.push(TaggedComponent {
                    tag: ComponentTag::C2,
                    interval: Some((lo, s[i + 1] - 1)),
                    clique_at: None,
                    vertices: interval(lo, s[i + 1] - 1),
                });
            }
        } else {
            out.push(TaggedComponent { tag: ComponentTag::C4, interval: Some((lo, n)), clique_at: None, vertices: interval(lo, n) });
        }
    }
    let g = built.labeled_graph();
    let removed: VertexSet = s.iter().copied().collect();
    let mut direct = g.connected_components(removed);
    let mut ours: Vec<VertexSet> = out.iter().map(|c| c.vertices).collect();
    direct.sort();
    ours.sort();
    if direct != ours {
        return Err(PrimesError::Inconsistent(format!("tagged components {ours:?} differ from search {direct:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarNames;

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn prime_ideals_of_paths() {
        let (_, p) = prime_pu(&Graph::path(3), VertexSet::empty());
        assert_eq!(p.render(&VarNames::binomial(3)), ["x1*y2 - y1*x2", "x1*y3 - y1*x3", "x2*y3 - y2*x3"]);
        let (pc, p) = prime_pu(&Graph::path(3), set(&[2]));
        assert_eq!(p.render(&VarNames::binomial(3)), ["x2", "y2"]);
        assert_eq!(pc.c(), 2);
        let (_, p) = prime_pu(&Graph::path(4), set(&[2]));
        assert_eq!(p.render(&VarNames::binomial(4)), ["x2", "y2", "x3*y4 - y3*x4"]);
    }

    #[test]
    fn minimality() {
        let p3 = Graph::path(3);
        assert!(is_minimal_prime(&p3, set(&[2])).unwrap());
        assert!(!is_minimal_prime(&p3, set(&[1])).unwrap());
        assert!(is_minimal_prime(&Graph::complete(4), VertexSet::empty()).unwrap());
        let disconnected = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(is_minimal_prime(&disconnected, VertexSet::empty()), Err(PrimesError::Disconnected));
    }

    #[test]
    fn minimal_prime_lists() {
        let us = |g: &Graph| minimal_primes(g).unwrap().into_iter().map(|p| p.u.to_vec()).collect::<Vec<_>>();
        assert_eq!(us(&Graph::complete(5)), vec![Vec::<Vertex>::new()]);
        assert_eq!(us(&Graph::path(3)), vec![vec![], vec![2]]);
        assert_eq!(us(&Graph::path(4)), vec![vec![], vec![2], vec![3]]);
    }

    #[test]
    fn heights() {
        assert_eq!(height(&Graph::complete(5), VertexSet::empty()), 4);
        assert_eq!(height(&Graph::path(4), set(&[2])), 3);
        assert_eq!(height(&Graph::path(4), set(&[2, 3])), 4);
    }

    #[test]
    fn formula_examples() {
        let recipe = GraphRecipe::path(5).with_vertex_join(2, 3).with_vertex_join(4, 2);
        let (c, l) = count_components_formula(&recipe, &[2, 6]).unwrap();
        assert_eq!(c, 5);
        assert_eq!(l.alpha, vec![1, 1, 1]);
        assert_eq!(l.p, vec![1, 1]);
        assert_eq!(l.gamma, vec![2, 1]);
        let (c, l) = count_components_formula(&GraphRecipe::path(5), &[2, 4]).unwrap();
        assert_eq!((c, l.alpha), (3, vec![1, 1, 1]));
        assert_eq!(count_components_formula(&GraphRecipe::path(3), &[2]).unwrap().0, 2);
        assert!(count_components_formula(&GraphRecipe::path(3), &[1]).is_err());
        assert!(count_components_formula(&recipe, &[3]).is_err());
        let noncentral = GraphRecipe::path(3).with_vertex_join(3, 3);
        assert_eq!(count_components_formula(&noncentral, &[2]), Err(PrimesError::NotCentral(3)));
    }

    #[test]
    fn tagged_components() {
        let recipe = GraphRecipe::path(5).with_vertex_join(2, 3).with_vertex_join(4, 2);
        let comps = components_c1_to_c4(&recipe, &[2, 6]).unwrap();
        let show: Vec<(ComponentTag, Vec<Vertex>)> = comps.iter().map(|c| (c.tag, c.vertices.to_vec())).collect();
        assert_eq!(
            show,
            vec![
                (ComponentTag::C1, vec![1]),
                (ComponentTag::C3, vec![3, 4]),
                (ComponentTag::C2, vec![5]),
                (ComponentTag::C3, vec![7]),
                (ComponentTag::C4, vec![8]),
            ]
        );
        let comps = components_c1_to_c4(&GraphRecipe::path(5), &[2]).unwrap();
        assert_eq!(comps[1].interval, Some((3, 5)));
        // Adjacent cut vertices leave no middle interval.
        let comps = components_c1_to_c4(&GraphRecipe::path(5), &[2, 3]).unwrap();
        assert!(comps.iter().all(|c| c.tag != ComponentTag::C2));
        assert_eq!(count_components_formula(&GraphRecipe::path(5), &[2, 3]).unwrap().1.alpha, vec![1, 0, 1]);
    }
}
