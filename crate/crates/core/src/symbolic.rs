//! Facet complexes of squarefree monomial ideals, special odd cycles, and
//! symbolic versus ordinary powers.
//!
//! For a squarefree monomial ideal `I` the `m`-th symbolic power is taken as
//! the intersection of `P^m` over the minimal monomial primes `P` of `I`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{degree_lex_cmp, Monomial, MonomialIdeal, VarNames};
use crate::families::{recognize, Family, FamilyError, GraphRecipe};
use crate::graph::Labeling;
use crate::groebner::initial_ideal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("generator {0} is not squarefree")]
    NotSquarefree(String),
    #[error("at most 128 variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("symbolic power needs m >= 1")]
    ZeroPower,
    #[error(transparent)]
    Family(#[from] FamilyError),
}

type Mask = u128;

fn mask_of(m: &Monomial) -> Mask {
    m.support().iter().fold(0, |acc, &i| acc | (1 << i))
}

fn bits(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn check_squarefree(i: &MonomialIdeal) -> Result<(), SymbolicError> {
    if i.nvars() > 128 {
        return Err(SymbolicError::TooManyVariables(i.nvars()));
    }
    if let Some(g) = i.generators().iter().find(|g| !g.is_squarefree()) {
        return Err(SymbolicError::NotSquarefree(VarNames::default_for(i.nvars()).render_monomial(g)));
    }
    Ok(())
}

/// `Δ(I)`: one facet per minimal generator, given by its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetComplex {
    nvars: usize,
    facets: Vec<Mask>,
}

impl FacetComplex {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| bits(f)).collect()
    }

    pub fn facet(&self, k: usize) -> Vec<usize> {
        bits(self.facets[k])
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Builds a complex from explicit facets; non-maximal sets are dropped.
    pub fn from_facets(nvars: usize, facets: &[Vec<usize>]) -> Result<Self, SymbolicError> {
        if nvars > 128 {
            return Err(SymbolicError::TooManyVariables(nvars));
        }
        let ideal = MonomialIdeal::new(nvars, facets.iter().map(|f| Monomial::from_support(nvars, f.iter().copied())));
        facet_complex(&ideal)
    }

    pub fn render(&self, names: &VarNames) -> Vec<String> {
        self.facets
            .iter()
            .map(|&f| format!("{{{}}}", bits(f).iter().map(|&i| names.name(i)).collect::<Vec<_>>().join(",")))
            .collect()
    }

    /// Adjacency of the 2-section: `u ~ v` when some facet contains both.
    fn two_section(&self) -> Vec<Mask> {
        let mut adj = vec![0; self.nvars];
        for &f in &self.facets {
            for v in bits(f) {
                adj[v] |= f & !(1 << v);
            }
        }
        adj
    }

    /// No facet meets `set` in more than two vertices.
    fn is_special_set(&self, set: Mask) -> bool {
        self.facets.iter().all(|&f| (f & set).count_ones() <= 2)
    }

    fn facet_containing(&self, a: usize, b: usize) -> Option<usize> {
        let pair = (1 << a) | (1 << b);
        self.facets.iter().position(|&f| f & pair == pair)
    }
}

pub fn facet_complex(i: &MonomialIdeal) -> Result<FacetComplex, SymbolicError> {
    check_squarefree(i)?;
    let facets: Vec<Mask> = i.generators().iter().map(mask_of).collect();
    debug_assert!(facets.iter().enumerate().all(|(a, &f)| facets.iter().enumerate().all(|(b, &g)| a == b || f & g != f)));
    Ok(FacetComplex { nvars: i.nvars(), facets })
}

/// Alternating sequence `v_1, F_1, ..., v_s, F_s` with `v_i, v_{i+1} ∈ F_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexCycle {
    pub vertices: Vec<usize>,
    /// Facet indices into the complex.
    pub facets: Vec<usize>,
}

impl ComplexCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks the cycle axioms and specialness against `delta`.
    pub fn is_valid_special(&self, delta: &FacetComplex) -> bool {
        let s = self.vertices.len();
        if s < 3 || self.facets.len() != s {
            return false;
        }
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        let mut fs = self.facets.clone();
        fs.sort_unstable();
        fs.dedup();
        if vs.len() != s || fs.len() != s || fs.iter().any(|&k| k >= delta.facets.len()) {
            return false;
        }
        let set: Mask = self.vertices.iter().fold(0, |acc, &v| acc | (1 << v));
        (0..s).all(|i| {
            let f = delta.facets[self.facets[i]];
            f >> self.vertices[i] & 1 == 1 && f >> self.vertices[(i + 1) % s] & 1 == 1
        }) && delta.is_special_set(set)
    }

    pub fn render(&self, delta: &FacetComplex, names: &VarNames) -> String {
        let mut parts = Vec::new();
        for (v, &k) in self.vertices.iter().zip(&self.facets) {
            parts.push(names.name(*v));
            let f: Vec<String> = delta.facet(k).iter().map(|&i| names.name(i)).collect();
            parts.push(format!("{{{}}}", f.join(",")));
        }
        parts.push(names.name(self.vertices[0]));
        parts.join(" ")
    }
}

/// Chordless special cycles of exactly `len` vertices whose least vertex is
/// `start`, in label order; `visit` returns `true` to stop.
fn chordless_special_cycles(delta: &FacetComplex, adj: &[Mask], len: usize, start: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(delta: &FacetComplex, adj: &[Mask], len: usize, path: &mut Vec<usize>, set: Mask, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        let higher = !((1u128 << start) | ((1u128 << start) - 1));
        let inner = set & !(1 << last) & !(1 << start);
        for w in bits(adj[last] & higher & !set) {
            if adj[w] & inner != 0 {
                continue;
            }
            let closes = adj[w] >> start & 1 == 1;
            let done = path.len() + 1 == len;
            if path.len() > 1 && closes != done {
                continue;
            }
            let next = set | (1 << w);
            if !delta.is_special_set(next) {
                continue;
            }
            path.push(w);
            let stop = if done { visit(path) } else { rec(delta, adj, len, path, next, visit) };
            path.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut path = vec![start];
    rec(delta, adj, len, &mut path, 1 << start, visit)
}

fn to_cycle(delta: &FacetComplex, vs: &[usize]) -> ComplexCycle {
    let s = vs.len();
    let facets = (0..s).map(|i| delta.facet_containing(vs[i], vs[(i + 1) % s]).expect("consecutive vertices share a facet")).collect();
    ComplexCycle { vertices: vs.to_vec(), facets }
}

/// A special odd cycle of least length, or `None`.
///
/// A shortest special odd cycle has no chord in the 2-section: a chord splits
/// it into a shorter odd special cycle. So the search runs over chordless
/// cycles by increasing odd length.
pub fn find_special_odd_cycle(delta: &FacetComplex) -> Option<ComplexCycle> {
    let adj = delta.two_section();
    let active: Vec<usize> = (0..delta.nvars).filter(|&v| adj[v] != 0).collect();
    let mut len = 3;
    while len <= active.len() {
        for &start in &active {
            let mut found = None;
            chordless_special_cycles(delta, &adj, len, start, &mut |p| {
                found = Some(to_cycle(delta, p));
                true
            });
            if found.is_some() {
                return found;
            }
        }
        len += 2;
    }
    None
}

/// Every chordless special cycle (either parity) with at most `max_len`
/// vertices, one per rotation and direction class.
pub fn special_cycles(delta: &FacetComplex, max_len: usize) -> Vec<ComplexCycle> {
    let adj = delta.two_section();
    let mut out = Vec::new();
    for len in 3..=max_len.min(delta.nvars) {
        for start in 0..delta.nvars {
            chordless_special_cycles(delta, &adj, len, start, &mut |p| {
                if p[1] < p[p.len() - 1] {
                    out.push(to_cycle(delta, p));
                }
                false
            });
        }
    }
    out
}

/// Minimal transversals of the facets, i.e. minimal monomial primes of `I`,
/// as sorted variable lists ordered by size and then lexicographically.
pub fn monomial_minimal_primes(i: &MonomialIdeal) -> Result<Vec<Vec<usize>>, SymbolicError> {
    check_squarefree(i)?;
    Ok(minimal_transversals(&facet_complex(i)?.facets).into_iter().map(bits).collect())
}

fn minimal_transversals(facets: &[Mask]) -> Vec<Mask> {
    let mut tr: Vec<Mask> = vec![0];
    for &f in facets {
        let mut next: Vec<Mask> = Vec::new();
        for &t in &tr {
            if t & f != 0 {
                next.push(t);
            } else {
                next.extend(bits(f).into_iter().map(|v| t | (1 << v)));
            }
        }
        next.sort_by_key(|m| (m.count_ones(), *m));
        next.dedup();
        let mut kept: Vec<Mask> = Vec::with_capacity(next.len());
        for m in next {
            if !kept.iter().any(|&k| k & m == k) {
                kept.push(m);
            }
        }
        tr = kept;
    }
    tr.sort_by_key(|m| (m.count_ones(), bits(*m)));
    tr
}

/// Minimal elements of `gens` under divisibility, in generator order.
fn minimal_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(degree_lex_cmp);
    gens.dedup();
    let mut kept: Vec<(Mask, Monomial)> = Vec::with_capacity(gens.len());
    for g in gens {
        let s = mask_of(&g);
        if !kept.iter().any(|(ks, k)| ks & s == *ks && k.divides(&g)) {
            kept.push((s, g));
        }
    }
    kept.into_iter().map(|(_, g)| g).collect()
}

/// Monomials of degree `d` in the variables `vars`.
fn monomials_of_degree(nvars: usize, vars: &[usize], d: u32) -> Vec<Vec<u32>> {
    fn rec(vars: &[usize], d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match vars.split_first() {
            None => {
                if d == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&v, rest)) => {
                for e in (0..=d).rev() {
                    cur[v] += e;
                    rec(rest, d - e, cur, out);
                    cur[v] -= e;
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut vec![0; nvars], &mut out);
    out
}

/// `J ∩ P^m` for a variable set `P`: generators of `J` short of `P`-degree
/// `m` are raised by every `P`-monomial of the missing degree.
fn intersect_prime_power(j: &[Monomial], nvars: usize, p: &[usize], m: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for u in j {
        let d: u32 = p.iter().map(|&v| u.exponent(v)).sum();
        if d >= m {
            out.push(u.clone());
        } else {
            for e in monomials_of_degree(nvars, p, m - d) {
                out.push(u.mul(&Monomial::from_exponents(e)));
            }
        }
    }
    minimal_monomials(out)
}

/// `I^(m)` as the intersection of `P^m` over minimal monomial primes `P`.
pub fn symbolic_power_monomial(i: &MonomialIdeal, m: u32) -> Result<MonomialIdeal, SymbolicError> {
    Ok(symbolic_powers_upto(i, m)?.pop().expect("m >= 1"))
}

/// `[I^(1), ..., I^(m)]`; each step starts from the previous one since
/// symbolic powers descend.
pub fn symbolic_powers_upto(i: &MonomialIdeal, m: u32) -> Result<Vec<MonomialIdeal>, SymbolicError> {
    if m == 0 {
        return Err(SymbolicError::ZeroPower);
    }
    let primes = monomial_minimal_primes(i)?;
    let nvars = i.nvars();
    let mut out = vec![i.clone()];
    for k in 2..=m {
        let mut gens = out.last().unwrap().generators().to_vec();
        for p in &primes {
            gens = intersect_prime_power(&gens, nvars, p, k);
        }
        out.push(MonomialIdeal::new(nvars, gens));
    }
    Ok(out)
}

/// Outcome of comparing `I^(t)` with `I^t` for `t <= t_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerComparison {
    pub t_max: u32,
    pub ok: bool,
    pub failing_t: Option<u32>,
    pub witness: Option<String>,
    #[serde(skip)]
    pub witness_monomial: Option<Monomial>,
}

pub fn powers_equal_monomial(i: &MonomialIdeal, t_max: u32) -> Result<PowerComparison, SymbolicError> {
    powers_equal_named(i, t_max, &VarNames::default_for(i.nvars()))
}

/// As [`powers_equal_monomial`], rendering the witness with `names`.
pub fn powers_equal_named(i: &MonomialIdeal, t_max: u32, names: &VarNames) -> Result<PowerComparison, SymbolicError> {
    if t_max == 0 {
        return Err(SymbolicError::ZeroPower);
    }
    let symbolic = symbolic_powers_upto(i, t_max)?;
    let failures: Vec<Option<Monomial>> = symbolic
        .par_iter()
        .enumerate()
        .map(|(k, s)| {
            let ordinary = i.power(k as u32 + 1).expect("t >= 1");
            assert!(s.contains_ideal(&ordinary), "ordinary power escapes the symbolic power");
            s.generators().iter().find(|g| !ordinary.contains(g)).cloned()
        })
        .collect();
    for (k, f) in failures.into_iter().enumerate() {
        if let Some(w) = f {
            let t = k as u32 + 1;
            return Ok(PowerComparison { t_max, ok: false, failing_t: Some(t), witness: Some(names.render_monomial(&w)), witness_monomial: Some(w) });
        }
    }
    Ok(PowerComparison { t_max, ok: true, failing_t: None, witness: None, witness_monomial: None })
}

/// Cycle witness in report form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub length: usize,
    pub vertices: Vec<String>,
    pub facets: Vec<String>,
    pub rendered: String,
}

impl CycleReport {
    pub fn new(c: &ComplexCycle, delta: &FacetComplex, names: &VarNames) -> Self {
        CycleReport {
            length: c.len(),
            vertices: c.vertices.iter().map(|&v| names.name(v)).collect(),
            facets: c.facets.iter().map(|&k| format!("{{{}}}", delta.facet(k).iter().map(|&i| names.name(i)).collect::<Vec<_>>().join(","))).collect(),
            rendered: c.render(delta, names),
        }
    }
}

/// Verdicts for the power-equality pipeline on a pendant cliques graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerEqualityReport {
    pub recipe: GraphRecipe,
    /// The recipe read along a central path of the built graph.
    pub central_recipe: GraphRecipe,
    /// `labels[v - 1]` is the label of construction vertex `v` of `central_recipe`.
    pub labels: Vec<usize>,
    pub initial_ideal: String,
    pub squarefree: bool,
    pub special_odd_cycle: Option<CycleReport>,
    pub power_equality: PowerComparison,
}

impl PowerEqualityReport {
    pub fn passed(&self) -> bool {
        self.squarefree && self.special_odd_cycle.is_none() && self.power_equality.ok
    }
}

/// Builds `G`, relabels it along a central path with the first clique labeled
/// before the path, and checks `in(J_G)` for squarefreeness, special odd
/// cycles and `in^(t) = in^t` for `t <= t_max`.
pub fn check_pendant_power_equality(recipe: &GraphRecipe, t_max: u32) -> Result<PowerEqualityReport, SymbolicError> {
    recipe.validate_for(Family::PendantCliques)?;
    let g = recipe.build()?.graph;
    let rec = recognize(&g, Family::PendantCliques).ok_or(FamilyError::NotInFamily(Family::PendantCliques.name()))?;
    let central = rec.recipe.canonical();
    let built = central.build()?;
    let labeling: Labeling = central.pendant_labeling()?;
    let lg = labeling.apply(&built.graph);
    let n = lg.n();
    let names = VarNames::binomial(n);
    let init = initial_ideal(&lg);
    let squarefree = init.is_squarefree();
    let (cycle, power_equality) = if squarefree {
        let delta = facet_complex(&init)?;
        let cycle = find_special_odd_cycle(&delta).map(|c| CycleReport::new(&c, &delta, &names));
        (cycle, powers_equal_named(&init, t_max, &names)?)
    } else {
        (None, PowerComparison { t_max, ok: false, failing_t: None, witness: None, witness_monomial: None })
    };
    Ok(PowerEqualityReport {
        recipe: recipe.clone(),
        central_recipe: central,
        labels: labeling.as_slice().to_vec(),
        initial_ideal: init.render(&names),
        squarefree,
        special_odd_cycle: cycle,
        power_equality,
    })
}
