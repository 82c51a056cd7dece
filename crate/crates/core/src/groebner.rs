//! The admissible-path Gröbner basis of a binomial edge ideal, its lex
//! initial ideal, and a small Buchberger engine used as an independent check.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{degree_lex_cmp, AlgebraError, Domain, Monomial, MonomialIdeal, PolyIdeal, Polynomial, VarNames};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("oracle budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("polynomials are not homogeneous for the vertex grading")]
    NotHomogeneous,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A path `i = a_0, a_1, .., a_r = j` with `i < j` whose interior lies outside
/// `[i, j]` and which has no chord.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdmissiblePath {
    pub i: Vertex,
    pub j: Vertex,
    pub interior: Vec<Vertex>,
}

impl AdmissiblePath {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v = vec![self.i];
        v.extend(&self.interior);
        v.push(self.j);
        v
    }

    /// `u_pi`: `x_k` for interior `k > j`, `y_k` for interior `k < i`.
    pub fn u_pi(&self, n: usize) -> Monomial {
        let mut m = Monomial::one(2 * n);
        for &k in &self.interior {
            let v = if k > self.j { Monomial::x(n, k) } else { Monomial::y(n, k) };
            m = m.mul(&v);
        }
        m
    }

    /// `u_pi * f_{i,j}`.
    pub fn basis_element(&self, n: usize, domain: Domain) -> Polynomial {
        Polynomial::edge_binomial(n, self.i, self.j, domain).mul_term(&self.u_pi(n), &BigRational::one())
    }

    /// Leading monomial `u_pi x_i y_j`.
    pub fn leading_monomial(&self, n: usize) -> Monomial {
        self.u_pi(n).mul(&Monomial::x(n, self.i)).mul(&Monomial::y(n, self.j))
    }
}

/// All admissible paths, sorted by `(i, j, interior)`.
///
/// Depth-first search over chordless paths from each `i`; a chordless path is
/// exactly one in which no proper subsequence of the interior still connects
/// the endpoints.
pub fn enumerate_admissible_paths(g: &Graph) -> Vec<AdmissiblePath> {
    fn dfs(g: &Graph, path: &mut Vec<Vertex>, used: VertexSet, bound: Vertex, out: &mut Vec<AdmissiblePath>) {
        let i = path[0];
        let last = *path.last().unwrap();
        let earlier = used.without(last);
        for w in g.neighbors(last).difference(used) {
            if !g.neighbors(w).intersection(earlier).is_empty() {
                continue;
            }
            if w > i && w < bound {
                out.push(AdmissiblePath { i, j: w, interior: path[1..].to_vec() });
            }
            let next_bound = if w > i { bound.min(w) } else { bound };
            // Extending beyond w needs some j with i < j < next_bound.
            if next_bound > i + 1 {
                path.push(w);
                dfs(g, path, used.with(w), next_bound, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for i in 1..=g.n() {
        dfs(g, &mut vec![i], VertexSet::singleton(i), usize::MAX, &mut out);
    }
    out.sort();
    out
}

/// A Gröbner basis in the fixed lex order, sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub nvars: usize,
    pub elements: Vec<Polynomial>,
    pub reduced: bool,
}

impl GroebnerBasis {
    fn new(nvars: usize, mut elements: Vec<Polynomial>, reduced: bool) -> Self {
        elements.sort_by(|a, b| {
            degree_lex_cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()).then_with(|| b.cmp_terms(a))
        });
        GroebnerBasis { nvars, elements, reduced }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|e| e.leading_monomial().unwrap().clone()).collect()
    }

    /// No term of any element is divisible by the leading monomial of another,
    /// and all leading coefficients are one.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.elements.iter().enumerate().all(|(a, e)| {
            e.leading_term().is_some_and(|(_, c)| c.is_one())
                && e.terms().all(|(m, _)| lms.iter().enumerate().all(|(b, lm)| a == b || !lm.divides(m)))
        })
    }

    pub fn render(&self, names: &VarNames) -> Vec<String> {
        self.elements.iter().map(|e| e.render(names)).collect()
    }

    /// Normal form of `f` with respect to this basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

impl Polynomial {
    fn cmp_terms(&self, other: &Polynomial) -> std::cmp::Ordering {
        self.terms().map(|(m, _)| m).cmp(other.terms().map(|(m, _)| m))
    }
}

/// `{u_pi f_{i,j}}` over all admissible paths of `g`, over the rationals.
pub fn groebner_basis_edge(g: &Graph) -> GroebnerBasis {
    let n = g.n();
    let elements = enumerate_admissible_paths(g).iter().map(|p| p.basis_element(n, Domain::Rational)).collect();
    GroebnerBasis::new(2 * n, elements, true)
}

/// Minimal generators `u_pi x_i y_j` of the lex initial ideal.
pub fn initial_ideal(g: &Graph) -> MonomialIdeal {
    let n = g.n();
    MonomialIdeal::new(2 * n, enumerate_admissible_paths(g).iter().map(|p| p.leading_monomial(n)))
}

/// Multivariate division remainder.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let domain = f.domain();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.nvars(), domain);
    let leads: Vec<(&Monomial, BigRational)> = basis
        .iter()
        .filter_map(|b| b.leading_term().map(|(m, c)| (m, domain.inverse(c))))
        .collect();
    while let Some((m, c)) = p.pop_leading() {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let (lm, inv) = &leads[k];
                let shift = lm.quotient_of(&m).unwrap();
                let coeff = -(&c * inv);
                // The leading term cancels against the popped one.
                let mut tail = basis[k].clone();
                tail.pop_leading();
                p.add_scaled(&tail, &coeff, &shift);
            }
            None => rem.add_term(m, c),
        }
    }
    rem
}

/// Resource caps for the Buchberger oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 200_000, max_basis: 5_000, max_terms: 200_000 }
    }
}

fn s_polynomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (ma, ca) = a.leading_term().unwrap();
    let (mb, cb) = b.leading_term().unwrap();
    let l = ma.lcm(mb);
    let d = a.domain();
    let mut s = a.mul_term(&ma.quotient_of(&l).unwrap(), &d.inverse(ca));
    s.add_scaled(b, &-d.inverse(cb), &mb.quotient_of(&l).unwrap());
    s
}

/// Reduced Gröbner basis of `ideal` in lex order (normal selection strategy,
/// coprime leading monomials skipped).
pub fn buchberger(ideal: &PolyIdeal, budget: Budget) -> Result<GroebnerBasis, GroebnerError> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in ideal.generators() {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let push_pairs = |basis: &[Polynomial], k: usize, pairs: &mut BTreeSet<(Monomial, usize, usize)>| {
        let lk = basis[k].leading_monomial().unwrap();
        for (a, b) in basis.iter().enumerate().take(k) {
            let la = b.leading_monomial().unwrap();
            if !la.is_coprime(lk) {
                pairs.insert((la.lcm(lk), a, k));
            }
        }
    };
    for k in 0..basis.len() {
        push_pairs(&basis, k, &mut pairs);
    }
    let mut processed = 0;
    // Smallest lcm first.
    while let Some((_, a, b)) = pairs.pop_first() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(GroebnerError::BudgetExhausted(format!("more than {} S-pairs", budget.max_pairs)));
        }
        let r = normal_form(&s_polynomial(&basis[a], &basis[b]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.num_terms() > budget.max_terms {
            return Err(GroebnerError::BudgetExhausted(format!("remainder with {} terms", r.num_terms())));
        }
        basis.push(r.monic());
        if basis.len() > budget.max_basis {
            return Err(GroebnerError::BudgetExhausted(format!("basis larger than {}", budget.max_basis)));
        }
        push_pairs(&basis, basis.len() - 1, &mut pairs);
    }
    Ok(GroebnerBasis::new(ideal.nvars(), inter_reduce(basis), true))
}

/// Minimalizes by leading monomial, then reduces every element by the others.
fn inter_reduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| degree_lex_cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, p)| p.clone()).collect();
            let mut g = minimal[k].clone();
            let (lm, lc) = g.pop_leading().unwrap();
            let mut out = normal_form(&g, &others);
            out.add_term(lm, lc);
            out.monic()
        })
        .collect()
}

/// Membership via the normal form against a Buchberger basis of `gens`.
pub fn ideal_member(f: &Polynomial, gens: &PolyIdeal, budget: Budget) -> Result<bool, GroebnerError> {
    Ok(buchberger(gens, budget)?.contains(f))
}

/// Multidegree of a monomial in the ring on `n` vertices: the degree in each
/// vertex pair `(x_v, y_v)`, followed by the total `x`-degree.
pub fn vertex_multidegree(m: &Monomial, n: usize) -> Vec<u32> {
    let e = m.exponents();
    let mut d: Vec<u32> = (0..n).map(|v| e[v] + e[n + v]).collect();
    d.push(e[..n].iter().sum());
    d
}

fn homogeneous_degree(p: &Polynomial, n: usize) -> Option<Vec<u32>> {
    let mut it = p.terms().map(|(m, _)| vertex_multidegree(m, n));
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

/// Caps for [`power_member`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearBudget {
    pub max_products: usize,
    pub max_rows: usize,
}

impl Default for LinearBudget {
    fn default() -> Self {
        LinearBudget { max_products: 2_000_000, max_rows: 5_000_000 }
    }
}

/// Decides `f ∈ I^h` for an ideal `I` generated by polynomials homogeneous in
/// the vertex multidegree. The homogeneous component of `I^h` in the degree of
/// `f` is spanned by `m * g` with `g` a product of `h` generators and `m` a
/// monomial; `f` is tested against that span by exact row reduction.
pub fn power_member(f: &Polynomial, ideal: &PolyIdeal, h: usize, budget: LinearBudget) -> Result<bool, GroebnerError> {
    if f.is_zero() {
        return Ok(true);
    }
    let nvars = f.nvars();
    let n = nvars / 2;
    if h == 0 {
        return Ok(true);
    }
    let target = homogeneous_degree(f, n).ok_or(GroebnerError::NotHomogeneous)?;
    let mut gens = Vec::new();
    for g in ideal.generators() {
        let d = homogeneous_degree(g, n).ok_or(GroebnerError::NotHomogeneous)?;
        if d.iter().zip(&target).all(|(a, b)| a <= b) {
            gens.push((g.clone(), d));
        }
    }

    // Products of h generators (as multisets) whose degree fits under the target.
    let mut products = Vec::new();
    fn go(
        gens: &[(Polynomial, Vec<u32>)],
        start: usize,
        left: usize,
        acc: (Polynomial, Vec<u32>),
        target: &[u32],
        out: &mut Vec<(Polynomial, Vec<u32>)>,
        cap: usize,
    ) -> bool {
        if left == 0 {
            out.push(acc);
            return out.len() <= cap;
        }
        for k in start..gens.len() {
            let d: Vec<u32> = acc.1.iter().zip(&gens[k].1).map(|(a, b)| a + b).collect();
            if d.iter().zip(target).all(|(a, b)| a <= b) && !go(gens, k, left - 1, (&acc.0 * &gens[k].0, d), target, out, cap) {
                return false;
            }
        }
        true
    }
    let one = (Polynomial::one(nvars, f.domain()), vec![0; n + 1]);
    if !go(&gens, 0, h, one, &target, &mut products, budget.max_products) {
        return Err(GroebnerError::BudgetExhausted(format!("more than {} generator products", budget.max_products)));
    }

    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    let mut col = |m: &Monomial, columns: &mut HashMap<Monomial, usize>| {
        let k = columns.len();
        *columns.entry(m.clone()).or_insert(k)
    };
    let mut echelon = Echelon::default();
    let mut rem = to_row(f, &mut columns, &mut col);
    echelon.reduce(&mut rem);
    let mut rows = 0;
    for (g, d) in &products {
        let gap: Vec<u32> = target.iter().zip(d).map(|(a, b)| a - b).collect();
        for m in monomials_of_degree(n, &gap) {
            rows += 1;
            if rows > budget.max_rows {
                return Err(GroebnerError::BudgetExhausted(format!("more than {} rows", budget.max_rows)));
            }
            let p = g.mul_term(&m, &BigRational::one());
            let mut row = to_row(&p, &mut columns, &mut col);
            echelon.reduce(&mut row);
            if let Some(&lead) = row.keys().next() {
                echelon.insert(lead, row);
                echelon.reduce(&mut rem);
                if rem.is_empty() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(rem.is_empty())
}

type Row = std::collections::BTreeMap<usize, BigRational>;

fn to_row(p: &Polynomial, columns: &mut HashMap<Monomial, usize>, col: &mut impl FnMut(&Monomial, &mut HashMap<Monomial, usize>) -> usize) -> Row {
    p.terms().map(|(m, c)| (col(m, columns), c.clone())).collect()
}

#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, Row>,
}

impl Echelon {
    fn reduce(&self, row: &mut Row) {
        let mut cursor = 0;
        while let Some((&c, v)) = row.range(cursor..).next() {
            let v = v.clone();
            if let Some(p) = self.pivots.get(&c) {
                for (&k, w) in p {
                    let e = row.entry(k).or_insert_with(BigRational::zero);
                    *e -= &v * w;
                    if e.is_zero() {
                        row.remove(&k);
                    }
                }
            }
            cursor = c + 1;
        }
    }

    fn insert(&mut self, lead: usize, mut row: Row) {
        let inv = row[&lead].recip();
        row.values_mut().for_each(|v| *v *= &inv);
        self.pivots.insert(lead, row);
    }
}

/// Monomials with the given vertex multidegree (last entry: `x`-degree).
fn monomials_of_degree(n: usize, deg: &[u32]) -> Vec<Monomial> {
    fn go(n: usize, v: usize, deg: &[u32], xleft: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v == n {
            if xleft == 0 {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        let rest: u32 = deg[v + 1..n].iter().sum();
        for a in 0..=deg[v].min(xleft) {
            if xleft - a > rest {
                continue;
            }
            exps[v] = a;
            exps[n + v] = deg[v] - a;
            go(n, v + 1, deg, xleft - a, exps, out);
        }
        exps[v] = 0;
        exps[n + v] = 0;
    }
    let mut out = Vec::new();
    go(n, 0, deg, deg[n], &mut vec![0; 2 * n], &mut out);
    out
}
