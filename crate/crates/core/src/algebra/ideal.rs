use serde::{Deserialize, Serialize};

use super::{degree_lex_cmp, AlgebraError, Domain, Monomial, Polynomial, VarNames};
use crate::graph::{Graph, Vertex};

/// `f_{i,j}` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeBinomial {
    pub i: Vertex,
    pub j: Vertex,
}

impl EdgeBinomial {
    /// Orders the endpoints; `None` for a loop.
    pub fn new(a: Vertex, b: Vertex) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(EdgeBinomial { i: a, j: b }),
            std::cmp::Ordering::Greater => Some(EdgeBinomial { i: b, j: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn to_polynomial(self, n: usize, domain: Domain) -> Polynomial {
        Polynomial::edge_binomial(n, self.i, self.j, domain)
    }

    /// Leading monomial `x_i y_j`.
    pub fn leading_monomial(self, n: usize) -> Monomial {
        Monomial::x(n, self.i).mul(&Monomial::y(n, self.j))
    }
}

/// Monomial ideal given by its minimal generators, sorted by degree and then
/// lex-descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(degree_lex_cmp);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        MonomialIdeal { nvars, gens: minimalize(gens) }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    /// Ideal generated by the listed variables.
    pub fn variables(nvars: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        MonomialIdeal::new(nvars, indices.into_iter().map(|i| Monomial::var(nvars, i)))
    }

    /// The homogeneous maximal ideal.
    pub fn maximal(nvars: usize) -> Self {
        MonomialIdeal::variables(nvars, 0..nvars)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn power(&self, m: u32) -> Result<MonomialIdeal, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.product(self);
        }
        Ok(acc)
    }

    /// Intersection via pairwise least common multiples.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.nvars, gens)
    }

    /// `I^{[q]}`: the ideal of `q`-th powers of the generators.
    pub fn frobenius_power(&self, q: u64) -> Result<MonomialIdeal, AlgebraError> {
        if prime_power_base(q).is_none() {
            return Err(AlgebraError::NotPrimePower(q));
        }
        let q = u32::try_from(q).map_err(|_| AlgebraError::NotPrimePower(q))?;
        Ok(MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.pow(q))))
    }

    pub fn render(&self, names: &VarNames) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| names.render_monomial(g)).collect();
        format!("({})", parts.join(", "))
    }
}

/// `Some(p)` when `q = p^e` with `p` prime and `e >= 1`.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// Residue of `f` modulo `m^{[q]}` on the basis of monomials with all exponents
/// below `q`: drops every term that has an exponent `>= q`.
pub fn reduce_mod_frobenius(f: &Polynomial, q: u64) -> Result<Polynomial, AlgebraError> {
    let p = match f.domain() {
        Domain::ModP(p) => p,
        d => return Err(AlgebraError::NotModP(d)),
    };
    if prime_power_base(q) != Some(p as u64) {
        return Err(AlgebraError::WrongFrobeniusExponent { q, p });
    }
    Ok(f.filter_terms(|m| (m.max_exponent() as u64) < q))
}

/// Ideal presented by a list of nonzero polynomial generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdeal {
    nvars: usize,
    domain: Domain,
    gens: Vec<Polynomial>,
}

impl PolyIdeal {
    pub fn new(nvars: usize, domain: Domain, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars && g.domain() == domain));
        PolyIdeal { nvars, domain, gens }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn push(&mut self, g: Polynomial) {
        if !g.is_zero() {
            self.gens.push(g);
        }
    }

    /// All products of `h` generators, taken as multisets.
    pub fn power_generators(&self, h: usize) -> Vec<Polynomial> {
        fn go(gens: &[Polynomial], start: usize, left: usize, acc: &Polynomial, out: &mut Vec<Polynomial>) {
            if left == 0 {
                out.push(acc.clone());
                return;
            }
            for k in start..gens.len() {
                go(gens, k, left - 1, &(acc * &gens[k]), out);
            }
        }
        let mut out = Vec::new();
        go(&self.gens, 0, h, &Polynomial::one(self.nvars, self.domain), &mut out);
        out
    }

    pub fn render(&self, names: &VarNames) -> Vec<String> {
        self.gens.iter().map(|g| g.render(names)).collect()
    }
}

/// `J_G`: one generator `f_{i,j}` per edge, in sorted edge order.
pub fn binomial_edge_ideal(g: &Graph) -> PolyIdeal {
    binomial_edge_ideal_over(g, Domain::Rational)
}

pub fn binomial_edge_ideal_over(g: &Graph, domain: Domain) -> PolyIdeal {
    let n = g.n();
    PolyIdeal::new(
        2 * n,
        domain,
        g.edges().into_iter().map(|(i, j)| Polynomial::edge_binomial(n, i, j, domain)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_monomial, parse_polynomial};

    fn mono(s: &str, n: usize) -> Monomial {
        parse_monomial(s, &VarNames::binomial(n)).unwrap()
    }

    fn ideal(gens: &[&str], n: usize) -> MonomialIdeal {
        MonomialIdeal::new(2 * n, gens.iter().map(|s| mono(s, n)))
    }

    #[test]
    fn intersect_power_contains() {
        let n = 3;
        let names = VarNames::binomial(n);
        assert_eq!(ideal(&["x1"], n).intersect(&ideal(&["y1"], n)), ideal(&["x1*y1"], n));
        let sq = ideal(&["x1*y2", "x2*y3"], n).power(2).unwrap();
        assert_eq!(sq.render(&names), "(x1^2*y2^2, x1*x2*y2*y3, x2^2*y3^2)");
        assert!(ideal(&["x1*y2"], n).contains(&mono("x1^2*y2*y3", n)));
        assert!(ideal(&["x1"], n).power(0).is_err());
    }

    #[test]
    fn frobenius_powers() {
        let n = 2;
        let names = VarNames::binomial(n);
        let m = MonomialIdeal::maximal(4).frobenius_power(2).unwrap();
        assert_eq!(m.render(&names), "(x1^2, x2^2, y1^2, y2^2)");
        assert_eq!(ideal(&["x1*y2"], n).frobenius_power(3).unwrap(), ideal(&["x1^3*y2^3"], n));
        assert_eq!(ideal(&["x1", "x2"], n).frobenius_power(4).unwrap(), ideal(&["x1^4", "x2^4"], n));
        assert!(matches!(m.frobenius_power(6), Err(AlgebraError::NotPrimePower(6))));
    }

    #[test]
    fn frobenius_reduction() {
        let names = VarNames::binomial(2);
        let f = parse_polynomial("x1^2*y2^2 + x1*y1*x2*y2", &names, Domain::ModP(2)).unwrap();
        assert_eq!(reduce_mod_frobenius(&f, 2).unwrap().render(&names), "x1*y1*x2*y2");
        let g = parse_polynomial("y1^2*x2^2", &names, Domain::ModP(2)).unwrap();
        assert!(reduce_mod_frobenius(&g, 2).unwrap().is_zero());
        let f12 = Polynomial::edge_binomial(2, 1, 2, Domain::ModP(3));
        assert_eq!(reduce_mod_frobenius(&f12, 3).unwrap(), f12);
        let rat = Polynomial::edge_binomial(2, 1, 2, Domain::Rational);
        assert!(matches!(reduce_mod_frobenius(&rat, 2), Err(AlgebraError::NotModP(_))));
        assert!(reduce_mod_frobenius(&f12, 2).is_err());
    }

    #[test]
    fn edge_ideals() {
        let names = VarNames::binomial(3);
        assert_eq!(binomial_edge_ideal(&Graph::complete(2)).render(&VarNames::binomial(2)), ["x1*y2 - y1*x2"]);
        assert_eq!(binomial_edge_ideal(&Graph::path(3)).render(&names), ["x1*y2 - y1*x2", "x2*y3 - y2*x3"]);
        assert_eq!(
            binomial_edge_ideal(&Graph::complete(3)).render(&names),
            ["x1*y2 - y1*x2", "x1*y3 - y1*x3", "x2*y3 - y2*x3"]
        );
        assert_eq!(EdgeBinomial::new(3, 1), Some(EdgeBinomial { i: 1, j: 3 }));
        assert_eq!(EdgeBinomial::new(2, 2), None);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }
}
