use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraError, Monomial, VarNames};

/// Coefficient field of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    Rational,
    ModP(u32),
}

impl Domain {
    /// `ModP(p)` after checking that `p` is prime.
    pub fn mod_p(p: u32) -> Result<Domain, AlgebraError> {
        if is_prime(p) {
            Ok(Domain::ModP(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Domain::Rational => 0,
            Domain::ModP(p) => p,
        }
    }

    /// Canonical representative: unchanged over the rationals, the residue in
    /// `0..p` modulo `p`.
    pub fn normalize(self, c: &BigRational) -> BigRational {
        match self {
            Domain::Rational => c.clone(),
            Domain::ModP(p) => {
                let p = BigInt::from(p);
                let num = c.numer().mod_floor_pos(&p);
                let den = c.denom().mod_floor_pos(&p);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = den.modpow(&(&p - 2u32), &p);
                BigRational::from_integer((num * inv) % &p)
            }
        }
    }

    pub fn inverse(self, c: &BigRational) -> BigRational {
        match self {
            Domain::Rational => c.recip(),
            Domain::ModP(_) => self.normalize(&c.recip()),
        }
    }
}

trait ModFloorPos {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt;
}

impl ModFloorPos for BigInt {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| p % d != 0)
}

/// Sparse polynomial with exact coefficients, stored in lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    domain: Domain,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize, domain: Domain) -> Self {
        Polynomial { nvars, domain, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, domain: Domain) -> Self {
        Polynomial::term(Monomial::one(nvars), BigRational::one(), domain)
    }

    pub fn term(m: Monomial, c: BigRational, domain: Domain) -> Self {
        let mut p = Polynomial::zero(m.nvars(), domain);
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial, domain: Domain) -> Self {
        Polynomial::term(m, BigRational::one(), domain)
    }

    /// `f_{i,j} = x_i y_j - y_i x_j` in the ring on `n` vertices.
    pub fn edge_binomial(n: usize, i: usize, j: usize, domain: Domain) -> Self {
        let mut p = Polynomial::zero(2 * n, domain);
        p.add_term(Monomial::x(n, i).mul(&Monomial::y(n, j)), BigRational::one());
        p.add_term(Monomial::y(n, i).mul(&Monomial::x(n, j)), -BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the lex-largest down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous_by(&self, weight: impl Fn(&Monomial) -> Vec<u64>) -> bool {
        let mut it = self.terms.keys().map(weight);
        match it.next() {
            None => true,
            Some(first) => it.all(|w| w == first),
        }
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        let c = self.domain.normalize(&c);
        if c.is_zero() {
            return;
        }
        let domain = self.domain;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = domain.normalize(&(e.get() + c));
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, BigRational)> {
        self.terms.pop_last()
    }

    /// `self += c * m * g` in place.
    pub fn add_scaled(&mut self, g: &Polynomial, c: &BigRational, m: &Monomial) {
        for (n, d) in &g.terms {
            self.add_term(n.mul(m), d * c);
        }
    }

    fn check(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch(self.domain, other.domain));
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::VariableCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars, self.domain);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.nvars, self.domain);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars, self.domain);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        result
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars, self.domain);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars, self.domain);
        for (n, d) in &self.terms {
            out.add_term(n.mul(m), d * c);
        }
        out
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.domain.inverse(c)),
        }
    }

    /// Drops every term for which `keep` returns false.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            domain: self.domain,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Reinterprets integer coefficients modulo `p`.
    pub fn to_domain(&self, domain: Domain) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars, domain);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn render(&self, names: &VarNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = names.render_monomial(m);
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&VarNames::default_for(self.nvars)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{:?}]", self.domain)
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(self, rhs).expect("polynomials over the same ring")
            }
        }
    };
}

forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn q(s: &str) -> Polynomial {
        parse_polynomial(s, &VarNames::binomial(3), Domain::Rational).unwrap()
    }

    #[test]
    fn binomial_square_over_q() {
        let f = Polynomial::edge_binomial(3, 1, 2, Domain::Rational);
        assert_eq!(f.to_string(), "x1*y2 - y1*x2");
        let sq = &f * &f;
        assert_eq!(sq, q("x1^2*y2^2 - 2*x1*y1*x2*y2 + y1^2*x2^2"));
        assert_eq!(sq.to_string(), "x1^2*y2^2 - 2*x1*y1*x2*y2 + y1^2*x2^2");
    }

    #[test]
    fn binomial_square_in_characteristic_two() {
        let f = Polynomial::edge_binomial(3, 1, 2, Domain::ModP(2));
        let sq = f.pow(2);
        assert_eq!(sq.num_terms(), 2);
        assert_eq!(sq.to_string(), "x1^2*y2^2 + y1^2*x2^2");
    }

    #[test]
    fn zeroth_power_is_one() {
        let f = q("3*x1 - 2/5*y3 + 7");
        assert_eq!(f.pow(0), Polynomial::one(6, Domain::Rational));
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let a = Polynomial::edge_binomial(2, 1, 2, Domain::Rational);
        let b = Polynomial::edge_binomial(2, 1, 2, Domain::ModP(3));
        assert!(matches!(a.add(&b), Err(AlgebraError::DomainMismatch(..))));
        assert!(a.mul(&Polynomial::one(6, Domain::Rational)).is_err());
    }

    #[test]
    fn mod_p_normalization() {
        let d = Domain::ModP(5);
        let c = d.normalize(&BigRational::new((-1).into(), 2.into()));
        // -1/2 = -3 = 2 mod 5
        assert_eq!(c, BigRational::from_integer(2.into()));
        assert_eq!(d.inverse(&BigRational::from_integer(2.into())), BigRational::from_integer(3.into()));
        assert!(Domain::mod_p(4).is_err());
        assert!(Domain::mod_p(7).is_ok());
    }

    #[test]
    fn monic_and_leading_term() {
        let f = q("-2*y1 + 4*x2*x3");
        assert_eq!(f.leading_monomial().unwrap(), &Monomial::x(3, 2).mul(&Monomial::x(3, 3)));
        assert_eq!(f.monic(), q("x2*x3 - 1/2*y1"));
    }
}
