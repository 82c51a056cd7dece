//! Exact polynomial and monomial-ideal arithmetic on `x_1..x_n, y_1..y_n`.

mod ideal;
mod monomial;
mod polynomial;
mod text;

pub use ideal::{
    binomial_edge_ideal, binomial_edge_ideal_over, prime_power_base, reduce_mod_frobenius, EdgeBinomial, MonomialIdeal,
    PolyIdeal,
};
pub use monomial::{degree_lex_cmp, Monomial};
pub use polynomial::{is_prime, Domain, Polynomial};
pub use text::{parse_monomial, parse_polynomial, VarNames};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("coefficient domains differ: {0:?} vs {1:?}")]
    DomainMismatch(Domain, Domain),
    #[error("variable counts differ: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("operation requires a mod-p domain, got {0:?}")]
    NotModP(Domain),
    #[error("Frobenius exponent {q} is not a power of the characteristic {p}")]
    WrongFrobeniusExponent { q: u64, p: u32 },
    #[error("ideal power needs m >= 1")]
    ZeroPower,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
