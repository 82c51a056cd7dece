pub mod algebra;
pub mod families;
pub mod graph;
pub mod groebner;
pub mod primes;
pub mod symbolic;
pub mod fsplit;
