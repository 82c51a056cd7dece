use std::cmp::Ordering;

/// Exponent vector over `nvars` variables.
///
/// For the binomial-edge ring on `n` vertices, position `i - 1` holds the
/// exponent of `x_i` and position `n + i - 1` the exponent of `y_i`. The
/// derived `Ord` compares exponent vectors position by position, which is
/// exactly lex order with `x_1 > ... > x_n > y_1 > ... > y_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The variable with index `idx` (0-based).
    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[idx] = 1;
        m
    }

    /// `x_i` in the ring with `2n` variables.
    pub fn x(n: usize, i: usize) -> Self {
        Monomial::var(2 * n, i - 1)
    }

    /// `y_i` in the ring with `2n` variables.
    pub fn y(n: usize, i: usize) -> Self {
        Monomial::var(2 * n, n + i - 1)
    }

    /// Squarefree monomial on the given variable indices.
    pub fn from_support(nvars: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Monomial::one(nvars);
        for v in support {
            m.exps[v] = 1;
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    /// Product. Panics if an exponent overflows `u32`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a.checked_mul(k).expect("monomial exponent overflow")).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(b.checked_sub(*a)?);
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }
}

/// Presentation order: degree ascending, then lex descending.
pub fn degree_lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp(a))
}
