use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{AlgebraError, Domain, Monomial, Polynomial};

/// Variable names for rendering and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// `x1..xn, y1..yn`.
    Binomial { n: usize },
    Custom(Vec<String>),
}

impl VarNames {
    pub fn binomial(n: usize) -> Self {
        VarNames::Binomial { n }
    }

    /// Binomial names for an even count, `z1..zk` otherwise.
    pub fn default_for(nvars: usize) -> Self {
        if nvars % 2 == 0 {
            VarNames::Binomial { n: nvars / 2 }
        } else {
            VarNames::Custom((1..=nvars).map(|i| format!("z{i}")).collect())
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            VarNames::Binomial { n } => 2 * n,
            VarNames::Custom(v) => v.len(),
        }
    }

    pub fn name(&self, idx: usize) -> String {
        match self {
            VarNames::Binomial { n } if idx < *n => format!("x{}", idx + 1),
            VarNames::Binomial { n } => format!("y{}", idx - n + 1),
            VarNames::Custom(v) => v[idx].clone(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        match self {
            VarNames::Binomial { n } => {
                let (head, tail) = name.split_at(1.min(name.len()));
                let i: usize = tail.parse().ok()?;
                if i == 0 || i > *n {
                    return None;
                }
                match head {
                    "x" => Some(i - 1),
                    "y" => Some(n + i - 1),
                    _ => None,
                }
            }
            VarNames::Custom(v) => v.iter().position(|s| s == name),
        }
    }

    /// Factor order inside a monomial: by vertex, `x` before `y`, for binomial
    /// names; by index otherwise.
    fn display_order(&self) -> Vec<usize> {
        match self {
            VarNames::Binomial { n } => (0..*n).flat_map(|i| [i, n + i]).collect(),
            VarNames::Custom(v) => (0..v.len()).collect(),
        }
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for idx in self.display_order() {
            match m.exponent(idx) {
                0 => {}
                1 => parts.push(self.name(idx)),
                e => parts.push(format!("{}^{e}", self.name(idx))),
            }
        }
        parts.join("*")
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn ident(&mut self) -> Result<&'a str, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected variable");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    /// `factor ('*' factor)*` where a factor is a coefficient or `var[^e]`.
    fn term(&mut self, names: &VarNames) -> Result<(Monomial, BigRational), AlgebraError> {
        let mut mono = Monomial::one(names.nvars());
        let mut coeff = BigRational::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let den = if self.eat(b'/') { self.integer()? } else { BigInt::one() };
                    if den == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    coeff *= BigRational::new(num, den);
                }
                Some(_) => {
                    let at = self.pos;
                    let name = self.ident()?;
                    let idx = names
                        .index_of(name)
                        .ok_or(AlgebraError::Parse { pos: at, msg: format!("unknown variable {name:?}") })?;
                    let e = if self.eat(b'^') {
                        let e = self.integer()?;
                        u32::try_from(e).or_else(|_| self.err("exponent out of range"))?
                    } else {
                        1
                    };
                    mono = mono.mul(&Monomial::var(names.nvars(), idx).pow(e));
                }
                None => return self.err("unexpected end of input"),
            }
            if !self.eat(b'*') {
                return Ok((mono, coeff));
            }
        }
    }
}

/// Parses `term (('+'|'-') term)*`, e.g. `x1*y2 - y1*x2` or `-2/3*x1^2 + 5`.
pub fn parse_polynomial(src: &str, names: &VarNames, domain: Domain) -> Result<Polynomial, AlgebraError> {
    let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
    let mut p = Polynomial::zero(names.nvars(), domain);
    if lx.peek() == Some(b'0') {
        let save = lx.pos;
        lx.pos += 1;
        if lx.peek().is_none() {
            return Ok(p);
        }
        lx.pos = save;
    }
    let mut negative = lx.eat(b'-');
    loop {
        let (m, c) = lx.term(names)?;
        p.add_term(m, if negative { -c } else { c });
        match lx.peek() {
            None => return Ok(p),
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return lx.err("expected '+' or '-'"),
        }
        lx.pos += 1;
    }
}

/// Parses a single monomial with coefficient 1, e.g. `x1^2*y3`.
pub fn parse_monomial(src: &str, names: &VarNames) -> Result<Monomial, AlgebraError> {
    let mut lx = Lexer { src: src.as_bytes(), pos: 0 };
    let (m, c) = lx.term(names)?;
    if lx.peek().is_some() {
        return lx.err("trailing input after monomial");
    }
    if !c.is_one() {
        return lx.err("monomials carry no coefficient");
    }
    Ok(m)
}
