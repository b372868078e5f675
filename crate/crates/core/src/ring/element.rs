use std::fmt;
use std::hash::{Hash, Hasher};

use super::{poly, Ring, RingError, RingSpec};
use crate::numtheory::inv_mod;

/// Element payload. The variant must match the owning ring:
/// `Residue` for GF(p) and Z(n), `Poly` (length k, constant term first) for
/// GF(p^k), `Dual(a, b)` for a + bx in D(p), `Tuple` for products.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Residue(u64),
    Poly(Vec<u64>),
    Dual(u64, u64),
    Tuple(Vec<Value>),
}

impl RingSpec {
    pub(crate) fn zero_value(&self) -> Value {
        self.integer_value(0)
    }

    pub(crate) fn one_value(&self) -> Value {
        self.integer_value(1)
    }

    pub(crate) fn integer_value(&self, c: u64) -> Value {
        match self {
            RingSpec::PrimeField { p } | RingSpec::IntegersMod { n: p } => Value::Residue(c % p),
            RingSpec::GaloisField { p, k, .. } => {
                let mut v = vec![0; *k as usize];
                v[0] = c % p;
                Value::Poly(v)
            }
            RingSpec::DualNumbers { p } => Value::Dual(c % p, 0),
            RingSpec::Product(fs) => Value::Tuple(fs.iter().map(|f| f.integer_value(c)).collect()),
        }
    }

    pub(crate) fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (RingSpec::PrimeField { p } | RingSpec::IntegersMod { n: p }, Value::Residue(r)) => {
                r < p
            }
            (RingSpec::GaloisField { p, k, .. }, Value::Poly(cs)) => {
                cs.len() == *k as usize && cs.iter().all(|c| c < p)
            }
            (RingSpec::DualNumbers { p }, Value::Dual(a, b)) => a < p && b < p,
            (RingSpec::Product(fs), Value::Tuple(vs)) => {
                fs.len() == vs.len() && fs.iter().zip(vs).all(|(f, v)| f.contains(v))
            }
            _ => false,
        }
    }

    /// Payload with canonical index `i` (lexicographic order, first coordinate most significant).
    pub(crate) fn value_at(&self, mut i: u64) -> Value {
        match self {
            RingSpec::PrimeField { .. } | RingSpec::IntegersMod { .. } => Value::Residue(i),
            RingSpec::GaloisField { p, k, .. } => {
                let mut cs = vec![0; *k as usize];
                for c in cs.iter_mut().rev() {
                    *c = i % p;
                    i /= p;
                }
                Value::Poly(cs)
            }
            RingSpec::DualNumbers { p } => Value::Dual(i / p, i % p),
            RingSpec::Product(fs) => {
                let mut vs = Vec::with_capacity(fs.len());
                for f in fs.iter().rev() {
                    let s = f.size();
                    vs.push(f.value_at(i % s));
                    i /= s;
                }
                vs.reverse();
                Value::Tuple(vs)
            }
        }
    }

    pub(crate) fn index_of(&self, v: &Value) -> u64 {
        match (self, v) {
            (_, Value::Residue(r)) => *r,
            (RingSpec::GaloisField { p, .. }, Value::Poly(cs)) => {
                cs.iter().fold(0, |acc, c| acc * p + c)
            }
            (RingSpec::DualNumbers { p }, Value::Dual(a, b)) => a * p + b,
            (RingSpec::Product(fs), Value::Tuple(vs)) => fs
                .iter()
                .zip(vs)
                .fold(0, |acc, (f, v)| acc * f.size() + f.index_of(v)),
            _ => panic!("value shape does not match {self}"),
        }
    }

    pub(crate) fn add_values(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (
                RingSpec::PrimeField { p } | RingSpec::IntegersMod { n: p },
                Value::Residue(x),
                Value::Residue(y),
            ) => Value::Residue((x + y) % p),
            (RingSpec::GaloisField { p, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            (RingSpec::DualNumbers { p }, Value::Dual(a0, a1), Value::Dual(b0, b1)) => {
                Value::Dual((a0 + b0) % p, (a1 + b1) % p)
            }
            (RingSpec::Product(fs), Value::Tuple(x), Value::Tuple(y)) => Value::Tuple(
                fs.iter()
                    .zip(x.iter().zip(y))
                    .map(|(f, (u, v))| f.add_values(u, v))
                    .collect(),
            ),
            _ => panic!("value shape does not match {self}"),
        }
    }

    pub(crate) fn neg_value(&self, a: &Value) -> Value {
        match (self, a) {
            (RingSpec::PrimeField { p } | RingSpec::IntegersMod { n: p }, Value::Residue(x)) => {
                Value::Residue((p - x) % p)
            }
            (RingSpec::GaloisField { p, .. }, Value::Poly(x)) => {
                Value::Poly(x.iter().map(|u| (p - u) % p).collect())
            }
            (RingSpec::DualNumbers { p }, Value::Dual(a0, a1)) => {
                Value::Dual((p - a0) % p, (p - a1) % p)
            }
            (RingSpec::Product(fs), Value::Tuple(x)) => {
                Value::Tuple(fs.iter().zip(x).map(|(f, u)| f.neg_value(u)).collect())
            }
            _ => panic!("value shape does not match {self}"),
        }
    }

    pub(crate) fn mul_values(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (
                RingSpec::PrimeField { p } | RingSpec::IntegersMod { n: p },
                Value::Residue(x),
                Value::Residue(y),
            ) => Value::Residue(((*x as u128 * *y as u128) % *p as u128) as u64),
            (RingSpec::GaloisField { p, k, modulus }, Value::Poly(x), Value::Poly(y)) => {
                let prod = poly::mul(x, y, *p);
                let mut r = poly::rem_monic(&prod, modulus, *p);
                r.resize(*k as usize, 0);
                Value::Poly(r)
            }
            // x^2 = 0
            (RingSpec::DualNumbers { p }, Value::Dual(a0, a1), Value::Dual(b0, b1)) => {
                Value::Dual(a0 * b0 % p, (a0 * b1 + a1 * b0) % p)
            }
            (RingSpec::Product(fs), Value::Tuple(x), Value::Tuple(y)) => Value::Tuple(
                fs.iter()
                    .zip(x.iter().zip(y))
                    .map(|(f, (u, v))| f.mul_values(u, v))
                    .collect(),
            ),
            _ => panic!("value shape does not match {self}"),
        }
    }

    pub(crate) fn pow_value(&self, a: &Value, mut e: u64) -> Value {
        let mut acc = self.one_value();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_values(&acc, &base);
            }
            base = self.mul_values(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inverse_value(&self, a: &Value) -> Option<Value> {
        match (self, a) {
            (RingSpec::PrimeField { p } | RingSpec::IntegersMod { n: p }, Value::Residue(x)) => {
                inv_mod(*x, *p).map(Value::Residue)
            }
            (RingSpec::GaloisField { p, k, .. }, Value::Poly(x)) => {
                if x.iter().all(|&c| c == 0) {
                    return None;
                }
                // a^(q-2) in the multiplicative group of order q-1
                Some(self.pow_value(a, p.pow(*k) - 2))
            }
            (RingSpec::DualNumbers { p }, Value::Dual(a0, a1)) => {
                // (a + bx)^-1 = a^-1 - b a^-2 x
                let inv = inv_mod(*a0, *p)?;
                let b = (p - a1 * inv % p * inv % p) % p;
                Some(Value::Dual(inv, b))
            }
            (RingSpec::Product(fs), Value::Tuple(x)) => {
                let parts: Option<Vec<Value>> =
                    fs.iter().zip(x).map(|(f, u)| f.inverse_value(u)).collect();
                parts.map(Value::Tuple)
            }
            _ => panic!("value shape does not match {self}"),
        }
    }

    pub(crate) fn format_value(&self, v: &Value) -> String {
        match (self, v) {
            (_, Value::Residue(r)) => r.to_string(),
            (_, Value::Poly(cs)) => format_poly(cs),
            (_, Value::Dual(a, b)) => format_poly(&[*a, *b]),
            (RingSpec::Product(fs), Value::Tuple(vs)) => {
                let parts: Vec<String> =
                    fs.iter().zip(vs).map(|(f, v)| f.format_value(v)).collect();
                format!("({})", parts.join(","))
            }
            _ => format!("{v:?}"),
        }
    }

    /// Parses the text form produced by [`RingElement`]'s `Display`.
    ///
    /// Residues are plain integers. GF(p^k) and D(p) elements use a
    /// polynomial in `x` written in any term order, e.g. `1+x`, `2x^2+1`,
    /// `x`; a bare integer is a constant. Products use parenthesized tuples
    /// such as `(1,x+1)`.
    pub(crate) fn parse_value(&self, s: &str) -> Result<Value, RingError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| RingError::ElementSyntax {
            ring: self.to_string(),
            input: s.to_string(),
            reason: reason.to_string(),
        };
        match self {
            RingSpec::PrimeField { p } | RingSpec::IntegersMod { n: p } => {
                let r: u64 = compact.parse().map_err(|_| err("expected an integer"))?;
                if r >= *p {
                    return Err(err("residue out of range"));
                }
                Ok(Value::Residue(r))
            }
            RingSpec::GaloisField { p, k, .. } => {
                let cs = parse_poly(&compact, *p, *k as usize).map_err(|e| err(&e))?;
                Ok(Value::Poly(cs))
            }
            RingSpec::DualNumbers { p } => {
                let cs = parse_poly(&compact, *p, 2).map_err(|e| err(&e))?;
                Ok(Value::Dual(cs[0], cs[1]))
            }
            RingSpec::Product(fs) => {
                let inner = compact
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| err("expected a parenthesized tuple"))?;
                let parts = split_top_level(inner);
                if parts.len() != fs.len() {
                    return Err(err(&format!(
                        "expected {} components, found {}",
                        fs.len(),
                        parts.len()
                    )));
                }
                let vs = fs
                    .iter()
                    .zip(parts)
                    .map(|(f, part)| f.parse_value(part))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Value::Tuple(vs))
            }
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn format_poly(cs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (d, &c) in cs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && d > 0 {
            String::new()
        } else {
            c.to_string()
        };
        terms.push(match d {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{d}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn parse_poly(s: &str, p: u64, len: usize) -> Result<Vec<u64>, String> {
    if s.is_empty() {
        return Err("empty input".into());
    }
    let mut cs = vec![0u64; len];
    for term in s.split('+') {
        if term.is_empty() {
            return Err("empty term".into());
        }
        let (coeff, deg) = match term.find('x') {
            None => (term, 0usize),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let rest = &term[pos + 1..];
                let d = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .ok_or("expected ^ after x")?
                        .parse::<usize>()
                        .map_err(|_| "bad exponent")?
                };
                (if c.is_empty() { "1" } else { c }, d)
            }
        };
        let c: u64 = coeff
            .parse()
            .map_err(|_| format!("bad coefficient {coeff:?}"))?;
        if c >= p {
            return Err(format!("coefficient {c} not reduced mod {p}"));
        }
        if deg >= len {
            return Err(format!("degree {deg} too large"));
        }
        cs[deg] = (cs[deg] + c) % p;
    }
    Ok(cs)
}

/// An element together with the ring that owns it.
#[derive(Clone)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl RingElement {
    pub(crate) fn from_parts(ring: Ring, value: Value) -> Self {
        RingElement { ring, value }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    /// Position in the ring's canonical element order.
    pub fn index(&self) -> u64 {
        self.ring.index_of(&self.value)
    }

    fn check_owner(&self, other: &RingElement) -> Result<(), RingError> {
        if self.ring != other.ring {
            return Err(RingError::OwnerMismatch {
                expected: self.ring.to_string(),
                found: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_owner(other)?;
        Ok(RingElement::from_parts(
            self.ring.clone(),
            self.ring.add_values(&self.value, &other.value),
        ))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.check_owner(other)?;
        Ok(RingElement::from_parts(
            self.ring.clone(),
            self.ring.mul_values(&self.value, &other.value),
        ))
    }

    pub fn neg(&self) -> RingElement {
        RingElement::from_parts(self.ring.clone(), self.ring.neg_value(&self.value))
    }

    pub fn pow(&self, e: u64) -> RingElement {
        RingElement::from_parts(self.ring.clone(), self.ring.pow_value(&self.value, e))
    }

    /// Multiplicative inverse when `self` is a unit.
    pub fn inverse(&self) -> Option<RingElement> {
        self.ring
            .inverse_value(&self.value)
            .map(|v| RingElement::from_parts(self.ring.clone(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.value == self.ring.zero_value()
    }

    pub fn is_one(&self) -> bool {
        self.value == self.ring.one_value()
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.value == other.value
    }
}

impl Eq for RingElement {}

impl Hash for RingElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_value(&self.value))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring)
    }
}
