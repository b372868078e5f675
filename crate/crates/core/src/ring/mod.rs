//! Exact arithmetic for a closed catalog of finite commutative rings.
//!
//! The catalog covers prime fields, Galois fields GF(p^k), the integers
//! modulo n, the dual numbers GF(p)[x]/<x^2> and finite direct products of
//! those. A [`RingSpec`] is a symbolic description; a [`Ring`] is a cheap
//! shared handle to one, and every [`RingElement`] carries the handle of the
//! ring that owns it.
//!
//! Elements are ordered lexicographically on their payload. That order gives
//! every element an index in `0..size`, which is what [`RingTable`] and the
//! exhaustive searches iterate over.

mod element;
mod hom;
mod parse;
pub mod poly;
mod table;

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

use crate::numtheory::{is_prime, lcm, prime_power};

pub use element::{RingElement, Value};
pub use hom::{HomKind, RingHom};
pub use parse::{parse_ring, ParseError};
pub use poly::find_irreducible;
pub use table::{RingTable, TABLE_SIZE_LIMIT};

/// Enumeration guard for [`Ring::elements`].
pub const ELEMENT_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} exceeds the size limit {limit}")]
    SizeLimit { what: String, limit: u64 },
    #[error("element belongs to {found}, expected {expected}")]
    OwnerMismatch { expected: String, found: String },
    #[error("value {value} is not an element of {ring}")]
    InvalidValue { ring: String, value: String },
    #[error("cannot parse element {input:?} of {ring}: {reason}")]
    ElementSyntax {
        ring: String,
        input: String,
        reason: String,
    },
    #[error("unsupported homomorphism: {0}")]
    UnsupportedHom(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Symbolic description of a catalog ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    PrimeField {
        p: u64,
    },
    /// GF(p^k) as GF(p)[x]/<modulus>, `modulus` monic of degree `k >= 2`,
    /// constant term first.
    GaloisField {
        p: u64,
        k: u32,
        modulus: Vec<u64>,
    },
    IntegersMod {
        n: u64,
    },
    /// GF(p)[x]/<x^2>; elements are a + bx.
    DualNumbers {
        p: u64,
    },
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(RingSpec::PrimeField { p })
    }

    /// GF(p^k) with the deterministic modulus from [`find_irreducible`];
    /// `k = 1` gives the prime field.
    pub fn galois_field(p: u64, k: u32) -> Result<Self, RingError> {
        if k == 1 {
            return Self::prime_field(p);
        }
        let modulus = find_irreducible(p, k)?;
        Ok(RingSpec::GaloisField { p, k, modulus })
    }

    /// The field with `q` elements.
    pub fn field(q: u64) -> Result<Self, RingError> {
        let (p, k) = prime_power(q).ok_or(RingError::NotPrimePower(q))?;
        Self::galois_field(p, k)
    }

    /// GF(p^k) over an explicitly chosen modulus.
    pub fn galois_field_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        let k = modulus.len().saturating_sub(1);
        if k < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(RingError::InvalidParameter(
                "modulus must be monic of degree >= 2 with reduced coefficients".into(),
            ));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(RingError::InvalidParameter(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Ok(RingSpec::GaloisField {
            p,
            k: k as u32,
            modulus,
        })
    }

    pub fn integers_mod(n: u64) -> Result<Self, RingError> {
        if n < 2 {
            return Err(RingError::InvalidParameter(format!("Z({n}) needs n >= 2")));
        }
        Ok(RingSpec::IntegersMod { n })
    }

    pub fn dual_numbers(p: u64) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(RingSpec::DualNumbers { p })
    }

    pub fn product(factors: Vec<RingSpec>) -> Result<Self, RingError> {
        if factors.is_empty() {
            return Err(RingError::InvalidParameter("empty product".into()));
        }
        let r = RingSpec::Product(factors);
        r.checked_size().ok_or_else(|| RingError::SizeLimit {
            what: "product size".into(),
            limit: u64::MAX,
        })?;
        Ok(r)
    }

    fn checked_size(&self) -> Option<u64> {
        match self {
            RingSpec::PrimeField { p } | RingSpec::IntegersMod { n: p } => Some(*p),
            RingSpec::GaloisField { p, k, .. } => p.checked_pow(*k),
            RingSpec::DualNumbers { p } => p.checked_mul(*p),
            RingSpec::Product(fs) => fs
                .iter()
                .try_fold(1u64, |acc, f| acc.checked_mul(f.checked_size()?)),
        }
    }

    pub fn size(&self) -> u64 {
        self.checked_size()
            .expect("ring size validated at construction")
    }

    /// Smallest c >= 1 with c·1 = 0.
    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::PrimeField { p }
            | RingSpec::GaloisField { p, .. }
            | RingSpec::DualNumbers { p } => *p,
            RingSpec::IntegersMod { n } => *n,
            RingSpec::Product(fs) => fs.iter().map(|f| f.characteristic()).fold(1, lcm),
        }
    }

    /// True for PrimeField, GaloisField and Z(p) with p prime.
    pub fn is_field(&self) -> bool {
        self.field_order().is_some()
    }

    /// `(p, k)` for a field of order p^k.
    pub fn field_order(&self) -> Option<(u64, u32)> {
        match self {
            RingSpec::PrimeField { p } => Some((*p, 1)),
            RingSpec::GaloisField { p, k, .. } => Some((*p, *k)),
            RingSpec::IntegersMod { n } if is_prime(*n) => Some((*n, 1)),
            _ => None,
        }
    }

    /// Flattens nested products and sorts field factors by prime, then by
    /// descending exponent. Non-field factors follow in input order; a
    /// single-factor product collapses to its factor.
    pub fn canonicalize(&self) -> RingSpec {
        let mut flat = Vec::new();
        self.flatten_into(&mut flat);
        let (mut fields, others): (Vec<_>, Vec<_>) = flat.into_iter().partition(|f| f.is_field());
        fields.sort_by_key(|f| {
            let (p, k) = f.field_order().unwrap();
            (p, std::cmp::Reverse(k))
        });
        fields.extend(others);
        if fields.len() == 1 {
            fields.pop().unwrap()
        } else {
            RingSpec::Product(fields)
        }
    }

    fn flatten_into(&self, out: &mut Vec<RingSpec>) {
        match self {
            RingSpec::Product(fs) => fs.iter().for_each(|f| f.flatten_into(out)),
            other => out.push(other.clone()),
        }
    }

    /// Leaves of the product tree, left to right.
    pub fn flat_factors(&self) -> Vec<RingSpec> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::PrimeField { p } => write!(f, "GF({p})"),
            RingSpec::GaloisField { p, k, .. } => write!(f, "GF({p}^{k})"),
            RingSpec::IntegersMod { n } => write!(f, "Z({n})"),
            RingSpec::DualNumbers { p } => write!(f, "D({p})"),
            RingSpec::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    if matches!(x, RingSpec::Product(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Shared handle to a [`RingSpec`]; elements keep one of these as their owner.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingSpec>);

impl Ring {
    pub fn new(spec: RingSpec) -> Self {
        Ring(Arc::new(spec))
    }

    pub fn parse(expr: &str) -> Result<Self, RingError> {
        Ok(Ring::new(parse_ring(expr)?))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }

    pub fn zero(&self) -> RingElement {
        RingElement::from_parts(self.clone(), self.0.zero_value())
    }

    pub fn one(&self) -> RingElement {
        RingElement::from_parts(self.clone(), self.0.one_value())
    }

    /// Wraps a payload after checking its shape and range.
    pub fn element(&self, value: Value) -> Result<RingElement, RingError> {
        if !self.0.contains(&value) {
            return Err(RingError::InvalidValue {
                ring: self.to_string(),
                value: format!("{value:?}"),
            });
        }
        Ok(RingElement::from_parts(self.clone(), value))
    }

    /// The element with canonical index `index`.
    pub fn element_at(&self, index: u64) -> RingElement {
        assert!(
            index < self.size(),
            "index {index} out of range for {}",
            self
        );
        RingElement::from_parts(self.clone(), self.0.value_at(index))
    }

    /// `c · 1`.
    pub fn from_integer(&self, c: u64) -> RingElement {
        RingElement::from_parts(self.clone(), self.0.integer_value(c))
    }

    /// All elements in canonical (lexicographic payload) order.
    pub fn elements(&self) -> Result<Vec<RingElement>, RingError> {
        let size = self.size();
        if size > ELEMENT_LIMIT {
            return Err(RingError::SizeLimit {
                what: format!("elements of {self}"),
                limit: ELEMENT_LIMIT,
            });
        }
        Ok((0..size).map(|i| self.element_at(i)).collect())
    }

    pub fn parse_element(&self, s: &str) -> Result<RingElement, RingError> {
        let value = self.0.parse_value(s)?;
        self.element(value)
    }
}

impl From<RingSpec> for Ring {
    fn from(spec: RingSpec) -> Self {
        Ring::new(spec)
    }
}

impl Deref for Ring {
    type Target = RingSpec;
    fn deref(&self) -> &RingSpec {
        &self.0
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> RingSpec {
        RingSpec::field(q).unwrap()
    }

    #[test]
    fn sizes_and_characteristics() {
        assert_eq!(RingSpec::integers_mod(12).unwrap().characteristic(), 12);
        assert_eq!(RingSpec::galois_field(2, 5).unwrap().characteristic(), 2);
        let p = RingSpec::product(vec![gf(8), gf(4)]).unwrap();
        assert_eq!(p.characteristic(), 2);
        assert_eq!(p.size(), 32);
        let z = RingSpec::product(vec![RingSpec::integers_mod(4).unwrap(), gf(3)]).unwrap();
        assert_eq!(z.characteristic(), 12);
    }

    #[test]
    fn constructor_validation() {
        assert!(RingSpec::prime_field(9).is_err());
        assert!(RingSpec::integers_mod(1).is_err());
        assert!(RingSpec::dual_numbers(4).is_err());
        assert!(RingSpec::product(vec![]).is_err());
        assert!(RingSpec::field(6).is_err());
        assert_eq!(gf(7), RingSpec::PrimeField { p: 7 });
        assert!(RingSpec::galois_field_with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(RingSpec::galois_field_with_modulus(2, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn canonical_forms() {
        let nested = RingSpec::Product(vec![RingSpec::Product(vec![gf(4)]), gf(8)]);
        assert_eq!(nested.canonicalize(), RingSpec::Product(vec![gf(8), gf(4)]));
        assert_eq!(gf(5).canonicalize(), gf(5));
        let mixed = RingSpec::Product(vec![gf(3), gf(4), gf(2)]);
        assert_eq!(
            mixed.canonicalize(),
            RingSpec::Product(vec![gf(4), gf(2), gf(3)])
        );
        let with_z = RingSpec::Product(vec![
            RingSpec::integers_mod(4).unwrap(),
            gf(3),
            RingSpec::dual_numbers(2).unwrap(),
        ]);
        assert_eq!(with_z.canonicalize().to_string(), "GF(3)xZ(4)xD(2)");
        let c = mixed.canonicalize();
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn display() {
        let r = RingSpec::product(vec![gf(8), gf(4), RingSpec::integers_mod(6).unwrap()]).unwrap();
        assert_eq!(r.to_string(), "GF(2^3)xGF(2^2)xZ(6)");
        assert_eq!(RingSpec::dual_numbers(3).unwrap().to_string(), "D(3)");
    }
}
