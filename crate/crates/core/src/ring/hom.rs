use std::fmt;
use std::sync::Arc;

use super::{Ring, RingElement, RingError, RingSpec, Value};
use crate::numtheory::{gcd, prime_divisors};

/// The structure maps available between catalog rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomKind {
    /// Z(n) -> Z(m) (or the prime field of that order), m | n, r -> r mod m.
    ModReduction,
    /// D(p) -> GF(p), a + bx -> a.
    DualAugmentation,
    /// Product -> factor number `factor` (1-based).
    Projection { factor: usize },
    /// Injective map of a subfield (or of GF(p) into D(p)); `images[i]` is
    /// the image of the source element with canonical index `i`.
    SubringInclusion { images: Arc<Vec<Value>> },
}

#[derive(Debug, Clone)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    kind: HomKind,
}

impl RingHom {
    pub fn mod_reduction(source: &Ring, target: &Ring) -> Result<Self, RingError> {
        let n = residue_modulus(source)
            .ok_or_else(|| RingError::UnsupportedHom(format!("mod reduction from {source}")))?;
        let m = residue_modulus(target)
            .ok_or_else(|| RingError::UnsupportedHom(format!("mod reduction to {target}")))?;
        if n % m != 0 {
            return Err(RingError::UnsupportedHom(format!(
                "{m} does not divide {n}"
            )));
        }
        Ok(RingHom {
            source: source.clone(),
            target: target.clone(),
            kind: HomKind::ModReduction,
        })
    }

    pub fn dual_augmentation(p: u64) -> Result<Self, RingError> {
        Ok(RingHom {
            source: Ring::new(RingSpec::dual_numbers(p)?),
            target: Ring::new(RingSpec::prime_field(p)?),
            kind: HomKind::DualAugmentation,
        })
    }

    /// Projection of a product onto its `factor`-th component, counting from 1.
    pub fn projection(source: &Ring, factor: usize) -> Result<Self, RingError> {
        let RingSpec::Product(fs) = source.spec() else {
            return Err(RingError::UnsupportedHom(format!(
                "{source} is not a product"
            )));
        };
        if factor == 0 || factor > fs.len() {
            return Err(RingError::UnsupportedHom(format!(
                "{source} has no factor {factor}"
            )));
        }
        Ok(RingHom {
            source: source.clone(),
            target: Ring::new(fs[factor - 1].clone()),
            kind: HomKind::Projection { factor },
        })
    }

    /// Inclusion of `source` as a subring of `target`.
    ///
    /// Supported pairs: identical rings, GF(p) into GF(p^k) or D(p), and
    /// GF(p^m) into GF(p^k) with m | k. The field embedding sends the
    /// smallest generator of GF(p^m)* to a power of g^((p^k-1)/(p^m-1)),
    /// g being the smallest generator of GF(p^k)*; the first exponent whose
    /// map is additive is used, and the map is checked at construction.
    pub fn subring_inclusion(source: &Ring, target: &Ring) -> Result<Self, RingError> {
        let unsupported =
            || RingError::UnsupportedHom(format!("{source} is not a catalog subring of {target}"));
        let images: Vec<Value> = if source == target {
            source
                .elements()?
                .into_iter()
                .map(|e| e.value().clone())
                .collect()
        } else {
            match (source.spec(), target.spec()) {
                (RingSpec::PrimeField { p }, RingSpec::DualNumbers { p: q }) if p == q => {
                    (0..*p).map(|a| Value::Dual(a, 0)).collect()
                }
                (RingSpec::PrimeField { p }, RingSpec::GaloisField { p: q, .. }) if p == q => {
                    (0..*p).map(|a| target.integer_value(a)).collect()
                }
                (RingSpec::GaloisField { p, k: m, .. }, RingSpec::GaloisField { p: q, k, .. })
                    if p == q && k % m == 0 =>
                {
                    field_embedding(source, target)?
                }
                _ => return Err(unsupported()),
            }
        };
        let hom = RingHom {
            source: source.clone(),
            target: target.clone(),
            kind: HomKind::SubringInclusion {
                images: Arc::new(images),
            },
        };
        if source.size() <= 256 && !hom.satisfies_laws()? {
            return Err(RingError::UnsupportedHom(format!(
                "embedding {source} -> {target} failed its law check"
            )));
        }
        Ok(hom)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn kind(&self) -> &HomKind {
        &self.kind
    }

    pub fn is_surjective(&self) -> bool {
        !matches!(self.kind, HomKind::SubringInclusion { .. }) || self.source == self.target
    }

    pub fn is_injective(&self) -> bool {
        matches!(self.kind, HomKind::SubringInclusion { .. })
            || self.source.size() == self.target.size()
    }

    pub fn apply(&self, a: &RingElement) -> Result<RingElement, RingError> {
        if *a.ring() != self.source {
            return Err(RingError::OwnerMismatch {
                expected: self.source.to_string(),
                found: a.ring().to_string(),
            });
        }
        let value = match (&self.kind, a.value()) {
            (HomKind::ModReduction, Value::Residue(r)) => {
                Value::Residue(r % residue_modulus(&self.target).unwrap())
            }
            (HomKind::DualAugmentation, Value::Dual(x, _)) => Value::Residue(*x),
            (HomKind::Projection { factor }, Value::Tuple(vs)) => vs[factor - 1].clone(),
            (HomKind::SubringInclusion { images }, _) => images[a.index() as usize].clone(),
            _ => unreachable!("payload checked against the source ring"),
        };
        Ok(RingElement::from_parts(self.target.clone(), value))
    }

    /// Exhaustive check of h(0)=0, h(1)=1, additivity and multiplicativity.
    pub fn satisfies_laws(&self) -> Result<bool, RingError> {
        let els = self.source.elements()?;
        let imgs = els
            .iter()
            .map(|e| self.apply(e))
            .collect::<Result<Vec<_>, _>>()?;
        if !self.apply(&self.source.zero())?.is_zero() || !self.apply(&self.source.one())?.is_one()
        {
            return Ok(false);
        }
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate().skip(i) {
                let sum = self.apply(&a.add(b)?)?;
                let prod = self.apply(&a.mul(b)?)?;
                if sum != imgs[i].add(&imgs[j])? || prod != imgs[i].mul(&imgs[j])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.kind {
            HomKind::ModReduction => "ModReduction".to_string(),
            HomKind::DualAugmentation => "DualAugmentation".to_string(),
            HomKind::Projection { factor } => format!("Projection[{factor}]"),
            HomKind::SubringInclusion { .. } => "SubringInclusion".to_string(),
        };
        write!(f, "{name}({} -> {})", self.source, self.target)
    }
}

fn residue_modulus(r: &Ring) -> Option<u64> {
    match r.spec() {
        RingSpec::IntegersMod { n } | RingSpec::PrimeField { p: n } => Some(*n),
        _ => None,
    }
}

/// Lexicographically smallest generator of the multiplicative group of a field.
pub(crate) fn smallest_generator(field: &Ring) -> Value {
    let q = field.size();
    let order = q - 1;
    let primes = prime_divisors(order);
    let one = field.one_value();
    (1..q)
        .map(|i| field.value_at(i))
        .find(|v| primes.iter().all(|r| field.pow_value(v, order / r) != one))
        .expect("the multiplicative group of a finite field is cyclic")
}

fn field_embedding(source: &Ring, target: &Ring) -> Result<Vec<Value>, RingError> {
    let qs = source.size();
    let qt = target.size();
    let gs = smallest_generator(source);
    let gt = smallest_generator(target);
    let h = target.pow_value(&gt, (qt - 1) / (qs - 1));

    // powers[i] = gs^i
    let mut powers = Vec::with_capacity((qs - 1) as usize);
    let mut cur = source.one_value();
    for _ in 0..qs - 1 {
        powers.push(cur.clone());
        cur = source.mul_values(&cur, &gs);
    }
    let one_s = source.one_value();
    let one_t = target.one_value();

    for e in (1..qs - 1).filter(|e| gcd(*e, qs - 1) == 1) {
        let cand = target.pow_value(&h, e);
        let mut images = vec![target.zero_value(); qs as usize];
        let mut img = target.one_value();
        for pw in &powers {
            images[source.index_of(pw) as usize] = img.clone();
            img = target.mul_values(&img, &cand);
        }
        // Multiplicative by construction; additive iff h(1 + a) = 1 + h(a) for every a.
        let additive = (0..qs).all(|i| {
            let a = source.value_at(i);
            let lhs = &images[source.index_of(&source.add_values(&one_s, &a)) as usize];
            *lhs == target.add_values(&one_t, &images[i as usize])
        });
        if additive {
            return Ok(images);
        }
    }
    Err(RingError::UnsupportedHom(format!(
        "no embedding of {source} into {target} found"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(expr: &str) -> Ring {
        Ring::parse(expr).unwrap()
    }

    #[test]
    fn mod_reduction() {
        let h = RingHom::mod_reduction(&ring("Z(12)"), &ring("Z(4)")).unwrap();
        let seven = ring("Z(12)").parse_element("7").unwrap();
        assert_eq!(h.apply(&seven).unwrap().to_string(), "3");
        assert!(h.is_surjective() && !h.is_injective());
        assert!(h.satisfies_laws().unwrap());
        assert!(RingHom::mod_reduction(&ring("Z(12)"), &ring("Z(5)")).is_err());
        assert!(RingHom::mod_reduction(&ring("Z(12)"), &ring("GF(3)")).is_ok());
    }

    #[test]
    fn dual_augmentation() {
        let h = RingHom::dual_augmentation(3).unwrap();
        let a = h.source().parse_element("2+x").unwrap();
        assert_eq!(h.apply(&a).unwrap().to_string(), "2");
        assert!(h.satisfies_laws().unwrap());
    }

    #[test]
    fn projection() {
        let src = ring("GF(8)xGF(4)");
        let h = RingHom::projection(&src, 2).unwrap();
        let uv = src.parse_element("(1+x,x)").unwrap();
        assert_eq!(
            h.apply(&uv).unwrap(),
            ring("GF(4)").parse_element("x").unwrap()
        );
        assert!(h.satisfies_laws().unwrap());
        assert!(RingHom::projection(&src, 3).is_err());
        assert!(RingHom::projection(&src, 0).is_err());
    }

    #[test]
    fn subfield_embeddings_are_homomorphisms() {
        for (s, t) in [
            ("GF(2)", "GF(4)"),
            ("GF(4)", "GF(16)"),
            ("GF(8)", "GF(64)"),
            ("GF(9)", "GF(81)"),
            ("GF(3)", "D(3)"),
            ("GF(4)", "GF(4)"),
            ("GF(2)", "GF(256)"),
        ] {
            let h = RingHom::subring_inclusion(&ring(s), &ring(t)).unwrap();
            assert!(h.satisfies_laws().unwrap(), "{s} -> {t}");
            assert!(h.is_injective());
            let imgs: std::collections::HashSet<_> = ring(s)
                .elements()
                .unwrap()
                .iter()
                .map(|e| h.apply(e).unwrap())
                .collect();
            assert_eq!(imgs.len() as u64, ring(s).size());
        }
    }

    #[test]
    fn unsupported_inclusions() {
        assert!(RingHom::subring_inclusion(&ring("GF(4)"), &ring("GF(8)")).is_err());
        assert!(RingHom::subring_inclusion(&ring("GF(2)"), &ring("GF(3)")).is_err());
        assert!(RingHom::subring_inclusion(&ring("GF(2)"), &ring("GF(2)xGF(2)")).is_err());
    }

    #[test]
    fn owner_checked() {
        let h = RingHom::dual_augmentation(2).unwrap();
        assert!(h.apply(&ring("D(3)").one()).is_err());
    }
}
