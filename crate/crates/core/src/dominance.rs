//! Dominance between ring alphabets.
//!
//! `S ⪯ R` means every network scalar linearly solvable over `S` is also
//! scalar linearly solvable over `R`. For products of finite fields the
//! relation is decided exactly by the field-product criterion: every factor
//! GF(p^k) of `R` needs a factor GF(p^m) of `S` with `m | k`. For other
//! catalog rings [`catalog_dominates`] composes known facts (surjective
//! homomorphisms, subrings, direct products, D(p) ≡ GF(p)×GF(p)) and
//! answers [`Relation::Unknown`] when they do not settle the pair.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::numtheory::{factorize, is_prime, is_square_free};
use crate::partitions::{divides, is_maximal, maximal_partitions, Partition, PartitionError};
use crate::ring::{HomKind, Ring, RingError, RingHom, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominanceError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("prime supports differ: {0:?} vs {1:?}")]
    PrimeSupportMismatch(Vec<u64>, Vec<u64>),
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("{p} does not divide the size {size} of {ring}")]
    PrimeNotDividing { p: u64, size: u64, ring: String },
}

/// A product of finite fields, grouped by prime: `{p: A}` stands for
/// the product of GF(p^a) over the parts a of A.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionRing {
    assignment: BTreeMap<u64, Partition>,
}

impl PartitionRing {
    pub fn new(assignment: BTreeMap<u64, Partition>) -> Result<Self, DominanceError> {
        if assignment.is_empty() {
            return Err(DominanceError::Invalid(
                "a partition ring needs at least one prime".into(),
            ));
        }
        if let Some(&p) = assignment.keys().find(|&&p| !is_prime(p)) {
            return Err(DominanceError::Ring(RingError::NotPrime(p)));
        }
        Ok(PartitionRing { assignment })
    }

    /// Single-prime ring `R_{A,p}`.
    pub fn single(p: u64, a: Partition) -> Result<Self, DominanceError> {
        Self::new(BTreeMap::from([(p, a)]))
    }

    pub fn assignment(&self) -> &BTreeMap<u64, Partition> {
        &self.assignment
    }

    pub fn primes(&self) -> Vec<u64> {
        self.assignment.keys().copied().collect()
    }

    pub fn partition(&self, p: u64) -> Option<&Partition> {
        self.assignment.get(&p)
    }

    /// `[(p, k)]` with `k` the total of the partition at `p`.
    pub fn factored_size(&self) -> Vec<(u64, u32)> {
        self.assignment
            .iter()
            .map(|(&p, a)| (p, a.total()))
            .collect()
    }

    /// The size, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        self.factored_size()
            .into_iter()
            .try_fold(1u64, |acc, (p, k)| acc.checked_mul(p.checked_pow(k)?))
    }

    /// `(p, a)` for every factor GF(p^a), primes ascending, parts non-increasing.
    pub fn fields(&self) -> Vec<(u64, u32)> {
        self.assignment
            .iter()
            .flat_map(|(&p, a)| a.parts().iter().map(move |&k| (p, k)))
            .collect()
    }

    /// True iff every partition is maximal.
    pub fn is_maximal(&self) -> bool {
        self.assignment.values().all(is_maximal)
    }

    /// The ring itself, as a product of fields in canonical order.
    pub fn to_spec(&self) -> Result<RingSpec, RingError> {
        let mut fs = self
            .fields()
            .into_iter()
            .map(|(p, k)| RingSpec::galois_field(p, k))
            .collect::<Result<Vec<_>, _>>()?;
        if fs.len() == 1 {
            Ok(fs.pop().unwrap())
        } else {
            RingSpec::product(fs)
        }
    }
}

impl fmt::Display for PartitionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, k)) in self.fields().into_iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            if k == 1 {
                write!(f, "GF({p})")?;
            } else {
                write!(f, "GF({p}^{k})")?;
            }
        }
        Ok(())
    }
}

/// Groups field factors `(p, k)` by prime.
pub fn to_partition_ring(fields: &[(u64, u32)]) -> Result<PartitionRing, DominanceError> {
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &(p, k) in fields {
        if k == 0 {
            return Err(DominanceError::Invalid(format!("GF({p}^0) is not a field")));
        }
        parts.entry(p).or_default().push(k);
    }
    let assignment = parts
        .into_iter()
        .map(|(p, ks)| Ok((p, Partition::new(ks)?)))
        .collect::<Result<_, DominanceError>>()?;
    PartitionRing::new(assignment)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Dominates,
    NotDominates,
    Unknown,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Dominates => "YES",
            Relation::NotDominates => "NO",
            Relation::Unknown => "UNKNOWN",
        })
    }
}

/// One covered factor of the dominating side.
#[derive(Debug, Clone)]
pub enum Justification {
    /// GF(p^m) in S covers GF(p^k) in R because m | k.
    FieldCriterion { p: u64, m: u32, k: u32 },
    /// S ⪯ `target` through a chain of catalog maps; every link is either a
    /// surjective homomorphism or a subring inclusion, both of which carry
    /// solutions from source to target.
    Chain {
        target: RingSpec,
        links: Vec<RingHom>,
    },
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::FieldCriterion { p, m, k } => {
                write!(f, "prime {p} exponent {k} divisible by {m}")
            }
            Justification::Chain { target, links } if links.is_empty() => {
                write!(f, "{target} is a factor")
            }
            Justification::Chain { links, .. } => {
                for (i, h) in links.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{h}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// Both sides are (equivalent to) products of fields and GF(p^k) in R has
    /// no GF(p^m) in S with m | k. `available` lists S's exponents at p.
    FieldCriterion { p: u64, k: u32, available: Vec<u32> },
    /// char(R) does not divide char(S): the network solvable exactly over
    /// rings whose characteristic divides char(S) separates them.
    Characteristic { left: u64, right: u64 },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::FieldCriterion { p, k, available } => {
                let list: Vec<String> = available.iter().map(|m| m.to_string()).collect();
                write!(
                    f,
                    "prime {p} exponent {k} has no divisor in {{{}}}",
                    list.join(",")
                )
            }
            Refutation::Characteristic { left, right } => {
                write!(
                    f,
                    "characteristic {right} does not divide characteristic {left}"
                )
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum DominanceVerdict {
    /// One justification per factor of the right-hand side.
    Dominates(Vec<Justification>),
    NotDominates(Refutation),
    /// The named obligation could not be discharged.
    Unknown(String),
}

impl DominanceVerdict {
    pub fn relation(&self) -> Relation {
        match self {
            DominanceVerdict::Dominates(_) => Relation::Dominates,
            DominanceVerdict::NotDominates(_) => Relation::NotDominates,
            DominanceVerdict::Unknown(_) => Relation::Unknown,
        }
    }

    pub fn dominates(&self) -> bool {
        self.relation() == Relation::Dominates
    }
}

impl fmt::Display for DominanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DominanceVerdict::Dominates(js) => {
                let parts: Vec<String> = js.iter().map(|j| j.to_string()).collect();
                write!(f, "YES ({})", parts.join("; "))
            }
            DominanceVerdict::NotDominates(r) => write!(f, "NO ({r})"),
            DominanceVerdict::Unknown(why) => write!(f, "UNKNOWN ({why})"),
        }
    }
}

/// Decides S ⪯ R for products of finite fields.
pub fn field_product_dominates(s: &PartitionRing, r: &PartitionRing) -> DominanceVerdict {
    let mut out = Vec::new();
    for (p, k) in r.fields() {
        let available: Vec<u32> = s
            .partition(p)
            .map(|a| a.parts().to_vec())
            .unwrap_or_default();
        match available.iter().find(|&&m| k % m == 0) {
            Some(&m) => out.push(Justification::FieldCriterion { p, m, k }),
            None => {
                return DominanceVerdict::NotDominates(Refutation::FieldCriterion {
                    p,
                    k,
                    available,
                })
            }
        }
    }
    DominanceVerdict::Dominates(out)
}

/// Partition form of the criterion: `B_p | A_p` at every prime, B from S and A from R.
pub fn partition_dominance_bridge(
    s: &PartitionRing,
    r: &PartitionRing,
) -> Result<bool, DominanceError> {
    if s.primes() != r.primes() {
        return Err(DominanceError::PrimeSupportMismatch(s.primes(), r.primes()));
    }
    for (p, b) in &s.assignment {
        if !divides(b, &r.assignment[p])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Z(n) ⪯ Z(m) iff m | n.
pub fn zmod_dominates(n: u64, m: u64) -> Result<DominanceVerdict, DominanceError> {
    let s = Ring::new(RingSpec::integers_mod(n)?);
    let r = Ring::new(RingSpec::integers_mod(m)?);
    if !n.is_multiple_of(m) {
        return Ok(DominanceVerdict::NotDominates(Refutation::Characteristic {
            left: n,
            right: m,
        }));
    }
    let links = if n == m {
        vec![]
    } else {
        vec![RingHom::mod_reduction(&s, &r)?]
    };
    Ok(DominanceVerdict::Dominates(vec![Justification::Chain {
        target: r.spec().clone(),
        links,
    }]))
}

/// How a piece of S looks after reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    /// Dominance-equivalent to GF(p^k).
    Field(u64, u32),
    /// Z(p^e) with e >= 2: only Z(p^e) ⪯ GF(p) and Z(p^e) ⪯ Z(p^f), f <= e, are known.
    Local(u64, u32),
}

/// A piece of S together with the maps reaching it from S.
struct Reached {
    atom: Atom,
    ring: Ring,
    links: Vec<RingHom>,
}

fn reach_atoms(s: &Ring, links: &[RingHom], out: &mut Vec<Reached>) -> Result<(), RingError> {
    let mut push = |atom, ring: Ring, extra: Vec<RingHom>| {
        let mut l = links.to_vec();
        l.extend(extra);
        out.push(Reached {
            atom,
            ring,
            links: l,
        });
    };
    match s.spec() {
        RingSpec::PrimeField { p } => push(Atom::Field(*p, 1), s.clone(), vec![]),
        RingSpec::GaloisField { p, k, .. } => push(Atom::Field(*p, *k), s.clone(), vec![]),
        RingSpec::DualNumbers { p } => {
            let h = RingHom::dual_augmentation(*p)?;
            let gf = h.target().clone();
            push(Atom::Field(*p, 1), gf, vec![h]);
        }
        RingSpec::IntegersMod { n } => {
            let fs = factorize(*n);
            for (p, e) in fs.iter().copied() {
                let mut extra = Vec::new();
                let mut ring = s.clone();
                if fs.len() > 1 {
                    let local = Ring::new(RingSpec::integers_mod(p.pow(e))?);
                    extra.push(RingHom::mod_reduction(&ring, &local)?);
                    ring = local;
                }
                if e == 1 {
                    let gf = Ring::new(RingSpec::prime_field(p)?);
                    extra.push(RingHom::mod_reduction(&ring, &gf)?);
                    push(Atom::Field(p, 1), gf, extra);
                } else {
                    push(Atom::Local(p, e), ring, extra);
                }
            }
        }
        RingSpec::Product(fs) => {
            for j in 1..=fs.len() {
                let h = RingHom::projection(s, j)?;
                let factor = h.target().clone();
                let mut l = links.to_vec();
                l.push(h);
                reach_atoms(&factor, &l, out)?;
            }
        }
    }
    Ok(())
}

/// The factors R is split into: leaves of the product tree, with Z(n)
/// further split into its prime-power parts (Chinese remainder theorem).
pub fn dominance_factors(r: &RingSpec) -> Result<Vec<RingSpec>, RingError> {
    let mut out = Vec::new();
    for leaf in r.flat_factors() {
        match leaf {
            RingSpec::IntegersMod { n } => {
                for (p, e) in factorize(n) {
                    out.push(RingSpec::integers_mod(p.pow(e))?);
                }
            }
            other => out.push(other),
        }
    }
    Ok(out)
}

/// Whether a factor of R is dominance-equivalent to a field, and which.
fn exact_field(t: &RingSpec) -> Option<(u64, u32)> {
    match t {
        RingSpec::PrimeField { p } | RingSpec::DualNumbers { p } => Some((*p, 1)),
        RingSpec::GaloisField { p, k, .. } => Some((*p, *k)),
        RingSpec::IntegersMod { n } if is_prime(*n) => Some((*n, 1)),
        _ => None,
    }
}

/// Maps from one reached atom of S to the target factor `t`, if the rules give one.
fn cover(reached: &Reached, t: &RingSpec) -> Result<Option<Vec<RingHom>>, RingError> {
    let target = Ring::new(t.clone());
    let mut links = Vec::new();
    // Bring the atom down to the field it is compared through.
    let base = match (reached.atom, exact_field(t), t) {
        (Atom::Local(p, f), None, RingSpec::IntegersMod { n }) => {
            let (q, e) = crate::numtheory::prime_power(*n).expect("split factors are prime powers");
            if q != p || e > f {
                return Ok(None);
            }
            if e < f {
                links.push(RingHom::mod_reduction(&reached.ring, &target)?);
            }
            return Ok(Some(links));
        }
        (_, None, _) => return Ok(None),
        (Atom::Field(p, m), Some((q, k)), _) => {
            if p != q || k % m != 0 {
                return Ok(None);
            }
            reached.ring.clone()
        }
        (Atom::Local(p, _), Some((q, _)), _) => {
            if p != q {
                return Ok(None);
            }
            let gf = Ring::new(RingSpec::prime_field(p)?);
            links.push(RingHom::mod_reduction(&reached.ring, &gf)?);
            gf
        }
    };
    if base == target {
        return Ok(Some(links));
    }
    match t {
        RingSpec::IntegersMod { .. } => links.push(RingHom::mod_reduction(&base, &target)?),
        _ => links.push(RingHom::subring_inclusion(&base, &target)?),
    }
    Ok(Some(links))
}

/// S ⪯ R for catalog rings, with a certificate or a refutation when the
/// known rules settle the pair.
pub fn catalog_dominates(s: &RingSpec, r: &RingSpec) -> Result<DominanceVerdict, DominanceError> {
    let sring = Ring::new(s.clone());
    let mut atoms = Vec::new();
    reach_atoms(&sring, &[], &mut atoms)?;
    let targets = dominance_factors(r)?;

    let mut out = Vec::new();
    let mut uncovered = None;
    for t in &targets {
        let mut found = None;
        for a in &atoms {
            if let Some(extra) = cover(a, t)? {
                let mut links = a.links.clone();
                links.extend(extra);
                found = Some(links);
                break;
            }
        }
        match found {
            Some(links) => out.push(Justification::Chain {
                target: t.clone(),
                links,
            }),
            None => {
                uncovered = Some(t.clone());
                break;
            }
        }
    }
    let Some(t) = uncovered else {
        return Ok(DominanceVerdict::Dominates(out));
    };

    let s_exact = atoms.iter().all(|a| matches!(a.atom, Atom::Field(..)));
    let r_exact = targets.iter().all(|t| exact_field(t).is_some());
    if s_exact && r_exact {
        let (p, k) = exact_field(&t).unwrap();
        let available = atoms
            .iter()
            .filter_map(|a| match a.atom {
                Atom::Field(q, m) if q == p => Some(m),
                _ => None,
            })
            .collect();
        return Ok(DominanceVerdict::NotDominates(Refutation::FieldCriterion {
            p,
            k,
            available,
        }));
    }
    let (cs, cr) = (s.characteristic(), r.characteristic());
    if cs % cr != 0 {
        return Ok(DominanceVerdict::NotDominates(Refutation::Characteristic {
            left: cs,
            right: cr,
        }));
    }
    Ok(DominanceVerdict::Unknown(format!(
        "no known rule shows {s} ⪯ {t}"
    )))
}

/// Re-checks a verdict of [`catalog_dominates`] without trusting it.
///
/// Dominates: the chains must start at S, be connected, end at the factors
/// of R in order, and each link must be rebuildable by its constructor; for
/// sources of at most 512 elements the homomorphism laws are checked
/// exhaustively. NotDominates: the cited criterion instance is recomputed.
pub fn audit(s: &RingSpec, r: &RingSpec, verdict: &DominanceVerdict) -> Result<(), String> {
    match verdict {
        DominanceVerdict::Dominates(js) => {
            let targets = dominance_factors(r).map_err(|e| e.to_string())?;
            if js.len() != targets.len() {
                return Err(format!(
                    "{} justifications for {} factors",
                    js.len(),
                    targets.len()
                ));
            }
            for (j, t) in js.iter().zip(&targets) {
                let Justification::Chain { target, links } = j else {
                    return Err("catalog certificates are chains".into());
                };
                if target != t {
                    return Err(format!("chain ends at {target}, expected {t}"));
                }
                audit_chain(s, t, links)?;
            }
            Ok(())
        }
        DominanceVerdict::NotDominates(Refutation::Characteristic { left, right }) => {
            if *left != s.characteristic() || *right != r.characteristic() || left % right == 0 {
                return Err("characteristic witness does not hold".into());
            }
            Ok(())
        }
        DominanceVerdict::NotDominates(Refutation::FieldCriterion { p, k, available }) => {
            let sf =
                field_equivalent(s).ok_or("left side is not equivalent to a product of fields")?;
            let rf =
                field_equivalent(r).ok_or("right side is not equivalent to a product of fields")?;
            if !rf.contains(&(*p, *k)) {
                return Err(format!("GF({p}^{k}) is not a factor of {r}"));
            }
            let actual: Vec<u32> = sf.iter().filter(|f| f.0 == *p).map(|f| f.1).collect();
            if actual != *available || actual.iter().any(|m| k % m == 0) {
                return Err("field criterion witness does not hold".into());
            }
            Ok(())
        }
        DominanceVerdict::Unknown(_) => Ok(()),
    }
}

fn audit_chain(s: &RingSpec, t: &RingSpec, links: &[RingHom]) -> Result<(), String> {
    let mut cur = Ring::new(s.clone());
    for h in links {
        if *h.source() != cur {
            return Err(format!("link {h} does not start at {cur}"));
        }
        let rebuilt = match h.kind() {
            HomKind::ModReduction => RingHom::mod_reduction(h.source(), h.target()),
            HomKind::DualAugmentation => match h.source().spec() {
                RingSpec::DualNumbers { p } => RingHom::dual_augmentation(*p),
                _ => return Err(format!("{h} has a non-dual source")),
            },
            HomKind::Projection { factor } => RingHom::projection(h.source(), *factor),
            HomKind::SubringInclusion { .. } => RingHom::subring_inclusion(h.source(), h.target()),
        }
        .map_err(|e| format!("{h}: {e}"))?;
        if rebuilt.target() != h.target() || rebuilt.kind() != h.kind() {
            return Err(format!("{h} does not match its rebuilt form {rebuilt}"));
        }
        if h.source().size() <= 512 && !h.satisfies_laws().map_err(|e| e.to_string())? {
            return Err(format!("{h} violates the homomorphism laws"));
        }
        cur = h.target().clone();
    }
    if *cur.spec() != *t {
        return Err(format!("chain ends at {cur}, expected {t}"));
    }
    Ok(())
}

/// Field factors of a ring that is dominance-equivalent to a product of fields.
fn field_equivalent(r: &RingSpec) -> Option<Vec<(u64, u32)>> {
    dominance_factors(r).ok()?.iter().map(exact_field).collect()
}

/// The partition ring of `r`, if `r` is (isomorphic to) a product of fields.
pub fn as_partition_ring(r: &RingSpec) -> Option<PartitionRing> {
    let fields: Option<Vec<_>> = dominance_factors(r)
        .ok()?
        .iter()
        .map(|t| match t {
            RingSpec::DualNumbers { .. } => None,
            other => exact_field(other),
        })
        .collect();
    to_partition_ring(&fields?).ok()
}

/// True iff `r` is a product of fields whose partitions are all maximal.
///
/// Z(n) for square-free n counts as the product of its prime fields.
pub fn is_maximal_ring(r: &RingSpec) -> bool {
    as_partition_ring(r).is_some_and(|pr| pr.is_maximal())
}

/// All maximal rings of the given factored size. The first prime varies
/// fastest.
pub fn maximal_rings(m_factored: &[(u64, u32)]) -> Result<Vec<PartitionRing>, DominanceError> {
    if m_factored.is_empty() {
        return Err(DominanceError::Invalid("empty factorisation".into()));
    }
    let mut per_prime = Vec::new();
    for (i, &(p, k)) in m_factored.iter().enumerate() {
        if !is_prime(p) {
            return Err(DominanceError::Ring(RingError::NotPrime(p)));
        }
        if m_factored[..i].iter().any(|&(q, _)| q == p) {
            return Err(DominanceError::Invalid(format!("prime {p} listed twice")));
        }
        per_prime.push((p, maximal_partitions(k)?));
    }
    let total: usize = per_prime.iter().map(|(_, v)| v.len()).product();
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut assignment = BTreeMap::new();
        for (p, parts) in &per_prime {
            assignment.insert(*p, parts[idx % parts.len()].clone());
            idx /= parts.len();
        }
        out.push(PartitionRing { assignment });
    }
    Ok(out)
}

/// Parses `2^7*3^5*5^2` or a plain integer up to 2^20.
pub fn parse_factored_size(s: &str) -> Result<Vec<(u64, u32)>, DominanceError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad =
        || DominanceError::Invalid(format!("size {s:?} is neither p^k*q^l*... nor an integer"));
    if !s.contains(['^', '*']) {
        let n: u64 = s.parse().map_err(|_| bad())?;
        if !(2..=1 << 20).contains(&n) {
            return Err(DominanceError::Invalid(format!(
                "plain size {n} outside 2..=2^20"
            )));
        }
        return Ok(factorize(n));
    }
    let mut out: Vec<(u64, u32)> = Vec::new();
    for term in s.split('*') {
        let (p, k) = match term.split_once('^') {
            Some((p, k)) => (p.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?),
            None => (term.parse().map_err(|_| bad())?, 1),
        };
        if !is_prime(p) {
            return Err(DominanceError::Ring(RingError::NotPrime(p)));
        }
        if k == 0 {
            return Err(bad());
        }
        if out.iter().any(|&(q, _)| q == p) {
            return Err(DominanceError::Invalid(format!("prime {p} listed twice")));
        }
        out.push((p, k));
    }
    Ok(out)
}

/// A field GF(p^m) with R ⪯ GF(p^m) certified, taken from the p-part of R
/// with the largest size (first on ties): a field factor gives itself, a
/// D(p) or Z(p^e) factor gives its residue field GF(p).
pub fn smallest_field_refuge(r: &RingSpec, p: u64) -> Result<RingSpec, DominanceError> {
    if !r.size().is_multiple_of(p) || !is_prime(p) {
        return Err(DominanceError::PrimeNotDividing {
            p,
            size: r.size(),
            ring: r.to_string(),
        });
    }
    let mut atoms = Vec::new();
    reach_atoms(&Ring::new(r.clone()), &[], &mut atoms)?;
    let size_exp = |a: &Reached| match (a.atom, a.links.last().map(|h| h.source().spec())) {
        (Atom::Field(_, 1), Some(RingSpec::DualNumbers { .. })) => 2,
        (Atom::Field(_, m) | Atom::Local(_, m), _) => m,
    };
    let mut best: Option<&Reached> = None;
    for a in atoms.iter() {
        let (Atom::Field(q, _) | Atom::Local(q, _)) = a.atom;
        if q == p && best.is_none_or(|b| size_exp(a) > size_exp(b)) {
            best = Some(a);
        }
    }
    let best = best.expect("p divides the size, so some factor has characteristic p");
    let field = match best.atom {
        Atom::Field(_, m) => RingSpec::galois_field(p, m)?,
        Atom::Local(..) => RingSpec::prime_field(p)?,
    };
    let v = catalog_dominates(r, &field)?;
    debug_assert!(v.dominates(), "refuge of {r} must be certified");
    Ok(field)
}

/// GF(p) for each prime p dividing the square-free `n`.
pub fn square_free_fields(n: u64) -> Result<Vec<RingSpec>, DominanceError> {
    if n < 2 || !is_square_free(n) {
        return Err(DominanceError::NotSquareFree(n));
    }
    factorize(n)
        .into_iter()
        .map(|(p, _)| Ok(RingSpec::prime_field(p)?))
        .collect()
}
