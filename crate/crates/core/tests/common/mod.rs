#![allow(dead_code)]

use std::collections::BTreeSet;

use ringcode::network::{broadcast, butterfly, choose_two, direct, relay, Network};
use ringcode::numtheory::{is_prime, prime_power};
use ringcode::ring::{Ring, RingHom, RingSpec, RingTable};

pub fn ring(s: &str) -> Ring {
    Ring::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Catalog rings of size at most `limit` (at most 512) used by the axiom suites.
///
/// All non-prime fields and all dual-number rings are included; prime fields
/// and Z(n) are sampled, plus a set of products.
pub fn ring_corpus(limit: u64) -> Vec<Ring> {
    let mut specs: Vec<RingSpec> = Vec::new();
    for q in 2..=limit {
        if let Some((p, k)) = prime_power(q) {
            if k > 1 || p <= 64 || [127, 251, 257, 509].contains(&p) {
                specs.push(RingSpec::field(q).unwrap());
            }
        }
    }
    for n in (2..=limit.min(64)).chain([96, 128, 210, 256, 360, 512]) {
        if n <= limit {
            specs.push(RingSpec::integers_mod(n).unwrap());
        }
    }
    for p in (2..=19).filter(|&p| is_prime(p) && p * p <= limit) {
        specs.push(RingSpec::dual_numbers(p).unwrap());
    }
    let products = [
        "GF(2)xGF(2)",
        "GF(2)xGF(3)",
        "GF(4)xGF(3)",
        "GF(8)xGF(4)",
        "GF(2)xGF(2)xGF(2)",
        "Z(4)xD(2)",
        "D(3)xZ(6)",
        "GF(16)xGF(27)",
        "GF(32)xGF(2)xGF(2)",
        "D(2)xGF(5)xZ(9)",
        "GF(7)xGF(7)xGF(7)",
        "Z(8)xGF(8)xD(2)",
    ];
    specs.extend(products.iter().map(|s| ring(s).spec().clone()));
    specs
        .into_iter()
        .filter(|s| s.size() <= limit)
        .map(Ring::new)
        .collect()
}

/// Homomorphisms between catalog rings whose source has at most `limit` elements.
pub fn hom_corpus(rings: &[Ring], limit: u64) -> Vec<RingHom> {
    let mut homs = Vec::new();
    for r in rings.iter().filter(|r| r.size() <= limit) {
        match r.spec() {
            RingSpec::IntegersMod { n } if *n <= 64 => {
                for m in (2..*n).filter(|m| n % m == 0) {
                    homs.push(
                        RingHom::mod_reduction(r, &Ring::new(RingSpec::integers_mod(m).unwrap()))
                            .unwrap(),
                    );
                    if is_prime(m) {
                        homs.push(
                            RingHom::mod_reduction(
                                r,
                                &Ring::new(RingSpec::prime_field(m).unwrap()),
                            )
                            .unwrap(),
                        );
                    }
                }
            }
            RingSpec::DualNumbers { p } => {
                homs.push(RingHom::dual_augmentation(*p).unwrap());
                homs.push(
                    RingHom::subring_inclusion(&Ring::new(RingSpec::prime_field(*p).unwrap()), r)
                        .unwrap(),
                );
            }
            RingSpec::Product(fs) => {
                for j in 1..=fs.len() {
                    homs.push(RingHom::projection(r, j).unwrap());
                }
            }
            _ => {}
        }
        if let (Some((p, k)), false) = (
            r.spec().field_order(),
            matches!(r.spec(), RingSpec::IntegersMod { .. }),
        ) {
            for m in (1..=k).filter(|m| k % m == 0) {
                let sub = Ring::new(RingSpec::galois_field(p, m).unwrap());
                homs.push(RingHom::subring_inclusion(&sub, r).unwrap());
            }
        }
    }
    homs
}

/// Exhaustive ring axioms on the Cayley tables; returns the first failure.
pub fn check_ring_axioms(r: &Ring) -> Result<(), String> {
    let t = RingTable::new(r).map_err(|e| e.to_string())?;
    let n = t.size() as u32;
    let (zero, one) = (t.zero(), t.one());
    let fail = |law: &str, xs: &[u32]| Err(format!("{r}: {law} fails at {xs:?}"));
    for a in 0..n {
        if t.add(a, zero) != a {
            return fail("additive identity", &[a]);
        }
        if t.add(a, t.neg(a)) != zero {
            return fail("additive inverse", &[a]);
        }
        if t.mul(a, one) != a || t.mul(a, zero) != zero {
            return fail("multiplicative identity", &[a]);
        }
        for b in 0..n {
            if t.add(a, b) != t.add(b, a) || t.mul(a, b) != t.mul(b, a) {
                return fail("commutativity", &[a, b]);
            }
            let ab = t.add(a, b);
            let m = t.mul(a, b);
            for c in 0..n {
                if t.add(ab, c) != t.add(a, t.add(b, c)) {
                    return fail("additive associativity", &[a, b, c]);
                }
                if t.mul(m, c) != t.mul(a, t.mul(b, c)) {
                    return fail("multiplicative associativity", &[a, b, c]);
                }
                if t.mul(c, ab) != t.add(t.mul(c, a), t.mul(c, b)) {
                    return fail("distributivity", &[a, b, c]);
                }
            }
        }
    }
    let mut c = 1u64;
    let mut acc = one;
    while acc != zero {
        acc = t.add(acc, one);
        c += 1;
    }
    if c != r.spec().characteristic() {
        return Err(format!(
            "{r}: characteristic {c}, catalog says {}",
            r.spec().characteristic()
        ));
    }
    let units = (0..n)
        .filter(|&a| t.inverse(a).is_some_and(|b| t.mul(a, b) == one))
        .count() as u32;
    let zero_divisor_free = (1..n).all(|a| (1..n).all(|b| t.mul(a, b) != zero));
    if r.is_field() != (units == n - 1) || r.is_field() != zero_divisor_free {
        return Err(format!("{r}: field flag disagrees with {units} units"));
    }
    Ok(())
}

/// Laws plus the surjectivity and injectivity flags, checked by exhaustion.
pub fn check_hom(h: &RingHom) -> Result<(), String> {
    if !h.satisfies_laws().map_err(|e| e.to_string())? {
        return Err(format!("{h}: law check fails"));
    }
    let els = h.source().elements().map_err(|e| e.to_string())?;
    let image: BTreeSet<u64> = els
        .iter()
        .map(|e| h.apply(e).map(|x| x.index()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    if h.is_surjective() != (image.len() as u64 == h.target().size()) {
        return Err(format!("{h}: surjectivity flag wrong"));
    }
    if h.is_injective() != (image.len() == els.len()) {
        return Err(format!("{h}: injectivity flag wrong"));
    }
    Ok(())
}

/// Ten small networks used by the code-transport checks.
pub fn network_corpus() -> Vec<(String, Network)> {
    vec![
        ("relay(1)".into(), relay(1)),
        ("relay(2)".into(), relay(2)),
        ("relay(4)".into(), relay(4)),
        ("direct(2)".into(), direct(2)),
        ("direct(3)".into(), direct(3)),
        ("broadcast(2)".into(), broadcast(2)),
        ("broadcast(4)".into(), broadcast(4)),
        ("butterfly".into(), butterfly()),
        ("choose_two(2)".into(), choose_two(2).unwrap()),
        ("choose_two(3)".into(), choose_two(3).unwrap()),
    ]
}
