use std::collections::BTreeMap;

use super::{verify, Network, NetworkError, ScalarLinearCode};
use crate::ring::{Ring, RingElement, RingHom, RingSpec, Value};

fn require_verified(network: &Network, code: &ScalarLinearCode) -> Result<(), NetworkError> {
    if !verify(network, code)? {
        return Err(NetworkError::NotVerified(format!(" over {}", code.ring)));
    }
    Ok(())
}

fn map_all(
    code: &ScalarLinearCode,
    ring: &Ring,
    f: impl Fn(&RingElement) -> Result<RingElement, NetworkError>,
) -> Result<ScalarLinearCode, NetworkError> {
    let map = |cs: &Vec<RingElement>| cs.iter().map(&f).collect::<Result<Vec<_>, _>>();
    let mut edge_coeffs = BTreeMap::new();
    for (k, cs) in &code.edge_coeffs {
        edge_coeffs.insert(k.clone(), map(cs)?);
    }
    let mut decoders = BTreeMap::new();
    for (k, cs) in &code.decoders {
        decoders.insert(k.clone(), map(cs)?);
    }
    Ok(ScalarLinearCode {
        ring: ring.clone(),
        edge_coeffs,
        decoders,
    })
}

fn checked_output(
    network: &Network,
    code: ScalarLinearCode,
) -> Result<ScalarLinearCode, NetworkError> {
    assert!(
        verify(network, &code)?,
        "transformed solution over {} must verify",
        code.ring
    );
    Ok(code)
}

/// Componentwise product of verified solutions, over the product of their rings.
pub fn product_code(
    network: &Network,
    solutions: &[ScalarLinearCode],
) -> Result<ScalarLinearCode, NetworkError> {
    if solutions.is_empty() {
        return Err(NetworkError::Unsupported("product of no codes".into()));
    }
    for c in solutions {
        require_verified(network, c)?;
    }
    let ring = Ring::new(RingSpec::product(
        solutions.iter().map(|c| c.ring.spec().clone()).collect(),
    )?);
    let combine = |parts: Vec<&Vec<RingElement>>| -> Result<Vec<RingElement>, NetworkError> {
        (0..parts[0].len())
            .map(|i| {
                Ok(ring.element(Value::Tuple(
                    parts.iter().map(|p| p[i].value().clone()).collect(),
                ))?)
            })
            .collect()
    };
    let first = &solutions[0];
    let mut edge_coeffs = BTreeMap::new();
    for k in first.edge_coeffs.keys() {
        edge_coeffs.insert(
            k.clone(),
            combine(solutions.iter().map(|c| &c.edge_coeffs[k]).collect())?,
        );
    }
    // verified codes carry a decoder for every demand
    let mut decoders = BTreeMap::new();
    for k in first.decoders.keys() {
        decoders.insert(
            k.clone(),
            combine(solutions.iter().map(|c| &c.decoders[k]).collect())?,
        );
    }
    checked_output(
        network,
        ScalarLinearCode {
            ring,
            edge_coeffs,
            decoders,
        },
    )
}

/// Pushes a verified solution through a surjective homomorphism.
pub fn map_code(
    network: &Network,
    code: &ScalarLinearCode,
    h: &RingHom,
) -> Result<ScalarLinearCode, NetworkError> {
    if !h.is_surjective() {
        return Err(NetworkError::Unsupported(format!("{h} is not surjective")));
    }
    if *h.source() != code.ring {
        return Err(NetworkError::Mismatch(format!(
            "{h} does not start at {}",
            code.ring
        )));
    }
    require_verified(network, code)?;
    let out = map_all(code, h.target(), |c| Ok(h.apply(c)?))?;
    checked_output(network, out)
}

/// Re-encodes a verified solution over a subring of `target` as a solution over `target`.
pub fn lift_subring(
    network: &Network,
    code: &ScalarLinearCode,
    target: &Ring,
) -> Result<ScalarLinearCode, NetworkError> {
    require_verified(network, code)?;
    if code.ring == *target {
        return Ok(code.clone());
    }
    let h = RingHom::subring_inclusion(&code.ring, target)?;
    let out = map_all(code, target, |c| Ok(h.apply(c)?))?;
    checked_output(network, out)
}
