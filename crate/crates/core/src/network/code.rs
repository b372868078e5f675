use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Input, Layout, Network, NetworkError};
use crate::ring::{Ring, RingElement, RingSpec, Value};

/// Largest candidate count the non-field decoding search accepts once more
/// than four rows are involved.
pub const DECODE_SEARCH_LIMIT: u64 = 1 << 24;

/// Coefficients of every edge and decoder of a network over one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarLinearCode {
    pub ring: Ring,
    /// Edge id -> one coefficient per input of the edge's tail.
    pub edge_coeffs: BTreeMap<String, Vec<RingElement>>,
    /// (receiver node, message id) -> one coefficient per receiver input.
    pub decoders: BTreeMap<(String, String), Vec<RingElement>>,
}

/// The message combination an edge symbol equals: message id -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferVector(pub BTreeMap<String, RingElement>);

impl TransferVector {
    pub fn get(&self, message: &str) -> Option<&RingElement> {
        self.0.get(message)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeJson {
    ring: String,
    edges: BTreeMap<String, Vec<String>>,
    decoders: BTreeMap<String, Vec<String>>,
}

impl ScalarLinearCode {
    /// Every coefficient zero and no decoders.
    pub fn zero(network: &Network, ring: &Ring) -> Result<Self, NetworkError> {
        let l = network.layout()?;
        let edge_coeffs = network
            .edges
            .iter()
            .map(|e| {
                (
                    e.id.clone(),
                    vec![ring.zero(); l.inputs[l.node_index[&e.tail]].len()],
                )
            })
            .collect();
        Ok(ScalarLinearCode {
            ring: ring.clone(),
            edge_coeffs,
            decoders: BTreeMap::new(),
        })
    }

    /// Checks arities and ownership against `network`.
    pub(crate) fn check(&self, network: &Network) -> Result<Layout, NetworkError> {
        let l = network.layout()?;
        for e in &network.edges {
            let want = l.inputs[l.node_index[&e.tail]].len();
            let cs = self.edge_coeffs.get(&e.id).ok_or_else(|| {
                NetworkError::Mismatch(format!("no coefficients for edge {:?}", e.id))
            })?;
            if cs.len() != want {
                return Err(NetworkError::Mismatch(format!(
                    "edge {:?} has {} coefficients, its tail has {want} inputs",
                    e.id,
                    cs.len()
                )));
            }
        }
        if let Some(id) = self
            .edge_coeffs
            .keys()
            .find(|id| !l.edge_index.contains_key(*id))
        {
            return Err(NetworkError::Mismatch(format!(
                "coefficients for unknown edge {id:?}"
            )));
        }
        for ((node, msg), ds) in &self.decoders {
            let v = l.node_index.get(node).ok_or_else(|| {
                NetworkError::Mismatch(format!("decoder at unknown node {node:?}"))
            })?;
            if !l.message_index.contains_key(msg) {
                return Err(NetworkError::Mismatch(format!(
                    "decoder for unknown message {msg:?}"
                )));
            }
            if ds.len() != l.inputs[*v].len() {
                return Err(NetworkError::Mismatch(format!(
                    "decoder {node}:{msg} has {} coefficients, the node has {} inputs",
                    ds.len(),
                    l.inputs[*v].len()
                )));
            }
        }
        let all = self
            .edge_coeffs
            .values()
            .chain(self.decoders.values())
            .flatten();
        if let Some(bad) = all.into_iter().find(|c| *c.ring() != self.ring) {
            return Err(NetworkError::Mismatch(format!(
                "coefficient {bad} belongs to {}, not {}",
                bad.ring(),
                self.ring
            )));
        }
        Ok(l)
    }

    pub fn to_json(&self) -> String {
        let show = |cs: &Vec<RingElement>| cs.iter().map(|c| c.to_string()).collect();
        let j = CodeJson {
            ring: self.ring.to_string(),
            edges: self
                .edge_coeffs
                .iter()
                .map(|(k, v)| (k.clone(), show(v)))
                .collect(),
            decoders: self
                .decoders
                .iter()
                .map(|((n, m), v)| (format!("{n}:{m}"), show(v)))
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("code serializes")
    }

    /// Decoder keys are `node:message`, split at the first colon.
    pub fn from_json(s: &str) -> Result<Self, NetworkError> {
        let j: CodeJson = serde_json::from_str(s).map_err(|e| NetworkError::Json(e.to_string()))?;
        let ring = Ring::parse(&j.ring)?;
        let parse = |cs: Vec<String>| {
            cs.iter()
                .map(|c| ring.parse_element(c))
                .collect::<Result<Vec<_>, _>>()
        };
        let mut edge_coeffs = BTreeMap::new();
        for (id, cs) in j.edges {
            edge_coeffs.insert(id, parse(cs)?);
        }
        let mut decoders = BTreeMap::new();
        for (key, cs) in j.decoders {
            let (n, m) = key.split_once(':').ok_or_else(|| {
                NetworkError::Json(format!("decoder key {key:?} is not node:message"))
            })?;
            decoders.insert((n.to_string(), m.to_string()), parse(cs)?);
        }
        Ok(ScalarLinearCode {
            ring,
            edge_coeffs,
            decoders,
        })
    }
}

/// Transfer vectors in message order, indexed like `network.edges`.
pub(crate) fn edge_vectors(
    network: &Network,
    code: &ScalarLinearCode,
    l: &Layout,
) -> Vec<Vec<RingElement>> {
    let ring = &code.ring;
    let m = network.messages.len();
    let mut vecs: Vec<Vec<RingElement>> = vec![Vec::new(); network.edges.len()];
    for &e in &l.order {
        let edge = &network.edges[e];
        let coeffs = &code.edge_coeffs[&edge.id];
        let mut acc = vec![ring.zero(); m];
        for (c, input) in coeffs.iter().zip(&l.inputs[l.node_index[&edge.tail]]) {
            add_scaled(&mut acc, c, input, &vecs);
        }
        vecs[e] = acc;
    }
    vecs
}

fn add_scaled(acc: &mut [RingElement], c: &RingElement, input: &Input, vecs: &[Vec<RingElement>]) {
    match *input {
        Input::Message(i) => acc[i] = acc[i].add(c).expect("same ring"),
        Input::Edge(j) => {
            for (a, v) in acc.iter_mut().zip(&vecs[j]) {
                *a = a.add(&c.mul(v).expect("same ring")).expect("same ring");
            }
        }
    }
}

/// Rows seen by `node`, one per input, in message order.
fn input_rows(
    network: &Network,
    l: &Layout,
    vecs: &[Vec<RingElement>],
    node: usize,
    ring: &Ring,
) -> Vec<Vec<RingElement>> {
    let m = network.messages.len();
    l.inputs[node]
        .iter()
        .map(|input| match *input {
            Input::Message(i) => (0..m)
                .map(|k| if k == i { ring.one() } else { ring.zero() })
                .collect(),
            Input::Edge(j) => vecs[j].clone(),
        })
        .collect()
}

fn to_transfer(network: &Network, v: &[RingElement]) -> TransferVector {
    TransferVector(
        network
            .messages
            .iter()
            .map(|m| m.id.clone())
            .zip(v.iter().cloned())
            .collect(),
    )
}

/// The transfer vector of every edge.
pub fn transfer(
    network: &Network,
    code: &ScalarLinearCode,
) -> Result<BTreeMap<String, TransferVector>, NetworkError> {
    let l = code.check(network)?;
    let vecs = edge_vectors(network, code, &l);
    Ok(network
        .edges
        .iter()
        .zip(&vecs)
        .map(|(e, v)| (e.id.clone(), to_transfer(network, v)))
        .collect())
}

/// True iff every receiver's decoder recovers each of its demands exactly.
/// A missing decoder counts as a failure.
pub fn verify(network: &Network, code: &ScalarLinearCode) -> Result<bool, NetworkError> {
    let l = code.check(network)?;
    let vecs = edge_vectors(network, code, &l);
    let ring = &code.ring;
    for r in &network.receivers {
        let v = l.node_index[&r.node];
        let rows = input_rows(network, &l, &vecs, v, ring);
        for d in &r.demands {
            let Some(ds) = code.decoders.get(&(r.node.clone(), d.clone())) else {
                return Ok(false);
            };
            let target = l.message_index[d];
            for (k, _) in network.messages.iter().enumerate() {
                let mut sum = ring.zero();
                for (c, row) in ds.iter().zip(&rows) {
                    sum = sum.add(&c.mul(&row[k])?)?;
                }
                let want_one = k == target;
                if (want_one && !sum.is_one()) || (!want_one && !sum.is_zero()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Receiver rows as transfer vectors, for decoder construction.
pub(crate) fn receiver_rows(
    network: &Network,
    code: &ScalarLinearCode,
    l: &Layout,
    node: &str,
) -> Vec<TransferVector> {
    let vecs = edge_vectors(network, code, l);
    input_rows(network, l, &vecs, l.node_index[node], &code.ring)
        .iter()
        .map(|v| to_transfer(network, v))
        .collect()
}

/// Coefficients `c` with `sum c_i · rows[i]` equal to the unit vector of
/// `target`, if any exist.
///
/// Fields are solved by elimination (free unknowns set to zero). Products
/// are solved factor by factor. Z(n) and D(p) are searched exhaustively in
/// canonical element order and the first hit is returned, which for
/// products of such rings is also the first hit of a search over the product.
pub fn decode_search(
    rows: &[TransferVector],
    target: &str,
    ring: &Ring,
) -> Result<Option<Vec<RingElement>>, NetworkError> {
    let mut keys: BTreeSet<&str> = rows
        .iter()
        .flat_map(|r| r.0.keys().map(|k| k.as_str()))
        .collect();
    keys.insert(target);
    for r in rows {
        if let Some(c) = r.0.values().find(|c| *c.ring() != *ring) {
            return Err(NetworkError::Mismatch(format!(
                "row entry {c} belongs to {}, not {ring}",
                c.ring()
            )));
        }
    }
    let matrix: Vec<Vec<Value>> = keys
        .iter()
        .map(|k| {
            rows.iter()
                .map(|r| {
                    r.get(k)
                        .map_or_else(|| ring.zero_value(), |c| c.value().clone())
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Value> = keys
        .iter()
        .map(|k| {
            if *k == target {
                ring.one_value()
            } else {
                ring.zero_value()
            }
        })
        .collect();
    Ok(
        solve_values(ring.spec(), &matrix, &rhs, rows.len())?.map(|cs| {
            cs.into_iter()
                .map(|v| ring.element(v).expect("solution values lie in the ring"))
                .collect()
        }),
    )
}

/// Solves `matrix · c = rhs` (equations by rows, `n` unknowns).
fn solve_values(
    spec: &RingSpec,
    matrix: &[Vec<Value>],
    rhs: &[Value],
    n: usize,
) -> Result<Option<Vec<Value>>, NetworkError> {
    match spec {
        _ if spec.is_field() => Ok(eliminate(spec, matrix, rhs, n)),
        RingSpec::Product(fs) => {
            let comp = |v: &Value, j: usize| match v {
                Value::Tuple(vs) => vs[j].clone(),
                _ => unreachable!("product payloads are tuples"),
            };
            let mut parts = Vec::with_capacity(fs.len());
            for (j, f) in fs.iter().enumerate() {
                let m: Vec<Vec<Value>> = matrix
                    .iter()
                    .map(|row| row.iter().map(|v| comp(v, j)).collect())
                    .collect();
                let b: Vec<Value> = rhs.iter().map(|v| comp(v, j)).collect();
                match solve_values(f, &m, &b, n)? {
                    Some(sol) => parts.push(sol),
                    None => return Ok(None),
                }
            }
            Ok(Some(
                (0..n)
                    .map(|i| Value::Tuple(parts.iter().map(|p| p[i].clone()).collect()))
                    .collect(),
            ))
        }
        _ => exhaustive(spec, matrix, rhs, n),
    }
}

fn eliminate(f: &RingSpec, matrix: &[Vec<Value>], rhs: &[Value], n: usize) -> Option<Vec<Value>> {
    let zero = f.zero_value();
    let mut a: Vec<Vec<Value>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..a.len()).find(|&i| a[i][col] != zero) else {
            continue;
        };
        a.swap(row, p);
        let inv = f
            .inverse_value(&a[row][col])
            .expect("nonzero field element");
        a[row] = a[row].iter().map(|v| f.mul_values(v, &inv)).collect();
        for i in 0..a.len() {
            if i != row && a[i][col] != zero {
                let factor = a[i][col].clone();
                a[i] = a[i]
                    .iter()
                    .zip(&a[row])
                    .map(|(x, y)| f.add_values(x, &f.neg_value(&f.mul_values(&factor, y))))
                    .collect();
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| r[n] != zero) {
        return None;
    }
    let mut sol = vec![zero; n];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = a[i][n].clone();
    }
    Some(sol)
}

fn exhaustive(
    r: &RingSpec,
    matrix: &[Vec<Value>],
    rhs: &[Value],
    n: usize,
) -> Result<Option<Vec<Value>>, NetworkError> {
    let size = r.size();
    let space = (size as u128).checked_pow(n as u32);
    if n > 4 && space.is_none_or(|s| s > DECODE_SEARCH_LIMIT as u128) {
        return Err(NetworkError::DecodeGuard { size, rows: n });
    }
    let elements: Vec<Value> = (0..size).map(|i| r.value_at(i)).collect();
    let mut idx = vec![0usize; n];
    loop {
        let ok = matrix.iter().zip(rhs).all(|(row, b)| {
            let mut s = r.zero_value();
            for (a, &i) in row.iter().zip(&idx) {
                s = r.add_values(&s, &r.mul_values(a, &elements[i]));
            }
            s == *b
        });
        if ok {
            return Ok(Some(idx.iter().map(|&i| elements[i].clone()).collect()));
        }
        // odometer, last unknown fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < size as usize {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{choose_two, relay};

    fn tv(ring: &Ring, pairs: &[(&str, &str)]) -> TransferVector {
        TransferVector(
            pairs
                .iter()
                .map(|(k, v)| (k.to_string(), ring.parse_element(v).unwrap()))
                .collect(),
        )
    }

    fn show(cs: Option<Vec<RingElement>>) -> Option<Vec<String>> {
        cs.map(|v| v.iter().map(|c| c.to_string()).collect())
    }

    #[test]
    fn decoding() {
        let f2 = Ring::parse("GF(2)").unwrap();
        let rows = [
            tv(&f2, &[("x", "1"), ("y", "0")]),
            tv(&f2, &[("x", "0"), ("y", "1")]),
        ];
        assert_eq!(
            show(decode_search(&rows, "x", &f2).unwrap()),
            Some(vec!["1".into(), "0".into()])
        );

        let f3 = Ring::parse("GF(3)").unwrap();
        let rows = [
            tv(&f3, &[("x", "1"), ("y", "1")]),
            tv(&f3, &[("x", "1"), ("y", "2")]),
        ];
        assert_eq!(
            show(decode_search(&rows, "y", &f3).unwrap()),
            Some(vec!["2".into(), "1".into()])
        );

        let z4 = Ring::parse("Z(4)").unwrap();
        let rows = [tv(&z4, &[("x", "2"), ("y", "0")])];
        assert_eq!(decode_search(&rows, "x", &z4).unwrap(), None);
        let rows = [tv(&z4, &[("x", "3")])];
        assert_eq!(
            show(decode_search(&rows, "x", &z4).unwrap()),
            Some(vec!["3".into()])
        );
    }

    #[test]
    fn product_decoding_matches_exhaustive_order() {
        let r = Ring::parse("Z(4)xD(2)").unwrap();
        let rows = [
            tv(&r, &[("x", "(2,1)"), ("y", "(1,x)")]),
            tv(&r, &[("x", "(1,0)"), ("y", "(3,1)")]),
        ];
        let got = decode_search(&rows, "x", &r).unwrap().unwrap();
        let els = r.elements().unwrap();
        let first = els
            .iter()
            .flat_map(|a| els.iter().map(move |b| (a, b)))
            .find(|(a, b)| {
                let x = a
                    .mul(rows[0].get("x").unwrap())
                    .unwrap()
                    .add(&b.mul(rows[1].get("x").unwrap()).unwrap())
                    .unwrap();
                let y = a
                    .mul(rows[0].get("y").unwrap())
                    .unwrap()
                    .add(&b.mul(rows[1].get("y").unwrap()).unwrap())
                    .unwrap();
                x.is_one() && y.is_zero()
            })
            .unwrap();
        assert_eq!(got, vec![first.0.clone(), first.1.clone()]);
    }

    #[test]
    fn transfer_vectors() {
        let f3 = Ring::parse("GF(3)").unwrap();
        let n = relay(1);
        let mut code = ScalarLinearCode::zero(&n, &f3).unwrap();
        code.edge_coeffs
            .insert("e1".into(), vec![f3.from_integer(2)]);
        let t = transfer(&n, &code).unwrap();
        assert_eq!(t["e1"].get("x").unwrap().to_string(), "2");

        // λ = 2x + y, then μ = 2λ gives x + 2y
        let n = choose_two(2).unwrap();
        let mut code = ScalarLinearCode::zero(&n, &f3).unwrap();
        code.edge_coeffs
            .insert("lam01".into(), vec![f3.from_integer(2), f3.from_integer(1)]);
        code.edge_coeffs
            .insert("lam01_r01_02".into(), vec![f3.from_integer(2)]);
        let t = transfer(&n, &code).unwrap();
        let mu = &t["lam01_r01_02"];
        assert_eq!(
            (
                mu.get("x").unwrap().to_string(),
                mu.get("y").unwrap().to_string()
            ),
            ("1".into(), "2".into())
        );
        let zero = ScalarLinearCode::zero(&n, &f3).unwrap();
        assert!(transfer(&n, &zero)
            .unwrap()
            .values()
            .all(|v| v.0.values().all(|c| c.is_zero())));
    }

    #[test]
    fn zero_code_fails() {
        let n = choose_two(3).unwrap();
        let code = ScalarLinearCode::zero(&n, &Ring::parse("GF(2)").unwrap()).unwrap();
        assert!(!verify(&n, &code).unwrap());
    }

    #[test]
    fn arity_mismatch() {
        let n = choose_two(3).unwrap();
        let f2 = Ring::parse("GF(2)").unwrap();
        let mut code = ScalarLinearCode::zero(&n, &f2).unwrap();
        code.edge_coeffs.insert("lam01".into(), vec![f2.one()]);
        assert!(matches!(verify(&n, &code), Err(NetworkError::Mismatch(_))));
    }
}
