use std::collections::BTreeMap;

use super::{
    code::receiver_rows, decode_search, verify, Edge, Message, Network, NetworkError, Receiver,
    ScalarLinearCode,
};
use crate::ring::Ring;

/// Largest `n` accepted by [`choose_two`].
pub const CHOOSE_TWO_LIMIT: usize = 12;

fn node_list(names: impl IntoIterator<Item = String>) -> Vec<String> {
    names.into_iter().collect()
}

fn edge(id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>) -> Edge {
    Edge {
        id: id.into(),
        tail: tail.into(),
        head: head.into(),
    }
}

fn msg(id: &str, source: &str) -> Message {
    Message {
        id: id.into(),
        source: source.into(),
    }
}

/// The n-Choose-Two network.
///
/// Source `s` holds messages `x` and `y` and sends edge `lamII` to node
/// `vII` for i = 1..n. Each `vII` forwards its symbol to every receiver
/// `rII_JJ` (i < j) on edge `lamII_rII_JJ`, so every receiver sees exactly the
/// pair (λ_i, λ_j) and demands both messages.
pub fn choose_two(n: usize) -> Result<Network, NetworkError> {
    if !(2..=CHOOSE_TWO_LIMIT).contains(&n) {
        return Err(NetworkError::Range(format!(
            "choose-two needs 2 <= n <= {CHOOSE_TWO_LIMIT}, got {n}"
        )));
    }
    let v = |i: usize| format!("v{i:02}");
    let r = |i: usize, j: usize| format!("r{i:02}_{j:02}");
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();

    let mut nodes = vec!["s".to_string()];
    nodes.extend((1..=n).map(v));
    nodes.extend(pairs.iter().map(|&(i, j)| r(i, j)));
    let mut edges: Vec<Edge> = (1..=n)
        .map(|i| edge(format!("lam{i:02}"), "s", v(i)))
        .collect();
    for &(i, j) in &pairs {
        for k in [i, j] {
            edges.push(edge(format!("lam{k:02}_{}", r(i, j)), v(k), r(i, j)));
        }
    }
    let receivers = pairs
        .iter()
        .map(|&(i, j)| Receiver {
            node: r(i, j),
            demands: vec!["x".into(), "y".into()],
        })
        .collect();
    Ok(Network {
        nodes,
        edges,
        messages: vec![msg("x", "s"), msg("y", "s")],
        receivers,
    })
}

/// The Two-Six network: four λ edges and all six pairwise receivers. Its
/// dependency pattern is that of the 4-Choose-Two network, and it is built
/// as one.
pub fn two_six() -> Network {
    choose_two(4).expect("4 is in range")
}

/// A path `s -> t1 -> ... -> tN` carrying message `x` over `hops` edges `e1..eN`.
pub fn relay(hops: usize) -> Network {
    assert!(hops >= 1);
    let name = |i: usize| {
        if i == 0 {
            "s".to_string()
        } else {
            format!("t{i}")
        }
    };
    Network {
        nodes: node_list((0..=hops).map(name)),
        edges: (1..=hops)
            .map(|i| edge(format!("e{i}"), name(i - 1), name(i)))
            .collect(),
        messages: vec![msg("x", "s")],
        receivers: vec![Receiver {
            node: name(hops),
            demands: vec!["x".into()],
        }],
    }
}

/// `k` messages `x1..xk` sent from `s` to `t` over `k` parallel edges; `t` demands all of them.
pub fn direct(k: usize) -> Network {
    assert!(k >= 1);
    Network {
        nodes: node_list(["s".to_string(), "t".to_string()]),
        edges: (1..=k).map(|i| edge(format!("e{i}"), "s", "t")).collect(),
        messages: (1..=k).map(|i| msg(&format!("x{i}"), "s")).collect(),
        receivers: vec![Receiver {
            node: "t".into(),
            demands: (1..=k).map(|i| format!("x{i}")).collect(),
        }],
    }
}

/// One message `x` sent from `s` straight to receivers `t1..tk`.
pub fn broadcast(k: usize) -> Network {
    assert!(k >= 1);
    let mut nodes = vec!["s".to_string()];
    nodes.extend((1..=k).map(|i| format!("t{i}")));
    Network {
        nodes,
        edges: (1..=k)
            .map(|i| edge(format!("e{i}"), "s", format!("t{i}")))
            .collect(),
        messages: vec![msg("x", "s")],
        receivers: (1..=k)
            .map(|i| Receiver {
                node: format!("t{i}"),
                demands: vec!["x".into()],
            })
            .collect(),
    }
}

/// The butterfly network: `x` and `y` at `s`, receivers `t1` and `t2`
/// demanding both, with one shared bottleneck edge `cd`.
pub fn butterfly() -> Network {
    let nodes = node_list(["s", "a", "b", "c", "d", "t1", "t2"].map(String::from));
    let edges = vec![
        edge("sa", "s", "a"),
        edge("sb", "s", "b"),
        edge("at1", "a", "t1"),
        edge("ac", "a", "c"),
        edge("bc", "b", "c"),
        edge("bt2", "b", "t2"),
        edge("cd", "c", "d"),
        edge("dt1", "d", "t1"),
        edge("dt2", "d", "t2"),
    ];
    let both = || vec!["x".to_string(), "y".to_string()];
    Network {
        nodes,
        edges,
        messages: vec![msg("x", "s"), msg("y", "s")],
        receivers: vec![
            Receiver {
                node: "t1".into(),
                demands: both(),
            },
            Receiver {
                node: "t2".into(),
                demands: both(),
            },
        ],
    }
}

/// A solution of `choose_two(n)` over a field with at least `n - 1` elements.
///
/// λ_1 = y and λ_{i+1} = x + a_i·y for the first `n - 1` field elements a_i
/// in canonical order; any two of these coefficient pairs form an invertible
/// 2×2 matrix. Relay edges forward their symbol unchanged.
pub fn choose_two_field_solution(n: usize, field: &Ring) -> Result<ScalarLinearCode, NetworkError> {
    if !field.is_field() {
        return Err(NetworkError::Unsupported(format!("{field} is not a field")));
    }
    let network = choose_two(n)?;
    let q = field.size();
    if q < n as u64 - 1 {
        return Err(NetworkError::Range(format!(
            "n = {n} needs a field with at least {} elements, {field} has {q}",
            n - 1
        )));
    }
    let mut edge_coeffs = BTreeMap::new();
    for e in &network.edges {
        let cs = match e.id.strip_prefix("lam") {
            Some(rest) if rest.len() == 2 => {
                let i: u64 = rest.parse().expect("generated id");
                if i == 1 {
                    vec![field.zero(), field.one()]
                } else {
                    vec![field.one(), field.element_at(i - 2)]
                }
            }
            _ => vec![field.one()],
        };
        edge_coeffs.insert(e.id.clone(), cs);
    }
    let mut code = ScalarLinearCode {
        ring: field.clone(),
        edge_coeffs,
        decoders: BTreeMap::new(),
    };
    attach_decoders(&network, &mut code)?;
    debug_assert!(verify(&network, &code)?);
    Ok(code)
}

/// Fills in every decoder that exists for the current edge coefficients.
pub(crate) fn attach_decoders(
    network: &Network,
    code: &mut ScalarLinearCode,
) -> Result<(), NetworkError> {
    let l = code.check(network)?;
    code.decoders.clear();
    for r in &network.receivers {
        let rows = receiver_rows(network, code, &l, &r.node);
        for d in &r.demands {
            if let Some(ds) = decode_search(&rows, d, &code.ring)? {
                code.decoders.insert((r.node.clone(), d.clone()), ds);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose_two_shapes() {
        for (n, receivers) in [(2, 1), (4, 6), (5, 10)] {
            let net = choose_two(n).unwrap();
            assert_eq!(net.receivers.len(), receivers);
            assert!(net.validate().is_empty());
            for r in &net.receivers {
                assert_eq!(net.inputs(&r.node).unwrap().len(), 2);
            }
        }
        assert!(choose_two(1).is_err());
        assert!(choose_two(13).is_err());
        let t = two_six();
        assert_eq!(t.edges.iter().filter(|e| e.tail == "s").count(), 4);
        assert_eq!(t.receivers.len(), 6);
    }

    #[test]
    fn field_constructions() {
        let f2 = Ring::parse("GF(2)").unwrap();
        let c = choose_two_field_solution(3, &f2).unwrap();
        let lam: Vec<String> = ["lam01", "lam02", "lam03"]
            .iter()
            .map(|e| {
                c.edge_coeffs[*e]
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        assert_eq!(lam, ["0,1", "1,0", "1,1"]);
        assert!(verify(&choose_two(3).unwrap(), &c).unwrap());

        let f4 = Ring::parse("GF(4)").unwrap();
        assert!(verify(
            &choose_two(5).unwrap(),
            &choose_two_field_solution(5, &f4).unwrap()
        )
        .unwrap());
        assert!(matches!(
            choose_two_field_solution(6, &f4),
            Err(NetworkError::Range(_))
        ));
        assert!(choose_two_field_solution(3, &Ring::parse("Z(4)").unwrap()).is_err());
    }

    #[test]
    fn small_networks_are_valid() {
        for n in [relay(3), direct(2), broadcast(3), butterfly()] {
            assert!(n.validate().is_empty());
        }
    }
}
