use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU32, Ordering};

use super::code::DECODE_SEARCH_LIMIT;
use super::generators::attach_decoders;
use super::{verify, Input, Network, NetworkError, ScalarLinearCode};
use crate::ring::{Ring, RingTable};

/// Default cap on the number of coefficient assignments.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest accepted `size^free_coefficients`.
    pub budget: u64,
    /// Worker threads; the result does not depend on this.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

struct Slot {
    edge: usize,
    inputs: Vec<Input>,
    /// An edge whose tail has a single input is fixed to coefficient 1: any
    /// other coefficient c can be absorbed by multiplying every downstream
    /// use of the edge by c. Edges with no inputs carry zero either way.
    free: bool,
}

struct Check {
    inputs: Vec<Input>,
    targets: Vec<usize>,
}

struct Search<'a> {
    table: &'a RingTable,
    slots: Vec<Slot>,
    /// `checks[i]`: receivers whose inputs are all known once slot i is set.
    checks: Vec<Vec<Check>>,
    messages: usize,
    edges: usize,
}

/// Exhaustive search for a scalar linear solution over `ring`.
///
/// Coefficients are enumerated in canonical element order, edge by edge,
/// and a branch is abandoned as soon as a receiver whose inputs are all
/// fixed cannot decode one of its demands. The first solution in that order
/// is returned regardless of `jobs`. `Ok(None)` means the search space was
/// exhausted.
pub fn solve_brute(
    network: &Network,
    ring: &Ring,
    opts: &SolveOptions,
) -> Result<Option<ScalarLinearCode>, NetworkError> {
    let l = network.layout()?;
    let table = RingTable::new(ring)?;
    let size = table.size() as u64;

    let arity = |e: usize| l.inputs[l.node_index[&network.edges[e].tail]].len();
    let free_count: u32 = (0..network.edges.len())
        .filter(|&e| arity(e) >= 2)
        .map(|e| arity(e) as u32)
        .sum();
    let space = (size as u128).checked_pow(free_count);
    if space.is_none_or(|s| s > opts.budget as u128) {
        return Err(NetworkError::Budget {
            required: format!("{size}^{free_count}"),
            budget: opts.budget,
        });
    }
    if !table.is_field() {
        for r in &network.receivers {
            let k = l.inputs[l.node_index[&r.node]].len() as u32;
            if (size as u128)
                .checked_pow(k)
                .is_none_or(|s| s > DECODE_SEARCH_LIMIT as u128)
            {
                return Err(NetworkError::DecodeGuard {
                    size,
                    rows: k as usize,
                });
            }
        }
    }

    // Edge order: an edge becomes ready once its tail's incoming edges are
    // placed; ready fixed edges go first so receivers complete early.
    let mut placed = vec![false; network.edges.len()];
    let mut order = Vec::with_capacity(network.edges.len());
    let in_edges = |v: usize| {
        l.inputs[v].iter().filter_map(|i| match *i {
            Input::Edge(e) => Some(e),
            Input::Message(_) => None,
        })
    };
    while order.len() < network.edges.len() {
        let ready: Vec<usize> = l
            .order
            .iter()
            .copied()
            .filter(|&e| {
                !placed[e] && in_edges(l.node_index[&network.edges[e].tail]).all(|j| placed[j])
            })
            .collect();
        let next = ready
            .iter()
            .copied()
            .find(|&e| arity(e) < 2)
            .unwrap_or(ready[0]);
        placed[next] = true;
        order.push(next);
    }
    let position: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut checks: Vec<Vec<Check>> = (0..=order.len()).map(|_| Vec::new()).collect();
    for r in &network.receivers {
        let v = l.node_index[&r.node];
        // slot index + 1 after which the receiver is complete; 0 = before any slot
        let at = in_edges(v).map(|e| position[&e] + 1).max().unwrap_or(0);
        let targets = r.demands.iter().map(|d| l.message_index[d]).collect();
        checks[at].push(Check {
            inputs: l.inputs[v].clone(),
            targets,
        });
    }
    let slots = order
        .iter()
        .map(|&e| {
            let inputs = l.inputs[l.node_index[&network.edges[e].tail]].clone();
            Slot {
                edge: e,
                free: inputs.len() >= 2,
                inputs,
            }
        })
        .collect();
    let search = Search {
        table: &table,
        slots,
        checks,
        messages: network.messages.len(),
        edges: network.edges.len(),
    };

    let found = search.run(opts.jobs.max(1));
    let Some(assignment) = found else {
        return Ok(None);
    };
    let mut edge_coeffs = BTreeMap::new();
    for (e, cs) in assignment.into_iter().enumerate() {
        edge_coeffs.insert(
            network.edges[e].id.clone(),
            cs.into_iter().map(|i| ring.element_at(i as u64)).collect(),
        );
    }
    let mut code = ScalarLinearCode {
        ring: ring.clone(),
        edge_coeffs,
        decoders: BTreeMap::new(),
    };
    attach_decoders(network, &mut code)?;
    assert!(verify(network, &code)?, "search result must verify");
    Ok(Some(code))
}

impl Search<'_> {
    /// Per-edge coefficients of the first solution.
    fn run(&self, jobs: usize) -> Option<Vec<Vec<u32>>> {
        let mut state = State {
            vecs: vec![Vec::new(); self.edges],
            coeffs: vec![Vec::new(); self.edges],
        };
        if !self.receivers_ok(0, &state) {
            return None;
        }
        let first_free = self.slots.iter().position(|s| s.free);
        let size = self.table.size() as u32;
        match first_free {
            Some(pos) if jobs > 1 => {
                // Fixed slots before the first free one have a single choice.
                for i in 0..pos {
                    if !self.place(i, &self.fixed(i), &mut state) {
                        return None;
                    }
                }
                let best = AtomicU32::new(u32::MAX);
                let results: Vec<Option<(u32, Vec<Vec<u32>>)>> = std::thread::scope(|scope| {
                    let handles: Vec<_> = (0..jobs as u32)
                        .map(|w| {
                            let (best, mut st) = (&best, state.clone());
                            scope.spawn(move || {
                                let mut v = w;
                                while v < size {
                                    if v > best.load(Ordering::Relaxed) {
                                        return None;
                                    }
                                    if let Some(sol) = self.dfs_with_first(pos, v, &mut st) {
                                        best.fetch_min(v, Ordering::Relaxed);
                                        return Some((v, sol));
                                    }
                                    v += jobs as u32;
                                }
                                None
                            })
                        })
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("search worker"))
                        .collect()
                });
                results
                    .into_iter()
                    .flatten()
                    .min_by_key(|(v, _)| *v)
                    .map(|(_, sol)| sol)
            }
            _ => {
                if self.dfs(0, &mut state, None) {
                    Some(state.coeffs)
                } else {
                    None
                }
            }
        }
    }

    fn dfs_with_first(&self, pos: usize, first: u32, state: &mut State) -> Option<Vec<Vec<u32>>> {
        if self.dfs(pos, state, Some(first)) {
            Some(state.coeffs.clone())
        } else {
            None
        }
    }

    /// Tries every assignment of slots `i..`; `first` pins the first
    /// coefficient of slot `i`.
    fn dfs(&self, i: usize, state: &mut State, first: Option<u32>) -> bool {
        if i == self.slots.len() {
            return true;
        }
        let slot = &self.slots[i];
        if !slot.free {
            return self.place(i, &self.fixed(i), state) && self.dfs(i + 1, state, None);
        }
        let size = self.table.size() as u32;
        let k = slot.inputs.len();
        let mut cs = vec![0u32; k];
        if let Some(f) = first {
            cs[0] = f;
        }
        loop {
            if self.place(i, &cs, state) && self.dfs(i + 1, state, None) {
                return true;
            }
            // odometer, last coefficient fastest; a pinned first coefficient stays put
            let lowest = usize::from(first.is_some());
            let mut j = k;
            loop {
                if j == lowest {
                    return false;
                }
                j -= 1;
                cs[j] += 1;
                if cs[j] < size {
                    break;
                }
                cs[j] = 0;
            }
        }
    }

    fn fixed(&self, i: usize) -> Vec<u32> {
        vec![self.table.one(); self.slots[i].inputs.len()]
    }

    /// Sets slot `i` and checks the receivers it completes.
    fn place(&self, i: usize, cs: &[u32], state: &mut State) -> bool {
        let t = self.table;
        let slot = &self.slots[i];
        let mut acc = vec![t.zero(); self.messages];
        for (&c, input) in cs.iter().zip(&slot.inputs) {
            match *input {
                Input::Message(m) => acc[m] = t.add(acc[m], c),
                Input::Edge(e) => {
                    for (a, &v) in acc.iter_mut().zip(&state.vecs[e]) {
                        *a = t.add(*a, t.mul(c, v));
                    }
                }
            }
        }
        state.vecs[slot.edge] = acc;
        state.coeffs[slot.edge] = cs.to_vec();
        self.receivers_ok(i + 1, state)
    }

    fn receivers_ok(&self, at: usize, state: &State) -> bool {
        self.checks[at].iter().all(|c| {
            let rows: Vec<Vec<u32>> = c
                .inputs
                .iter()
                .map(|input| match *input {
                    Input::Message(m) => (0..self.messages)
                        .map(|k| {
                            if k == m {
                                self.table.one()
                            } else {
                                self.table.zero()
                            }
                        })
                        .collect(),
                    Input::Edge(e) => state.vecs[e].clone(),
                })
                .collect();
            c.targets.iter().all(|&t| decodable(self.table, &rows, t))
        })
    }
}

#[derive(Clone)]
struct State {
    vecs: Vec<Vec<u32>>,
    coeffs: Vec<Vec<u32>>,
}

/// Whether some combination of `rows` equals the unit vector of message `target`.
fn decodable(t: &RingTable, rows: &[Vec<u32>], target: usize) -> bool {
    let m = rows.first().map_or(0, |r| r.len());
    if rows.is_empty() {
        return false;
    }
    let unit = |k: usize| if k == target { t.one() } else { t.zero() };
    if t.is_field() {
        // Gaussian elimination on the m x (r+1) augmented system.
        let r = rows.len();
        let mut a: Vec<Vec<u32>> = (0..m)
            .map(|k| rows.iter().map(|row| row[k]).chain([unit(k)]).collect())
            .collect();
        let mut row = 0;
        for col in 0..r {
            let Some(p) = (row..m).find(|&i| a[i][col] != t.zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = t.inverse(a[row][col]).expect("field");
            for x in a[row].iter_mut() {
                *x = t.mul(*x, inv);
            }
            for i in 0..m {
                if i != row && a[i][col] != t.zero() {
                    let f = a[i][col];
                    let pivot = a[row].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot) {
                        *x = t.sub(*x, t.mul(f, *y));
                    }
                }
            }
            row += 1;
        }
        return a[row..].iter().all(|x| x[r] == t.zero());
    }
    let size = t.size() as u32;
    let r = rows.len();
    let mut cs = vec![0u32; r];
    loop {
        if (0..m).all(|k| {
            let mut s = t.zero();
            for (c, row) in cs.iter().zip(rows) {
                s = t.add(s, t.mul(*c, row[k]));
            }
            s == unit(k)
        }) {
            return true;
        }
        let mut j = r;
        loop {
            if j == 0 {
                return false;
            }
            j -= 1;
            cs[j] += 1;
            if cs[j] < size {
                break;
            }
            cs[j] = 0;
        }
    }
}
