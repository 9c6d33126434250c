//! Two-phase modularity maximization (local moving + aggregation).
//!
//! Unweighted input; aggregation levels carry accumulated edge weights.
//! Node visit order is a seeded shuffle, moves require a strictly positive
//! modularity gain, so ties keep the current assignment. The output is a
//! partition of all nodes.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;

use crate::detect::CommunityCover;
use crate::graph::Graph;
use crate::util::{mix, rng_for};

const MAX_PASSES_PER_LEVEL: usize = 10;

struct LevelGraph {
    /// adjacency with weights; self-loops carry intra-community weight
    adj: Vec<Vec<(usize, f64)>>,
    /// sum of all degrees (2m)
    total: f64,
    /// original node ids carried through aggregation
    members: Vec<BTreeSet<u32>>,
}

impl LevelGraph {
    fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            for w in g.neighbors_at(v) {
                adj[v].push((w, 1.0));
            }
        }
        LevelGraph {
            adj,
            total: 2.0 * g.m() as f64,
            members: (0..n).map(|v| BTreeSet::from([g.id_at(v)])).collect(),
        }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn weighted_degree(&self, v: usize) -> f64 {
        // self-loops count twice in the degree
        self.adj[v]
            .iter()
            .map(|&(w, x)| if w == v { 2.0 * x } else { x })
            .sum()
    }

    fn aggregate(&self, node_to_comm: &[usize]) -> LevelGraph {
        let mut comm_ids: Vec<usize> = node_to_comm.to_vec();
        comm_ids.sort_unstable();
        comm_ids.dedup();
        let renum = |c: usize| comm_ids.binary_search(&c).unwrap();

        let k = comm_ids.len();
        let mut weights: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); k];
        let mut members: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); k];
        for v in 0..self.n() {
            let cv = renum(node_to_comm[v]);
            members[cv].extend(self.members[v].iter().copied());
            for &(w, x) in &self.adj[v] {
                let cw = renum(node_to_comm[w]);
                if w == v {
                    // keep self-loop weight as-is (it is stored once)
                    *weights[cv].entry(cv).or_insert(0.0) += x;
                } else if cw == cv {
                    // each intra pair visited from both endpoints: x/2 each
                    *weights[cv].entry(cv).or_insert(0.0) += x / 2.0;
                } else {
                    *weights[cv].entry(cw).or_insert(0.0) += x;
                }
            }
        }
        let adj = weights
            .into_iter()
            .map(|row| row.into_iter().collect())
            .collect();
        LevelGraph {
            adj,
            total: self.total,
            members,
        }
    }
}

/// One pass of local moving. Returns whether any node changed community.
fn local_moving(lg: &LevelGraph, node_to_comm: &mut [usize], rng: &mut rand_chacha::ChaCha8Rng) -> bool {
    let n = lg.n();
    let two_m = lg.total;
    let mut comm_degree: Vec<f64> = vec![0.0; n];
    for v in 0..n {
        comm_degree[node_to_comm[v]] += lg.weighted_degree(v);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut moved_any = false;
    for _ in 0..MAX_PASSES_PER_LEVEL {
        let mut moves = 0usize;
        for &v in &order {
            let deg_v = lg.weighted_degree(v);
            let current = node_to_comm[v];
            comm_degree[current] -= deg_v;

            // weight from v to each neighboring community (self-loops skipped)
            let mut w_to: std::collections::BTreeMap<usize, f64> = Default::default();
            for &(w, x) in &lg.adj[v] {
                if w != v {
                    *w_to.entry(node_to_comm[w]).or_insert(0.0) += x;
                }
            }
            let w_cur = w_to.get(&current).copied().unwrap_or(0.0);
            let removal = -(w_cur / two_m) + comm_degree[current] * deg_v / (two_m * two_m);

            let mut best = current;
            let mut best_gain = 0.0;
            for (&cand, &w_cand) in &w_to {
                if cand == current {
                    continue;
                }
                let gain = removal + w_cand / two_m - comm_degree[cand] * deg_v / (two_m * two_m);
                if gain > best_gain {
                    best_gain = gain;
                    best = cand;
                }
            }
            comm_degree[best] += deg_v;
            if best != current {
                node_to_comm[v] = best;
                moves += 1;
                moved_any = true;
            }
        }
        if moves == 0 {
            break;
        }
    }
    moved_any
}

pub fn louvain_detect(g: &Graph, seed: u64) -> CommunityCover {
    if g.m() == 0 {
        // no edges: every node is its own community
        let comms = (0..g.n()).map(|v| BTreeSet::from([g.id_at(v)])).collect();
        return CommunityCover::new(comms, "louvain", seed);
    }
    let mut lg = LevelGraph::from_graph(g);
    for level in 0..64 {
        let mut assign: Vec<usize> = (0..lg.n()).collect();
        let mut rng = rng_for(seed, mix(0x10aa, level));
        let moved = local_moving(&lg, &mut assign, &mut rng);
        if !moved {
            break;
        }
        lg = lg.aggregate(&assign);
    }
    CommunityCover::new(lg.members, "louvain", seed)
}
