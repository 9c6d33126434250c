//! Synchronous label propagation on small (sub)graphs.
//!
//! Every node starts with its own label. Each sweep recomputes all labels
//! simultaneously from the previous sweep: a node adopts the most frequent
//! label among itself and its neighbors, breaking ties uniformly at random
//! with the caller's RNG. Stops when a sweep changes nothing, capped at
//! [`MAX_SWEEPS`].

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const MAX_SWEEPS: usize = 100;

/// Final label per node for the adjacency list `adj` (indices 0..n).
pub fn propagate(adj: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = adj.len();
    let mut labels: Vec<usize> = (0..n).collect();
    if n == 0 {
        return labels;
    }
    let mut counts: Vec<usize> = vec![0; n];
    let mut next = labels.clone();
    let mut best: Vec<usize> = Vec::new();
    for _ in 0..MAX_SWEEPS {
        // stable only when every node's current label is the unique argmax;
        // a tie keeps churning randomly until an absorbing state is reached
        let mut all_stable = true;
        for v in 0..n {
            // counting the node's own label lets two-node components
            // coalesce under synchronous sweeps
            counts[labels[v]] += 1;
            for &w in &adj[v] {
                counts[labels[w]] += 1;
            }
            let max = counts[labels[v]]
                .max(adj[v].iter().map(|&w| counts[labels[w]]).max().unwrap_or(0));
            best.clear();
            best.push(labels[v]);
            for &w in &adj[v] {
                if !best.contains(&labels[w]) {
                    best.push(labels[w]);
                }
            }
            best.retain(|&l| counts[l] == max);
            best.sort_unstable();
            let pick = if best.len() == 1 {
                best[0]
            } else {
                all_stable = false;
                best[rng.gen_range(0..best.len())]
            };
            if pick != labels[v] {
                all_stable = false;
            }
            next[v] = pick;
            // reset touched counters
            counts[labels[v]] = 0;
            for &w in &adj[v] {
                counts[labels[w]] = 0;
            }
        }
        std::mem::swap(&mut labels, &mut next);
        if all_stable {
            break;
        }
    }
    labels
}

/// Group node indices by final label, each group sorted, groups sorted.
pub fn communities(adj: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let labels = propagate(adj, rng);
    let mut by_label: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (v, &l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = by_label.into_values().collect();
    out.sort();
    out
}

/// Run propagation `tries` times and keep the most coalesced outcome
/// (fewest communities, first on ties). Synchronous sweeps occasionally
/// freeze mid-coalescence into noisy multi-label states; restarting damps
/// that noise while staying a pure function of the caller's RNG stream.
pub fn communities_best_of(
    adj: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
    tries: usize,
) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<Vec<usize>>> = None;
    for _ in 0..tries.max(1) {
        let cand = communities(adj, rng);
        if best.as_ref().map(|b| cand.len() < b.len()).unwrap_or(true) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}
