//! Degree-ordered ego label-propagation detector with incremental merging.
//!
//! Nodes are processed in descending degree order. For each node the full
//! ego network (node included) is clustered with label propagation; each
//! local community is merged into the growing cover whenever its containment
//! overlap with an existing community reaches phi, otherwise appended. A
//! final fixpoint merge pass and the `min_size` filter produce the cover.

use std::collections::BTreeSet;

use crate::detect::{containment, label_prop, merge_to_fixpoint, CommunityCover};
use crate::graph::Graph;
use crate::util::{mix, rng_for};

pub fn angel_detect(g: &Graph, phi: f64, min_size: usize, seed: u64) -> CommunityCover {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree_at(v)), g.id_at(v)));

    let mut cover: Vec<BTreeSet<u32>> = Vec::new();
    for &v in &order {
        let mut ego: Vec<usize> = g.neighbors_at(v).collect();
        ego.push(v);
        ego.sort_unstable();
        if ego.len() < 2 {
            continue;
        }
        let pos = |x: usize| ego.binary_search(&x).ok();
        let adj: Vec<Vec<usize>> = ego
            .iter()
            .map(|&u| {
                g.neighbors_at(u)
                    .filter(|w| ego.binary_search(w).is_ok())
                    .filter_map(pos)
                    .collect()
            })
            .collect();
        let mut rng = rng_for(seed, mix(0xa9e1, v as u64));
        for local in label_prop::communities_best_of(&adj, &mut rng, 3) {
            let comm: BTreeSet<u32> = local.into_iter().map(|i| g.id_at(ego[i])).collect();
            // merge into the best-matching existing community, else append
            let mut best: Option<(usize, f64)> = None;
            for (i, existing) in cover.iter().enumerate() {
                let c = containment(&comm, existing);
                if c >= phi && best.map(|(_, b)| c > b).unwrap_or(true) {
                    best = Some((i, c));
                }
            }
            match best {
                Some((i, _)) => cover[i].extend(comm),
                None => cover.push(comm),
            }
        }
    }
    let mut merged = merge_to_fixpoint(cover, phi);
    merged.retain(|c| c.len() >= min_size);
    CommunityCover::new(merged, "angel", seed)
}
