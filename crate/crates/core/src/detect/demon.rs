//! Ego-network label-propagation detector with global containment merging.
//!
//! For every node v: take the subgraph induced on v's neighbors (v itself
//! excluded), run label propagation there, and re-insert v into each local
//! community. All local communities are then merged globally until no pair
//! has containment overlap ≥ phi, and communities below `min_size` are
//! dropped.

use std::collections::BTreeSet;

use crate::detect::{label_prop, merge_to_fixpoint, CommunityCover};
use crate::graph::Graph;
use crate::util::{mix, rng_for};

pub fn demon_detect(g: &Graph, phi: f64, min_size: usize, seed: u64) -> CommunityCover {
    let mut pool: Vec<BTreeSet<u32>> = Vec::new();
    for v in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors_at(v).collect();
        if nbrs.is_empty() {
            continue;
        }
        // ego-minus-ego adjacency in local indices
        let pos = |x: usize| nbrs.binary_search(&x).ok();
        let adj: Vec<Vec<usize>> = nbrs
            .iter()
            .map(|&u| {
                g.neighbors_at(u)
                    .filter_map(pos)
                    .collect()
            })
            .collect();
        // per-ego rng keeps the result independent of processing order
        let mut rng = rng_for(seed, mix(0xde30, v as u64));
        for local in label_prop::communities_best_of(&adj, &mut rng, 3) {
            let mut comm: BTreeSet<u32> =
                local.into_iter().map(|i| g.id_at(nbrs[i])).collect();
            comm.insert(g.id_at(v));
            pool.push(comm);
        }
    }
    let mut merged = merge_to_fixpoint(pool, phi);
    merged.retain(|c| c.len() >= min_size);
    CommunityCover::new(merged, "demon", seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_triangles_give_two_communities() {
        let g = Graph::from_edge_pairs(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
            .unwrap();
        for seed in 0..10 {
            let cover = demon_detect(&g, 0.8, 3, seed);
            let expected: Vec<BTreeSet<u32>> = vec![
                [0u32, 1, 2].into_iter().collect(),
                [3u32, 4, 5].into_iter().collect(),
            ];
            assert_eq!(cover.communities, expected, "seed {seed}");
        }
    }

    #[test]
    fn complete_k5_gives_single_community() {
        let mut pairs = Vec::new();
        for i in 0..5u32 {
            for j in (i + 1)..5 {
                pairs.push((i, j));
            }
        }
        let g = Graph::from_edge_pairs(&pairs).unwrap();
        for seed in 0..10 {
            let cover = demon_detect(&g, 0.8, 3, seed);
            assert_eq!(cover.len(), 1, "seed {seed}");
            assert_eq!(cover.communities[0].len(), 5);
        }
    }

    #[test]
    fn edgeless_like_graph_yields_empty_cover() {
        // a single edge: every ego is one node, locals have size 2 < min_size
        let g = Graph::from_edge_pairs(&[(0, 1)]).unwrap();
        let cover = demon_detect(&g, 0.8, 3, 0);
        assert!(cover.is_empty());
    }
}
