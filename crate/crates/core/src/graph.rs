//! Undirected simple graph with immutable-value semantics.
//!
//! A [`Graph`] is a set of integer node ids plus a set of unordered edges.
//! Mutating operations (`toggle_edge`, `inject_proxies`) return a new value,
//! so graphs can be shared freely across concurrent trials.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::util::rng_for;

/// Undirected simple graph over integer node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    /// External node ids, ascending.
    ids: Vec<u32>,
    /// Adjacency by internal index (position in `ids`).
    adj: Vec<BTreeSet<usize>>,
    /// Edge count.
    m: usize,
}

/// What the edge-list parser had to clean up.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

/// Proxy nodes injected next to a target, wired as a seeded Erdős–Rényi
/// subgraph with every proxy attached to the target.
#[derive(Debug, Clone, PartialEq)]
pub struct ProxySet {
    pub proxy_ids: Vec<u32>,
    pub target_id: u32,
    pub edge_prob: f64,
    pub seed: u64,
}

impl ProxySet {
    pub fn len(&self) -> usize {
        self.proxy_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proxy_ids.is_empty()
    }
}

/// Edge-edit budget expressed in average-degree units.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    /// Number of edge edits allowed, always ≥ 1.
    pub beta: u32,
    pub multiplier: f64,
    /// Average degree |E|/|V| (plus 1 when the dataset adjustment applies).
    pub mu: f64,
}

/// Round half away from zero for non-negative x.
fn round_half_up(x: f64) -> u32 {
    (x + 0.5).floor() as u32
}

impl Budget {
    /// Budget from an explicit average degree.
    pub fn from_mu(mu: f64, multiplier: f64) -> Budget {
        let beta = round_half_up(multiplier * mu).max(1);
        Budget { beta, multiplier, mu }
    }

    /// Budget for a graph; `mu_plus_one` applies the small-graph adjustment
    /// μ = |E|/|V| + 1 used for the karate-club dataset.
    pub fn from_graph(g: &Graph, multiplier: f64, mu_plus_one: bool) -> Budget {
        let mut mu = g.m() as f64 / g.n() as f64;
        if mu_plus_one {
            mu += 1.0;
        }
        Budget::from_mu(mu, multiplier)
    }
}

impl Graph {
    /// Build from (id, id) pairs. Self-loops are rejected, duplicates collapse.
    pub fn from_edge_pairs(pairs: &[(u32, u32)]) -> Result<Graph> {
        let mut ids: BTreeSet<u32> = BTreeSet::new();
        for &(u, v) in pairs {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            ids.insert(u);
            ids.insert(v);
        }
        if ids.is_empty() {
            return Err(Error::EmptyInput("no nodes".into()));
        }
        let ids: Vec<u32> = ids.into_iter().collect();
        let mut g = Graph {
            adj: vec![BTreeSet::new(); ids.len()],
            ids,
            m: 0,
        };
        for &(u, v) in pairs {
            let ui = g.index_of(u).unwrap();
            let vi = g.index_of(v).unwrap();
            if g.adj[ui].insert(vi) {
                g.adj[vi].insert(ui);
                g.m += 1;
            }
        }
        Ok(g)
    }

    /// Parse whitespace-separated "u v" lines; '#'/'%' lines are comments.
    pub fn parse_edge_list(text: &str) -> Result<(Graph, ParseStats)> {
        let mut stats = ParseStats::default();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected two integers, got {:?}", line),
                });
            }
            let parse = |t: &str| -> Result<u32> {
                t.parse::<u32>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("malformed token {:?}", t),
                })
            };
            let (u, v) = (parse(toks[0])?, parse(toks[1])?);
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                stats.duplicates_collapsed += 1;
                continue;
            }
            pairs.push(key);
        }
        if pairs.is_empty() {
            return Err(Error::EmptyInput("edge list has no usable edges".into()));
        }
        Ok((Graph::from_edge_pairs(&pairs)?, stats))
    }

    /// Serialize back to the edge-list format accepted by `parse_edge_list`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn contains(&self, id: u32) -> bool {
        self.index_of(id).is_some()
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn id_at(&self, idx: usize) -> u32 {
        self.ids[idx]
    }

    pub fn degree_at(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    pub fn degree(&self, id: u32) -> Result<usize> {
        Ok(self.degree_at(self.index_of(id).ok_or(Error::MissingNode(id))?))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Neighbor indices of an internal index, ascending.
    pub fn neighbors_at(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[idx].iter().copied()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(ui), Some(vi)) => self.adj[ui].contains(&vi),
            _ => false,
        }
    }

    /// Sorted edge list as external id pairs (u < v).
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for (ui, nbrs) in self.adj.iter().enumerate() {
            for &vi in nbrs {
                if ui < vi {
                    out.push((self.ids[ui], self.ids[vi]));
                }
            }
        }
        out
    }

    /// Flip edge (u, v): remove it if present, insert it otherwise.
    pub fn toggle_edge(&self, u: u32, v: u32) -> Result<Graph> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let ui = self.index_of(u).ok_or(Error::MissingNode(u))?;
        let vi = self.index_of(v).ok_or(Error::MissingNode(v))?;
        let mut g = self.clone();
        if g.adj[ui].remove(&vi) {
            g.adj[vi].remove(&ui);
            g.m -= 1;
        } else {
            g.adj[ui].insert(vi);
            g.adj[vi].insert(ui);
            g.m += 1;
        }
        Ok(g)
    }

    /// Inject `k` fresh proxy nodes next to `target`: a seeded Erdős–Rényi
    /// subgraph over the proxies with edge probability `p`, plus one edge
    /// from every proxy to the target. Fresh ids start at max(id)+1.
    pub fn inject_proxies(
        &self,
        target: u32,
        k: usize,
        p: f64,
        seed: u64,
    ) -> Result<(Graph, ProxySet)> {
        if !self.contains(target) {
            return Err(Error::MissingNode(target));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!("edge probability {p} outside [0,1]")));
        }
        let first = self
            .ids
            .last()
            .map(|&x| x + 1)
            .unwrap_or(0)
            .max(self.n() as u32);
        let proxy_ids: Vec<u32> = (0..k as u32).map(|i| first + i).collect();
        let mut g = self.clone();
        let base = g.n();
        for &pid in &proxy_ids {
            g.ids.push(pid);
            g.adj.push(BTreeSet::new());
        }
        let target_idx = g.index_of(target).unwrap();
        // attachment edges, free of budget
        for i in 0..k {
            g.adj[base + i].insert(target_idx);
            g.adj[target_idx].insert(base + i);
            g.m += 1;
        }
        // seeded ER subgraph over the proxies, fixed pair order
        let mut rng = rng_for(seed, 0x5052_4f58);
        for i in 0..k {
            for j in (i + 1)..k {
                if rng.gen::<f64>() < p {
                    g.adj[base + i].insert(base + j);
                    g.adj[base + j].insert(base + i);
                    g.m += 1;
                }
            }
        }
        Ok((
            g,
            ProxySet {
                proxy_ids,
                target_id: target,
                edge_prob: p,
                seed,
            },
        ))
    }

    /// Exact unnormalized shortest-path betweenness (Brandes accumulation).
    pub fn betweenness(&self) -> Vec<f64> {
        let n = self.n();
        let mut centrality = vec![0.0f64; n];
        let mut dist = vec![-1i64; n];
        let mut sigma = vec![0.0f64; n];
        let mut delta = vec![0.0f64; n];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();

        for s in 0..n {
            for v in 0..n {
                dist[v] = -1;
                sigma[v] = 0.0;
                delta[v] = 0.0;
                preds[v].clear();
            }
            stack.clear();
            queue.clear();
            dist[s] = 0;
            sigma[s] = 1.0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                stack.push(v);
                for &w in &self.adj[v] {
                    if dist[w] < 0 {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                    if dist[w] == dist[v] + 1 {
                        sigma[w] += sigma[v];
                        preds[w].push(v);
                    }
                }
            }
            while let Some(w) = stack.pop() {
                for &v in &preds[w] {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
                if w != s {
                    centrality[w] += delta[w];
                }
            }
        }
        // each unordered pair was counted from both endpoints
        for c in &mut centrality {
            *c /= 2.0;
        }
        centrality
    }

    /// Betweenness keyed by external node id.
    pub fn betweenness_by_id(&self) -> std::collections::BTreeMap<u32, f64> {
        self.betweenness()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (self.ids[i], c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(ids: &[u32]) -> Graph {
        let pairs: Vec<(u32, u32)> = ids.windows(2).map(|w| (w[0], w[1])).collect();
        Graph::from_edge_pairs(&pairs).unwrap()
    }

    #[test]
    fn parse_normalizes_duplicates_and_self_loops() {
        let (g, stats) = Graph::parse_edge_list("1 2\n2 1\n1 1\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert_eq!(stats.duplicates_collapsed, 1);
        assert_eq!(stats.self_loops_dropped, 1);
    }

    #[test]
    fn parse_rejects_empty_and_malformed() {
        assert!(matches!(
            Graph::parse_edge_list(""),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            Graph::parse_edge_list("# only comments\n"),
            Err(Error::EmptyInput(_))
        ));
        match Graph::parse_edge_list("1 2\n3 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
        match Graph::parse_edge_list("1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn kar_dataset_shape() {
        let (g, stats) =
            Graph::parse_edge_list(include_str!("../data/kar.edges")).unwrap();
        assert_eq!(g.n(), 34);
        assert_eq!(g.m(), 78);
        assert_eq!(stats, ParseStats::default());
    }

    #[test]
    fn edge_list_round_trips() {
        let (g, _) = Graph::parse_edge_list(include_str!("../data/kar.edges")).unwrap();
        let (g2, _) = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn toggle_adds_then_removes() {
        let (g, _) = Graph::parse_edge_list("0 1\n1 2\n2 3\n4 5\n0 5\n").unwrap();
        assert!(!g.has_edge(0, 3));
        let g2 = g.toggle_edge(0, 3).unwrap();
        assert!(g2.has_edge(0, 3));
        assert_eq!(g2.m(), g.m() + 1);
        let g3 = g2.toggle_edge(0, 3).unwrap();
        assert_eq!(g3, g);
        assert!(matches!(g.toggle_edge(2, 2), Err(Error::SelfLoop(2))));
        assert!(matches!(g.toggle_edge(0, 99), Err(Error::MissingNode(99))));
    }

    #[test]
    fn degree_sum_is_twice_m() {
        let (g, _) = Graph::parse_edge_list(include_str!("../data/kar.edges")).unwrap();
        let total: usize = (0..g.n()).map(|i| g.degree_at(i)).sum();
        assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn inject_proxies_is_seeded_and_attaches_all() {
        let (g, _) = Graph::parse_edge_list(include_str!("../data/kar.edges")).unwrap();
        let (g1, ps1) = g.inject_proxies(0, 2, 0.5, 7).unwrap();
        let (g2, ps2) = g.inject_proxies(0, 2, 0.5, 7).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(ps1, ps2);
        assert_eq!(g1.n(), 36);
        for &p in &ps1.proxy_ids {
            assert!(g1.has_edge(p, 0));
        }
        assert_eq!(g1.degree(0).unwrap(), g.degree(0).unwrap() + 2);

        let (g0, ps0) = g.inject_proxies(5, 0, 0.3, 1).unwrap();
        assert_eq!(g0, g);
        assert!(ps0.is_empty());

        // p = 1 gives the complete proxy subgraph
        let (gc, psc) = g.inject_proxies(0, 3, 1.0, 3).unwrap();
        assert_eq!(gc.m(), g.m() + 3 + 3);
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(gc.has_edge(psc.proxy_ids[i], psc.proxy_ids[j]));
            }
        }

        assert!(matches!(
            g.inject_proxies(999, 1, 0.5, 0),
            Err(Error::MissingNode(999))
        ));
    }

    #[test]
    fn budget_examples() {
        // 78/34 + 1 = 3.294…, multiplier 1.0 → 3
        let b = Budget::from_mu(78.0 / 34.0 + 1.0, 1.0);
        assert_eq!(b.beta, 3);
        // 6594/4941 = 1.334…, multiplier 0.5 → max(1, round(0.667)) = 1
        let b = Budget::from_mu(6594.0 / 4941.0, 0.5);
        assert_eq!(b.beta, 1);
        // 425/112 = 3.795…, multiplier 2.0 → round(7.589) = 8
        let b = Budget::from_mu(425.0 / 112.0, 2.0);
        assert_eq!(b.beta, 8);
    }

    #[test]
    fn budget_from_graph_matches_counts() {
        let (g, _) = Graph::parse_edge_list(include_str!("../data/kar.edges")).unwrap();
        let b = Budget::from_graph(&g, 1.0, true);
        assert_eq!(b.beta, 3);
        assert!((b.mu - (78.0 / 34.0 + 1.0)).abs() < 1e-12);
        let b2 = Budget::from_graph(&g, 2.0, true);
        assert_eq!(b2.beta, 7);
    }

    #[test]
    fn betweenness_star_and_path() {
        // star K_{1,4}, center 0
        let g = Graph::from_edge_pairs(&[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let b = g.betweenness_by_id();
        assert!((b[&0] - 6.0).abs() < 1e-12);
        for leaf in 1..=4 {
            assert!(b[&leaf].abs() < 1e-12);
        }
        // path a-b-c
        let g = path_graph(&[10, 11, 12]);
        let b = g.betweenness_by_id();
        assert!((b[&11] - 1.0).abs() < 1e-12);
        assert!(b[&10].abs() < 1e-12 && b[&12].abs() < 1e-12);
        // 4-cycle: symmetric
        let g = Graph::from_edge_pairs(&[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let b = g.betweenness();
        for &v in &b {
            assert!((v - b[0]).abs() < 1e-12);
        }
    }
}
