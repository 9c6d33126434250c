//! Black-box community detection: DEMON and ANGEL (overlapping) plus
//! Louvain (non-overlapping), behind one seeded dispatch function.

mod angel;
mod demon;
mod label_prop;
mod louvain;

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use angel::angel_detect;
pub use demon::demon_detect;
pub use louvain::louvain_detect;

/// Which detection algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectorName {
    Demon,
    Angel,
    Louvain,
}

impl DetectorName {
    pub fn as_str(&self) -> &'static str {
        match self {
            DetectorName::Demon => "demon",
            DetectorName::Angel => "angel",
            DetectorName::Louvain => "louvain",
        }
    }
}

impl FromStr for DetectorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "demon" => Ok(DetectorName::Demon),
            "angel" => Ok(DetectorName::Angel),
            "louvain" => Ok(DetectorName::Louvain),
            other => Err(Error::Config(format!("unknown detector {other:?}"))),
        }
    }
}

impl std::fmt::Display for DetectorName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Detector choice plus its knobs. `phi` and `min_size` only apply to the
/// overlapping algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorConfig {
    pub name: DetectorName,
    /// Containment-overlap merging threshold, in (0, 1].
    pub phi: f64,
    /// Minimum community size kept in the output.
    pub min_size: usize,
    pub seed: u64,
}

impl DetectorConfig {
    pub fn new(name: DetectorName, seed: u64) -> Self {
        DetectorConfig {
            name,
            phi: 0.8,
            min_size: 3,
            seed,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.phi > 0.0 && self.phi <= 1.0) {
            return Err(Error::Config(format!("phi {} outside (0, 1]", self.phi)));
        }
        if self.min_size < 1 {
            return Err(Error::Config("min_size must be >= 1".into()));
        }
        Ok(())
    }
}

/// A set of node-sets produced by a detector. Overlapping detectors may
/// repeat nodes across communities and leave nodes unassigned; Louvain
/// yields a partition of all nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunityCover {
    pub communities: Vec<BTreeSet<u32>>,
    pub detector_name: String,
    pub seed: u64,
}

impl CommunityCover {
    pub fn new(mut communities: Vec<BTreeSet<u32>>, detector_name: &str, seed: u64) -> Self {
        communities.retain(|c| !c.is_empty());
        communities.sort();
        communities.dedup();
        CommunityCover {
            communities,
            detector_name: detector_name.to_string(),
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    /// Indices of every community containing `u` (possibly empty).
    pub fn communities_of(&self, u: u32) -> Vec<usize> {
        self.communities
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&u))
            .map(|(i, _)| i)
            .collect()
    }

    /// Drop members outside `universe` and discard communities left empty.
    pub fn restrict_to(&self, universe: &BTreeSet<u32>) -> CommunityCover {
        let communities: Vec<BTreeSet<u32>> = self
            .communities
            .iter()
            .map(|c| c.intersection(universe).copied().collect::<BTreeSet<u32>>())
            .collect();
        CommunityCover::new(communities, &self.detector_name, self.seed)
    }

    /// One community per line, space-separated node ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.communities {
            let line: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str, detector_name: &str, seed: u64) -> Result<CommunityCover> {
        let mut communities = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut set = BTreeSet::new();
            for tok in line.split_whitespace() {
                let id: u32 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("malformed node id {tok:?}"),
                })?;
                set.insert(id);
            }
            communities.push(set);
        }
        Ok(CommunityCover::new(communities, detector_name, seed))
    }
}

/// Run the configured detector. Deterministic given `(g, cfg.seed)`.
pub fn detect(g: &Graph, cfg: &DetectorConfig) -> Result<CommunityCover> {
    cfg.validate()?;
    if g.n() == 0 {
        return Err(Error::EmptyInput("cannot detect on an empty graph".into()));
    }
    Ok(match cfg.name {
        DetectorName::Demon => demon_detect(g, cfg.phi, cfg.min_size, cfg.seed),
        DetectorName::Angel => angel_detect(g, cfg.phi, cfg.min_size, cfg.seed),
        DetectorName::Louvain => louvain_detect(g, cfg.seed),
    })
}

/// Containment overlap |a∩b| / min(|a|, |b|) of two non-empty sets.
pub(crate) fn containment(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> f64 {
    let inter = a.intersection(b).count();
    inter as f64 / a.len().min(b.len()) as f64
}

/// Union communities until no pair has containment overlap ≥ phi.
/// Deterministic: communities are kept canonically sorted and the first
/// matching pair in scan order merges first.
pub(crate) fn merge_to_fixpoint(mut comms: Vec<BTreeSet<u32>>, phi: f64) -> Vec<BTreeSet<u32>> {
    comms.retain(|c| !c.is_empty());
    comms.sort();
    comms.dedup();
    'outer: loop {
        for i in 0..comms.len() {
            for j in (i + 1)..comms.len() {
                if containment(&comms[i], &comms[j]) >= phi {
                    let b = comms.remove(j);
                    let mut merged = comms.remove(i);
                    merged.extend(b);
                    comms.push(merged);
                    comms.sort();
                    comms.dedup();
                    continue 'outer;
                }
            }
        }
        return comms;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn communities_of_handles_overlap_and_absence() {
        let cover = CommunityCover::new(
            vec![set(&[1, 2, 3]), set(&[4, 5]), set(&[1, 5, 6])],
            "demon",
            0,
        );
        assert_eq!(cover.communities_of(1), vec![0, 1]);
        assert_eq!(cover.communities_of(4), vec![2]);
        assert!(cover.communities_of(99).is_empty());
    }

    #[test]
    fn cover_text_round_trip() {
        let cover = CommunityCover::new(vec![set(&[3, 1, 2]), set(&[9, 8])], "angel", 5);
        let text = cover.to_text();
        assert_eq!(text, "1 2 3\n8 9\n");
        let back = CommunityCover::parse_text(&text, "angel", 5).unwrap();
        assert_eq!(back, cover);
    }

    #[test]
    fn merge_reaches_fixpoint_and_is_idempotent() {
        let comms = vec![
            set(&[1, 2, 3, 4, 5]),
            set(&[1, 2, 3, 4]), // contained → merges
            set(&[7, 8, 9]),
            set(&[4, 7]), // containment 0.5 with both → stays
        ];
        let merged = merge_to_fixpoint(comms, 0.8);
        for i in 0..merged.len() {
            for j in (i + 1)..merged.len() {
                assert!(containment(&merged[i], &merged[j]) < 0.8);
            }
        }
        let again = merge_to_fixpoint(merged.clone(), 0.8);
        assert_eq!(again, merged);
    }

    #[test]
    fn restrict_drops_foreign_nodes() {
        let cover = CommunityCover::new(vec![set(&[1, 2, 50]), set(&[50, 51])], "demon", 0);
        let uni = set(&[1, 2, 3, 4]);
        let r = cover.restrict_to(&uni);
        assert_eq!(r.communities, vec![set(&[1, 2])]);
    }

    #[test]
    fn unknown_detector_name_is_config_error() {
        assert!(matches!(
            "walktrap".parse::<DetectorName>(),
            Err(Error::Config(_))
        ));
    }
}
