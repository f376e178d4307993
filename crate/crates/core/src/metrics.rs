//! Closed-form comparison figures for local quantum coding (LQC) against
//! EPR distribution from a central node on regular trees.
//!
//! Latency and memory are asymptotic in nature; the formulas here fix every
//! constant to 1 and are reported in model units.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::NetworkTopology;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("tree branching must be at least 2, got {0}")]
    Branching(u32),
    #[error("tree depth must be at least 1, got {0}")]
    Depth(u32),
    #[error("failure probability {0} is outside [0, 1]")]
    Probability(String),
    #[error("n^p overflows for n = {n}, p = {p}")]
    Overflow { n: u32, p: u32 },
    #[error("unknown scheme {0:?}; expected LQC or EPR")]
    UnknownScheme(String),
    #[error("topology has no clients")]
    NoClients,
    #[error("no candidate centre reaches every client")]
    Disconnected,
}

pub type Result<T, E = MetricsError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "LQC")]
    Lqc,
    #[serde(rename = "EPR")]
    Epr,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::Lqc, Scheme::Epr];
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Lqc => "LQC",
            Scheme::Epr => "EPR",
        })
    }
}

impl FromStr for Scheme {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LQC" => Ok(Scheme::Lqc),
            "EPR" => Ok(Scheme::Epr),
            _ => Err(MetricsError::UnknownScheme(s.to_string())),
        }
    }
}

/// Tree whose nodes all have `n` children, with clients at depth `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularTreeSpec {
    n: u32,
    p: u32,
}

impl RegularTreeSpec {
    pub fn new(n: u32, p: u32) -> Result<Self> {
        if n < 2 {
            return Err(MetricsError::Branching(n));
        }
        if p < 1 {
            return Err(MetricsError::Depth(p));
        }
        n.checked_pow(p).ok_or(MetricsError::Overflow { n, p })?;
        Ok(Self { n, p })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `n^p`, the number of clients.
    pub fn clients(&self) -> u64 {
        (self.n as u64).pow(self.p)
    }

    /// Relays above the clients: `1 + n + … + n^(p−1)`.
    pub fn relays(&self) -> u64 {
        (0..self.p).map(|i| (self.n as u64).pow(i)).sum()
    }

    /// The tree as a topology with unit edges.
    pub fn topology(&self) -> NetworkTopology {
        NetworkTopology::regular_tree(self.n as usize, self.p as usize)
    }
}

/// Flag-erasure channel `N(ρ) = (1 − p)ρ + p·e`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    p_fail: f64,
}

impl NoiseSpec {
    pub fn new(p_fail: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_fail) {
            return Err(MetricsError::Probability(p_fail.to_string()));
        }
        Ok(Self { p_fail })
    }

    pub fn p_fail(&self) -> f64 {
        self.p_fail
    }
}

/// Communication rounds: `p` for LQC, `n^p` for central EPR distribution.
pub fn latency(spec: RegularTreeSpec, scheme: Scheme) -> u64 {
    match scheme {
        Scheme::Lqc => spec.p as u64,
        Scheme::Epr => spec.clients(),
    }
}

/// Largest qubit memory any node needs: `n + 1` for LQC, `n^p` for EPR.
pub fn memory_qubits(spec: RegularTreeSpec, scheme: Scheme) -> u64 {
    match scheme {
        Scheme::Lqc => spec.n as u64 + 1,
        Scheme::Epr => spec.clients(),
    }
}

/// Probability that none of `channels` uses is flagged: `(1 − p)^channels`.
pub fn success_probability(noise: NoiseSpec, channels: u64) -> f64 {
    let exponent = i32::try_from(channels).unwrap_or(i32::MAX);
    (1.0 - noise.p_fail).powi(exponent)
}

/// Probability of exactly `j` flagged channels out of `channels`, for
/// `j = 0..=channels`.
pub fn erasure_distribution(noise: NoiseSpec, channels: u32) -> Vec<f64> {
    let (p, q) = (noise.p_fail, 1.0 - noise.p_fail);
    let mut choose = 1.0f64;
    (0..=channels)
        .map(|j| {
            if j > 0 {
                choose = choose * (channels - j + 1) as f64 / j as f64;
            }
            choose * q.powi((channels - j) as i32) * p.powi(j as i32)
        })
        .collect()
}

/// Channel uses on the regular tree. LQC uses every edge once (`Σ n^i`);
/// EPR sends one end-to-end pair per client across `p` hops (`p·n^p`).
pub fn tree_channel_count(spec: RegularTreeSpec, scheme: Scheme) -> u64 {
    match scheme {
        Scheme::Lqc => (1..=spec.p).map(|i| (spec.n as u64).pow(i)).sum(),
        Scheme::Epr => spec.p as u64 * spec.clients(),
    }
}

/// Channel uses on an arbitrary topology. LQC uses every edge channel once.
/// EPR routes one pair per client from a central node along a shortest path;
/// the centre is the relay (or any node when there are no relays) with the
/// least total hop distance to the clients, lowest index on ties.
pub fn channel_count(t: &NetworkTopology, scheme: Scheme) -> Result<u64> {
    let clients = t.clients();
    if clients.is_empty() {
        return Err(MetricsError::NoClients);
    }
    match scheme {
        Scheme::Lqc => Ok(t.total_channels() as u64),
        Scheme::Epr => {
            let relays = t.relays();
            let candidates = if relays.is_empty() {
                (0..t.num_nodes()).collect()
            } else {
                relays
            };
            let mut best: Option<u64> = None;
            for c in candidates {
                let dist = t.hop_distances(c);
                let total: Option<u64> = clients.iter().map(|&v| dist[v].map(|d| d as u64)).sum();
                if let Some(total) = total {
                    if best.map_or(true, |b| total < b) {
                        best = Some(total);
                    }
                }
            }
            best.ok_or(MetricsError::Disconnected)
        }
    }
}

/// One CSV row of a metrics sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub n: u32,
    pub p: u32,
    pub scheme: Scheme,
    pub latency: u64,
    pub memory: u64,
    pub channels: u64,
    pub p_success: Option<f64>,
}

pub const CSV_HEADER: &str = "n,p,scheme,latency,memory,channels,p_success";

impl MetricsRow {
    pub fn for_tree(spec: RegularTreeSpec, scheme: Scheme, noise: Option<NoiseSpec>) -> Self {
        let channels = tree_channel_count(spec, scheme);
        Self {
            n: spec.n,
            p: spec.p,
            scheme,
            latency: latency(spec, scheme),
            memory: memory_qubits(spec, scheme),
            channels,
            p_success: noise.map(|nz| success_probability(nz, channels)),
        }
    }

    /// Empty `p_success` when no noise level was given.
    pub fn to_csv(&self) -> String {
        let p_success = self.p_success.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.n, self.p, self.scheme, self.latency, self.memory, self.channels, p_success
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tree(n: u32, p: u32) -> RegularTreeSpec {
        RegularTreeSpec::new(n, p).unwrap()
    }

    #[test]
    fn latency_examples() {
        assert_eq!(latency(tree(3, 4), Scheme::Lqc), 4);
        assert_eq!(latency(tree(3, 4), Scheme::Epr), 81);
        assert_eq!(latency(tree(5, 1), Scheme::Lqc), 1);
        assert_eq!(latency(tree(5, 1), Scheme::Epr), 5);
        assert_eq!(latency(tree(4, 3), Scheme::Lqc), 3);
        assert_eq!(latency(tree(4, 3), Scheme::Epr), 64);
    }

    #[test]
    fn memory_examples() {
        assert_eq!(memory_qubits(tree(3, 3), Scheme::Lqc), 4);
        assert_eq!(memory_qubits(tree(3, 3), Scheme::Epr), 27);
        assert_eq!(memory_qubits(tree(2, 1), Scheme::Lqc), 3);
        assert_eq!(memory_qubits(tree(2, 1), Scheme::Epr), 2);
        assert_eq!(memory_qubits(tree(4, 4), Scheme::Lqc), 5);
        assert_eq!(memory_qubits(tree(4, 4), Scheme::Epr), 256);
    }

    #[test]
    fn success_examples() {
        let zero = NoiseSpec::new(0.0).unwrap();
        assert_eq!(success_probability(zero, 17), 1.0);
        let tenth = NoiseSpec::new(0.1).unwrap();
        assert!((success_probability(tenth, 1) - 0.9).abs() < 1e-15);
        assert!(NoiseSpec::new(1.5).is_err());
        assert!(NoiseSpec::new(f64::NAN).is_err());
    }

    #[test]
    fn channel_counts_on_trees_and_topologies() {
        assert_eq!(tree_channel_count(tree(3, 2), Scheme::Lqc), 12);
        assert_eq!(tree_channel_count(tree(3, 2), Scheme::Epr), 18);
        let t = tree(3, 2).topology();
        assert_eq!(channel_count(&t, Scheme::Lqc).unwrap(), 12);
        assert_eq!(channel_count(&t, Scheme::Epr).unwrap(), 18);
        let star = NetworkTopology::star(5);
        assert_eq!(channel_count(&star, Scheme::Lqc).unwrap(), 5);
        assert_eq!(channel_count(&star, Scheme::Epr).unwrap(), 5);
        assert_eq!(
            channel_count(&NetworkTopology::builder().build(), Scheme::Lqc).unwrap_err(),
            MetricsError::NoClients
        );
    }

    #[test]
    fn depth_two_tree_success_comparison() {
        let spec = tree(3, 2);
        for i in 1..100 {
            let noise = NoiseSpec::new(i as f64 / 100.0).unwrap();
            let lqc = success_probability(noise, tree_channel_count(spec, Scheme::Lqc));
            let epr = success_probability(noise, tree_channel_count(spec, Scheme::Epr));
            assert!(lqc > epr);
        }
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(
            RegularTreeSpec::new(1, 3).unwrap_err(),
            MetricsError::Branching(1)
        );
        assert_eq!(
            RegularTreeSpec::new(3, 0).unwrap_err(),
            MetricsError::Depth(0)
        );
        assert!(matches!(
            RegularTreeSpec::new(10, 40),
            Err(MetricsError::Overflow { .. })
        ));
        assert_eq!("epr".parse::<Scheme>().unwrap(), Scheme::Epr);
        assert!("x".parse::<Scheme>().is_err());
    }

    #[test]
    fn csv_row() {
        let row = MetricsRow::for_tree(tree(3, 2), Scheme::Epr, None);
        assert_eq!(row.to_csv(), "3,2,EPR,9,9,18,");
        let noisy =
            MetricsRow::for_tree(tree(3, 1), Scheme::Lqc, Some(NoiseSpec::new(0.5).unwrap()));
        assert_eq!(noisy.to_csv(), "3,1,LQC,1,4,3,0.125");
    }

    #[test]
    fn erasure_distribution_normalized() {
        for n in 0..=30 {
            for p in [0.0, 0.01, 0.3, 0.5, 0.99, 1.0] {
                let total: f64 = erasure_distribution(NoiseSpec::new(p).unwrap(), n)
                    .iter()
                    .sum();
                assert!((total - 1.0).abs() < 1e-12, "n={n} p={p} total={total}");
            }
        }
    }

    proptest! {
        #[test]
        fn lqc_beats_epr_beyond_depth_one(n in 2u32..8, p in 2u32..8) {
            let spec = tree(n, p);
            prop_assert!(latency(spec, Scheme::Lqc) < latency(spec, Scheme::Epr));
            prop_assert!(memory_qubits(spec, Scheme::Lqc) < memory_qubits(spec, Scheme::Epr));
            prop_assert!(tree_channel_count(spec, Scheme::Lqc) <= tree_channel_count(spec, Scheme::Epr));
        }

        #[test]
        fn lqc_memory_ignores_depth(n in 2u32..10, p in 1u32..6, q in 1u32..6) {
            prop_assert_eq!(memory_qubits(tree(n, p), Scheme::Lqc), memory_qubits(tree(n, q), Scheme::Lqc));
            prop_assert_eq!(memory_qubits(tree(n, p + 1), Scheme::Epr), n as u64 * memory_qubits(tree(n, p), Scheme::Epr));
        }

        #[test]
        fn success_strictly_decreasing(p in 0.001f64..0.9, c in 0u64..100) {
            let noise = NoiseSpec::new(p).unwrap();
            prop_assert!(success_probability(noise, c + 1) < success_probability(noise, c));
        }
    }
}
