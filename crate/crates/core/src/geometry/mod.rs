//! Spatial analyses over a node snapshot.
//!
//! Every function takes the full node list and ignores dead nodes. Ranges
//! are closed disks: a point at exactly `range` counts as covered or linked.

mod union_find;

pub use union_find::UnionFind;

use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::node::SensorNode;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageResult {
    /// Fraction of lattice points within sensing range of at least one alive node.
    pub covered_fraction: f64,
    pub k: u32,
    pub k_covered_fraction: f64,
    pub targets_covered: usize,
    pub targets_total: usize,
    /// `depth_profile[j - 1]` is the fraction of lattice points covered by at
    /// least `j` alive nodes; trailing zero depths are omitted.
    pub depth_profile: Vec<f64>,
}

impl CoverageResult {
    /// Fraction of lattice points covered by at least `k` alive nodes.
    pub fn fraction_at_least(&self, k: u32) -> f64 {
        match k {
            0 => 1.0,
            k => self.depth_profile.get(k as usize - 1).copied().unwrap_or(0.0),
        }
    }

    pub fn all_targets_covered(&self) -> bool {
        self.targets_covered == self.targets_total
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectivityResult {
    pub component_count: usize,
    pub largest_component_size: usize,
    pub fraction_with_sink_path: f64,
    pub is_fully_connected: bool,
}

/// Cell-center coordinate of lattice index `i` on an axis of `len` split into `res` cells.
fn cell_center(i: usize, len: f64, res: usize) -> f64 {
    (i as f64 + 0.5) * len / res as f64
}

/// Index window of cell centers that may lie within `r` of `c`; widened by one
/// cell on each side, callers re-check the exact distance.
fn cell_window(c: f64, r: f64, len: f64, res: usize) -> (usize, usize) {
    let scale = res as f64 / len;
    let lo = ((c - r) * scale - 0.5).floor() - 1.0;
    let hi = ((c + r) * scale - 0.5).ceil() + 1.0;
    let max = (res - 1) as f64;
    (lo.clamp(0.0, max) as usize, hi.clamp(0.0, max) as usize)
}

/// Number of alive nodes covering each lattice point, row-major by y then x.
pub fn coverage_depths(nodes: &[SensorNode], config: &NetworkConfig) -> Vec<u32> {
    let res = config.grid_resolution;
    let r = config.sensing_range;
    let r2 = r * r;
    let mut depth = vec![0u32; res * res];
    for n in nodes.iter().filter(|n| n.alive) {
        let (x0, x1) = cell_window(n.x, r, config.width, res);
        let (y0, y1) = cell_window(n.y, r, config.height, res);
        for j in y0..=y1 {
            let py = cell_center(j, config.height, res);
            for i in x0..=x1 {
                let px = cell_center(i, config.width, res);
                if n.distance_sq(px, py) <= r2 {
                    depth[j * res + i] += 1;
                }
            }
        }
    }
    depth
}

/// Lattice-sampled area coverage plus target coverage for `config.targets`.
pub fn area_coverage(nodes: &[SensorNode], config: &NetworkConfig, k: u32) -> CoverageResult {
    assert!(k >= 1, "coverage depth k must be >= 1");
    let depth = coverage_depths(nodes, config);
    let points = depth.len() as f64;
    let max_depth = depth.iter().copied().max().unwrap_or(0) as usize;
    let mut at_least = vec![0usize; max_depth + 1];
    for &d in &depth {
        at_least[d as usize] += 1;
    }
    // suffix sums: at_least[j] = #points with depth >= j
    for j in (0..max_depth).rev() {
        at_least[j] += at_least[j + 1];
    }
    let depth_profile: Vec<f64> = at_least[1..].iter().map(|&c| c as f64 / points).collect();
    let (targets_covered, _) = target_coverage(nodes, &config.targets, config.sensing_range);

    let mut result = CoverageResult {
        covered_fraction: 0.0,
        k,
        k_covered_fraction: 0.0,
        targets_covered,
        targets_total: config.targets.len(),
        depth_profile,
    };
    result.covered_fraction = result.fraction_at_least(1);
    result.k_covered_fraction = result.fraction_at_least(k);
    result
}

/// Counts targets within `sensing_range` of some alive node. An empty target
/// list is trivially fully covered.
pub fn target_coverage(nodes: &[SensorNode], targets: &[[f64; 2]], sensing_range: f64) -> (usize, bool) {
    let r2 = sensing_range * sensing_range;
    let covered = targets
        .iter()
        .filter(|t| nodes.iter().any(|n| n.alive && n.distance_sq(t[0], t[1]) <= r2))
        .count();
    (covered, covered == targets.len())
}

/// Component label per node: the smallest node index in its component, or
/// `None` for dead nodes.
pub fn component_labels(nodes: &[SensorNode], radio_range: f64) -> Vec<Option<usize>> {
    let mut uf = link_alive(nodes, radio_range);
    let mut min_of_root = vec![usize::MAX; nodes.len()];
    let roots: Vec<Option<usize>> = (0..nodes.len())
        .map(|i| nodes[i].alive.then(|| uf.find(i)))
        .collect();
    for (i, r) in roots.iter().enumerate() {
        if let Some(r) = *r {
            min_of_root[r] = min_of_root[r].min(i);
        }
    }
    roots.into_iter().map(|r| r.map(|r| min_of_root[r])).collect()
}

fn link_alive(nodes: &[SensorNode], radio_range: f64) -> UnionFind {
    let r2 = radio_range * radio_range;
    let alive: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].alive).collect();
    let mut uf = UnionFind::new(nodes.len());
    for (a, &i) in alive.iter().enumerate() {
        for &j in &alive[a + 1..] {
            if nodes[i].distance_sq(nodes[j].x, nodes[j].y) <= r2 {
                uf.union(i, j);
            }
        }
    }
    uf
}

/// Disk-model communication graph over alive nodes.
pub fn build_connectivity(nodes: &[SensorNode], config: &NetworkConfig) -> ConnectivityResult {
    let mut uf = link_alive(nodes, config.radio_range);
    let mut size_of_root = vec![0usize; nodes.len()];
    let mut root_has_sink = vec![false; nodes.len()];
    let mut alive = 0usize;
    for (i, n) in nodes.iter().enumerate().filter(|(_, n)| n.alive) {
        let r = uf.find(i);
        size_of_root[r] += 1;
        root_has_sink[r] |= n.is_sink();
        alive += 1;
    }
    let component_count = size_of_root.iter().filter(|&&s| s > 0).count();
    let largest_component_size = size_of_root.iter().copied().max().unwrap_or(0);
    let with_sink_path: usize = size_of_root
        .iter()
        .zip(&root_has_sink)
        .filter(|(_, &has)| has)
        .map(|(s, _)| s)
        .sum();
    ConnectivityResult {
        component_count,
        largest_component_size,
        fraction_with_sink_path: if alive == 0 { 0.0 } else { with_sink_path as f64 / alive as f64 },
        is_fully_connected: component_count <= 1,
    }
}
