//! Graph data model: nodes with features/labels/masks and canonical
//! undirected edges, plus the edge-set and BFS helpers shared across the
//! pipeline.

mod io;
mod partition;
mod propagation;
mod sbm;

pub use io::{load_graph, save_graph};
pub use partition::{partition_shadow_target, PartitionResult};
pub use propagation::{build_propagation, PropagationKind, PropagationMatrix, PropagationSpec};
pub use sbm::generate_sbm;

use std::collections::HashSet;

use crate::error::Error;
use crate::{Mat, Result, F};

/// Undirected attributed graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    num_nodes: usize,
    /// Canonical `(min, max)` pairs, sorted, unique, no self-loops.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbor lists derived from `edges`.
    adj: Vec<Vec<usize>>,
    features: Mat,
    labels: Vec<usize>,
    num_classes: usize,
    train_mask: Vec<bool>,
    node_ids: Vec<i64>,
}

impl Graph {
    /// Validates and canonicalizes. Duplicate undirected edges collapse to
    /// one stored pair; self-loops are rejected.
    pub fn new(
        num_nodes: usize,
        raw_edges: Vec<(usize, usize)>,
        features: Mat,
        labels: Vec<usize>,
        num_classes: usize,
        train_mask: Vec<bool>,
        node_ids: Vec<i64>,
    ) -> Result<Self> {
        if features.rows() != num_nodes
            || labels.len() != num_nodes
            || train_mask.len() != num_nodes
            || node_ids.len() != num_nodes
        {
            return Err(Error::Validation(format!(
                "node attribute lengths disagree with num_nodes = {num_nodes}"
            )));
        }
        if !features.all_finite() {
            return Err(Error::Validation("non-finite feature entry".into()));
        }
        if let Some(l) = labels.iter().find(|&&l| l >= num_classes) {
            return Err(Error::Validation(format!(
                "label {l} out of range for {num_classes} classes"
            )));
        }
        let mut id_set = HashSet::new();
        for id in &node_ids {
            if !id_set.insert(*id) {
                return Err(Error::Validation(format!("duplicate node id {id}")));
            }
        }
        let mut canon = HashSet::new();
        for &(a, b) in &raw_edges {
            if a >= num_nodes || b >= num_nodes {
                return Err(Error::Validation(format!(
                    "edge ({a}, {b}) references a node >= {num_nodes}"
                )));
            }
            if a == b {
                return Err(Error::Validation(format!("self-loop on node {a}")));
            }
            canon.insert((a.min(b), a.max(b)));
        }
        let mut edges: Vec<(usize, usize)> = canon.into_iter().collect();
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); num_nodes];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { num_nodes, edges, adj, features, labels, num_classes, train_mask, node_ids })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let pair = (a.min(b), a.max(b));
        self.edges.binary_search(&pair).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn features(&self) -> &Mat {
        &self.features
    }

    pub fn feature_dim(&self) -> usize {
        self.features.cols()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn train_mask(&self) -> &[bool] {
        &self.train_mask
    }

    pub fn node_ids(&self) -> &[i64] {
        &self.node_ids
    }

    /// New graph lacking exactly the given edges; everything else unchanged.
    pub fn remove_edges(&self, delta: &EdgeSet) -> Result<Graph> {
        let missing: Vec<(usize, usize)> = delta
            .pairs()
            .iter()
            .copied()
            .filter(|&(a, b)| !self.has_edge(a, b))
            .collect();
        if !missing.is_empty() {
            return Err(Error::Validation(format!(
                "edges not present in graph: {missing:?}"
            )));
        }
        let drop: HashSet<(usize, usize)> = delta.pairs().iter().copied().collect();
        let kept: Vec<(usize, usize)> =
            self.edges.iter().copied().filter(|e| !drop.contains(e)).collect();
        Graph::new(
            self.num_nodes,
            kept,
            self.features.clone(),
            self.labels.clone(),
            self.num_classes,
            self.train_mask.clone(),
            self.node_ids.clone(),
        )
    }
}

/// Ordered set of canonical undirected edges (the unlearning target).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    pairs: Vec<(usize, usize)>,
}

impl EdgeSet {
    /// Canonicalizes to `(min, max)`. Rejects self-loops, out-of-range
    /// endpoints, and duplicates.
    pub fn new(raw: Vec<(usize, usize)>, num_nodes: usize) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut pairs = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            if a >= num_nodes || b >= num_nodes {
                return Err(Error::Validation(format!(
                    "edge ({a}, {b}) references a node >= {num_nodes}"
                )));
            }
            if a == b {
                return Err(Error::Validation(format!("self-loop on node {a}")));
            }
            let pair = (a.min(b), a.max(b));
            if !seen.insert(pair) {
                return Err(Error::Validation(format!("duplicate pair {pair:?}")));
            }
            pairs.push(pair);
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Deduplicated endpoints in ascending order.
    pub fn endpoints(&self) -> Vec<usize> {
        let mut nodes: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        nodes
    }
}

/// Multi-source BFS; `None` marks unreachable nodes.
pub fn multi_source_bfs(g: &Graph, sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.num_nodes()];
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Sum of feature-dim-wide one-hot encodings of labels, for regression-style
/// targets: `Y[i][labels[i]] = 1`.
pub fn one_hot_labels(g: &Graph) -> Mat {
    let mut y = Mat::zeros(g.num_nodes(), g.num_classes());
    for (i, &l) in g.labels().iter().enumerate() {
        y.set(i, l, 1.0 as F);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(edges: Vec<(usize, usize)>, n: usize) -> Graph {
        Graph::new(
            n,
            edges,
            Mat::zeros(n, 2),
            vec![0; n],
            1,
            vec![true; n],
            (0..n as i64).collect(),
        )
        .unwrap()
    }

    #[test]
    fn canonicalizes_and_deduplicates() {
        let g = toy(vec![(2, 1), (1, 2), (0, 1)], 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_self_loop_and_dangling() {
        assert!(Graph::new(
            2,
            vec![(0, 0)],
            Mat::zeros(2, 1),
            vec![0, 0],
            1,
            vec![true, true],
            vec![0, 1],
        )
        .is_err());
        assert!(Graph::new(
            2,
            vec![(0, 5)],
            Mat::zeros(2, 1),
            vec![0, 0],
            1,
            vec![true, true],
            vec![0, 1],
        )
        .is_err());
    }

    #[test]
    fn remove_empty_is_identity() {
        let g = toy(vec![(0, 1), (1, 2), (0, 2)], 3);
        let delta = EdgeSet::new(vec![], 3).unwrap();
        assert_eq!(g.remove_edges(&delta).unwrap(), g);
    }

    #[test]
    fn triangle_minus_one_edge() {
        let g = toy(vec![(0, 1), (1, 2), (0, 2)], 3);
        let delta = EdgeSet::new(vec![(1, 0)], 3).unwrap();
        let h = g.remove_edges(&delta).unwrap();
        assert_eq!(h.num_edges(), 2);
        assert!(!h.has_edge(0, 1));
    }

    #[test]
    fn remove_missing_edge_lists_offenders() {
        let g = toy(vec![(0, 1)], 3);
        let delta = EdgeSet::new(vec![(1, 2)], 3).unwrap();
        let err = g.remove_edges(&delta).unwrap_err();
        assert!(err.to_string().contains("(1, 2)"), "{err}");
    }

    #[test]
    fn removed_edge_lengthens_cycle_distance() {
        // 4-cycle 0-1-2-3-0; dropping (0,1) forces the long way around
        let g = toy(vec![(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        let delta = EdgeSet::new(vec![(0, 1)], 4).unwrap();
        let h = g.remove_edges(&delta).unwrap();
        let dist = multi_source_bfs(&h, &[0]);
        assert_eq!(dist[1], Some(3));
    }

    #[test]
    fn edge_set_rejects_duplicates() {
        assert!(EdgeSet::new(vec![(0, 1), (1, 0)], 3).is_err());
    }
}
