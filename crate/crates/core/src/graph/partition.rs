//! Balanced two-way partitioning into shadow and target subgraphs.
//!
//! Seeded BFS growth from two mutually distant roots produces a balanced
//! bisection; a boundary-refinement pass then greedily moves nodes across
//! the cut while the size gap stays within 10% of the node count. Cross
//! edges are dropped and each side becomes an independent graph with fresh
//! 90/10 train/test masks.

use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::VecDeque;

use super::sbm::TRAIN_FRACTION;
use super::{multi_source_bfs, Graph};
use crate::error::Error;
use crate::numerics::SeedStream;
use crate::{Mat, Result};

/// Two disjoint halves of a graph; no edge crosses the split.
#[derive(Debug, Clone)]
pub struct PartitionResult {
    pub shadow: Graph,
    pub target: Graph,
    pub cut_edges: usize,
}

pub fn partition_shadow_target(g: &Graph, seed: u64) -> Result<PartitionResult> {
    let n = g.num_nodes();
    if n < 4 {
        return Err(Error::Argument(format!("graph too small to partition ({n} nodes)")));
    }
    let stream = SeedStream::new(seed);
    let mut rng = stream.rng("partition-roots");

    let root_a = rng.gen_range(0..n);
    let dist = multi_source_bfs(g, &[root_a]);
    // farthest reachable node, unless the graph is disconnected, in which
    // case any unreachable node is farther still
    let root_b = match (0..n).find(|&v| dist[v].is_none()) {
        Some(v) => v,
        None => (0..n)
            .filter(|&v| v != root_a)
            .max_by_key(|&v| (dist[v], std::cmp::Reverse(v)))
            .expect("n >= 4"),
    };

    let mut side: Vec<Option<usize>> = vec![None; n];
    side[root_a] = Some(0);
    side[root_b] = Some(1);
    let mut queues = [VecDeque::from([root_a]), VecDeque::from([root_b])];
    let mut sizes = [1usize, 1usize];
    let frontier_of = |s: usize, side: &mut Vec<Option<usize>>, queues: &mut [VecDeque<usize>; 2]| -> Option<usize> {
        while let Some(&u) = queues[s].front() {
            if let Some(&v) = g.neighbors(u).iter().find(|&&v| side[v].is_none()) {
                return Some(v);
            }
            queues[s].pop_front();
        }
        // queue exhausted: jump to the smallest unassigned node (next component)
        (0..n).find(|&v| side[v].is_none())
    };
    while sizes[0] + sizes[1] < n {
        let s = if sizes[0] <= sizes[1] { 0 } else { 1 };
        let v = frontier_of(s, &mut side, &mut queues).expect("unassigned node exists");
        side[v] = Some(s);
        sizes[s] += 1;
        queues[s].push_back(v);
    }
    let mut side: Vec<usize> = side.into_iter().map(|s| s.unwrap()).collect();

    // boundary refinement: greedy single-node moves that shrink the cut
    // while keeping the size gap within 10% of n
    let max_gap = ((n as f64) * 0.1).floor() as isize;
    let mut sizes = [side.iter().filter(|&&s| s == 0).count() as isize, 0];
    sizes[1] = n as isize - sizes[0];
    loop {
        let mut best: Option<(isize, usize)> = None;
        for v in 0..n {
            let s = side[v];
            let gap_after = (sizes[s] - 1 - (sizes[1 - s] + 1)).abs();
            if gap_after > max_gap {
                continue;
            }
            let mut external = 0isize;
            let mut internal = 0isize;
            for &u in g.neighbors(v) {
                if side[u] == s {
                    internal += 1;
                } else {
                    external += 1;
                }
            }
            let gain = external - internal;
            if gain > 0 && best.map_or(true, |(bg, _)| gain > bg) {
                best = Some((gain, v));
            }
        }
        match best {
            Some((_, v)) => {
                let s = side[v];
                side[v] = 1 - s;
                sizes[s] -= 1;
                sizes[1 - s] += 1;
            }
            None => break,
        }
    }

    let cut_edges = g
        .edges()
        .iter()
        .filter(|&&(a, b)| side[a] != side[b])
        .count();

    let shadow = induce(g, &side, 0, &stream, "partition-mask-shadow")?;
    let target = induce(g, &side, 1, &stream, "partition-mask-target")?;
    Ok(PartitionResult { shadow, target, cut_edges })
}

fn induce(g: &Graph, side: &[usize], which: usize, stream: &SeedStream, mask_label: &str) -> Result<Graph> {
    let nodes: Vec<usize> = (0..g.num_nodes()).filter(|&v| side[v] == which).collect();
    let mut new_index = vec![usize::MAX; g.num_nodes()];
    for (i, &v) in nodes.iter().enumerate() {
        new_index[v] = i;
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| side[a] == which && side[b] == which)
        .map(|&(a, b)| (new_index[a], new_index[b]))
        .collect();
    let mut features = Mat::zeros(nodes.len(), g.feature_dim());
    for (i, &v) in nodes.iter().enumerate() {
        features.row_mut(i).copy_from_slice(g.features().row(v));
    }
    let labels: Vec<usize> = nodes.iter().map(|&v| g.labels()[v]).collect();
    let node_ids: Vec<i64> = nodes.iter().map(|&v| g.node_ids()[v]).collect();

    let mut mask_rng = stream.rng(mask_label);
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.shuffle(&mut mask_rng);
    let train_count = (((nodes.len() as f64) * TRAIN_FRACTION).round() as usize).clamp(1, nodes.len());
    let mut train_mask = vec![false; nodes.len()];
    for &v in order.iter().take(train_count) {
        train_mask[v] = true;
    }

    Graph::new(nodes.len(), edges, features, labels, g.num_classes(), train_mask, node_ids)
}
