//! Stochastic-block-model generator for desk-scale experiments.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::Graph;
use crate::error::Error;
use crate::numerics::SeedStream;
use crate::{Mat, Result, F};

/// Fraction of nodes marked as training data by generators and partitions.
pub const TRAIN_FRACTION: f64 = 0.9;

/// Samples a stochastic block model. The label of a node is its block;
/// features are the one-hot block centroid plus Gaussian noise of scale
/// `feature_noise`. Reproducible under a fixed seed.
pub fn generate_sbm(
    blocks: usize,
    nodes_per_block: usize,
    p_in: F,
    p_out: F,
    feature_dim: usize,
    feature_noise: F,
    seed: u64,
) -> Result<Graph> {
    if blocks == 0 || nodes_per_block == 0 || feature_dim == 0 {
        return Err(Error::Argument("counts must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p_out) || !(0.0..=1.0).contains(&p_in) || p_out > p_in {
        return Err(Error::Argument(format!(
            "need 0 <= p_out <= p_in <= 1, got p_in = {p_in}, p_out = {p_out}"
        )));
    }
    if feature_noise < 0.0 {
        return Err(Error::Argument("feature_noise must be non-negative".into()));
    }

    let n = blocks * nodes_per_block;
    let block_of = |v: usize| v / nodes_per_block;
    let stream = SeedStream::new(seed);

    let mut edge_rng = stream.rng("sbm-edges");
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if block_of(i) == block_of(j) { p_in } else { p_out };
            if p > 0.0 && edge_rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }

    let mut feat_rng = stream.rng("sbm-features");
    let mut features = Mat::zeros(n, feature_dim);
    for v in 0..n {
        let centroid = block_of(v) % feature_dim;
        features.set(v, centroid, 1.0);
        if feature_noise > 0.0 {
            for f in 0..feature_dim {
                let z: F = StandardNormal.sample(&mut feat_rng);
                let cur = features.get(v, f);
                features.set(v, f, cur + feature_noise * z);
            }
        }
    }

    let mut mask_rng = stream.rng("sbm-mask");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut mask_rng);
    let train_count = (((n as f64) * TRAIN_FRACTION).round() as usize).clamp(1, n);
    let mut train_mask = vec![false; n];
    for &v in order.iter().take(train_count) {
        train_mask[v] = true;
    }

    let labels: Vec<usize> = (0..n).map(block_of).collect();
    Graph::new(n, edges, features, labels, blocks, train_mask, (0..n as i64).collect())
}
