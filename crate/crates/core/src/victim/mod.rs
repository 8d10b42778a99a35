//! Victim models: a two-layer GCN trained by full-batch Adam with manual
//! backpropagation, and a linear convolutional model fit in closed form.

mod gcn;
mod linear;

pub use gcn::{gcn_forward, gcn_loss_and_grads, gcn_train, glorot_init, GcnParams};
pub use linear::{fit_columns, linear_forward_probs, linear_gcn_fit, LinearGcnParams};

use serde::{Deserialize, Serialize};

use crate::graph::PropagationSpec;
use crate::{Prob, F};

/// Hyper-parameters for victim training. Adam moments are fixed at the
/// conventional (0.9, 0.999, 1e-8).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    #[serde(default = "default_hidden")]
    pub hidden: usize,
    #[serde(default = "default_epochs")]
    pub epochs: usize,
    #[serde(default = "default_lr")]
    pub learning_rate: F,
    #[serde(default = "default_wd")]
    pub weight_decay: F,
    pub seed: u64,
}

fn default_hidden() -> usize {
    16
}

fn default_epochs() -> usize {
    100
}

fn default_lr() -> F {
    0.01
}

fn default_wd() -> F {
    5e-4
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            hidden: default_hidden(),
            epochs: default_epochs(),
            learning_rate: default_lr(),
            weight_decay: default_wd(),
            seed: 0,
        }
    }
}

pub(crate) const ADAM_BETA1: F = 0.9;
pub(crate) const ADAM_BETA2: F = 0.999;
pub(crate) const ADAM_EPS: F = 1e-8;

/// Parameters of either victim architecture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "arch", rename_all = "snake_case")]
pub enum VictimParams {
    Gcn(GcnParams),
    Linear(LinearGcnParams),
}

impl VictimParams {
    /// Per-node output probabilities on the given graph.
    pub fn forward(
        &self,
        g: &crate::graph::Graph,
        c: &crate::graph::PropagationMatrix,
    ) -> crate::Result<Vec<Prob>> {
        match self {
            VictimParams::Gcn(p) => gcn_forward(g, c, p),
            VictimParams::Linear(p) => linear_forward_probs(g, c, p),
        }
    }
}

/// Serializable bundle of a victim and the propagation rule it was trained
/// with; this is the artifact the serving command loads.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VictimArtifact {
    pub params: VictimParams,
    pub propagation: PropagationSpec,
}

/// Model confidence: the largest class probability.
pub fn confidence(p: &Prob) -> F {
    p.max_value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::softmax;

    #[test]
    fn confidence_is_max_entry() {
        let p = Prob::new(vec![0.7, 0.3]).unwrap();
        assert_eq!(confidence(&p), 0.7);
        let u = Prob::new(vec![0.25; 4]).unwrap();
        assert_eq!(confidence(&u), 0.25);
    }

    #[test]
    fn confidence_of_softmax_logits() {
        let p = softmax(&[2.0, 1.0, 0.0]).unwrap();
        assert!((confidence(&p) - 0.6652).abs() < 5e-5);
    }

    #[test]
    fn params_roundtrip_json() {
        let params = VictimParams::Gcn(GcnParams {
            w1: crate::Mat::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]),
            w2: crate::Mat::from_rows(&[vec![0.5], vec![-0.5]]),
        });
        let text = serde_json::to_string(&params).unwrap();
        let back: VictimParams = serde_json::from_str(&text).unwrap();
        assert_eq!(params, back);
    }
}
