//! Convolution operators used by the victims and the influence analysis.
//!
//! All kinds are symmetric by construction. The teleport kind stores a
//! dense matrix (its inverse fills in); everything else stays sparse.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::Error;
use crate::{Mat, Result, SparseMat, F};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropagationKind {
    /// `(D + I)^{-1/2} (A + I) (D + I)^{-1/2}`
    OneGcn,
    /// k-th power of the `one_gcn` operator
    KSgc,
    /// `alpha (I - (1 - alpha) C_one_gcn)^{-1}`, the limit of `k_appnp`
    Ppnp,
    /// truncated teleport propagation of order k
    KAppnp,
    /// `A + I`
    Gin,
    /// `D^{-1/2} A D^{-1/2}` with zero rows for isolated nodes
    NormalizedPlain,
}

/// How to build a propagation matrix; `k` and `alpha` are ignored by kinds
/// that do not use them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationSpec {
    pub kind: PropagationKind,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_alpha")]
    pub alpha: F,
}

fn default_k() -> usize {
    2
}

fn default_alpha() -> F {
    0.1
}

impl PropagationSpec {
    pub fn new(kind: PropagationKind) -> Self {
        Self { kind, k: default_k(), alpha: default_alpha() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Sparse(SparseMat),
    Dense(Mat),
}

/// A materialized convolution operator over a fixed node set.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationMatrix {
    spec: PropagationSpec,
    storage: Storage,
}

impl PropagationMatrix {
    pub fn spec(&self) -> &PropagationSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        match &self.storage {
            Storage::Sparse(s) => s.rows(),
            Storage::Dense(d) => d.rows(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> F {
        match &self.storage {
            Storage::Sparse(s) => s.get(i, j),
            Storage::Dense(d) => d.get(i, j),
        }
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        match &self.storage {
            Storage::Sparse(s) => s.matvec(v),
            Storage::Dense(d) => d.matvec(v),
        }
    }

    pub fn apply_tr(&self, v: &[F]) -> Vec<F> {
        match &self.storage {
            Storage::Sparse(s) => s.tr_matvec(v),
            Storage::Dense(d) => d.tr_matvec(v),
        }
    }

    /// `C * X`.
    pub fn matmul_dense(&self, x: &Mat) -> Mat {
        match &self.storage {
            Storage::Sparse(s) => s.matmul_dense(x),
            Storage::Dense(d) => d.matmul(x),
        }
    }

    /// `C^T * X`.
    pub fn tr_matmul_dense(&self, x: &Mat) -> Mat {
        match &self.storage {
            Storage::Sparse(s) => s.tr_matmul_dense(x),
            Storage::Dense(d) => d.transpose().matmul(x),
        }
    }

    pub fn to_dense(&self) -> Mat {
        match &self.storage {
            Storage::Sparse(s) => s.to_dense(),
            Storage::Dense(d) => d.clone(),
        }
    }

    pub fn all_finite(&self) -> bool {
        match &self.storage {
            Storage::Sparse(s) => s.all_finite(),
            Storage::Dense(d) => d.all_finite(),
        }
    }
}

fn one_gcn_triplets(g: &Graph) -> Vec<(usize, usize, F)> {
    let n = g.num_nodes();
    let inv: Vec<F> = (0..n).map(|v| 1.0 / ((g.degree(v) + 1) as F).sqrt()).collect();
    let mut t = Vec::with_capacity(n + 2 * g.num_edges());
    for v in 0..n {
        t.push((v, v, inv[v] * inv[v]));
    }
    for &(a, b) in g.edges() {
        let w = inv[a] * inv[b];
        t.push((a, b, w));
        t.push((b, a, w));
    }
    t
}

fn one_gcn(g: &Graph) -> SparseMat {
    SparseMat::from_triplets(g.num_nodes(), g.num_nodes(), one_gcn_triplets(g))
}

pub fn build_propagation(g: &Graph, spec: PropagationSpec) -> Result<PropagationMatrix> {
    let n = g.num_nodes();
    let storage = match spec.kind {
        PropagationKind::OneGcn => Storage::Sparse(one_gcn(g)),
        PropagationKind::Gin => {
            let mut t: Vec<(usize, usize, F)> = (0..n).map(|v| (v, v, 1.0)).collect();
            for &(a, b) in g.edges() {
                t.push((a, b, 1.0));
                t.push((b, a, 1.0));
            }
            Storage::Sparse(SparseMat::from_triplets(n, n, t))
        }
        PropagationKind::NormalizedPlain => {
            let inv: Vec<F> = (0..n)
                .map(|v| {
                    let d = g.degree(v);
                    // degree-0 rows stay all-zero
                    if d == 0 { 0.0 } else { 1.0 / (d as F).sqrt() }
                })
                .collect();
            let mut t = Vec::with_capacity(2 * g.num_edges());
            for &(a, b) in g.edges() {
                let w = inv[a] * inv[b];
                t.push((a, b, w));
                t.push((b, a, w));
            }
            Storage::Sparse(SparseMat::from_triplets(n, n, t))
        }
        PropagationKind::KSgc => {
            if spec.k < 1 {
                return Err(Error::Argument("k_sgc needs k >= 1".into()));
            }
            let base = one_gcn(g).to_dense();
            let mut acc = base.clone();
            for _ in 1..spec.k {
                acc = acc.matmul(&base);
            }
            Storage::Sparse(SparseMat::from_dense(&acc))
        }
        PropagationKind::Ppnp => {
            if !(spec.alpha > 0.0 && spec.alpha <= 1.0) {
                return Err(Error::Argument(format!(
                    "ppnp needs alpha in (0, 1], got {}",
                    spec.alpha
                )));
            }
            let base = one_gcn(g).to_dense();
            let mut m = Mat::identity(n);
            m.add_scaled(&base, -(1.0 - spec.alpha));
            let mut rhs = Mat::identity(n);
            rhs.scale(spec.alpha);
            let solved = m.lu_solve(&rhs).map_err(|_| {
                Error::Numeric("singular teleport system in ppnp".into())
            })?;
            Storage::Dense(solved)
        }
        PropagationKind::KAppnp => {
            if spec.k < 1 {
                return Err(Error::Argument("k_appnp needs k >= 1".into()));
            }
            if !(spec.alpha > 0.0 && spec.alpha <= 1.0) {
                return Err(Error::Argument(format!(
                    "k_appnp needs alpha in (0, 1], got {}",
                    spec.alpha
                )));
            }
            let base = one_gcn(g).to_dense();
            let mut power = Mat::identity(n); // C^0
            let mut acc = Mat::zeros(n, n);
            for l in 0..spec.k {
                acc.add_scaled(&power, spec.alpha * (1.0 - spec.alpha).powi(l as i32));
                power = power.matmul(&base);
            }
            acc.add_scaled(&power, (1.0 - spec.alpha).powi(spec.k as i32));
            Storage::Sparse(SparseMat::from_dense(&acc))
        }
    };
    let out = PropagationMatrix { spec, storage };
    if !out.all_finite() {
        return Err(Error::Numeric("non-finite propagation entry".into()));
    }
    Ok(out)
}
