//! CSV ingestion and export.
//!
//! Nodes file: header `id,label,split,f0,...,f{d-1}` with `split` one of
//! `train`/`test`. Edges file: header `src,dst`, one undirected edge per
//! row; endpoints refer to `id` values from the nodes file. Node order
//! follows file order.

use std::collections::HashMap;
use std::path::Path;

use super::Graph;
use crate::error::Error;
use crate::{Mat, Result, F};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn load_graph(nodes_path: &Path, edges_path: &Path) -> Result<Graph> {
    let mut nodes_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(nodes_path)
        .map_err(|e| Error::Validation(format!("cannot open {}: {e}", nodes_path.display())))?;

    let headers = nodes_reader
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    if headers.len() < 3 || &headers[0] != "id" || &headers[1] != "label" || &headers[2] != "split"
    {
        return Err(parse_err(1, "nodes header must start with id,label,split"));
    }
    let dim = headers.len() - 3;

    let mut ids = Vec::new();
    let mut labels = Vec::new();
    let mut train_mask = Vec::new();
    let mut feature_rows: Vec<Vec<F>> = Vec::new();
    let mut id_to_index: HashMap<i64, usize> = HashMap::new();

    for (i, record) in nodes_reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| parse_err(line, e.to_string()))?;
        if record.len() != headers.len() {
            return Err(parse_err(
                line,
                format!("expected {} fields, found {}", headers.len(), record.len()),
            ));
        }
        let id: i64 = record[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad node id {:?}", &record[0])))?;
        let label: usize = record[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad label {:?}", &record[1])))?;
        let split = record[2].trim();
        let is_train = match split {
            "train" => true,
            "test" => false,
            other => return Err(parse_err(line, format!("bad split {other:?}"))),
        };
        let mut row = Vec::with_capacity(dim);
        for f in 0..dim {
            let v: F = record[3 + f]
                .trim()
                .parse()
                .map_err(|_| parse_err(line, format!("bad feature {:?}", &record[3 + f])))?;
            row.push(v);
        }
        if id_to_index.insert(id, ids.len()).is_some() {
            return Err(Error::Validation(format!("duplicate node id {id}")));
        }
        ids.push(id);
        labels.push(label);
        train_mask.push(is_train);
        feature_rows.push(row);
    }

    let mut edges_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(edges_path)
        .map_err(|e| Error::Validation(format!("cannot open {}: {e}", edges_path.display())))?;
    let eh = edges_reader
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    if eh.len() != 2 || &eh[0] != "src" || &eh[1] != "dst" {
        return Err(parse_err(1, "edges header must be src,dst"));
    }

    let mut edges = Vec::new();
    for (i, record) in edges_reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| parse_err(line, e.to_string()))?;
        let src: i64 = record[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad src {:?}", &record[0])))?;
        let dst: i64 = record[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad dst {:?}", &record[1])))?;
        let a = *id_to_index
            .get(&src)
            .ok_or_else(|| Error::Validation(format!("edge endpoint {src} not in nodes file")))?;
        let b = *id_to_index
            .get(&dst)
            .ok_or_else(|| Error::Validation(format!("edge endpoint {dst} not in nodes file")))?;
        edges.push((a, b));
    }

    let num_classes = labels.iter().max().map_or(1, |m| m + 1);
    let features = Mat::from_rows(&feature_rows);
    Graph::new(ids.len(), edges, features, labels, num_classes, train_mask, ids)
}

/// Writes a graph back out in the ingestion schema (used to persist
/// pipeline artifacts for the serving command).
pub fn save_graph(g: &Graph, nodes_path: &Path, edges_path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str("id,label,split");
    for f in 0..g.feature_dim() {
        out.push_str(&format!(",f{f}"));
    }
    out.push('\n');
    for v in 0..g.num_nodes() {
        let split = if g.train_mask()[v] { "train" } else { "test" };
        out.push_str(&format!("{},{},{}", g.node_ids()[v], g.labels()[v], split));
        for f in 0..g.feature_dim() {
            out.push_str(&format!(",{}", g.features().get(v, f)));
        }
        out.push('\n');
    }
    std::fs::write(nodes_path, out)?;

    let mut eout = String::from("src,dst\n");
    for &(a, b) in g.edges() {
        eout.push_str(&format!("{},{}\n", g.node_ids()[a], g.node_ids()[b]));
    }
    std::fs::write(edges_path, eout)?;
    Ok(())
}
