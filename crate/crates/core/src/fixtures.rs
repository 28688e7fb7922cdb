//! Built-in models.

use crate::netmodel::{EdgeSpec, ModelSpec, NetworkModel};

/// The diamond network computing the arithmetic sum of three uniform binary
/// sources, as JSON.
pub const DIAMOND_JSON: &str = r#"{
  "alphabet": 2,
  "nodes": ["s1", "s2", "s3", "v1", "v2", "rho"],
  "edges": [
    {"id": "e1", "tail": "s1", "head": "v1"},
    {"id": "e2", "tail": "s2", "head": "v1"},
    {"id": "e3", "tail": "s2", "head": "v2"},
    {"id": "e4", "tail": "s3", "head": "v2"},
    {"id": "e5", "tail": "v1", "head": "rho"},
    {"id": "e6", "tail": "v2", "head": "rho"}
  ],
  "sources": ["s1", "s2", "s3"],
  "sink": "rho",
  "function": [0, 1, 1, 2, 1, 2, 2, 3],
  "distribution": [0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125]
}"#;

pub fn diamond() -> NetworkModel {
    NetworkModel::from_json(DIAMOND_JSON).expect("embedded diamond model is valid")
}

/// One source wired straight to the sink, computing the identity on a binary
/// alphabet with the given distribution.
pub fn single_edge(dist: &[f64]) -> NetworkModel {
    NetworkModel::validate(single_edge_spec(dist)).expect("single-edge model is valid")
}

pub fn single_edge_spec(dist: &[f64]) -> ModelSpec {
    ModelSpec {
        alphabet: dist.len(),
        nodes: vec!["s".into(), "rho".into()],
        edges: vec![EdgeSpec { id: "e".into(), tail: "s".into(), head: "rho".into() }],
        sources: vec!["s".into()],
        sink: "rho".into(),
        function: (0..dist.len() as i64).collect(),
        distribution: dist.to_vec(),
    }
}
