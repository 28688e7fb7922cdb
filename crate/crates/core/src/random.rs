//! Random instances for property tests and sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::netmodel::{EdgeSpec, ModelSpec, NetworkModel};
use crate::pgraph::ProbGraph;

/// Strictly positive distribution with entries bounded away from zero.
pub fn positive_dist<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    let mut d: Vec<f64> = w.iter().map(|x| x / s).collect();
    // Push the rounding residue onto the largest entry.
    let r = 1.0 - d.iter().sum::<f64>();
    let i = (0..n).max_by(|&a, &b| d[a].total_cmp(&d[b])).unwrap_or(0);
    if n > 0 {
        d[i] += r;
    }
    d
}

/// Limits for [`random_model`].
#[derive(Clone, Copy, Debug)]
pub struct ModelShape {
    pub max_sources: usize,
    pub max_relays: usize,
    pub max_edges: usize,
    pub alphabet: usize,
    pub uniform: bool,
}

impl Default for ModelShape {
    fn default() -> Self {
        ModelShape { max_sources: 3, max_relays: 2, max_edges: 8, alphabet: 2, uniform: false }
    }
}

/// A random valid network: sources, a few relay nodes and a sink, with a
/// random non-constant target function.
pub fn random_model<R: Rng>(rng: &mut R, shape: &ModelShape) -> NetworkModel {
    loop {
        if let Some(m) = try_model(rng, shape) {
            return m;
        }
    }
}

fn try_model<R: Rng>(rng: &mut R, shape: &ModelShape) -> Option<NetworkModel> {
    let s = rng.gen_range(1..=shape.max_sources);
    let r = rng.gen_range(0..=shape.max_relays);
    let n = s + r + 1;
    let sink = n - 1;
    let mut names: Vec<String> = (1..=s).map(|i| format!("s{i}")).collect();
    names.extend((1..=r).map(|i| format!("v{i}")));
    names.push("rho".into());
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // Every relay gets a forward out-edge so it reaches the sink.
    for v in s..sink {
        edges.push((v, rng.gen_range(v + 1..=sink)));
    }
    for u in 0..s {
        edges.push((u, rng.gen_range(s..=sink)));
    }
    // Relays without input are fed by a random earlier node.
    for v in s..sink {
        if !edges.iter().any(|&(_, h)| h == v) {
            let from = rng.gen_range(0..v);
            let from = if from >= s && from < v { from } else { rng.gen_range(0..s) };
            edges.push((from, v));
        }
    }
    let extra = rng.gen_range(0..=shape.max_edges.saturating_sub(edges.len()));
    for _ in 0..extra {
        let u = rng.gen_range(0..sink);
        let lo = s.max(u + 1);
        edges.push((u, rng.gen_range(lo..=sink)));
    }
    if edges.len() > shape.max_edges {
        return None;
    }
    edges.sort();
    let q = shape.alphabet;
    let size = q.pow(s as u32);
    let image = rng.gen_range(2..=4i64);
    let function: Vec<i64> = (0..size).map(|_| rng.gen_range(0..image)).collect();
    let distribution = if shape.uniform { vec![1.0 / size as f64; size] } else { positive_dist(rng, size) };
    let spec = ModelSpec {
        alphabet: q,
        nodes: names.clone(),
        edges: edges
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| EdgeSpec { id: format!("e{}", i + 1), tail: names[t].clone(), head: names[h].clone() })
            .collect(),
        sources: names[..s].to_vec(),
        sink: "rho".into(),
        function,
        distribution,
    };
    NetworkModel::validate(spec).ok()
}

/// Erdős–Rényi graph with a random positive distribution.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> ProbGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..n).map(|v| v.to_string()).collect();
    ProbGraph::new(labels, &edges, positive_dist(rng, n)).expect("random graph is valid")
}

/// Random graph with a planted autonomous set `U` of the given size. Returns
/// the graph and `U`. The inside of `U` is random; every member of `U` gets
/// the same random outside neighborhood.
pub fn planted_module<R: Rng>(rng: &mut R, n: usize, size: usize, p: f64) -> (ProbGraph, Vec<usize>) {
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    let mut u: Vec<usize> = verts[..size.min(n)].to_vec();
    u.sort_unstable();
    let outside_nbrs: Vec<bool> = (0..n).map(|_| rng.gen_bool(p)).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ia, ib) = (u.contains(&a), u.contains(&b));
            let on = match (ia, ib) {
                (true, false) => outside_nbrs[b],
                (false, true) => outside_nbrs[a],
                _ => rng.gen_bool(p),
            };
            if on {
                edges.push((a, b));
            }
        }
    }
    let labels = (0..n).map(|v| v.to_string()).collect();
    (ProbGraph::new(labels, &edges, positive_dist(rng, n)).expect("planted graph is valid"), u)
}
