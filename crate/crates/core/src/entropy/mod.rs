//! Shannon, chromatic, graph (Körner) and clique entropies of probabilistic
//! graphs, in bits.
//!
//! Clique entropy is computed by recursive autonomous splits: an isolated
//! split contributes `Σ P(U_j) H_ω(G|U_j)` and a completely-connected split
//! contributes `Σ P(U_j) [H_ω(G|U_j) − log P(U_j)]`. Empty graphs have clique
//! entropy 0 and complete graphs `H(Z)`. A block with neither split falls back
//! to `H(Z) − H_κ(G^c, Z)`, solved numerically.

pub mod chromatic;
pub mod kappa;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pgraph::{split_within, ProbGraph, SplitKind, VertexSet};

pub use kappa::SolverTrace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    ExactDecomposition,
    NumericFallback,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    EmptyLeaf,
    CompleteLeaf,
    IsolatedSplit,
    CCSplit,
    Opaque,
}

/// One node of a clique-entropy decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionTree {
    pub kind: NodeKind,
    /// Vertices of the input graph in this block.
    pub vertices: Vec<usize>,
    /// Probability of this block conditioned on its parent block.
    pub mass: f64,
    /// Clique entropy of the block under its conditional distribution.
    pub value: f64,
    pub children: Vec<DecompositionTree>,
}

impl DecompositionTree {
    pub fn is_exact(&self) -> bool {
        self.kind != NodeKind::Opaque && self.children.iter().all(|c| c.is_exact())
    }

    /// Number of nodes of each kind, in `NodeKind` declaration order.
    pub fn kind_counts(&self) -> [usize; 5] {
        let mut c = [0; 5];
        self.visit(&mut |t| c[t.kind as usize] += 1);
        c
    }

    fn visit<F: FnMut(&DecompositionTree)>(&self, f: &mut F) {
        f(self);
        for ch in &self.children {
            ch.visit(f);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Certificate {
    Tree(DecompositionTree),
    Solver(SolverTrace),
    Coloring(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyResult {
    pub value: f64,
    pub method: Method,
    pub certificate: Option<Certificate>,
}

/// `−Σ p log2 p` with `0 log 0 = 0`.
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    crate::pgraph::check_dist(dist)?;
    Ok(entropy_unchecked(dist))
}

pub(crate) fn entropy_unchecked(dist: &[f64]) -> f64 {
    dist.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum::<f64>().max(0.0)
}

fn positive_part(g: &ProbGraph) -> Result<(ProbGraph, Vec<usize>)> {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.dist()[v] > 0.0).collect();
    if keep.len() == g.n() {
        return Ok((g.clone(), keep));
    }
    Ok((g.project(&keep)?, keep))
}

/// Minimum entropy of a coloring, by exhaustive search.
pub fn chromatic_entropy(g: &ProbGraph) -> Result<EntropyResult> {
    let (h, keep) = positive_part(g)?;
    let (value, colors) = chromatic::min_entropy_coloring(&h)?;
    // Zero-mass vertices get fresh colors so the certificate stays proper.
    let mut full = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        full[v] = colors[i];
    }
    let first = colors.iter().max().map_or(0, |c| c + 1);
    for (next, c) in (first..).zip(full.iter_mut().filter(|c| **c == usize::MAX)) {
        *c = next;
    }
    Ok(EntropyResult { value, method: Method::BruteForce, certificate: Some(Certificate::Coloring(full)) })
}

/// Körner graph entropy. Exact through the complement's decomposition when it
/// has no opaque block, numeric otherwise.
pub fn graph_entropy(g: &ProbGraph) -> Result<EntropyResult> {
    graph_entropy_tol(g, kappa::DEFAULT_TOL)
}

pub fn graph_entropy_tol(g: &ProbGraph, tol: f64) -> Result<EntropyResult> {
    let (h, _) = positive_part(g)?;
    let comp = h.complement();
    if let Some(tree) = exact_tree(&comp)? {
        let value = (entropy_unchecked(h.dist()) - tree.value).max(0.0);
        return Ok(EntropyResult { value, method: Method::ExactDecomposition, certificate: Some(Certificate::Tree(tree)) });
    }
    let trace = kappa::solve(&h, tol)?;
    Ok(EntropyResult { value: trace.value, method: Method::NumericFallback, certificate: Some(Certificate::Solver(trace)) })
}

/// Clique entropy by recursive decomposition.
pub fn clique_entropy(g: &ProbGraph) -> Result<EntropyResult> {
    let tree = decompose(g, g.dist(), kappa::DEFAULT_TOL, true)?.expect("decomposition with fallback always completes");
    let method = if tree.is_exact() { Method::ExactDecomposition } else { Method::NumericFallback };
    Ok(EntropyResult { value: tree.value, method, certificate: Some(Certificate::Tree(tree)) })
}

/// Clique entropy value only.
pub fn clique_entropy_value(g: &ProbGraph) -> Result<f64> {
    Ok(clique_entropy(g)?.value)
}

/// Clique entropy of `g` under another distribution on its vertices, which
/// must be nonnegative and sum to one.
pub fn clique_entropy_with_dist(g: &ProbGraph, dist: &[f64]) -> Result<f64> {
    if dist.len() != g.n() {
        return Err(Error::Schema(format!("{} probabilities for {} vertices", dist.len(), g.n())));
    }
    Ok(decompose(g, dist, kappa::DEFAULT_TOL, true)?.expect("fallback always completes").value)
}

/// The decomposition tree if no block needs the numeric fallback.
fn exact_tree(g: &ProbGraph) -> Result<Option<DecompositionTree>> {
    decompose(g, g.dist(), kappa::DEFAULT_TOL, false)
}

fn decompose(g: &ProbGraph, dist: &[f64], tol: f64, fallback: bool) -> Result<Option<DecompositionTree>> {
    let verts: Vec<usize> = (0..g.n()).filter(|&v| dist[v] > 0.0).collect();
    if verts.is_empty() {
        return Err(Error::ZeroMass);
    }
    let total: f64 = verts.iter().map(|&v| dist[v]).sum();
    // Rounding in the sum should not perturb leaf values on full-support inputs.
    let total = if (total - 1.0).abs() < 1e-12 { 1.0 } else { total };
    let ctx = Decomposer { g, dist, tol, fallback };
    ctx.node(&verts, total, 1.0)
}

struct Decomposer<'a> {
    g: &'a ProbGraph,
    dist: &'a [f64],
    tol: f64,
    fallback: bool,
}

impl Decomposer<'_> {
    fn node(&self, verts: &[usize], total: f64, mass: f64) -> Result<Option<DecompositionTree>> {
        let g = self.g;
        let cond: Vec<f64> = verts.iter().map(|&v| self.dist[v] / total).collect();
        let set = VertexSet::from_slice(g.n(), verts);
        let k = verts.len();
        let inner_edges: usize = verts.iter().map(|&v| g.neighbors(v).intersect(&set).len()).sum::<usize>() / 2;
        let leaf = |kind, value| DecompositionTree { kind, vertices: verts.to_vec(), mass, value, children: Vec::new() };
        if inner_edges == 0 {
            return Ok(Some(leaf(NodeKind::EmptyLeaf, 0.0)));
        }
        if inner_edges == k * (k - 1) / 2 {
            return Ok(Some(leaf(NodeKind::CompleteLeaf, entropy_unchecked(&cond))));
        }
        let split = split_within(g, &set);
        let kind = match split.kind {
            SplitKind::Isolated => NodeKind::IsolatedSplit,
            SplitKind::CompletelyConnected => NodeKind::CCSplit,
            SplitKind::None => {
                if !self.fallback {
                    return Ok(None);
                }
                let sub = g.with_dist_unchecked(self.dist.to_vec()).project(verts)?;
                let trace = kappa::solve(&sub.complement(), self.tol)?;
                let value = (entropy_unchecked(sub.dist()) - trace.value).max(0.0);
                return Ok(Some(leaf(NodeKind::Opaque, value)));
            }
        };
        let mut children = Vec::with_capacity(split.blocks.len());
        let mut value = 0.0;
        for block in &split.blocks {
            let bmass: f64 = block.iter().map(|&v| self.dist[v]).sum();
            let w = bmass / total;
            let Some(child) = self.node(block, bmass, w)? else {
                return Ok(None);
            };
            value += match kind {
                NodeKind::IsolatedSplit => w * child.value,
                _ => w * (child.value - w.log2()),
            };
            children.push(child);
        }
        Ok(Some(DecompositionTree { kind, vertices: verts.to_vec(), mass, value: value.max(0.0), children }))
    }
}

/// Both sides of the additivity of clique entropy over an AND product.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductCheck {
    pub product: f64,
    pub sum: f64,
    pub discrepancy: f64,
}

pub fn clique_entropy_product_check(gs: &[ProbGraph]) -> Result<ProductCheck> {
    let prod = ProbGraph::and_product(gs)?;
    let product = clique_entropy_value(&prod)?;
    let sum = gs.iter().map(clique_entropy_value).sum::<Result<f64>>()?;
    Ok(ProductCheck { product, sum, discrepancy: (product - sum).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shannon_examples() {
        assert!((shannon_entropy(&[0.125; 8]).unwrap() - 3.0).abs() < 1e-15);
        assert_eq!(shannon_entropy(&[1.0]).unwrap(), 0.0);
        let h = shannon_entropy(&[0.375, 0.375, 0.125, 0.125]).unwrap();
        assert!((h - (3.0 - 0.75 * 3f64.log2())).abs() < 1e-15);
        assert!(shannon_entropy(&[0.5, 0.6]).is_err());
    }

    #[test]
    fn leaves() {
        let e = ProbGraph::empty(vec![0.5, 0.25, 0.25]).unwrap();
        assert_eq!(clique_entropy(&e).unwrap().value, 0.0);
        let k = ProbGraph::complete(vec![0.5, 0.25, 0.25]).unwrap();
        assert!((clique_entropy(&k).unwrap().value - 1.5).abs() < 1e-15);
        let single = ProbGraph::empty(vec![1.0]).unwrap();
        assert_eq!(clique_entropy(&single).unwrap().value, 0.0);
    }

    #[test]
    fn path_component_example() {
        // Edge 0-1 with isolated vertex 2, uniform.
        let g = ProbGraph::uniform(3, &[(0, 1)]).unwrap();
        let r = clique_entropy(&g).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.method, Method::ExactDecomposition);
        let chi = chromatic_entropy(&g).unwrap();
        let expect = -(2.0f64 / 3.0) * (2.0f64 / 3.0).log2() - (1.0 / 3.0) * (1.0f64 / 3.0).log2();
        assert!((chi.value - expect).abs() < 1e-12);
    }

    #[test]
    fn five_cycle_uses_fallback() {
        let edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let g = ProbGraph::uniform(5, &edges).unwrap();
        let r = clique_entropy(&g).unwrap();
        assert_eq!(r.method, Method::NumericFallback);
        assert!((r.value - 1.0).abs() < 1e-6);
        let k = graph_entropy(&g).unwrap();
        assert_eq!(k.method, Method::NumericFallback);
        assert!((k.value - 2.5f64.log2()).abs() < 1e-6);
    }

    #[test]
    fn complete_graph_entropy_exact() {
        let g = ProbGraph::complete(vec![0.25; 4]).unwrap();
        let r = graph_entropy(&g).unwrap();
        assert_eq!(r.method, Method::ExactDecomposition);
        assert!((r.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn zero_mass_vertices_dropped() {
        let g = ProbGraph::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)], vec![0.5, 0.0, 0.5])
            .unwrap();
        assert_eq!(clique_entropy(&g).unwrap().value, 0.0);
        assert_eq!(graph_entropy(&g).unwrap().value, 0.0);
        let c = chromatic_entropy(&g).unwrap();
        assert_eq!(c.value, 0.0);
        if let Some(Certificate::Coloring(col)) = c.certificate {
            assert!(g.is_coloring(&col));
        }
    }

    #[test]
    fn product_of_complete_graphs() {
        let k2 = ProbGraph::complete(vec![0.5, 0.5]).unwrap();
        let r = clique_entropy_product_check(&[k2.clone(), k2]).unwrap();
        assert!((r.product - 2.0).abs() < 1e-15 && (r.sum - 2.0).abs() < 1e-15);
    }
}
