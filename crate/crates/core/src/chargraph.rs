//! Characteristic graphs of a strong partition and their layered structure.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::equiv::CutContext;
use crate::error::{Error, Result};
use crate::netmodel::{NetworkModel, StrongPartition};
use crate::pgraph::{ProbGraph, VertexSet};
use crate::space::{marginal, MessageSpace};

/// Vertex cap for characteristic graphs.
pub const MAX_VERTICES: usize = 1 << 14;

/// Position of a vertex in the four-level layer structure.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LayerIndex {
    pub a_j: usize,
    pub cl: usize,
    pub a_l: usize,
    /// Class of each block `x_{I_ℓ}` among the `(I_ℓ, a_L, a_J)`-classes.
    pub bracket: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CharGraph {
    pub graph: ProbGraph,
    pub layers: Vec<LayerIndex>,
    pub k: usize,
    pub partition: StrongPartition,
    space: MessageSpace,
}

impl CharGraph {
    pub fn space(&self) -> &MessageSpace {
        &self.space
    }

    /// The same graph carrying a different distribution on its vertices.
    pub fn with_dist(&self, dist: Vec<f64>) -> Result<ProbGraph> {
        self.graph.with_dist(dist)
    }
}

fn check_size(model: &NetworkModel, partition: &StrongPartition, k: usize) -> Result<MessageSpace> {
    let set = partition.cut.i.union(partition.cut.j);
    MessageSpace::with_cap(set, k, model.alphabet(), MAX_VERTICES).map_err(|e| match e {
        Error::DomainTooLarge { size, cap } => Error::TooLarge {
            what: "characteristic graph vertex count".into(),
            size: size.min(usize::MAX as u128) as usize,
            cap: cap as usize,
        },
        other => other,
    })
}

/// Build the k-fold characteristic graph of a strong partition. Its vertices
/// are the matrices in `A^{k×(I∪J)}` and its distribution is the marginal of
/// the i.i.d. source distribution.
pub fn build(model: &NetworkModel, partition: &StrongPartition, k: usize) -> Result<CharGraph> {
    let space = check_size(model, partition, k)?;
    let ctx = CutContext::new(model, partition, k)?;
    build_with_context(&ctx, space)
}

fn build_with_context(ctx: &CutContext<'_>, space: MessageSpace) -> Result<CharGraph> {
    let model = ctx.model();
    let k = ctx.k();
    let n = space.size();
    let q = model.alphabet();
    let one_shot = marginal(model, space.set());
    let mut buf = vec![0u8; model.num_sources() * k];
    let mut layers = Vec::with_capacity(n);
    let mut dist = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for v in 0..n {
        space.write_into(v, &mut buf);
        let a_j = ctx.j_space().index_of(&buf);
        let a_l = ctx.l_space().index_of(&buf);
        let cl = ctx.classes(a_j).class_of[ctx.i_space().index_of(&buf)];
        let bracket = (0..ctx.partition().m())
            .map(|l| ctx.block_classes(l, a_l, a_j).class_of[ctx.block_space(l).index_of(&buf)])
            .collect();
        layers.push(LayerIndex { a_j, cl, a_l, bracket });
        let p: f64 = (0..k)
            .map(|j| one_shot[space.sources().iter().fold(0, |acc, &s| acc * q + buf[s * k + j] as usize)])
            .product();
        dist.push(p);
        labels.push(space.label(v));
    }
    let mut adj = vec![VertexSet::new(n); n];
    for u in 0..n {
        for v in u + 1..n {
            if adjacent(&layers[u], &layers[v]) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    Ok(CharGraph {
        graph: ProbGraph::from_parts(labels, adj, dist),
        layers,
        k,
        partition: ctx.partition().clone(),
        space,
    })
}

/// Edge rule: equal `x_J`, and either different `(I, x_J)`-classes, or the
/// same class with equal `x_L` and some block in a different class.
fn adjacent(a: &LayerIndex, b: &LayerIndex) -> bool {
    a.a_j == b.a_j && (a.cl != b.cl || (a.a_l == b.a_l && a.bracket != b.bracket))
}

/// Outcome of checking the four-level layer structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerReport {
    pub fibers: usize,
    pub class_blocks: usize,
    pub a_l_blocks: usize,
    pub bracket_blocks: usize,
    pub violations: Vec<String>,
}

impl LayerReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check against the graph's own adjacency that
/// fibers `a_J` are isolated from each other, the classes inside a fiber are
/// completely connected, the `a_L` slices inside a class are isolated, and the
/// bracket sets inside a slice are completely connected with empty interiors.
/// Also checks that every bracket set lies inside the class of its members.
pub fn verify_layers(model: &NetworkModel, cg: &CharGraph) -> Result<LayerReport> {
    let g = &cg.graph;
    let n = g.n();
    let mut violations = Vec::new();
    // Block id of every vertex at each of the four levels.
    let mut ids = vec![vec![0usize; n]; 4];
    let mut counts = [0usize; 4];
    for depth in 0..4 {
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (v, l) in cg.layers.iter().enumerate().take(n) {
            let mut key = vec![l.a_j, l.cl, l.a_l];
            if depth == 3 {
                key.extend(&l.bracket);
            } else {
                key.truncate(depth + 1);
            }
            let next = seen.len();
            ids[depth][v] = *seen.entry(key).or_insert(next);
        }
        counts[depth] = seen.len();
    }
    'pairs: for u in 0..n {
        for v in u + 1..n {
            let shared = (0..4).take_while(|&d| ids[d][u] == ids[d][v]).count();
            // Levels alternate isolated / completely connected / isolated /
            // completely connected, and bracket interiors are empty.
            let expected = shared % 2 == 1;
            if g.adjacent(u, v) != expected {
                violations.push(format!(
                    "{} and {} share {} layer(s) but adjacency is {}",
                    g.label(u),
                    g.label(v),
                    shared,
                    g.adjacent(u, v)
                ));
                if violations.len() > 16 {
                    break 'pairs;
                }
            }
        }
    }
    let ctx = CutContext::new(model, &cg.partition, cg.k)?;
    let mut seen = BTreeSet::new();
    for l in &cg.layers {
        if !seen.insert((l.a_j, l.a_l)) {
            continue;
        }
        for b in ctx.brackets(l.a_j, l.a_l) {
            if b.meets.len() != 1 {
                violations.push(format!("bracket {:?} at a_J={} a_L={} meets classes {:?}", b.classes, l.a_j, l.a_l, b.meets));
            }
        }
    }
    Ok(LayerReport {
        fibers: counts[0],
        class_blocks: counts[1],
        a_l_blocks: counts[2],
        bracket_blocks: counts[3],
        violations,
    })
}

/// Clique number by the layer recursion: the maximum over fibers of the sum
/// over classes of the largest number of bracket sets in one `a_L` slice.
pub fn clique_number_via_decomposition(cg: &CharGraph) -> Result<usize> {
    if cg.k != 1 {
        return Err(Error::InvalidArgument("layer recursion is stated for one-shot graphs".into()));
    }
    let mut slices: BTreeMap<(usize, usize, usize), BTreeSet<&[usize]>> = BTreeMap::new();
    for l in &cg.layers {
        slices.entry((l.a_j, l.cl, l.a_l)).or_default().insert(&l.bracket);
    }
    let mut per_class: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for ((a_j, cl, _), brackets) in &slices {
        let e = per_class.entry((*a_j, *cl)).or_default();
        *e = (*e).max(brackets.len());
    }
    let mut per_fiber: BTreeMap<usize, usize> = BTreeMap::new();
    for ((a_j, _), c) in per_class {
        *per_fiber.entry(a_j).or_default() += c;
    }
    Ok(per_fiber.values().copied().max().unwrap_or(0))
}

/// Clique entropy from the layer structure: `H(Cl | A_J) + H(B | A_J, Cl, A_L)`
/// where `B` is the bracket set, under the given vertex distribution.
pub fn clique_entropy_by_layers(cg: &CharGraph, dist: &[f64]) -> f64 {
    let mut fiber: BTreeMap<usize, f64> = BTreeMap::new();
    let mut class: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut slice: BTreeMap<(usize, usize, usize), f64> = BTreeMap::new();
    let mut bracket: BTreeMap<&LayerIndex, f64> = BTreeMap::new();
    for (l, &p) in cg.layers.iter().zip(dist) {
        *fiber.entry(l.a_j).or_default() += p;
        *class.entry((l.a_j, l.cl)).or_default() += p;
        *slice.entry((l.a_j, l.cl, l.a_l)).or_default() += p;
        *bracket.entry(l).or_default() += p;
    }
    let xlogx = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    let h_cl_given_j: f64 =
        class.values().map(|&p| -xlogx(p)).sum::<f64>() + fiber.values().map(|&p| xlogx(p)).sum::<f64>();
    let h_b_given_rest: f64 =
        bracket.values().map(|&p| -xlogx(p)).sum::<f64>() + slice.values().map(|&p| xlogx(p)).sum::<f64>();
    (h_cl_given_j + h_b_given_rest).max(0.0)
}

/// Edge-set comparison of the k-fold graph with the AND and OR powers of the
/// one-shot graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub k: usize,
    pub and_edges: usize,
    pub k_fold_edges: usize,
    pub or_edges: usize,
    pub and_inside_k_fold: bool,
    pub k_fold_inside_or: bool,
    pub counterexample: Option<(String, String)>,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.and_inside_k_fold && self.k_fold_inside_or
    }
}

/// Largest k for the sandwich check.
pub const MAX_SANDWICH_K: usize = 3;

pub fn sandwich_check(model: &NetworkModel, partition: &StrongPartition, k: usize) -> Result<SandwichReport> {
    if k == 0 || k > MAX_SANDWICH_K {
        return Err(Error::too_large("sandwich check k", k, MAX_SANDWICH_K));
    }
    let g1 = build(model, partition, 1)?;
    let gk = build(model, partition, k)?;
    let copies = vec![g1.graph.clone(); k];
    let and = ProbGraph::and_product(&copies)?;
    let or = ProbGraph::or_product(&copies)?;
    let n1 = g1.graph.n();
    let map = tuple_to_matrix(model, &g1, &gk);
    let mut report = SandwichReport {
        k,
        and_edges: and.edge_count(),
        k_fold_edges: gk.graph.edge_count(),
        or_edges: or.edge_count(),
        and_inside_k_fold: true,
        k_fold_inside_or: true,
        counterexample: None,
    };
    let total = n1.pow(k as u32);
    for t in 0..total {
        for s in t + 1..total {
            let (a, b) = (map[t], map[s]);
            let in_k = gk.graph.adjacent(a, b);
            let bad_and = and.adjacent(t, s) && !in_k;
            let bad_or = in_k && !or.adjacent(t, s);
            if bad_and {
                report.and_inside_k_fold = false;
            }
            if bad_or {
                report.k_fold_inside_or = false;
            }
            if (bad_and || bad_or) && report.counterexample.is_none() {
                report.counterexample = Some((gk.graph.label(a).into(), gk.graph.label(b).into()));
            }
        }
    }
    Ok(report)
}

/// Map a product vertex (one-shot vertices per row, first row most
/// significant) to the k-fold vertex whose row j is the j-th coordinate.
fn tuple_to_matrix(model: &NetworkModel, g1: &CharGraph, gk: &CharGraph) -> Vec<usize> {
    let k = gk.k;
    let n1 = g1.graph.n();
    let total = n1.pow(k as u32);
    let mut row_buf = vec![0u8; model.num_sources()];
    let mut buf = vec![0u8; model.num_sources() * k];
    (0..total)
        .map(|mut t| {
            for j in (0..k).rev() {
                let v = t % n1;
                t /= n1;
                g1.space.write_into(v, &mut row_buf);
                for &s in g1.space.sources() {
                    buf[s * k + j] = row_buf[s];
                }
            }
            gk.space.index_of(&buf)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::diamond;

    fn fig2() -> CharGraph {
        let m = diamond();
        let p = m.strong_partition(&[vec!["e5"], vec!["e6"]]).unwrap();
        build(&m, &p, 1).unwrap()
    }

    #[test]
    fn diamond_graph_edges() {
        let g = fig2().graph;
        assert_eq!(g.n(), 8);
        let idx = |s: &str| g.index_of_label(s).unwrap();
        assert!(g.adjacent(idx("(0,0,1)"), idx("(1,0,0)")));
        assert!(g.adjacent(idx("(0,1,1)"), idx("(1,1,0)")));
        for (a, b) in [("(0,0,1)", "(0,1,0)"), ("(0,1,0)", "(1,0,0)"), ("(0,1,1)", "(1,0,1)"), ("(1,0,1)", "(1,1,0)")] {
            assert!(!g.adjacent(idx(a), idx(b)), "{a} {b}");
        }
        // 28 pairs minus the four non-edges.
        assert_eq!(g.edge_count(), 24);
    }

    #[test]
    fn diamond_layers_and_clique() {
        let m = diamond();
        let cg = fig2();
        let r = verify_layers(&m, &cg).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert_eq!((r.fibers, r.class_blocks), (1, 4));
        assert_eq!(clique_number_via_decomposition(&cg).unwrap(), 6);
        assert_eq!(cg.graph.clique_number().unwrap(), 6);
    }

    #[test]
    fn layer_entropy_matches_decomposition() {
        let cg = fig2();
        let by_layers = clique_entropy_by_layers(&cg, cg.graph.dist());
        let expect = 3.5 - 0.75 * 3f64.log2();
        assert!((by_layers - expect).abs() < 1e-12);
    }

    #[test]
    fn sandwich_k1_is_identity() {
        let m = diamond();
        let p = m.strong_partition(&[vec!["e5"], vec!["e6"]]).unwrap();
        let r = sandwich_check(&m, &p, 1).unwrap();
        assert!(r.holds());
        assert_eq!(r.and_edges, r.k_fold_edges);
        assert_eq!(r.or_edges, r.k_fold_edges);
    }
}
