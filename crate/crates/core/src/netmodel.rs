//! Network model `(N, X_S, f)`: a DAG with ordered sources, one sink, a target
//! function table and a strictly positive source distribution, plus the
//! reachability machinery behind cut sets and strong partitions.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of edges accepted by exhaustive cut enumeration.
pub const DEFAULT_MAX_EDGES: usize = 20;
/// Hard ceiling on the edge count, whatever the configured cap.
pub const HARD_MAX_EDGES: usize = 26;
/// Cap on `q^s`, the size of the one-shot source domain.
pub const MAX_DOMAIN: usize = 1 << 20;

/// Set of edges as a bitmask over edge indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(pub u32);

/// Set of sources as a bitmask over source positions in `S`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourceSet(pub u32);

macro_rules! bitset_impl {
    ($t:ident) => {
        impl $t {
            pub const EMPTY: $t = $t(0);

            pub fn singleton(i: usize) -> Self {
                $t(1 << i)
            }

            pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
                $t(it.into_iter().fold(0, |m, i| m | (1 << i)))
            }

            pub fn contains(self, i: usize) -> bool {
                self.0 >> i & 1 == 1
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn union(self, o: Self) -> Self {
                $t(self.0 | o.0)
            }

            pub fn intersect(self, o: Self) -> Self {
                $t(self.0 & o.0)
            }

            pub fn minus(self, o: Self) -> Self {
                $t(self.0 & !o.0)
            }

            pub fn is_subset(self, o: Self) -> bool {
                self.0 & !o.0 == 0
            }

            /// Member indices in increasing order.
            pub fn indices(self) -> Vec<usize> {
                (0..32).filter(|&i| self.contains(i)).collect()
            }

            /// Least member, if any.
            pub fn first(self) -> Option<usize> {
                (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
            }
        }
    };
}

bitset_impl!(EdgeSet);
bitset_impl!(SourceSet);

/// Raw network description as read from JSON, before validation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub alphabet: usize,
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub sources: Vec<String>,
    pub sink: String,
    pub function: Vec<i64>,
    pub distribution: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A validated network model. Construct with [`NetworkModel::validate`].
#[derive(Clone, Debug)]
pub struct NetworkModel {
    spec: ModelSpec,
    node_names: Vec<String>,
    edges: Vec<Edge>,
    sources: Vec<usize>,
    sink: usize,
    q: usize,
    f_ids: Vec<u32>,
    image: Vec<i64>,
    dist: Vec<f64>,
    reach: Vec<Vec<bool>>,
    topo_edges: Vec<usize>,
}

/// Source sets `K_C`, `I_C`, `J_C` of an edge set `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutAnalysis {
    pub cut: EdgeSet,
    pub k: SourceSet,
    pub i: SourceSet,
    pub j: SourceSet,
    pub is_global: bool,
}

/// A strong partition `{C_1, …, C_m}` of a cut set with its derived source
/// sets `I_ℓ = I_{C_ℓ}` and `L = I_C \ ∪ I_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongPartition {
    pub cut: CutAnalysis,
    pub blocks: Vec<EdgeSet>,
    pub block_sources: Vec<SourceSet>,
    pub l: SourceSet,
}

impl StrongPartition {
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }
}

impl NetworkModel {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ModelSpec =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::validate(spec)
    }

    /// Check every model invariant and precompute reachability.
    ///
    /// Checks run in a fixed order: schema and ids, source in-edges, sink
    /// out-edges, cycles, reachability of the sink, the distribution, and
    /// finally non-constancy of `f`.
    pub fn validate(spec: ModelSpec) -> Result<Self> {
        let q = spec.alphabet;
        if q < 1 {
            return Err(Error::Schema("alphabet must be at least 1".into()));
        }
        let mut node_idx = HashMap::new();
        for (i, n) in spec.nodes.iter().enumerate() {
            if node_idx.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateId(n.clone()));
            }
        }
        let lookup = |n: &str| node_idx.get(n).copied().ok_or_else(|| Error::UnknownNode(n.into()));
        let mut edges = Vec::with_capacity(spec.edges.len());
        let mut seen = HashSet::new();
        for e in &spec.edges {
            if !seen.insert(e.id.clone()) {
                return Err(Error::DuplicateId(e.id.clone()));
            }
            let tail = lookup(&e.tail)?;
            let head = lookup(&e.head)?;
            if tail == head {
                return Err(Error::CycleDetected(e.tail.clone()));
            }
            edges.push(Edge { id: e.id.clone(), tail, head });
        }
        if edges.len() > HARD_MAX_EDGES {
            return Err(Error::too_large("edge count", edges.len(), HARD_MAX_EDGES));
        }
        let sink = lookup(&spec.sink)?;
        let mut sources = Vec::with_capacity(spec.sources.len());
        for s in &spec.sources {
            let i = lookup(s)?;
            if sources.contains(&i) {
                return Err(Error::DuplicateId(s.clone()));
            }
            if i == sink {
                return Err(Error::Schema(format!("sink {s} is also a source")));
            }
            sources.push(i);
        }
        if sources.is_empty() {
            return Err(Error::Schema("at least one source is required".into()));
        }
        if sources.len() > 31 {
            return Err(Error::too_large("source count", sources.len(), 31));
        }
        let s = sources.len();
        let domain = (q as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
        if domain > MAX_DOMAIN as u128 {
            return Err(Error::DomainTooLarge { size: domain, cap: MAX_DOMAIN as u128 });
        }
        let domain = domain as usize;
        if spec.function.len() != domain {
            return Err(Error::Schema(format!(
                "function table has {} entries, expected {domain}",
                spec.function.len()
            )));
        }
        if spec.distribution.len() != domain {
            return Err(Error::Schema(format!(
                "distribution has {} entries, expected {domain}",
                spec.distribution.len()
            )));
        }

        let n = spec.nodes.len();
        for e in &edges {
            if let Some(&src) = sources.iter().find(|&&s| s == e.head) {
                return Err(Error::SourceHasInEdge(spec.nodes[src].clone()));
            }
        }
        if edges.iter().any(|e| e.tail == sink) {
            return Err(Error::SinkHasOutEdge(spec.sink.clone()));
        }

        // Kahn's algorithm gives both the cycle check and a topological order.
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (ei, e) in edges.iter().enumerate() {
            indeg[e.head] += 1;
            out[e.tail].push(ei);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &ei in &out[v] {
                let h = edges[ei].head;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    queue.push_back(h);
                }
            }
        }
        if order.len() < n {
            let v = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::CycleDetected(spec.nodes[v].clone()));
        }

        let mut reach = vec![vec![false; n]; n];
        for &v in order.iter().rev() {
            reach[v][v] = true;
            for &ei in &out[v] {
                let h = edges[ei].head;
                let from = reach[h].clone();
                for (dst, src) in reach[v].iter_mut().zip(from) {
                    *dst |= src;
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| v != sink && !reach[v][sink]) {
            return Err(Error::UnreachableNode(spec.nodes[v].clone()));
        }

        let mut total = 0.0;
        for (i, &p) in spec.distribution.iter().enumerate() {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::BadDistribution(format!("entry {i} is {p}, must be positive")));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::BadDistribution(format!("entries sum to {total}")));
        }

        let mut image: Vec<i64> = spec.function.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() < 2 {
            return Err(Error::ConstantFunction);
        }
        let f_ids = spec
            .function
            .iter()
            .map(|v| image.binary_search(v).unwrap() as u32)
            .collect();

        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut topo_edges: Vec<usize> = (0..edges.len()).collect();
        topo_edges.sort_by_key(|&ei| (pos[&edges[ei].tail], ei));

        Ok(NetworkModel {
            node_names: spec.nodes.clone(),
            dist: spec.distribution.clone(),
            spec,
            edges,
            sources,
            sink,
            q,
            f_ids,
            image,
            reach,
            topo_edges,
        })
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn alphabet(&self) -> usize {
        self.q
    }

    pub fn num_sources(&self) -> usize {
        self.sources.len()
    }

    pub fn all_sources(&self) -> SourceSet {
        SourceSet((1u32 << self.sources.len()) - 1)
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_name(&self, v: usize) -> &str {
        &self.node_names[v]
    }

    pub fn num_nodes(&self) -> usize {
        self.node_names.len()
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Node index of source `σ_i`.
    pub fn source_node(&self, i: usize) -> usize {
        self.sources[i]
    }

    /// Position in `S` of a node, if it is a source.
    pub fn source_position(&self, node: usize) -> Option<usize> {
        self.sources.iter().position(|&s| s == node)
    }

    pub fn source_name(&self, i: usize) -> &str {
        &self.node_names[self.sources[i]]
    }

    /// Size of the one-shot source domain `q^s`.
    pub fn domain_size(&self) -> usize {
        self.f_ids.len()
    }

    /// Dense image id of `f(x_S)` for a lexicographic index.
    pub fn f_id(&self, x: usize) -> u32 {
        self.f_ids[x]
    }

    pub fn f_value(&self, x: usize) -> i64 {
        self.image[self.f_ids[x] as usize]
    }

    /// Sorted image of `f`; dense ids index into this list.
    pub fn image(&self) -> &[i64] {
        &self.image
    }

    pub fn prob(&self, x: usize) -> f64 {
        self.dist[x]
    }

    pub fn distribution(&self) -> &[f64] {
        &self.dist
    }

    /// Whether `u` reaches `v` (reflexive).
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.reach[u][v]
    }

    /// Edge indices in a topological order of their tails.
    pub fn topo_edges(&self) -> &[usize] {
        &self.topo_edges
    }

    /// Incoming edge indices of a node, in edge-index order.
    pub fn in_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].head == v).collect()
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdgeId(id.into()))
    }

    pub fn edge_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<EdgeSet> {
        let mut set = EdgeSet::EMPTY;
        for id in ids {
            set = set.union(EdgeSet::singleton(self.edge_index(id.as_ref())?));
        }
        Ok(set)
    }

    pub fn edge_names(&self, set: EdgeSet) -> Vec<String> {
        set.indices().into_iter().map(|i| self.edges[i].id.clone()).collect()
    }

    pub fn source_names(&self, set: SourceSet) -> Vec<String> {
        set.indices().into_iter().map(|i| self.source_name(i).to_string()).collect()
    }

    /// `{e5,e6}` style rendering of an edge set.
    pub fn format_edges(&self, set: EdgeSet) -> String {
        format!("{{{}}}", self.edge_names(set).join(","))
    }

    /// `{e5,e6}|{{e5},{e6}}` style rendering of a cut/partition pair.
    pub fn format_pair(&self, p: &StrongPartition) -> String {
        let blocks: Vec<String> = p.blocks.iter().map(|&b| self.format_edges(b)).collect();
        format!("{}|{{{}}}", self.format_edges(p.cut.cut), blocks.join(","))
    }

    /// Sources that cannot reach the sink once the edges of `cut` are removed.
    fn separated(&self, cut: EdgeSet) -> SourceSet {
        let n = self.node_names.len();
        let mut alive = vec![false; n];
        alive[self.sink] = true;
        // Reverse search from the sink over the surviving edges.
        let mut stack = vec![self.sink];
        while let Some(v) = stack.pop() {
            for (ei, e) in self.edges.iter().enumerate() {
                if e.head == v && !cut.contains(ei) && !alive[e.tail] {
                    alive[e.tail] = true;
                    stack.push(e.tail);
                }
            }
        }
        SourceSet::from_indices((0..self.sources.len()).filter(|&i| !alive[self.sources[i]]))
    }

    fn upstream(&self, cut: EdgeSet) -> SourceSet {
        SourceSet::from_indices((0..self.sources.len()).filter(|&i| {
            cut.indices().iter().any(|&e| self.reach[self.sources[i]][self.edges[e].tail])
        }))
    }

    pub fn analyze_cut(&self, cut: EdgeSet) -> Result<CutAnalysis> {
        if cut.0 >> self.edges.len() != 0 {
            return Err(Error::UnknownEdgeId(format!("edge index {}", 31 - cut.0.leading_zeros())));
        }
        let k = self.upstream(cut);
        let i = self.separated(cut);
        Ok(CutAnalysis { cut, k, i, j: k.minus(i), is_global: i == self.all_sources() })
    }

    pub fn analyze_cut_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<CutAnalysis> {
        self.analyze_cut(self.edge_set(ids)?)
    }

    /// All cut sets with at most `max_size` edges, ordered lexicographically
    /// by their sorted edge-index lists.
    pub fn enumerate_cut_sets(&self, max_size: usize, max_edges: usize) -> Result<Vec<CutAnalysis>> {
        let cap = max_edges.min(HARD_MAX_EDGES);
        if self.edges.len() > cap {
            return Err(Error::too_large("edge count for cut enumeration", self.edges.len(), cap));
        }
        let mut out = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        self.cut_dfs(0, max_size, &mut stack, &mut out);
        Ok(out)
    }

    fn cut_dfs(&self, start: usize, max_size: usize, stack: &mut Vec<usize>, out: &mut Vec<CutAnalysis>) {
        if stack.len() == max_size {
            return;
        }
        for e in start..self.edges.len() {
            stack.push(e);
            let c = self.analyze_cut(EdgeSet::from_indices(stack.iter().copied())).unwrap();
            if !c.i.is_empty() {
                out.push(c);
            }
            self.cut_dfs(e + 1, max_size, stack, out);
            stack.pop();
        }
    }

    /// Strong partitions of a cut set in restricted-growth-string order; the
    /// trivial partition comes first.
    pub fn enumerate_strong_partitions(&self, cut: &CutAnalysis) -> Result<Vec<StrongPartition>> {
        if cut.i.is_empty() {
            return Err(Error::NotACutSet);
        }
        let edges = cut.cut.indices();
        let mut out = Vec::new();
        let mut rgs = vec![0usize; edges.len()];
        loop {
            let m = rgs.iter().max().map_or(0, |&x| x + 1);
            let blocks: Vec<EdgeSet> = (0..m)
                .map(|b| EdgeSet::from_indices(edges.iter().zip(&rgs).filter(|(_, &r)| r == b).map(|(&e, _)| e)))
                .collect();
            if let Some(p) = self.strong_partition_from_blocks(cut, &blocks) {
                out.push(p);
            }
            if !next_rgs(&mut rgs) {
                break;
            }
        }
        Ok(out)
    }

    fn strong_partition_from_blocks(&self, cut: &CutAnalysis, blocks: &[EdgeSet]) -> Option<StrongPartition> {
        let analyses: Vec<CutAnalysis> = blocks.iter().map(|&b| self.analyze_cut(b).unwrap()).collect();
        if analyses.iter().any(|a| a.i.is_empty()) {
            return None;
        }
        for (x, a) in analyses.iter().enumerate() {
            for (y, b) in analyses.iter().enumerate() {
                if x != y && !a.i.intersect(b.k).is_empty() {
                    return None;
                }
            }
        }
        let union = analyses.iter().fold(SourceSet::EMPTY, |u, a| u.union(a.i));
        Some(StrongPartition {
            cut: *cut,
            blocks: blocks.to_vec(),
            block_sources: analyses.iter().map(|a| a.i).collect(),
            l: cut.i.minus(union),
        })
    }

    /// Build a strong partition from explicit blocks of edge ids, checking the
    /// two defining conditions.
    pub fn strong_partition<S: AsRef<str>>(&self, blocks: &[Vec<S>]) -> Result<StrongPartition> {
        let sets: Vec<EdgeSet> = blocks.iter().map(|b| self.edge_set(b)).collect::<Result<_>>()?;
        let mut union = EdgeSet::EMPTY;
        for &b in &sets {
            if b.is_empty() || !b.intersect(union).is_empty() {
                return Err(Error::InvalidArgument("partition blocks must be nonempty and disjoint".into()));
            }
            union = union.union(b);
        }
        let cut = self.analyze_cut(union)?;
        if cut.i.is_empty() {
            return Err(Error::NotACutSet);
        }
        let mut sorted = sets.clone();
        sorted.sort_by_key(|b| b.first());
        self.strong_partition_from_blocks(&cut, &sorted)
            .ok_or_else(|| Error::InvalidArgument("blocks do not form a strong partition".into()))
    }
}

/// Advance a restricted-growth string; false when exhausted.
pub(crate) fn next_rgs(a: &mut [usize]) -> bool {
    let n = a.len();
    for i in (1..n).rev() {
        let max_prefix = a[..i].iter().max().copied().unwrap_or(0);
        if a[i] <= max_prefix {
            a[i] += 1;
            for x in a[i + 1..].iter_mut() {
                *x = 0;
            }
            return true;
        }
    }
    false
}

impl fmt::Display for CutAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C={:#x} K={:#x} I={:#x} J={:#x}", self.cut.0, self.k.0, self.i.0, self.j.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::diamond;

    #[test]
    fn diamond_validates() {
        let m = diamond();
        assert_eq!(m.num_edges(), 6);
        assert_eq!(m.num_sources(), 3);
        assert_eq!(m.image(), &[0, 1, 2, 3]);
    }

    #[test]
    fn reversed_e5_reports_sink_out_edge() {
        let mut spec = diamond().spec().clone();
        let e5 = spec.edges.iter_mut().find(|e| e.id == "e5").unwrap();
        std::mem::swap(&mut e5.tail, &mut e5.head);
        assert!(matches!(NetworkModel::validate(spec), Err(Error::SinkHasOutEdge(_))));
    }

    #[test]
    fn single_edge_model_is_valid() {
        let m = crate::fixtures::single_edge(&[0.5, 0.5]);
        let cuts = m.enumerate_cut_sets(1, DEFAULT_MAX_EDGES).unwrap();
        assert_eq!(cuts.len(), 1);
        assert!(cuts[0].is_global);
    }

    #[test]
    fn diamond_cut_sets() {
        let m = diamond();
        let c = m.analyze_cut_ids(&["e5", "e6"]).unwrap();
        assert_eq!(c.i, m.all_sources());
        assert!(c.j.is_empty());
        let c = m.analyze_cut_ids(&["e5"]).unwrap();
        assert_eq!(m.source_names(c.i), ["s1"]);
        assert_eq!(m.source_names(c.k), ["s1", "s2"]);
        assert_eq!(m.source_names(c.j), ["s2"]);
        let c = m.analyze_cut(EdgeSet::EMPTY).unwrap();
        assert!(c.k.is_empty() && c.i.is_empty() && c.j.is_empty());
        assert!(m.analyze_cut_ids(&["e2"]).unwrap().i.is_empty());
        assert!(matches!(m.analyze_cut_ids(&["e9"]), Err(Error::UnknownEdgeId(_))));
    }

    #[test]
    fn diamond_partitions() {
        let m = diamond();
        let c = m.analyze_cut_ids(&["e5", "e6"]).unwrap();
        let ps = m.enumerate_strong_partitions(&c).unwrap();
        let names: Vec<String> = ps.iter().map(|p| m.format_pair(p)).collect();
        assert_eq!(names, ["{e5,e6}|{{e5,e6}}", "{e5,e6}|{{e5},{e6}}"]);
        assert_eq!(ps[1].l, SourceSet::singleton(1));
        let e = m.analyze_cut(EdgeSet::EMPTY).unwrap();
        assert_eq!(m.enumerate_strong_partitions(&e), Err(Error::NotACutSet));
    }

    #[test]
    fn rgs_counts_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let mut a = vec![0; n];
            let mut count = 1;
            while next_rgs(&mut a) {
                count += 1;
            }
            assert_eq!(count, bell);
        }
    }

    #[test]
    fn edge_cap_enforced() {
        let m = diamond();
        let err = m.enumerate_cut_sets(2, 5).unwrap_err();
        assert!(err.is_size_cap());
    }
}
