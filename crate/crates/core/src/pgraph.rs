//! Probabilistic graphs `(G, Z)`: loop-free undirected graphs with a
//! distribution on the vertices, and the constructions used on them.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted by the exact clique search.
pub const MAX_CLIQUE_VERTICES: usize = 64;
/// Largest vertex count of a graph product.
pub const MAX_PRODUCT_VERTICES: usize = 1 << 14;

const WORD: usize = 64;

/// Fixed-width bitset over vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<u64>);

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet(vec![0; n.div_ceil(WORD)])
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_slice(n: usize, vs: &[usize]) -> Self {
        let mut s = Self::new(n);
        for &v in vs {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        self.0[v / WORD] |= 1 << (v % WORD);
    }

    pub fn remove(&mut self, v: usize) {
        self.0[v / WORD] &= !(1 << (v % WORD));
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        VertexSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    pub fn minus(&self, o: &Self) -> Self {
        VertexSet(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * WORD + b
                })
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// A loop-free undirected graph with a probability distribution on vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbGraph {
    labels: Vec<String>,
    adj: Vec<VertexSet>,
    dist: Vec<f64>,
}

/// How a graph splits into autonomous blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitKind {
    Isolated,
    CompletelyConnected,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutonomousSplit {
    pub kind: SplitKind,
    pub blocks: Vec<Vec<usize>>,
}

/// Graph file format: `{"vertices": [..], "edges": [[u, v], ..], "dist": [..]}`.
/// Edge endpoints are vertex positions or labels.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<[VertexRef; 2]>,
    pub dist: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Label(String),
}

pub(crate) fn check_dist(dist: &[f64]) -> Result<()> {
    if dist.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::BadDistribution("probabilities must be finite and nonnegative".into()));
    }
    let total: f64 = dist.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::BadDistribution(format!("probabilities sum to {total}")));
    }
    Ok(())
}

impl ProbGraph {
    /// Build and validate a graph from an edge list.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)], dist: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Schema("a graph needs at least one vertex".into()));
        }
        if dist.len() != n {
            return Err(Error::Schema(format!("{} probabilities for {n} vertices", dist.len())));
        }
        check_dist(&dist)?;
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Schema(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::Schema(format!("self-loop at vertex {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(ProbGraph { labels, adj, dist })
    }

    pub(crate) fn from_parts(labels: Vec<String>, adj: Vec<VertexSet>, dist: Vec<f64>) -> Self {
        ProbGraph { labels, adj, dist }
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let resolve = |r: &VertexRef| match r {
            VertexRef::Index(i) => Ok(*i),
            VertexRef::Label(l) => spec
                .vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::UnknownNode(l.clone())),
        };
        let edges: Vec<(usize, usize)> =
            spec.edges.iter().map(|[u, v]| Ok((resolve(u)?, resolve(v)?))).collect::<Result<_>>()?;
        Self::new(spec.vertices.clone(), &edges, spec.dist.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.labels.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [VertexRef::Index(u), VertexRef::Index(v)]).collect(),
            dist: self.dist.clone(),
        }
    }

    fn default_labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub fn empty(dist: Vec<f64>) -> Result<Self> {
        Self::new(Self::default_labels(dist.len()), &[], dist)
    }

    pub fn complete(dist: Vec<f64>) -> Result<Self> {
        let n = dist.len();
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::new(Self::default_labels(n), &edges, dist)
    }

    pub fn uniform(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(Self::default_labels(n), edges, vec![1.0 / n as f64; n])
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dist(&self) -> &[f64] {
        &self.dist
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n()).flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Same graph with a different distribution.
    pub fn with_dist(&self, dist: Vec<f64>) -> Result<Self> {
        if dist.len() != self.n() {
            return Err(Error::Schema(format!("{} probabilities for {} vertices", dist.len(), self.n())));
        }
        check_dist(&dist)?;
        Ok(ProbGraph { labels: self.labels.clone(), adj: self.adj.clone(), dist })
    }

    /// Same graph with a distribution that is only checked for length.
    pub(crate) fn with_dist_unchecked(&self, dist: Vec<f64>) -> Self {
        debug_assert_eq!(dist.len(), self.n());
        ProbGraph { labels: self.labels.clone(), adj: self.adj.clone(), dist }
    }

    pub fn complement(&self) -> Self {
        let n = self.n();
        let full = VertexSet::full(n);
        let adj = (0..n)
            .map(|v| {
                let mut s = full.minus(&self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        ProbGraph { labels: self.labels.clone(), adj, dist: self.dist.clone() }
    }

    pub fn and_product(gs: &[ProbGraph]) -> Result<Self> {
        Self::product(gs, true)
    }

    pub fn or_product(gs: &[ProbGraph]) -> Result<Self> {
        Self::product(gs, false)
    }

    fn product(gs: &[ProbGraph], and: bool) -> Result<Self> {
        if gs.is_empty() {
            return Err(Error::EmptyList);
        }
        let total = gs.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.n()));
        let n = match total {
            Some(n) if n <= MAX_PRODUCT_VERTICES => n,
            _ => return Err(Error::too_large("product vertex count", total.unwrap_or(usize::MAX), MAX_PRODUCT_VERTICES)),
        };
        let coords: Vec<Vec<usize>> = (0..n)
            .map(|mut x| {
                let mut c = vec![0; gs.len()];
                for (i, g) in gs.iter().enumerate().rev() {
                    c[i] = x % g.n();
                    x /= g.n();
                }
                c
            })
            .collect();
        let labels = coords
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().zip(gs).map(|(&v, g)| g.label(v)).collect();
                format!("({})", parts.join("|"))
            })
            .collect();
        let dist = coords.iter().map(|c| c.iter().zip(gs).map(|(&v, g)| g.dist[v]).product()).collect();
        let mut adj = vec![VertexSet::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                let (cu, cv) = (&coords[u], &coords[v]);
                let mut differing = (0..gs.len()).filter(|&i| cu[i] != cv[i]);
                let linked = |i: usize| gs[i].adjacent(cu[i], cv[i]);
                let adjacent = if and { differing.all(linked) } else { differing.any(linked) };
                if adjacent {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
        }
        Ok(ProbGraph { labels, adj, dist })
    }

    fn mass(&self, us: &[usize]) -> f64 {
        us.iter().map(|&v| self.dist[v]).sum()
    }

    fn check_subset(&self, us: &[usize]) -> Result<Vec<usize>> {
        let mut s = us.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return Err(Error::ZeroMass);
        }
        if let Some(&v) = s.iter().find(|&&v| v >= self.n()) {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        Ok(s)
    }

    /// Induced subgraph on `us` with the conditional distribution.
    pub fn project(&self, us: &[usize]) -> Result<Self> {
        let s = self.check_subset(us)?;
        let mass = self.mass(&s);
        if mass <= 0.0 {
            return Err(Error::ZeroMass);
        }
        let n = s.len();
        let adj = s
            .iter()
            .map(|&u| {
                let mut row = VertexSet::new(n);
                for (j, &v) in s.iter().enumerate() {
                    if self.adj[u].contains(v) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(ProbGraph {
            labels: s.iter().map(|&v| self.labels[v].clone()).collect(),
            adj,
            dist: s.iter().map(|&v| self.dist[v] / mass).collect(),
        })
    }

    /// Whether every vertex outside `us` sees either all of `us` or none of it.
    pub fn is_autonomous(&self, us: &[usize]) -> bool {
        let set = VertexSet::from_slice(self.n(), us);
        let k = set.len();
        (0..self.n()).filter(|&v| !set.contains(v)).all(|v| {
            let seen = self.adj[v].intersect(&set).len();
            seen == 0 || seen == k
        })
    }

    /// Replace the autonomous set `us` by one vertex carrying its total mass.
    /// The new vertex takes the position of the least member of `us`.
    pub fn replace(&self, us: &[usize], label: &str) -> Result<Self> {
        let s = self.check_subset(us)?;
        if !self.is_autonomous(&s) {
            return Err(Error::NotAutonomous);
        }
        let mass = self.mass(&s);
        if mass <= 0.0 {
            return Err(Error::ZeroMass);
        }
        let set = VertexSet::from_slice(self.n(), &s);
        let rep = s[0];
        // Old vertex -> new position.
        let keep: Vec<usize> = (0..self.n()).filter(|&v| v == rep || !set.contains(v)).collect();
        let n = keep.len();
        let pos = |v: usize| keep.binary_search(&v).ok();
        let outside = self.adj[rep].minus(&set);
        let mut adj = vec![VertexSet::new(n); n];
        for (i, &u) in keep.iter().enumerate() {
            let row = if u == rep { &outside } else { &self.adj[u] };
            for v in row.iter() {
                let target = if set.contains(v) { Some(pos(rep).unwrap()) } else { pos(v) };
                if let Some(j) = target {
                    adj[i].insert(j);
                }
            }
        }
        let labels = keep
            .iter()
            .map(|&v| if v == rep { label.to_string() } else { self.labels[v].clone() })
            .collect();
        let dist = keep.iter().map(|&v| if v == rep { mass } else { self.dist[v] }).collect();
        Ok(ProbGraph { labels, adj, dist })
    }

    /// Connected components of the subgraph induced by `within`, each sorted,
    /// ordered by least member.
    pub fn components_within(&self, within: &VertexSet, complement: bool) -> Vec<Vec<usize>> {
        let mut remaining = within.clone();
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            remaining.remove(start);
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let nb = if complement {
                    remaining.minus(&self.adj[v])
                } else {
                    remaining.intersect(&self.adj[v])
                };
                for w in nb.iter() {
                    remaining.remove(w);
                    comp.push(w);
                    stack.push(w);
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&VertexSet::full(self.n()), false)
    }

    pub fn co_components(&self) -> Vec<Vec<usize>> {
        self.components_within(&VertexSet::full(self.n()), true)
    }

    /// Split into connected components, else into co-components, else report
    /// that neither split exists.
    pub fn autonomous_split(&self) -> AutonomousSplit {
        split_within(self, &VertexSet::full(self.n()))
    }

    /// Vertices of one maximum clique, ascending.
    pub fn max_clique(&self) -> Result<Vec<usize>> {
        let n = self.n();
        if n > MAX_CLIQUE_VERTICES {
            return Err(Error::too_large("clique search vertex count", n, MAX_CLIQUE_VERTICES));
        }
        let adj: Vec<u64> = self.adj.iter().map(|s| s.0.first().copied().unwrap_or(0)).collect();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut best = 0u64;
        expand_clique(&adj, all, 0, &mut best);
        Ok((0..n).filter(|&v| best >> v & 1 == 1).collect())
    }

    pub fn clique_number(&self) -> Result<usize> {
        Ok(self.max_clique()?.len())
    }

    /// Maximum-weight independent set for nonnegative weights. Among sets of
    /// equal weight the one found first by include-first branching on vertices
    /// in index order is returned.
    pub fn max_weight_independent_set(&self, weights: &[f64]) -> Result<Vec<usize>> {
        let n = self.n();
        if n > MAX_CLIQUE_VERTICES {
            return Err(Error::too_large("independent set search vertex count", n, MAX_CLIQUE_VERTICES));
        }
        if weights.len() != n || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument("weights must be finite, nonnegative, one per vertex".into()));
        }
        let adj: Vec<u64> = self.adj.iter().map(|s| s.0.first().copied().unwrap_or(0)).collect();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut search = Mwis { adj: &adj, w: weights, best_w: -1.0, best: 0 };
        search.run(all, 0.0, 0);
        Ok((0..n).filter(|&v| search.best >> v & 1 == 1).collect())
    }

    /// Whether `colors` assigns distinct colors to every pair of adjacent vertices.
    pub fn is_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n() && self.edges().iter().all(|&(u, v)| colors[u] != colors[v])
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{l}\\n{:.6}\"];", self.dist[i]);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn split_within(g: &ProbGraph, within: &VertexSet) -> AutonomousSplit {
    let comps = g.components_within(within, false);
    if comps.len() > 1 {
        return AutonomousSplit { kind: SplitKind::Isolated, blocks: comps };
    }
    let co = g.components_within(within, true);
    if co.len() > 1 {
        return AutonomousSplit { kind: SplitKind::CompletelyConnected, blocks: co };
    }
    AutonomousSplit { kind: SplitKind::None, blocks: vec![within.to_vec()] }
}

/// Greedy sequential coloring of `p`; returns vertices with nondecreasing
/// color numbers.
fn color_sort(adj: &[u64], p: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.count_ones() as usize);
    let mut uncolored = p;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1u64 << v) & !adj[v];
            uncolored &= !(1u64 << v);
            out.push((v, color));
        }
    }
    out
}

fn expand_clique(adj: &[u64], mut p: u64, current: u64, best: &mut u64) {
    let size = current.count_ones() as usize;
    let order = color_sort(adj, p);
    for &(v, color) in order.iter().rev() {
        if size + color <= best.count_ones() as usize {
            return;
        }
        let next = current | 1u64 << v;
        let np = p & adj[v];
        if np == 0 {
            if next.count_ones() > best.count_ones() {
                *best = next;
            }
        } else {
            expand_clique(adj, np, next, best);
        }
        p &= !(1u64 << v);
    }
}

struct Mwis<'a> {
    adj: &'a [u64],
    w: &'a [f64],
    best_w: f64,
    best: u64,
}

impl Mwis<'_> {
    fn run(&mut self, mut cand: u64, mut cur_w: f64, mut cur: u64) {
        // Vertices with no neighbour among the candidates are always taken.
        loop {
            let free = bits(cand).find(|&v| cand & self.adj[v] == 0);
            match free {
                Some(v) => {
                    cand &= !(1u64 << v);
                    cur |= 1u64 << v;
                    cur_w += self.w[v];
                }
                None => break,
            }
        }
        if cand == 0 {
            if cur_w > self.best_w {
                self.best_w = cur_w;
                self.best = cur;
            }
            return;
        }
        let bound: f64 = cur_w + bits(cand).map(|v| self.w[v]).sum::<f64>();
        if bound <= self.best_w {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        self.run(cand & !self.adj[v] & !(1u64 << v), cur_w + self.w[v], cur | 1u64 << v);
        self.run(cand & !(1u64 << v), cur_w, cur);
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}
