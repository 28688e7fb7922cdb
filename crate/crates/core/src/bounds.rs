//! Lower bounds on the computing capacity: the clique-entropy bound, the
//! improved bound over equivalent distributions, and the fixed-length bound.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chargraph::{self, CharGraph};
use crate::entropy::{self, Method};
use crate::equiv::CutContext;
use crate::error::{Error, Result};
use crate::netmodel::{NetworkModel, SourceSet, StrongPartition, DEFAULT_MAX_EDGES};
use crate::space::{marginal, MessageSpace};

/// Floor on every atom of a candidate distribution.
pub const MIN_ATOM: f64 = 1e-9;
/// Two pair values closer than this count as tied.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub cut: Vec<String>,
    pub partition: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Largest cut size enumerated; `None` means every size.
    pub max_cut_size: Option<usize>,
    pub max_edges: usize,
    /// Restrict the search to these pairs.
    pub pairs: Option<Vec<PairSpec>>,
    pub max_pairs: usize,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_cut_size: None, max_edges: DEFAULT_MAX_EDGES, pairs: None, max_pairs: 100_000, parallel: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptConfig {
    pub seed: u64,
    pub starts: usize,
    /// Stop a start when a full sweep gains less than this.
    pub tol: f64,
    pub max_sweeps: usize,
    pub grid_oracle: bool,
    /// Grid cells per axis of the feasible bounding box.
    pub grid_resolution: usize,
}

impl Default for OptConfig {
    fn default() -> Self {
        OptConfig { seed: 0, starts: 32, tol: 1e-9, max_sweeps: 200, grid_oracle: false, grid_resolution: 80 }
    }
}

/// Every `(C, P_C)` pair in canonical order: cuts lexicographically, then
/// partitions in restricted-growth order.
pub fn enumerate_pairs(model: &NetworkModel, cfg: &SearchConfig) -> Result<Vec<StrongPartition>> {
    if let Some(specs) = &cfg.pairs {
        return specs
            .iter()
            .map(|s| {
                let p = model.strong_partition(&s.partition)?;
                if p.cut.cut != model.edge_set(&s.cut)? {
                    return Err(Error::InvalidArgument(format!(
                        "partition blocks do not cover the cut {}",
                        s.cut.join(",")
                    )));
                }
                Ok(p)
            })
            .collect();
    }
    let max_size = cfg.max_cut_size.unwrap_or(model.num_edges()).max(1);
    let mut out = Vec::new();
    for cut in model.enumerate_cut_sets(max_size, cfg.max_edges)? {
        out.extend(model.enumerate_strong_partitions(&cut)?);
        if out.len() > cfg.max_pairs {
            return Err(Error::SearchSpaceExceeded(format!("more than {} (C, P_C) pairs", cfg.max_pairs)));
        }
    }
    Ok(out)
}

/// Linear constraints defining the distributions equivalent to the base: for
/// every block `ℓ`, the marginal on `I_ℓ ∪ L ∪ J` is fixed. Atoms are indexed
/// by the one-shot message space of `I ∪ J`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalentDistSpec {
    pub base: Vec<f64>,
    /// Each group lists the atoms whose total is pinned.
    pub groups: Vec<Vec<usize>>,
    pub targets: Vec<f64>,
}

impl EquivalentDistSpec {
    pub fn new(model: &NetworkModel, partition: &StrongPartition) -> Result<Self> {
        let q = model.alphabet();
        let union = partition.cut.i.union(partition.cut.j);
        let space = MessageSpace::new(union, 1, q)?;
        let base = marginal(model, union);
        let mut groups = Vec::new();
        let mut targets = Vec::new();
        let mut buf = vec![0u8; model.num_sources()];
        for &block in &partition.block_sources {
            let set: SourceSet = block.union(partition.l).union(partition.cut.j);
            let sub = MessageSpace::new(set, 1, q)?;
            let mut g = vec![Vec::new(); sub.size()];
            for x in 0..space.size() {
                space.write_into(x, &mut buf);
                g[sub.index_of(&buf)].push(x);
            }
            for atoms in g {
                targets.push(atoms.iter().map(|&a| base[a]).sum());
                groups.push(atoms);
            }
        }
        Ok(EquivalentDistSpec { base, groups, targets })
    }

    pub fn atoms(&self) -> usize {
        self.base.len()
    }

    /// Orthonormal basis (as columns) of directions that keep every pinned
    /// marginal and the total mass unchanged.
    pub fn nullspace(&self) -> DMatrix<f64> {
        let n = self.atoms();
        let mut a = DMatrix::<f64>::zeros(self.groups.len() + 1, n);
        for (r, g) in self.groups.iter().enumerate() {
            for &x in g {
                a[(r, x)] = 1.0;
            }
        }
        for x in 0..n {
            a[(self.groups.len(), x)] = 1.0;
        }
        let ata = a.transpose() * &a;
        let eig = ata.symmetric_eigen();
        let scale = eig.eigenvalues.iter().fold(1.0f64, |m, &v| m.max(v.abs()));
        let mut cols: Vec<(usize, DVector<f64>)> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &v)| v.abs() < 1e-9 * scale)
            .map(|(i, _)| (i, eig.eigenvectors.column(i).into_owned()))
            .collect();
        cols.sort_by_key(|(i, _)| *i);
        let d = cols.len();
        let mut out = DMatrix::<f64>::zeros(n, d);
        for (j, (_, c)) in cols.into_iter().enumerate() {
            // Fix the sign so the first nonzero entry is positive.
            let sign = c.iter().find(|x| x.abs() > 1e-12).map_or(1.0, |x| x.signum());
            out.set_column(j, &(c * sign));
        }
        out
    }

    /// Largest deviation of any pinned marginal or of the total mass.
    pub fn max_violation(&self, p: &[f64]) -> f64 {
        let total = (p.iter().sum::<f64>() - 1.0).abs();
        self.groups
            .iter()
            .zip(&self.targets)
            .map(|(g, t)| (g.iter().map(|&a| p[a]).sum::<f64>() - t).abs())
            .fold(total, f64::max)
    }
}

/// Whether `p_hat` is strictly positive and has every pinned marginal of the
/// base within `1e-10`.
pub fn is_pc_equivalent(p_hat: &[f64], model: &NetworkModel, partition: &StrongPartition) -> Result<bool> {
    let spec = EquivalentDistSpec::new(model, partition)?;
    if p_hat.len() != spec.atoms() {
        return Err(Error::BadDistribution(format!("{} atoms, expected {}", p_hat.len(), spec.atoms())));
    }
    if p_hat.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::BadDistribution("atoms must be finite and nonnegative".into()));
    }
    if (p_hat.iter().sum::<f64>() - 1.0).abs() > 1e-10 {
        return Err(Error::BadDistribution("atoms do not sum to one".into()));
    }
    Ok(p_hat.iter().all(|&p| p > 0.0) && spec.max_violation(p_hat) <= 1e-10)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridReport {
    /// Best objective on the grid (clique entropy, not divided by `|C|`).
    pub objective: f64,
    pub point: Vec<f64>,
    pub points_evaluated: usize,
    /// The best grid point has an infeasible grid neighbour.
    pub at_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Optimum {
    /// Best clique entropy found, not divided by `|C|`.
    pub objective: f64,
    /// Best distribution on the one-shot space of `I ∪ J`.
    pub point: Vec<f64>,
    pub point_labels: Vec<String>,
    pub dimension: usize,
    pub starts: usize,
    pub evaluations: usize,
    pub max_marginal_violation: f64,
    pub boundary_suspected: bool,
    pub grid: Option<GridReport>,
}

/// Everything evaluated for one `(C, P_C)` pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairEval {
    pub key: String,
    pub cut: Vec<String>,
    pub partition: Vec<Vec<String>>,
    pub cut_size: usize,
    pub clique_entropy: f64,
    pub method: Method,
    pub basic: f64,
    pub n_c: usize,
    pub omega: Option<usize>,
    pub fixed_length: f64,
    pub improved: Option<f64>,
    pub optimum: Option<Optimum>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Basic,
    Improved,
    FixedLength,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub key: String,
    pub cut: Vec<String>,
    pub partition: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: f64,
    pub witness: Witness,
    pub method: Method,
    /// Optimizer diagnostics at the witness, for the improved bound.
    pub optimum: Option<Optimum>,
}

/// All three bounds with the per-pair table they were computed from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsSummary {
    pub basic: BoundReport,
    pub improved: Option<BoundReport>,
    pub fixed_length: BoundReport,
    pub pairs: Vec<PairEval>,
}

fn evaluate_pair(
    model: &NetworkModel,
    partition: &StrongPartition,
    index: usize,
    opt: Option<&OptConfig>,
) -> Result<PairEval> {
    let cg = chargraph::build(model, partition, 1)?;
    let h = entropy::clique_entropy(&cg.graph)?;
    let size = partition.cut.cut.len() as f64;
    let n_c = CutContext::new(model, partition, 1)?.n_c();
    let omega = (cg.graph.n() <= crate::pgraph::MAX_CLIQUE_VERTICES).then(|| cg.graph.clique_number()).transpose()?;
    let basic = h.value / size;
    let optimum = opt.map(|o| optimize(model, partition, &cg, index, o)).transpose()?;
    let improved = optimum.as_ref().map(|o| (o.objective / size).max(basic));
    Ok(PairEval {
        key: model.format_pair(partition),
        cut: model.edge_names(partition.cut.cut),
        partition: partition.blocks.iter().map(|&b| model.edge_names(b)).collect(),
        cut_size: partition.cut.cut.len(),
        clique_entropy: h.value,
        method: h.method,
        basic,
        n_c,
        omega,
        fixed_length: (n_c as f64).log2() / size,
        improved,
        optimum,
    })
}

/// Evaluate every pair and assemble the three bound reports.
pub fn all_bounds(model: &NetworkModel, search: &SearchConfig, opt: Option<&OptConfig>) -> Result<BoundsSummary> {
    let pairs = enumerate_pairs(model, search)?;
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("no (C, P_C) pairs to evaluate".into()));
    }
    let evals: Vec<PairEval> = if search.parallel {
        pairs.par_iter().enumerate().map(|(i, p)| evaluate_pair(model, p, i, opt)).collect::<Result<_>>()?
    } else {
        pairs.iter().enumerate().map(|(i, p)| evaluate_pair(model, p, i, opt)).collect::<Result<_>>()?
    };
    let basic = report(&evals, BoundKind::Basic, |e| Some(e.basic));
    let fixed_length = report(&evals, BoundKind::FixedLength, |e| Some(e.fixed_length));
    let improved = opt.map(|_| report(&evals, BoundKind::Improved, |e| e.improved));
    Ok(BoundsSummary { basic, improved, fixed_length, pairs: evals })
}

fn report<F: Fn(&PairEval) -> Option<f64>>(evals: &[PairEval], kind: BoundKind, value: F) -> BoundReport {
    let mut best: Option<&PairEval> = None;
    for e in evals {
        let v = value(e).unwrap_or(f64::NEG_INFINITY);
        best = match best {
            None => Some(e),
            Some(b) => {
                let bv = value(b).unwrap_or(f64::NEG_INFINITY);
                if v > bv + TIE_TOL || ((v - bv).abs() <= TIE_TOL && e.key < b.key) {
                    Some(e)
                } else {
                    Some(b)
                }
            }
        };
    }
    let b = best.expect("at least one pair");
    BoundReport {
        kind,
        value: value(b).unwrap_or(f64::NAN),
        witness: Witness { key: b.key.clone(), cut: b.cut.clone(), partition: b.partition.clone() },
        method: if kind == BoundKind::FixedLength { Method::BruteForce } else { b.method },
        optimum: if kind == BoundKind::Improved { b.optimum.clone() } else { None },
    }
}

pub fn basic_lower_bound(model: &NetworkModel, search: &SearchConfig) -> Result<BoundReport> {
    Ok(all_bounds(model, search, None)?.basic)
}

pub fn improved_lower_bound(model: &NetworkModel, search: &SearchConfig, opt: &OptConfig) -> Result<BoundReport> {
    Ok(all_bounds(model, search, Some(opt))?.improved.expect("optimizer configured"))
}

pub fn fixed_length_bound(model: &NetworkModel, search: &SearchConfig) -> Result<BoundReport> {
    Ok(all_bounds(model, search, None)?.fixed_length)
}

/// Maximise the clique entropy of the one-shot characteristic graph over the
/// distributions equivalent to the base.
pub fn optimize(
    model: &NetworkModel,
    partition: &StrongPartition,
    cg: &CharGraph,
    pair_index: usize,
    cfg: &OptConfig,
) -> Result<Optimum> {
    let spec = EquivalentDistSpec::new(model, partition)?;
    let basis = spec.nullspace();
    let problem = Problem { cg, base: DVector::from_vec(spec.base.clone()), basis, evaluations: std::cell::Cell::new(0) };
    let d = problem.basis.ncols();
    let base_t = DVector::zeros(d);
    let base_value = problem.value(&base_t)?;
    let mut best = (base_value, base_t.clone());
    let mut starts = 0;
    if d > 0 {
        let mut initial = vec![base_t.clone()];
        for s in 0..cfg.starts {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(((pair_index as u64) << 32) | s as u64);
            initial.push(problem.hit_and_run(&base_t, &mut rng, 8));
        }
        for t0 in initial {
            starts += 1;
            let (v, t) = problem.ascend(t0, cfg)?;
            if v > best.0 + cfg.tol.min(1e-12) {
                best = (v, t);
            }
        }
    }
    if !best.0.is_finite() {
        return Err(Error::OptimizerFailed("no start produced a finite objective".into()));
    }
    let point = problem.point(&best.1);
    let violation = spec.max_violation(point.as_slice());
    let grid = if cfg.grid_oracle && (1..=3).contains(&d) { Some(problem.grid(cfg.grid_resolution)?) } else { None };
    let min_atom = point.iter().copied().fold(f64::INFINITY, f64::min);
    let boundary_suspected = min_atom < 1e-6 || grid.as_ref().is_some_and(|g| g.at_boundary);
    let space = MessageSpace::new(partition.cut.i.union(partition.cut.j), 1, model.alphabet())?;
    Ok(Optimum {
        objective: best.0,
        point: point.iter().copied().collect(),
        point_labels: (0..space.size()).map(|x| space.label(x)).collect(),
        dimension: d,
        starts,
        evaluations: problem.evaluations.get(),
        max_marginal_violation: violation,
        boundary_suspected,
        grid,
    })
}

struct Problem<'a> {
    cg: &'a CharGraph,
    base: DVector<f64>,
    basis: DMatrix<f64>,
    evaluations: std::cell::Cell<usize>,
}

impl Problem<'_> {
    fn point(&self, t: &DVector<f64>) -> DVector<f64> {
        &self.base + &self.basis * t
    }

    fn value(&self, t: &DVector<f64>) -> Result<f64> {
        self.evaluations.set(self.evaluations.get() + 1);
        let p = self.point(t);
        entropy::clique_entropy_with_dist(&self.cg.graph, p.as_slice())
    }

    /// Range of `s` keeping `t + s·dir` above the atom floor.
    fn chord(&self, t: &DVector<f64>, dir: &DVector<f64>) -> (f64, f64) {
        let p = self.point(t);
        let dp = &self.basis * dir;
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (x, dx) in p.iter().zip(dp.iter()) {
            if dx.abs() < 1e-15 {
                continue;
            }
            let s = (MIN_ATOM - x) / dx;
            if *dx > 0.0 {
                lo = lo.max(s);
            } else {
                hi = hi.min(s);
            }
        }
        (lo.min(0.0), hi.max(0.0))
    }

    fn hit_and_run(&self, t0: &DVector<f64>, rng: &mut ChaCha8Rng, steps: usize) -> DVector<f64> {
        let d = t0.len();
        let mut t = t0.clone();
        for _ in 0..steps {
            let mut dir = DVector::from_fn(d, |_, _| rng.gen_range(-1.0..1.0));
            let norm = dir.norm();
            if norm < 1e-12 {
                continue;
            }
            dir /= norm;
            let (lo, hi) = self.chord(&t, &dir);
            if hi > lo {
                let s = rng.gen_range(lo..hi);
                t += dir * s;
            }
        }
        t
    }

    fn ascend(&self, mut t: DVector<f64>, cfg: &OptConfig) -> Result<(f64, DVector<f64>)> {
        let d = t.len();
        let mut value = self.value(&t)?;
        for _ in 0..cfg.max_sweeps {
            let before = value;
            for i in 0..d {
                let dir = DVector::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 });
                let (lo, hi) = self.chord(&t, &dir);
                let (s, v) = self.line_search(&t, &dir, lo, hi, value)?;
                if v > value {
                    t += dir * s;
                    value = v;
                }
            }
            if value - before < cfg.tol {
                break;
            }
        }
        Ok((value, t))
    }

    /// Scan the chord, then refine around the best sample by golden section.
    fn line_search(&self, t: &DVector<f64>, dir: &DVector<f64>, lo: f64, hi: f64, current: f64) -> Result<(f64, f64)> {
        if hi - lo < 1e-14 {
            return Ok((0.0, current));
        }
        let f = |s: f64| self.value(&(t + dir * s));
        const SAMPLES: usize = 16;
        let xs: Vec<f64> = (0..=SAMPLES).map(|i| lo + (hi - lo) * i as f64 / SAMPLES as f64).collect();
        let mut best = (0.0, current);
        let mut best_i = None;
        for (i, &x) in xs.iter().enumerate() {
            let v = f(x)?;
            if v > best.1 {
                best = (x, v);
                best_i = Some(i);
            }
        }
        let (mut a, mut b) = match best_i {
            Some(i) => (xs[i.saturating_sub(1)], xs[(i + 1).min(SAMPLES)]),
            None => {
                // Current point beats every sample: refine around it.
                let step = (hi - lo) / SAMPLES as f64;
                ((-step).max(lo), step.min(hi))
            }
        };
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - phi * (b - a);
        let mut e = a + phi * (b - a);
        let mut fc = f(c)?;
        let mut fe = f(e)?;
        for _ in 0..48 {
            if fc > fe {
                b = e;
                e = c;
                fe = fc;
                c = b - phi * (b - a);
                fc = f(c)?;
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + phi * (b - a);
                fe = f(e)?;
            }
            if b - a < 1e-12 {
                break;
            }
        }
        for (x, v) in [(c, fc), (e, fe)] {
            if v > best.1 {
                best = (x, v);
            }
        }
        Ok(best)
    }

    /// Vertices of the feasible polytope in `t` coordinates, for `d ≤ 3`.
    fn vertices(&self) -> Vec<DVector<f64>> {
        let d = self.basis.ncols();
        let n = self.basis.nrows();
        let mut out = Vec::new();
        let mut combo: Vec<usize> = (0..d).collect();
        loop {
            let m = DMatrix::from_fn(d, d, |r, c| self.basis[(combo[r], c)]);
            let rhs = DVector::from_fn(d, |r, _| -self.base[combo[r]]);
            if let Some(t) = m.lu().solve(&rhs) {
                if self.point(&t).iter().all(|&x| x >= -1e-12) {
                    out.push(t);
                }
            }
            // Next combination of d atoms out of n.
            let mut i = d;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if combo[i] < n - d + i {
                    combo[i] += 1;
                    for j in i + 1..d {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn grid(&self, resolution: usize) -> Result<GridReport> {
        let d = self.basis.ncols();
        let verts = self.vertices();
        let lo: Vec<f64> = (0..d).map(|i| verts.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min)).collect();
        let hi: Vec<f64> = (0..d).map(|i| verts.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
        let r = resolution.max(1);
        let at = |idx: &[usize]| DVector::from_fn(d, |i, _| lo[i] + (hi[i] - lo[i]) * idx[i] as f64 / r as f64);
        let feasible = |t: &DVector<f64>| self.point(t).iter().all(|&x| x >= MIN_ATOM);
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut count = 0;
        for idx in crate::equiv::MixedRadix::new(&vec![r + 1; d]) {
            let t = at(&idx);
            if !feasible(&t) {
                continue;
            }
            count += 1;
            let v = self.value(&t)?;
            if best.as_ref().is_none_or(|b| v > b.0) {
                best = Some((v, idx));
            }
        }
        let (objective, idx) =
            best.ok_or_else(|| Error::OptimizerFailed("grid has no feasible point".into()))?;
        let at_boundary = (0..d).any(|i| {
            [-1i64, 1].iter().any(|&s| {
                let j = idx[i] as i64 + s;
                if j < 0 || j > r as i64 {
                    return true;
                }
                let mut n = idx.clone();
                n[i] = j as usize;
                !feasible(&at(&n))
            })
        });
        Ok(GridReport {
            objective,
            point: self.point(&at(&idx)).iter().copied().collect(),
            points_evaluated: count,
            at_boundary,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::diamond;

    #[test]
    fn diamond_feasible_dimension() {
        let m = diamond();
        let p = m.strong_partition(&[vec!["e5"], vec!["e6"]]).unwrap();
        let spec = EquivalentDistSpec::new(&m, &p).unwrap();
        let n = spec.nullspace();
        assert_eq!(n.ncols(), 2);
        let gram = n.transpose() * &n;
        assert!((gram - DMatrix::identity(2, 2)).abs().max() < 1e-12);
        let trivial = m.strong_partition(&[vec!["e5", "e6"]]).unwrap();
        assert_eq!(EquivalentDistSpec::new(&m, &trivial).unwrap().nullspace().ncols(), 0);
    }

    #[test]
    fn equivalence_examples() {
        let m = diamond();
        let p = m.strong_partition(&[vec!["e5"], vec!["e6"]]).unwrap();
        let star = [0.1, 0.15, 0.1, 0.15, 0.15, 0.1, 0.15, 0.1];
        assert!(is_pc_equivalent(&star, &m, &p).unwrap());
        assert!(is_pc_equivalent(&[0.125; 8], &m, &p).unwrap());
        // Move mass inside the (x1, x2) = (0, 0) fiber: x2x3 marginal breaks.
        let mut bad = [0.125; 8];
        bad[0] += 0.05;
        bad[1] -= 0.05;
        assert!(!is_pc_equivalent(&bad, &m, &p).unwrap());
        assert!(is_pc_equivalent(&[0.5; 8], &m, &p).is_err());
    }

    #[test]
    fn single_edge_bounds() {
        let m = crate::fixtures::single_edge(&[0.5, 0.5]);
        let s = all_bounds(&m, &SearchConfig::default(), None).unwrap();
        assert!((s.basic.value - 1.0).abs() < 1e-15);
        assert!((s.fixed_length.value - 1.0).abs() < 1e-15);
        let m = crate::fixtures::single_edge(&[0.75, 0.25]);
        let b = basic_lower_bound(&m, &SearchConfig::default()).unwrap();
        assert!((b.value - (2.0 - 0.75 * 3f64.log2())).abs() < 1e-12);
    }
}
