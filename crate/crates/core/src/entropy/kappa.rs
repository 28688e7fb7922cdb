//! Numeric graph entropy.
//!
//! `H_κ(G, Z) = min_{a ∈ VP(G)} −Σ_v p_v log a_v` where `VP(G)` is the convex
//! hull of independent-set indicator vectors. The solver is a fully corrective
//! conditional-gradient method: the linear subproblem is a maximum-weight
//! independent set with weights `p_v / a_v`, and the weights on the active sets
//! are re-optimised by the multiplicative update `λ_S ← λ_S Σ_{v∈S} p_v / a_v`.
//! The duality gap `max_S Σ_{v∈S} p_v / a_v − 1` (in nats) bounds the distance
//! to the optimum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pgraph::ProbGraph;

/// Largest vertex count the solver accepts.
pub const MAX_VERTICES: usize = 20;
/// Outer iteration cap.
pub const MAX_ITERATIONS: usize = 100_000;
/// Default stopping tolerance on the duality gap, in bits.
pub const DEFAULT_TOL: f64 = 1e-7;

const INNER_STEPS: usize = 2_000;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SolverTrace {
    /// Objective at the returned point, in bits.
    pub value: f64,
    /// Duality gap at the returned point, in bits.
    pub gap: f64,
    pub iterations: usize,
    /// Active independent sets (vertex indices of the solved graph) and weights.
    pub support: Vec<(Vec<usize>, f64)>,
}

/// Solve for `H_κ` on a graph whose probabilities are all positive.
pub fn solve(g: &ProbGraph, tol: f64) -> Result<SolverTrace> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::too_large("graph entropy solver vertex count", n, MAX_VERTICES));
    }
    let p = g.dist();
    debug_assert!(p.iter().all(|&x| x > 0.0));
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w))
        .collect();

    // Start from greedy maximal independent sets covering every vertex.
    let mut sets: Vec<u64> = Vec::new();
    let mut covered = 0u64;
    for v in 0..n {
        if covered >> v & 1 == 1 {
            continue;
        }
        let mut s = 1u64 << v;
        for (w, &aw) in adj.iter().enumerate().take(n) {
            if s & aw == 0 && s >> w & 1 == 0 {
                s |= 1 << w;
            }
        }
        covered |= s;
        sets.push(s);
    }
    let mut lambda = vec![1.0 / sets.len() as f64; sets.len()];
    let mut a = coverage(&sets, &lambda, n);
    let tol_nats = tol * std::f64::consts::LN_2;

    for iter in 1..=MAX_ITERATIONS {
        let w: Vec<f64> = (0..n).map(|v| p[v] / a[v]).collect();
        let best = g.max_weight_independent_set(&w)?;
        let s = best.iter().fold(0u64, |m, &v| m | 1 << v);
        let gap = best.iter().map(|&v| w[v]).sum::<f64>() - 1.0;
        if gap < tol_nats {
            return Ok(trace(p, &a, &sets, &lambda, gap.max(0.0), iter));
        }
        let idx = match sets.iter().position(|&x| x == s) {
            Some(i) => i,
            None => {
                sets.push(s);
                lambda.push(0.0);
                sets.len() - 1
            }
        };
        // Exact line search toward the new vertex of the polytope.
        let gamma = line_search(p, &a, s);
        for l in lambda.iter_mut() {
            *l *= 1.0 - gamma;
        }
        lambda[idx] += gamma;
        a = coverage(&sets, &lambda, n);

        for _ in 0..INNER_STEPS {
            let ratios: Vec<f64> = sets
                .iter()
                .map(|&s| (0..n).filter(|&v| s >> v & 1 == 1).map(|v| p[v] / a[v]).sum())
                .collect();
            let worst = ratios
                .iter()
                .zip(&lambda)
                .filter(|(_, &l)| l > 0.0)
                .map(|(r, _)| (r - 1.0).abs())
                .fold(0.0, f64::max);
            for (l, r) in lambda.iter_mut().zip(&ratios) {
                *l *= r;
            }
            let total: f64 = lambda.iter().sum();
            for l in lambda.iter_mut() {
                *l /= total;
            }
            a = coverage(&sets, &lambda, n);
            if worst < tol_nats * 0.01 {
                break;
            }
        }
        // Drop sets whose weight has vanished.
        let keep: Vec<bool> = lambda.iter().map(|&l| l > 1e-300).collect();
        if keep.iter().any(|k| !k) {
            let mut i = 0;
            sets.retain(|_| {
                i += 1;
                keep[i - 1]
            });
            lambda.retain(|&l| l > 1e-300);
            a = coverage(&sets, &lambda, n);
        }
    }
    let w: Vec<f64> = (0..n).map(|v| p[v] / a[v]).collect();
    let best = g.max_weight_independent_set(&w)?;
    let gap = (best.iter().map(|&v| w[v]).sum::<f64>() - 1.0) / std::f64::consts::LN_2;
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, gap })
}

fn coverage(sets: &[u64], lambda: &[f64], n: usize) -> Vec<f64> {
    let mut a = vec![0.0; n];
    for (&s, &l) in sets.iter().zip(lambda) {
        for (v, x) in a.iter_mut().enumerate() {
            if s >> v & 1 == 1 {
                *x += l;
            }
        }
    }
    a
}

/// Maximise `Σ p_v log((1−γ) a_v + γ s_v)` over `γ ∈ [0, 1]` by bisection on
/// the derivative, which is decreasing.
fn line_search(p: &[f64], a: &[f64], s: u64) -> f64 {
    let deriv = |g: f64| -> f64 {
        p.iter()
            .enumerate()
            .map(|(v, &pv)| {
                let sv = (s >> v & 1) as f64;
                pv * (sv - a[v]) / ((1.0 - g) * a[v] + g * sv)
            })
            .sum()
    };
    if deriv(1.0 - 1e-15) >= 0.0 {
        return 1.0 - 1e-15;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if deriv(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn trace(p: &[f64], a: &[f64], sets: &[u64], lambda: &[f64], gap: f64, iterations: usize) -> SolverTrace {
    let value = -p.iter().zip(a).map(|(&pv, &av)| pv * av.log2()).sum::<f64>();
    let mut support: Vec<(Vec<usize>, f64)> = sets
        .iter()
        .zip(lambda)
        .filter(|(_, &l)| l > 1e-12)
        .map(|(&s, &l)| ((0..p.len()).filter(|&v| s >> v & 1 == 1).collect(), l))
        .collect();
    support.sort_by(|x, y| x.0.cmp(&y.0));
    SolverTrace { value: value.max(0.0), gap: gap / std::f64::consts::LN_2, iterations, support }
}
