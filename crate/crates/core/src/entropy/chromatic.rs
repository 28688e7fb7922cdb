//! Exhaustive minimum-entropy coloring.

use crate::error::{Error, Result};
use crate::pgraph::ProbGraph;

/// Largest vertex count for the exhaustive search.
pub const MAX_VERTICES: usize = 12;

/// Minimum of `H(c(Z))` over proper colorings, with one optimal coloring.
/// Vertices of zero probability must already be removed.
pub fn min_entropy_coloring(g: &ProbGraph) -> Result<(f64, Vec<usize>)> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::too_large("chromatic entropy vertex count", n, MAX_VERTICES));
    }
    let mut search = Search {
        g,
        p: g.dist(),
        colors: vec![0; n],
        class_mass: Vec::new(),
        class_members: Vec::new(),
        best: f64::INFINITY,
        best_colors: vec![0; n],
    };
    search.assign(0);
    Ok((search.best.max(0.0), search.best_colors))
}

struct Search<'a> {
    g: &'a ProbGraph,
    p: &'a [f64],
    colors: Vec<usize>,
    class_mass: Vec<f64>,
    class_members: Vec<Vec<usize>>,
    best: f64,
    best_colors: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, v: usize) {
        if v == self.colors.len() {
            let h: f64 = self.class_mass.iter().filter(|&&m| m > 0.0).map(|&m| -m * m.log2()).sum();
            if h < self.best - 1e-15 {
                self.best = h;
                self.best_colors = self.colors.clone();
            }
            return;
        }
        for c in 0..=self.class_mass.len() {
            if c < self.class_mass.len() {
                if self.class_members[c].iter().any(|&u| self.g.adjacent(u, v)) {
                    continue;
                }
                self.class_mass[c] += self.p[v];
                self.class_members[c].push(v);
            } else {
                self.class_mass.push(self.p[v]);
                self.class_members.push(vec![v]);
            }
            self.colors[v] = c;
            self.assign(v + 1);
            if c + 1 == self.class_mass.len() && self.class_members[c].len() == 1 {
                self.class_mass.pop();
                self.class_members.pop();
            } else {
                self.class_mass[c] -= self.p[v];
                self.class_members[c].pop();
            }
        }
    }
}
