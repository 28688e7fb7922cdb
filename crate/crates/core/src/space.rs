//! Indexing of k-shot message matrices over subsets of sources.
//!
//! A matrix in `A^{k×T}` is flattened source by source (in `S` order) and row
//! by row within a source, most significant digit first. For `k = 1` and
//! `T = S` this is the lexicographic order of the model's tables.
//!
//! Full matrices are exchanged through a buffer laid out as
//! `buf[i * k + j] = x_{σ_i, j}` over all sources of the model, so that
//! partial matrices over different source sets can be assembled by name.

use crate::error::{Error, Result};
use crate::netmodel::{NetworkModel, SourceSet, MAX_DOMAIN};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageSpace {
    set: SourceSet,
    sources: Vec<usize>,
    k: usize,
    q: usize,
    size: usize,
}

impl MessageSpace {
    pub fn new(set: SourceSet, k: usize, q: usize) -> Result<Self> {
        Self::with_cap(set, k, q, MAX_DOMAIN)
    }

    pub fn with_cap(set: SourceSet, k: usize, q: usize, cap: usize) -> Result<Self> {
        let sources = set.indices();
        let digits = (sources.len() * k) as u32;
        let size = (q as u128).checked_pow(digits).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::DomainTooLarge { size, cap: cap as u128 });
        }
        Ok(MessageSpace { set, sources, k, q, size: size as usize })
    }

    pub fn set(&self) -> SourceSet {
        self.set
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Scatter the digits of `idx` into a full-model buffer.
    pub fn write_into(&self, mut idx: usize, buf: &mut [u8]) {
        for &src in self.sources.iter().rev() {
            for j in (0..self.k).rev() {
                buf[src * self.k + j] = (idx % self.q) as u8;
                idx /= self.q;
            }
        }
    }

    /// Gather this space's digits from a full-model buffer.
    pub fn index_of(&self, buf: &[u8]) -> usize {
        let mut idx = 0;
        for &src in &self.sources {
            for j in 0..self.k {
                idx = idx * self.q + buf[src * self.k + j] as usize;
            }
        }
        idx
    }

    /// Digits of `idx`, source-major.
    pub fn digits(&self, mut idx: usize) -> Vec<u8> {
        let mut d = vec![0u8; self.sources.len() * self.k];
        for x in d.iter_mut().rev() {
            *x = (idx % self.q) as u8;
            idx /= self.q;
        }
        d
    }

    /// Label such as `(0,1,1)` for k = 1 or `(01,11,10)` for k = 2.
    pub fn label(&self, idx: usize) -> String {
        let d = self.digits(idx);
        let parts: Vec<String> = d
            .chunks(self.k.max(1))
            .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// Lexicographic one-shot index of row `j` of a full buffer.
pub fn row_index(model: &NetworkModel, buf: &[u8], k: usize, j: usize) -> usize {
    let q = model.alphabet();
    (0..model.num_sources()).fold(0, |acc, i| acc * q + buf[i * k + j] as usize)
}

/// Key identifying the k-tuple of function values of a full buffer.
pub fn function_key(model: &NetworkModel, buf: &[u8], k: usize) -> u64 {
    let m = model.image().len() as u64;
    (0..k).fold(0, |acc, j| acc * m + model.f_id(row_index(model, buf, k, j)) as u64)
}

/// Function values row by row, in original image values.
pub fn function_values(model: &NetworkModel, buf: &[u8], k: usize) -> Vec<i64> {
    (0..k).map(|j| model.f_value(row_index(model, buf, k, j))).collect()
}

/// Probability of a full buffer under the i.i.d. k-extension.
pub fn prob_k(model: &NetworkModel, buf: &[u8], k: usize) -> f64 {
    (0..k).map(|j| model.prob(row_index(model, buf, k, j))).product()
}

/// Marginal of the one-shot source distribution on a source subset, indexed
/// by that subset's one-shot space.
pub fn marginal(model: &NetworkModel, set: SourceSet) -> Vec<f64> {
    let full = MessageSpace::new(model.all_sources(), 1, model.alphabet()).expect("model domain within cap");
    let sub = MessageSpace::new(set, 1, model.alphabet()).expect("subset of model domain");
    let mut out = vec![0.0; sub.size()];
    let mut buf = vec![0u8; model.num_sources()];
    for x in 0..full.size() {
        full.write_into(x, &mut buf);
        out[sub.index_of(&buf)] += model.prob(x);
    }
    out
}
