//! `(I, a_J)`- and `(I_ℓ, a_L, a_J)`-equivalence classes of k-shot source
//! messages and the class-tuple counts `N(a_L, Cl)`, `N(Cl)`, `n_C` and
//! `n_{C,f}`.
//!
//! Classes are computed from canonical signatures: each message block is mapped
//! to the tuple of function values (or finer class ids) over every completion,
//! and blocks with equal signatures are grouped. Class ids are assigned in order
//! of least member.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::netmodel::{CutAnalysis, NetworkModel, SourceSet, StrongPartition};
use crate::space::{function_key, MessageSpace};

/// A partition of a message space into equivalence classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivPartition {
    /// Members of each class, ascending; classes ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Class id of every element of the space.
    pub class_of: Vec<usize>,
}

impl EquivPartition {
    fn from_signatures<F: FnMut(usize) -> Vec<u64>>(n: usize, mut sig: F) -> Self {
        let mut ids: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for b in 0..n {
            let next = classes.len();
            let id = *ids.entry(sig(b)).or_insert(next);
            if id == next {
                classes.push(Vec::new());
            }
            classes[id].push(b);
            class_of.push(id);
        }
        EquivPartition { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn check_domain(model: &NetworkModel, k: usize) -> Result<()> {
    MessageSpace::new(model.all_sources(), k, model.alphabet()).map(|_| ())
}

/// Partition of `A^{k×I}` into `(I, a_J)`-equivalence classes.
pub fn i_aj_classes(model: &NetworkModel, i: SourceSet, j: SourceSet, a_j: usize, k: usize) -> Result<EquivPartition> {
    if !i.intersect(j).is_empty() {
        return Err(Error::OverlappingSets);
    }
    check_domain(model, k)?;
    let q = model.alphabet();
    let i_sp = MessageSpace::new(i, k, q)?;
    let j_sp = MessageSpace::new(j, k, q)?;
    let d_sp = MessageSpace::new(model.all_sources().minus(i.union(j)), k, q)?;
    if a_j >= j_sp.size() {
        return Err(Error::InvalidArgument(format!("a_J index {a_j} out of range")));
    }
    let mut buf = vec![0u8; model.num_sources() * k];
    j_sp.write_into(a_j, &mut buf);
    Ok(EquivPartition::from_signatures(i_sp.size(), |b| {
        i_sp.write_into(b, &mut buf);
        (0..d_sp.size())
            .map(|d| {
                d_sp.write_into(d, &mut buf);
                function_key(model, &buf, k)
            })
            .collect()
    }))
}

/// One class tuple `(cl_{I_1}, …, cl_{I_m})` at a fixed `(a_J, a_L)` and the
/// `(I, a_J)`-classes its bracket set meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bracket {
    pub classes: Vec<usize>,
    /// Every `(I, a_J)`-class containing some member of the bracket set.
    pub meets: Vec<usize>,
}

impl Bracket {
    /// The single class containing the whole bracket set, if there is one.
    pub fn inside(&self) -> Option<usize> {
        (self.meets.len() == 1).then(|| self.meets[0])
    }
}

/// Everything derived from one strong partition at a given number of shots.
#[derive(Clone, Debug)]
pub struct CutContext<'a> {
    model: &'a NetworkModel,
    partition: StrongPartition,
    k: usize,
    i_space: MessageSpace,
    j_space: MessageSpace,
    l_space: MessageSpace,
    block_spaces: Vec<MessageSpace>,
    i_classes: Vec<EquivPartition>,
    block_classes: Vec<Vec<Vec<EquivPartition>>>,
}

impl<'a> CutContext<'a> {
    pub fn new(model: &'a NetworkModel, partition: &StrongPartition, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        check_domain(model, k)?;
        let q = model.alphabet();
        let cut = &partition.cut;
        let i_space = MessageSpace::new(cut.i, k, q)?;
        let j_space = MessageSpace::new(cut.j, k, q)?;
        let l_space = MessageSpace::new(partition.l, k, q)?;
        let block_spaces: Vec<MessageSpace> = partition
            .block_sources
            .iter()
            .map(|&s| MessageSpace::new(s, k, q))
            .collect::<Result<_>>()?;
        let i_classes: Vec<EquivPartition> = (0..j_space.size())
            .map(|a_j| i_aj_classes(model, cut.i, cut.j, a_j, k))
            .collect::<Result<_>>()?;
        let mut ctx = CutContext {
            model,
            partition: partition.clone(),
            k,
            i_space,
            j_space,
            l_space,
            block_spaces,
            i_classes,
            block_classes: Vec::new(),
        };
        ctx.block_classes = (0..ctx.j_space.size())
            .map(|a_j| {
                (0..ctx.l_space.size())
                    .map(|a_l| (0..partition.m()).map(|l| ctx.compute_block_classes(l, a_l, a_j)).collect())
                    .collect()
            })
            .collect();
        Ok(ctx)
    }

    fn compute_block_classes(&self, l: usize, a_l: usize, a_j: usize) -> EquivPartition {
        let q = self.model.alphabet();
        let own = &self.block_spaces[l];
        let others = self.partition.cut.i.minus(own.set()).minus(self.partition.l);
        let c_sp = MessageSpace::new(others, self.k, q).expect("subspace of I");
        let class_of = &self.i_classes[a_j].class_of;
        let mut buf = vec![0u8; self.model.num_sources() * self.k];
        self.l_space.write_into(a_l, &mut buf);
        EquivPartition::from_signatures(own.size(), |b| {
            own.write_into(b, &mut buf);
            (0..c_sp.size())
                .map(|c| {
                    c_sp.write_into(c, &mut buf);
                    class_of[self.i_space.index_of(&buf)] as u64
                })
                .collect()
        })
    }

    pub fn model(&self) -> &NetworkModel {
        self.model
    }

    pub fn partition(&self) -> &StrongPartition {
        &self.partition
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn i_space(&self) -> &MessageSpace {
        &self.i_space
    }

    pub fn j_space(&self) -> &MessageSpace {
        &self.j_space
    }

    pub fn l_space(&self) -> &MessageSpace {
        &self.l_space
    }

    pub fn block_space(&self, l: usize) -> &MessageSpace {
        &self.block_spaces[l]
    }

    /// `(I, a_J)`-classes.
    pub fn classes(&self, a_j: usize) -> &EquivPartition {
        &self.i_classes[a_j]
    }

    /// `(I_ℓ, a_L, a_J)`-classes, with `l` counted from zero.
    pub fn block_classes(&self, l: usize, a_l: usize, a_j: usize) -> &EquivPartition {
        &self.block_classes[a_j][a_l][l]
    }

    /// Mixed-radix id of a class tuple at `(a_J, a_L)`.
    pub fn bracket_id(&self, a_j: usize, a_l: usize, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .enumerate()
            .fold(0, |acc, (l, &c)| acc * self.block_classes[a_j][a_l][l].len() + c)
    }

    /// All class tuples at `(a_J, a_L)` with the classes their bracket sets
    /// meet, in mixed-radix order of the tuple.
    pub fn brackets(&self, a_j: usize, a_l: usize) -> Vec<Bracket> {
        let parts = &self.block_classes[a_j][a_l];
        let class_of = &self.i_classes[a_j].class_of;
        let mut buf = vec![0u8; self.model.num_sources() * self.k];
        self.l_space.write_into(a_l, &mut buf);
        let radices: Vec<usize> = parts.iter().map(|p| p.len()).collect();
        let mut out = Vec::new();
        for tuple in MixedRadix::new(&radices) {
            let members: Vec<&[usize]> =
                tuple.iter().enumerate().map(|(l, &c)| parts[l].classes[c].as_slice()).collect();
            let sizes: Vec<usize> = members.iter().map(|m| m.len()).collect();
            let mut meets: Vec<usize> = Vec::new();
            for choice in MixedRadix::new(&sizes) {
                for (l, &c) in choice.iter().enumerate() {
                    self.block_spaces[l].write_into(members[l][c], &mut buf);
                }
                let cl = class_of[self.i_space.index_of(&buf)];
                if !meets.contains(&cl) {
                    meets.push(cl);
                }
            }
            meets.sort_unstable();
            out.push(Bracket { classes: tuple, meets });
        }
        out
    }

    /// `N(a_L, Cl)`: class tuples whose bracket set lies inside `Cl`.
    pub fn count_n(&self, a_j: usize, cl: usize, a_l: usize) -> Result<usize> {
        if cl >= self.i_classes[a_j].len() {
            return Err(Error::NotAClass(cl));
        }
        Ok(self.brackets(a_j, a_l).iter().filter(|b| b.inside() == Some(cl)).count())
    }

    /// `N(Cl) = max_{a_L} N(a_L, Cl)`.
    pub fn count_n_max(&self, a_j: usize, cl: usize) -> Result<usize> {
        (0..self.l_space.size()).map(|a_l| self.count_n(a_j, cl, a_l)).try_fold(0, |m, n| Ok(m.max(n?)))
    }

    /// `Σ_Cl N(Cl)` at a fixed `a_J`.
    pub fn fiber_count(&self, a_j: usize) -> usize {
        let n_cl = self.i_classes[a_j].len();
        let mut best = vec![0usize; n_cl];
        for a_l in 0..self.l_space.size() {
            let mut counts = vec![0usize; n_cl];
            for b in self.brackets(a_j, a_l) {
                if let Some(cl) = b.inside() {
                    counts[cl] += 1;
                }
            }
            for (m, c) in best.iter_mut().zip(counts) {
                *m = (*m).max(c);
            }
        }
        best.iter().sum()
    }

    /// `n_C(P_C) = max_{a_J} Σ_Cl N(Cl[a_J])`.
    pub fn n_c(&self) -> usize {
        (0..self.j_space.size()).map(|a_j| self.fiber_count(a_j)).max().unwrap_or(0)
    }
}

/// Partition of `A^{k×I_ℓ}` into `(I_ℓ, a_L, a_J)`-classes; `l` counts from
/// zero.
pub fn il_al_aj_classes(
    model: &NetworkModel,
    partition: &StrongPartition,
    l: usize,
    a_l: usize,
    a_j: usize,
    k: usize,
) -> Result<EquivPartition> {
    if l >= partition.m() {
        return Err(Error::InvalidArgument(format!("block index {l} out of range")));
    }
    let ctx = CutContext::new(model, partition, k)?;
    if a_l >= ctx.l_space.size() || a_j >= ctx.j_space.size() {
        return Err(Error::InvalidArgument("a_L or a_J index out of range".into()));
    }
    Ok(ctx.block_classes(l, a_l, a_j).clone())
}

/// `n_C(P_C)` for the one-shot model.
pub fn n_c(model: &NetworkModel, partition: &StrongPartition) -> Result<usize> {
    Ok(CutContext::new(model, partition, 1)?.n_c())
}

/// `n_{C,f}`: the maximum of `n_C` over every strong partition of the cut.
pub fn n_c_f(model: &NetworkModel, cut: &CutAnalysis) -> Result<usize> {
    model
        .enumerate_strong_partitions(cut)?
        .iter()
        .map(|p| n_c(model, p))
        .try_fold(0, |m, n| Ok(m.max(n?)))
}

/// Odometer over a mixed-radix tuple space, least significant digit last.
pub(crate) struct MixedRadix {
    radices: Vec<usize>,
    cur: Option<Vec<usize>>,
}

impl MixedRadix {
    pub(crate) fn new(radices: &[usize]) -> Self {
        let cur = (!radices.contains(&0)).then(|| vec![0; radices.len()]);
        MixedRadix { radices: radices.to_vec(), cur }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.radices[i] {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::diamond;

    fn nontrivial(m: &NetworkModel) -> StrongPartition {
        m.strong_partition(&[vec!["e5"], vec!["e6"]]).unwrap()
    }

    #[test]
    fn diamond_sum_classes() {
        let m = diamond();
        let p = i_aj_classes(&m, m.all_sources(), SourceSet::EMPTY, 0, 1).unwrap();
        assert_eq!(p.classes, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6], vec![7]]);
    }

    #[test]
    fn empty_i_has_one_class() {
        let m = diamond();
        let p = i_aj_classes(&m, SourceSet::EMPTY, SourceSet(1), 0, 1).unwrap();
        assert_eq!(p.classes, vec![vec![0]]);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let m = diamond();
        assert_eq!(i_aj_classes(&m, SourceSet(3), SourceSet(2), 0, 1), Err(Error::OverlappingSets));
    }

    #[test]
    fn block_classes_of_example() {
        let m = diamond();
        let p = nontrivial(&m);
        for a_l in 0..2 {
            for l in 0..2 {
                let c = il_al_aj_classes(&m, &p, l, a_l, 0, 1).unwrap();
                assert_eq!(c.classes, vec![vec![0], vec![1]]);
            }
        }
    }

    #[test]
    fn counts_of_example() {
        let m = diamond();
        let ctx = CutContext::new(&m, &nontrivial(&m), 1).unwrap();
        assert_eq!(ctx.count_n(0, 1, 0).unwrap(), 2);
        assert_eq!(ctx.count_n(0, 1, 1).unwrap(), 1);
        assert_eq!(ctx.count_n_max(0, 1).unwrap(), 2);
        assert_eq!(ctx.count_n_max(0, 0).unwrap(), 1);
        assert_eq!(ctx.count_n(0, 4, 0), Err(Error::NotAClass(4)));
        assert_eq!(ctx.n_c(), 6);
        let trivial = m.strong_partition(&[vec!["e5", "e6"]]).unwrap();
        assert_eq!(n_c(&m, &trivial).unwrap(), 4);
        let cut = m.analyze_cut_ids(&["e5", "e6"]).unwrap();
        assert_eq!(n_c_f(&m, &cut).unwrap(), 6);
    }

    #[test]
    fn mixed_radix_counts() {
        assert_eq!(MixedRadix::new(&[2, 3]).count(), 6);
        assert_eq!(MixedRadix::new(&[]).count(), 1);
        assert_eq!(MixedRadix::new(&[2, 0]).count(), 0);
        let v: Vec<_> = MixedRadix::new(&[2, 2]).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
