//! Partial transversals, layers and alternating trees.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;

/// A partial independent transversal: an independent set with at most one
/// vertex per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pit {
    in_pit: Vec<bool>,
    by_class: Vec<Option<usize>>,
    len: usize,
}

impl Pit {
    pub fn new(g: &PartitionedGraph) -> Self {
        Self { in_pit: vec![false; g.n()], by_class: vec![None; g.class_count()], len: 0 }
    }

    pub fn from_vertices(g: &PartitionedGraph, vertices: &[usize]) -> Result<Self> {
        let mut pit = Self::new(g);
        for &v in vertices {
            if v >= g.n() {
                return Err(Error::InvalidParameter(format!("vertex {v} is not in the graph")));
            }
            if pit.by_class[g.class_of(v)].is_some() {
                return Err(Error::InvalidParameter(format!(
                    "two vertices of class {} in the partial transversal",
                    g.label(g.class_of(v))
                )));
            }
            if pit.is_blocked(g, v) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} is adjacent to another member"
                )));
            }
            pit.insert(g, v);
        }
        Ok(pit)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_pit[v]
    }

    pub fn member_in(&self, class: usize) -> Option<usize> {
        self.by_class[class]
    }

    pub fn covers(&self, class: usize) -> bool {
        self.by_class[class].is_some()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.in_pit.len()).filter(|&v| self.in_pit[v]).collect()
    }

    pub(crate) fn insert(&mut self, g: &PartitionedGraph, v: usize) {
        let c = g.class_of(v);
        debug_assert!(self.by_class[c].is_none());
        self.in_pit[v] = true;
        self.by_class[c] = Some(v);
        self.len += 1;
    }

    pub(crate) fn remove(&mut self, g: &PartitionedGraph, v: usize) {
        debug_assert!(self.in_pit[v]);
        self.in_pit[v] = false;
        self.by_class[g.class_of(v)] = None;
        self.len -= 1;
    }

    /// Members adjacent to `v`.
    pub fn blockers<'a>(&'a self, g: &'a PartitionedGraph, v: usize) -> impl Iterator<Item = usize> + 'a {
        g.neighbours(v).iter().copied().filter(move |&u| self.in_pit[u])
    }

    pub fn is_blocked(&self, g: &PartitionedGraph, v: usize) -> bool {
        self.blockers(g, v).next().is_some()
    }

    pub fn is_immediately_addable(&self, g: &PartitionedGraph, v: usize) -> bool {
        !self.in_pit[v] && !self.is_blocked(g, v)
    }
}

/// `I_M(W)`: the vertices of `w` outside `M` that no member of `M` blocks.
pub fn immediately_addable<'a>(
    g: &PartitionedGraph,
    pit: &Pit,
    w: impl IntoIterator<Item = &'a usize>,
) -> BTreeSet<usize> {
    w.into_iter().copied().filter(|&v| pit.is_immediately_addable(g, v)).collect()
}

/// One layer `(X, Y)`: candidates `X` outside the transversal and their blockers `Y`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layer {
    pub x: BTreeSet<usize>,
    pub y: BTreeSet<usize>,
}

/// Alternating tree rooted at an uncovered class. `layers[0]` is `L_1`; the
/// empty layer `L_0` is implicit, with `A(Y_0)` standing for the root class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingTree {
    pub root: usize,
    pub layers: Vec<Layer>,
}

impl AlternatingTree {
    pub fn new(root: usize) -> Self {
        Self { root, layers: Vec::new() }
    }

    /// Number of non-trivial layers `l`.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Layer `L_i` for `1 <= i <= depth`.
    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i - 1]
    }

    /// `(L_0, ..., L_i)`.
    pub fn prefix(&self, i: usize) -> AlternatingTree {
        AlternatingTree { root: self.root, layers: self.layers[..i].to_vec() }
    }

    /// `|X_{<=i}|`.
    pub fn x_count_upto(&self, i: usize) -> usize {
        self.layers[..i].iter().map(|l| l.x.len()).sum()
    }

    /// `|Y_{<=i}|`.
    pub fn y_count_upto(&self, i: usize) -> usize {
        self.layers[..i].iter().map(|l| l.y.len()).sum()
    }

    /// The classes `A(Y_l)` from which the next layer draws its candidates.
    pub fn frontier_classes(&self, g: &PartitionedGraph) -> Vec<usize> {
        frontier_classes(g, self.root, &self.layers)
    }

    /// `A(Y_{<=l})`: the root class and the classes of every blocker, in class order.
    pub fn touched_classes(&self, g: &PartitionedGraph) -> Vec<usize> {
        let mut cs: BTreeSet<usize> = BTreeSet::from([self.root]);
        for l in &self.layers {
            cs.extend(l.y.iter().map(|&y| g.class_of(y)));
        }
        cs.into_iter().collect()
    }
}

pub(crate) fn frontier_classes(g: &PartitionedGraph, root: usize, layers: &[Layer]) -> Vec<usize> {
    match layers.last() {
        None => vec![root],
        Some(last) => {
            let cs: BTreeSet<usize> = last.y.iter().map(|&y| g.class_of(y)).collect();
            cs.into_iter().collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> PartitionedGraph {
        PartitionedGraph::from_parts(3, vec![vec![0, 2], vec![1]], [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn empty_pit_blocks_nothing() {
        let g = path();
        let pit = Pit::new(&g);
        let all = [0, 1, 2];
        assert_eq!(immediately_addable(&g, &pit, &all), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn member_blocks_its_neighbours() {
        let g = path();
        let pit = Pit::from_vertices(&g, &[0]).unwrap();
        assert!(immediately_addable(&g, &pit, &[1]).is_empty());
        assert_eq!(immediately_addable(&g, &pit, &[0, 1, 2]), BTreeSet::from([2]));
        assert_eq!(pit.blockers(&g, 1).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn pit_validation() {
        let g = path();
        assert!(Pit::from_vertices(&g, &[0, 2]).is_err());
        assert!(Pit::from_vertices(&g, &[0, 1]).is_err());
        assert!(Pit::from_vertices(&g, &[7]).is_err());
        let mut pit = Pit::from_vertices(&g, &[2]).unwrap();
        assert!(pit.covers(0) && !pit.covers(1));
        pit.remove(&g, 2);
        assert!(pit.is_empty());
    }
}
