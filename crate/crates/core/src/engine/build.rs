//! Layer construction: `BuildLayer` and `SuperposedBuild`.

use std::collections::BTreeSet;

use crate::graph::PartitionedGraph;
use crate::scalar::Scalar;

use super::params::EngineParams;
use super::tree::{frontier_classes, AlternatingTree, Layer, Pit};

/// Whether `v` may join the partially built layer `(x, y)` on top of `tree`.
/// Evaluates every clause of the definition directly; [`build_layer`] uses
/// an incremental equivalent.
pub fn is_addable<S: Scalar>(
    g: &PartitionedGraph,
    tree: &AlternatingTree,
    x: &BTreeSet<usize>,
    y: &BTreeSet<usize>,
    params: &EngineParams<S>,
    v: usize,
) -> bool {
    let frontier = tree.frontier_classes(g);
    if !frontier.contains(&g.class_of(v)) {
        return false;
    }
    let last_y = tree.layers.last().map(|l| &l.y);
    if last_y.is_some_and(|ly| ly.contains(&v)) || x.contains(&v) || y.contains(&v) {
        return false;
    }
    let same_class = x.iter().filter(|&&u| g.class_of(u) == g.class_of(v)).count();
    if S::from_count(same_class) >= *params.cap() {
        return false;
    }
    let in_tree = |u: &usize| {
        tree.layers.iter().any(|l| l.x.contains(u) || l.y.contains(u)) || x.contains(u) || y.contains(u)
    };
    !g.neighbours(v).iter().any(in_tree)
}

/// Grows `(x, y)` on top of `tree` by repeatedly adding the lowest-id
/// addable vertex together with its blockers, until none is left.
pub fn build_layer<S: Scalar>(
    g: &PartitionedGraph,
    tree: &AlternatingTree,
    x: BTreeSet<usize>,
    y: BTreeSet<usize>,
    pit: &Pit,
    params: &EngineParams<S>,
) -> Layer {
    build_on(g, tree.root, &tree.layers, Layer { x, y }, pit, params)
}

/// Addability only ever goes from true to false while a layer grows (the
/// marked set and the per-class counts only increase), so one ascending scan
/// picks exactly the vertices the lowest-id-first loop would.
pub(crate) fn build_on<S: Scalar>(
    g: &PartitionedGraph,
    root: usize,
    prefix: &[Layer],
    mut layer: Layer,
    pit: &Pit,
    params: &EngineParams<S>,
) -> Layer {
    let mut marked = vec![false; g.n()];
    for l in prefix.iter().chain(std::iter::once(&layer)) {
        for &u in l.x.iter().chain(&l.y) {
            marked[u] = true;
        }
    }
    let frontier = frontier_classes(g, root, prefix);
    let mut candidates: Vec<usize> = frontier.iter().flat_map(|&c| g.class(c).iter().copied()).collect();
    candidates.sort_unstable();

    let mut per_class = vec![0usize; g.class_count()];
    for &u in &layer.x {
        per_class[g.class_of(u)] += 1;
    }
    let last_y = prefix.last().map(|l| &l.y);
    for v in candidates {
        if last_y.is_some_and(|ly| ly.contains(&v)) || layer.x.contains(&v) || layer.y.contains(&v) {
            continue;
        }
        if S::from_count(per_class[g.class_of(v)]) >= *params.cap() {
            continue;
        }
        if g.neighbours(v).iter().any(|&u| marked[u]) {
            continue;
        }
        layer.x.insert(v);
        marked[v] = true;
        per_class[g.class_of(v)] += 1;
        for u in pit.blockers(g, v) {
            layer.y.insert(u);
            marked[u] = true;
        }
    }
    layer
}

/// After the transversal changed, looks for the first layer that can now be
/// enlarged by a factor of at least `1 + mu`; that layer is replaced and every
/// later layer discarded. Otherwise the tree is returned unchanged.
pub fn superposed_build<S: Scalar>(
    g: &PartitionedGraph,
    mut tree: AlternatingTree,
    pit: &Pit,
    params: &EngineParams<S>,
) -> AlternatingTree {
    let grow = S::one() + params.mu().clone();
    for i in 1..=tree.depth() {
        let old = &tree.layers[i - 1];
        let rebuilt = build_on(g, tree.root, &tree.layers[..i - 1], old.clone(), pit, params);
        if S::from_count(rebuilt.x.len()) >= grow.clone() * S::from_count(old.x.len()) {
            tree.layers.truncate(i);
            tree.layers[i - 1] = rebuilt;
            break;
        }
    }
    tree
}
