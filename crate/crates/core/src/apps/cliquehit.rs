//! Independent sets meeting every maximum clique, for graphs whose clique
//! number is large relative to the maximum degree.

use std::collections::BTreeSet;

use crate::apps::bounded::bounded_degree_it;
use crate::certify::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::graph::{PartitionedGraph, SimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueHittingSet {
    /// Independent, meets every maximum clique. Sorted.
    pub hitting: Vec<usize>,
    /// Every maximum clique, each sorted, in lexicographic order.
    pub cliques: Vec<Vec<usize>>,
}

/// All maximum cliques of `g` by pivoted Bron-Kerbosch. Exponential time,
/// no budget.
pub fn maximum_cliques(g: &SimpleGraph) -> Vec<Vec<usize>> {
    maximum_cliques_within(g, u64::MAX).expect("unbounded search")
}

/// As [`maximum_cliques`], giving up after `budget` search nodes.
pub fn maximum_cliques_within(g: &SimpleGraph, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut best: Vec<Vec<usize>> = Vec::new();
    let mut r = Vec::new();
    let p: BTreeSet<usize> = (0..g.n()).collect();
    let mut left = budget;
    bron_kerbosch(g, &mut r, p, BTreeSet::new(), &mut best, &mut left)
        .then_some(())
        .ok_or(Error::BudgetExceeded { budget })?;
    for c in &mut best {
        c.sort_unstable();
    }
    best.sort();
    Ok(best)
}

/// Returns `false` once the node budget runs out.
fn bron_kerbosch(
    g: &SimpleGraph,
    r: &mut Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    best: &mut Vec<Vec<usize>>,
    left: &mut u64,
) -> bool {
    if *left == 0 {
        return false;
    }
    *left -= 1;
    if p.is_empty() && x.is_empty() {
        let size = best.first().map_or(0, Vec::len);
        if r.len() > size {
            best.clear();
        }
        if r.len() >= size && !r.is_empty() {
            best.push(r.clone());
        }
        return true;
    }
    let size = best.first().map_or(0, Vec::len);
    if r.len() + p.len() < size {
        return true;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| g.neighbours(u).iter().filter(|w| p.contains(w)).count())
        .expect("p or x is nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in candidates {
        let nb: BTreeSet<usize> = g.neighbours(v).iter().copied().collect();
        r.push(v);
        let within =
            bron_kerbosch(g, r, p.intersection(&nb).copied().collect(), x.intersection(&nb).copied().collect(), best, left);
        if !within {
            return false;
        }
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
    true
}

/// Groups the maximum cliques into components of their intersection graph,
/// takes the common core of each component as a class, and finds a
/// transversal of the cores with the degree-capped solver.
pub fn clique_hitting_set(g: &SimpleGraph, delta: usize) -> Result<CliqueHittingSet> {
    clique_hitting_set_within(g, delta, DEFAULT_BUDGET)
}

/// As [`clique_hitting_set`] with an explicit node budget for the clique search.
pub fn clique_hitting_set_within(g: &SimpleGraph, delta: usize, budget: u64) -> Result<CliqueHittingSet> {
    if g.max_degree() > delta {
        return Err(Error::PreconditionViolation(format!(
            "maximum degree {} exceeds delta = {delta}",
            g.max_degree()
        )));
    }
    let cliques = maximum_cliques_within(g, budget)?;
    let omega = cliques.first().map_or(0, Vec::len);
    if 3 * omega <= 2 * (delta + 1) {
        return Err(Error::PreconditionViolation(format!(
            "clique number {omega} is not above 2(delta + 1)/3 for delta = {delta}"
        )));
    }

    // components of the intersection graph by union-find over clique indices
    let mut parent: Vec<usize> = (0..cliques.len()).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut first_clique = vec![usize::MAX; g.n()];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            if first_clique[v] == usize::MAX {
                first_clique[v] = i;
            } else {
                let (a, b) = (find(&mut parent, first_clique[v]), find(&mut parent, i));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut cores: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    for (i, c) in cliques.iter().enumerate() {
        let root = find(&mut parent, i);
        let set: BTreeSet<usize> = c.iter().copied().collect();
        match cores.iter_mut().find(|(r, _)| *r == root) {
            Some((_, core)) => *core = core.intersection(&set).copied().collect(),
            None => cores.push((root, set)),
        }
    }

    let k = (delta + 1).div_ceil(3);
    let mut owner = vec![usize::MAX; g.n()];
    for (idx, (_, core)) in cores.iter().enumerate() {
        if core.len() < k {
            return Err(Error::CoreStructureViolation(format!(
                "a group of maximum cliques shares only {} vertices, fewer than ceil((delta + 1)/3) = {k}",
                core.len()
            )));
        }
        for &v in core {
            if owner[v] != usize::MAX {
                return Err(Error::CoreStructureViolation(format!("vertex {v} lies in two cores")));
            }
            owner[v] = idx;
        }
    }

    let keep: Vec<usize> = (0..g.n()).filter(|&v| owner[v] != usize::MAX).collect();
    let sub = g.induced(&keep);
    let classes: Vec<(usize, Vec<usize>)> = (0..cores.len())
        .map(|idx| (idx, (0..keep.len()).filter(|&i| owner[keep[i]] == idx).collect()))
        .collect();
    let pg = PartitionedGraph::new(sub, classes)?;
    let t = bounded_degree_it(&pg, k)?;
    let mut hitting: Vec<usize> = t.values().map(|&i| keep[i]).collect();
    hitting.sort_unstable();

    for (i, &u) in hitting.iter().enumerate() {
        if hitting[i + 1..].iter().any(|&v| g.has_edge(u, v)) {
            return Err(Error::InternalInvariantViolation(format!("hitting set is not independent at {u}")));
        }
    }
    if let Some(c) = cliques.iter().find(|c| !c.iter().any(|v| hitting.binary_search(v).is_ok())) {
        return Err(Error::InternalInvariantViolation(format!("maximum clique {c:?} is missed")));
    }
    Ok(CliqueHittingSet { hitting, cliques })
}
