//! Seeded instance generators. The same arguments always give the same instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apps::hypergraph::{HyperEdge, Hypergraph};
use crate::error::{Error, Result};
use crate::graph::{PartitionedGraph, SimpleGraph};

/// `m` classes of `class_size` consecutive vertices; random edges between
/// different classes, added greedily in shuffled order while both
/// endpoints stay below degree `delta`.
pub fn random_partitioned(m: usize, class_size: usize, delta: usize, seed: u64) -> PartitionedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = m * class_size;
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u / class_size != v / class_size)
        .collect();
    pairs.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if degree[u] < delta && degree[v] < delta {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    let classes = (0..m).map(|c| (c * class_size..(c + 1) * class_size).collect()).collect();
    PartitionedGraph::from_parts(n, classes, edges).expect("generated instance is valid")
}

/// `K_{delta,delta}` between two classes of `delta` vertices: every vertex
/// of one class sees the whole other class, so there is no transversal.
pub fn complete_bipartite_pair(delta: usize) -> PartitionedGraph {
    let edges = (0..delta).flat_map(|u| (delta..2 * delta).map(move |v| (u, v)));
    PartitionedGraph::from_parts(2 * delta, vec![(0..delta).collect(), (delta..2 * delta).collect()], edges)
        .expect("generated instance is valid")
}

/// `r`-uniform bipartite hypergraph with `|A| = na`, `|B| = nb`; each A vertex
/// gets between 1 and `max_degree` edges (none when `max_degree` is 0) on
/// uniformly random `(r-1)`-subsets of B.
pub fn hypergraph_random(r: usize, na: usize, nb: usize, max_degree: usize, seed: u64) -> Result<Hypergraph> {
    if r < 2 || nb < r - 1 {
        return Err(Error::InvalidParameter(format!("cannot draw {} B vertices out of {nb}", r.saturating_sub(1))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bs: Vec<usize> = (0..nb).collect();
    let mut edges = Vec::new();
    for a in 0..na {
        for _ in 0..rng.gen_range(max_degree.min(1)..=max_degree) {
            let mut b: Vec<usize> = bs.choose_multiple(&mut rng, r - 1).copied().collect();
            b.sort_unstable();
            edges.push(HyperEdge { a, b });
        }
    }
    Hypergraph::new(r, (0..na).collect(), bs, edges)
}

/// A graph of maximum degree at most `delta` with `cliques` disjoint planted
/// cliques of a size above `2(delta + 1)/3`, plus `extra` further vertices
/// and random edges kept under the degree cap.
pub fn clique_planted(delta: usize, cliques: usize, extra: usize, seed: u64) -> SimpleGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = 2 * (delta + 1) / 3 + 1;
    let omega = rng.gen_range(low..=delta + 1);
    let n = cliques * omega + extra;
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for c in 0..cliques {
        for u in c * omega..(c + 1) * omega {
            for v in u + 1..(c + 1) * omega {
                edges.push((u, v));
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u >= cliques * omega || v >= cliques * omega || u / omega != v / omega)
        .collect();
    pairs.shuffle(&mut rng);
    let budget = rng.gen_range(0..=n);
    for (u, v) in pairs.into_iter().take(budget * 2) {
        if degree[u] < delta && degree[v] < delta {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    SimpleGraph::from_edges(n, edges).expect("generated graph is valid")
}
