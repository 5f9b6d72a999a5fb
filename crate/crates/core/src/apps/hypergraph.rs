//! Perfect matchings in bipartite hypergraphs through the auxiliary graph
//! whose vertices are the hyperedges.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::certificate::{BlockingSet, Certificate};
use crate::engine::{solve, EngineParams};
use crate::error::{Error, Result};
use crate::graph::{PartitionedGraph, SimpleGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HyperEdge {
    pub a: usize,
    /// Sorted, `r - 1` distinct vertices of the B side.
    pub b: Vec<usize>,
}

/// An `r`-uniform hypergraph whose edges each hold one vertex of `A` and
/// `r - 1` vertices of `B`. The two sides use separate id spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub r: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub edges: Vec<HyperEdge>,
}

impl Hypergraph {
    pub fn new(r: usize, a: Vec<usize>, b: Vec<usize>, edges: Vec<HyperEdge>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidGraph(format!("hypergraph uniformity must be at least 2, got {r}")));
        }
        let mut a = a;
        let mut b = b;
        a.sort_unstable();
        b.sort_unstable();
        if a.windows(2).any(|w| w[0] == w[1]) || b.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("a side lists a vertex twice".to_string()));
        }
        let mut edges = edges;
        for e in &mut edges {
            e.b.sort_unstable();
            if a.binary_search(&e.a).is_err() {
                return Err(Error::InvalidGraph(format!("edge uses {} which is not on the A side", e.a)));
            }
            if e.b.len() != r - 1 || e.b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "edge at {} needs {} distinct B vertices",
                    e.a,
                    r - 1
                )));
            }
            if let Some(x) = e.b.iter().find(|x| b.binary_search(x).is_err()) {
                return Err(Error::InvalidGraph(format!("edge uses {x} which is not on the B side")));
            }
        }
        Ok(Self { r, a, b, edges })
    }

    /// `E_S`: indices of the edges whose A vertex lies in `s`.
    pub fn edges_at(&self, s: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| s.contains(&self.edges[i].a)).collect()
    }

    /// `|U_{e in edges} e ∩ B|`.
    pub fn b_union(&self, edges: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        edges.into_iter().flat_map(|i| self.edges[i].b.iter().copied()).collect()
    }
}

/// One vertex per hyperedge, two joined when they share a B vertex, classes
/// given by the A vertex. Edges sharing both sides stay as intra-class edges
/// and are dropped by normalization.
pub fn auxiliary_graph(h: &Hypergraph) -> Result<PartitionedGraph> {
    let mut by_b: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut by_a: BTreeMap<usize, Vec<usize>> = h.a.iter().map(|&a| (a, Vec::new())).collect();
    for (i, e) in h.edges.iter().enumerate() {
        by_a.get_mut(&e.a).expect("validated edge").push(i);
        for &x in &e.b {
            by_b.entry(x).or_default().push(i);
        }
    }
    if let Some((&a, _)) = by_a.iter().find(|(_, es)| es.is_empty()) {
        return Err(Error::EmptyClass { class: a });
    }
    let mut pairs = Vec::new();
    for es in by_b.values() {
        for (k, &i) in es.iter().enumerate() {
            for &j in &es[k + 1..] {
                pairs.push((i, j));
            }
        }
    }
    let graph = SimpleGraph::from_edges(h.edges.len(), pairs)?;
    PartitionedGraph::new(graph, by_a.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    /// Edge indices, one per A vertex, in A order.
    Matching(Vec<usize>),
    /// `S` on the A side whose edges `E_S` are all met by the small set `T` on the B side.
    Cover { s: Vec<usize>, t: Vec<usize> },
}

/// A match outcome together with the engine certificate it came from
/// (absent when some A vertex has no edge at all).
#[derive(Debug, Clone)]
pub struct MatchRun<S: Scalar> {
    pub outcome: MatchOutcome,
    pub blocking: Option<BlockingSet<S>>,
}

/// Runs the engine on the auxiliary graph with `r` and `eps / (r - 1)`.
pub fn hypergraph_match<S: Scalar>(h: &Hypergraph, eps: &S) -> Result<MatchOutcome> {
    Ok(hypergraph_match_detailed(h, eps)?.outcome)
}

pub fn hypergraph_match_detailed<S: Scalar>(h: &Hypergraph, eps: &S) -> Result<MatchRun<S>> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter("eps must be positive".to_string()));
    }
    let g = match auxiliary_graph(h) {
        Ok(g) => g,
        Err(Error::EmptyClass { class }) => {
            return Ok(MatchRun { outcome: MatchOutcome::Cover { s: vec![class], t: Vec::new() }, blocking: None });
        }
        Err(e) => return Err(e),
    };
    let eps_engine = eps.clone() / S::from_count(h.r - 1);
    let params = EngineParams::clamped(h.r, eps_engine)?;
    match solve(&g, &params)? {
        Certificate::It(t) => {
            let edges: Vec<usize> = t.values().copied().collect();
            if !is_perfect_matching(h, &edges) {
                return Err(Error::CertificateViolation(vec!["matching: edges overlap or miss an A vertex".to_string()]));
            }
            Ok(MatchRun { outcome: MatchOutcome::Matching(edges), blocking: None })
        }
        Certificate::Bd(bd) => {
            let s: BTreeSet<usize> = bd.b.iter().copied().collect();
            let t = h.b_union(bd.d.iter().copied());
            let mut problems = cover_problems(h, &s, &t, eps);
            let kv = bd.constellation_vertices();
            let k_b = h.b_union(kv.iter().copied()).len();
            if !claim_bound_holds(h.r, k_b, bd.b0.len()) {
                problems.push(format!(
                    "constellation: its edges meet {k_b} B vertices, above (2r-3)(|B0|-1) for |B0| = {}",
                    bd.b0.len()
                ));
            }
            if !problems.is_empty() {
                return Err(Error::CertificateViolation(problems));
            }
            let outcome = MatchOutcome::Cover { s: s.into_iter().collect(), t: t.into_iter().collect() };
            Ok(MatchRun { outcome, blocking: Some(bd) })
        }
    }
}

/// Whether `edges` are pairwise disjoint and use every A vertex exactly once.
pub fn is_perfect_matching(h: &Hypergraph, edges: &[usize]) -> bool {
    let mut seen_a = BTreeSet::new();
    let mut seen_b = BTreeSet::new();
    for &i in edges {
        let Some(e) = h.edges.get(i) else { return false };
        if !seen_a.insert(e.a) || !e.b.iter().all(|&x| seen_b.insert(x)) {
            return false;
        }
    }
    seen_a.len() == h.a.len()
}

/// Problems with the claim that `t` meets every edge of `E_S` and
/// `|T| <= (2r - 3 + eps)(|S| - 1)`; empty when the cover is valid.
pub fn cover_problems<S: Scalar>(h: &Hypergraph, s: &BTreeSet<usize>, t: &BTreeSet<usize>, eps: &S) -> Vec<String> {
    let mut out = Vec::new();
    for i in h.edges_at(s) {
        if h.edges[i].b.iter().all(|x| !t.contains(x)) {
            out.push(format!("cover: edge {i} at {} misses T", h.edges[i].a));
        }
    }
    let coeff = BigRational::from_integer(BigInt::from(2 * h.r as i64 - 3)) + eps.to_big_rational();
    let bound = coeff * BigRational::from_integer(BigInt::from(s.len() as i64 - 1));
    if BigRational::from_integer(BigInt::from(t.len())) > bound {
        out.push(format!("cover: |T| = {} exceeds (2r-3+eps)(|S|-1) = {bound}", t.len()));
    }
    out
}

/// `k_b <= (2r - 3)(b0 - 1)`, the B-side footprint bound for a constellation over `b0` classes.
pub fn claim_bound_holds(r: usize, k_b: usize, b0: usize) -> bool {
    (k_b as i64) <= (2 * r as i64 - 3) * (b0 as i64 - 1)
}
