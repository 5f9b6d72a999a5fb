//! Independent certificate checks and exhaustive oracles. Nothing here calls
//! into the engine; every quantity is recomputed from the graph.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::apps::hypergraph::{HyperEdge, Hypergraph};
use crate::certificate::{BlockingSet, Certificate};
use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;
use crate::scalar::Scalar;

/// Default node budget for the exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    /// `(invariant name, detail)`.
    pub violations: Vec<(String, String)>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<(String, String)>) -> Self {
        Self { ok: violations.is_empty(), violations }
    }

    pub fn has(&self, name: &str) -> bool {
        self.violations.iter().any(|(n, _)| n == name)
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(|(n, d)| format!("{n}: {d}")).collect()
    }
}

struct Collector(Vec<(String, String)>);

impl Collector {
    fn push(&mut self, name: &str, detail: String) {
        self.0.push((name.to_string(), detail));
    }
}

fn inter_edge(g: &PartitionedGraph, u: usize, v: usize) -> bool {
    g.class_of(u) != g.class_of(v) && g.has_edge(u, v)
}

/// Checks one vertex per class, full coverage and independence.
pub fn verify_it(g: &PartitionedGraph, transversal: &BTreeMap<usize, usize>) -> VerificationReport {
    let mut out = Collector(Vec::new());
    for &label in g.labels() {
        if !transversal.contains_key(&label) {
            out.push("coverage", format!("class {label} has no vertex"));
        }
    }
    let mut chosen = Vec::new();
    for (&label, &v) in transversal {
        let Some(c) = g.class_index(label) else {
            out.push("coverage", format!("class {label} does not exist"));
            continue;
        };
        if v >= g.n() || g.class_of(v) != c {
            out.push("coverage", format!("vertex {v} is not in class {label}"));
            continue;
        }
        chosen.push(v);
    }
    for (i, &u) in chosen.iter().enumerate() {
        for &v in &chosen[i + 1..] {
            if g.has_edge(u, v) {
                out.push("independence", format!("vertices {u} and {v} are adjacent"));
            }
        }
    }
    VerificationReport::from_violations(out.0)
}

/// Checks domination of every vertex in the classes of `B`, both size bounds,
/// `V(K)` inside `D`, the constellation structure for `B0`, and `B` inside `B0`.
/// Only edges between different classes count, so raw and normalized inputs
/// give the same answer.
pub fn verify_bd<S: Scalar>(g: &PartitionedGraph, bd: &BlockingSet<S>) -> VerificationReport {
    let mut out = Collector(Vec::new());
    let n = g.n();

    let class_ids = |labels: &[usize], what: &str, out: &mut Collector| -> BTreeSet<usize> {
        let mut set = BTreeSet::new();
        for &l in labels {
            match g.class_index(l) {
                Some(c) => {
                    if !set.insert(c) {
                        out.push("reference", format!("class {l} listed twice in {what}"));
                    }
                }
                None => out.push("reference", format!("class {l} in {what} does not exist")),
            }
        }
        set
    };
    let b = class_ids(&bd.b, "B", &mut out);
    let b0 = class_ids(&bd.b0, "B0", &mut out);

    let d: BTreeSet<usize> = bd.d.iter().copied().collect();
    if d.len() != bd.d.len() {
        out.push("reference", "D lists a vertex twice".to_string());
    }
    if let Some(&v) = d.iter().find(|&&v| v >= n) {
        out.push("reference", format!("vertex {v} in D does not exist"));
        return VerificationReport::from_violations(out.0);
    }
    let kv: Vec<usize> = bd
        .constellation
        .iter()
        .flat_map(|s| std::iter::once(s.center).chain(s.leaves.iter().copied()))
        .collect();
    if let Some(&v) = kv.iter().find(|&&v| v >= n) {
        out.push("reference", format!("constellation vertex {v} does not exist"));
        return VerificationReport::from_violations(out.0);
    }

    for c in b.difference(&b0) {
        out.push("subset", format!("class {} is in B but not in B0", g.label(*c)));
    }

    for &c in &b {
        for &v in g.class(c) {
            if !g.neighbours(v).iter().any(|&u| d.contains(&u) && g.class_of(u) != c) {
                out.push("domination", format!("vertex {v} of class {} has no neighbour in D", g.label(c)));
            }
        }
    }

    let eps = bd.params.eps().to_big_rational();
    let slack = BigRational::from_integer(BigInt::from(b.len() as i64 - 1));
    let two = BigRational::from_integer(BigInt::from(2));
    let d_size = BigRational::from_integer(BigInt::from(d.len()));
    if d_size >= (&two + &eps) * &slack {
        out.push("size", format!("|D| = {} is not below (2 + {eps})(|B| - 1) with |B| = {}", d.len(), b.len()));
    }

    let kset: BTreeSet<usize> = kv.iter().copied().collect();
    if kset.len() != kv.len() {
        out.push("constellation", "a vertex appears in two places of the constellation".to_string());
    }
    for v in kset.difference(&d) {
        out.push("containment", format!("constellation vertex {v} is not in D"));
    }
    let outside = d.difference(&kset).count();
    if BigRational::from_integer(BigInt::from(outside)) >= &eps * &slack {
        out.push("residual", format!("|D \\ V(K)| = {outside} is not below {eps}(|B| - 1) with |B| = {}", b.len()));
    }

    check_constellation(g, bd, &b0, &mut out);
    VerificationReport::from_violations(out.0)
}

fn check_constellation<S: Scalar>(g: &PartitionedGraph, bd: &BlockingSet<S>, b0: &BTreeSet<usize>, out: &mut Collector) {
    let mut star_of: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
    for (i, s) in bd.constellation.iter().enumerate() {
        if s.leaves.is_empty() {
            out.push("constellation", format!("star centred at {} has no leaves", s.center));
        }
        star_of.insert(s.center, (i, true));
        for &l in &s.leaves {
            if l == s.center {
                out.push("constellation", format!("star centred at {l} lists its centre as a leaf"));
            }
            star_of.insert(l, (i, false));
            if !inter_edge(g, s.center, l) {
                out.push("constellation", format!("leaf {l} is not joined to its centre {}", s.center));
            }
        }
    }
    for &v in star_of.keys() {
        if !b0.contains(&g.class_of(v)) {
            out.push("constellation", format!("vertex {v} lies outside the classes of B0"));
        }
    }
    // induced: the only edges inside V(K) are centre-leaf edges of one star
    for (&u, &(su, cu)) in &star_of {
        for (&v, &(sv, cv)) in star_of.range(u + 1..) {
            if inter_edge(g, u, v) && !(su == sv && cu != cv) {
                out.push("constellation", format!("edge {u}-{v} is not a centre-leaf edge of one star"));
            }
        }
    }
    let leaves: Vec<usize> = bd.constellation.iter().flat_map(|s| s.leaves.iter().copied()).collect();
    let leaf_classes: BTreeSet<usize> = leaves.iter().map(|&l| g.class_of(l)).collect();
    if leaf_classes.len() != leaves.len() {
        out.push("constellation", "two leaves share a class".to_string());
    }
    if leaves.len() + 1 != b0.len() {
        out.push(
            "constellation",
            format!("{} leaves cannot form a transversal of |B0| - 1 = {} classes", leaves.len(), b0.len().saturating_sub(1)),
        );
    }
}

/// Runs [`verify_it`] or [`verify_bd`] as appropriate.
pub fn verify_certificate<S: Scalar>(g: &PartitionedGraph, cert: &Certificate<S>) -> VerificationReport {
    match cert {
        Certificate::It(t) => verify_it(g, t),
        Certificate::Bd(bd) => verify_bd(g, bd),
    }
}

/// Lexicographically first transversal by backtracking over classes in order.
/// Fails once more than `budget` partial assignments have been tried.
pub fn brute_force_it(g: &PartitionedGraph, budget: u64) -> Result<Option<BTreeMap<usize, usize>>> {
    let mut chosen = Vec::with_capacity(g.class_count());
    let mut nodes = 0u64;
    if it_search(g, &mut chosen, &mut nodes, budget)? {
        Ok(Some(chosen.iter().enumerate().map(|(c, &v)| (g.label(c), v)).collect()))
    } else {
        Ok(None)
    }
}

fn it_search(g: &PartitionedGraph, chosen: &mut Vec<usize>, nodes: &mut u64, budget: u64) -> Result<bool> {
    let c = chosen.len();
    if c == g.class_count() {
        return Ok(true);
    }
    for &v in g.class(c) {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        if chosen.iter().all(|&u| !inter_edge(g, u, v)) {
            chosen.push(v);
            if it_search(g, chosen, nodes, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// A set of pairwise disjoint edges saturating `A`, as indices into `h.edges`.
pub fn brute_force_perfect_matching(h: &Hypergraph, budget: u64) -> Result<Option<Vec<usize>>> {
    if h.a.len() > 12 {
        return Err(Error::InvalidParameter(format!("|A| = {} is above the oracle limit of 12", h.a.len())));
    }
    let mut by_a: BTreeMap<usize, Vec<usize>> = h.a.iter().map(|&a| (a, Vec::new())).collect();
    for (i, e) in h.edges.iter().enumerate() {
        by_a.entry(e.a).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = by_a.into_values().collect();
    let mut used = BTreeSet::new();
    let mut picked = Vec::new();
    let mut nodes = 0u64;
    let found = match_search(&h.edges, &groups, &mut used, &mut picked, &mut nodes, budget)?;
    Ok(found.then_some(picked))
}

fn match_search(
    edges: &[HyperEdge],
    groups: &[Vec<usize>],
    used: &mut BTreeSet<usize>,
    picked: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    let k = picked.len();
    if k == groups.len() {
        return Ok(true);
    }
    for &i in &groups[k] {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let e = &edges[i];
        if e.b.iter().all(|x| !used.contains(x)) {
            used.extend(e.b.iter().copied());
            picked.push(i);
            if match_search(edges, groups, used, picked, nodes, budget)? {
                return Ok(true);
            }
            picked.pop();
            for x in &e.b {
                used.remove(x);
            }
        }
    }
    Ok(false)
}
