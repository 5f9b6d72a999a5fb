//! Strong colourings with `3 delta + 1` colours: proper colourings in which
//! every class sees each colour at most once.

use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::apps::bounded::it_containing_vertex;
use crate::certificate::Certificate;
use crate::engine::EngineParams;
use crate::error::{Error, Result};
use crate::graph::{PartitionedGraph, SimpleGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongColouring {
    /// Colour of each vertex, in `0..k`.
    pub colour_of: Vec<usize>,
    pub k: usize,
}

/// Colours `g` with `3 delta + 1` colours so that every class is rainbow.
/// Needs maximum degree at most `delta` and classes of at most `3 delta + 1`
/// vertices.
pub fn strong_colour(g: &PartitionedGraph, delta: usize) -> Result<StrongColouring> {
    let k = 3 * delta + 1;
    if g.max_degree() > delta {
        return Err(Error::PreconditionViolation(format!(
            "maximum degree {} exceeds delta = {delta}",
            g.max_degree()
        )));
    }
    if let Some(c) = g.classes().iter().position(|c| c.len() > k) {
        return Err(Error::PreconditionViolation(format!(
            "class {} has {} vertices, more than 3 delta + 1 = {k}",
            g.label(c),
            g.class(c).len()
        )));
    }
    let n = g.n();
    if delta == 0 {
        // edgeless with classes of at most one vertex
        return Ok(StrongColouring { colour_of: vec![0; n], k });
    }

    // pad every class with isolated vertices up to exactly k
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut next = n;
    for c in 0..g.class_count() {
        let mut vs = g.class(c).to_vec();
        while vs.len() < k {
            vs.push(next);
            next += 1;
        }
        classes.push((g.label(c), vs));
    }
    let padded = PartitionedGraph::new(SimpleGraph::from_edges(next, g.graph().edges())?, classes)?;
    let params = EngineParams::clamped(delta + 1, BigRational::ratio(1, delta as i64))?;

    let mut colour: Vec<Option<usize>> = vec![None; next];
    let mut coloured = 0usize;
    while let Some(v) = (0..n).find(|&v| colour[v].is_none()) {
        let cv = padded.class_of(v);
        let used: BTreeSet<usize> = padded.class(cv).iter().filter_map(|&u| colour[u]).collect();
        let alpha = (0..k).find(|a| !used.contains(a)).expect("an uncoloured vertex leaves a colour free");
        let holder: Vec<Option<usize>> = (0..padded.class_count())
            .map(|c| padded.class(c).iter().copied().find(|&u| colour[u] == Some(alpha)))
            .collect();
        // drop from each class the vertices whose colour appears next to that class's alpha vertex
        let mut drop = vec![false; next];
        for (c, w) in holder.iter().enumerate() {
            if let &Some(w) = w {
                let near: BTreeSet<usize> = padded.neighbours(w).iter().filter_map(|&u| colour[u]).collect();
                for &u in padded.class(c) {
                    if colour[u].is_some_and(|x| near.contains(&x)) {
                        drop[u] = true;
                    }
                }
            }
        }
        let (reduced, map) = padded.restrict(|u| !drop[u]);
        let v_new = map.binary_search(&v).expect("v is uncoloured and never dropped");
        let t = match it_containing_vertex(&reduced, v_new, &params)? {
            Certificate::It(t) => t,
            Certificate::Bd(_) => {
                return Err(Error::InternalInvariantViolation(format!(
                    "no transversal through vertex {v} in the reduced graph"
                )))
            }
        };
        let mut updated = colour.clone();
        for (&label, &y) in &t {
            let y = map[y];
            let c = padded.class_index(label).expect("label of padded graph");
            if let Some(w) = holder[c] {
                if w != y {
                    updated[w] = colour[y];
                }
            }
            updated[y] = Some(alpha);
        }
        // counted over the padded graph: a dummy may take a colour from a real vertex
        let now = updated.iter().filter(|x| x.is_some()).count();
        if now <= coloured {
            return Err(Error::InternalInvariantViolation(format!(
                "recolouring round for vertex {v} did not colour more vertices"
            )));
        }
        coloured = now;
        colour = updated;
    }

    let result = StrongColouring { colour_of: colour[..n].iter().map(|c| c.expect("all coloured")).collect(), k };
    let problems = verify_strong_colouring(g, &result);
    if !problems.is_empty() {
        return Err(Error::InternalInvariantViolation(problems.join("; ")));
    }
    Ok(result)
}

/// Problems with `col` as a strong colouring of `g`; empty when valid.
pub fn verify_strong_colouring(g: &PartitionedGraph, col: &StrongColouring) -> Vec<String> {
    let mut out = Vec::new();
    if col.colour_of.len() != g.n() {
        out.push(format!("colouring covers {} of {} vertices", col.colour_of.len(), g.n()));
        return out;
    }
    for (v, &c) in col.colour_of.iter().enumerate() {
        if c >= col.k {
            out.push(format!("vertex {v} has colour {c} outside 0..{}", col.k));
        }
    }
    for (u, v) in g.graph().edges() {
        if col.colour_of[u] == col.colour_of[v] {
            out.push(format!("edge {u}-{v} is monochromatic"));
        }
    }
    for c in 0..g.class_count() {
        let mut seen = BTreeSet::new();
        for &v in g.class(c) {
            if !seen.insert(col.colour_of[v]) {
                out.push(format!("class {} repeats colour {}", g.label(c), col.colour_of[v]));
            }
        }
    }
    out
}
