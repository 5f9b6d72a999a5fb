//! Transversals under per-class degree caps, and transversals through a
//! prescribed vertex.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::certificate::Certificate;
use crate::engine::{solve, EngineParams};
use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;
use crate::scalar::Scalar;

/// Replaces the class of `v` by `{v}` and solves. The answer, when it is a
/// transversal, contains `v`. Vertex ids in the result are those of `g`.
///
/// With every class of size at least `2 max_degree + 1` a blocking set
/// cannot occur and is reported as a [`Error::CertificateViolation`].
pub fn it_containing_vertex<S: Scalar>(
    g: &PartitionedGraph,
    v: usize,
    params: &EngineParams<S>,
) -> Result<Certificate<S>> {
    if v >= g.n() {
        return Err(Error::InvalidParameter(format!("vertex {v} is not in the graph")));
    }
    let c = g.class_of(v);
    let (h, map) = g.restrict(|u| u == v || g.class_of(u) != c);
    let cert = solve(&h, params)?.map_vertices(|u| map[u]);
    match &cert {
        Certificate::It(t) if t.get(&g.label(c)) != Some(&v) => Err(Error::InternalInvariantViolation(format!(
            "transversal misses the prescribed vertex {v}"
        ))),
        Certificate::Bd(_) if g.classes().iter().all(|c| c.len() > 2 * g.max_degree()) => {
            Err(Error::CertificateViolation(vec![format!(
                "blocking set through vertex {v} although every class has more than {} vertices",
                2 * g.max_degree()
            )]))
        }
        _ => Ok(cert),
    }
}

/// Every vertex has at most `min(k - 1, |V_i| - k)` neighbours outside its
/// own class `V_i`; under that cap a transversal always exists.
pub fn bounded_degree_it(g: &PartitionedGraph, k: usize) -> Result<BTreeMap<usize, usize>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".to_string()));
    }
    for v in 0..g.n() {
        let out = g.degree_outside_class(v) as i64;
        let size = g.class(g.class_of(v)).len() as i64;
        let cap = (k as i64 - 1).min(size - k as i64);
        if out > cap {
            return Err(Error::PreconditionViolation(format!(
                "vertex {v} has {out} neighbours outside its class, above min(k-1, |V_i|-k) = {cap}"
            )));
        }
    }
    if let Some(c) = g.classes().iter().position(Vec::is_empty) {
        return Err(Error::EmptyClass { class: g.label(c) });
    }
    let r = k.max(2);
    let params = EngineParams::clamped(r, BigRational::ratio(1, r as i64 - 1))?;
    match solve(g, &params)? {
        Certificate::It(t) => Ok(t),
        Certificate::Bd(_) => Err(Error::CertificateViolation(vec![
            "outcome: a blocking set was produced although the degree cap rules it out".to_string(),
        ])),
    }
}
