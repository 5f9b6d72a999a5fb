//! Reading a blocking set off a stuck alternating tree.

use std::collections::BTreeSet;

use super::build::build_on;
use super::params::EngineParams;
use super::tree::{immediately_addable, AlternatingTree, Pit};
use crate::certificate::{BlockingSet, Star};
use crate::certify::verify_bd;
use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;
use crate::scalar::Scalar;

/// `tree` is `(L_0, ..., L_{l+1})` as returned by a stuck growth call.
/// The result is checked by the independent verifier before it is returned.
pub fn extract_bd<S: Scalar>(
    g: &PartitionedGraph,
    tree: &AlternatingTree,
    pit: &Pit,
    params: &EngineParams<S>,
) -> Result<BlockingSet<S>> {
    let Some(l) = tree.depth().checked_sub(1) else {
        return Err(Error::InvalidParameter("tree has no trailing layer".to_string()));
    };
    let b0: BTreeSet<usize> = tree.prefix(l).touched_classes(g).into_iter().collect();

    let mut x_per_class = vec![0usize; g.class_count()];
    for layer in &tree.layers {
        for &x in &layer.x {
            x_per_class[g.class_of(x)] += 1;
        }
    }
    let mut b: BTreeSet<usize> =
        b0.iter().copied().filter(|&c| S::from_count(x_per_class[c]) < *params.cap()).collect();

    let mut w = BTreeSet::new();
    for i in 0..l {
        let old = &tree.layers[i];
        let rebuilt = build_on(g, tree.root, &tree.layers[..i], old.clone(), pit, params);
        for v in rebuilt.x.difference(&old.x) {
            b.remove(&g.class_of(*v));
        }
        w.extend(rebuilt.x);
        w.extend(rebuilt.y);
    }
    let top = &tree.layers[l];
    w.extend(top.x.iter().copied());
    w.extend(top.y.iter().copied());

    let mut d = w.clone();
    for v in immediately_addable(g, pit, &w) {
        let u = *g.neighbours(v).first().ok_or_else(|| {
            Error::InternalInvariantViolation(format!("vertex {v} is isolated in a normalized graph"))
        })?;
        d.insert(u);
    }

    let x_upto: BTreeSet<usize> = tree.layers[..l].iter().flat_map(|ly| ly.x.iter().copied()).collect();
    let free = immediately_addable(g, pit, &x_upto);
    let mut constellation = Vec::new();
    for layer in &tree.layers[..l] {
        for &x in layer.x.difference(&free) {
            let leaves: Vec<usize> = g.neighbours(x).iter().copied().filter(|y| layer.y.contains(y)).collect();
            constellation.push(Star { center: x, leaves });
        }
    }
    constellation.sort_by_key(|s| s.center);

    let cert = BlockingSet {
        b: b.iter().map(|&c| g.label(c)).collect(),
        b0: b0.iter().map(|&c| g.label(c)).collect(),
        d: d.into_iter().collect(),
        constellation,
        params: params.clone(),
    };
    let report = verify_bd(g, &cert);
    if !report.ok {
        return Err(Error::CertificateViolation(report.messages()));
    }
    Ok(cert)
}
