//! The transversal-or-blocking-set engine.

mod build;
mod extract;
mod floorlog;
mod grow;
mod params;
mod signature;
mod trace;
mod tree;

pub use build::{build_layer, is_addable, superposed_build};
pub use extract::extract_bd;
pub use floorlog::floor_log;
pub use grow::{grow_transversal, iteration_guard, GrowFlag, GrowResult};
pub use params::{default_params, is_feasible, EngineParams};
pub use signature::{magnitudes_non_decreasing, signature_of, Coord, Signature, SignatureCalculator};
pub use trace::Trace;
pub use tree::{immediately_addable, AlternatingTree, Layer, Pit};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::graph::{claw_free_witness, normalize, PartitionedGraph};
use crate::scalar::Scalar;

/// Runs the engine on a normalized graph. Uncovered classes are rooted in
/// increasing index order.
pub fn find_it_or_bd<S: Scalar>(g: &PartitionedGraph, params: &EngineParams<S>) -> Result<Certificate<S>> {
    run(g, params, None)
}

/// As [`find_it_or_bd`], recording every loop iteration into `trace`.
pub fn find_it_or_bd_traced<S: Scalar>(
    g: &PartitionedGraph,
    params: &EngineParams<S>,
    trace: &mut Trace,
) -> Result<Certificate<S>> {
    run(g, params, Some(trace))
}

fn run<S: Scalar>(g: &PartitionedGraph, params: &EngineParams<S>, mut trace: Option<&mut Trace>) -> Result<Certificate<S>> {
    if !g.is_normalized() {
        return Err(Error::PreconditionViolation(
            "the engine needs a normalized graph (no intra-class edges, no isolated vertices)".to_string(),
        ));
    }
    let mut pit = Pit::new(g);
    for root in 0..g.class_count() {
        if pit.covers(root) {
            continue;
        }
        let res = grow_transversal(g, &mut pit, root, params, trace.as_deref_mut())?;
        match res.flag {
            GrowFlag::Augmented => debug_assert!(pit.covers(root)),
            GrowFlag::Stuck => return Ok(Certificate::Bd(extract_bd(g, &res.tree, &pit, params)?)),
        }
    }
    let transversal = (0..g.class_count())
        .map(|c| (g.label(c), pit.member_in(c).expect("every class covered")))
        .collect();
    Ok(Certificate::It(transversal))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Reject inputs with an `r`-claw before running.
    pub check_claw_free: bool,
    /// Record signatures and invariant checks.
    pub trace: bool,
}

/// What [`solve_with`] produced, with vertex ids of the raw input.
pub struct Solution<S: Scalar> {
    pub certificate: Certificate<S>,
    pub removed_intra_class_edges: usize,
    pub extracted_classes: Vec<(usize, usize)>,
    pub trace: Option<Trace>,
}

/// Normalizes `raw`, runs the engine and translates the outcome back to raw ids.
pub fn solve<S: Scalar>(raw: &PartitionedGraph, params: &EngineParams<S>) -> Result<Certificate<S>> {
    Ok(solve_with(raw, params, SolveOptions::default())?.certificate)
}

pub fn solve_with<S: Scalar>(
    raw: &PartitionedGraph,
    params: &EngineParams<S>,
    opts: SolveOptions,
) -> Result<Solution<S>> {
    let report = normalize(raw)?;
    let g = &report.remaining_graph;
    if opts.check_claw_free {
        if let Some(w) = claw_free_witness(g, params.r())? {
            let map = &report.vertex_map;
            let leaves: Vec<String> = w.leaves.iter().map(|&v| map[v].to_string()).collect();
            return Err(Error::PreconditionViolation(format!(
                "vertex {} has {} independent neighbours in distinct classes: {}",
                map[w.center],
                params.r(),
                leaves.join(" ")
            )));
        }
    }
    let mut trace = opts.trace.then(|| Trace::new(params));
    let cert = run(g, params, trace.as_mut())?;
    let cert = cert.map_vertices(|v| report.vertex_map[v]);
    let certificate = match cert {
        Certificate::It(mut t) => {
            t.extend(report.extracted_classes.iter().copied());
            Certificate::It(t)
        }
        bd => bd,
    };
    Ok(Solution {
        certificate,
        removed_intra_class_edges: report.removed_intra_class_edges,
        extracted_classes: report.extracted_classes,
        trace,
    })
}
