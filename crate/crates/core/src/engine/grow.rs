//! `GrowTransversal`: extend the partial transversal into one more class, or
//! get stuck with a tree from which a blocking set can be read off.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::build::{build_on, superposed_build};
use super::params::EngineParams;
use super::trace::Trace;
use super::tree::{immediately_addable, AlternatingTree, Layer, Pit};
use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowFlag {
    /// The root class is now covered.
    Augmented,
    /// The newest layer came out too small; the tree carries a blocking set.
    Stuck,
}

#[derive(Debug, Clone)]
pub struct GrowResult {
    pub tree: AlternatingTree,
    pub flag: GrowFlag,
    pub iterations: u64,
}

/// Upper bound on loop iterations, `4 m^ceil(R + 2c)` with
/// `c = 1/ln(1 + rho(1 - mu))` and `R = 1/ln b`. Saturates at `u64::MAX`.
/// Evaluated in floating point since it is only a safety net.
pub fn iteration_guard<S: Scalar>(m: usize, params: &EngineParams<S>) -> u64 {
    let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
    let p = params.to_big();
    let mu = f(p.mu());
    let rho = f(p.rho());
    let c = 1.0 / (1.0 + rho * (1.0 - mu)).ln();
    let r = 1.0 / f(&p.base()).ln();
    let exp = (r + 2.0 * c).ceil();
    let bound = 4.0 * (m.max(2) as f64).powf(exp);
    if bound.is_finite() && bound < u64::MAX as f64 {
        bound as u64
    } else {
        u64::MAX
    }
}

/// Runs the growth loop from the uncovered class `root`, modifying `pit` in place.
pub fn grow_transversal<S: Scalar>(
    g: &PartitionedGraph,
    pit: &mut Pit,
    root: usize,
    params: &EngineParams<S>,
    mut trace: Option<&mut Trace>,
) -> Result<GrowResult> {
    if root >= g.class_count() || pit.covers(root) {
        return Err(Error::InvalidParameter(format!("class index {root} is not an uncovered class")));
    }
    let guard = iteration_guard(g.class_count(), params);
    let mu = params.mu().clone();
    let rho = params.rho().clone();
    let mut tree = AlternatingTree::new(root);
    if let Some(t) = trace.as_deref_mut() {
        t.begin_call();
    }
    let mut iterations = 0u64;
    loop {
        if let Some(t) = trace.as_deref_mut() {
            t.observe(g, &tree, pit);
        }
        iterations += 1;
        if iterations > guard {
            return Err(Error::InternalInvariantViolation(format!(
                "growth loop exceeded {guard} iterations at depth {}",
                tree.depth()
            )));
        }
        let next = build_on(g, root, &tree.layers, Layer::default(), pit, params);
        let below = tree.y_count_upto(tree.depth());
        let small = S::from_count(next.x.len()) <= rho.clone() * S::from_count(below);
        tree.layers.push(next);
        if small {
            return Ok(GrowResult { tree, flag: GrowFlag::Stuck, iterations });
        }
        loop {
            let l = tree.depth();
            let last = &tree.layers[l - 1];
            let free = immediately_addable(g, pit, &last.x);
            if S::from_count(free.len()) <= mu.clone() * S::from_count(last.x.len()) {
                break;
            }
            if l == 1 {
                let v = *free.first().expect("collapsible layer has a free vertex");
                pit.insert(g, v);
                return Ok(GrowResult { tree, flag: GrowFlag::Augmented, iterations });
            }
            let prev = tree.layers[l - 2].y.clone();
            for w in prev {
                let c = g.class_of(w);
                if let Some(&u) = free.iter().find(|&&u| g.class_of(u) == c) {
                    pit.remove(g, w);
                    pit.insert(g, u);
                    tree.layers[l - 2].y.remove(&w);
                }
            }
            tree.layers.truncate(l - 1);
            tree = superposed_build(g, tree, pit, params);
        }
    }
}
