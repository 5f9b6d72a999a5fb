//! Optional instrumentation for the growth loop. Every check is exact and
//! records a message instead of aborting, so a run can be inspected whole.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::build::build_on;
use super::params::EngineParams;
use super::signature::{magnitudes_non_decreasing, Signature, SignatureCalculator};
use super::tree::{immediately_addable, AlternatingTree, Pit};
use crate::graph::PartitionedGraph;
use crate::scalar::Scalar;

/// Signatures per growth call plus every invariant violation seen.
pub struct Trace {
    params: EngineParams<BigRational>,
    calc: SignatureCalculator,
    /// One list per call of the growth routine, in call order.
    pub calls: Vec<Vec<Signature>>,
    pub violations: Vec<String>,
    pub iterations: u64,
    pub max_depth: usize,
}

fn count(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Trace {
    pub fn new<S: Scalar>(params: &EngineParams<S>) -> Self {
        Self {
            params: params.to_big(),
            calc: SignatureCalculator::new(params),
            calls: Vec::new(),
            violations: Vec::new(),
            iterations: 0,
            max_depth: 0,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn begin_call(&mut self) {
        self.calls.push(Vec::new());
    }

    /// Runs at the head of every loop iteration, i.e. after the previous
    /// iteration completed.
    pub(crate) fn observe(&mut self, g: &PartitionedGraph, tree: &AlternatingTree, pit: &Pit) {
        self.iterations += 1;
        self.max_depth = self.max_depth.max(tree.depth());
        let call = self.calls.len();
        let it = self.calls.last().map_or(0, |c| c.len());
        let at = format!("call {call}, iteration {it}");
        let p = &self.params;
        let mu = p.mu().clone();
        let rho = p.rho().clone();
        let one = BigRational::one();
        let mut found = Vec::new();

        check_structure(g, tree, pit, &mut found);

        for (idx, l) in tree.layers.iter().enumerate() {
            let i = idx + 1;
            let x = count(l.x.len());
            let free = immediately_addable(g, pit, &l.x).len();
            if count(free) > &mu * &x {
                found.push(format!("layer {i} is collapsible ({free} of {} free)", l.x.len()));
            }
            if count(l.y.len()) < (&one - &mu) * &x {
                found.push(format!("layer {i} has |Y| = {} < (1-mu)|X|, |X| = {}", l.y.len(), l.x.len()));
            }
            let rebuilt = build_on(g, tree.root, &tree.layers[..idx], l.clone(), pit, p);
            if count(rebuilt.x.len()) >= (&one + &mu) * &x {
                found.push(format!("layer {i} regrows from {} to {}", l.x.len(), rebuilt.x.len()));
            }
            let below = tree.y_count_upto(idx);
            if x <= &rho * count(below) {
                found.push(format!("layer {i} has |X| = {} <= rho |Y_<i| = rho {below}", l.x.len()));
            }
        }

        // (1 + rho(1 - mu))^l <= m
        let growth = &one + &rho * (&one - &mu);
        let mut power = one.clone();
        for _ in 0..tree.depth() {
            power *= &growth;
        }
        if power > count(g.class_count()) {
            found.push(format!("depth {} exceeds the logarithmic bound for m = {}", tree.depth(), g.class_count()));
        }

        let sig = self.calc.signature(tree);
        if !magnitudes_non_decreasing(&sig) {
            found.push(format!("signature {sig} is not non-decreasing in absolute value"));
        }
        let history = self.calls.last_mut().expect("begin_call precedes observe");
        if let Some(prev) = history.last() {
            if sig >= *prev {
                found.push(format!("signature did not decrease: {prev} then {sig}"));
            }
        }
        history.push(sig);
        self.violations.extend(found.into_iter().map(|m| format!("{at}: {m}")));
    }
}

fn check_structure(g: &PartitionedGraph, tree: &AlternatingTree, pit: &Pit, found: &mut Vec<String>) {
    let members = pit.members();
    for (k, &u) in members.iter().enumerate() {
        for &v in &members[k + 1..] {
            if g.class_of(u) == g.class_of(v) || g.has_edge(u, v) {
                found.push(format!("partial transversal members {u} and {v} conflict"));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut allowed: BTreeSet<usize> = BTreeSet::from([tree.root]);
    for (idx, l) in tree.layers.iter().enumerate() {
        let i = idx + 1;
        for &v in l.x.iter().chain(&l.y) {
            if !seen.insert(v) {
                found.push(format!("vertex {v} appears twice in the tree"));
            }
        }
        for &x in &l.x {
            if pit.contains(x) {
                found.push(format!("X_{i} contains member {x}"));
            }
            if !allowed.contains(&g.class_of(x)) {
                found.push(format!("X_{i} vertex {x} lies outside the classes of Y_{}", i - 1));
            }
            if g.neighbours(x).iter().any(|u| l.x.contains(u)) {
                found.push(format!("X_{i} is not independent at {x}"));
            }
        }
        let blockers: BTreeSet<usize> = l.x.iter().flat_map(|&x| pit.blockers(g, x)).collect();
        if blockers != l.y {
            found.push(format!("Y_{i} is not the blocker set of X_{i}"));
        }
        for &y in &l.y {
            let hits = g.neighbours(y).iter().filter(|u| l.x.contains(u)).count();
            if hits != 1 {
                found.push(format!("Y_{i} vertex {y} has {hits} neighbours in X_{i}"));
            }
        }
        allowed = l.y.iter().map(|&y| g.class_of(y)).collect();
    }
}
