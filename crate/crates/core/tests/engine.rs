use std::collections::BTreeSet;

use itkit::engine::{
    build_layer, extract_bd, find_it_or_bd, floor_log, grow_transversal, immediately_addable, is_addable,
    is_feasible, signature_of, superposed_build, AlternatingTree, Coord, EngineParams, GrowFlag, Layer, Pit,
};
use itkit::{
    brute_force_it, gen, solve, solve_with, verify_bd, verify_certificate, verify_it, Params, PartitionedGraph, Rational,
    Scalar, SolveOptions,
};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn k22() -> PartitionedGraph {
    PartitionedGraph::from_parts(4, vec![vec![0, 1], vec![2, 3]], [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

fn set(vs: &[usize]) -> BTreeSet<usize> {
    vs.iter().copied().collect()
}

// Default tuples

#[test]
fn default_tuple_for_r2_half() {
    let p = Params::default_for(2, q(1, 2)).unwrap();
    assert_eq!(p.mu(), &q(1, 40));
    assert_eq!(p.cap(), &q(40, 1));
    assert_eq!(p.rho(), &q(1, 40));
    assert!(is_feasible(p.mu(), p.cap(), p.rho(), 2, p.eps()));
}

#[test]
fn default_tuple_needs_eps_below_one() {
    assert!(Params::default_for(3, q(1, 1)).is_err());
}

/// Condition (2) written out the other way round: eps (1 - shrink) compared
/// after multiplying through by U (1 - mu).
fn second_condition_cleared(mu: &Rational, cap: &Rational, rho: &Rational, r: usize, eps: &Rational) -> bool {
    let one = Rational::one();
    let r = Rational::from_count(r);
    let lhs = eps * (cap * (&one - mu) - (&one + mu * cap) - rho * (&one - mu));
    let rhs = cap * (mu * (&r + Rational::from_count(4)) + rho * (&r + Rational::from_count(2)));
    lhs > rhs
}

#[test]
fn r5_tenth_tuple_rechecked_independently() {
    let p = Params::default_for(5, q(1, 10)).unwrap();
    assert_eq!(p.mu(), &q(1, 500));
    assert_eq!(p.cap(), &q(500, 1));
    assert!(second_condition_cleared(p.mu(), p.cap(), p.rho(), 5, p.eps()));
    assert!(p.cap() - p.mu() * p.rho() > *p.rho());
}

#[test]
fn third_condition_violation() {
    assert!(!is_feasible(&q(1, 2), &q(1, 1), &q(1, 1), 2, &q(1, 2)));
}

#[test]
fn default_sweep_is_feasible() {
    for r in 2..=6 {
        for k in 1..=9 {
            let eps = q(k, 10);
            let p = Params::default_for(r, eps.clone()).unwrap();
            assert!(second_condition_cleared(p.mu(), p.cap(), p.rho(), r, &eps), "r={r} eps={eps}");
        }
    }
}

#[test]
fn machine_ratios_agree_with_big() {
    let big = Params::default_for(4, q(1, 3)).unwrap();
    let small = itkit::Params64::default_for(4, itkit::Rational64::new(1, 3)).unwrap();
    assert_eq!(small.to_big(), big);
}

// Immediately addable and addable

#[test]
fn immediately_addable_filters_blocked() {
    let g = k22();
    let w = set(&[0, 1, 2, 3]);
    assert_eq!(immediately_addable(&g, &Pit::new(&g), &w), w);
    let pit = Pit::from_vertices(&g, &[2]).unwrap();
    assert!(immediately_addable(&g, &pit, &set(&[0])).is_empty());
    assert_eq!(immediately_addable(&g, &pit, &w), set(&[3]));
}

#[test]
fn addable_clauses() {
    let g = k22();
    let p = Params::default_for(2, q(1, 2)).unwrap();
    let tree = AlternatingTree::new(0);
    assert!(is_addable(&g, &tree, &set(&[]), &set(&[]), &p, 0));
    // not in a frontier class
    assert!(!is_addable(&g, &tree, &set(&[]), &set(&[]), &p, 2));
    // neighbour already in X
    let g2 = PartitionedGraph::from_parts(4, vec![vec![0, 1], vec![2, 3]], [(0, 2), (1, 2), (1, 3)]).unwrap();
    let tree2 = AlternatingTree { root: 0, layers: vec![Layer { x: set(&[0]), y: set(&[]) }] };
    // tree2 has no blockers, so the frontier is empty
    assert!(!is_addable(&g2, &tree2, &set(&[]), &set(&[]), &p, 3));
}

#[test]
fn addable_respects_class_cap() {
    // root class of 3 isolated-from-each-other vertices, cap U = 2
    let g = PartitionedGraph::from_parts(6, vec![vec![0, 1, 2], vec![3, 4, 5]], [(0, 3), (1, 4), (2, 5)]).unwrap();
    // r = 2, eps = 10, (mu, U, rho) = (1/100, 2, 1/100) is feasible
    let p = Params::new(2, q(10, 1), q(1, 100), q(2, 1), q(1, 100)).unwrap();
    let tree = AlternatingTree::new(0);
    assert!(is_addable(&g, &tree, &set(&[0]), &set(&[]), &p, 1));
    assert!(!is_addable(&g, &tree, &set(&[0, 1]), &set(&[]), &p, 2));
    let layer = build_layer(&g, &tree, BTreeSet::new(), BTreeSet::new(), &Pit::new(&g), &p);
    assert_eq!(layer.x, set(&[0, 1]));
}

// BuildLayer

#[test]
fn build_layer_single_vertex_cases() {
    let g = PartitionedGraph::from_parts(2, vec![vec![0], vec![1]], [(0, 1)]).unwrap();
    let p = Params::default_for(2, q(1, 2)).unwrap();
    let tree = AlternatingTree::new(0);
    let free = build_layer(&g, &tree, BTreeSet::new(), BTreeSet::new(), &Pit::new(&g), &p);
    assert_eq!((free.x, free.y), (set(&[0]), set(&[])));
    let pit = Pit::from_vertices(&g, &[1]).unwrap();
    let blocked = build_layer(&g, &tree, BTreeSet::new(), BTreeSet::new(), &pit, &p);
    assert_eq!((blocked.x, blocked.y), (set(&[0]), set(&[1])));
}

/// Re-derives the addable set from scratch after every insertion.
fn slow_build(g: &PartitionedGraph, tree: &AlternatingTree, pit: &Pit, p: &Params) -> Layer {
    let mut x = BTreeSet::new();
    let mut y = BTreeSet::new();
    loop {
        let next = (0..g.n()).find(|&v| is_addable(g, tree, &x, &y, p, v));
        let Some(v) = next else { break };
        x.insert(v);
        for &u in g.neighbours(v) {
            if pit.contains(u) {
                y.insert(u);
            }
        }
    }
    Layer { x, y }
}

fn small_instance() -> impl Strategy<Value = (PartitionedGraph, Vec<usize>)> {
    let pairs: Vec<(usize, usize)> =
        (0..10).flat_map(|u| (u + 1..10).map(move |v| (u, v))).filter(|&(u, v)| u % 4 != v % 4).collect();
    let n = pairs.len();
    (proptest::collection::vec(any::<bool>(), n), proptest::collection::vec(0usize..10, 0..5)).prop_map(
        move |(mask, pit_seed)| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&mask).filter(|(_, &m)| m).map(|(&e, _)| e).collect();
            let classes = (0..4).map(|c| (0..10).filter(|v| v % 4 == c).collect()).collect();
            (PartitionedGraph::from_parts(10, classes, edges).unwrap(), pit_seed)
        },
    )
}

fn greedy_pit(g: &PartitionedGraph, seed: &[usize], skip_class: usize) -> Pit {
    let mut chosen: Vec<usize> = Vec::new();
    for &v in seed {
        if g.class_of(v) != skip_class
            && chosen.iter().all(|&u| g.class_of(u) != g.class_of(v) && !g.has_edge(u, v))
        {
            chosen.push(v);
        }
    }
    Pit::from_vertices(g, &chosen).unwrap()
}

proptest! {
    #[test]
    fn build_layer_matches_fixed_point((g, seed) in small_instance()) {
        let p = Params::default_for(3, q(1, 2)).unwrap();
        let pit = greedy_pit(&g, &seed, 0);
        let mut tree = AlternatingTree::new(0);
        for _ in 0..3 {
            let fast = build_layer(&g, &tree, BTreeSet::new(), BTreeSet::new(), &pit, &p);
            let slow = slow_build(&g, &tree, &pit, &p);
            prop_assert_eq!(&fast, &slow);
            if fast.y.is_empty() {
                break;
            }
            tree.layers.push(fast);
        }
    }
}

// SuperposedBuild

/// Root class {0..5}, each root vertex has a private neighbour in class 1.
fn fan() -> PartitionedGraph {
    let edges = (0..6).map(|v| (v, v + 6));
    PartitionedGraph::from_parts(12, vec![(0..6).collect(), (6..12).collect()], edges).unwrap()
}

fn loose_params() -> Params {
    // mu = 1/4 makes the (1 + mu) threshold visible on a handful of vertices
    Params::new(2, q(5, 1), q(1, 4), q(100, 1), q(1, 100)).unwrap()
}

#[test]
fn superposed_unchanged_without_swap() {
    let g = k22();
    let p = Params::default_for(2, q(1, 2)).unwrap();
    let pit = Pit::from_vertices(&g, &[2]).unwrap();
    let mut tree = AlternatingTree::new(0);
    let l1 = build_layer(&g, &tree, BTreeSet::new(), BTreeSet::new(), &pit, &p);
    tree.layers.push(l1);
    assert_eq!(superposed_build(&g, tree.clone(), &pit, &p), tree);
}

#[test]
fn superposed_replaces_grown_layer_and_truncates() {
    let g = fan();
    let p = loose_params();
    let pit = Pit::from_vertices(&g, &[]).unwrap();
    let tree = AlternatingTree {
        root: 0,
        layers: vec![Layer { x: set(&[0, 1, 2, 3]), y: set(&[]) }, Layer { x: set(&[7]), y: set(&[]) }],
    };
    let out = superposed_build(&g, tree, &pit, &p);
    assert_eq!(out.depth(), 1);
    // 4 -> 6 vertices reaches (1 + 1/4) * 4 = 5
    assert_eq!(out.layers[0].x, set(&[0, 1, 2, 3, 4, 5]));
}

#[test]
fn superposed_ignores_growth_below_threshold() {
    let g = fan();
    let p = loose_params();
    let pit = Pit::from_vertices(&g, &[]).unwrap();
    let tree = AlternatingTree { root: 0, layers: vec![Layer { x: set(&[0, 1, 2, 3, 4]), y: set(&[]) }] };
    // 5 -> 6 vertices stays below (1 + 1/4) * 5
    let out = superposed_build(&g, tree.clone(), &pit, &p);
    assert_eq!(out, tree);
}

// GrowTransversal

#[test]
fn grow_single_free_vertex() {
    let g = PartitionedGraph::from_parts(2, vec![vec![0], vec![1]], [(0, 1)]).unwrap();
    let p = Params::default_for(2, q(1, 2)).unwrap();
    let mut pit = Pit::new(&g);
    let res = grow_transversal(&g, &mut pit, 0, &p, None).unwrap();
    assert_eq!(res.flag, GrowFlag::Augmented);
    assert_eq!(res.iterations, 1);
    assert_eq!(pit.members(), vec![0]);
}

#[test]
fn grow_gets_stuck_on_k22() {
    let g = k22();
    let p = Params::default_for(2, q(1, 2)).unwrap();
    let mut pit = Pit::from_vertices(&g, &[2]).unwrap();
    let res = grow_transversal(&g, &mut pit, 0, &p, None).unwrap();
    assert_eq!(res.flag, GrowFlag::Stuck);
    assert_eq!(res.tree.depth(), 2);
    assert_eq!(res.tree.layers[0], Layer { x: set(&[0]), y: set(&[2]) });
    assert!(res.tree.layers[1].x.is_empty());

    let bd = extract_bd(&g, &res.tree, &pit, &p).unwrap();
    assert_eq!(bd.b, vec![0, 1]);
    assert_eq!(bd.d, vec![0, 2]);
    assert!(verify_bd(&g, &bd).ok);
    // no dominating set of size 1 exists, so |D| = 2 is the least possible
    for v in 0..4 {
        assert!((0..4).any(|u| !g.has_edge(u, v)));
    }
}

#[test]
fn grow_swaps_then_augments() {
    // a=0 blocked by w=1; u=2 shares w's class and is free
    let g = PartitionedGraph::from_parts(5, vec![vec![0], vec![1, 2], vec![3, 4]], [(0, 1), (2, 3), (1, 4)]).unwrap();
    let p = Params::default_for(2, q(1, 2)).unwrap();
    let mut pit = Pit::from_vertices(&g, &[1]).unwrap();
    let res = grow_transversal(&g, &mut pit, 0, &p, None).unwrap();
    assert_eq!(res.flag, GrowFlag::Augmented);
    assert_eq!(pit.members(), vec![0, 2]);
    assert!(!g.has_edge(0, 2));
}

// Driver

#[test]
fn path_has_no_transversal() {
    let g = PartitionedGraph::from_parts(3, vec![vec![0, 2], vec![1]], [(0, 1), (1, 2)]).unwrap();
    assert_eq!(brute_force_it(&g, 1000).unwrap(), None);
    let p = Params::default_for(2, q(1, 2)).unwrap();
    let cert = find_it_or_bd(&g, &p).unwrap();
    let bd = cert.as_bd().expect("blocking set");
    assert!(verify_bd(&g, bd).ok);
}

#[test]
fn isolated_singletons_go_through_extraction() {
    let g = PartitionedGraph::from_parts(2, vec![vec![0], vec![1]], []).unwrap();
    let p = Params::default_for(2, q(1, 2)).unwrap();
    assert!(find_it_or_bd(&g, &p).is_err());
    let t = solve(&g, &p).unwrap();
    let t = t.as_it().unwrap();
    assert!(verify_it(&g, t).ok);
    assert_eq!(t.values().copied().collect::<Vec<_>>(), vec![0, 1]);
}

#[test]
fn machine_word_scalar_runs() {
    let g = itkit::gen::random_partitioned(6, 5, 2, 11);
    let p = itkit::Params64::default_for(3, itkit::Rational64::new(1, 2)).unwrap();
    let cert = solve(&g, &p).unwrap();
    assert!(verify_it(&g, cert.as_it().unwrap()).ok);
}

// Signatures

/// `t` with `b^t <= x < b^(t+1)` for `x, b >= 1`, from a floating estimate
/// confirmed with exact integer powers (cross-multiplied, never reduced).
fn bracketed_floor_log(x: &Rational, b: &Rational) -> i64 {
    let est = (x.to_f64().unwrap().ln() / b.to_f64().unwrap().ln()).floor() as i64;
    // b^t <= x  <=>  bn^t xd <= xn bd^t
    let at_most = |t: i64| {
        let t = t as u32;
        b.numer().pow(t) * x.denom() <= x.numer() * b.denom().pow(t)
    };
    for t in [est - 1, est, est + 1] {
        if t >= 0 && at_most(t) && !at_most(t + 1) {
            return t;
        }
    }
    panic!("estimate {est} is off by more than one");
}

#[test]
fn signature_of_unit_layer() {
    let p = Params::default_for(2, q(1, 2)).unwrap();
    let b = p.base();
    assert_eq!(b, Rational::new(BigInt::from(64000), BigInt::from(63999)));
    let tree = AlternatingTree { root: 0, layers: vec![Layer { x: set(&[1]), y: set(&[2]) }] };
    let sig = signature_of(&tree, &p);
    let s1 = -bracketed_floor_log(&q(40, 1), &b);
    let s2 = bracketed_floor_log(&q(1600, 39), &b);
    assert_eq!(sig.entries, vec![Coord::Finite(s1), Coord::Finite(s2)]);
    assert!(s1.abs() <= s2.abs());
}

#[test]
fn floor_log_hits_exact_powers() {
    let b = q(64000, 63999);
    let x = Rational::new(BigInt::from(64000).pow(25), BigInt::from(63999).pow(25));
    assert_eq!(floor_log(&x, &b), 25);
    let below = &x - Rational::new(BigInt::one(), BigInt::from(10).pow(200));
    assert_eq!(floor_log(&below, &b), 24);
}

#[test]
fn signature_order() {
    use itkit::engine::Signature;
    let s = |v: &[i64]| Signature { entries: v.iter().map(|&x| Coord::Finite(x)).collect() };
    assert!(s(&[-3, 4]) < s(&[-2, 1]));
    // a prefix ranks above its extensions
    assert!(s(&[-3, 4, -5, 6]) < s(&[-3, 4]));
    assert!(Signature { entries: vec![Coord::Finite(-3), Coord::PosInf] } < s(&[-3]));
}

#[test]
fn params_reject_nonpositive() {
    assert!(EngineParams::new(2, q(1, 2), q(0, 1), q(40, 1), q(1, 40)).is_err());
    assert!(EngineParams::new(1, q(1, 2), q(1, 40), q(40, 1), q(1, 40)).is_err());
}

#[test]
fn traced_runs_on_deep_instances() {
    // classes smaller than 2 delta + 1 push the tree several layers deep
    let mut deepest = 0;
    let mut blocked = 0;
    for delta in 2..=4usize {
        for seed in 0..60u64 {
            let m = 6 + (seed % 20) as usize;
            let size = 2 + (seed as usize % (delta - 1));
            let g = gen::random_partitioned(m, size, delta, seed);
            let p = Params::clamped(delta + 1, q(1, delta as i64)).unwrap();
            let sol = solve_with(&g, &p, SolveOptions { trace: true, ..Default::default() }).unwrap();
            let t = sol.trace.unwrap();
            assert!(t.is_clean(), "delta {delta} seed {seed}: {:?}", t.violations);
            deepest = deepest.max(t.max_depth);
            let rep = verify_certificate(&g, &sol.certificate);
            assert!(rep.ok, "delta {delta} seed {seed}: {:?}", rep.messages());
            blocked += usize::from(!sol.certificate.is_it());
        }
    }
    assert!(deepest >= 3, "deepest tree {deepest}");
    assert!(blocked > 0);
}
