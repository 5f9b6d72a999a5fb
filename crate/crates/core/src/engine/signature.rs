//! Signature vectors: the lexicographic potential that shrinks on every
//! non-terminating iteration of the growth loop.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::floorlog::floor_log;
use super::params::EngineParams;
use super::tree::AlternatingTree;
use crate::scalar::Scalar;

/// One entry of a signature. An empty `X_i` gives `+inf`, an empty `Y_i` gives `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Coord {
    /// `|s|` with both infinities mapped to `None` (infinite).
    pub fn magnitude(self) -> Option<u64> {
        match self {
            Coord::Finite(v) => Some(v.unsigned_abs()),
            _ => None,
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::NegInf => write!(f, "-inf"),
            Coord::Finite(v) => write!(f, "{v}"),
            Coord::PosInf => write!(f, "+inf"),
        }
    }
}

/// `(s_1, s_2, ..., s_{2l})`, compared lexicographically with an implicit
/// trailing `+inf`, so a proper prefix is larger than any extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub entries: Vec<Coord>,
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        // the terminator ranks above every entry, +inf included
        self.keys().cmp(other.keys())
    }
}

impl Signature {
    fn keys(&self) -> impl Iterator<Item = (u8, Coord)> + '_ {
        self.entries.iter().map(|&c| (0, c)).chain(std::iter::once((1, Coord::PosInf)))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    X,
    Y,
}

/// Computes signatures for one parameter set, caching each floor-log by
/// `(layer, count, side)` since trees reuse the same sizes over and over.
pub struct SignatureCalculator {
    base: BigRational,
    rho: BigRational,
    one_minus_mu: BigRational,
    memo: HashMap<(usize, usize, Side), i64>,
}

impl SignatureCalculator {
    pub fn new<S: Scalar>(params: &EngineParams<S>) -> Self {
        let p = params.to_big();
        Self {
            base: p.base(),
            rho: p.rho().clone(),
            one_minus_mu: BigRational::one() - p.mu(),
            memo: HashMap::new(),
        }
    }

    /// `floor(log_b(rho^-i (1-mu)^-(i-1) |X_i|))` or
    /// `floor(log_b(rho^-i (1-mu)^-i |Y_i|))`, for a positive count.
    fn floor_term(&mut self, i: usize, count: usize, side: Side) -> i64 {
        if let Some(&v) = self.memo.get(&(i, count, side)) {
            return v;
        }
        let k = match side {
            Side::X => i - 1,
            Side::Y => i,
        };
        let denom = pow(&self.rho, i) * pow(&self.one_minus_mu, k);
        let q = BigRational::from_integer(BigInt::from(count)) / denom;
        let v = floor_log(&q, &self.base);
        self.memo.insert((i, count, side), v);
        v
    }

    pub fn coords(&mut self, i: usize, x_count: usize, y_count: usize) -> (Coord, Coord) {
        let s1 = if x_count == 0 { Coord::PosInf } else { Coord::Finite(-self.floor_term(i, x_count, Side::X)) };
        let s2 = if y_count == 0 { Coord::NegInf } else { Coord::Finite(self.floor_term(i, y_count, Side::Y)) };
        (s1, s2)
    }

    pub fn signature(&mut self, tree: &AlternatingTree) -> Signature {
        let mut entries = Vec::with_capacity(2 * tree.depth());
        for (idx, l) in tree.layers.iter().enumerate() {
            let (a, b) = self.coords(idx + 1, l.x.len(), l.y.len());
            entries.push(a);
            entries.push(b);
        }
        Signature { entries }
    }
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    if acc.is_zero() {
        unreachable!("rho and 1 - mu are positive");
    }
    acc
}

/// Signature of `tree` under `params`.
pub fn signature_of<S: Scalar>(tree: &AlternatingTree, params: &EngineParams<S>) -> Signature {
    SignatureCalculator::new(params).signature(tree)
}

/// Whether `|s_1| <= |s_2| <= ...` holds, treating infinities as the largest magnitude.
pub fn magnitudes_non_decreasing(sig: &Signature) -> bool {
    let key = |c: &Coord| c.magnitude().map_or(u128::MAX, u128::from);
    sig.entries.windows(2).all(|w| key(&w[0]) <= key(&w[1]))
}
