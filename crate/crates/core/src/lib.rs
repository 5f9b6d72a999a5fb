//! Independent transversals in vertex-partitioned graphs.
//!
//! Given a graph whose vertices are split into classes, [`solve`] either
//! returns an independent set with one vertex in every class, or a set of
//! classes `B` together with a small set `D` that dominates all of them,
//! which proves no transversal exists. Both outcomes come with a
//! [`Certificate`] that [`certify`] checks from scratch.
//!
//! ```
//! use itkit::{solve, verify_certificate, Params, PartitionedGraph, Rational};
//! use itkit::Scalar;
//!
//! // path 0 - 1 - 2 with classes {0, 2} and {1}: no transversal
//! let g = PartitionedGraph::from_parts(3, vec![vec![0, 2], vec![1]], [(0, 1), (1, 2)]).unwrap();
//! let params = Params::clamped(2, Rational::ratio(1, 2)).unwrap();
//! let cert = solve(&g, &params).unwrap();
//! assert!(!cert.is_it());
//! assert!(verify_certificate(&g, &cert).ok);
//! ```
//!
//! The engine is generic over an exact [`Scalar`]; [`Rational`] (arbitrary
//! precision) is the default and the machine-word ratios are faster when the
//! parameters are small.

pub mod apps;
pub mod certificate;
pub mod certify;
pub mod engine;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod scalar;

use num_rational::Ratio;

pub use certificate::{BlockingSet, Certificate, Star};
pub use certify::{brute_force_it, brute_force_perfect_matching, verify_bd, verify_certificate, verify_it, VerificationReport};
pub use engine::{find_it_or_bd, solve, solve_with, EngineParams, SolveOptions, Solution, Trace};
pub use error::{Error, Result};
pub use graph::{claw_free_witness, normalize, NormalizationReport, PartitionedGraph, SimpleGraph};
pub use scalar::{parse_rational, Scalar};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
pub type Rational64 = Ratio<i64>;
pub type Rational128 = Ratio<i128>;

pub type Params = EngineParams<Rational>;
pub type Params64 = EngineParams<Rational64>;
pub type Params128 = EngineParams<Rational128>;

pub type Cert = Certificate<Rational>;
