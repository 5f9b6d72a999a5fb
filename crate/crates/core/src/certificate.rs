//! Engine outcomes and their JSON form.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::engine::EngineParams;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Scalar};

/// One component of a constellation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// The second outcome: classes `b` whose union is dominated by `d`, and a
/// constellation for `b0` inside `d`. Classes are given by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingSet<S: Scalar = BigRational> {
    pub b: Vec<usize>,
    pub b0: Vec<usize>,
    pub d: Vec<usize>,
    pub constellation: Vec<Star>,
    pub params: EngineParams<S>,
}

impl<S: Scalar> BlockingSet<S> {
    /// Vertices of the constellation, sorted.
    pub fn constellation_vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> =
            self.constellation.iter().flat_map(|s| std::iter::once(s.center).chain(s.leaves.iter().copied())).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate<S: Scalar = BigRational> {
    /// Class label to chosen vertex.
    It(BTreeMap<usize, usize>),
    Bd(BlockingSet<S>),
}

impl<S: Scalar> Certificate<S> {
    pub fn is_it(&self) -> bool {
        matches!(self, Certificate::It(_))
    }

    pub fn as_it(&self) -> Option<&BTreeMap<usize, usize>> {
        match self {
            Certificate::It(t) => Some(t),
            Certificate::Bd(_) => None,
        }
    }

    pub fn as_bd(&self) -> Option<&BlockingSet<S>> {
        match self {
            Certificate::Bd(b) => Some(b),
            Certificate::It(_) => None,
        }
    }

    /// Renames every vertex through `f`; class labels are untouched.
    pub fn map_vertices(self, f: impl Fn(usize) -> usize) -> Self {
        match self {
            Certificate::It(t) => Certificate::It(t.into_iter().map(|(c, v)| (c, f(v))).collect()),
            Certificate::Bd(mut bd) => {
                let mut d: Vec<usize> = bd.d.iter().map(|&v| f(v)).collect();
                d.sort_unstable();
                bd.d = d;
                for s in &mut bd.constellation {
                    s.center = f(s.center);
                    for l in &mut s.leaves {
                        *l = f(*l);
                    }
                    s.leaves.sort_unstable();
                }
                bd.constellation.sort_by_key(|s| s.center);
                Certificate::Bd(bd)
            }
        }
    }

    pub fn to_wire(&self) -> WireCertificate {
        match self {
            Certificate::It(t) => WireCertificate::It { transversal: t.clone() },
            Certificate::Bd(bd) => WireCertificate::Bd {
                b: bd.b.clone(),
                b0: bd.b0.clone(),
                d: bd.d.clone(),
                constellation: bd.constellation.clone(),
                params: WireParams::from_params(&bd.params),
            },
        }
    }

    pub fn from_wire(w: WireCertificate) -> Result<Self> {
        Ok(match w {
            WireCertificate::It { transversal } => Certificate::It(transversal),
            WireCertificate::Bd { b, b0, d, constellation, params } => {
                Certificate::Bd(BlockingSet { b, b0, d, constellation, params: params.to_params()? })
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("certificate serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_wire()).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_wire(serde_json::from_str(s)?)
    }
}

// JSON object keys are strings, and a tagged enum buffers its body before
// picking the variant, so integer keys have to be parsed by hand.
mod label_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
        m.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<String, usize>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<usize, usize>, D::Error> {
        BTreeMap::<String, usize>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(|_| D::Error::custom(format!("class label {k:?} is not an integer"))))
            .collect()
    }
}

/// Serialized layout of a [`Certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum WireCertificate {
    It {
        #[serde(with = "label_keys")]
        transversal: BTreeMap<usize, usize>,
    },
    Bd {
        #[serde(rename = "B")]
        b: Vec<usize>,
        #[serde(rename = "B0")]
        b0: Vec<usize>,
        #[serde(rename = "D")]
        d: Vec<usize>,
        constellation: Vec<Star>,
        params: WireParams,
    },
}

/// Parameters with every rational written as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireParams {
    pub r: usize,
    pub eps: String,
    pub mu: String,
    #[serde(rename = "U")]
    pub cap: String,
    pub rho: String,
}

impl WireParams {
    pub fn from_params<S: Scalar>(p: &EngineParams<S>) -> Self {
        Self {
            r: p.r(),
            eps: format_rational(p.eps()),
            mu: format_rational(p.mu()),
            cap: format_rational(p.cap()),
            rho: format_rational(p.rho()),
        }
    }

    pub fn to_params<S: Scalar>(&self) -> Result<EngineParams<S>> {
        EngineParams::new(
            self.r,
            parse_rational(&self.eps)?,
            parse_rational(&self.mu)?,
            parse_rational(&self.cap)?,
            parse_rational(&self.rho)?,
        )
        .map_err(|e| match e {
            Error::InfeasibleParams(m) => Error::InvalidParameter(format!("certificate parameters: {m}")),
            other => other,
        })
    }
}
