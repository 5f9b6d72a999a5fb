use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Scalar};

/// The engine constants: claw bound `r`, target slack `eps`, and the lazy-update
/// tuple `(mu, U, rho)`.
#[derive(Clone, PartialEq, Eq)]
pub struct EngineParams<S> {
    r: usize,
    eps: S,
    mu: S,
    cap: S,
    rho: S,
}

impl<S: Scalar> EngineParams<S> {
    /// Checks positivity, `mu < 1` and the three feasibility inequalities.
    pub fn new(r: usize, eps: S, mu: S, cap: S, rho: S) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
        }
        if !eps.is_positive() || !mu.is_positive() || !cap.is_positive() || !rho.is_positive() {
            return Err(Error::InvalidParameter(
                "eps, mu, U and rho must all be positive".to_string(),
            ));
        }
        if !is_feasible(&mu, &cap, &rho, r, &eps) {
            return Err(Error::InfeasibleParams(format!(
                "(mu, U, rho) = ({}, {}, {}) is not feasible for r = {r}, eps = {}",
                format_rational(&mu),
                format_rational(&cap),
                format_rational(&rho),
                format_rational(&eps)
            )));
        }
        Ok(Self { r, eps, mu, cap, rho })
    }

    /// The standard tuple `(eps/10r, 10r/eps, eps/10r)`, stated for `0 < eps < 1`.
    pub fn default_for(r: usize, eps: S) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
        }
        if !eps.is_positive() || eps >= S::one() {
            return Err(Error::InvalidParameter(format!(
                "the default tuple needs 0 < eps < 1, got {}",
                format_rational(&eps)
            )));
        }
        let tenr = S::from_count(10 * r);
        let small = eps.clone() / tenr.clone();
        let cap = tenr / eps.clone();
        Self::new(r, eps, small.clone(), cap, small)
    }

    /// Like [`default_for`](Self::default_for) but accepts `eps >= 1`: the
    /// tuple is built for `min(eps, 1/2)` while the certified bound keeps the
    /// caller's `eps`.
    pub fn clamped(r: usize, eps: S) -> Result<Self> {
        let half = S::ratio(1, 2);
        if eps >= S::one() {
            let inner = Self::default_for(r, half)?;
            return Self::new(r, eps, inner.mu, inner.cap, inner.rho);
        }
        Self::default_for(r, eps)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn eps(&self) -> &S {
        &self.eps
    }

    pub fn mu(&self) -> &S {
        &self.mu
    }

    /// The per-class cap `U`.
    pub fn cap(&self) -> &S {
        &self.cap
    }

    pub fn rho(&self) -> &S {
        &self.rho
    }

    /// Signature base `b = U / (U - mu rho)`.
    pub fn base(&self) -> S {
        self.cap.clone() / (self.cap.clone() - self.mu.clone() * self.rho.clone())
    }

    pub fn to_big(&self) -> EngineParams<BigRational> {
        EngineParams {
            r: self.r,
            eps: self.eps.to_big_rational(),
            mu: self.mu.to_big_rational(),
            cap: self.cap.to_big_rational(),
            rho: self.rho.to_big_rational(),
        }
    }
}

impl<S: Scalar> fmt::Debug for EngineParams<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EngineParams")
            .field("r", &self.r)
            .field("eps", &format_rational(&self.eps))
            .field("mu", &format_rational(&self.mu))
            .field("U", &format_rational(&self.cap))
            .field("rho", &format_rational(&self.rho))
            .finish()
    }
}

/// Exact truth of the three feasibility inequalities for `(mu, U, rho)`
/// against `(r, eps)`.
pub fn is_feasible<S: Scalar>(mu: &S, cap: &S, rho: &S, r: usize, eps: &S) -> bool {
    let one = S::one();
    let two = S::from_count(2);
    if !mu.is_positive() || !cap.is_positive() || !rho.is_positive() || *mu >= one {
        return false;
    }
    let r = S::from_count(r);
    let one_minus_mu = one.clone() - mu.clone();
    // 1 - (1/U) ((1 + mu U)/(1 - mu) + rho)
    let shrink = one.clone()
        - ((one.clone() + mu.clone() * cap.clone()) / one_minus_mu.clone() + rho.clone())
            / cap.clone();
    let first_rhs = (two.clone()
        + mu.clone() * (r.clone() + two.clone())
        + rho.clone() * (r.clone() + one.clone()))
        / one_minus_mu.clone();
    let second_rhs = (mu.clone() * (r.clone() + S::from_count(4))
        + rho.clone() * (r + two.clone()))
        / one_minus_mu;
    let first = (two + eps.clone()) * shrink.clone() > first_rhs;
    let second = eps.clone() * shrink > second_rhs;
    let third = cap.clone() - mu.clone() * rho.clone() > rho.clone();
    first && second && third
}

/// Free-function form of [`EngineParams::default_for`].
pub fn default_params<S: Scalar>(r: usize, eps: S) -> Result<EngineParams<S>> {
    EngineParams::default_for(r, eps)
}
