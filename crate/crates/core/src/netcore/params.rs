use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Binary action, `-1` or `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Minus,
    Plus,
}

impl Action {
    pub fn from_sign(v: i8) -> Option<Self> {
        match v {
            1 => Some(Action::Plus),
            -1 => Some(Action::Minus),
            _ => None,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Action::Plus => 1,
            Action::Minus => -1,
        }
    }

    pub fn value<S: Scalar>(self) -> S {
        match self {
            Action::Plus => S::one(),
            Action::Minus => -S::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Action::Plus => Action::Minus,
            Action::Minus => Action::Plus,
        }
    }
}

impl Serialize for Action {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_i8(self.sign())
    }
}

/// Whether an agent gains from matching (`epsilon = +1`) or opposing
/// (`epsilon = -1`) the actions it observes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AgentKind {
    Coordinating,
    AntiCoordinating,
}

impl AgentKind {
    pub fn from_sign(v: i8) -> Option<Self> {
        match v {
            1 => Some(AgentKind::Coordinating),
            -1 => Some(AgentKind::AntiCoordinating),
            _ => None,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            AgentKind::Coordinating => 1,
            AgentKind::AntiCoordinating => -1,
        }
    }

    pub fn epsilon<S: Scalar>(self) -> S {
        match self {
            AgentKind::Coordinating => S::one(),
            AgentKind::AntiCoordinating => -S::one(),
        }
    }
}

impl Serialize for AgentKind {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_i8(self.sign())
    }
}

/// Per-agent weights `lambda` (actions) and `beta` (opinions), the interaction
/// kind, and the global advantage `alpha` of action `+1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgentParams<S> {
    lambda: Vec<S>,
    beta: Vec<S>,
    kind: Vec<AgentKind>,
    alpha: S,
}

/// The common values of a homogeneous population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homogeneous<S> {
    pub lambda: S,
    pub beta: S,
    pub kind: AgentKind,
    pub alpha: S,
}

impl<S: Scalar> AgentParams<S> {
    pub fn new(lambda: Vec<S>, beta: Vec<S>, kind: Vec<AgentKind>, alpha: S) -> Result<Self> {
        let n = lambda.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if beta.len() != n {
            return Err(Error::ParamLength { name: "beta", expected: n, got: beta.len() });
        }
        if kind.len() != n {
            return Err(Error::ParamLength { name: "epsilon", expected: n, got: kind.len() });
        }
        for (name, values) in [("lambda", &lambda), ("beta", &beta)] {
            for (index, &v) in values.iter().enumerate() {
                if !(v > S::zero() && v < S::one()) {
                    return Err(Error::ParamRange { name, index, value: v.as_f64() });
                }
            }
        }
        if !alpha.is_finite() || alpha < S::zero() {
            return Err(Error::Alpha(alpha.as_f64()));
        }
        Ok(Self { lambda, beta, kind, alpha })
    }

    pub fn uniform(n: usize, lambda: S, beta: S, kind: AgentKind, alpha: S) -> Result<Self> {
        Self::new(vec![lambda; n], vec![beta; n], vec![kind; n], alpha)
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    #[inline]
    pub fn lambda(&self, i: usize) -> S {
        self.lambda[i]
    }

    #[inline]
    pub fn beta(&self, i: usize) -> S {
        self.beta[i]
    }

    #[inline]
    pub fn kind(&self, i: usize) -> AgentKind {
        self.kind[i]
    }

    #[inline]
    pub fn epsilon(&self, i: usize) -> S {
        self.kind[i].epsilon()
    }

    pub fn alpha(&self) -> S {
        self.alpha
    }

    pub fn lambdas(&self) -> &[S] {
        &self.lambda
    }

    pub fn betas(&self) -> &[S] {
        &self.beta
    }

    pub fn kinds(&self) -> &[AgentKind] {
        &self.kind
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous().is_some()
    }

    /// Common `(lambda, beta, kind)` when every agent shares them exactly.
    pub fn homogeneous(&self) -> Option<Homogeneous<S>> {
        let (l, b, k) = (self.lambda[0], self.beta[0], self.kind[0]);
        let same = self.lambda.iter().all(|&v| v == l)
            && self.beta.iter().all(|&v| v == b)
            && self.kind.iter().all(|&v| v == k);
        same.then_some(Homogeneous { lambda: l, beta: b, kind: k, alpha: self.alpha })
    }

    pub fn with_alpha(&self, alpha: S) -> Result<Self> {
        Self::new(self.lambda.clone(), self.beta.clone(), self.kind.clone(), alpha)
    }
}
