use serde::Serialize;

use super::graph::{inspect_layer, LayerReport, WeightedGraph};
use super::params::Action;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Action layer `A` (who observes whose actions) and opinion layer `W`
/// (who listens to whose opinions). Both row-stochastic.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoLayerNetwork<S> {
    a: WeightedGraph<S>,
    w: WeightedGraph<S>,
}

impl<S: Scalar> TwoLayerNetwork<S> {
    pub fn new(a: WeightedGraph<S>, w: WeightedGraph<S>) -> Result<Self> {
        if a.n() != w.n() {
            return Err(Error::LayerSize { a: a.n(), w: w.n() });
        }
        for (layer, g) in [('A', &a), ('W', &w)] {
            for i in 0..g.n() {
                let sum = g.row_sum(i);
                if (sum - S::one()).abs().as_f64() > S::STOCHASTIC_TOL {
                    return Err(Error::NotStochastic { layer, row: i, sum: sum.as_f64(), tol: S::STOCHASTIC_TOL });
                }
            }
        }
        Ok(Self { a, w })
    }

    /// Both layers equal to `g`.
    pub fn single(g: WeightedGraph<S>) -> Result<Self> {
        Self::new(g.clone(), g)
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a(&self) -> &WeightedGraph<S> {
        &self.a
    }

    pub fn w(&self) -> &WeightedGraph<S> {
        &self.w
    }

    /// `A == W` entry-wise.
    pub fn layers_identical(&self) -> bool {
        self.a == self.w
    }

    pub fn is_symmetric(&self) -> bool {
        self.a.is_symmetric() && self.w.is_symmetric()
    }

    pub fn cast<T: Scalar>(&self) -> TwoLayerNetwork<T> {
        TwoLayerNetwork { a: self.a.cast(), w: self.w.cast() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub layers_identical: bool,
    pub layers: Vec<LayerReport>,
}

/// Row-sum, sign, and symmetry report for both layers.
pub fn validate_network<S: Scalar>(net: &TwoLayerNetwork<S>) -> ValidationReport {
    validate_layers(net.a(), net.w())
}

/// Same report for layers that have not (yet) been accepted into a network.
pub fn validate_layers<S: Scalar>(a: &WeightedGraph<S>, w: &WeightedGraph<S>) -> ValidationReport {
    let layers = vec![inspect_layer('A', a.n(), a.weights()), inspect_layer('W', w.n(), w.weights())];
    ValidationReport {
        valid: a.n() == w.n() && layers.iter().all(LayerReport::valid),
        layers_identical: a == w,
        layers,
    }
}

/// Joint profile of actions `x` and opinions `y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationState<S> {
    actions: Vec<Action>,
    opinions: Vec<S>,
}

impl<S: Scalar> PopulationState<S> {
    pub fn new(actions: Vec<Action>, opinions: Vec<S>) -> Result<Self> {
        if actions.is_empty() {
            return Err(Error::Empty);
        }
        if actions.len() != opinions.len() {
            return Err(Error::StateSize { n: actions.len(), got: opinions.len() });
        }
        for (index, &y) in opinions.iter().enumerate() {
            if !(y >= -S::one() && y <= S::one()) {
                return Err(Error::OpinionRange { index, value: y.as_f64() });
            }
        }
        Ok(Self { actions, opinions })
    }

    /// Builds a state from numeric actions, each of which must be exactly `±1`.
    pub fn from_values(x: &[S], y: Vec<S>) -> Result<Self> {
        let actions = x
            .iter()
            .enumerate()
            .map(|(index, &v)| {
                if v == S::one() {
                    Ok(Action::Plus)
                } else if v == -S::one() {
                    Ok(Action::Minus)
                } else {
                    Err(Error::ActionValue { index, value: v.as_f64() })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(actions, y)
    }

    /// Every agent plays `a` and holds opinion `a`.
    pub fn consensus(n: usize, a: Action) -> Self {
        Self { actions: vec![a; n], opinions: vec![a.value(); n] }
    }

    pub fn n(&self) -> usize {
        self.actions.len()
    }

    #[inline]
    pub fn action(&self, i: usize) -> Action {
        self.actions[i]
    }

    #[inline]
    pub fn x(&self, i: usize) -> S {
        self.actions[i].value()
    }

    #[inline]
    pub fn y(&self, i: usize) -> S {
        self.opinions[i]
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn opinions(&self) -> &[S] {
        &self.opinions
    }

    /// Replaces agent `i`'s strategy. The opinion must lie in `[-1, 1]`.
    pub fn with_agent(&self, i: usize, action: Action, opinion: S) -> Result<Self> {
        if i >= self.n() {
            return Err(Error::Index { index: i, n: self.n() });
        }
        if !(opinion >= -S::one() && opinion <= S::one()) {
            return Err(Error::OpinionRange { index: i, value: opinion.as_f64() });
        }
        let mut next = self.clone();
        next.actions[i] = action;
        next.opinions[i] = opinion;
        Ok(next)
    }

    pub(crate) fn set_agent(&mut self, i: usize, action: Action, opinion: S) {
        self.actions[i] = action;
        self.opinions[i] = opinion;
    }

    pub fn check_size(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::StateSize { n, got: self.n() });
        }
        Ok(())
    }
}
