//! Finite state spaces, probability vectors, events, Bayesian conditioning,
//! and utility acts. All types are immutable after construction.

use crate::error::{Error, Result};
use crate::{lit, Real};

/// Numeric tolerance policy shared across the crate.
///
/// `eps_simplex` absorbs Bayes-rule rounding in probability vectors,
/// `eps_value` governs utility comparisons, and `eps_bisect` is the
/// terminal bracket width for certainty-equivalent bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<F> {
    pub eps_simplex: F,
    pub eps_value: F,
    pub eps_bisect: F,
}

impl<F: Real> Tolerance<F> {
    pub fn new(eps_simplex: F, eps_value: F, eps_bisect: F) -> Result<Self> {
        let zero = F::zero();
        if eps_simplex <= zero || eps_value <= zero || eps_bisect <= zero || eps_bisect > eps_value
        {
            return Err(Error::BadTolerance);
        }
        Ok(Self {
            eps_simplex,
            eps_value,
            eps_bisect,
        })
    }

    pub fn standard() -> Self {
        Self {
            eps_simplex: lit(1e-9),
            eps_value: lit(1e-8),
            eps_bisect: lit(1e-10),
        }
    }
}

impl<F: Real> Default for Tolerance<F> {
    fn default() -> Self {
        Self::standard()
    }
}

/// Named finite state space with at least three states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    labels: Vec<String>,
}

impl StateSpace {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 3 {
            return Err(Error::StateSpaceTooSmall {
                min: 3,
                got: labels.len(),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Non-empty set of state indices; the complement lives in the same space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    members: Vec<usize>,
    n_states: usize,
}

impl Event {
    pub fn new(mut members: Vec<usize>, n_states: usize) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::EmptyEvent);
        }
        if let Some(&bad) = members.iter().find(|&&i| i >= n_states) {
            return Err(Error::StateOutOfRange {
                index: bad,
                n_states,
            });
        }
        Ok(Self { members, n_states })
    }

    pub fn full(n_states: usize) -> Self {
        Self {
            members: (0..n_states).collect(),
            n_states,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn contains(&self, state: usize) -> bool {
        self.members.binary_search(&state).is_ok()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.n_states
    }

    /// Complement within the same state space; errors if the event is full.
    pub fn complement(&self) -> Result<Event> {
        let members: Vec<usize> = (0..self.n_states).filter(|w| !self.contains(*w)).collect();
        Event::new(members, self.n_states)
    }
}

/// Probability vector over states: an expert's suggested prior.
#[derive(Debug, Clone, PartialEq)]
pub struct Belief<F> {
    probs: Vec<F>,
}

impl<F: Real> Belief<F> {
    /// Entries are clamped to [0,1]; the sum must be 1 within `eps_simplex`.
    pub fn new(probs: Vec<F>, tol: &Tolerance<F>) -> Result<Self> {
        let mut sum = F::zero();
        for p in &probs {
            if !p.is_finite() || *p < -tol.eps_simplex || *p > F::one() + tol.eps_simplex {
                return Err(Error::NotAProbability {
                    sum: p.to_f64().unwrap_or(f64::NAN),
                });
            }
            sum = sum + *p;
        }
        if (sum - F::one()).abs() > tol.eps_simplex {
            return Err(Error::NotAProbability {
                sum: sum.to_f64().unwrap_or(f64::NAN),
            });
        }
        let probs = probs
            .into_iter()
            .map(|p| p.max(F::zero()).min(F::one()))
            .collect();
        Ok(Self { probs })
    }

    /// Point mass on one state.
    pub fn degenerate(state: usize, dim: usize) -> Result<Self> {
        if state >= dim {
            return Err(Error::StateOutOfRange {
                index: state,
                n_states: dim,
            });
        }
        let mut probs = vec![F::zero(); dim];
        probs[state] = F::one();
        Ok(Self { probs })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[F] {
        &self.probs
    }

    pub fn prob(&self, state: usize) -> F {
        self.probs[state]
    }

    pub fn event_prob(&self, event: &Event) -> Result<F> {
        self.check_dim(event.n_states())?;
        Ok(event
            .members()
            .iter()
            .fold(F::zero(), |acc, &w| acc + self.probs[w]))
    }

    /// Bayesian conditioning: mu^E(G) = mu(G and E) / mu(E).
    pub fn condition(&self, event: &Event, tol: &Tolerance<F>) -> Result<Belief<F>> {
        let mass = self.event_prob(event)?;
        if mass <= tol.eps_simplex {
            return Err(Error::ZeroProbabilityEvent);
        }
        let probs = (0..self.dim())
            .map(|w| {
                if event.contains(w) {
                    self.probs[w] / mass
                } else {
                    F::zero()
                }
            })
            .collect();
        Belief::new(probs, tol)
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other,
            });
        }
        Ok(())
    }
}

/// Ordered list of expert beliefs over a common state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile<F> {
    beliefs: Vec<Belief<F>>,
}

impl<F: Real> Profile<F> {
    pub fn new(beliefs: Vec<Belief<F>>) -> Result<Self> {
        let dim = match beliefs.first() {
            Some(b) => b.dim(),
            None => return Err(Error::NoVertices),
        };
        for b in &beliefs {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: b.dim(),
                });
            }
        }
        Ok(Self { beliefs })
    }

    pub fn n_experts(&self) -> usize {
        self.beliefs.len()
    }

    pub fn dim(&self) -> usize {
        self.beliefs[0].dim()
    }

    pub fn beliefs(&self) -> &[Belief<F>] {
        &self.beliefs
    }

    pub fn belief(&self, i: usize) -> &Belief<F> {
        &self.beliefs[i]
    }

    /// True iff every expert assigns positive probability to the event,
    /// i.e. the event is in E(mu).
    pub fn is_conditionable(&self, event: &Event, tol: &Tolerance<F>) -> bool {
        self.beliefs
            .iter()
            .all(|b| matches!(b.event_prob(event), Ok(p) if p > tol.eps_simplex))
    }

    /// Component-wise Bayesian conditioning of the whole profile.
    pub fn condition(&self, event: &Event, tol: &Tolerance<F>) -> Result<Profile<F>> {
        let mut out = Vec::with_capacity(self.n_experts());
        for (i, b) in self.beliefs.iter().enumerate() {
            match b.condition(event, tol) {
                Ok(cond) => out.push(cond),
                Err(Error::ZeroProbabilityEvent) => {
                    return Err(Error::EventNotConditionable { expert: i })
                }
                Err(e) => return Err(e),
            }
        }
        Profile::new(out)
    }
}

/// State-contingent payoff in utility units.
#[derive(Debug, Clone, PartialEq)]
pub struct Act<F> {
    utils: Vec<F>,
}

impl<F: Real> Act<F> {
    pub fn new(utils: Vec<F>) -> Result<Self> {
        if utils.is_empty() || utils.iter().any(|u| !u.is_finite()) {
            return Err(Error::NonFiniteUtility);
        }
        Ok(Self { utils })
    }

    pub fn constant(value: F, dim: usize) -> Result<Self> {
        Act::new(vec![value; dim])
    }

    pub fn dim(&self) -> usize {
        self.utils.len()
    }

    pub fn utils(&self) -> &[F] {
        &self.utils
    }

    pub fn util(&self, state: usize) -> F {
        self.utils[state]
    }
}

/// EU_mu(f) = sum over states of mu(w) * f(w).
pub fn expected_utility<F: Real>(mu: &Belief<F>, f: &Act<F>) -> Result<F> {
    if mu.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            left: mu.dim(),
            right: f.dim(),
        });
    }
    Ok(mu
        .probs()
        .iter()
        .zip(f.utils())
        .fold(F::zero(), |acc, (p, u)| acc + *p * *u))
}

/// The composite act fEg: f on E, g off E.
pub fn composite_act<F: Real>(f: &Act<F>, event: &Event, g: &Act<F>) -> Result<Act<F>> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    if f.dim() != event.n_states() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: event.n_states(),
        });
    }
    let utils = (0..f.dim())
        .map(|w| if event.contains(w) { f.util(w) } else { g.util(w) })
        .collect();
    Act::new(utils)
}

/// Pointwise convex combination alpha*f + (1-alpha)*g with alpha in (0,1).
pub fn mix_acts<F: Real>(f: &Act<F>, g: &Act<F>, alpha: F) -> Result<Act<F>> {
    if alpha <= F::zero() || alpha >= F::one() {
        return Err(Error::AlphaOutOfRange);
    }
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    let utils = f
        .utils()
        .iter()
        .zip(g.utils())
        .map(|(a, b)| alpha * *a + (F::one() - alpha) * *b)
        .collect();
    Act::new(utils)
}
