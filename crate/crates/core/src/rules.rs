//! The aggregation-rule family: credibility weights, weight polytopes, and
//! the aggregation functional that turns an evaluation profile into the
//! decision maker's utility (and hence certainty equivalent) for an act.

use crate::error::{Error, Result};
use crate::prob::{expected_utility, Act, Belief, Profile, Tolerance};
use crate::Real;

/// Credibility weight: a probability distribution over experts.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight<F> {
    lambdas: Vec<F>,
}

impl<F: Real> Weight<F> {
    pub fn new(lambdas: Vec<F>, tol: &Tolerance<F>) -> Result<Self> {
        let mut sum = F::zero();
        for l in &lambdas {
            if !l.is_finite() || *l < -tol.eps_simplex || *l > F::one() + tol.eps_simplex {
                return Err(Error::NotAProbability {
                    sum: l.to_f64().unwrap_or(f64::NAN),
                });
            }
            sum = sum + *l;
        }
        if (sum - F::one()).abs() > tol.eps_simplex {
            return Err(Error::NotAProbability {
                sum: sum.to_f64().unwrap_or(f64::NAN),
            });
        }
        let lambdas = lambdas
            .into_iter()
            .map(|l| l.max(F::zero()).min(F::one()))
            .collect();
        Ok(Self { lambdas })
    }

    /// Degenerate weight e_i putting all mass on one expert.
    pub fn dictator(i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n_experts: n,
            });
        }
        let mut lambdas = vec![F::zero(); n];
        lambdas[i] = F::one();
        Ok(Self { lambdas })
    }

    pub fn n_experts(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[F] {
        &self.lambdas
    }

    pub fn dot(&self, a: &EvalProfile<F>) -> Result<F> {
        if self.n_experts() != a.len() {
            return Err(Error::WrongExpertCount {
                expected: self.n_experts(),
                got: a.len(),
            });
        }
        Ok(self
            .lambdas
            .iter()
            .zip(a.values())
            .fold(F::zero(), |acc, (l, v)| acc + *l * *v))
    }
}

/// Weight polytope given by its vertices; the set is their convex hull.
/// Duplicate vertices are dropped at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet<F> {
    vertices: Vec<Weight<F>>,
}

impl<F: Real> WeightSet<F> {
    pub fn new(vertices: Vec<Weight<F>>, tol: &Tolerance<F>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::NoVertices);
        }
        let n = vertices[0].n_experts();
        let mut kept: Vec<Weight<F>> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if v.n_experts() != n {
                return Err(Error::WrongExpertCount {
                    expected: n,
                    got: v.n_experts(),
                });
            }
            let dup = kept.iter().any(|k| {
                k.lambdas()
                    .iter()
                    .zip(v.lambdas())
                    .all(|(a, b)| (*a - *b).abs() <= tol.eps_simplex)
            });
            if !dup {
                kept.push(v);
            }
        }
        Ok(Self { vertices: kept })
    }

    pub fn singleton(w: Weight<F>) -> Self {
        Self { vertices: vec![w] }
    }

    /// Full simplex over n experts.
    pub fn full_simplex(n: usize) -> Result<Self> {
        let vertices = (0..n)
            .map(|i| Weight::dictator(i, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Weight<F>] {
        &self.vertices
    }

    pub fn n_experts(&self) -> usize {
        self.vertices[0].n_experts()
    }

    /// Minimum of the linear functional over the polytope, attained at a vertex.
    pub fn min_dot(&self, a: &EvalProfile<F>) -> Result<F> {
        let mut best = self.vertices[0].dot(a)?;
        for v in &self.vertices[1..] {
            let val = v.dot(a)?;
            if val < best {
                best = val;
            }
        }
        Ok(best)
    }
}

/// Finite collection of weight polytopes (the dual-self representation).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSetCollection<F> {
    sets: Vec<WeightSet<F>>,
}

impl<F: Real> WeightSetCollection<F> {
    pub fn new(sets: Vec<WeightSet<F>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::NoVertices);
        }
        let n = sets[0].n_experts();
        for s in &sets {
            if s.n_experts() != n {
                return Err(Error::WrongExpertCount {
                    expected: n,
                    got: s.n_experts(),
                });
            }
        }
        Ok(Self { sets })
    }

    pub fn sets(&self) -> &[WeightSet<F>] {
        &self.sets
    }

    pub fn n_experts(&self) -> usize {
        self.sets[0].n_experts()
    }
}

/// Evaluation profile: per-expert expected utilities of one act.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalProfile<F> {
    values: Vec<F>,
}

impl<F: Real> EvalProfile<F> {
    pub fn new(values: Vec<F>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Aggregation rule.
///
/// Linear, multiple-weight, and dictatorship rules embed canonically into the
/// dual-self form; geometric pooling is kept for contrast and is not an
/// evaluation-profile functional.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule<F> {
    Linear(Weight<F>),
    MultipleWeight(WeightSet<F>),
    DualSelf(WeightSetCollection<F>),
    Dictatorship(usize),
    GeometricSeu(Vec<F>),
}

impl<F: Real> Rule<F> {
    /// Number of experts the rule is wired for, when it pins one down.
    pub fn n_experts(&self) -> Option<usize> {
        match self {
            Rule::Linear(w) => Some(w.n_experts()),
            Rule::MultipleWeight(s) => Some(s.n_experts()),
            Rule::DualSelf(c) => Some(c.n_experts()),
            Rule::Dictatorship(_) => None,
            Rule::GeometricSeu(a) => Some(a.len()),
        }
    }

    pub fn is_dual_self_family(&self) -> bool {
        !matches!(self, Rule::GeometricSeu(_))
    }

    /// The aggregation functional I applied to an evaluation profile.
    pub fn functional(&self, a: &EvalProfile<F>) -> Result<F> {
        match self {
            Rule::Linear(w) => w.dot(a),
            Rule::MultipleWeight(s) => s.min_dot(a),
            Rule::DualSelf(c) => {
                let mut best = c.sets()[0].min_dot(a)?;
                for s in &c.sets()[1..] {
                    let val = s.min_dot(a)?;
                    if val > best {
                        best = val;
                    }
                }
                Ok(best)
            }
            Rule::Dictatorship(i) => {
                if *i >= a.len() {
                    return Err(Error::IndexOutOfRange {
                        index: *i,
                        n_experts: a.len(),
                    });
                }
                Ok(a.values()[*i])
            }
            Rule::GeometricSeu(_) => Err(Error::NotProfileFunctional),
        }
    }

    /// U_mu(f), which is also the certainty equivalent of f in utils.
    pub fn utility(&self, profile: &Profile<F>, f: &Act<F>, tol: &Tolerance<F>) -> Result<F> {
        match self {
            Rule::GeometricSeu(alphas) => {
                let pooled = geometric_pooled_belief(alphas, profile, tol)?;
                expected_utility(&pooled, f)
            }
            _ => {
                self.check_arity(profile)?;
                self.functional(&evaluation_profile(profile, f)?)
            }
        }
    }

    fn check_arity(&self, profile: &Profile<F>) -> Result<()> {
        if let Some(n) = self.n_experts() {
            if n != profile.n_experts() {
                return Err(Error::WrongExpertCount {
                    expected: n,
                    got: profile.n_experts(),
                });
            }
        }
        if let Rule::Dictatorship(i) = self {
            if *i >= profile.n_experts() {
                return Err(Error::IndexOutOfRange {
                    index: *i,
                    n_experts: profile.n_experts(),
                });
            }
        }
        Ok(())
    }
}

/// The vector of expert expected utilities of f.
pub fn evaluation_profile<F: Real>(profile: &Profile<F>, f: &Act<F>) -> Result<EvalProfile<F>> {
    let values = profile
        .beliefs()
        .iter()
        .map(|mu| expected_utility(mu, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(EvalProfile::new(values))
}

/// Linear opinion pool p_lambda(mu) = sum_i lambda_i mu_i.
pub fn pooled_belief<F: Real>(
    lambda: &Weight<F>,
    profile: &Profile<F>,
    tol: &Tolerance<F>,
) -> Result<Belief<F>> {
    if lambda.n_experts() != profile.n_experts() {
        return Err(Error::WrongExpertCount {
            expected: lambda.n_experts(),
            got: profile.n_experts(),
        });
    }
    let dim = profile.dim();
    let mut probs = vec![F::zero(); dim];
    for (l, mu) in lambda.lambdas().iter().zip(profile.beliefs()) {
        for w in 0..dim {
            probs[w] = probs[w] + *l * mu.prob(w);
        }
    }
    Belief::new(probs, tol)
}

/// Normalized geometric mean of the expert beliefs; undefined when the
/// supports are disjoint enough that the normalizer vanishes.
/// Convention: 0^a = 0 for a > 0 and 0^0 = 1.
pub fn geometric_pooled_belief<F: Real>(
    alphas: &[F],
    profile: &Profile<F>,
    tol: &Tolerance<F>,
) -> Result<Belief<F>> {
    if alphas.len() != profile.n_experts() {
        return Err(Error::WrongExpertCount {
            expected: alphas.len(),
            got: profile.n_experts(),
        });
    }
    let dim = profile.dim();
    let mut raw = vec![F::one(); dim];
    for w in 0..dim {
        for (a, mu) in alphas.iter().zip(profile.beliefs()) {
            let p = mu.prob(w);
            let factor = if *a == F::zero() {
                F::one()
            } else if p == F::zero() {
                F::zero()
            } else {
                p.powf(*a)
            };
            raw[w] = raw[w] * factor;
        }
    }
    let norm = raw.iter().fold(F::zero(), |acc, x| acc + *x);
    if norm <= tol.eps_simplex {
        return Err(Error::GeometricUndefined);
    }
    Belief::new(raw.into_iter().map(|x| x / norm).collect(), tol)
}

/// The three-expert median rule in its dual-self form:
/// max over the three pairwise vertex hulls of the pairwise min.
pub fn median_rule<F: Real>() -> Rule<F> {
    let tol = Tolerance::standard();
    let pair = |i: usize, j: usize| {
        WeightSet::new(
            vec![
                Weight::dictator(i, 3).unwrap(),
                Weight::dictator(j, 3).unwrap(),
            ],
            &tol,
        )
        .unwrap()
    };
    Rule::DualSelf(WeightSetCollection::new(vec![pair(0, 1), pair(1, 2), pair(0, 2)]).unwrap())
}

/// Dictatorship by expert i out of n.
pub fn dictatorship_rule<F: Real>(i: usize, n: usize) -> Result<Rule<F>> {
    if i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            n_experts: n,
        });
    }
    Ok(Rule::Dictatorship(i))
}
