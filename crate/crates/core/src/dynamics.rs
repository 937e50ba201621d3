//! Profile-level updating machinery: disagreement predicates, conditional
//! certainty equivalents (Bayesian update of the decision maker's preference
//! at the value level), and the closed-form decomposition available when
//! expert disagreement is restricted within the conditioning event.

use crate::error::{Error, Result};
use crate::prob::{composite_act, expected_utility, Act, Event, Profile, Tolerance};
use crate::rules::Rule;
use crate::Real;

/// Outcome of a sampled conditional comparison f vs g given E.
///
/// The conditional preference quantifies over all continuation acts h, so a
/// sampled check can soundly refute it (with a concrete witness) but can only
/// gather evidence that it holds.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<F> {
    Holds,
    Fails(Act<F>),
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalComparison<F> {
    pub verdict: Verdict<F>,
    pub samples_used: usize,
}

/// Per-h certainty equivalents of f conditional on E, plus their spread.
/// A spread within `eps_value` certifies a well-defined conditional value on
/// the sampled h-set.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalCe<F> {
    pub value_by_h: Vec<(Act<F>, F)>,
    pub spread: F,
}

impl<F: Real> ConditionalCe<F> {
    pub fn values(&self) -> impl Iterator<Item = F> + '_ {
        self.value_by_h.iter().map(|(_, c)| *c)
    }
}

/// True iff all experts agree entrywise (within eps_simplex) on every state
/// outside E.
pub fn disagreement_restricted_within<F: Real>(
    profile: &Profile<F>,
    event: &Event,
    tol: &Tolerance<F>,
) -> bool {
    let first = profile.belief(0);
    profile.beliefs().iter().all(|b| {
        (0..profile.dim())
            .filter(|w| !event.contains(*w))
            .all(|w| (b.prob(w) - first.prob(w)).abs() <= tol.eps_simplex)
    })
}

/// True iff all experts assign the same probability to E.
pub fn agree_on_event<F: Real>(profile: &Profile<F>, event: &Event, tol: &Tolerance<F>) -> bool {
    let first = match profile.belief(0).event_prob(event) {
        Ok(p) => p,
        Err(_) => return false,
    };
    profile
        .beliefs()
        .iter()
        .all(|b| matches!(b.event_prob(event), Ok(p) if (p - first).abs() <= tol.eps_simplex))
}

// Bisection brackets start one unit past the act's utility range on E and
// grow geometrically; the cap only trips on non-monotone custom rules.
const BRACKET_GROWTH_CAP: u32 = 20;

/// The unique constant c with U(fEh) = U((c 1)Eh), found by bisection.
/// Well-defined because every pooled belief puts positive mass on E, so the
/// map c -> U((c 1)Eh) is continuous and strictly increasing.
fn conditional_ce_for_h<F: Real>(
    rule: &Rule<F>,
    profile: &Profile<F>,
    event: &Event,
    f: &Act<F>,
    h: &Act<F>,
    tol: &Tolerance<F>,
) -> Result<F> {
    let target = rule.utility(profile, &composite_act(f, event, h)?, tol)?;
    let eval = |c: F| -> Result<F> {
        let constant = Act::constant(c, f.dim())?;
        rule.utility(profile, &composite_act(&constant, event, h)?, tol)
    };

    let on_event: Vec<F> = event.members().iter().map(|&w| f.util(w)).collect();
    let mut lo = on_event.iter().cloned().fold(F::infinity(), F::min) - F::one();
    let mut hi = on_event.iter().cloned().fold(F::neg_infinity(), F::max) + F::one();
    let initial_width = hi - lo;

    let mut grow = 0u32;
    while eval(lo)? > target {
        lo = lo - (hi - lo);
        grow += 1;
        if grow > BRACKET_GROWTH_CAP || (hi - lo) > initial_width * crate::lit(2f64.powi(20)) {
            return Err(Error::BracketFailure);
        }
    }
    grow = 0;
    while eval(hi)? < target {
        hi = hi + (hi - lo);
        grow += 1;
        if grow > BRACKET_GROWTH_CAP || (hi - lo) > initial_width * crate::lit(2f64.powi(20)) {
            return Err(Error::BracketFailure);
        }
    }

    while hi - lo > tol.eps_bisect {
        let mid = (lo + hi) / crate::lit(2.0);
        if eval(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / crate::lit(2.0))
}

/// Certainty equivalent of f conditional on E, computed per sampled h.
pub fn conditional_ce<F: Real>(
    rule: &Rule<F>,
    profile: &Profile<F>,
    event: &Event,
    f: &Act<F>,
    h_samples: &[Act<F>],
    tol: &Tolerance<F>,
) -> Result<ConditionalCe<F>> {
    if h_samples.is_empty() {
        return Err(Error::NoSamples);
    }
    require_conditionable(profile, event, tol)?;
    let mut value_by_h = Vec::with_capacity(h_samples.len());
    let mut min = F::infinity();
    let mut max = F::neg_infinity();
    for h in h_samples {
        let ce = conditional_ce_for_h(rule, profile, event, f, h, tol)?;
        min = min.min(ce);
        max = max.max(ce);
        value_by_h.push((h.clone(), ce));
    }
    Ok(ConditionalCe {
        value_by_h,
        spread: max - min,
    })
}

/// Sampled check of "f is conditionally preferred over g given E".
pub fn conditional_compare<F: Real>(
    rule: &Rule<F>,
    profile: &Profile<F>,
    event: &Event,
    f: &Act<F>,
    g: &Act<F>,
    h_samples: &[Act<F>],
    tol: &Tolerance<F>,
) -> Result<ConditionalComparison<F>> {
    require_conditionable(profile, event, tol)?;
    if h_samples.is_empty() {
        return Ok(ConditionalComparison {
            verdict: Verdict::Unknown,
            samples_used: 0,
        });
    }
    for (used, h) in h_samples.iter().enumerate() {
        let uf = rule.utility(profile, &composite_act(f, event, h)?, tol)?;
        let ug = rule.utility(profile, &composite_act(g, event, h)?, tol)?;
        if uf < ug - tol.eps_value {
            return Ok(ConditionalComparison {
                verdict: Verdict::Fails(h.clone()),
                samples_used: used + 1,
            });
        }
    }
    Ok(ConditionalComparison {
        verdict: Verdict::Holds,
        samples_used: h_samples.len(),
    })
}

/// Closed-form value of fEh when disagreement is restricted within E:
/// alpha * U(profile^E, f) + (1 - alpha) * EU(mu_0, h), where alpha is the
/// common prior probability of E and mu_0 the common conditional on E^c.
pub fn restricted_decomposition<F: Real>(
    rule: &Rule<F>,
    profile: &Profile<F>,
    event: &Event,
    f: &Act<F>,
    h: &Act<F>,
    tol: &Tolerance<F>,
) -> Result<F> {
    if event.is_full() {
        return Err(Error::DisagreementNotRestricted);
    }
    if !disagreement_restricted_within(profile, event, tol) {
        return Err(Error::DisagreementNotRestricted);
    }
    require_conditionable(profile, event, tol)?;

    let alpha = profile.belief(0).event_prob(event)?;
    // Definition of restricted disagreement forces agreement on alpha; a
    // mismatch here means malformed inputs slipped past the predicate.
    for (i, b) in profile.beliefs().iter().enumerate() {
        let a_i = b.event_prob(event)?;
        if (a_i - alpha).abs() > tol.eps_simplex * crate::lit(profile.dim() as f64) {
            return Err(Error::EventNotConditionable { expert: i });
        }
    }

    let conditioned = profile.condition(event, tol)?;
    let head = rule.utility(&conditioned, f, tol)?;

    let off = event.complement()?;
    let mu0 = profile.belief(0).condition(&off, tol)?;
    let tail = expected_utility(&mu0, h)?;
    Ok(alpha * head + (F::one() - alpha) * tail)
}

fn require_conditionable<F: Real>(
    profile: &Profile<F>,
    event: &Event,
    tol: &Tolerance<F>,
) -> Result<()> {
    for (i, b) in profile.beliefs().iter().enumerate() {
        if b.event_prob(event)? <= tol.eps_simplex {
            return Err(Error::EventNotConditionable { expert: i });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::Belief;
    use crate::rules::{pooled_belief, Rule, Weight, WeightSet};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance<f64> {
        Tolerance::standard()
    }

    fn belief(v: &[f64]) -> Belief<f64> {
        Belief::new(v.to_vec(), &tol()).unwrap()
    }

    fn two_expert_profile() -> Profile<f64> {
        Profile::new(vec![belief(&[0.6, 0.2, 0.2]), belief(&[0.2, 0.6, 0.2])]).unwrap()
    }

    #[test]
    fn restricted_predicate_examples() {
        let e12 = Event::new(vec![0, 1], 3).unwrap();
        assert!(disagreement_restricted_within(
            &two_expert_profile(),
            &e12,
            &tol()
        ));

        let te1 = Profile::new(vec![belief(&[0.9, 0.1, 0.0]), belief(&[0.0, 0.0, 1.0])]).unwrap();
        let e23 = Event::new(vec![1, 2], 3).unwrap();
        assert!(!disagreement_restricted_within(&te1, &e23, &tol()));

        assert!(disagreement_restricted_within(&te1, &Event::full(3), &tol()));
    }

    #[test]
    fn agreement_predicate_examples() {
        let te2 = Profile::new(vec![
            belief(&[0.4, 0.1, 0.1, 0.4]),
            belief(&[0.1, 0.4, 0.4, 0.1]),
        ])
        .unwrap();
        let h_event = Event::new(vec![0, 2], 4).unwrap();
        assert!(agree_on_event(&te2, &h_event, &tol()));

        let te1 = Profile::new(vec![belief(&[0.9, 0.1, 0.0]), belief(&[0.0, 0.0, 1.0])]).unwrap();
        let e23 = Event::new(vec![1, 2], 3).unwrap();
        assert!(!agree_on_event(&te1, &e23, &tol()));

        // restricted disagreement implies event agreement
        let e12 = Event::new(vec![0, 1], 3).unwrap();
        assert!(agree_on_event(&two_expert_profile(), &e12, &tol()));
    }

    #[test]
    fn conditional_ce_full_simplex_closed_form() {
        // f = (1,0,5) on E={1,2}, h = 0: value .8*min(.75,.25)+.2*0 = .2,
        // and inverting U((c 1)E0) = .8c gives c = .25.
        let rule: Rule<f64> = Rule::MultipleWeight(WeightSet::full_simplex(2).unwrap());
        let profile = two_expert_profile();
        let e = Event::new(vec![0, 1], 3).unwrap();
        let f = Act::new(vec![1.0, 0.0, 5.0]).unwrap();
        let h = Act::constant(0.0, 3).unwrap();
        let cc = conditional_ce(&rule, &profile, &e, &f, &[h], &tol()).unwrap();
        assert_abs_diff_eq!(cc.value_by_h[0].1, 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(cc.spread, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn conditional_ce_restricted_disagreement_matches_conditioned_profile() {
        let rule: Rule<f64> = Rule::MultipleWeight(WeightSet::full_simplex(2).unwrap());
        let profile = two_expert_profile();
        let e = Event::new(vec![0, 1], 3).unwrap();
        let f = Act::new(vec![1.0, 0.0, 5.0]).unwrap();
        let hs = vec![
            Act::constant(0.0, 3).unwrap(),
            Act::new(vec![3.0, -2.0, 7.0]).unwrap(),
            f.clone(),
        ];
        let cc = conditional_ce(&rule, &profile, &e, &f, &hs, &tol()).unwrap();
        let direct = rule
            .utility(&profile.condition(&e, &tol()).unwrap(), &f, &tol())
            .unwrap();
        assert!(cc.spread <= 1e-8);
        for c in cc.values() {
            assert_abs_diff_eq!(c, direct, epsilon = 1e-8);
        }
    }

    #[test]
    fn conditional_ce_linear_rule_independent_of_h() {
        // For a linear rule the CE equals EU under the updated pooled belief.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let raw: Vec<f64> = (0..3).map(|_| rng.gen_range(0.05..1.0)).collect();
            let s: f64 = raw.iter().sum();
            let mu1 = belief(&raw.iter().map(|x| x / s).collect::<Vec<_>>());
            let raw: Vec<f64> = (0..3).map(|_| rng.gen_range(0.05..1.0)).collect();
            let s: f64 = raw.iter().sum();
            let mu2 = belief(&raw.iter().map(|x| x / s).collect::<Vec<_>>());
            let profile = Profile::new(vec![mu1, mu2]).unwrap();
            let w = Weight::new(vec![0.3, 0.7], &tol()).unwrap();
            let rule = Rule::Linear(w.clone());
            let e = Event::new(vec![0, 2], 3).unwrap();
            let f = Act::new((0..3).map(|_| rng.gen_range(-5.0..5.0)).collect()).unwrap();
            let hs: Vec<Act<f64>> = (0..4)
                .map(|_| Act::new((0..3).map(|_| rng.gen_range(-5.0..5.0)).collect()).unwrap())
                .collect();
            let cc = conditional_ce(&rule, &profile, &e, &f, &hs, &tol()).unwrap();
            let pooled = pooled_belief(&w, &profile, &tol()).unwrap();
            let oracle = expected_utility(&pooled.condition(&e, &tol()).unwrap(), &f).unwrap();
            assert!(cc.spread <= 1e-8);
            for c in cc.values() {
                assert_abs_diff_eq!(c, oracle, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn conditional_compare_dominance_and_reflexivity() {
        let rule: Rule<f64> = Rule::MultipleWeight(WeightSet::full_simplex(2).unwrap());
        let profile = two_expert_profile();
        let e = Event::new(vec![0, 1], 3).unwrap();
        let f = Act::new(vec![2.0, 1.0, 0.0]).unwrap();
        let g = Act::new(vec![1.0, 0.5, 9.0]).unwrap();
        let hs = vec![
            Act::constant(0.0, 3).unwrap(),
            Act::new(vec![-4.0, 2.0, 1.0]).unwrap(),
        ];
        // f >= g statewise on E
        let cmp = conditional_compare(&rule, &profile, &e, &f, &g, &hs, &tol()).unwrap();
        assert_eq!(cmp.verdict, Verdict::Holds);
        let cmp = conditional_compare(&rule, &profile, &e, &f, &f, &hs, &tol()).unwrap();
        assert_eq!(cmp.verdict, Verdict::Holds);
        let cmp = conditional_compare(&rule, &profile, &e, &f, &g, &[], &tol()).unwrap();
        assert_eq!(cmp.verdict, Verdict::Unknown);
    }

    #[test]
    fn conditional_compare_matches_restricted_oracle() {
        let rule: Rule<f64> = Rule::MultipleWeight(WeightSet::full_simplex(2).unwrap());
        let profile = two_expert_profile();
        let e = Event::new(vec![0, 1], 3).unwrap();
        let conditioned = profile.condition(&e, &tol()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let f = Act::new((0..3).map(|_| rng.gen_range(-5.0..5.0)).collect::<Vec<f64>>())
                .unwrap();
            let g = Act::new((0..3).map(|_| rng.gen_range(-5.0..5.0)).collect::<Vec<f64>>())
                .unwrap();
            let hs: Vec<Act<f64>> = (0..6)
                .map(|_| {
                    Act::new((0..3).map(|_| rng.gen_range(-5.0..5.0)).collect::<Vec<f64>>())
                        .unwrap()
                })
                .collect();
            let uf = rule.utility(&conditioned, &f, &tol()).unwrap();
            let ug = rule.utility(&conditioned, &g, &tol()).unwrap();
            let cmp = conditional_compare(&rule, &profile, &e, &f, &g, &hs, &tol()).unwrap();
            match cmp.verdict {
                Verdict::Holds => assert!(uf >= ug - 1e-7),
                Verdict::Fails(_) => assert!(uf < ug),
                Verdict::Unknown => unreachable!(),
            }
        }
    }

    #[test]
    fn restricted_decomposition_hand_example() {
        let rule: Rule<f64> = Rule::MultipleWeight(WeightSet::full_simplex(2).unwrap());
        let profile = two_expert_profile();
        let e = Event::new(vec![0, 1], 3).unwrap();
        let f = Act::new(vec![1.0, 0.0, 3.0]).unwrap();
        let h = Act::constant(0.0, 3).unwrap();
        let v = restricted_decomposition(&rule, &profile, &e, &f, &h, &tol()).unwrap();
        assert_abs_diff_eq!(v, 0.2, epsilon = 1e-9);
        // must equal the direct evaluation of fEh
        let direct = rule
            .utility(&profile, &composite_act(&f, &e, &h).unwrap(), &tol())
            .unwrap();
        assert_abs_diff_eq!(v, direct, epsilon = 1e-9);
    }

    #[test]
    fn restricted_decomposition_constant_act() {
        let rule: Rule<f64> = Rule::MultipleWeight(WeightSet::full_simplex(2).unwrap());
        let profile = two_expert_profile();
        let e = Event::new(vec![0, 1], 3).unwrap();
        let c = Act::constant(4.0, 3).unwrap();
        let v = restricted_decomposition(&rule, &profile, &e, &c, &c, &tol()).unwrap();
        assert_abs_diff_eq!(v, 4.0, epsilon = 1e-9);
    }

    #[test]
    fn restricted_decomposition_rejects_unrestricted() {
        let rule: Rule<f64> = Rule::MultipleWeight(WeightSet::full_simplex(2).unwrap());
        let te1 = Profile::new(vec![belief(&[0.9, 0.1, 0.0]), belief(&[0.0, 0.0, 1.0])]).unwrap();
        let e23 = Event::new(vec![1, 2], 3).unwrap();
        let f = Act::constant(1.0, 3).unwrap();
        assert_eq!(
            restricted_decomposition(&rule, &te1, &e23, &f, &f, &tol()),
            Err(Error::DisagreementNotRestricted)
        );
    }
}
