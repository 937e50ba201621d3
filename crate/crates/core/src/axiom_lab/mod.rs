//! Seeded randomized falsification harness for the aggregation axioms, plus
//! the named dictatorship counterexample construction.
//!
//! Every axiom quantifies over a continuum, so a Pass verdict only means "no
//! violation found in `trials` attempts"; reports carry `trials_run` so a
//! Pass is never read as proof. Violated witnesses replay deterministically.

pub mod sample;

use crate::dynamics::{conditional_ce, disagreement_restricted_within};
use crate::error::{Error, Result};
use crate::prob::{
    composite_act, expected_utility, mix_acts, Act, Belief, Event, Profile, Tolerance,
};
use crate::rules::{pooled_belief, Rule, Weight};
use crate::{lit, Real};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Axiom / property identifiers understood by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Pareto,
    Monotonicity,
    P2,
    CIndependence,
    Independence,
    AmbiguityAversion,
    WeakCommutativity,
    PessimismUpdateThenAggregate,
    ModerateCommutativity,
    FullCommutativity,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Pareto,
        Axiom::Monotonicity,
        Axiom::P2,
        Axiom::CIndependence,
        Axiom::Independence,
        Axiom::AmbiguityAversion,
        Axiom::WeakCommutativity,
        Axiom::PessimismUpdateThenAggregate,
        Axiom::ModerateCommutativity,
        Axiom::FullCommutativity,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Axiom::Pareto => "pareto",
            Axiom::Monotonicity => "monotonicity",
            Axiom::P2 => "p2",
            Axiom::CIndependence => "c_independence",
            Axiom::Independence => "independence",
            Axiom::AmbiguityAversion => "ambiguity_aversion",
            Axiom::WeakCommutativity => "weak_commutativity",
            Axiom::PessimismUpdateThenAggregate => "pessimism_utta",
            Axiom::ModerateCommutativity => "moderate_commutativity",
            Axiom::FullCommutativity => "full_commutativity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Axiom::ALL
            .iter()
            .copied()
            .find(|a| a.id() == s)
            .ok_or_else(|| format!("unknown axiom id `{s}`"))
    }
}

/// Harness configuration. Identical config and rule give bit-identical
/// reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig<F> {
    pub seed: u64,
    pub trials: usize,
    pub act_range: F,
    pub h_samples: usize,
}

impl<F: Real> Default for CheckConfig<F> {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 1000,
            act_range: lit(10.0),
            h_samples: 32,
        }
    }
}

/// Concrete violation instance; replaying it reproduces the gap.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<F> {
    pub profiles: Vec<Profile<F>>,
    pub event: Option<Event>,
    pub acts: Vec<Act<F>>,
    pub alpha: Option<F>,
    pub gap: F,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckVerdict<F> {
    Pass,
    Violated(Witness<F>),
    Inapplicable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport<F> {
    pub axiom: Axiom,
    pub verdict: CheckVerdict<F>,
    pub trials_run: usize,
    pub seed: u64,
}

impl<F: Real> CheckReport<F> {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, CheckVerdict::Pass)
    }

    pub fn violated(&self) -> bool {
        matches!(self.verdict, CheckVerdict::Violated(_))
    }
}

fn report<F: Real>(axiom: Axiom, config: &CheckConfig<F>, outcome: Option<(Witness<F>, usize)>) -> CheckReport<F> {
    match outcome {
        Some((w, trial)) => CheckReport {
            axiom,
            verdict: CheckVerdict::Violated(w),
            trials_run: trial + 1,
            seed: config.seed,
        },
        None => CheckReport {
            axiom,
            verdict: CheckVerdict::Pass,
            trials_run: config.trials,
            seed: config.seed,
        },
    }
}

fn rule_arity<F: Real>(rule: &Rule<F>) -> usize {
    match rule {
        Rule::Dictatorship(i) => (*i + 2).max(2),
        _ => rule.n_experts().unwrap_or(3),
    }
}

fn dims_for_trial(rng: &mut ChaCha8Rng, min_dim: usize) -> usize {
    let choices: Vec<usize> = (min_dim..=5).collect();
    choices[rng.gen_range(0..choices.len())]
}

/// Pareto: expert-unanimous rankings must be respected by the aggregate.
pub fn check_pareto<F: Real>(
    rule: &Rule<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    let n = rule_arity(rule);
    for trial in 0..config.trials {
        let mut rng = sample::trial_rng(config.seed, trial as u64);
        let dim = dims_for_trial(&mut rng, 3);
        let profile = sample::profile(&mut rng, n, dim, tol);
        let g = sample::act(&mut rng, dim, config.act_range);
        // Lift g's evaluation profile entrywise: find a perturbation whose
        // per-expert expected utility is one-signed, then add or subtract it.
        let mut f: Option<Act<F>> = None;
        for _ in 0..30 {
            let d = sample::act(&mut rng, dim, config.act_range);
            let evals: Vec<F> = profile
                .beliefs()
                .iter()
                .map(|mu| expected_utility(mu, &d).unwrap())
                .collect();
            let sign: F = if evals.iter().all(|e| *e >= F::zero()) {
                F::one()
            } else if evals.iter().all(|e| *e <= F::zero()) {
                -F::one()
            } else {
                continue;
            };
            let utils = g
                .utils()
                .iter()
                .zip(d.utils())
                .map(|(a, b)| *a + sign * *b)
                .collect();
            f = Some(Act::new(utils)?);
            break;
        }
        let f = match f {
            Some(f) => f,
            // fallback: statewise dominance
            None => Act::new(g.utils().iter().map(|u| *u + F::one()).collect())?,
        };
        let uf = rule.utility(&profile, &f, tol)?;
        let ug = rule.utility(&profile, &g, tol)?;
        if uf < ug - tol.eps_value {
            return Ok(report(
                Axiom::Pareto,
                config,
                Some((
                    Witness {
                        profiles: vec![profile],
                        event: None,
                        acts: vec![f, g],
                        alpha: None,
                        gap: ug - uf,
                        note: "every expert weakly prefers f to g, aggregate reverses".into(),
                    },
                    trial,
                )),
            ));
        }
    }
    Ok(report(Axiom::Pareto, config, None))
}

/// Monotonicity: raising every expert's evaluation of f cannot lower the
/// aggregate value of f.
pub fn check_monotonicity<F: Real>(
    rule: &Rule<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    let n = rule_arity(rule);
    for trial in 0..config.trials {
        let mut rng = sample::trial_rng(config.seed, trial as u64);
        let dim = dims_for_trial(&mut rng, 3);
        let profile = sample::profile(&mut rng, n, dim, tol);
        let f = sample::act(&mut rng, dim, config.act_range);
        let mut lifted = Vec::with_capacity(n);
        for mu in profile.beliefs() {
            let base = expected_utility(mu, &f)?;
            let mut chosen = mu.clone();
            for _ in 0..30 {
                let cand = sample::belief(&mut rng, dim, tol);
                if expected_utility(&cand, &f)? >= base {
                    chosen = cand;
                    break;
                }
            }
            lifted.push(chosen);
        }
        let lifted = Profile::new(lifted)?;
        let before = rule.utility(&profile, &f, tol)?;
        let after = rule.utility(&lifted, &f, tol)?;
        if after < before - tol.eps_value {
            return Ok(report(
                Axiom::Monotonicity,
                config,
                Some((
                    Witness {
                        profiles: vec![profile, lifted],
                        event: None,
                        acts: vec![f],
                        alpha: None,
                        gap: before - after,
                        note: "every expert values f more under the second profile".into(),
                    },
                    trial,
                )),
            ));
        }
    }
    Ok(report(Axiom::Monotonicity, config, None))
}

/// Savage's P2 (sure-thing principle) at the value level.
pub fn check_p2<F: Real>(
    rule: &Rule<F>,
    profile: &Profile<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    let dim = profile.dim();
    for trial in 0..config.trials {
        let mut rng = sample::trial_rng(config.seed, trial as u64);
        let e = sample::event(&mut rng, dim, 1, 1);
        let f = sample::act(&mut rng, dim, config.act_range);
        let g = sample::act(&mut rng, dim, config.act_range);
        let h = sample::act(&mut rng, dim, config.act_range);
        let d1 = rule.utility(profile, &composite_act(&f, &e, &g)?, tol)?
            - rule.utility(profile, &g, tol)?;
        let d2 = rule.utility(profile, &composite_act(&f, &e, &h)?, tol)?
            - rule.utility(profile, &composite_act(&g, &e, &h)?, tol)?;
        if (d1 > tol.eps_value && d2 < -tol.eps_value)
            || (d1 < -tol.eps_value && d2 > tol.eps_value)
        {
            return Ok(report(
                Axiom::P2,
                config,
                Some((
                    Witness {
                        profiles: vec![profile.clone()],
                        event: Some(e),
                        acts: vec![f, g, h],
                        alpha: None,
                        gap: d1.abs().min(d2.abs()),
                        note: "ranking of f vs g on E flips with the off-event payoff".into(),
                    },
                    trial,
                )),
            ));
        }
    }
    Ok(report(Axiom::P2, config, None))
}

fn check_mixture_independence<F: Real>(
    axiom: Axiom,
    rule: &Rule<F>,
    profile: &Profile<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
    constant_only: bool,
) -> Result<CheckReport<F>> {
    let dim = profile.dim();
    for trial in 0..config.trials {
        let mut rng = sample::trial_rng(config.seed, trial as u64);
        let f = sample::act(&mut rng, dim, config.act_range);
        let g = sample::act(&mut rng, dim, config.act_range);
        let h = if constant_only {
            let r = config.act_range.to_f64().unwrap();
            Act::constant(lit(rng.gen_range(-r..r)), dim)?
        } else {
            sample::act(&mut rng, dim, config.act_range)
        };
        let alpha: F = lit(rng.gen_range(0.05..0.95));
        let d1 = rule.utility(profile, &f, tol)? - rule.utility(profile, &g, tol)?;
        let d2 = rule.utility(profile, &mix_acts(&f, &h, alpha)?, tol)?
            - rule.utility(profile, &mix_acts(&g, &h, alpha)?, tol)?;
        if (d1 > tol.eps_value && d2 < -tol.eps_value)
            || (d1 < -tol.eps_value && d2 > tol.eps_value)
        {
            return Ok(report(
                axiom,
                config,
                Some((
                    Witness {
                        profiles: vec![profile.clone()],
                        event: None,
                        acts: vec![f, g, h],
                        alpha: Some(alpha),
                        gap: d1.abs().min(d2.abs()),
                        note: "mixing with the third act reverses the ranking".into(),
                    },
                    trial,
                )),
            ));
        }
    }
    Ok(report(axiom, config, None))
}

/// C-Independence: mixing both acts with a constant preserves the ranking.
pub fn check_c_independence<F: Real>(
    rule: &Rule<F>,
    profile: &Profile<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    check_mixture_independence(Axiom::CIndependence, rule, profile, config, tol, true)
}

/// Independence: mixing both acts with an arbitrary act preserves the ranking.
pub fn check_independence<F: Real>(
    rule: &Rule<F>,
    profile: &Profile<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    check_mixture_independence(Axiom::Independence, rule, profile, config, tol, false)
}

/// Ambiguity aversion: between indifferent acts, hedging cannot hurt.
/// Indifference is forced by a constant shift, which all rules in the
/// dual-self family (and pooled-belief SEU) respect exactly.
pub fn check_ambiguity_aversion<F: Real>(
    rule: &Rule<F>,
    profile: &Profile<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    let dim = profile.dim();
    for trial in 0..config.trials {
        let mut rng = sample::trial_rng(config.seed, trial as u64);
        let f = sample::act(&mut rng, dim, config.act_range);
        let g0 = sample::act(&mut rng, dim, config.act_range);
        let shift = rule.utility(profile, &f, tol)? - rule.utility(profile, &g0, tol)?;
        let g = Act::new(g0.utils().iter().map(|u| *u + shift).collect())?;
        let ug = rule.utility(profile, &g, tol)?;
        if (rule.utility(profile, &f, tol)? - ug).abs() > tol.eps_value {
            continue; // shift failed to force indifference: rule is not constant linear
        }
        let alpha: F = lit(rng.gen_range(0.05..0.95));
        let mixed = rule.utility(profile, &mix_acts(&f, &g, alpha)?, tol)?;
        if mixed < ug - tol.eps_value {
            return Ok(report(
                Axiom::AmbiguityAversion,
                config,
                Some((
                    Witness {
                        profiles: vec![profile.clone()],
                        event: None,
                        acts: vec![f, g],
                        alpha: Some(alpha),
                        gap: ug - mixed,
                        note: "hedging between indifferent acts lowers the value".into(),
                    },
                    trial,
                )),
            ));
        }
    }
    Ok(report(Axiom::AmbiguityAversion, config, None))
}

/// Commutativity checks share one engine: generate a profile and event from
/// the axiom's admissible class, then require the conditional certainty
/// equivalent of a random act to be h-independent and to match the value
/// computed on the conditioned profile.
fn check_commutativity<F: Real>(
    axiom: Axiom,
    rule: &Rule<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    let n = rule_arity(rule);
    for trial in 0..config.trials {
        let mut rng = sample::trial_rng(config.seed, trial as u64);
        let (min_dim, min_size, min_comp) = match axiom {
            Axiom::WeakCommutativity => (3, 1, 1),
            Axiom::ModerateCommutativity => (4, 2, 2),
            Axiom::FullCommutativity => (3, 1, 1),
            _ => unreachable!(),
        };
        let dim = dims_for_trial(&mut rng, min_dim);
        let e = sample::event(&mut rng, dim, min_size, min_comp);
        let profile = match axiom {
            Axiom::WeakCommutativity => sample::restricted_profile(&mut rng, n, &e, tol),
            Axiom::ModerateCommutativity => sample::agreeing_profile(&mut rng, n, &e, tol),
            Axiom::FullCommutativity => sample::profile(&mut rng, n, dim, tol),
            _ => unreachable!(),
        };
        if !profile.is_conditionable(&e, tol) {
            continue;
        }
        let f = sample::act(&mut rng, dim, config.act_range);
        let hs = sample::h_samples(&mut rng, config.h_samples, dim, config.act_range, &[&f]);
        let cc = match conditional_ce(rule, &profile, &e, &f, &hs, tol) {
            Ok(cc) => cc,
            Err(Error::GeometricUndefined) | Err(Error::BracketFailure) => continue,
            Err(e) => return Err(e),
        };
        let direct = match rule.utility(&profile.condition(&e, tol)?, &f, tol) {
            Ok(v) => v,
            Err(Error::GeometricUndefined) => continue,
            Err(e) => return Err(e),
        };
        let worst = cc
            .value_by_h
            .iter()
            .max_by(|a, b| {
                (a.1 - direct)
                    .abs()
                    .partial_cmp(&(b.1 - direct).abs())
                    .unwrap()
            })
            .unwrap()
            .clone();
        let gap = (worst.1 - direct).abs().max(cc.spread);
        if gap > tol.eps_value {
            return Ok(report(
                axiom,
                config,
                Some((
                    Witness {
                        profiles: vec![profile],
                        event: Some(e),
                        acts: vec![f, worst.0],
                        alpha: None,
                        gap,
                        note: "update-then-aggregate disagrees with aggregate-then-update".into(),
                    },
                    trial,
                )),
            ));
        }
    }
    Ok(report(axiom, config, None))
}

pub fn check_weak_commutativity<F: Real>(
    rule: &Rule<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    check_commutativity(Axiom::WeakCommutativity, rule, config, tol)
}

pub fn check_moderate_commutativity<F: Real>(
    rule: &Rule<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    check_commutativity(Axiom::ModerateCommutativity, rule, config, tol)
}

pub fn check_full_commutativity<F: Real>(
    rule: &Rule<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    check_commutativity(Axiom::FullCommutativity, rule, config, tol)
}

/// Pessimism to Update-then-Aggregate: when experts agree on the probability
/// of E (but may disagree elsewhere), aggregating posteriors must be weakly
/// more pessimistic than the conditional of the aggregate: whenever the
/// posterior aggregate ranks f above a constant x, no continuation act h may
/// make the prior preference strictly reject fEh against xEh.
pub fn check_pessimism_utta<F: Real>(
    rule: &Rule<F>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    let n = rule_arity(rule);
    for trial in 0..config.trials {
        let mut rng = sample::trial_rng(config.seed, trial as u64);
        let dim = dims_for_trial(&mut rng, 4);
        let e = sample::event(&mut rng, dim, 2, 2);
        let profile = sample::agreeing_profile(&mut rng, n, &e, tol);
        if disagreement_restricted_within(&profile, &e, tol) {
            continue;
        }
        let f = sample::act(&mut rng, dim, config.act_range);
        let posterior_value = match rule.utility(&profile.condition(&e, tol)?, &f, tol) {
            Ok(v) => v,
            Err(Error::GeometricUndefined) => continue,
            Err(err) => return Err(err),
        };
        // The strongest constant probe: x at the posterior value itself.
        let x = Act::constant(posterior_value, dim)?;
        let hs = sample::h_samples(&mut rng, config.h_samples, dim, config.act_range, &[&f]);
        for h in &hs {
            let uf = rule.utility(&profile, &composite_act(&f, &e, h)?, tol)?;
            let ux = rule.utility(&profile, &composite_act(&x, &e, h)?, tol)?;
            if uf < ux - tol.eps_value {
                return Ok(report(
                    Axiom::PessimismUpdateThenAggregate,
                    config,
                    Some((
                        Witness {
                            profiles: vec![profile],
                            event: Some(e),
                            acts: vec![f, x, h.clone()],
                            alpha: None,
                            gap: ux - uf,
                            note: "posterior aggregate accepts f over x, prior conditional rejects it"
                                .into(),
                        },
                        trial,
                    )),
                ));
            }
        }
    }
    Ok(report(Axiom::PessimismUpdateThenAggregate, config, None))
}

/// Dispatch a check by axiom id. Profile-level axioms need a profile; the
/// profile-generating checks ignore it.
pub fn run_check<F: Real>(
    rule: &Rule<F>,
    axiom: Axiom,
    profile: Option<&Profile<F>>,
    config: &CheckConfig<F>,
    tol: &Tolerance<F>,
) -> Result<CheckReport<F>> {
    let need_profile = |axiom: Axiom| -> Result<&Profile<F>> {
        profile.ok_or(Error::NoSamples).map_err(|_| {
            let _ = axiom;
            Error::NoSamples
        })
    };
    match axiom {
        Axiom::Pareto => check_pareto(rule, config, tol),
        Axiom::Monotonicity => check_monotonicity(rule, config, tol),
        Axiom::P2 => check_p2(rule, need_profile(axiom)?, config, tol),
        Axiom::CIndependence => check_c_independence(rule, need_profile(axiom)?, config, tol),
        Axiom::Independence => check_independence(rule, need_profile(axiom)?, config, tol),
        Axiom::AmbiguityAversion => {
            check_ambiguity_aversion(rule, need_profile(axiom)?, config, tol)
        }
        Axiom::WeakCommutativity => check_weak_commutativity(rule, config, tol),
        Axiom::PessimismUpdateThenAggregate => check_pessimism_utta(rule, config, tol),
        Axiom::ModerateCommutativity => check_moderate_commutativity(rule, config, tol),
        Axiom::FullCommutativity => check_full_commutativity(rule, config, tol),
    }
}

/// Recomputes a witness's violation gap from scratch.
pub fn replay_witness<F: Real>(
    rule: &Rule<F>,
    axiom: Axiom,
    witness: &Witness<F>,
    tol: &Tolerance<F>,
) -> Result<F> {
    let profile = &witness.profiles[0];
    match axiom {
        Axiom::Pareto => {
            let uf = rule.utility(profile, &witness.acts[0], tol)?;
            let ug = rule.utility(profile, &witness.acts[1], tol)?;
            Ok(ug - uf)
        }
        Axiom::Monotonicity => {
            let before = rule.utility(profile, &witness.acts[0], tol)?;
            let after = rule.utility(&witness.profiles[1], &witness.acts[0], tol)?;
            Ok(before - after)
        }
        Axiom::P2 => {
            let e = witness.event.as_ref().ok_or(Error::EmptyEvent)?;
            let (f, g, h) = (&witness.acts[0], &witness.acts[1], &witness.acts[2]);
            let d1 = rule.utility(profile, &composite_act(f, e, g)?, tol)?
                - rule.utility(profile, g, tol)?;
            let d2 = rule.utility(profile, &composite_act(f, e, h)?, tol)?
                - rule.utility(profile, &composite_act(g, e, h)?, tol)?;
            Ok(d1.abs().min(d2.abs()))
        }
        Axiom::CIndependence | Axiom::Independence => {
            let (f, g, h) = (&witness.acts[0], &witness.acts[1], &witness.acts[2]);
            let alpha = witness.alpha.ok_or(Error::AlphaOutOfRange)?;
            let d1 = rule.utility(profile, f, tol)? - rule.utility(profile, g, tol)?;
            let d2 = rule.utility(profile, &mix_acts(f, h, alpha)?, tol)?
                - rule.utility(profile, &mix_acts(g, h, alpha)?, tol)?;
            Ok(d1.abs().min(d2.abs()))
        }
        Axiom::AmbiguityAversion => {
            let (f, g) = (&witness.acts[0], &witness.acts[1]);
            let alpha = witness.alpha.ok_or(Error::AlphaOutOfRange)?;
            let ug = rule.utility(profile, g, tol)?;
            let mixed = rule.utility(profile, &mix_acts(f, g, alpha)?, tol)?;
            Ok(ug - mixed)
        }
        Axiom::WeakCommutativity | Axiom::ModerateCommutativity | Axiom::FullCommutativity => {
            let e = witness.event.as_ref().ok_or(Error::EmptyEvent)?;
            let (f, h) = (&witness.acts[0], &witness.acts[1]);
            let cc = conditional_ce(rule, profile, e, f, std::slice::from_ref(h), tol)?;
            let direct = rule.utility(&profile.condition(e, tol)?, f, tol)?;
            Ok((cc.value_by_h[0].1 - direct).abs())
        }
        Axiom::PessimismUpdateThenAggregate => {
            let e = witness.event.as_ref().ok_or(Error::EmptyEvent)?;
            let (f, x, h) = (&witness.acts[0], &witness.acts[1], &witness.acts[2]);
            let uf = rule.utility(profile, &composite_act(f, e, h)?, tol)?;
            let ux = rule.utility(profile, &composite_act(x, e, h)?, tol)?;
            Ok(ux - uf)
        }
    }
}

/// Output of the full-commutativity impossibility construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DictatorshipCounterexample<F> {
    pub profile: Profile<F>,
    pub event: Event,
    /// Aggregation of the conditioned profile.
    pub update_then_aggregate: Belief<F>,
    /// Conditioning of the aggregated prior.
    pub aggregate_then_update: Belief<F>,
    /// Probability gap at the first state; positive for every interior weight.
    pub gap_at_state0: F,
}

/// Builds the profile on which a non-dictatorial linear rule fails full
/// commutativity: expert 1 holds (.1, 0, .9, 0), everyone else (0, 1, 0, 0),
/// and the realized event contains the first two states but not the third.
pub fn dictatorship_counterexample<F: Real>(
    lambda: &Weight<F>,
    tol: &Tolerance<F>,
) -> Result<DictatorshipCounterexample<F>> {
    let n = lambda.n_experts();
    if n < 2 {
        return Err(Error::WrongExpertCount {
            expected: 2,
            got: n,
        });
    }
    let l1 = lambda.lambdas()[0];
    if l1 <= F::zero() || l1 >= F::one() {
        return Err(Error::WeightDegenerate);
    }
    let dim = 4;
    let mut first = vec![F::zero(); dim];
    first[0] = lit(0.1);
    first[2] = lit(0.9);
    let mut other = vec![F::zero(); dim];
    other[1] = F::one();
    let mut beliefs = vec![Belief::new(first, tol)?];
    for _ in 1..n {
        beliefs.push(Belief::new(other.clone(), tol)?);
    }
    let profile = Profile::new(beliefs)?;
    let event = Event::new(vec![0, 1], dim)?;

    let update_then_aggregate =
        pooled_belief(lambda, &profile.condition(&event, tol)?, tol)?;
    let aggregate_then_update = pooled_belief(lambda, &profile, tol)?.condition(&event, tol)?;
    let gap_at_state0 = update_then_aggregate.prob(0) - aggregate_then_update.prob(0);
    Ok(DictatorshipCounterexample {
        profile,
        event,
        update_then_aggregate,
        aggregate_then_update,
        gap_at_state0,
    })
}
