//! Built-in demos reproducing the library's named worked examples. Every
//! demo hard-codes its expected numbers and errors out on any mismatch, so
//! they double as end-to-end smoke tests.

use crate::report::{num, vector, Line};
use pooling_core::axiom_lab::dictatorship_counterexample;
use pooling_core::prob::Event;
use pooling_core::rules::{median_rule, EvalProfile, Rule, Weight, WeightSet, WeightSetCollection};
use pooling_core::{Act64, Belief64, Profile64, Tolerance64};

pub const DEMO_IDS: [&str; 6] = [
    "te1",
    "te2",
    "eq6_case1",
    "eq6_case2",
    "median_cases",
    "dictatorship_cx",
];

type Demo = fn(&Tolerance64) -> Result<Vec<Line>, String>;

pub fn lookup(id: &str) -> Option<Demo> {
    match id {
        "te1" => Some(te1),
        "te2" => Some(te2),
        "eq6_case1" => Some(eq6_case1),
        "eq6_case2" => Some(eq6_case2),
        "median_cases" => Some(median_cases),
        "dictatorship_cx" => Some(dictatorship_cx),
        _ => None,
    }
}

fn expect(what: &str, got: f64, want: f64) -> Result<(), String> {
    if (got - want).abs() > 1e-9 {
        return Err(format!("demo self-check failed: {what} = {got}, expected {want}"));
    }
    Ok(())
}

fn belief(v: &[f64], tol: &Tolerance64) -> Result<Belief64, String> {
    Belief64::new(v.to_vec(), tol).map_err(|e| e.to_string())
}

fn profile(rows: &[&[f64]], tol: &Tolerance64) -> Result<Profile64, String> {
    let beliefs = rows
        .iter()
        .map(|r| belief(r, tol))
        .collect::<Result<Vec<_>, _>>()?;
    Profile64::new(beliefs).map_err(|e| e.to_string())
}

/// Two experts, three severity states; conditioning on "not benign" flips
/// the confident expert to the middle state.
fn te1(tol: &Tolerance64) -> Result<Vec<Line>, String> {
    let p = profile(&[&[0.9, 0.1, 0.0], &[0.0, 0.0, 1.0]], tol)?;
    let e = Event::new(vec![1, 2], 3).map_err(|e| e.to_string())?;
    let cond = p.condition(&e, tol).map_err(|e| e.to_string())?;
    for (i, want) in [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]].iter().enumerate() {
        for (s, w) in want.iter().enumerate() {
            expect(&format!("posterior[{i}][{s}]"), cond.belief(i).prob(s), *w)?;
        }
    }
    Ok(vec![
        Line::new("te1", "prior.expert1", vector(p.belief(0).probs())),
        Line::new("te1", "prior.expert2", vector(p.belief(1).probs())),
        Line::new("te1", "event", "mild,severe"),
        Line::new("te1", "posterior.expert1", vector(cond.belief(0).probs())),
        Line::new("te1", "posterior.expert2", vector(cond.belief(1).probs())),
    ])
}

/// Four states pairing a binary payoff event with a binary signal; the
/// experts' posteriors on the payoff event are .8 and .2.
fn te2(tol: &Tolerance64) -> Result<Vec<Line>, String> {
    let p = profile(&[&[0.4, 0.1, 0.1, 0.4], &[0.1, 0.4, 0.4, 0.1]], tol)?;
    let e = Event::new(vec![0, 2], 4).map_err(|e| e.to_string())?;
    let cond = p.condition(&e, tol).map_err(|e| e.to_string())?;
    let ph1 = cond.belief(0).prob(0);
    let ph2 = cond.belief(1).prob(0);
    expect("posterior P(H) expert 1", ph1, 0.8)?;
    expect("posterior P(H) expert 2", ph2, 0.2)?;
    Ok(vec![
        Line::new("te2", "prior.expert1", vector(p.belief(0).probs())),
        Line::new("te2", "prior.expert2", vector(p.belief(1).probs())),
        Line::new("te2", "posterior_p_h.expert1", num(ph1)),
        Line::new("te2", "posterior_p_h.expert2", num(ph2)),
    ])
}

/// The credibility-weighted dual-self rule over four experts: group {1,2}
/// carries weight .8, group {3,4} weight .2, mixing coefficients in
/// [.25, .75] (adversarial within the heavy group, optimistic in the light
/// one).
fn credibility_rule(tol: &Tolerance64) -> Result<Rule<f64>, String> {
    let lams = [0.25, 0.75];
    let mut sets = Vec::new();
    for lp in lams {
        let mut verts = Vec::new();
        for l in lams {
            verts.push(
                Weight::new(
                    vec![0.8 * l, 0.8 * (1.0 - l), 0.2 * lp, 0.2 * (1.0 - lp)],
                    tol,
                )
                .map_err(|e| e.to_string())?,
            );
        }
        sets.push(WeightSet::new(verts, tol).map_err(|e| e.to_string())?);
    }
    Ok(Rule::DualSelf(
        WeightSetCollection::new(sets).map_err(|e| e.to_string())?,
    ))
}

/// Case 1: the heavy experts disagree; the rule is worst-case over
/// P(H) in [.38, .62]. The two printed numbers are the worst-case P(H) used
/// for a bet on H (.38) and for a bet on L (.62).
fn eq6_case1(tol: &Tolerance64) -> Result<Vec<Line>, String> {
    let rule = credibility_rule(tol)?;
    let p = profile(&[&[0.2, 0.8], &[0.8, 0.2], &[0.5, 0.5], &[0.5, 0.5]], tol)?;
    let bet_h = Act64::new(vec![1.0, 0.0]).map_err(|e| e.to_string())?;
    let bet_l = Act64::new(vec![0.0, 1.0]).map_err(|e| e.to_string())?;
    let uh = rule.utility(&p, &bet_h, tol).map_err(|e| e.to_string())?;
    let ul = rule.utility(&p, &bet_l, tol).map_err(|e| e.to_string())?;
    // For a bet the value equals the worst-case probability of winning, so
    // the adversary's P(H) is uh for the H bet and 1 - ul for the L bet.
    let p_for_h = uh;
    let p_for_l = 1.0 - ul;
    expect("worst-case P(H) for bet on H", p_for_h, 0.38)?;
    expect("worst-case P(H) for bet on L", p_for_l, 0.62)?;
    Ok(vec![
        Line::new("eq6_case1", "attitude", "ambiguity_averse"),
        Line::new("eq6_case1", "p_h_interval", "0.38,0.62"),
        Line::new("eq6_case1", "worst_case_p_h.bet_on_h", num(p_for_h)),
        Line::new("eq6_case1", "worst_case_p_h.bet_on_l", num(p_for_l)),
        Line::new("eq6_case1", "value.bet_on_h", num(uh)),
        Line::new("eq6_case1", "value.bet_on_l", num(ul)),
    ])
}

/// Case 2: the light experts disagree; the rule is best-case over
/// P(H) in [.47, .53].
fn eq6_case2(tol: &Tolerance64) -> Result<Vec<Line>, String> {
    let rule = credibility_rule(tol)?;
    let p = profile(&[&[0.5, 0.5], &[0.5, 0.5], &[0.2, 0.8], &[0.8, 0.2]], tol)?;
    let bet_h = Act64::new(vec![1.0, 0.0]).map_err(|e| e.to_string())?;
    let bet_l = Act64::new(vec![0.0, 1.0]).map_err(|e| e.to_string())?;
    let uh = rule.utility(&p, &bet_h, tol).map_err(|e| e.to_string())?;
    let ul = rule.utility(&p, &bet_l, tol).map_err(|e| e.to_string())?;
    let p_for_h = uh;
    let p_for_l = 1.0 - ul;
    expect("best-case P(H) for bet on H", p_for_h, 0.53)?;
    expect("best-case P(H) for bet on L", p_for_l, 0.47)?;
    Ok(vec![
        Line::new("eq6_case2", "attitude", "ambiguity_seeking"),
        Line::new("eq6_case2", "p_h_interval", "0.47,0.53"),
        Line::new("eq6_case2", "best_case_p_h.bet_on_h", num(p_for_h)),
        Line::new("eq6_case2", "best_case_p_h.bet_on_l", num(p_for_l)),
        Line::new("eq6_case2", "value.bet_on_h", num(uh)),
        Line::new("eq6_case2", "value.bet_on_l", num(ul)),
    ])
}

/// The median rule's hedging asymmetry: gains are aggregated cautiously, the
/// hedge of two zero-valued gains is worth 1, while the hedge of two
/// zero-valued losses is worth -1.
fn median_cases(_tol: &Tolerance64) -> Result<Vec<Line>, String> {
    let rule: Rule<f64> = median_rule();
    let cases: [(&str, &[f64], f64); 4] = [
        ("gain", &[0.0, 0.0, 2.0], 0.0),
        ("gain_hedge", &[0.0, 1.0, 1.0], 1.0),
        ("loss", &[0.0, 0.0, -2.0], 0.0),
        ("loss_hedge", &[0.0, -1.0, -1.0], -1.0),
    ];
    let mut lines = Vec::new();
    for (name, vals, want) in cases {
        let got = rule
            .functional(&EvalProfile::new(vals.to_vec()))
            .map_err(|e| e.to_string())?;
        expect(name, got, want)?;
        lines.push(Line::new("median_cases", name, num(got)));
    }
    Ok(lines)
}

/// Updating then pooling versus pooling then updating for the equal-weight
/// linear rule on the four-state counterexample profile.
fn dictatorship_cx(tol: &Tolerance64) -> Result<Vec<Line>, String> {
    let lambda = Weight::new(vec![0.5, 0.5], tol).map_err(|e| e.to_string())?;
    let cx = dictatorship_counterexample(&lambda, tol).map_err(|e| e.to_string())?;
    let uta = cx.update_then_aggregate.prob(0);
    let atu = cx.aggregate_then_update.prob(0);
    expect("update-then-aggregate P(w1)", uta, 0.5)?;
    expect("aggregate-then-update P(w1)", atu, 1.0 / 11.0)?;
    let verdict = if cx.gap_at_state0.abs() > tol.eps_value {
        "NOT COMMUTATIVE"
    } else {
        "commutative"
    };
    if verdict != "NOT COMMUTATIVE" {
        return Err("demo self-check failed: expected a commutativity gap".into());
    }
    Ok(vec![
        Line::new("dictatorship_cx", "lambda", "0.5,0.5"),
        Line::new("dictatorship_cx", "update_then_aggregate.p_w1", num(uta)),
        Line::new("dictatorship_cx", "aggregate_then_update.p_w1", num(atu)),
        Line::new("dictatorship_cx", "gap.p_w1", num(cx.gap_at_state0)),
        Line::new("dictatorship_cx", "verdict", verdict),
    ])
}
