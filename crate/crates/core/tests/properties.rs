//! Property tests for the library invariants: conditioning laws, expected
//! utility algebra, functional structure of the aggregation rules, and the
//! hull-geometry primitives.

use pooling_core::axiom_lab::sample;
use pooling_core::geometry::{hull_contains, is_rectangular};
use pooling_core::prob::{composite_act, expected_utility, mix_acts, Event};
use pooling_core::rules::{
    evaluation_profile, median_rule, Rule, Weight, WeightSet, WeightSetCollection,
};
use pooling_core::{Act64, Belief64, Profile64, Tolerance64};
use proptest::prelude::*;

fn tol() -> Tolerance64 {
    Tolerance64::standard()
}

/// Strategy: raw positive weights normalized to the simplex, bounded away
/// from zero so conditioning is always well defined.
fn simplex_interior(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..1.0, dim).prop_map(|raw| {
        let s: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / s).collect()
    })
}

fn belief_interior(dim: usize) -> impl Strategy<Value = Belief64> {
    simplex_interior(dim).prop_map(|p| Belief64::new(p, &tol()).unwrap())
}

fn profile_interior(n: usize, dim: usize) -> impl Strategy<Value = Profile64> {
    prop::collection::vec(belief_interior(dim), n)
        .prop_map(|bs| Profile64::new(bs).unwrap())
}

fn act(dim: usize) -> impl Strategy<Value = Act64> {
    prop::collection::vec(-10.0f64..10.0, dim).prop_map(|u| Act64::new(u).unwrap())
}

fn weight(n: usize) -> impl Strategy<Value = Weight<f64>> {
    simplex_interior(n).prop_map(|l| Weight::new(l, &tol()).unwrap())
}

fn event_proper(dim: usize) -> impl Strategy<Value = Event> {
    // Nonempty bitmask with nonempty complement.
    (1u32..(1 << dim) - 1).prop_map(move |mask| {
        let members = (0..dim).filter(|s| mask & (1 << s) != 0).collect();
        Event::new(members, dim).unwrap()
    })
}

proptest! {
    #[test]
    fn conditioning_is_idempotent(mu in belief_interior(4), e in event_proper(4)) {
        let once = mu.condition(&e, &tol()).unwrap();
        let twice = once.condition(&e, &tol()).unwrap();
        for s in 0..4 {
            prop_assert!((once.prob(s) - twice.prob(s)).abs() < 1e-12);
        }
    }

    #[test]
    fn conditioning_zeroes_the_complement(mu in belief_interior(4), e in event_proper(4)) {
        let cond = mu.condition(&e, &tol()).unwrap();
        for s in 0..4 {
            if !e.contains(s) {
                prop_assert_eq!(cond.prob(s), 0.0);
            }
        }
        prop_assert!((cond.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn martingale_property(mu in belief_interior(4), e in event_proper(4), f in act(4)) {
        // E[f] = P(E) E[f | E] + P(E^c) E[f | E^c]
        let p = mu.event_prob(&e).unwrap();
        let on = expected_utility(&mu.condition(&e, &tol()).unwrap(), &f).unwrap();
        let off = expected_utility(
            &mu.condition(&e.complement().unwrap(), &tol()).unwrap(),
            &f,
        )
        .unwrap();
        let total = expected_utility(&mu, &f).unwrap();
        prop_assert!((total - (p * on + (1.0 - p) * off)).abs() < 1e-10);
    }

    #[test]
    fn expected_utility_is_linear(mu in belief_interior(4), f in act(4), g in act(4), a in 0.0f64..1.0) {
        let mixed = mix_acts(&f, &g, a).unwrap();
        let lhs = expected_utility(&mu, &mixed).unwrap();
        let rhs = a * expected_utility(&mu, &f).unwrap()
            + (1.0 - a) * expected_utility(&mu, &g).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn composite_act_splits_expectation(mu in belief_interior(4), e in event_proper(4), f in act(4), h in act(4)) {
        let feh = composite_act(&f, &e, &h).unwrap();
        let direct = expected_utility(&mu, &feh).unwrap();
        let split: f64 = (0..4)
            .map(|s| mu.prob(s) * if e.contains(s) { f.util(s) } else { h.util(s) })
            .sum();
        prop_assert!((direct - split).abs() < 1e-12);
    }

    #[test]
    fn functionals_are_monotone(p in profile_interior(3, 4), f in act(4), g in act(4)) {
        // If every expert's evaluation of f dominates g's, every rule in the
        // dual-self family ranks f at least as high.
        let rules: Vec<Rule<f64>> = vec![
            Rule::Linear(Weight::new(vec![0.2, 0.5, 0.3], &tol()).unwrap()),
            Rule::MultipleWeight(WeightSet::full_simplex(3).unwrap()),
            median_rule(),
        ];
        let ef = evaluation_profile(&p, &f).unwrap();
        let eg = evaluation_profile(&p, &g).unwrap();
        let dominates = ef
            .values()
            .iter()
            .zip(eg.values())
            .all(|(a, b)| a >= b);
        if dominates {
            for rule in &rules {
                let uf = rule.functional(&ef).unwrap();
                let ug = rule.functional(&eg).unwrap();
                prop_assert!(uf >= ug - 1e-12);
            }
        }
    }

    #[test]
    fn functionals_are_constant_linear(p in profile_interior(3, 4), f in act(4), c in -5.0f64..5.0) {
        // I(a + c 1) = I(a) + c for Linear, MultipleWeight, and DualSelf.
        let rules: Vec<Rule<f64>> = vec![
            Rule::Linear(Weight::new(vec![0.2, 0.5, 0.3], &tol()).unwrap()),
            Rule::MultipleWeight(WeightSet::full_simplex(3).unwrap()),
            median_rule(),
        ];
        let shifted = Act64::new(f.utils().iter().map(|u| u + c).collect()).unwrap();
        for rule in &rules {
            let base = rule.utility(&p, &f, &tol()).unwrap();
            let moved = rule.utility(&p, &shifted, &tol()).unwrap();
            prop_assert!((moved - (base + c)).abs() < 1e-10);
        }
    }

    #[test]
    fn vertex_min_matches_grid_min(p in profile_interior(2, 3), f in act(3)) {
        // For a full-simplex weight set over two experts the vertex minimum
        // must match a fine grid search over the segment.
        let rule: Rule<f64> = Rule::MultipleWeight(WeightSet::full_simplex(2).unwrap());
        let u = rule.utility(&p, &f, &tol()).unwrap();
        let evals = evaluation_profile(&p, &f).unwrap();
        let grid = (0..=100)
            .map(|k| {
                let l = k as f64 / 100.0;
                l * evals.values()[0] + (1.0 - l) * evals.values()[1]
            })
            .fold(f64::INFINITY, f64::min);
        prop_assert!((u - grid).abs() < 1e-10);
    }

    #[test]
    fn linear_embeds_in_dual_self(p in profile_interior(2, 3), f in act(3), w in weight(2)) {
        let lin = Rule::Linear(w.clone());
        let ds = Rule::DualSelf(
            WeightSetCollection::new(vec![WeightSet::singleton(w)]).unwrap(),
        );
        let a = lin.utility(&p, &f, &tol()).unwrap();
        let b = ds.utility(&p, &f, &tol()).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn multiple_weight_embeds_in_dual_self(p in profile_interior(3, 3), f in act(3)) {
        let set = WeightSet::full_simplex(3).unwrap();
        let mw = Rule::MultipleWeight(set.clone());
        let ds = Rule::DualSelf(WeightSetCollection::new(vec![set]).unwrap());
        let a = mw.utility(&p, &f, &tol()).unwrap();
        let b = ds.utility(&p, &f, &tol()).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn aggregate_value_between_expert_extremes(p in profile_interior(3, 4), f in act(4)) {
        // Pareto-style sandwich: every dual-self family value lies between
        // the worst and best expert evaluation.
        let evals = evaluation_profile(&p, &f).unwrap();
        let lo = evals.values().iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = evals
            .values()
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let rules: Vec<Rule<f64>> = vec![
            Rule::Linear(Weight::new(vec![0.2, 0.5, 0.3], &tol()).unwrap()),
            Rule::MultipleWeight(WeightSet::full_simplex(3).unwrap()),
            median_rule(),
        ];
        for rule in &rules {
            let u = rule.utility(&p, &f, &tol()).unwrap();
            prop_assert!(u >= lo - 1e-10 && u <= hi + 1e-10);
        }
    }

    #[test]
    fn hull_membership_matches_grid_oracle(
        v1 in belief_interior(3),
        v2 in belief_interior(3),
        q in belief_interior(3),
    ) {
        // Oracle: scan convex coefficients on a 0.02 grid and compare the
        // closest reconstruction against the solver's verdict.
        let verts = vec![v1.clone(), v2.clone()];
        let m = hull_contains(&verts, &q, &tol()).unwrap();
        let best = (0..=50)
            .map(|k| {
                let c = k as f64 / 50.0;
                (0..3)
                    .map(|s| {
                        let r = c * v1.prob(s) + (1.0 - c) * v2.prob(s) - q.prob(s);
                        r.abs()
                    })
                    .fold(0.0f64, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        if m.inside {
            // grid resolution bounds the reconstruction error
            prop_assert!(best < 0.02);
        } else {
            prop_assert!(best > 1e-7);
        }
    }

    #[test]
    fn hull_coefficients_reconstruct_point(
        verts in prop::collection::vec(belief_interior(4), 2..5),
        coeffs in simplex_interior(4),
    ) {
        // A known convex combination must be recognized and reconstructed.
        let k = verts.len();
        let cs: Vec<f64> = {
            let head: f64 = coeffs[..k].iter().sum();
            coeffs[..k].iter().map(|c| c / head).collect()
        };
        let probs: Vec<f64> = (0..4)
            .map(|s| cs.iter().zip(&verts).map(|(c, v)| c * v.prob(s)).sum())
            .collect();
        let point = Belief64::new(probs, &tol()).unwrap();
        let m = hull_contains(&verts, &point, &tol()).unwrap();
        prop_assert!(m.inside);
        let rec = m.coefficients.unwrap();
        for s in 0..4 {
            let back: f64 = rec.iter().zip(&verts).map(|(c, v)| c * v.prob(s)).sum();
            prop_assert!((back - point.prob(s)).abs() < 1e-8);
        }
    }

    #[test]
    fn restricted_disagreement_hulls_are_rectangular(
        alpha in 0.2f64..0.8,
        heads in prop::collection::vec(simplex_interior(2), 2),
        tail in simplex_interior(2),
    ) {
        // Experts share the event probability alpha and the conditional on
        // E^c; their hull is rectangular for {E, E^c}.
        let e = Event::new(vec![0, 1], 4).unwrap();
        let verts: Vec<Belief64> = heads
            .iter()
            .map(|h| {
                Belief64::new(
                    vec![
                        alpha * h[0],
                        alpha * h[1],
                        (1.0 - alpha) * tail[0],
                        (1.0 - alpha) * tail[1],
                    ],
                    &tol(),
                )
                .unwrap()
            })
            .collect();
        prop_assert!(is_rectangular(&verts, &e, &tol()).unwrap());
    }

    #[test]
    fn sampled_profiles_replay_deterministically(seed in 0u64..1000, trial in 0u64..50) {
        let mut r1 = sample::trial_rng(seed, trial);
        let mut r2 = sample::trial_rng(seed, trial);
        let p1: Profile64 = sample::profile(&mut r1, 3, 4, &tol());
        let p2: Profile64 = sample::profile(&mut r2, 3, 4, &tol());
        prop_assert_eq!(p1, p2);
    }
}
