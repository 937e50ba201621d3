//! Seeded generators for profiles, acts, and events.
//!
//! Every trial derives its own sub-stream from (seed, trial index), so
//! serial and parallel runs of the harness produce identical reports.

use crate::prob::{Act, Belief, Event, Profile, Tolerance};
use crate::{lit, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial.wrapping_add(1));
    rng
}

/// Uniform-ish point on the simplex via stick breaking
/// (sorted uniform spacings).
pub fn simplex<F: Real>(rng: &mut ChaCha8Rng, dim: usize) -> Vec<F> {
    if dim == 1 {
        return vec![F::one()];
    }
    let mut cuts: Vec<f64> = (0..dim - 1).map(|_| rng.gen::<f64>()).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = Vec::with_capacity(dim);
    let mut prev = 0.0;
    for c in cuts {
        out.push(lit(c - prev));
        prev = c;
    }
    out.push(lit(1.0 - prev));
    out
}

/// Simplex point with every coordinate at least `floor`.
pub fn simplex_with_floor<F: Real>(rng: &mut ChaCha8Rng, dim: usize, floor: f64) -> Vec<F> {
    let scale = 1.0 - floor * dim as f64;
    debug_assert!(scale > 0.0);
    simplex::<F>(rng, dim)
        .into_iter()
        .map(|p| lit::<F>(floor) + lit::<F>(scale) * p)
        .collect()
}

/// Full-support belief (coordinates bounded away from zero).
pub fn belief<F: Real>(rng: &mut ChaCha8Rng, dim: usize, tol: &Tolerance<F>) -> Belief<F> {
    Belief::new(simplex_with_floor(rng, dim, 0.02), tol).expect("sampled simplex point")
}

pub fn profile<F: Real>(
    rng: &mut ChaCha8Rng,
    n: usize,
    dim: usize,
    tol: &Tolerance<F>,
) -> Profile<F> {
    Profile::new((0..n).map(|_| belief(rng, dim, tol)).collect()).expect("sampled profile")
}

pub fn act<F: Real>(rng: &mut ChaCha8Rng, dim: usize, range: F) -> Act<F> {
    let r = range.to_f64().unwrap();
    Act::new((0..dim).map(|_| lit(rng.gen_range(-r..r))).collect()).expect("finite utilities")
}

/// Non-empty proper event over `dim` states with the given minimum sizes for
/// the event and its complement.
pub fn event(rng: &mut ChaCha8Rng, dim: usize, min_size: usize, min_complement: usize) -> Event {
    debug_assert!(min_size + min_complement <= dim);
    loop {
        let size = rng.gen_range(min_size..=dim - min_complement);
        let mut picks: Vec<usize> = (0..dim).collect();
        for i in 0..size {
            let j = rng.gen_range(i..dim);
            picks.swap(i, j);
        }
        let members = picks[..size].to_vec();
        if !members.is_empty() {
            return Event::new(members, dim).expect("sampled event");
        }
    }
}

/// Profile whose disagreement is restricted within `ev`: all experts share
/// the probability of the event and the entire sub-distribution outside it.
pub fn restricted_profile<F: Real>(
    rng: &mut ChaCha8Rng,
    n: usize,
    ev: &Event,
    tol: &Tolerance<F>,
) -> Profile<F> {
    let dim = ev.n_states();
    let off: Vec<usize> = (0..dim).filter(|w| !ev.contains(*w)).collect();
    let alpha: f64 = if off.is_empty() {
        1.0
    } else {
        rng.gen_range(0.2..0.8)
    };
    let tail: Vec<F> = if off.is_empty() {
        Vec::new()
    } else {
        simplex_with_floor(rng, off.len(), 0.02)
    };
    let beliefs = (0..n)
        .map(|_| {
            let head: Vec<F> = simplex_with_floor(rng, ev.members().len(), 0.02);
            let mut probs = vec![F::zero(); dim];
            for (k, &w) in ev.members().iter().enumerate() {
                probs[w] = lit::<F>(alpha) * head[k];
            }
            for (k, &w) in off.iter().enumerate() {
                probs[w] = lit::<F>(1.0 - alpha) * tail[k];
            }
            Belief::new(probs, tol).expect("restricted belief")
        })
        .collect();
    Profile::new(beliefs).expect("restricted profile")
}

/// Profile in which all experts assign the same probability to `ev` but may
/// disagree on every state, inside and outside the event.
pub fn agreeing_profile<F: Real>(
    rng: &mut ChaCha8Rng,
    n: usize,
    ev: &Event,
    tol: &Tolerance<F>,
) -> Profile<F> {
    let dim = ev.n_states();
    let off: Vec<usize> = (0..dim).filter(|w| !ev.contains(*w)).collect();
    let alpha: f64 = if off.is_empty() {
        1.0
    } else {
        rng.gen_range(0.2..0.8)
    };
    let beliefs = (0..n)
        .map(|_| {
            let head: Vec<F> = simplex_with_floor(rng, ev.members().len(), 0.02);
            let tail: Vec<F> = if off.is_empty() {
                Vec::new()
            } else {
                simplex_with_floor(rng, off.len(), 0.02)
            };
            let mut probs = vec![F::zero(); dim];
            for (k, &w) in ev.members().iter().enumerate() {
                probs[w] = lit::<F>(alpha) * head[k];
            }
            for (k, &w) in off.iter().enumerate() {
                probs[w] = lit::<F>(1.0 - alpha) * tail[k];
            }
            Belief::new(probs, tol).expect("agreeing belief")
        })
        .collect();
    Profile::new(beliefs).expect("agreeing profile")
}

/// Default continuation-act sample set: the zero act, any caller-provided
/// anchors (usually f and g), then seeded uniform draws.
pub fn h_samples<F: Real>(
    rng: &mut ChaCha8Rng,
    count: usize,
    dim: usize,
    range: F,
    anchors: &[&Act<F>],
) -> Vec<Act<F>> {
    let mut out = Vec::with_capacity(count + anchors.len() + 1);
    out.push(Act::constant(F::zero(), dim).unwrap());
    for a in anchors {
        out.push((*a).clone());
    }
    for _ in 0..count {
        out.push(act(rng, dim, range));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{agree_on_event, disagreement_restricted_within};

    #[test]
    fn simplex_points_sum_to_one() {
        let mut rng = trial_rng(3, 0);
        for dim in 1..6 {
            let p: Vec<f64> = simplex(&mut rng, dim);
            let s: f64 = p.iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
            assert!(p.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let tol = Tolerance::standard();
        let a: Profile<f64> = profile(&mut trial_rng(7, 42), 3, 4, &tol);
        let b: Profile<f64> = profile(&mut trial_rng(7, 42), 3, 4, &tol);
        assert_eq!(a, b);
    }

    #[test]
    fn restricted_generator_satisfies_both_predicates() {
        let tol = Tolerance::standard();
        for trial in 0..50 {
            let mut rng = trial_rng(11, trial);
            let ev = event(&mut rng, 4, 1, 1);
            let p: Profile<f64> = restricted_profile(&mut rng, 3, &ev, &tol);
            assert!(disagreement_restricted_within(&p, &ev, &tol));
            assert!(agree_on_event(&p, &ev, &tol));
            assert!(p.is_conditionable(&ev, &tol));
        }
    }

    #[test]
    fn agreeing_generator_agrees_on_event() {
        let tol = Tolerance::standard();
        for trial in 0..50 {
            let mut rng = trial_rng(13, trial);
            let ev = event(&mut rng, 5, 2, 2);
            let p: Profile<f64> = agreeing_profile(&mut rng, 3, &ev, &tol);
            assert!(agree_on_event(&p, &ev, &tol));
        }
    }
}
