//! Convex-hull membership via a dense phase-1 simplex solver, and the
//! rectangularity test for a belief set against a binary partition {E, E^c}.

use crate::error::{Error, Result};
use crate::prob::{Belief, Event, Tolerance};
use crate::{lit, Real};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Result of a hull-membership query.
#[derive(Debug, Clone, PartialEq)]
pub struct HullMembership<F> {
    pub inside: bool,
    /// Convex coefficients over the vertex list when inside.
    pub coefficients: Option<Vec<F>>,
    /// Phase-1 infeasibility residual (zero iff the point is in the hull).
    pub residual: F,
}

const MAX_PIVOTS: usize = 10_000;

/// Decides whether `point` lies in the convex hull of `vertices` by solving
/// the feasibility system  point = sum c_k v_k,  c_k >= 0,  sum c_k = 1
/// with a phase-1 simplex method under Bland's rule.
pub fn hull_contains<F: Real>(
    vertices: &[Belief<F>],
    point: &Belief<F>,
    tol: &Tolerance<F>,
) -> Result<HullMembership<F>> {
    if vertices.is_empty() {
        return Err(Error::NoVertices);
    }
    let dim = point.dim();
    for v in vertices {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: v.dim(),
            });
        }
    }

    let k = vertices.len();
    let rows = dim + 1; // one per coordinate plus the convexity row
    let cols = k + rows; // structural variables plus one artificial per row

    // tableau[r] = coefficients row followed by rhs
    let mut tab = vec![vec![F::zero(); cols + 1]; rows];
    for (r, row) in tab.iter_mut().enumerate() {
        for (j, v) in vertices.iter().enumerate() {
            row[j] = if r < dim { v.prob(r) } else { F::one() };
        }
        row[k + r] = F::one();
        row[cols] = if r < dim { point.prob(r) } else { F::one() };
    }
    let mut basis: Vec<usize> = (k..k + rows).collect();

    // Phase-1 objective: minimize the artificial sum. The profit row over the
    // structural columns starts as the column sums of the constraint rows.
    let mut profit = vec![F::zero(); cols];
    for (j, p) in profit.iter_mut().enumerate().take(k) {
        for row in tab.iter() {
            *p = *p + row[j];
        }
    }

    let pivot_tol: F = lit(1e-12);
    for _ in 0..MAX_PIVOTS {
        // Bland: smallest structural index with positive reduced profit.
        // Artificial columns never re-enter.
        let entering = match (0..k).find(|&j| profit[j] > pivot_tol) {
            Some(j) => j,
            None => break,
        };
        // Ratio test, ties broken by smallest basis index.
        let mut leave: Option<(usize, F)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[entering] > pivot_tol {
                let ratio = row[cols] / row[entering];
                let better = match leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - pivot_tol
                            || ((ratio - lratio).abs() <= pivot_tol && basis[r] < basis[lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (lr, _) = match leave {
            Some(x) => x,
            None => break, // unbounded cannot happen here; stop defensively
        };
        // Pivot.
        let piv = tab[lr][entering];
        for x in tab[lr].iter_mut() {
            *x = *x / piv;
        }
        for r in 0..rows {
            if r != lr {
                let factor = tab[r][entering];
                if factor != F::zero() {
                    for j in 0..=cols {
                        let delta = factor * tab[lr][j];
                        tab[r][j] = tab[r][j] - delta;
                    }
                }
            }
        }
        let factor = profit[entering];
        for (j, p) in profit.iter_mut().enumerate() {
            *p = *p - factor * tab[lr][j];
        }
        basis[lr] = entering;
    }

    let mut residual = F::zero();
    let mut coeffs = vec![F::zero(); k];
    for (r, &b) in basis.iter().enumerate() {
        if b < k {
            coeffs[b] = tab[r][cols];
        } else {
            residual = residual + tab[r][cols];
        }
    }
    let inside = residual.abs() <= tol.eps_simplex;
    Ok(HullMembership {
        inside,
        coefficients: if inside {
            // clean pivot dust
            Some(coeffs.into_iter().map(|c| c.max(F::zero())).collect())
        } else {
            None
        },
        residual: residual.abs(),
    })
}

fn paste<F: Real>(
    p1: &Belief<F>,
    p2: &Belief<F>,
    p3: &Belief<F>,
    event: &Event,
    tol: &Tolerance<F>,
) -> Result<Belief<F>> {
    let off = event.complement()?;
    let a = p3.event_prob(event)?;
    let cond_on = p1.condition(event, tol)?;
    let cond_off = p2.condition(&off, tol)?;
    let probs = (0..p1.dim())
        .map(|w| a * cond_on.prob(w) + (F::one() - a) * cond_off.prob(w))
        .collect();
    Belief::new(probs, tol)
}

fn random_hull_point<F: Real>(
    vertices: &[Belief<F>],
    rng: &mut ChaCha8Rng,
    tol: &Tolerance<F>,
) -> Belief<F> {
    let coeffs = crate::axiom_lab::sample::simplex::<F>(rng, vertices.len());
    let dim = vertices[0].dim();
    let mut probs = vec![F::zero(); dim];
    for (c, v) in coeffs.iter().zip(vertices) {
        for w in 0..dim {
            probs[w] = probs[w] + *c * v.prob(w);
        }
    }
    Belief::new(probs, tol).expect("convex combination of beliefs is a belief")
}

const RECTANGULARITY_SPOT_CHECKS: usize = 64;
const RECTANGULARITY_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// Tests whether the convex hull of `vertices` is rectangular with respect to
/// the partition {E, E^c}: every pasted measure
/// p4(F) = p3(E) p1(F|E) + p3(E^c) p2(F|E^c) must stay in the hull.
/// Checks all ordered vertex triples plus seeded random hull-point triples.
pub fn is_rectangular<F: Real>(
    vertices: &[Belief<F>],
    event: &Event,
    tol: &Tolerance<F>,
) -> Result<bool> {
    if vertices.is_empty() {
        return Err(Error::NoVertices);
    }
    let off = event.complement().map_err(|_| Error::ConditioningUndefined {
        vertex: 0,
    })?;
    for (i, v) in vertices.iter().enumerate() {
        if v.event_prob(event)? <= tol.eps_simplex || v.event_prob(&off)? <= tol.eps_simplex {
            return Err(Error::ConditioningUndefined { vertex: i });
        }
    }

    // Membership tolerance is looser than the construction tolerance so that
    // pasted points on the hull boundary are not rejected for pivot dust.
    let member_tol = Tolerance {
        eps_simplex: tol.eps_simplex * lit(1e3),
        ..*tol
    };

    for p1 in vertices {
        for p2 in vertices {
            for p3 in vertices {
                let p4 = paste(p1, p2, p3, event, tol)?;
                if !hull_contains(vertices, &p4, &member_tol)?.inside {
                    return Ok(false);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RECTANGULARITY_SEED);
    for _ in 0..RECTANGULARITY_SPOT_CHECKS {
        let p1 = random_hull_point(vertices, &mut rng, tol);
        let p2 = random_hull_point(vertices, &mut rng, tol);
        let p3 = random_hull_point(vertices, &mut rng, tol);
        let p4 = paste(&p1, &p2, &p3, event, tol)?;
        if !hull_contains(vertices, &p4, &member_tol)?.inside {
            return Ok(false);
        }
    }
    Ok(true)
}
