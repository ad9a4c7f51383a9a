//! Projected gradient descent with backtracking, plus the per-start RNG streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ARMIJO: f64 = 1e-4;
const MAX_STEP: f64 = 1.0;
const MIN_STEP: f64 = 1e-16;

#[derive(Clone, Debug)]
pub(crate) struct Descent {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Minimises `f` over the image of `project` starting at `project(x0)`.
///
/// Steps run along the normalised negative gradient. A start terminates when
/// an accepted step improves `f` by less than `step_tol`, when backtracking
/// shrinks the step below `1e-16`, or after `max_iter` accepted steps.
pub(crate) fn projected_descent<F, G, P>(
    x0: Vec<f64>,
    f: F,
    grad: G,
    project: P,
    max_iter: usize,
    step_tol: f64,
) -> Descent
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64], &mut [f64]),
    P: Fn(&mut [f64]),
{
    let mut x = x0;
    project(&mut x);
    let mut fx = f(&x);
    let mut g = vec![0.0; x.len()];
    let mut y = vec![0.0; x.len()];
    let mut step = MAX_STEP / 4.0;
    let mut iterations = 0;

    while iterations < max_iter {
        grad(&x, &mut g);
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm == 0.0 || !gnorm.is_finite() {
            break;
        }
        let accepted = loop {
            for ((yi, xi), gi) in y.iter_mut().zip(&x).zip(&g) {
                *yi = xi - step * gi / gnorm;
            }
            project(&mut y);
            let fy = f(&y);
            let predicted: f64 = g
                .iter()
                .zip(&x)
                .zip(&y)
                .map(|((gi, xi), yi)| gi * (xi - yi))
                .sum();
            if fy.is_finite() && fy <= fx - ARMIJO * predicted.max(0.0) && fy < fx {
                break Some(fy);
            }
            step *= 0.5;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some(fy) = accepted else { break };
        iterations += 1;
        let improvement = fx - fy;
        std::mem::swap(&mut x, &mut y);
        fx = fy;
        step = (step * 2.0).min(MAX_STEP);
        if improvement < step_tol {
            break;
        }
    }
    Descent {
        x,
        value: fx,
        iterations,
    }
}

/// Independent stream per start: ChaCha keyed by the seed, stream id = start index.
pub(crate) fn start_rng(seed: u64, start_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start_index as u64);
    rng
}

/// Uniform point of the probability simplex (flat Dirichlet).
pub(crate) fn simplex_sample(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..dim).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

/// Euclidean projection onto `{x >= 0, Σ x = 1}`.
pub(crate) fn project_simplex(x: &mut [f64]) {
    let mut sorted: Vec<f64> = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let t = (cumulative - 1.0) / (k + 1) as f64;
        if u - t > 0.0 {
            theta = t;
        }
    }
    x.iter_mut().for_each(|v| *v = (*v - theta).max(0.0));
}

/// Clamp negatives to zero and rescale to unit Euclidean norm. An all-zero
/// result falls back to the uniform unit vector.
pub(crate) fn project_unit_nonneg(x: &mut [f64]) {
    x.iter_mut().for_each(|v| *v = v.max(0.0));
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    } else {
        let u = 1.0 / (x.len() as f64).sqrt();
        x.iter_mut().for_each(|v| *v = u);
    }
}
