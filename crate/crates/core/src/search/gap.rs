//! The positivity gap and the product-vector search.
//!
//! For nonnegative `p, q`,
//!
//! ```text
//! gap(p, q) = Σ_ij a'_ij p_i² q_j² − (Σ_i p_i q_i)²,   a'_ij = a_ij + δ_ij,
//! ```
//!
//! equals `<p, Φ_A(q qᵀ) p>`, and after the phases of complex vectors are
//! optimised away `Φ_A` is positive exactly when the gap is nonnegative
//! everywhere.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::optimize::{project_unit_nonneg, projected_descent, simplex_sample, start_rng};
use super::{best_start, SearchConfig};
use crate::error::{invalid, Result};
use crate::linalg::{
    determinant, hermitian_eigenvalues, is_psd, product_vector, ComplexVector, HermitianMatrix,
    DEFAULT_PSD_TOL,
};
use crate::maps::{apply_map, CoefficientMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct NonnegativeVector(Vec<f64>);

impl NonnegativeVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("vector must be nonempty"));
        }
        if entries.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(invalid("vector entries must be finite and >= 0"));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn to_complex(&self) -> ComplexVector {
        ComplexVector::from_real(&self.0).expect("nonempty")
    }
}

impl TryFrom<Vec<f64>> for NonnegativeVector {
    type Error = crate::Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<NonnegativeVector> for Vec<f64> {
    fn from(v: NonnegativeVector) -> Self {
        v.0
    }
}

fn check_dims(a: &CoefficientMatrix, p: &NonnegativeVector, q: &NonnegativeVector) -> Result<()> {
    if p.dim() != a.n() || q.dim() != a.n() {
        return Err(invalid(format!(
            "vectors of length {} and {} do not match n = {}",
            p.dim(),
            q.dim(),
            a.n()
        )));
    }
    Ok(())
}

/// Row-major `a'` with the Kronecker delta folded in.
fn shifted(a: &CoefficientMatrix) -> Vec<f64> {
    let n = a.n();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(a.get(i, j) + if i == j { 1.0 } else { 0.0 });
        }
    }
    out
}

fn gap_raw(ap: &[f64], n: usize, p: &[f64], q: &[f64]) -> f64 {
    let mut quad = 0.0;
    let mut overlap = 0.0;
    for i in 0..n {
        let pi2 = p[i] * p[i];
        let row = &ap[i * n..(i + 1) * n];
        let inner: f64 = row.iter().zip(q).map(|(a, qj)| a * qj * qj).sum();
        quad += pi2 * inner;
        overlap += p[i] * q[i];
    }
    quad - overlap * overlap
}

fn gap_grad_raw(ap: &[f64], n: usize, p: &[f64], q: &[f64], gp: &mut [f64], gq: &mut [f64]) {
    let overlap: f64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
    for i in 0..n {
        let row = &ap[i * n..(i + 1) * n];
        let inner: f64 = row.iter().zip(q).map(|(a, qj)| a * qj * qj).sum();
        gp[i] = 2.0 * p[i] * inner - 2.0 * overlap * q[i];
    }
    for j in 0..n {
        let inner: f64 = (0..n).map(|i| ap[i * n + j] * p[i] * p[i]).sum();
        gq[j] = 2.0 * q[j] * inner - 2.0 * overlap * p[j];
    }
}

pub fn positivity_gap(a: &CoefficientMatrix, p: &NonnegativeVector, q: &NonnegativeVector) -> Result<f64> {
    check_dims(a, p, q)?;
    Ok(gap_raw(&shifted(a), a.n(), &p.0, &q.0))
}

/// Two regroupings of the gap into sums of squares plus pair terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapDecomposition {
    /// `[Σ_k a_kk p_k²q_k², Σ_{k<l} (√a_kl p_k q_l − √a_lk p_l q_k)²,
    ///   2 Σ_{k<l} (√(a_kl a_lk) − 1) p_k p_l q_k q_l]`
    pub local_terms: [f64; 3],
    pub local_total: f64,
    /// `[Σ_{i<j} (√(a_ii/(n−1)) p_i q_i − √(a_jj/(n−1)) p_j q_j)², cross squares as above,
    ///   2 Σ_{i<j} (√(a_ii a_jj)/(n−1) + √(a_ij a_ji) − 1) p_i p_j q_i q_j]`
    pub split_terms: [f64; 3],
    pub split_total: f64,
}

pub fn gap_decomposition(
    a: &CoefficientMatrix,
    p: &NonnegativeVector,
    q: &NonnegativeVector,
) -> Result<GapDecomposition> {
    check_dims(a, p, q)?;
    let n = a.n();
    let (p, q) = (&p.0, &q.0);
    let m = (n - 1) as f64;

    let diag: f64 = (0..n).map(|k| a.get(k, k) * p[k] * p[k] * q[k] * q[k]).sum();
    let (mut cross_sq, mut local_pair, mut diag_sq, mut split_pair) = (0.0, 0.0, 0.0, 0.0);
    for k in 0..n {
        for l in k + 1..n {
            let w = p[k] * p[l] * q[k] * q[l];
            let (akl, alk) = (a.get(k, l), a.get(l, k));
            let (akk, all) = (a.get(k, k), a.get(l, l));
            cross_sq += (akl.sqrt() * p[k] * q[l] - alk.sqrt() * p[l] * q[k]).powi(2);
            local_pair += 2.0 * ((akl * alk).sqrt() - 1.0) * w;
            diag_sq += ((akk / m).sqrt() * p[k] * q[k] - (all / m).sqrt() * p[l] * q[l]).powi(2);
            split_pair += 2.0 * ((akk * all).sqrt() / m + (akl * alk).sqrt() - 1.0) * w;
        }
    }
    let local_terms = [diag, cross_sq, local_pair];
    let split_terms = [diag_sq, cross_sq, split_pair];
    Ok(GapDecomposition {
        local_terms,
        local_total: local_terms.iter().sum(),
        split_terms,
        split_total: split_terms.iter().sum(),
    })
}

/// Product vector `(p, q)` with negative positivity gap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationCertificate {
    /// Unit norm; plays the role of the output test vector.
    pub p: NonnegativeVector,
    /// Unit norm; `q qᵀ` is the PSD input whose image fails to be PSD.
    pub q: NonnegativeVector,
    pub gap: f64,
    /// Smallest eigenvalue of `Φ_A(q qᵀ)`.
    pub residual_check: f64,
}

impl ViolationCertificate {
    /// Recomputes the gap and the eigenvalue check from the stored vectors.
    pub fn verify(&self, a: &CoefficientMatrix, tol: f64) -> Result<()> {
        let gap = positivity_gap(a, &self.p, &self.q)?;
        if (gap - self.gap).abs() > 1e-12 {
            return Err(invalid(format!(
                "stored gap {} does not match recomputed {gap}",
                self.gap
            )));
        }
        if !(gap < -tol) {
            return Err(invalid(format!("gap {gap} is not below -{tol}")));
        }
        let image = apply_map(a, &crate::linalg::outer_product(&self.q.to_complex()))?;
        let min = hermitian_eigenvalues(&image)?.values[0];
        if !(min < 0.0) {
            return Err(invalid(format!(
                "image of q qᵀ has smallest eigenvalue {min} >= 0"
            )));
        }
        Ok(())
    }
}

/// Best point found by the multi-start gap search, negative or not.
#[derive(Clone, Debug, PartialEq)]
pub struct GapSearch {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub gap: f64,
    pub start_index: usize,
    pub starts_run: usize,
    /// Accepted descent steps summed over all starts.
    pub iterations: usize,
}

/// Closed-form pair-supported points that zero both squares of the two-index
/// expansion, or a balanced pair point where the closed form is undefined.
fn pair_seeds(a: &CoefficientMatrix) -> Vec<(Vec<f64>, Vec<f64>)> {
    let n = a.n();
    let mut seeds = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (aii, ajj, aij, aji) = (a.get(i, i), a.get(j, j), a.get(i, j), a.get(j, i));
            let mut p = vec![0.0; n];
            let mut q = vec![0.0; n];
            if aii > 0.0 && ajj > 0.0 && aij > 0.0 && aji > 0.0 {
                p[i] = 1.0;
                q[j] = 1.0;
                p[j] = (aij * aii / (aji * ajj)).powf(0.25);
                q[i] = (aij * ajj / (aji * aii)).powf(0.25);
            } else {
                p[i] = 1.0;
                p[j] = 1.0;
                q[i] = 1.0;
                q[j] = 1.0;
            }
            seeds.push((p, q));
        }
    }
    seeds
}

/// Multi-start projected gradient on unit-norm nonnegative `(p, q)`.
///
/// Start order: all pair seeds (pairs `(i, j)`, `i < j`, lexicographic), then
/// `cfg.starts` random starts with `p_i = √w_i`, `q_i = √v_i` for uniform
/// simplex draws `w, v`.
pub fn minimize_positivity_gap(a: &CoefficientMatrix, cfg: &SearchConfig) -> Result<GapSearch> {
    cfg.validate()?;
    let n = a.n();
    let ap = shifted(a);
    let seeds = pair_seeds(a);
    let total = seeds.len() + cfg.starts;

    let run = |k: usize| -> (Vec<f64>, f64, usize) {
        let (p0, q0) = if k < seeds.len() {
            seeds[k].clone()
        } else {
            let mut rng = start_rng(cfg.seed, k);
            let w = simplex_sample(&mut rng, n);
            let v = simplex_sample(&mut rng, n);
            (
                w.iter().map(|x| x.sqrt()).collect(),
                v.iter().map(|x| x.sqrt()).collect(),
            )
        };
        let x0: Vec<f64> = p0.into_iter().chain(q0).collect();
        let d = projected_descent(
            x0,
            |x| gap_raw(&ap, n, &x[..n], &x[n..]),
            |x, g| {
                let (gp, gq) = g.split_at_mut(n);
                gap_grad_raw(&ap, n, &x[..n], &x[n..], gp, gq)
            },
            |x| {
                let (p, q) = x.split_at_mut(n);
                project_unit_nonneg(p);
                project_unit_nonneg(q);
            },
            cfg.max_iterations,
            cfg.step_tolerance,
        );
        (d.x, d.value, d.iterations)
    };

    let results: Vec<(Vec<f64>, f64, usize)> = (0..total).into_par_iter().map(run).collect();
    let (start_index, gap) = best_start(results.iter().map(|r| r.1)).expect("at least one start");
    let x = &results[start_index].0;
    Ok(GapSearch {
        p: x[..n].to_vec(),
        q: x[n..].to_vec(),
        gap,
        start_index,
        starts_run: total,
        iterations: results.iter().map(|r| r.2).sum(),
    })
}

/// A certificate when the best gap found is below `−cfg.violation_tolerance`.
pub fn find_positivity_violation(
    a: &CoefficientMatrix,
    cfg: &SearchConfig,
) -> Result<Option<ViolationCertificate>> {
    let best = minimize_positivity_gap(a, cfg)?;
    if !(best.gap < -cfg.violation_tolerance) {
        return Ok(None);
    }
    let p = NonnegativeVector::new(best.p)?;
    let q = NonnegativeVector::new(best.q)?;
    let gap = positivity_gap(a, &p, &q)?;
    let image = apply_map(a, &crate::linalg::outer_product(&q.to_complex()))?;
    let residual_check = hermitian_eigenvalues(&image)?.values[0];
    Ok(Some(ViolationCertificate {
        p,
        q,
        gap,
        residual_check,
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleCheck {
    pub image: HermitianMatrix,
    pub det: f64,
    /// Image is PSD.
    pub psd: bool,
    pub input_psd: bool,
    pub image_min_eigenvalue: f64,
    pub input_min_eigenvalue: f64,
}

pub fn verify_counterexample(a: &CoefficientMatrix, x: &HermitianMatrix) -> Result<CounterexampleCheck> {
    let image = apply_map(a, x)?;
    let input = is_psd(x, DEFAULT_PSD_TOL)?;
    let out = is_psd(&image, DEFAULT_PSD_TOL)?;
    Ok(CounterexampleCheck {
        det: determinant(&image),
        image,
        psd: out.psd,
        input_psd: input.psd,
        image_min_eigenvalue: out.min_eigenvalue,
        input_min_eigenvalue: input.min_eigenvalue,
    })
}

/// `<ξ⊗η, C ξ⊗η>`.
pub fn block_positivity_value(c: &HermitianMatrix, xi: &ComplexVector, eta: &ComplexVector) -> Result<f64> {
    if c.dim() != xi.dim() * eta.dim() {
        return Err(invalid(format!(
            "matrix of size {} does not act on {} ⊗ {}",
            c.dim(),
            xi.dim(),
            eta.dim()
        )));
    }
    Ok(c.expectation(&product_vector(xi, eta)))
}
