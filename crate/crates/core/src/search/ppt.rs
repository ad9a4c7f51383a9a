//! Structured PPT states and the indecomposability probe.
//!
//! A structured state `ρ` on `C^n ⊗ C^n` is diagonal except for the cross
//! terms `r_ij` linking the global positions `(i,i)` and `(j,j)`:
//!
//! * block `ρ_ii` is `diag(alpha[i][0], …, alpha[i][n-1])`,
//! * `ρ[(i·n+i, j·n+j)] = r_ij` for `i < j` (and its conjugate).
//!
//! Partial transposition moves `r_ij` to `(i·n+j, j·n+i)`, where it forms a
//! 2x2 block with `alpha[i][j]` and `alpha[j][i]`. Against the Choi matrix,
//! `Tr(ρ C) = Σ_ik a_ki alpha[i][k] − 2 Σ_{i<j} r_ij`; this orientation comes
//! from the block layout of [`choi_matrix`], and the tests pin it against a
//! direct matrix trace.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::optimize::{project_simplex, projected_descent, simplex_sample, start_rng};
use super::{best_start, SearchConfig};
use crate::error::{invalid, Result};
use crate::linalg::{is_psd, partial_transpose, ComplexMatrix, HermitianMatrix, C64};
use crate::maps::{choi_matrix, CoefficientMatrix};

/// Eigenvalue floor accepted when checking that `ρ` and `ρ^Γ` are PSD.
const STATE_PSD_TOL: f64 = 1e-12;

/// Cap on `½·√(y/x)` style derivatives at `x = 0`.
const GRAD_CAP: f64 = 1e6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuredPptState {
    /// `alpha[i][k]` is the `k`-th diagonal entry of block `ρ_ii`.
    pub alpha: Vec<Vec<f64>>,
    /// Upper triangle holds `r_ij`, `i < j`; the rest is zero.
    pub r: Vec<Vec<f64>>,
}

/// `r_ij = min(√(α_ii α_jj), √(α_ij α_ji))`, the largest value allowed by
/// both 2x2 minors.
pub fn maximal_cross_terms(alpha: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = alpha.len();
    let mut r = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let cap_rho = (alpha[i][i] * alpha[j][j]).sqrt();
            let cap_gamma = (alpha[i][j] * alpha[j][i]).sqrt();
            r[i][j] = cap_rho.min(cap_gamma);
        }
    }
    r
}

fn check_alpha(alpha: &[Vec<f64>]) -> Result<usize> {
    let n = alpha.len();
    if n == 0 || alpha.iter().any(|row| row.len() != n) {
        return Err(invalid("alpha must be a nonempty square array"));
    }
    if alpha.iter().flatten().any(|&x| !x.is_finite() || x < 0.0) {
        return Err(invalid("alpha entries must be finite and >= 0"));
    }
    Ok(n)
}

impl StructuredPptState {
    pub fn new(alpha: Vec<Vec<f64>>, r: Vec<Vec<f64>>) -> Result<Self> {
        let n = check_alpha(&alpha)?;
        if r.len() != n || r.iter().any(|row| row.len() != n) {
            return Err(invalid("cross-term array must be n x n"));
        }
        for (i, row) in r.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() || x < 0.0 || (j <= i && x != 0.0) {
                    return Err(invalid("cross terms must be >= 0 and strictly upper triangular"));
                }
            }
        }
        Ok(Self { alpha, r })
    }

    pub fn with_maximal_cross_terms(alpha: Vec<Vec<f64>>) -> Result<Self> {
        check_alpha(&alpha)?;
        let r = maximal_cross_terms(&alpha);
        Ok(Self { alpha, r })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// Pairwise 2x2 conditions on `ρ` and `ρ^Γ`.
    pub fn pairwise_feasible(&self) -> bool {
        let (a, n) = (&self.alpha, self.n());
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let r2 = self.r[i][j] * self.r[i][j];
                let slack = 1e-12 * (1.0 + r2);
                r2 <= a[i][i] * a[j][j] + slack && r2 <= a[i][j] * a[j][i] + slack
            })
        })
    }

    pub fn assemble(&self) -> HermitianMatrix {
        let n = self.n();
        let mut m = ComplexMatrix::zeros(n * n);
        for i in 0..n {
            for k in 0..n {
                m[(i * n + k, i * n + k)] = C64::new(self.alpha[i][k], 0.0);
            }
            for j in i + 1..n {
                let r = C64::new(self.r[i][j], 0.0);
                m[(i * n + i, j * n + j)] = r;
                m[(j * n + j, i * n + i)] = r;
            }
        }
        HermitianMatrix::new(m).expect("real symmetric by construction")
    }

    pub fn trace(&self) -> f64 {
        self.alpha.iter().flatten().sum()
    }

    /// Same state with every cross term multiplied by `t`.
    fn scaled_cross_terms(&self, t: f64) -> Self {
        Self {
            alpha: self.alpha.clone(),
            r: self
                .r
                .iter()
                .map(|row| row.iter().map(|x| x * t).collect())
                .collect(),
        }
    }

    /// Smallest eigenvalues of `ρ` and of `ρ^Γ`.
    pub fn min_eigenvalues(&self) -> Result<(f64, f64)> {
        let rho = self.assemble();
        let pt = partial_transpose(&rho, self.n())?;
        Ok((
            is_psd(&rho, 0.0)?.min_eigenvalue,
            is_psd(&pt, 0.0)?.min_eigenvalue,
        ))
    }

    /// `Tr(ρ C_Φ_A)` by direct matrix evaluation.
    pub fn trace_pairing(&self, a: &CoefficientMatrix) -> Result<f64> {
        if a.n() != self.n() {
            return Err(invalid("state and coefficient matrix dimensions differ"));
        }
        let c = choi_matrix(a);
        Ok(self.assemble().as_matrix().trace_product(c.as_matrix()).re)
    }
}

/// Closed-form `Tr(ρ C)` for the structured state with maximal cross terms.
pub fn structured_ppt_value(a: &CoefficientMatrix, alpha: &[Vec<f64>]) -> Result<f64> {
    let n = check_alpha(alpha)?;
    if n != a.n() {
        return Err(invalid("alpha and coefficient matrix dimensions differ"));
    }
    let flat: Vec<f64> = alpha.iter().flatten().copied().collect();
    Ok(value_raw(&transposed(a), n, &flat))
}

/// Row-major `aᵀ`, so that `alpha[i][k]` pairs with entry `i*n + k`.
fn transposed(a: &CoefficientMatrix) -> Vec<f64> {
    let n = a.n();
    (0..n * n).map(|u| a.get(u % n, u / n)).collect()
}

fn value_raw(at: &[f64], n: usize, x: &[f64]) -> f64 {
    let linear: f64 = at.iter().zip(x).map(|(c, v)| c * v).sum();
    let mut cross = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let cap_rho = (x[i * n + i] * x[j * n + j]).sqrt();
            let cap_gamma = (x[i * n + j] * x[j * n + i]).sqrt();
            cross += cap_rho.min(cap_gamma);
        }
    }
    linear - 2.0 * cross
}

/// `∂√(x·y)/∂x`, capped where `x` vanishes.
fn sqrt_product_partial(x: f64, y: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else if x <= 0.0 {
        GRAD_CAP
    } else {
        (0.5 * (y / x).sqrt()).min(GRAD_CAP)
    }
}

fn value_grad_raw(at: &[f64], n: usize, x: &[f64], g: &mut [f64]) {
    g.copy_from_slice(at);
    for i in 0..n {
        for j in i + 1..n {
            let (ii, jj, ij, ji) = (i * n + i, j * n + j, i * n + j, j * n + i);
            let cap_rho = (x[ii] * x[jj]).sqrt();
            let cap_gamma = (x[ij] * x[ji]).sqrt();
            if cap_rho <= cap_gamma {
                g[ii] -= 2.0 * sqrt_product_partial(x[ii], x[jj]);
                g[jj] -= 2.0 * sqrt_product_partial(x[jj], x[ii]);
            } else {
                g[ij] -= 2.0 * sqrt_product_partial(x[ij], x[ji]);
                g[ji] -= 2.0 * sqrt_product_partial(x[ji], x[ij]);
            }
        }
    }
}

/// Free-position pattern: `alpha[i][i] = 1`; for each pair the position whose
/// paired coefficient is smaller gets `1/eps`, the other `eps` (both 1 on ties).
fn pattern_seeds(a: &CoefficientMatrix) -> Vec<Vec<f64>> {
    let n = a.n();
    [0.125, 0.25, 0.5, 1.0]
        .iter()
        .map(|&eps| {
            let mut x = vec![0.0; n * n];
            for i in 0..n {
                x[i * n + i] = 1.0;
                for j in i + 1..n {
                    // alpha[i][j] pairs with a_ji, alpha[j][i] with a_ij
                    let (cost_ij, cost_ji) = (a.get(j, i), a.get(i, j));
                    let (hi, lo) = (1.0 / eps, eps);
                    let (x_ij, x_ji) = if cost_ij < cost_ji {
                        (hi, lo)
                    } else if cost_ji < cost_ij {
                        (lo, hi)
                    } else {
                        (1.0, 1.0)
                    };
                    x[i * n + j] = x_ij;
                    x[j * n + i] = x_ji;
                }
            }
            let total: f64 = x.iter().sum();
            x.iter_mut().for_each(|v| *v /= total);
            x
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSearch {
    /// Per start: `(alpha, value)` in start order.
    pub results: Vec<(Vec<Vec<f64>>, f64)>,
    pub best_index: usize,
    pub best_value: f64,
}

/// Multi-start projected gradient of the structured value over alpha on the
/// unit simplex. Start order: the four pattern seeds, then `cfg.starts`
/// uniform simplex draws.
pub fn minimize_structured_value(a: &CoefficientMatrix, cfg: &SearchConfig) -> Result<ProbeSearch> {
    cfg.validate()?;
    let n = a.n();
    let at = transposed(a);
    let seeds = pattern_seeds(a);
    let total = seeds.len() + cfg.starts;

    let run = |k: usize| -> (Vec<f64>, f64) {
        let x0 = if k < seeds.len() {
            seeds[k].clone()
        } else {
            simplex_sample(&mut start_rng(cfg.seed, k), n * n)
        };
        let d = projected_descent(
            x0,
            |x| value_raw(&at, n, x),
            |x, g| value_grad_raw(&at, n, x, g),
            project_simplex,
            cfg.max_iterations,
            cfg.step_tolerance,
        );
        (d.x, d.value)
    };
    let raw: Vec<(Vec<f64>, f64)> = (0..total).into_par_iter().map(run).collect();
    let (best_index, best_value) = best_start(raw.iter().map(|r| r.1)).expect("at least one start");
    let results = raw
        .into_iter()
        .map(|(x, v)| (x.chunks(n).map(|c| c.to_vec()).collect(), v))
        .collect();
    Ok(ProbeSearch {
        results,
        best_index,
        best_value,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PptWitnessCertificate {
    pub state: StructuredPptState,
    /// `Tr(ρ C)` by direct matrix evaluation.
    pub trace_value: f64,
    /// `trace_value / Tr ρ`.
    pub normalized_value: f64,
    pub rho_min_eigenvalue: f64,
    pub partial_transpose_min_eigenvalue: f64,
}

impl PptWitnessCertificate {
    pub fn from_state(a: &CoefficientMatrix, state: StructuredPptState) -> Result<Self> {
        let trace_value = state.trace_pairing(a)?;
        let (rho_min, pt_min) = state.min_eigenvalues()?;
        Ok(Self {
            normalized_value: trace_value / state.trace(),
            trace_value,
            rho_min_eigenvalue: rho_min,
            partial_transpose_min_eigenvalue: pt_min,
            state,
        })
    }

    /// Re-checks PSD of `ρ` and `ρ^Γ` and the negative pairing from the stored state.
    pub fn verify(&self, a: &CoefficientMatrix, tol: f64) -> Result<()> {
        let fresh = Self::from_state(a, self.state.clone())?;
        if fresh.rho_min_eigenvalue < -STATE_PSD_TOL {
            return Err(invalid(format!(
                "ρ is not PSD (λ_min = {})",
                fresh.rho_min_eigenvalue
            )));
        }
        if fresh.partial_transpose_min_eigenvalue < -STATE_PSD_TOL {
            return Err(invalid(format!(
                "ρ^Γ is not PSD (λ_min = {})",
                fresh.partial_transpose_min_eigenvalue
            )));
        }
        if (fresh.trace_value - self.trace_value).abs() > 1e-10 {
            return Err(invalid(format!(
                "stored Tr(ρC) = {} but recomputed {}",
                self.trace_value, fresh.trace_value
            )));
        }
        if !(fresh.trace_value < -tol) {
            return Err(invalid(format!(
                "Tr(ρC) = {} is not below -{tol}",
                fresh.trace_value
            )));
        }
        Ok(())
    }
}

/// Turns an alpha profile into a verified PPT state. If maximal cross terms
/// break PSD of `ρ` (pairwise caps do not imply PSD for n >= 3), the cross
/// terms are scaled down by bisection until `ρ` is PSD.
fn certify(a: &CoefficientMatrix, alpha: Vec<Vec<f64>>, tol: f64) -> Result<Option<PptWitnessCertificate>> {
    let full = StructuredPptState::with_maximal_cross_terms(alpha)?;
    let rho_ok = |s: &StructuredPptState| -> Result<bool> {
        Ok(is_psd(&s.assemble(), 0.0)?.min_eigenvalue >= -STATE_PSD_TOL)
    };
    let state = if rho_ok(&full)? {
        full
    } else {
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if rho_ok(&full.scaled_cross_terms(mid))? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        full.scaled_cross_terms(lo)
    };
    let cert = PptWitnessCertificate::from_state(a, state)?;
    if cert.rho_min_eigenvalue >= -STATE_PSD_TOL
        && cert.partial_transpose_min_eigenvalue >= -STATE_PSD_TOL
        && cert.trace_value < -tol
    {
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

/// A verified PPT state with negative pairing, if the probe finds one.
/// Candidates are tried in `(value, start_index)` order among starts whose
/// optimised value is below `−cfg.violation_tolerance`.
pub fn indecomposability_probe(
    a: &CoefficientMatrix,
    cfg: &SearchConfig,
) -> Result<Option<PptWitnessCertificate>> {
    let search = minimize_structured_value(a, cfg)?;
    let mut order: Vec<usize> = (0..search.results.len())
        .filter(|&k| search.results[k].1 < -cfg.violation_tolerance)
        .collect();
    order.sort_by(|&i, &j| {
        search.results[i]
            .1
            .total_cmp(&search.results[j].1)
            .then(i.cmp(&j))
    });
    for k in order {
        if let Some(cert) = certify(a, search.results[k].0.clone(), cfg.violation_tolerance)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{CklParams, KyeParams};
    use proptest::prelude::*;

    fn choi() -> CoefficientMatrix {
        CklParams::new(1.0, 0.0, 1.0).unwrap().matrix()
    }

    fn explicit_alpha() -> Vec<Vec<f64>> {
        vec![vec![1.0, 0.25, 4.0], vec![4.0, 1.0, 0.25], vec![0.25, 4.0, 1.0]]
    }

    fn quick() -> SearchConfig {
        SearchConfig {
            starts: 16,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn identity_profile_value() {
        let a =
            CoefficientMatrix::new(&[vec![0.7, 1.0, 2.0], vec![0.3, 1.4, 0.0], vec![0.9, 0.2, 2.2]]).unwrap();
        let alpha = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let v = structured_ppt_value(&a, &alpha).unwrap();
        assert!((v - (0.7 + 1.4 + 2.2)).abs() < 1e-14);
    }

    #[test]
    fn explicit_choi_witness() {
        let state = StructuredPptState::with_maximal_cross_terms(explicit_alpha()).unwrap();
        assert!(state.r[0][1] == 1.0 && state.r[0][2] == 1.0 && state.r[1][2] == 1.0);
        let rho = state.assemble();
        let diag: Vec<f64> = (0..9).map(|k| rho[(k, k)].re).collect();
        assert_eq!(diag, vec![1.0, 0.25, 4.0, 4.0, 1.0, 0.25, 0.25, 4.0, 1.0]);
        let direct = state.trace_pairing(&choi()).unwrap();
        assert!((direct + 2.25).abs() < 1e-12);
        let closed = structured_ppt_value(&choi(), &explicit_alpha()).unwrap();
        assert!((closed - direct).abs() < 1e-12);
        let (m1, m2) = state.min_eigenvalues().unwrap();
        assert!(m1 > -1e-12 && m2 > -1e-12);
        assert!((state.trace() - 15.75).abs() < 1e-15);
        let cert = PptWitnessCertificate::from_state(&choi(), state).unwrap();
        assert!((cert.normalized_value + 1.0 / 7.0).abs() < 1e-12);
        cert.verify(&choi(), 1e-9).unwrap();
    }

    #[test]
    fn printed_pairing_orientation_disagrees_with_matrix_trace() {
        // Σ a_ij alpha_ij would give 15 − 6 = 9 here; the matrix trace says −2.25.
        let a = choi();
        let alpha = explicit_alpha();
        let printed: f64 = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j) * alpha[i][j])
            .sum::<f64>()
            - 6.0;
        assert!((printed - 9.0).abs() < 1e-12);
    }

    #[test]
    fn choi_probe_beats_explicit_witness() {
        let cert = indecomposability_probe(&choi(), &quick()).unwrap().unwrap();
        assert!(
            cert.normalized_value <= -1.0 / 7.0 + 1e-6,
            "{}",
            cert.normalized_value
        );
        cert.verify(&choi(), 1e-9).unwrap();
    }

    #[test]
    fn kye_boundary_probe() {
        let a = KyeParams::new(1.0, [1.0, 1.0, 1.0]).unwrap().matrix();
        assert!(indecomposability_probe(&a, &quick()).unwrap().is_some());
        let a = KyeParams::new(1.5, [0.5, 1.0, 2.0]).unwrap().matrix();
        assert!(indecomposability_probe(&a, &quick()).unwrap().is_some());
    }

    #[test]
    fn all_ones_has_no_witness() {
        let a = CoefficientMatrix::new(&vec![vec![1.0; 3]; 3]).unwrap();
        assert!(indecomposability_probe(&a, &quick()).unwrap().is_none());
        let s = minimize_structured_value(&a, &quick()).unwrap();
        assert!(s.best_value >= -1e-12);
    }

    #[test]
    fn rejects_negative_alpha() {
        let alpha = vec![vec![1.0, -0.1], vec![0.0, 1.0]];
        let a = CoefficientMatrix::new(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(structured_ppt_value(&a, &alpha).is_err());
    }

    #[test]
    fn bisection_repairs_non_psd_rho() {
        // Caps from the partial-transpose side give r = [[·,1,0],[·,·,1]]
        // with unit diagonal: the 3x3 block [[1,1,0],[1,1,1],[0,1,1]] is not PSD.
        let alpha = vec![vec![1.0, 1.0, 0.0], vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 1.0]];
        let full = StructuredPptState::with_maximal_cross_terms(alpha.clone()).unwrap();
        assert!(full.min_eigenvalues().unwrap().0 < -0.1);
        let a = CoefficientMatrix::new(&vec![vec![0.0; 3]; 3]).unwrap();
        let cert = certify(&a, alpha, 1e-9).unwrap().unwrap();
        assert!(cert.rho_min_eigenvalue >= -1e-12);
        assert!(cert.state.pairwise_feasible());
    }

    proptest! {
        #[test]
        fn closed_form_matches_matrix_trace(
            n in 2usize..5,
            coeffs in proptest::collection::vec(0.0f64..3.0, 16),
            alpha in proptest::collection::vec(0.0f64..2.0, 16),
        ) {
            let rows: Vec<Vec<f64>> = (0..n).map(|i| coeffs[i * 4..i * 4 + n].to_vec()).collect();
            let a = CoefficientMatrix::new(&rows).unwrap();
            let alpha: Vec<Vec<f64>> = (0..n).map(|i| alpha[i * 4..i * 4 + n].to_vec()).collect();
            let state = StructuredPptState::with_maximal_cross_terms(alpha.clone()).unwrap();
            prop_assert!(state.pairwise_feasible());
            let direct = state.trace_pairing(&a).unwrap();
            let closed = structured_ppt_value(&a, &alpha).unwrap();
            prop_assert!((direct - closed).abs() < 1e-10);
            // ρ^Γ only couples disjoint 2x2 blocks, so pairwise caps make it PSD.
            let (_, pt_min) = state.min_eigenvalues().unwrap();
            prop_assert!(pt_min > -1e-10);
        }
    }
}
