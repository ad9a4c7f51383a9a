//! Dense complex linear algebra at desk scale.
//!
//! Everything here is sized for matrices up to a few hundred rows: Choi
//! matrices of maps on `M_n` with `n <= 16`. Storage is row-major and dense.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type C64 = Complex64;

/// Absolute tolerance for the `h[i][j] == conj(h[j][i])` check.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Default tolerance for positive semidefiniteness tests.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

const JACOBI_RELATIVE_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// General square complex matrix, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(invalid("matrix must have at least one row"));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(invalid(format!(
                "row {i} has {} entries, expected {dim}",
                r.len()
            )));
        }
        Ok(Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim, v.dim(), "matrix-vector dimension mismatch");
        let n = self.dim;
        let out = (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum())
            .collect();
        ComplexVector(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|m[i][j] - conj(m[j][i])|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i * n + j] * other.data[j * n + i];
            }
        }
        acc
    }

    /// Determinant by LU factorisation with partial pivoting.
    pub fn determinant(&self) -> C64 {
        let n = self.dim;
        let mut lu = self.data.clone();
        let mut det = C64::new(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| lu[a * n + col].norm().total_cmp(&lu[b * n + col].norm()))
                .unwrap_or(col);
            if lu[pivot * n + col].norm() == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..n {
                    lu.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = lu[col * n + col];
            det *= p;
            for row in col + 1..n {
                let factor = lu[row * n + col] / p;
                if factor == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in col..n {
                    let upper = lu[col * n + j];
                    lu[row * n + j] -= factor * upper;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            let cells: Vec<String> = row
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        format!("{:>9.4}", z.re)
                    } else {
                        format!("{:.4}{:+.4}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Square complex matrix with `h[i][j] == conj(h[j][i])` within [`HERMITIAN_TOL`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.dim == 0 {
            return Err(invalid("matrix dimension must be at least 1"));
        }
        if m.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid("matrix has non-finite entries"));
        }
        let defect = m.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(invalid(format!(
                "matrix is not Hermitian (symmetry defect {defect:.3e})"
            )));
        }
        Ok(Self(m))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows)?)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Real quadratic form `<v, H v>`.
    pub fn expectation(&self, v: &ComplexVector) -> f64 {
        let hv = self.0.apply(v);
        v.inner(&hv).re
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = C64;
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(d)?;
        HermitianMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexVector(Vec<C64>);

impl ComplexVector {
    pub fn new(entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("vector dimension must be at least 1"));
        }
        Ok(Self(entries))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[k] = C64::new(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `<self, other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    /// Ascending.
    pub values: Vec<f64>,
    /// Max-norm of `H v - lambda v` over all computed pairs.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
    pub residual: f64,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> ComplexVector {
        let n = self.vectors.dim();
        ComplexVector((0..n).map(|i| self.vectors[(i, k)]).collect())
    }
}

/// Cyclic complex Jacobi. Each rotation first removes the phase of `h[p][q]`
/// and then applies the real plane rotation that annihilates it. Sweeps stop
/// once the off-diagonal Frobenius mass falls below `1e-14` of the diagonal mass.
pub fn hermitian_eigen(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = h.dim();
    let mut a = h.0.clone();
    let mut v = ComplexMatrix::identity(n);
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let (mut off, mut diag) = (0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    diag += a[(i, i)].norm_sqr();
                } else {
                    off += a[(i, j)].norm_sqr();
                }
            }
        }
        if off == 0.0 || off.sqrt() < JACOBI_RELATIVE_TOL * diag.sqrt() {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])]);

    let mut residual = 0.0_f64;
    for (k, &lambda) in values.iter().enumerate() {
        for i in 0..n {
            let hv: C64 = (0..n).map(|j| h.0[(i, j)] * vectors[(j, k)]).sum();
            residual = residual.max((hv - lambda * vectors[(i, k)]).norm());
        }
    }

    Ok(EigenDecomposition {
        values,
        vectors,
        residual,
    })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.dim();
    let phase = apq / mag;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -s * phase.conj();
    let g_qq = c * phase.conj();

    for k in 0..n {
        let (x, y) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = x * g_pp + y * g_qp;
        a[(k, q)] = x * g_pq + y * g_qq;
    }
    for k in 0..n {
        let (x, y) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
        a[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let (x, y) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = x * g_pp + y * g_qp;
        v[(k, q)] = x * g_pq + y * g_qq;
    }
}

pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Result<EigenResult> {
    let d = hermitian_eigen(h)?;
    Ok(EigenResult {
        values: d.values,
        residual: d.residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

impl PsdCheck {
    /// Smallest eigenvalue sits inside `(-tol, tol)`.
    pub fn is_marginal(&self, tol: f64) -> bool {
        self.min_eigenvalue.abs() < tol
    }
}

pub fn is_psd(h: &HermitianMatrix, tol: f64) -> Result<PsdCheck> {
    if !(tol >= 0.0) {
        return Err(invalid("PSD tolerance must be nonnegative"));
    }
    let values = hermitian_eigenvalues(h)?.values;
    let min_eigenvalue = values[0];
    Ok(PsdCheck {
        psd: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}

/// Real determinant of a Hermitian matrix; the (roundoff) imaginary part is dropped.
pub fn determinant(h: &HermitianMatrix) -> f64 {
    h.0.determinant().re
}

/// Transposes every `n x n` block of an `n^2 x n^2` matrix in place of the
/// second tensor factor. Global index `i*n + k` is entry `k` of block `i`.
pub fn partial_transpose(r: &HermitianMatrix, n: usize) -> Result<HermitianMatrix> {
    if n == 0 || r.dim() != n * n {
        return Err(invalid(format!(
            "partial transpose needs a {0}x{0} matrix for block size {1}, got {2}x{2}",
            n * n,
            n,
            r.dim()
        )));
    }
    let m = ComplexMatrix::from_fn(n * n, |row, col| {
        let (i, k) = (row / n, row % n);
        let (j, l) = (col / n, col % n);
        r.0[(i * n + l, j * n + k)]
    });
    Ok(HermitianMatrix(m))
}

/// `xi ⊗ eta`, entry `i*dim(eta) + k` is `xi_i * eta_k`.
pub fn product_vector(xi: &ComplexVector, eta: &ComplexVector) -> ComplexVector {
    let mut out = Vec::with_capacity(xi.dim() * eta.dim());
    for a in &xi.0 {
        for b in &eta.0 {
            out.push(a * b);
        }
    }
    ComplexVector(out)
}

/// Rank-one projector-like matrix `zeta zeta*`.
pub fn outer_product(zeta: &ComplexVector) -> HermitianMatrix {
    let n = zeta.dim();
    HermitianMatrix(ComplexMatrix::from_fn(n, |i, j| zeta[i] * zeta[j].conj()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> HermitianMatrix {
        HermitianMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn identity_eigenvalues() {
        let r = hermitian_eigenvalues(&HermitianMatrix::identity(3)).unwrap();
        assert_close(&r.values, &[1.0, 1.0, 1.0], 1e-14);
    }

    #[test]
    fn laplacian_like_eigenvalues() {
        let h = real(&[&[2.0, -1.0, -1.0], &[-1.0, 2.0, -1.0], &[-1.0, -1.0, 2.0]]);
        let r = hermitian_eigenvalues(&h).unwrap();
        assert_close(&r.values, &[0.0, 3.0, 3.0], 1e-12);
        assert!(r.residual <= 1e-9 * 4.0);
    }

    #[test]
    fn choi_reduced_matrix_eigenvalues() {
        let h = real(&[&[1.0, -1.0, -1.0], &[-1.0, 1.0, -1.0], &[-1.0, -1.0, 1.0]]);
        let r = hermitian_eigenvalues(&h).unwrap();
        assert_close(&r.values, &[-1.0, 2.0, 2.0], 1e-12);
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let m = ComplexMatrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), C64::new(1.0, 0.0)],
        ])
        .unwrap();
        let h = HermitianMatrix::new(m).unwrap();
        let d = hermitian_eigen(&h).unwrap();
        assert_close(&d.values, &[0.0, 2.0], 1e-14);
        assert!(d.residual < 1e-14);
    }

    #[test]
    fn zero_diagonal_converges() {
        let h = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_close(&hermitian_eigenvalues(&h).unwrap().values, &[-1.0, 1.0], 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(HermitianMatrix::new(m), Err(Error::InvalidInput(_))));
        let m = ComplexMatrix::from_rows(&[vec![C64::new(1.0, 1e-6)]]).unwrap();
        assert!(HermitianMatrix::new(m).is_err());
    }

    #[test]
    fn psd_examples() {
        let z = is_psd(&HermitianMatrix::zeros(3), 1e-9).unwrap();
        assert!(z.psd);
        assert_eq!(z.min_eigenvalue, 0.0);

        let h = real(&[&[2.0, -1.0, -1.0], &[-1.0, 2.0, -1.0], &[-1.0, -1.0, 2.0]]);
        let c = is_psd(&h, 1e-9).unwrap();
        assert!(c.psd && c.min_eigenvalue.abs() < 1e-12 && c.is_marginal(1e-9));

        let h = real(&[&[1.0, -1.0, -1.0], &[-1.0, 1.0, -1.0], &[-1.0, -1.0, 1.0]]);
        let c = is_psd(&h, 1e-9).unwrap();
        assert!(!c.psd);
        assert!((c.min_eigenvalue + 1.0).abs() < 1e-12);
    }

    #[test]
    fn determinant_examples() {
        assert!((determinant(&HermitianMatrix::identity(4)) - 1.0).abs() < 1e-15);
        assert!((determinant(&HermitianMatrix::from_diagonal(&[2.0, 3.0])) - 6.0).abs() < 1e-15);
        // needs a pivot swap
        let h = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!((determinant(&h) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_transpose_moves_block_entry() {
        let mut m = ComplexMatrix::zeros(9);
        // 1-based (1,5) is block (1,2), inner entry (1,2)
        m[(0, 4)] = C64::new(0.5, 0.25);
        m[(4, 0)] = C64::new(0.5, -0.25);
        let r = HermitianMatrix::new(m).unwrap();
        let t = partial_transpose(&r, 3).unwrap();
        assert_eq!(t[(0, 4)], C64::new(0.0, 0.0));
        // lands at 1-based (2,4): block (1,2), inner entry (2,1)
        assert_eq!(t[(1, 3)], C64::new(0.5, 0.25));
        assert_eq!(t[(3, 1)], C64::new(0.5, -0.25));
    }

    #[test]
    fn partial_transpose_keeps_diagonal() {
        let d = HermitianMatrix::from_diagonal(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(partial_transpose(&d, 2).unwrap(), d);
    }

    #[test]
    fn partial_transpose_rejects_bad_shape() {
        assert!(partial_transpose(&HermitianMatrix::identity(5), 2).is_err());
    }

    #[test]
    fn product_vector_examples() {
        let e1 = ComplexVector::basis(3, 0);
        let e1b = ComplexVector::basis(2, 0);
        assert_eq!(product_vector(&e1, &e1b), ComplexVector::basis(6, 0));

        let xi = ComplexVector::from_real(&[1.0, 1.0]).unwrap();
        let eta = ComplexVector::from_real(&[1.0, -1.0]).unwrap();
        let expect = ComplexVector::from_real(&[1.0, -1.0, 1.0, -1.0]).unwrap();
        assert_eq!(product_vector(&xi, &eta), expect);
    }

    #[test]
    fn outer_product_examples() {
        let e = outer_product(&ComplexVector::basis(3, 0));
        let mut expect = ComplexMatrix::zeros(3);
        expect[(0, 0)] = C64::new(1.0, 0.0);
        assert_eq!(e.as_matrix(), &expect);

        let zeta =
            ComplexVector::from_real(&[2f64.powf(1.0 / 3.0), 2f64.powf(-1.0 / 6.0), 2f64.powf(-1.0 / 6.0)])
                .unwrap();
        let x = outer_product(&zeta);
        assert!((x[(0, 0)].re - 2f64.powf(2.0 / 3.0)).abs() < 1e-14);
        assert!((x[(0, 1)].re - 2f64.powf(1.0 / 6.0)).abs() < 1e-14);
        assert!((x[(1, 2)].re - 2f64.powf(-1.0 / 3.0)).abs() < 1e-14);
        assert!((x.trace() - zeta.norm_sqr()).abs() < 1e-14);
    }
}
