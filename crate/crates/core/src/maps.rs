//! Maps of the form `Φ_A(X) = Δ_A(X) − X` and their Choi matrices.
//!
//! For `n = 3` the coefficient matrix is read through fixed named entries:
//!
//! ```text
//!     | a1 b1 c1 |
//! A = | c2 a2 b2 |
//!     | b3 c3 a3 |
//! ```
//!
//! so the `b`'s sit on the cyclic superdiagonal `(i, i+1)` and the `c`'s on
//! the cyclic subdiagonal `(i, i+2)`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, HermitianMatrix, PsdCheck, C64};

/// Entries in `(-CLAMP_TOL, 0)` are treated as roundoff and set to zero.
pub const CLAMP_TOL: f64 = 1e-12;

/// Tolerance used when matching coefficient patterns.
pub const PATTERN_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct CoefficientMatrix {
    rows: Vec<Vec<f64>>,
}

impl TryFrom<Vec<Vec<f64>>> for CoefficientMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        validate_coefficients(&rows)
    }
}

impl From<CoefficientMatrix> for Vec<Vec<f64>> {
    fn from(a: CoefficientMatrix) -> Self {
        a.rows
    }
}

/// Checks squareness, finiteness and nonnegativity; clamps tiny negatives.
pub fn validate_coefficients(raw: &[Vec<f64>]) -> Result<CoefficientMatrix> {
    let n = raw.len();
    if n < 2 {
        return Err(invalid(format!(
            "coefficient matrix must be at least 2x2, got n = {n}"
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(invalid(format!(
                "coefficient matrix is not square: row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        let mut clean = Vec::with_capacity(n);
        for (j, &x) in row.iter().enumerate() {
            if !x.is_finite() {
                return Err(invalid(format!("entry ({}, {}) is not finite", i + 1, j + 1)));
            }
            if x < -CLAMP_TOL {
                return Err(invalid(format!("entry ({}, {}) = {x} is negative", i + 1, j + 1)));
            }
            clean.push(x.max(0.0));
        }
        rows.push(clean);
    }
    Ok(CoefficientMatrix { rows })
}

impl CoefficientMatrix {
    pub fn new(raw: &[Vec<f64>]) -> Result<Self> {
        validate_coefficients(raw)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        Self {
            rows: (0..n)
                .map(|i| (0..n).map(|j| self.rows[j][i]).collect())
                .collect(),
        }
    }

    fn require_three(&self) -> Result<()> {
        if self.n() == 3 {
            Ok(())
        } else {
            Err(Error::NotApplicable(format!(
                "named entries need n = 3, got n = {}",
                self.n()
            )))
        }
    }

    /// `(a1, a2, a3)`, the diagonal.
    pub fn diag3(&self) -> Result<[f64; 3]> {
        self.require_three()?;
        Ok([self.rows[0][0], self.rows[1][1], self.rows[2][2]])
    }

    /// `(b1, b2, b3)` at positions `(1,2), (2,3), (3,1)`.
    pub fn b3(&self) -> Result<[f64; 3]> {
        self.require_three()?;
        Ok([self.rows[0][1], self.rows[1][2], self.rows[2][0]])
    }

    /// `(c1, c2, c3)` at positions `(1,3), (2,1), (3,2)`.
    pub fn c3(&self) -> Result<[f64; 3]> {
        self.require_three()?;
        Ok([self.rows[0][2], self.rows[1][0], self.rows[2][1]])
    }

    /// Builds the `n = 3` matrix from named entries.
    pub fn from_named(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Result<Self> {
        validate_coefficients(&[
            vec![a[0], b[0], c[0]],
            vec![c[1], a[1], b[1]],
            vec![b[2], c[2], a[2]],
        ])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CklParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CklParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, x) in [("a", a), ("b", b), ("c", c)] {
            if !(x >= 0.0) || !x.is_finite() {
                return Err(invalid(format!("parameter {name} = {x} must be finite and >= 0")));
            }
        }
        Ok(Self { a, b, c })
    }

    /// The constant (shift-invariant) coefficient matrix of `Φ_[a,b,c]`.
    pub fn matrix(&self) -> CoefficientMatrix {
        let (a, b, c) = (self.a, self.b, self.c);
        CoefficientMatrix {
            rows: vec![vec![a, b, c], vec![c, a, b], vec![b, c, a]],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KyeParams {
    pub a: f64,
    pub c: [f64; 3],
}

impl KyeParams {
    pub fn new(a: f64, c: [f64; 3]) -> Result<Self> {
        if !(a >= 0.0) || c.iter().any(|&x| !(x >= 0.0)) {
            return Err(invalid("Kye parameters must be >= 0"));
        }
        Ok(Self { a, c })
    }

    /// `b`-positions are zero, constant diagonal `a`.
    pub fn matrix(&self) -> CoefficientMatrix {
        let (a, c) = (self.a, self.c);
        CoefficientMatrix {
            rows: vec![vec![a, 0.0, c[0]], vec![c[1], a, 0.0], vec![0.0, c[2], a]],
        }
    }
}

/// Diagonal `V = diag(p1, p2, p3)` with strictly positive entries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingVector([f64; 3]);

impl ScalingVector {
    pub fn new(p: [f64; 3]) -> Result<Self> {
        if p.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(invalid(format!("scaling entries must be > 0, got {p:?}")));
        }
        Ok(Self(p))
    }

    pub fn unit() -> Self {
        Self([1.0; 3])
    }

    pub fn entries(&self) -> [f64; 3] {
        self.0
    }
}

/// Recognised coefficient patterns for `n = 3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum FormClass {
    General,
    ConstantCkl {
        a: f64,
        b: f64,
        c: f64,
    },
    KyeForm {
        a: f64,
        c: [f64; 3],
    },
    /// `c`-positions zero, `b`-positions positive, every `a_i >= 1`.
    BOnly {
        a: [f64; 3],
        b: [f64; 3],
    },
    /// Constant `b` and constant `c`, arbitrary diagonal.
    CyclicBc {
        a: [f64; 3],
        b: f64,
        c: f64,
    },
}

impl FormClass {
    pub fn tag(&self) -> &'static str {
        match self {
            FormClass::General => "general",
            FormClass::ConstantCkl { .. } => "constant_ckl",
            FormClass::KyeForm { .. } => "kye_form",
            FormClass::BOnly { .. } => "b_only",
            FormClass::CyclicBc { .. } => "cyclic_bc",
        }
    }
}

pub(crate) fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= PATTERN_TOL * x.abs().max(y.abs()).max(1.0)
}

pub(crate) fn all_equal(v: &[f64; 3]) -> bool {
    close(v[0], v[1]) && close(v[1], v[2]) && close(v[0], v[2])
}

fn mean3(v: &[f64; 3]) -> f64 {
    (v[0] + v[1] + v[2]) / 3.0
}

fn geo3(v: &[f64; 3]) -> f64 {
    (v[0] * v[1] * v[2]).cbrt()
}

/// Matches the most specific pattern in the order
/// `constant_ckl > kye_form > b_only > cyclic_bc > general`.
pub fn classify_form(a: &CoefficientMatrix) -> FormClass {
    let (Ok(d), Ok(b), Ok(c)) = (a.diag3(), a.b3(), a.c3()) else {
        return FormClass::General;
    };
    let zero = |v: &[f64; 3]| v.iter().all(|&x| x.abs() <= PATTERN_TOL);
    if all_equal(&d) && all_equal(&b) && all_equal(&c) {
        return FormClass::ConstantCkl {
            a: mean3(&d),
            b: mean3(&b),
            c: mean3(&c),
        };
    }
    if all_equal(&d) && zero(&b) {
        return FormClass::KyeForm { a: mean3(&d), c };
    }
    if zero(&c) && b.iter().all(|&x| x > PATTERN_TOL) && d.iter().all(|&x| x >= 1.0 - PATTERN_TOL) {
        return FormClass::BOnly { a: d, b };
    }
    if all_equal(&b) && all_equal(&c) {
        return FormClass::CyclicBc {
            a: d,
            b: mean3(&b),
            c: mean3(&c),
        };
    }
    FormClass::General
}

/// `Φ_A` on an arbitrary square matrix (the map is linear on all of `M_n`).
pub fn apply_map_general(a: &CoefficientMatrix, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.n();
    if x.dim() != n {
        return Err(invalid(format!(
            "input is {0}x{0} but the map acts on {n}x{n} matrices",
            x.dim()
        )));
    }
    let mut out = x.scale(C64::new(-1.0, 0.0));
    for i in 0..n {
        out[(i, i)] = (0..n).map(|j| a.get(i, j) * x[(j, j)]).sum();
    }
    Ok(out)
}

/// Diagonal entry `i` is `Σ_j a_ij x_jj`, off-diagonal entries are `−x_ij`.
pub fn apply_map(a: &CoefficientMatrix, x: &HermitianMatrix) -> Result<HermitianMatrix> {
    let out = apply_map_general(a, x.as_matrix())?;
    HermitianMatrix::new(out)
}

/// `C = Σ_ij E_ij ⊗ Φ_A(E_ij)`: block `(i,i)` is `diag(a_1i, …, a_ni)` and
/// block `(i,j)`, `i ≠ j`, holds `−1` at its entry `(i,j)`.
pub fn choi_matrix(a: &CoefficientMatrix) -> HermitianMatrix {
    let n = a.n();
    let mut m = ComplexMatrix::zeros(n * n);
    for i in 0..n {
        for k in 0..n {
            m[(i * n + k, i * n + k)] = C64::new(a.get(k, i), 0.0);
        }
        for j in 0..n {
            if i != j {
                m[(i * n + i, j * n + j)] = C64::new(-1.0, 0.0);
            }
        }
    }
    HermitianMatrix::new(m).expect("Choi matrix of a real coefficient matrix is symmetric")
}

/// Same matrix assembled from the images `Φ_A(E_ij)` of the matrix units.
pub fn choi_matrix_from_images(a: &CoefficientMatrix) -> HermitianMatrix {
    let n = a.n();
    let mut m = ComplexMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut unit = ComplexMatrix::zeros(n);
            unit[(i, j)] = C64::new(1.0, 0.0);
            let image = apply_map_general(a, &unit).expect("dimensions match");
            for k in 0..n {
                for l in 0..n {
                    m[(i * n + k, j * n + l)] = image[(k, l)];
                }
            }
        }
    }
    HermitianMatrix::new(m).expect("Choi matrix of a real coefficient matrix is symmetric")
}

/// The `n x n` matrix with diagonal `a_ii` and `−1` elsewhere. `Φ_A` is
/// completely positive exactly when this matrix is PSD: the rest of the Choi
/// matrix is a nonnegative diagonal decoupled from it.
pub fn reduced_cp_matrix(a: &CoefficientMatrix) -> HermitianMatrix {
    let n = a.n();
    let m = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            C64::new(a.get(i, i), 0.0)
        } else {
            C64::new(-1.0, 0.0)
        }
    });
    HermitianMatrix::new(m).expect("symmetric by construction")
}

pub fn cp_check(a: &CoefficientMatrix, tol: f64) -> Result<PsdCheck> {
    if !(tol >= 0.0) {
        return Err(invalid("tolerance must be nonnegative"));
    }
    let min_eigenvalue = hermitian_eigenvalues(&reduced_cp_matrix(a))?.values[0];
    Ok(PsdCheck {
        psd: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}

/// Arithmetic means `(ā, b̄, c̄)` of the named entries.
pub fn averaged_params(a: &CoefficientMatrix) -> Result<CklParams> {
    let (d, b, c) = (a.diag3()?, a.b3()?, a.c3()?);
    CklParams::new(mean3(&d), mean3(&b), mean3(&c))
}

/// Geometric means `(a★, b★, c★)` of the named entries.
pub fn geometric_means(a: &CoefficientMatrix) -> Result<CklParams> {
    let (d, b, c) = (a.diag3()?, a.b3()?, a.c3()?);
    CklParams::new(geo3(&d), geo3(&b), geo3(&c))
}

/// Cyclic shift `S e_i = e_{i+1}` (indices mod 3).
pub fn cyclic_shift() -> ComplexMatrix {
    ComplexMatrix::from_fn(3, |i, j| {
        if i == (j + 1) % 3 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `(1/3)(Φ(X) + S Φ(S*XS) S* + S* Φ(SXS*) S)`.
pub fn shift_average(a: &CoefficientMatrix, x: &HermitianMatrix) -> Result<HermitianMatrix> {
    a.require_three()?;
    let s = cyclic_shift();
    let sh = s.adjoint();
    let x = x.as_matrix();
    let t0 = apply_map_general(a, x)?;
    let t1 = s
        .matmul(&apply_map_general(a, &sh.matmul(x).matmul(&s))?)
        .matmul(&sh);
    let t2 = sh
        .matmul(&apply_map_general(a, &s.matmul(x).matmul(&sh))?)
        .matmul(&s);
    let avg = t0.add(&t1).add(&t2).scale(C64::new(1.0 / 3.0, 0.0));
    HermitianMatrix::new(avg)
}

/// `A = V^{-1} A_[a,b,c] V`: `a_i = a`, `b_i = (p_{i+1}/p_i) b`,
/// `c_i = (p_{i+2}/p_i) c`.
pub fn scaled_ckl_matrix(params: &CklParams, v: &ScalingVector) -> CoefficientMatrix {
    let p = v.entries();
    let b = [0, 1, 2].map(|i| p[(i + 1) % 3] / p[i] * params.b);
    let c = [0, 1, 2].map(|i| p[(i + 2) % 3] / p[i] * params.c);
    CoefficientMatrix::from_named([params.a; 3], b, c).expect("nonnegative by construction")
}
