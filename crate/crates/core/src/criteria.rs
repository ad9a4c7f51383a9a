//! Analytic criteria for positivity, complete positivity and decomposability.
//!
//! Each criterion returns a [`Verdict`] carrying a signed margin (distance to
//! the boundary of the condition) and whether the condition is satisfied when
//! evaluated literally. Conditions closed under limits (`>=`) count their
//! boundary as satisfied; strict ones do not. A verdict whose margin lies
//! inside the configured band is reported as [`Status::Marginal`], but its
//! `satisfied` flag still drives the summary.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{determinant, outer_product, ComplexVector, DEFAULT_PSD_TOL};
use crate::maps::{
    all_equal, apply_map, averaged_params, classify_form, cp_check, geometric_means, scaled_ckl_matrix,
    CklParams, CoefficientMatrix, FormClass, KyeParams, ScalingVector, PATTERN_TOL,
};

pub const DEFAULT_MARGIN_BAND: f64 = 1e-9;

/// Entries of `A − V⁻¹A_[a,b,c]V` down to this value count as nonnegative.
const DOMINANCE_TOL: f64 = 1e-12;

/// The boundary proposition needs `a★ + b = 2` to this accuracy.
const BOUNDARY_TOL: f64 = 1e-9;

const GRID_POINTS: usize = 64;
const GRID_LEVELS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
    Marginal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    /// Signed slack; `None` when the criterion does not apply.
    pub margin: Option<f64>,
    /// Literal evaluation of the condition; `None` when not applicable.
    pub satisfied: Option<bool>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quantities: BTreeMap<String, f64>,
}

impl Verdict {
    pub fn not_applicable(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::NotApplicable,
            margin: None,
            satisfied: None,
            detail: detail.into(),
            quantities: BTreeMap::new(),
        }
    }

    pub fn is_satisfied(&self) -> bool {
        self.satisfied == Some(true)
    }

    pub fn is_violated(&self) -> bool {
        self.satisfied == Some(false)
    }

    fn with(mut self, key: &str, value: f64) -> Self {
        self.quantities.insert(key.to_string(), value);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    PositiveProven,
    NotPositiveProven,
    CpProven,
    IndecomposableProven,
    DecomposableProven,
    Inconclusive,
}

/// Proven conclusions, closed under the implications
/// `cp ⇒ decomposable ⇒ positive` and `indecomposable ⇒ positive`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub flags: BTreeSet<Flag>,
}

impl Summary {
    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn insert(&mut self, flag: Flag) {
        self.flags.insert(flag);
    }

    /// Adds implied flags, checks consistency and sets `Inconclusive` when
    /// positivity is left open.
    pub fn reconcile(mut self) -> Result<Self> {
        use Flag::*;
        self.flags.remove(&Inconclusive);
        if self.has(CpProven) {
            self.insert(DecomposableProven);
        }
        if self.has(DecomposableProven) || self.has(IndecomposableProven) {
            self.insert(PositiveProven);
        }
        let clash = |x: Flag, y: Flag| self.has(x) && self.has(y);
        for (x, y) in [
            (PositiveProven, NotPositiveProven),
            (DecomposableProven, IndecomposableProven),
        ] {
            if clash(x, y) {
                return Err(Error::Internal(format!("{x:?} and {y:?} were both derived")));
            }
        }
        if !self.has(PositiveProven) && !self.has(NotPositiveProven) {
            self.insert(Inconclusive);
        }
        Ok(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub form: FormClass,
    pub cp: Verdict,
    pub ckl_positive: Verdict,
    pub ckl_indecomposable: Verdict,
    pub kye: Verdict,
    pub average_necessary: Verdict,
    pub pairwise_necessary: Vec<Verdict>,
    pub pairwise_sufficient: Vec<Verdict>,
    pub c3_mean: Verdict,
    pub cyclic_necessary: Verdict,
    pub b_only_necessary: Verdict,
    pub scaling_sufficient: Verdict,
    pub boundary_proposition: Verdict,
    pub n2_positive: Verdict,
    pub summary: Summary,
}

impl ConditionReport {
    /// Every verdict in a fixed order.
    pub fn conditions(&self) -> Vec<&Verdict> {
        let mut out = vec![
            &self.cp,
            &self.ckl_positive,
            &self.ckl_indecomposable,
            &self.kye,
            &self.average_necessary,
        ];
        out.extend(&self.pairwise_necessary);
        out.extend(&self.pairwise_sufficient);
        out.extend([
            &self.c3_mean,
            &self.cyclic_necessary,
            &self.b_only_necessary,
            &self.scaling_sufficient,
            &self.boundary_proposition,
            &self.n2_positive,
        ]);
        out
    }
}

/// `max(a − 2, min(a + b + c − 2, a + √(bc) − 1))`: nonnegative exactly on
/// the positive CKL maps.
fn ckl_margin(a: f64, b: f64, c: f64) -> f64 {
    let cp = a - 2.0;
    let main = (a + (b + c) - 2.0).min(a + (b * c).sqrt() - 1.0);
    cp.max(main)
}

fn geo3(v: &[f64; 3]) -> f64 {
    (v[0] * v[1] * v[2]).cbrt()
}

fn is_zero3(v: &[f64; 3]) -> bool {
    v.iter().all(|&x| x.abs() <= PATTERN_TOL)
}

fn pair_label(i: usize, j: usize) -> String {
    format!("({},{})", i + 1, j + 1)
}

/// Evaluation context: the PSD tolerance and the width of the marginal band.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Criteria {
    pub margin_band: f64,
    pub psd_tolerance: f64,
}

impl Default for Criteria {
    fn default() -> Self {
        Self {
            margin_band: DEFAULT_MARGIN_BAND,
            psd_tolerance: DEFAULT_PSD_TOL,
        }
    }
}

impl Criteria {
    pub fn new(margin_band: f64, psd_tolerance: f64) -> Result<Self> {
        if !(margin_band > 0.0) || !(psd_tolerance >= 0.0) || !margin_band.is_finite() {
            return Err(invalid(
                "margin band must be positive and PSD tolerance nonnegative",
            ));
        }
        Ok(Self {
            margin_band,
            psd_tolerance,
        })
    }

    fn verdict(&self, name: &str, margin: f64, satisfied: bool, detail: impl Into<String>) -> Verdict {
        let status = if margin.abs() < self.margin_band {
            Status::Marginal
        } else if satisfied {
            Status::Holds
        } else {
            Status::Fails
        };
        Verdict {
            name: name.to_string(),
            status,
            margin: Some(margin),
            satisfied: Some(satisfied),
            detail: detail.into(),
            quantities: BTreeMap::new(),
        }
    }

    /// Complete positivity through the reduced `n x n` matrix.
    pub fn cp(&self, a: &CoefficientMatrix) -> Result<Verdict> {
        let check = cp_check(a, self.psd_tolerance)?;
        Ok(self
            .verdict(
                "cp",
                check.min_eigenvalue,
                check.psd,
                "smallest eigenvalue of the reduced Choi matrix",
            )
            .with("min_eigenvalue", check.min_eigenvalue))
    }

    pub fn ckl_is_positive(&self, p: &CklParams) -> Verdict {
        let margin = ckl_margin(p.a, p.b, p.c);
        let branch = if p.a >= 2.0 {
            "a >= 2: completely positive"
        } else {
            "a + b + c >= 2 and a + sqrt(bc) >= 1"
        };
        self.verdict("ckl_positive", margin, margin >= 0.0, branch)
    }

    /// Defined only for positive, not completely positive CKL maps.
    pub fn ckl_is_indecomposable(&self, p: &CklParams) -> Verdict {
        const NAME: &str = "ckl_indecomposable";
        if !self.ckl_is_positive(p).is_satisfied() {
            return Verdict::not_applicable(NAME, "map is not positive");
        }
        if p.a >= 2.0 {
            return Verdict::not_applicable(NAME, "a >= 2: completely positive, hence decomposable");
        }
        let margin = (2.0 - p.a).powi(2) - 4.0 * p.b * p.c;
        self.verdict(NAME, margin, margin > 0.0, "4bc < (2 - a)^2")
    }

    pub fn kye_check(&self, k: &KyeParams) -> Verdict {
        const NAME: &str = "kye";
        if k.a >= 2.0 {
            return Verdict::not_applicable(NAME, "a >= 2: completely positive region");
        }
        let product: f64 = k.c.iter().product();
        let margin = (k.a - 1.0).min(product - (2.0 - k.a).powi(3));
        let mut detail = String::from("1 <= a < 2 and c1 c2 c3 >= (2 - a)^3");
        if margin.abs() < self.margin_band {
            detail.push_str("; on the boundary the map is known to be extremal (not tested)");
        }
        self.verdict(NAME, margin, margin >= 0.0, detail)
    }

    pub fn average_necessary(&self, a: &CoefficientMatrix) -> Verdict {
        const NAME: &str = "average_necessary";
        let Ok(avg) = averaged_params(a) else {
            return Verdict::not_applicable(NAME, "needs n = 3");
        };
        let inner = self.ckl_is_positive(&avg);
        let margin = inner.margin.unwrap_or(f64::NAN);
        self.verdict(
            NAME,
            margin,
            inner.is_satisfied(),
            "CKL positivity of the averaged parameters",
        )
        .with("a_mean", avg.a)
        .with("b_mean", avg.b)
        .with("c_mean", avg.c)
    }

    pub fn pairwise_necessary(&self, a: &CoefficientMatrix) -> Vec<Verdict> {
        self.pairwise(a, "pairwise_necessary", 1.0)
    }

    pub fn pairwise_sufficient(&self, a: &CoefficientMatrix) -> Vec<Verdict> {
        let scale = 1.0 / (a.n() as f64 - 1.0);
        self.pairwise(a, "pairwise_sufficient", scale)
    }

    fn pairwise(&self, a: &CoefficientMatrix, name: &str, diag_scale: f64) -> Vec<Verdict> {
        let n = a.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let cross = a.get(i, j) * a.get(j, i);
                let margin = diag_scale * (a.get(i, i) * a.get(j, j)).sqrt() + cross.sqrt() - 1.0;
                let mut detail = if diag_scale == 1.0 {
                    String::from("sqrt(a_ii a_jj) + sqrt(a_ij a_ji) >= 1")
                } else {
                    String::from("sqrt(a_ii a_jj)/(n-1) + sqrt(a_ij a_ji) >= 1")
                };
                if cross == 0.0 {
                    detail.push_str("; a_ij a_ji = 0, evaluated literally");
                }
                out.push(self.verdict(
                    &format!("{name}{}", pair_label(i, j)),
                    margin,
                    margin >= 0.0,
                    detail,
                ));
            }
        }
        out
    }

    /// Conjectured necessary condition; informative only.
    pub fn c3_mean(&self, a: &CoefficientMatrix) -> Verdict {
        const NAME: &str = "c3_mean";
        let Ok(g) = geometric_means(a) else {
            return Verdict::not_applicable(NAME, "needs n = 3");
        };
        let margin = g.a + g.b + g.c - 2.0;
        self.verdict(
            NAME,
            margin,
            margin >= 0.0,
            "a* + b* + c* >= 2 (conjectured necessary, proven only for cyclic and b-only forms)",
        )
        .with("a_geo", g.a)
        .with("b_geo", g.b)
        .with("c_geo", g.c)
    }

    pub fn cyclic_necessary(&self, a: &CoefficientMatrix) -> Verdict {
        const NAME: &str = "cyclic_necessary";
        let (d, b, c) = match classify_form(a) {
            FormClass::CyclicBc { a, b, c } => (a, b, c),
            FormClass::ConstantCkl { a, b, c } => ([a; 3], b, c),
            _ => return Verdict::not_applicable(NAME, "needs constant b and constant c"),
        };
        if d.iter().any(|&x| x < 1.0) || !(b > 0.0) || !(c > 0.0) {
            return Verdict::not_applicable(NAME, "needs a_i >= 1 and b, c > 0");
        }
        let margin = geo3(&d) + b + c - 2.0;
        self.verdict(NAME, margin, margin >= 0.0, "(a1 a2 a3)^(1/3) + b + c >= 2")
    }

    /// Applies to any matrix with zero `c`-positions, positive `b`-positions
    /// and `a_i >= 1`, whatever its classification tag.
    pub fn b_only_necessary(&self, a: &CoefficientMatrix) -> Verdict {
        const NAME: &str = "b_only_necessary";
        let (Ok(d), Ok(b), Ok(c)) = (a.diag3(), a.b3(), a.c3()) else {
            return Verdict::not_applicable(NAME, "needs n = 3");
        };
        if !is_zero3(&c) || b.iter().any(|&x| !(x > 0.0)) || d.iter().any(|&x| x < 1.0) {
            return Verdict::not_applicable(NAME, "needs c_i = 0, b_i > 0, a_i >= 1");
        }
        let margin = geo3(&d) + geo3(&b) - 2.0;
        self.verdict(
            NAME,
            margin,
            margin >= 0.0,
            "(a1 a2 a3)^(1/3) + (b1 b2 b3)^(1/3) >= 2",
        )
    }

    /// Entrywise dominance `A >= V⁻¹A_[a,b,c]V` for a positive CKL map.
    pub fn scaling_sufficient(
        &self,
        a: &CoefficientMatrix,
        p: &CklParams,
        v: &ScalingVector,
    ) -> Result<Verdict> {
        const NAME: &str = "scaling_sufficient";
        if a.n() != 3 {
            return Ok(Verdict::not_applicable(NAME, "needs n = 3"));
        }
        if !self.ckl_is_positive(p).is_satisfied() {
            return Err(invalid(format!(
                "CKL parameters ({}, {}, {}) do not give a positive map",
                p.a, p.b, p.c
            )));
        }
        let scaled = scaled_ckl_matrix(p, v);
        let margin = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j) - scaled.get(i, j))
            .fold(f64::INFINITY, f64::min);
        Ok(self.verdict(
            NAME,
            margin,
            margin >= -DOMINANCE_TOL,
            "smallest entry of A - V^-1 A_[a,b,c] V",
        ))
    }

    /// Looks for CKL parameters meeting the dominance conditions: `a` is the
    /// smallest diagonal entry and `(b, c)` is scanned on a refining grid.
    pub fn scaling_sufficient_search(&self, a: &CoefficientMatrix) -> Verdict {
        const NAME: &str = "scaling_sufficient";
        let (Ok(d), Ok(b), Ok(c)) = (a.diag3(), a.b3(), a.c3()) else {
            return Verdict::not_applicable(NAME, "needs n = 3");
        };
        let a_min = d.iter().copied().fold(f64::INFINITY, f64::min);
        let (b_geo, c_geo) = (geo3(&b), geo3(&c));

        if b_geo == 0.0 {
            let margin = (a_min - 1.0).min(a_min + c_geo - 2.0);
            return self
                .verdict(
                    NAME,
                    margin,
                    margin >= 0.0,
                    "b1 b2 b3 = 0: min a_i >= 1 and min a_i + c* >= 2",
                )
                .with("a", a_min)
                .with("c", c_geo);
        }

        let cap = (0..3)
            .map(|i| b[i] * c[(i + 1) % 3])
            .fold(f64::INFINITY, f64::min);
        let (best_b, best_c, margin) = grid_search(a_min, b_geo, c_geo, cap);
        self.verdict(
            NAME,
            margin,
            margin >= 0.0,
            "best CKL margin over a = min a_i, b <= b*, c <= c*, bc <= min b_i c_(i+1)",
        )
        .with("a", a_min)
        .with("b", best_b)
        .with("c", best_c)
    }

    pub fn n2_positive(&self, a: &CoefficientMatrix) -> Verdict {
        const NAME: &str = "n2_positive";
        if a.n() != 2 {
            return Verdict::not_applicable(NAME, "needs n = 2");
        }
        let margin = (a.get(0, 0) * a.get(1, 1)).sqrt() + (a.get(0, 1) * a.get(1, 0)).sqrt() - 1.0;
        self.verdict(
            NAME,
            margin,
            margin >= 0.0,
            "sqrt(a11 a22) + sqrt(a12 a21) >= 1 (necessary and sufficient)",
        )
    }

    /// On the surface `a★ + b = 2` with `c = 0`, the map is positive only for
    /// equal diagonal entries; the witness determinant equals `6(a★ − ā)/a★`.
    pub fn boundary_proposition(&self, a: &CoefficientMatrix) -> Result<Verdict> {
        const NAME: &str = "boundary_proposition";
        let (Ok(d), Ok(b), Ok(c)) = (a.diag3(), a.b3(), a.c3()) else {
            return Ok(Verdict::not_applicable(NAME, "needs n = 3"));
        };
        if !is_zero3(&c) || !all_equal(&b) || d.iter().any(|&x| !(x > 0.0)) {
            return Ok(Verdict::not_applicable(
                NAME,
                "needs c = 0, constant b and a_i > 0",
            ));
        }
        let b = (b[0] + b[1] + b[2]) / 3.0;
        let a_geo = geo3(&d);
        if (a_geo + b - 2.0).abs() >= BOUNDARY_TOL {
            return Ok(Verdict::not_applicable(NAME, "needs a* + b = 2"));
        }
        let a_mean = (d[0] + d[1] + d[2]) / 3.0;
        let d_formula = 6.0 * (a_geo - a_mean) / a_geo;
        let d_numeric = boundary_witness_determinant(a)?;

        let spread = d.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - d.iter().copied().fold(f64::INFINITY, f64::min);
        let equal = spread < BOUNDARY_TOL;
        let (satisfied, detail) = if !equal {
            (false, "unequal a_i: the witness image has negative determinant")
        } else if a_geo >= 1.0 {
            (true, "equal a_i >= 1: CKL map on its positivity boundary")
        } else {
            (false, "equal a_i < 1 with c = 0: CKL conditions fail")
        };
        let margin = if equal && a_geo < 1.0 {
            a_geo - 1.0
        } else {
            -spread
        };
        Ok(self
            .verdict(NAME, margin, satisfied, detail)
            .with("d_formula", d_formula)
            .with("d_numeric", d_numeric)
            .with("a_geo", a_geo)
            .with("a_mean", a_mean))
    }

    pub fn full_report(&self, a: &CoefficientMatrix) -> Result<ConditionReport> {
        let form = classify_form(a);

        let ckl = match &form {
            FormClass::ConstantCkl { a, b, c } => Some(CklParams::new(*a, *b, *c)?),
            _ => None,
        };
        let (ckl_positive, ckl_indecomposable) = match &ckl {
            Some(p) => (self.ckl_is_positive(p), self.ckl_is_indecomposable(p)),
            None => (
                Verdict::not_applicable("ckl_positive", "not a constant CKL matrix"),
                Verdict::not_applicable("ckl_indecomposable", "not a constant CKL matrix"),
            ),
        };

        let kye_params = match &form {
            FormClass::KyeForm { a, c } => Some(KyeParams::new(*a, *c)?),
            FormClass::ConstantCkl { a, b, c } if b.abs() <= PATTERN_TOL => {
                Some(KyeParams::new(*a, [*c; 3])?)
            }
            _ => None,
        };
        let kye = match &kye_params {
            Some(k) => self.kye_check(k),
            None => Verdict::not_applicable("kye", "needs equal a_i and zero b-positions"),
        };

        let report = ConditionReport {
            cp: self.cp(a)?,
            ckl_positive,
            ckl_indecomposable,
            kye,
            average_necessary: self.average_necessary(a),
            pairwise_necessary: self.pairwise_necessary(a),
            pairwise_sufficient: self.pairwise_sufficient(a),
            c3_mean: self.c3_mean(a),
            cyclic_necessary: self.cyclic_necessary(a),
            b_only_necessary: self.b_only_necessary(a),
            scaling_sufficient: self.scaling_sufficient_search(a),
            boundary_proposition: self.boundary_proposition(a)?,
            n2_positive: self.n2_positive(a),
            form,
            summary: Summary::default(),
        };
        let summary = summarize(&report)?;
        Ok(ConditionReport { summary, ..report })
    }
}

fn summarize(r: &ConditionReport) -> Result<Summary> {
    use Flag::*;
    let mut s = Summary::default();

    if r.cp.is_satisfied() {
        s.insert(CpProven);
    }
    if r.ckl_positive.is_satisfied() || r.kye.is_satisfied() || r.scaling_sufficient.is_satisfied() {
        s.insert(PositiveProven);
    }
    if r.ckl_positive.is_violated() {
        s.insert(NotPositiveProven);
    }
    if r.ckl_indecomposable.is_satisfied() || r.kye.is_satisfied() {
        s.insert(IndecomposableProven);
    }
    if r.ckl_indecomposable.is_violated() {
        s.insert(DecomposableProven);
    }
    let necessary = [&r.average_necessary, &r.cyclic_necessary, &r.b_only_necessary];
    if necessary.iter().any(|v| v.is_violated()) || r.pairwise_necessary.iter().any(Verdict::is_violated) {
        s.insert(NotPositiveProven);
    }
    if !r.pairwise_sufficient.is_empty() && r.pairwise_sufficient.iter().all(Verdict::is_satisfied) {
        s.insert(DecomposableProven);
    }
    for v in [&r.boundary_proposition, &r.n2_positive] {
        match v.satisfied {
            Some(true) => s.insert(PositiveProven),
            Some(false) => s.insert(NotPositiveProven),
            None => {}
        }
    }
    s.reconcile()
}

/// Best CKL margin over `b ∈ [0, b_max]`, `c ∈ [0, c_max]`, `bc <= cap`,
/// scanning a `64 x 64` grid and twice zooming in around the best point.
fn grid_search(a: f64, b_max: f64, c_max: f64, cap: f64) -> (f64, f64, f64) {
    let mut best = (0.0, 0.0, ckl_margin(a, 0.0, 0.0));
    let (mut b_lo, mut b_hi, mut c_lo, mut c_hi) = (0.0, b_max, 0.0, c_max);
    let last = (GRID_POINTS - 1) as f64;
    for _ in 0..GRID_LEVELS {
        let db = (b_hi - b_lo) / last;
        let dc = (c_hi - c_lo) / last;
        for u in 0..GRID_POINTS {
            let b = b_lo + db * u as f64;
            for v in 0..GRID_POINTS {
                let c = c_lo + dc * v as f64;
                // clip to the constraint curve bc = cap
                let c = if b * c > cap { cap / b } else { c };
                let m = ckl_margin(a, b, c);
                if m > best.2 {
                    best = (b, c, m);
                }
            }
        }
        b_lo = (best.0 - db).max(0.0);
        b_hi = (best.0 + db).min(b_max);
        c_lo = (best.1 - dc).max(0.0);
        c_hi = (best.1 + dc).min(c_max);
    }
    best
}

/// `det Φ_A(ξξ*)` for `ξ = (a1^{-1/6} a3^{1/6}, a2^{-1/6} a1^{1/6}, a3^{-1/6} a2^{1/6})`.
pub fn boundary_witness_determinant(a: &CoefficientMatrix) -> Result<f64> {
    let d = a.diag3()?;
    if d.iter().any(|&x| !(x > 0.0)) {
        return Err(invalid("witness vector needs a_i > 0"));
    }
    let xi = [
        d[0].powf(-1.0 / 6.0) * d[2].powf(1.0 / 6.0),
        d[1].powf(-1.0 / 6.0) * d[0].powf(1.0 / 6.0),
        d[2].powf(-1.0 / 6.0) * d[1].powf(1.0 / 6.0),
    ];
    let x = outer_product(&ComplexVector::from_real(&xi)?);
    Ok(determinant(&apply_map(a, &x)?))
}

/// [`Criteria::full_report`] with default settings.
pub fn full_report(a: &CoefficientMatrix) -> Result<ConditionReport> {
    Criteria::default().full_report(a)
}
