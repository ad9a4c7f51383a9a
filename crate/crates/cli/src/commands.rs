use std::collections::BTreeMap;
use std::path::PathBuf;

use choi_core::criteria::{Criteria, Flag, Summary};
use choi_core::linalg::{HermitianMatrix, DEFAULT_PSD_TOL};
use choi_core::maps::{classify_form, CklParams, CoefficientMatrix, KyeParams};
use choi_core::search::{
    find_positivity_violation, indecomposability_probe, verify_counterexample, SearchConfig,
    StructuredPptState,
};

use crate::error::{CliError, Result};
use crate::input::{load_input, MatrixInput};
use crate::report::{ConfigEcho, ReportDocument, Reproduction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisRequest {
    pub matrix_path: PathBuf,
    pub tolerance: f64,
    pub seed: u64,
    pub starts: usize,
    pub output_format: OutputFormat,
}

/// Tolerance and search settings shared by every command.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub tolerance: f64,
    pub seed: u64,
    pub starts: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_PSD_TOL,
            seed: SearchConfig::default().seed,
            starts: SearchConfig::default().starts,
        }
    }
}

impl Settings {
    fn validate(&self) -> Result<()> {
        if self.tolerance <= 0.0 || !self.tolerance.is_finite() {
            return Err(CliError::Input(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.starts == 0 {
            return Err(CliError::Input("starts must be at least 1".into()));
        }
        Ok(())
    }

    fn criteria(&self) -> Result<Criteria> {
        Ok(Criteria::new(self.tolerance, self.tolerance)?)
    }

    fn search(&self) -> SearchConfig {
        SearchConfig {
            seed: self.seed,
            starts: self.starts,
            violation_tolerance: self.tolerance,
            ..SearchConfig::default()
        }
    }

    fn echo(&self, command: &str) -> ConfigEcho {
        ConfigEcho {
            command: command.to_string(),
            tolerance: self.tolerance,
            search: self.search(),
        }
    }
}

impl AnalysisRequest {
    fn settings(&self) -> Settings {
        Settings {
            tolerance: self.tolerance,
            seed: self.seed,
            starts: self.starts,
        }
    }

    fn load(&self) -> Result<MatrixInput> {
        self.settings().validate()?;
        load_input(&self.matrix_path)
    }
}

fn reconcile(summary: Summary) -> Result<Summary> {
    Ok(summary.reconcile()?)
}

fn attach_counterexample(
    doc: &mut ReportDocument,
    a: &CoefficientMatrix,
    x: &Option<HermitianMatrix>,
) -> Result<()> {
    if let Some(x) = x {
        doc.counterexample = Some(verify_counterexample(a, x)?);
    }
    Ok(())
}

/// Criteria, then the violation search unless positivity is already proven,
/// then the PPT probe unless positivity was refuted.
pub fn analyze_matrix(a: &CoefficientMatrix, settings: &Settings, command: &str) -> Result<ReportDocument> {
    settings.validate()?;
    let report = settings.criteria()?.full_report(a)?;
    let cfg = settings.search();
    let mut doc =
        ReportDocument::new(a, report.form.clone(), settings.echo(command)).with_conditions(&report);
    let mut summary = report.summary.clone();

    if !summary.has(Flag::PositiveProven) {
        doc.violation_certificate = find_positivity_violation(a, &cfg)?;
        if doc.violation_certificate.is_some() {
            summary.insert(Flag::NotPositiveProven);
        }
    }
    if !summary.has(Flag::NotPositiveProven) {
        doc.ppt_witness = indecomposability_probe(a, &cfg)?;
        if doc.ppt_witness.is_some() {
            summary.insert(Flag::IndecomposableProven);
        }
    }
    doc.summary = reconcile(summary)?;
    Ok(doc)
}

pub fn cmd_analyze(req: &AnalysisRequest) -> Result<ReportDocument> {
    let input = req.load()?;
    let mut doc = analyze_matrix(&input.a, &req.settings(), "analyze")?;
    attach_counterexample(&mut doc, &input.a, &input.x)?;
    Ok(doc)
}

pub fn cmd_search(req: &AnalysisRequest) -> Result<ReportDocument> {
    let input = req.load()?;
    let settings = req.settings();
    let mut doc = ReportDocument::new(&input.a, classify_form(&input.a), settings.echo("search"));
    doc.violation_certificate = find_positivity_violation(&input.a, &settings.search())?;
    let mut summary = Summary::default();
    if doc.violation_certificate.is_some() {
        summary.insert(Flag::NotPositiveProven);
    }
    doc.summary = reconcile(summary)?;
    attach_counterexample(&mut doc, &input.a, &input.x)?;
    Ok(doc)
}

pub fn cmd_probe(req: &AnalysisRequest) -> Result<ReportDocument> {
    let input = req.load()?;
    let settings = req.settings();
    let mut doc = ReportDocument::new(&input.a, classify_form(&input.a), settings.echo("probe"));
    doc.ppt_witness = indecomposability_probe(&input.a, &settings.search())?;
    let mut summary = Summary::default();
    if doc.ppt_witness.is_some() {
        summary.insert(Flag::IndecomposableProven);
    }
    doc.summary = reconcile(summary)?;
    Ok(doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Instance {
    Choi,
    Example5,
    Boundary,
    KyeBoundary,
}

impl Instance {
    pub fn name(self) -> &'static str {
        match self {
            Instance::Choi => "choi",
            Instance::Example5 => "example5",
            Instance::Boundary => "boundary",
            Instance::KyeBoundary => "kye-boundary",
        }
    }
}

/// Coefficients and PSD input of the counterexample on the `c = 0` cyclic form.
pub fn example5_instance() -> (CoefficientMatrix, HermitianMatrix) {
    let a = CoefficientMatrix::new(&[vec![0.5, 1.0, 0.0], vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 2.0]])
        .expect("valid coefficients");
    let (s, t) = (2f64.powf(1.0 / 6.0), 2f64.powf(-1.0 / 3.0));
    let x =
        HermitianMatrix::from_real_rows(&[vec![2f64.powf(2.0 / 3.0), s, s], vec![s, t, t], vec![s, t, t]])
            .expect("symmetric");
    (a, x)
}

/// The PPT state with diagonal `(1, 1/4, 4, 4, 1, 1/4, 1/4, 4, 1)` and unit cross terms.
pub fn explicit_choi_witness() -> StructuredPptState {
    StructuredPptState::with_maximal_cross_terms(vec![
        vec![1.0, 0.25, 4.0],
        vec![4.0, 1.0, 0.25],
        vec![0.25, 4.0, 1.0],
    ])
    .expect("valid profile")
}

fn three(values: &[f64], flag: &str) -> Result<[f64; 3]> {
    <[f64; 3]>::try_from(values).map_err(|_| {
        CliError::Input(format!(
            "--{flag} takes exactly three values, got {}",
            values.len()
        ))
    })
}

pub fn cmd_reproduce(
    instance: Instance,
    a_params: Option<&[f64]>,
    c_params: Option<&[f64]>,
    settings: &Settings,
) -> Result<ReportDocument> {
    let command = format!("reproduce {}", instance.name());
    let mut headline = BTreeMap::new();
    let mut notes = Vec::new();

    let doc = match instance {
        Instance::Choi => {
            let a = CklParams::new(1.0, 0.0, 1.0)?.matrix();
            let doc = analyze_matrix(&a, settings, &command)?;
            let state = explicit_choi_witness();
            let (rho_min, pt_min) = state.min_eigenvalues()?;
            headline.insert("explicit_trace_value".into(), state.trace_pairing(&a)?);
            headline.insert(
                "explicit_normalized_value".into(),
                state.trace_pairing(&a)? / state.trace(),
            );
            headline.insert("explicit_rho_min_eigenvalue".into(), rho_min);
            headline.insert("explicit_partial_transpose_min_eigenvalue".into(), pt_min);
            if let Some(w) = &doc.ppt_witness {
                headline.insert("witness_normalized_value".into(), w.normalized_value);
            }
            doc
        }
        Instance::Example5 => {
            let (a, x) = example5_instance();
            let mut doc = analyze_matrix(&a, settings, &command)?;
            let check = verify_counterexample(&a, &x)?;
            headline.insert("det".into(), check.det);
            headline.insert("image_min_eigenvalue".into(), check.image_min_eigenvalue);
            headline.insert("input_min_eigenvalue".into(), check.input_min_eigenvalue);
            if let Some(c) = &doc.violation_certificate {
                headline.insert("gap".into(), c.gap);
            }
            doc.counterexample = Some(check);
            doc
        }
        Instance::Boundary => {
            let d = three(a_params.unwrap_or(&[0.5, 1.0, 2.0]), "a")?;
            if d.iter().any(|&x| x <= 0.0 || !x.is_finite()) {
                return Err(CliError::Input("--a entries must be positive".into()));
            }
            let a_geo = (d[0] * d[1] * d[2]).cbrt();
            let b = 2.0 - a_geo;
            if b < 0.0 {
                return Err(CliError::Input(format!(
                    "(a1 a2 a3)^(1/3) = {a_geo} exceeds 2, so b = 2 - a* would be negative"
                )));
            }
            let a = CoefficientMatrix::from_named(d, [b; 3], [0.0; 3])?;
            let doc = analyze_matrix(&a, settings, &command)?;
            let bp = doc
                .conditions
                .iter()
                .find(|v| v.name == "boundary_proposition")
                .expect("always reported");
            for key in ["d_formula", "d_numeric"] {
                if let Some(v) = bp.quantities.get(key) {
                    headline.insert(key.into(), *v);
                }
            }
            headline.insert("b".into(), b);
            notes.push(format!(
                "positive: {}",
                if doc.summary.has(Flag::PositiveProven) {
                    "yes"
                } else {
                    "no"
                }
            ));
            doc
        }
        Instance::KyeBoundary => {
            let a_val = match a_params {
                None => 1.0,
                Some([v]) => *v,
                Some(other) => {
                    return Err(CliError::Input(format!(
                        "--a takes one value for kye-boundary, got {}",
                        other.len()
                    )))
                }
            };
            if !(1.0..2.0).contains(&a_val) {
                return Err(CliError::Input(format!(
                    "kye-boundary needs 1 <= a < 2, got {a_val}"
                )));
            }
            let c = match c_params {
                Some(values) => three(values, "c")?,
                None => [2.0 - a_val; 3],
            };
            let a = KyeParams::new(a_val, c)?.matrix();
            let doc = analyze_matrix(&a, settings, &command)?;
            headline.insert(
                "c_product_minus_bound".into(),
                c.iter().product::<f64>() - (2.0 - a_val).powi(3),
            );
            if let Some(w) = &doc.ppt_witness {
                headline.insert("witness_normalized_value".into(), w.normalized_value);
            }
            notes.push("extremality on the exact boundary is a literature result; not tested".into());
            doc
        }
    };
    Ok(ReportDocument {
        reproduction: Some(Reproduction {
            name: instance.name().to_string(),
            headline,
            notes,
        }),
        ..doc
    })
}
