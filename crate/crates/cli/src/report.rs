//! The report document and its text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use choi_core::criteria::{ConditionReport, Flag, Status, Summary, Verdict};
use choi_core::maps::{CoefficientMatrix, FormClass};
use choi_core::search::{CounterexampleCheck, PptWitnessCertificate, SearchConfig, ViolationCertificate};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: CoefficientMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub tolerance: f64,
    pub search: SearchConfig,
}

/// Named instance rebuilt by `reproduce`, with its headline numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reproduction {
    pub name: String,
    pub headline: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub input: InputEcho,
    pub form: FormClass,
    pub conditions: Vec<Verdict>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation_certificate: Option<ViolationCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ppt_witness: Option<PptWitnessCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reproduction: Option<Reproduction>,
    pub config: ConfigEcho,
    pub version: String,
}

impl ReportDocument {
    pub fn new(a: &CoefficientMatrix, form: FormClass, config: ConfigEcho) -> Self {
        Self {
            input: InputEcho {
                n: a.n(),
                a: a.clone(),
            },
            form,
            conditions: Vec::new(),
            summary: Summary::default(),
            violation_certificate: None,
            ppt_witness: None,
            counterexample: None,
            reproduction: None,
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn with_conditions(mut self, report: &ConditionReport) -> Self {
        self.conditions = report.conditions().into_iter().cloned().collect();
        self
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "choimap {}  ({})", self.version, self.config.command);
        let _ = writeln!(out, "n = {}, form = {}", self.input.n, self.form.tag());
        for row in self.input.a.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>10.6}")).collect();
            let _ = writeln!(out, "  [{}]", cells.join(" "));
        }

        if !self.conditions.is_empty() {
            let width = self.conditions.iter().map(|v| v.name.len()).max().unwrap_or(0);
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:width$}  {:<14}  {:>14}  detail",
                "condition", "status", "margin"
            );
            for v in &self.conditions {
                let margin = v.margin.map_or_else(|| "-".to_string(), |m| format!("{m:.9}"));
                let _ = writeln!(
                    out,
                    "{:width$}  {:<14}  {:>14}  {}",
                    v.name,
                    status_label(v),
                    margin,
                    v.detail
                );
                for (k, q) in &v.quantities {
                    let _ = writeln!(out, "{:width$}    {k} = {q:.12}", "");
                }
            }
        }

        let _ = writeln!(out);
        let flags: Vec<&str> = self.summary.flags.iter().map(|f| flag_label(*f)).collect();
        let _ = writeln!(out, "summary: {}", flags.join(", "));

        match &self.violation_certificate {
            Some(c) => {
                let _ = writeln!(out, "violation certificate: gap = {:.6e}", c.gap);
                let _ = writeln!(out, "  p = {:?}", c.p.entries());
                let _ = writeln!(out, "  q = {:?}", c.q.entries());
                let _ = writeln!(
                    out,
                    "  min eigenvalue of image of q q^T = {:.6e}",
                    c.residual_check
                );
            }
            None if self.config.command != "probe" => {
                let _ = writeln!(out, "violation certificate: none found");
            }
            None => {}
        }
        match &self.ppt_witness {
            Some(w) => {
                let _ = writeln!(
                    out,
                    "PPT witness: Tr(rho C) = {:.9}, normalized = {:.9}",
                    w.trace_value, w.normalized_value
                );
                let _ = writeln!(
                    out,
                    "  min eigenvalues: rho {:.3e}, rho^Gamma {:.3e}",
                    w.rho_min_eigenvalue, w.partial_transpose_min_eigenvalue
                );
            }
            None if self.config.command != "search" => {
                let _ = writeln!(out, "PPT witness: none found");
            }
            None => {}
        }
        if let Some(c) = &self.counterexample {
            let _ = writeln!(
                out,
                "input X: psd = {} (min eigenvalue {:.3e}); image: psd = {} (min eigenvalue {:.3e}); det = {:.9}",
                c.input_psd, c.input_min_eigenvalue, c.psd, c.image_min_eigenvalue, c.det
            );
        }
        if let Some(r) = &self.reproduction {
            let _ = writeln!(out, "reproduce {}:", r.name);
            for (k, v) in &r.headline {
                let _ = writeln!(out, "  {k} = {v:.9}");
            }
            for note in &r.notes {
                let _ = writeln!(out, "  {note}");
            }
        }
        out
    }
}

fn status_label(v: &Verdict) -> &'static str {
    match (v.status, v.satisfied) {
        (Status::Holds, _) => "holds",
        (Status::Fails, _) => "fails",
        (Status::NotApplicable, _) => "n/a",
        (Status::Marginal, Some(true)) => "marginal/holds",
        (Status::Marginal, _) => "marginal/fails",
    }
}

fn flag_label(f: Flag) -> &'static str {
    match f {
        Flag::PositiveProven => "positive_proven",
        Flag::NotPositiveProven => "not_positive_proven",
        Flag::CpProven => "cp_proven",
        Flag::IndecomposableProven => "indecomposable_proven",
        Flag::DecomposableProven => "decomposable_proven",
        Flag::Inconclusive => "inconclusive",
    }
}
