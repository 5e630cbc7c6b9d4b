//! Report envelope and rendering.
//!
//! Reports are deterministic: identical inputs yield byte-identical JSON
//! for a given tool version. Wall-clock timing is therefore opt-in
//! (`--timings`) and omitted from the default output.

use serde::{Deserialize, Serialize};

use carnot_core::formats::{
    CertificationDto, CohomologyDto, JetInfoDto, PlaneExponentsDto, ValidationReportDto,
};

pub const SCHEMA: &str = "carnot-report/1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDescriptor {
    Builtin { jet_m: usize, jet_k: usize },
    File { path: String, sha256: String },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    Validation(ValidationReportDto),
    JetInfo(JetInfoDto),
    Certification(CertificationDto),
    Cohomology(CohomologyDto),
    PlaneExponents(PlaneExponentsDto),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub command: String,
    pub input: InputDescriptor,
    pub results: Results,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, input: InputDescriptor, results: Results) -> Self {
        Report {
            schema: SCHEMA.to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            input,
            results,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# carnot {} report\n\n", self.command));
        match &self.input {
            InputDescriptor::Builtin { jet_m, jet_k } => {
                out.push_str(&format!("- input: jet group J^{jet_m}(R^{jet_k})\n"));
            }
            InputDescriptor::File { path, sha256 } => {
                out.push_str(&format!("- input: file `{path}` (sha256 {sha256})\n"));
            }
        }
        out.push_str(&format!("- schema: {}, tool version {}\n\n", self.schema, self.version));
        match &self.results {
            Results::Certification(c) => render_certification(&mut out, c),
            Results::Validation(v) => render_validation(&mut out, v),
            Results::JetInfo(j) => render_jet_info(&mut out, j),
            Results::Cohomology(c) => render_cohomology(&mut out, c),
            Results::PlaneExponents(p) => render_plane(&mut out, p),
        }
        out
    }
}

fn render_certification(out: &mut String, c: &CertificationDto) {
    out.push_str("## Exponent table\n\n");
    out.push_str("| n | filling function | homotopical | lower | upper | sharp | status | upper rule |\n");
    out.push_str("|---|------------------|-------------|-------|-------|-------|--------|------------|\n");
    for cert in &c.certificates {
        let lower = cert.lower.as_ref().map(|l| l.exponent.clone()).unwrap_or_else(|| "-".into());
        let upper = cert.upper.as_ref().map(|u| u.exponent.clone()).unwrap_or_else(|| "-".into());
        let rule = cert.upper.as_ref().map(|u| u.rule.clone()).unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
            cert.dimension,
            cert.filling_function,
            cert.homotopical_function.as_deref().unwrap_or("-"),
            lower,
            upper,
            if cert.sharp { "yes" } else { "no" },
            if cert.conditional { "conditional" } else { "proven" },
            rule,
        ));
    }
    if c.gaps.is_empty() {
        out.push_str("\nGaps: none\n");
    } else {
        out.push_str("\nGaps:\n");
        for g in &c.gaps {
            out.push_str(&format!("- dimension {}: {}\n", g.dimension, g.reason));
        }
    }
    out.push_str("\n## Horizontality ledger\n\n");
    out.push_str("| skeleton dim | a | b | kind | note |\n|---|---|---|---|---|\n");
    for e in &c.ledger {
        out.push_str(&format!("| {} | {} | {} | {} | {} |\n", e.dim, e.a, e.b, e.kind, e.note));
    }
    for cert in &c.certificates {
        if let Some(l) = &cert.lower {
            out.push_str(&format!("\n## Evidence for dimension {}\n\n", cert.dimension));
            out.push_str(&format!("- cocycle: {} (weight {})\n", l.cocycle_rendered, l.weight));
            out.push_str("- subalgebra span:\n");
            for v in &l.subalgebra_span {
                out.push_str(&format!("  - {v}\n"));
            }
            out.push_str(&format!("- restriction: {}\n", l.restriction_rendered));
            out.push_str(&format!(
                "- cited skeleton entry: dim {}, (a, b) = ({}, {}), {}\n",
                l.ledger_entry.dim, l.ledger_entry.a, l.ledger_entry.b, l.ledger_entry.note
            ));
        }
    }
}

fn render_validation(out: &mut String, v: &ValidationReportDto) {
    out.push_str("| check | result | witness |\n|---|---|---|\n");
    let mut row = |name: &str, c: &carnot_core::formats::CheckDto| {
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            name,
            if c.passed { "pass" } else { "FAIL" },
            if c.witness.is_empty() {
                "-".to_owned()
            } else {
                format!("{:?} {}", c.witness, c.detail)
            }
        ));
    };
    row("antisymmetry", &v.antisymmetry);
    row("jacobi", &v.jacobi);
    row("grading", &v.grading);
    row("nilpotency", &v.nilpotency);
    out.push_str(&format!(
        "\nlower central series dims: {:?}\noverall: {}\n",
        v.lower_central_series,
        if v.passed { "pass" } else { "FAIL" }
    ));
}

fn render_jet_info(out: &mut String, j: &JetInfoDto) {
    out.push_str(&format!(
        "- dimension: {}\n- nilpotency class: {}\n- homogeneous dimension: {}\n- lattice generators: {}\n\n",
        j.dim, j.nilpotency_class, j.homogeneous_dimension, j.lattice_generators
    ));
    out.push_str("| weight | layer dim |\n|---|---|\n");
    for g in &j.grading {
        out.push_str(&format!("| {} | {} |\n", g.weight, g.dim));
    }
}

fn render_cohomology(out: &mut String, c: &CohomologyDto) {
    out.push_str(&format!("- degree: {}\n- betti number: {}\n\n", c.degree, c.betti));
    if !c.representatives.is_empty() {
        out.push_str("| weight | representative |\n|---|---|\n");
        for r in &c.representatives {
            out.push_str(&format!("| {} | {} |\n", r.weight, r.rendered));
        }
    }
}

fn render_plane(out: &mut String, p: &PlaneExponentsDto) {
    out.push_str(&format!(
        "- (a, b) = ({}, {})\n- det G(t) = {}\n",
        p.a, p.b, p.gram_rendered
    ));
}
