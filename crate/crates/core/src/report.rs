//! Deterministic plain-text reports.
//!
//! A report is a sequence of `key=value` lines in a fixed order, so that
//! two runs on the same input produce byte-identical output. Wall-clock
//! timings are the one intentionally nondeterministic section; they are
//! rendered only when the caller collected them, after everything else.

use crate::field::{CoeffField, FieldKind};
use crate::linmatrix::LinearMatrix;
use crate::theorem::{CaseKind, Flag, VerificationReport};
use crate::TOOL_VERSION;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

/// Schema version, bumped whenever keys change meaning or order.
pub const REPORT_VERSION: u32 = 1;

/// Input identity and configuration echoed at the top of a report.
#[derive(Debug, Clone)]
pub struct ReportMeta {
    pub input_hash: String,
    pub field: String,
    pub vars: Vec<String>,
    pub seed: u64,
    pub pair_cap: usize,
    pub degree_cap: u32,
    /// Labelled wall-clock milliseconds, rendered only when present.
    pub timings: Option<Vec<(String, u128)>>,
}

/// Short human- and machine-readable field descriptor.
pub fn field_descriptor(field: &CoeffField) -> String {
    match field.kind() {
        FieldKind::Rationals => "QQ".to_string(),
        FieldKind::Prime(p) => format!("GF({p})"),
    }
}

/// Fingerprint of the mathematical input: field, variables, and the
/// canonical rendering of every entry.
pub fn input_fingerprint(phi: &LinearMatrix) -> String {
    let mut h = Sha256::new();
    h.update(field_descriptor(phi.ring().field()).as_bytes());
    h.update(b"\n");
    for i in 0..phi.ring().nvars() {
        h.update(phi.ring().name(i).as_bytes());
        h.update(b",");
    }
    h.update(b"\n");
    for i in 0..phi.rows() {
        for j in 0..phi.cols() {
            h.update(phi.entry(i, j).to_string().as_bytes());
            h.update(b";");
        }
        h.update(b"\n");
    }
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Meta block for a verification of `phi` with the given seed and budget.
pub fn meta_for(
    phi: &LinearMatrix,
    seed: u64,
    pair_cap: usize,
    degree_cap: u32,
) -> ReportMeta {
    ReportMeta {
        input_hash: input_fingerprint(phi),
        field: field_descriptor(phi.ring().field()),
        vars: (0..phi.ring().nvars())
            .map(|i| phi.ring().name(i).to_string())
            .collect(),
        seed,
        pair_cap,
        degree_cap,
        timings: None,
    }
}

fn flag_str(f: &Flag) -> String {
    match f {
        Flag::True => "true".to_string(),
        Flag::False => "false".to_string(),
        Flag::Skipped(reason) => format!("skipped:{reason}"),
    }
}

fn push_rows(out: &mut String, prefix: &str, rows: &[Vec<String>]) {
    for (i, row) in rows.iter().enumerate() {
        let _ = writeln!(out, "{prefix}.{}={}", i + 1, row.join(" | "));
    }
}

fn push_list(out: &mut String, key: &str, items: &[String]) {
    let _ = writeln!(out, "{key}={}", items.join(","));
}

/// Render the full report. Key order is fixed; optional sections appear
/// exactly when the corresponding data was computed.
pub fn render(report: &VerificationReport, meta: &ReportMeta) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "report.version={REPORT_VERSION}");
    let _ = writeln!(w, "tool.version={TOOL_VERSION}");
    let _ = writeln!(w, "input.hash={}", meta.input_hash);
    let _ = writeln!(w, "input.field={}", meta.field);
    let _ = writeln!(w, "input.rows={}", report.n);
    let _ = writeln!(w, "input.cols={}", report.n.saturating_sub(1));
    let _ = writeln!(w, "config.seed={}", meta.seed);
    let _ = writeln!(w, "config.pair_cap={}", meta.pair_cap);
    let _ = writeln!(w, "config.degree_cap={}", meta.degree_cap);
    push_list(w, "ring.vars", &meta.vars);
    push_rows(w, "matrix.row", &report.matrix_rows);

    match &report.case {
        CaseKind::ExpectedForm => {
            let _ = writeln!(w, "case=expected-form");
        }
        CaseKind::HeightDrop => {
            let _ = writeln!(w, "case=height-drop");
        }
        CaseKind::Rejected(reason) => {
            let _ = writeln!(w, "case=rejected");
            let _ = writeln!(w, "case.reason={reason}");
        }
    }

    let _ = writeln!(w, "hypothesis.spans={}", report.spans);
    if let Some(h) = report.ideal_height {
        let _ = writeln!(w, "hypothesis.ideal_height={h}");
    }
    if !report.heights.is_empty() {
        let hs: Vec<String> = report.heights.iter().map(|h| h.to_string()).collect();
        push_list(w, "hypothesis.heights", &hs);
    }
    for (s, ok) in &report.gs_levels {
        let _ = writeln!(w, "hypothesis.gs.s{s}={ok}");
    }
    if !report.gs_levels.is_empty() {
        let _ = writeln!(w, "hypothesis.max_gs={}", report.max_gs);
    }

    if let Some(u) = report.u {
        let _ = writeln!(w, "instance.u={u}");
    }
    if let Some(p) = &report.point {
        push_list(w, "instance.point", p);
    }
    if let Some(rows) = &report.canonical_rows {
        push_rows(w, "canonical.row", rows);
    }
    if let Some(rows) = &report.dual_rows {
        push_rows(w, "dual.row", rows);
    }

    if let Some(v) = report.sym_dim {
        let _ = writeln!(w, "dims.sym={v}");
    }
    if let Some(v) = report.rees_dim {
        let _ = writeln!(w, "dims.rees={v}");
    }
    if let Some(v) = report.spread {
        let _ = writeln!(w, "dims.spread={v}");
    }
    if let Some(v) = report.fiber_gens {
        let _ = writeln!(w, "fiber.gens={v}");
    }
    if let Some(v) = report.fiber_indeg {
        let _ = writeln!(w, "fiber.indeg={v}");
    }
    if let Some((rows, cols)) = &report.rank_witness {
        let rs: Vec<String> = rows.iter().map(|v| v.to_string()).collect();
        let cs: Vec<String> = cols.iter().map(|v| v.to_string()).collect();
        push_list(w, "rank.witness.rows", &rs);
        push_list(w, "rank.witness.cols", &cs);
    }
    if let Some(v) = report.inverse_count {
        let _ = writeln!(w, "inverse.count={v}");
    }
    if let Some(v) = report.excluded_count {
        let _ = writeln!(w, "inverse.excluded={v}");
    }
    if let Some(c) = &report.spec_coeffs {
        push_list(w, "spec.coeffs", c);
    }

    for e in &report.checks {
        let _ = writeln!(w, "flag.{}={}", e.name, flag_str(&e.value));
    }
    let _ = writeln!(w, "consistent={}", report.consistent);
    push_list(w, "violations", &report.violations);

    if let Some(timings) = &meta.timings {
        for (label, ms) in timings {
            let _ = writeln!(w, "timing.{label}={ms}");
        }
    }
    out
}
