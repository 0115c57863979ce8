//! Serialization of command results: CSV rows with full-precision floats
//! (17 significant digits, so every f64 round-trips exactly) and JSON
//! payloads tagged with a schema version.

use reflectionless::catalog::CatalogEntry;
use reflectionless::scattering::{Amplitudes, Incidence, Source};
use reflectionless::verify::SuiteReport;
use reflectionless::PotentialSpec;
use serde::Serialize;
use std::io::Write;

pub const SCHEMA_VERSION: u32 = 1;

/// Format an f64 with enough digits to reparse bit-exactly.
fn full(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
pub struct PotentialPayload<'a> {
    pub schema_version: u32,
    pub command: &'static str,
    pub spec: &'a PotentialSpec,
    pub samples: Vec<PotentialSample>,
}

#[derive(Serialize)]
pub struct PotentialSample {
    pub x: f64,
    pub re_v: f64,
    pub im_v: f64,
}

pub fn write_potential<W: Write>(
    w: &mut W,
    format: Format,
    spec: &PotentialSpec,
    samples: &[(f64, f64, f64)],
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "x,re_v,im_v")?;
            for (x, re, im) in samples {
                writeln!(w, "{},{},{}", full(*x), full(*re), full(*im))?;
            }
        }
        Format::Json => {
            let payload = PotentialPayload {
                schema_version: SCHEMA_VERSION,
                command: "potential",
                spec,
                samples: samples
                    .iter()
                    .map(|&(x, re_v, im_v)| PotentialSample { x, re_v, im_v })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut *w, &payload)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
pub struct WavefunctionPayload<'a> {
    pub schema_version: u32,
    pub command: &'static str,
    pub spec: &'a PotentialSpec,
    pub state_index: u32,
    pub energy: f64,
    pub samples: Vec<WavefunctionSample>,
}

#[derive(Serialize)]
pub struct WavefunctionSample {
    pub x: f64,
    pub re_psi: f64,
    pub im_psi: f64,
    pub abs_psi: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn write_wavefunction<W: Write>(
    w: &mut W,
    format: Format,
    spec: &PotentialSpec,
    state_index: u32,
    energy: f64,
    samples: &[(f64, f64, f64, f64)],
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "x,re_psi,im_psi,abs_psi")?;
            for (x, re, im, abs) in samples {
                writeln!(w, "{},{},{},{}", full(*x), full(*re), full(*im), full(*abs))?;
            }
        }
        Format::Json => {
            let payload = WavefunctionPayload {
                schema_version: SCHEMA_VERSION,
                command: "wavefunction",
                spec,
                state_index,
                energy,
                samples: samples
                    .iter()
                    .map(|&(x, re_psi, im_psi, abs_psi)| WavefunctionSample {
                        x,
                        re_psi,
                        im_psi,
                        abs_psi,
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut *w, &payload)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
pub struct ScatterPayload<'a> {
    pub schema_version: u32,
    pub command: &'static str,
    pub spec: &'a PotentialSpec,
    pub rows: Vec<ScatterRow>,
}

#[derive(Serialize)]
pub struct ScatterRow {
    pub k: f64,
    pub source: Source,
    pub incidence: Incidence,
    pub re_r: f64,
    pub im_r: f64,
    pub abs_r: f64,
    pub re_t: f64,
    pub im_t: f64,
    pub abs_t_sq: f64,
}

impl From<&Amplitudes> for ScatterRow {
    fn from(a: &Amplitudes) -> Self {
        Self {
            k: a.k,
            source: a.source,
            incidence: a.incidence,
            re_r: a.r.re,
            im_r: a.r.im,
            abs_r: a.r.norm(),
            re_t: a.t.re,
            im_t: a.t.im,
            abs_t_sq: a.t.norm_sqr(),
        }
    }
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Analytic => "analytic",
        Source::Numeric => "numeric",
    }
}

fn incidence_name(i: Incidence) -> &'static str {
    match i {
        Incidence::Left => "left",
        Incidence::Right => "right",
    }
}

pub fn write_scatter<W: Write>(
    w: &mut W,
    format: Format,
    spec: &PotentialSpec,
    rows: &[ScatterRow],
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "k,source,incidence,re_r,im_r,abs_r,re_t,im_t,abs_t_sq")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{}",
                    full(r.k),
                    source_name(r.source),
                    incidence_name(r.incidence),
                    full(r.re_r),
                    full(r.im_r),
                    full(r.abs_r),
                    full(r.re_t),
                    full(r.im_t),
                    full(r.abs_t_sq),
                )?;
            }
        }
        Format::Json => {
            let payload = ScatterPayload {
                schema_version: SCHEMA_VERSION,
                command: "scatter",
                spec,
                rows: rows
                    .iter()
                    .map(|r| ScatterRow {
                        k: r.k,
                        source: r.source,
                        incidence: r.incidence,
                        re_r: r.re_r,
                        im_r: r.im_r,
                        abs_r: r.abs_r,
                        re_t: r.re_t,
                        im_t: r.im_t,
                        abs_t_sq: r.abs_t_sq,
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut *w, &payload)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
pub struct CatalogPayload {
    pub schema_version: u32,
    pub command: &'static str,
    pub n: u32,
    pub m_max: u32,
    pub expected_count: usize,
    pub distinct_potentials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_well_levels_x4: Option<Vec<i64>>,
    pub entries: Vec<CatalogEntry>,
}

fn join_levels(levels: &[i64]) -> String {
    levels
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

pub fn write_catalog<W: Write>(
    w: &mut W,
    format: Format,
    payload: &CatalogPayload,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(
                w,
                "m,case,a,b,normal_valid,parametric_valid,n_normal,n_parametric,\
                 normal_levels_x4,parametric_levels_x4"
            )?;
            for e in &payload.entries {
                writeln!(
                    w,
                    "{},{:?},{},{},{},{},{},{},{},{}",
                    e.m,
                    e.case_label,
                    full(e.a()),
                    full(e.b()),
                    e.normal_valid,
                    e.parametric_valid,
                    e.normal_levels_x4.len(),
                    e.parametric_levels_x4.len(),
                    join_levels(&e.normal_levels_x4),
                    join_levels(&e.parametric_levels_x4),
                )?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, payload)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
pub struct VerifyPayload {
    pub schema_version: u32,
    pub command: &'static str,
    pub all_passed: bool,
    pub reports: Vec<SuiteReport>,
}

pub fn write_verify<W: Write>(
    w: &mut W,
    format: Option<Format>,
    payload: &VerifyPayload,
) -> std::io::Result<()> {
    match format {
        None => {
            for report in &payload.reports {
                writeln!(
                    w,
                    "suite {} ({} checks, {:.2} s):",
                    report.suite,
                    report.checks.len(),
                    report.elapsed_seconds
                )?;
                for check in &report.checks {
                    let op = match check.op {
                        reflectionless::verify::CheckOp::AtMost => "<=",
                        reflectionless::verify::CheckOp::AtLeast => ">=",
                    };
                    writeln!(
                        w,
                        "  [{}] {}: {:.3e} {} {:.3e}",
                        if check.pass { "PASS" } else { "FAIL" },
                        check.name,
                        check.measured,
                        op,
                        check.threshold,
                    )?;
                }
            }
            writeln!(
                w,
                "overall: {}",
                if payload.all_passed { "PASS" } else { "FAIL" }
            )?;
        }
        Some(Format::Json) => {
            serde_json::to_writer_pretty(&mut *w, payload)?;
            writeln!(w)?;
        }
        Some(Format::Csv) => {
            writeln!(w, "suite,check,measured,threshold,op,pass")?;
            for report in &payload.reports {
                for check in &report.checks {
                    let op = match check.op {
                        reflectionless::verify::CheckOp::AtMost => "<=",
                        reflectionless::verify::CheckOp::AtLeast => ">=",
                    };
                    writeln!(
                        w,
                        "{},{},{},{},{},{}",
                        report.suite,
                        check.name,
                        full(check.measured),
                        full(check.threshold),
                        op,
                        check.pass,
                    )?;
                }
            }
        }
    }
    Ok(())
}
