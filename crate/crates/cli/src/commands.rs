//! Command implementations and the error-to-exit-code mapping.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use mpfock::bargmann::{
    edge_limit_scan, mp2_even_state, mp2_full_state, mp2_odd_state, number_distribution,
    omega_from_physics, to_bargmann, DiskParam, ScanTable,
};
use mpfock::metaplectic::{bch_disentangle, BchCoefficients};
use mpfock::report::{
    DisentangleJson, FactorsJson, SolutionEnvelope, SpectrumSummaryJson, StateJson,
};
use mpfock::verify;
use mpfock::wave::{
    apply_wave_operator, general_solution, solve_vacuum_least_squares, thermal_solution,
    thermal_vacuum, PhysicalParams, VacuumCoefficients,
};
use mpfock::{Error, TruncationConfig};

use crate::config::{OutputFormat, RunConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_VALIDATION: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VacuumMode {
    Thermal,
    Leastsquares,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SolutionMode {
    Thermal,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Sector {
    Even,
    Odd,
    Full,
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::DisentangleFailed { .. } | Error::NotBogoliubov { .. } => EXIT_VALIDATION,
        _ => EXIT_DOMAIN,
    }
}

fn report_error(error: &Error) -> u8 {
    eprintln!("error: {error}");
    if matches!(error, Error::DegenerateVacuum | Error::SingularParams(_)) {
        eprintln!("hint: the m^2 = eps^2 surface is reached as a limit; use the limit-scan command");
    }
    exit_code_for(error)
}

fn emit(cfg: &RunConfig, text: &str) -> u8 {
    match &cfg.out {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_DOMAIN
            }
        },
        None => {
            print!("{text}");
            EXIT_OK
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("serializable");
    text.push('\n');
    text
}

pub fn cmd_verify(suite: &str, cfg: &RunConfig) -> u8 {
    let truncation = match cfg.truncation() {
        Ok(t) => t,
        Err(e) => return report_error(&e),
    };
    let reports = if suite == "all" {
        verify::registry()
            .iter()
            .map(|s| s.run(&truncation))
            .collect::<Vec<_>>()
    } else {
        match verify::find(suite) {
            Some(s) => vec![s.run(&truncation)],
            None => {
                eprintln!(
                    "error: unknown suite {suite:?}; available: {}, all",
                    verify::suite_names().join(", ")
                );
                return EXIT_USAGE;
            }
        }
    };

    let mut out = String::new();
    match cfg.format {
        OutputFormat::Json => {
            out = json_line(&reports);
        }
        OutputFormat::Csv => {
            for report in &reports {
                write!(out, "{report}").expect("string write");
            }
            let total: usize = reports.iter().map(|r| r.checks.len()).sum();
            let failed: usize = reports.iter().map(|r| r.failed()).sum();
            writeln!(out, "total: {total} checks, {failed} failed").expect("string write");
        }
    }
    let all_pass = reports.iter().all(|r| r.pass());
    let emit_code = emit(cfg, &out);
    if emit_code != EXIT_OK {
        return emit_code;
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    }
}

pub fn cmd_vacuum(p: f64, m: f64, eps: f64, mode: VacuumMode, cfg: &RunConfig) -> u8 {
    let truncation = match cfg.truncation() {
        Ok(t) => t,
        Err(e) => return report_error(&e),
    };
    let params = PhysicalParams::preset(p, m, eps);
    let envelope = match mode {
        VacuumMode::Thermal => thermal_vacuum(&params, &truncation).and_then(|state| {
            let action = apply_wave_operator(&params, &state, &truncation)?;
            Ok(SolutionEnvelope::from_state(&params, &state, action.residual))
        }),
        VacuumMode::Leastsquares => solve_vacuum_least_squares(&params, &truncation)
            .map(|(state, residual)| SolutionEnvelope::from_state(&params, &state, residual)),
    };
    match envelope {
        Ok(envelope) => emit(cfg, &json_line(&envelope)),
        Err(e) => report_error(&e),
    }
}

pub fn cmd_solution(
    p: f64,
    m: f64,
    eps: f64,
    mode: SolutionMode,
    va: (f64, f64),
    vb: (f64, f64),
    cfg: &RunConfig,
) -> u8 {
    let truncation = match cfg.truncation() {
        Ok(t) => t,
        Err(e) => return report_error(&e),
    };
    let params = PhysicalParams::preset(p, m, eps);
    let solution = match mode {
        SolutionMode::Thermal => thermal_solution(&params, &truncation),
        SolutionMode::General => {
            let vacuum = VacuumCoefficients {
                a: Complex64::new(va.0, va.1),
                b: Complex64::new(vb.0, vb.1),
            };
            general_solution(&params, &vacuum, &truncation)
        }
    };
    match solution {
        Ok(solution) => emit(
            cfg,
            &json_line(&SolutionEnvelope::from_solution(&params, &solution)),
        ),
        Err(e) => report_error(&e),
    }
}

/// Where a disk point comes from: given directly, or inverted from
/// wave-equation parameters.
pub struct SpectrumSource {
    pub omega: Option<f64>,
    pub omega_im: f64,
    pub p: Option<f64>,
    pub m: Option<f64>,
    pub eps: Option<f64>,
}

fn resolve_omega(source: &SpectrumSource) -> Result<DiskParam, u8> {
    match (source.omega, source.p, source.m, source.eps) {
        (Some(re), _, _, _) => {
            DiskParam::new(Complex64::new(re, source.omega_im)).map_err(|e| report_error(&e))
        }
        (None, Some(p), Some(m), Some(eps)) => {
            omega_from_physics(&PhysicalParams::preset(p, m, eps)).map_err(|e| report_error(&e))
        }
        _ => {
            eprintln!("error: give either --omega or all of --p, --m, --eps");
            Err(EXIT_USAGE)
        }
    }
}

#[derive(Serialize)]
struct SpectrumJson {
    omega: [f64; 2],
    sector: &'static str,
    spectrum: Vec<(usize, f64)>,
    summary: SpectrumSummaryJson,
}

pub fn cmd_spectrum(
    source: &SpectrumSource,
    sector: Sector,
    scan: Option<&str>,
    cfg: &RunConfig,
) -> u8 {
    if let Some(range) = scan {
        return match parse_scan(range) {
            Ok((start, end, steps)) => run_scan(start, end, steps, usize::MAX, cfg),
            Err(message) => {
                eprintln!("error: {message}");
                EXIT_USAGE
            }
        };
    }

    let truncation = match cfg.truncation() {
        Ok(t) => t,
        Err(e) => return report_error(&e),
    };
    let disk = match resolve_omega(source) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let state = match sector {
        Sector::Even => mp2_even_state(&disk, &truncation),
        Sector::Odd => mp2_odd_state(&disk, &truncation),
        Sector::Full => mp2_full_state(&disk, &truncation),
    };
    let state = match state {
        Ok(s) => s,
        Err(e) => return report_error(&e),
    };
    let dist = match number_distribution(&state) {
        Ok(d) => d,
        Err(e) => return report_error(&e),
    };
    let summary = SpectrumSummaryJson::from(&dist);

    // One row per level up to the last occupied one; states of finite
    // support produce compact tables.
    let occupied = dist
        .probabilities
        .iter()
        .rposition(|&p| p > 0.0)
        .unwrap_or(0);
    let rows: Vec<(usize, f64)> = dist
        .probabilities
        .iter()
        .copied()
        .enumerate()
        .take(occupied + 1)
        .collect();

    let text = match cfg.format {
        OutputFormat::Json => json_line(&SpectrumJson {
            omega: [disk.omega().re, disk.omega().im],
            sector: match sector {
                Sector::Even => "even",
                Sector::Odd => "odd",
                Sector::Full => "full",
            },
            spectrum: rows,
            summary,
        }),
        OutputFormat::Csv => {
            let mut out = String::from("n,probability\n");
            for (n, prob) in rows {
                writeln!(out, "{n},{prob}").expect("string write");
            }
            out.push_str(&json_line(&summary));
            out
        }
    };
    emit(cfg, &text)
}

pub fn cmd_bch(a: (f64, f64), b: (f64, f64), c: (f64, f64), cfg: &RunConfig) -> u8 {
    let truncation = match cfg.truncation() {
        Ok(t) => t,
        Err(e) => return report_error(&e),
    };
    let coeffs = BchCoefficients::new(
        Complex64::new(a.0, a.1),
        Complex64::new(b.0, b.1),
        Complex64::new(c.0, c.1),
    );
    match bch_disentangle(&coeffs, &truncation) {
        Ok(report) => emit(cfg, &json_line(&DisentangleJson::from(&report))),
        Err(Error::DisentangleFailed(failure)) => {
            #[derive(Serialize)]
            struct BothCandidates {
                error: &'static str,
                paper: FactorsJson,
                paper_deviation: f64,
                substituted: FactorsJson,
                substituted_deviation: f64,
                tol: f64,
            }
            let body = json_line(&BothCandidates {
                error: "validation_failed",
                paper: (&failure.paper).into(),
                paper_deviation: failure.paper_deviation,
                substituted: (&failure.substituted).into(),
                substituted_deviation: failure.substituted_deviation,
                tol: failure.tol,
            });
            let emit_code = emit(cfg, &body);
            if emit_code != EXIT_OK {
                emit_code
            } else {
                EXIT_VALIDATION
            }
        }
        Err(e) => report_error(&e),
    }
}

pub fn cmd_bargmann_eval(
    state_path: &Path,
    re_axis: (f64, f64, usize),
    im_axis: (f64, f64, usize),
    cfg: &RunConfig,
) -> u8 {
    let text = match std::fs::read_to_string(state_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", state_path.display());
            return EXIT_DOMAIN;
        }
    };
    let parsed: StateJson = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot parse state file: {e}");
            return EXIT_DOMAIN;
        }
    };
    let state = match parsed.to_state() {
        Ok(s) => s,
        Err(e) => return report_error(&e),
    };
    let f = match to_bargmann(&state) {
        Ok(f) => f,
        Err(e) => return report_error(&e),
    };
    let (re_min, re_max, re_steps) = re_axis;
    let (im_min, im_max, im_steps) = im_axis;
    if re_steps < 2 || im_steps < 2 || re_max <= re_min || im_max <= im_min {
        eprintln!("error: grid needs at least 2 steps per axis and max > min");
        return EXIT_USAGE;
    }
    let mut out = String::from("re,im,abs_f\n");
    for i in 0..re_steps {
        let re = re_min + (re_max - re_min) * i as f64 / (re_steps - 1) as f64;
        for j in 0..im_steps {
            let im = im_min + (im_max - im_min) * j as f64 / (im_steps - 1) as f64;
            let value = f.eval(Complex64::new(re, im)).norm();
            writeln!(out, "{re},{im},{value}").expect("string write");
        }
    }
    emit(cfg, &out)
}

fn parse_scan(spec: &str) -> Result<(f64, f64, usize), String> {
    // START..END:STEPS
    let (range, steps) = spec
        .rsplit_once(':')
        .ok_or_else(|| format!("bad scan spec {spec:?}; expected START..END:STEPS"))?;
    let (start, end) = range
        .split_once("..")
        .ok_or_else(|| format!("bad scan range {range:?}; expected START..END"))?;
    let start: f64 = start.parse().map_err(|_| format!("bad scan start {start:?}"))?;
    let end: f64 = end.parse().map_err(|_| format!("bad scan end {end:?}"))?;
    let steps: usize = steps.parse().map_err(|_| format!("bad scan steps {steps:?}"))?;
    if steps < 1 {
        return Err("scan needs at least one step".into());
    }
    Ok((start, end, steps))
}

pub fn cmd_limit_scan(start: f64, end: f64, steps: usize, levels: usize, cfg: &RunConfig) -> u8 {
    if steps < 1 {
        eprintln!("error: scan needs at least one step");
        return EXIT_USAGE;
    }
    run_scan(start, end, steps, levels, cfg)
}

/// Run the edge scan point by point. Without an explicit --dim the
/// truncation grows per point (powers of two from 128) until the tail
/// criterion is met, so the scan works arbitrarily close to the edge.
fn run_scan(start: f64, end: f64, steps: usize, levels: usize, cfg: &RunConfig) -> u8 {
    let mut table = ScanTable::default();
    for k in 0..steps {
        let omega_abs = if steps == 1 {
            start
        } else {
            start + (end - start) * k as f64 / (steps - 1) as f64
        };
        let disk = match DiskParam::new(Complex64::new(omega_abs, 0.0)) {
            Ok(d) => d,
            Err(e) => return report_error(&e),
        };
        let point = if cfg.dim_explicit {
            scan_point(&disk, cfg, cfg.dim)
        } else {
            let mut result = Err(Error::TruncationInsufficient("unattempted".into()));
            let mut dim = 128usize;
            while dim <= 1 << 20 {
                result = scan_point(&disk, cfg, dim);
                match &result {
                    Err(Error::TruncationInsufficient(_)) => dim *= 2,
                    _ => break,
                }
            }
            result
        };
        match point {
            Ok(sub) => {
                table
                    .rows
                    .extend(sub.rows.into_iter().filter(|r| r.level <= levels));
                table.points.extend(sub.points);
            }
            Err(e) => return report_error(&e),
        }
    }

    let mut out = String::from("omega_abs,m,ratio\n");
    for row in &table.rows {
        writeln!(out, "{},{},{}", row.omega_abs, row.level, row.ratio).expect("string write");
    }
    emit(cfg, &out)
}

fn scan_point(disk: &DiskParam, cfg: &RunConfig, dim: usize) -> mpfock::Result<ScanTable> {
    let truncation: TruncationConfig = cfg.truncation_with_dim(dim)?;
    edge_limit_scan(std::slice::from_ref(disk), &truncation)
}
