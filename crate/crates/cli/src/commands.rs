use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use genhermite::factorization::MielnikFactorization;
use genhermite::numerics::discretized_spectrum;
use genhermite::verify::{self, ToleranceProfile, VerifyConfig, VerifyReport};
use genhermite::{GenHermiteFunction, Grid, HermiteIndex};
use serde::Serialize;

use crate::args::{
    EvalArgs, FigureArgs, OutputFormat, PartnerArgs, TableArgs, VerifyArgs, FIGURE_DELTAS, FIGURE_GRID,
    PARTNER_GRID,
};
use crate::format::{csv_float, significant};
use crate::CliError;

/// Lowest partner levels reported by `partner`.
pub const PARTNER_LEVELS: usize = 4;

const MAX_LISTED_FAILURES: usize = 12;

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

/// Opens `path` (or stdout), hands a buffered writer to `body`, and flushes.
fn with_sink<F>(path: Option<&Path>, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let io_err = |source| CliError::Io { path: p.display().to_string(), source };
            let mut w = BufWriter::new(File::create(p).map_err(io_err)?);
            body(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w).map_err(stdout_err)?;
            w.flush().map_err(stdout_err)
        }
    }
}

fn write_json<T: Serialize + ?Sized>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}

#[derive(Serialize)]
struct EvalRecord {
    n: usize,
    delta: f64,
    x: f64,
    value: f64,
}

pub fn eval(a: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !a.x.is_finite() {
        return Err(CliError::Invalid(format!("x must be finite, got {}", a.x)));
    }
    let h = GenHermiteFunction::new(a.n, a.delta)?;
    let value = h.eval(a.x);
    let res = match a.format {
        OutputFormat::Csv => writeln!(out, "{}", significant(value, 15)),
        OutputFormat::Json => write_json(out, &EvalRecord { n: a.n, delta: a.delta, x: a.x, value }),
    };
    res.map_err(stdout_err)
}

#[derive(Serialize)]
struct TableRow {
    x: f64,
    value: f64,
    d1: f64,
    d2: f64,
}

pub fn table(a: &TableArgs) -> Result<(), CliError> {
    let h = GenHermiteFunction::new(a.n, a.delta)?;
    let grid = a.grid.resolve(FIGURE_GRID)?;
    let rows: Vec<TableRow> = grid
        .points()
        .map(|x| {
            let j = h.jet(x);
            TableRow { x, value: j.value, d1: j.d1, d2: j.d2 }
        })
        .collect();
    with_sink(a.out.as_deref(), |w| match a.format {
        OutputFormat::Json => write_json(w, &rows),
        OutputFormat::Csv => {
            writeln!(w, "x,value,d1,d2")?;
            for r in &rows {
                writeln!(w, "{},{},{},{}", csv_float(r.x), csv_float(r.value), csv_float(r.d1), csv_float(r.d2))?;
            }
            Ok(())
        }
    })
}

#[derive(Serialize)]
pub struct FigureRow {
    pub x: f64,
    pub n: usize,
    pub delta: f64,
    pub value: f64,
}

/// Rows ordered by δ, then n, then x.
pub fn figure_rows(n_max: usize, deltas: &[f64], grid: &Grid) -> Result<Vec<FigureRow>, CliError> {
    let mut rows = Vec::with_capacity(deltas.len() * (n_max + 1) * grid.count());
    for &delta in deltas {
        for n in 0..=n_max {
            let h = GenHermiteFunction::new(n, delta)?;
            rows.extend(grid.points().map(|x| FigureRow { x, n, delta, value: h.eval(x) }));
        }
    }
    Ok(rows)
}

pub fn figure(a: &FigureArgs) -> Result<(), CliError> {
    let deltas = if a.delta.is_empty() { FIGURE_DELTAS.to_vec() } else { a.delta.clone() };
    let grid = a.grid.resolve(FIGURE_GRID)?;
    let rows = figure_rows(a.n, &deltas, &grid)?;
    with_sink(a.out.as_deref(), |w| match a.format {
        OutputFormat::Json => write_json(w, &rows),
        OutputFormat::Csv => {
            writeln!(w, "x,n,delta,value")?;
            for r in &rows {
                writeln!(w, "{},{},{},{}", csv_float(r.x), r.n, csv_float(r.delta), csv_float(r.value))?;
            }
            Ok(())
        }
    })
}

pub fn verify_config(a: &VerifyArgs, inject_fault: bool) -> Result<VerifyConfig, CliError> {
    if !(a.tolerance_scale > 0.0 && a.tolerance_scale.is_finite()) {
        return Err(CliError::Invalid(format!(
            "tolerance scale must be positive, got {}",
            a.tolerance_scale
        )));
    }
    let defaults = VerifyConfig::default();
    let grid = a
        .grid
        .resolve((defaults.grid.x_min(), defaults.grid.x_max(), defaults.grid.count()))?;
    Ok(VerifyConfig {
        deltas: if a.delta.is_empty() { defaults.deltas } else { a.delta.clone() },
        gammas: if a.gamma.is_empty() { defaults.gammas } else { a.gamma.clone() },
        n_max: a.n,
        grid,
        tolerances: ToleranceProfile::default().scaled(a.tolerance_scale),
        inject_fault,
    })
}

fn location(o: &verify::CheckOutcome) -> String {
    let mut parts = Vec::new();
    if let Some(n) = o.n {
        parts.push(format!("n={n}"));
    }
    if let Some(d) = o.delta {
        parts.push(format!("delta={}", significant(d, 6)));
    }
    if let Some(g) = o.gamma {
        parts.push(format!("gamma={}", significant(g, 6)));
    }
    if let Some(x) = o.argmax_x {
        parts.push(format!("x={}", significant(x, 6)));
    }
    parts.join(" ")
}

fn write_summary(w: &mut dyn Write, report: &VerifyReport) -> io::Result<()> {
    writeln!(w, "{:<18} {:>12} {:>10}  {:<6} worst at", "check", "residual", "tolerance", "status")?;
    for o in report.summary() {
        writeln!(
            w,
            "{:<18} {:>12.3e} {:>10.1e}  {:<6} {}",
            o.check.name(),
            o.residual,
            o.tolerance,
            if o.passed { "PASS" } else { "FAIL" },
            location(o)
        )?;
    }
    Ok(())
}

pub fn verify(a: &VerifyArgs, inject_fault: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let config = verify_config(a, inject_fault)?;
    let report = verify::run(&config)?;
    match a.format {
        OutputFormat::Csv => write_summary(out, &report),
        OutputFormat::Json => write_json(out, &report),
    }
    .map_err(stdout_err)?;

    if report.all_passed() {
        return Ok(());
    }
    let total = report.failures().count();
    let mut lines: Vec<String> = report
        .failures()
        .take(MAX_LISTED_FAILURES)
        .map(|o| format!("{} ({}) residual {:.3e} > {:.1e} at {}", o.check, o.detail, o.residual, o.tolerance, location(o)))
        .collect();
    if total > MAX_LISTED_FAILURES {
        lines.push(format!("... and {} more", total - MAX_LISTED_FAILURES));
    }
    Err(CliError::VerificationFailed(format!("{total} identity check(s) failed:\n  {}", lines.join("\n  "))))
}

#[derive(Serialize)]
pub struct PartnerRow {
    pub x: f64,
    pub v_tilde: f64,
    pub psi0: f64,
    pub psi1: f64,
    pub psi2: f64,
}

#[derive(Serialize)]
pub struct PartnerLevel {
    pub n: usize,
    pub discretized: f64,
    pub exact: f64,
}

#[derive(Serialize)]
struct PartnerJson<'a> {
    gamma: f64,
    rows: &'a [PartnerRow],
    spectrum: &'a [PartnerLevel],
}

pub fn partner_rows(m: &MielnikFactorization, grid: &Grid) -> Result<Vec<PartnerRow>, CliError> {
    let (i1, i2) = (HermiteIndex::new(1)?, HermiteIndex::new(2)?);
    Ok(grid
        .points()
        .map(|x| PartnerRow {
            x,
            v_tilde: m.partner_potential(x),
            psi0: m.partner_groundstate(x),
            psi1: m.partner_excited(i1, x),
            psi2: m.partner_excited(i2, x),
        })
        .collect())
}

pub fn partner_spectrum(
    m: &MielnikFactorization,
    half_width: f64,
    points: usize,
) -> Result<Vec<PartnerLevel>, CliError> {
    let values = discretized_spectrum(|x| m.partner_potential(x), half_width, points, PARTNER_LEVELS)?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(n, discretized)| PartnerLevel { n, discretized, exact: n as f64 + 0.5 })
        .collect())
}

pub fn partner(a: &PartnerArgs) -> Result<(), CliError> {
    let m = MielnikFactorization::new(a.gamma)?;
    let grid = a.grid.resolve(PARTNER_GRID)?;
    let rows = partner_rows(&m, &grid)?;
    let spectrum = partner_spectrum(&m, a.box_half_width, a.box_points)?;

    with_sink(a.out.as_deref(), |w| match a.format {
        OutputFormat::Json => write_json(w, &PartnerJson { gamma: a.gamma, rows: &rows, spectrum: &spectrum }),
        OutputFormat::Csv => {
            writeln!(w, "x,V_tilde,psi0,psi1,psi2")?;
            for r in &rows {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    csv_float(r.x),
                    csv_float(r.v_tilde),
                    csv_float(r.psi0),
                    csv_float(r.psi1),
                    csv_float(r.psi2)
                )?;
            }
            Ok(())
        }
    })?;

    // keep stdout clean for the CSV when no file was given
    if a.format == OutputFormat::Csv {
        let mut err = io::stderr().lock();
        let report = |w: &mut dyn Write| -> io::Result<()> {
            writeln!(w, "lowest levels of the partner Hamiltonian (gamma = {})", significant(a.gamma, 15))?;
            writeln!(w, "{:>3} {:>14} {:>6} {:>10}", "n", "discretized", "exact", "|diff|")?;
            for l in &spectrum {
                writeln!(
                    w,
                    "{:>3} {:>14.8} {:>6.1} {:>10.2e}",
                    l.n,
                    l.discretized,
                    l.exact,
                    (l.discretized - l.exact).abs()
                )?;
            }
            Ok(())
        };
        if a.out.is_some() {
            report(&mut io::stdout().lock()).map_err(stdout_err)?;
        } else {
            report(&mut err).map_err(|source| CliError::Io { path: "<stderr>".into(), source })?;
        }
    }
    Ok(())
}
