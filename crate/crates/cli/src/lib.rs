//! Command implementations behind the `rotsurf` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::TAU;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rotsurf_core::verify::format_table;
use rotsurf_core::{
    integrate_special, invariant_sample, minimal_meridian, pnmc_meridian, run_suite, Error, InvariantSample, IvpConfig,
    Meridian, MinimalParams, SpecialClass, SurfaceSpec, SurfaceType, Vec4, VerifyParams,
};

pub const INVARIANTS_HEADER: [&str; 18] = [
    "u", "valid", "E", "F", "G", "K", "H1", "H2", "Hnorm2", "kappa", "gamma", "mu", "nu1", "nu2", "phi", "D1", "D2",
    "D3",
];
pub const MESH_CSV_HEADER: [&str; 6] = ["u", "v", "x1", "x2", "x3", "x4"];
/// Node count used when a finite domain is known but no `--u-range` was given.
pub const DEFAULT_U_COUNT: usize = 401;

#[derive(Debug, Parser)]
#[command(
    name = "rotsurf",
    version,
    about = "Invariants, special families and checks for timelike rotational surfaces in R^4_1"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate invariants over a u grid
    Invariants(InvariantsArgs),
    /// Generate a sampled meridian for a special family
    Generate(GenerateArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Export the surface as a point cloud or projected mesh
    Mesh(MeshArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Obj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Minimal,
    Pnmc,
    Flat,
    FlatNormal,
    Cmc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Projection {
    DropX4,
    DropX3,
    DropX1,
}

impl Projection {
    pub fn apply(self, x: Vec4) -> [f64; 3] {
        match self {
            Projection::DropX4 => [x.x1, x.x2, x.x3],
            Projection::DropX3 => [x.x1, x.x2, x.x4],
            Projection::DropX1 => [x.x2, x.x3, x.x4],
        }
    }
}

/// `start:end:count` with `start < end` and `count ≥ 2`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl GridRange {
    pub fn points(&self) -> Vec<f64> {
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.end } else { self.start + step * i as f64 }).collect()
    }
}

impl FromStr for GridRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("expected start:end:count, got `{s}`"));
        };
        let start = plain_f64(a)?;
        let end = plain_f64(b)?;
        let count: usize = n.trim().parse().map_err(|_| format!("count `{n}` is not a non-negative integer"))?;
        if !(start < end) {
            return Err(format!("need start < end, got {start} and {end}"));
        }
        if count < 2 {
            return Err(format!("need count >= 2, got {count}"));
        }
        Ok(GridRange { start, end, count })
    }
}

/// Finite decimal number; rejects `inf`, `nan` and anything that is not a literal.
pub fn plain_f64(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let ok = !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    match t.parse::<f64>() {
        Ok(x) if ok && x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a plain decimal number")),
    }
}

/// Closed-form family parameters shared by `invariants`, `mesh` and `generate`.
#[derive(Debug, Clone, Args)]
pub struct FamilyParams {
    #[arg(long = "A", value_parser = plain_f64, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long = "C", value_parser = plain_f64, allow_hyphen_values = true)]
    pub c_const: Option<f64>,
    /// Branch sign of the minimal family
    #[arg(long, value_parser = plain_f64, allow_hyphen_values = true, default_value = "1")]
    pub eps: f64,
    /// Branch sign of the PNMC family
    #[arg(long, value_parser = plain_f64, allow_hyphen_values = true, default_value = "1")]
    pub sign: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long = "type", default_value = "I", value_parser = parse_type)]
    pub stype: SurfaceType,
    #[arg(long, value_parser = plain_f64, default_value = "1")]
    pub alpha: f64,
    #[arg(long, value_parser = plain_f64, default_value = "1")]
    pub beta: f64,
    /// Meridian f(u) in the expression DSL
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Meridian g(u) in the expression DSL (default `u`)
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long)]
    pub meridian_csv: Option<PathBuf>,
    /// Closed-form family used as the meridian
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long, allow_hyphen_values = true)]
    pub u_range: Option<GridRange>,
}

fn parse_type(s: &str) -> Result<SurfaceType, String> {
    s.parse::<SurfaceType>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: FamilyName,
    #[arg(long = "type", default_value = "I", value_parser = parse_type)]
    pub stype: SurfaceType,
    #[arg(long, value_parser = plain_f64, default_value = "1")]
    pub alpha: f64,
    #[arg(long, value_parser = plain_f64, default_value = "1")]
    pub beta: f64,
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long, allow_hyphen_values = true)]
    pub u_range: Option<GridRange>,
    #[arg(long, value_parser = plain_f64, allow_hyphen_values = true)]
    pub u0: Option<f64>,
    #[arg(long, value_parser = plain_f64, allow_hyphen_values = true)]
    pub f0: Option<f64>,
    #[arg(long, value_parser = plain_f64, allow_hyphen_values = true)]
    pub fp0: Option<f64>,
    #[arg(long, value_parser = plain_f64, allow_hyphen_values = true)]
    pub u_end: Option<f64>,
    /// RK4 step
    #[arg(long, value_parser = plain_f64, default_value = "1e-3")]
    pub h: f64,
    /// CMC constant, nu1 - nu2 = c
    #[arg(long, value_parser = plain_f64, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long, default_value_t = rotsurf_core::verify::DEFAULT_SEED)]
    pub seed: u64,
    /// RK4 step for the ODE suites
    #[arg(long, value_parser = plain_f64, default_value = "1e-3")]
    pub h: f64,
    /// JSON report path; the table still goes to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `json` prints the report instead of the table when no --out is given
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// v grid; default is 64 points on [0, 2pi)
    #[arg(long, allow_hyphen_values = true)]
    pub v_range: Option<GridRange>,
    #[arg(long, value_enum, default_value = "drop-x4")]
    pub projection: Projection,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "obj")]
    pub format: Format,
}

/// Successful outcomes with their exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    ChecksFailed,
    Truncated,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::ChecksFailed => 1,
            Outcome::Truncated => 3,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// Every error is a usage or configuration error.
    pub fn code(&self) -> u8 {
        2
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Invariants(a) => cmd_invariants(&a),
        Command::Generate(a) => cmd_generate(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Mesh(a) => cmd_mesh(&a),
    }
}

fn sink(out: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn minimal_params(alpha: f64, beta: f64, p: &FamilyParams) -> CliResult<MinimalParams> {
    let a = p.a.ok_or_else(|| CliError::Usage("minimal family needs --A".into()))?;
    let c = p.c_const.ok_or_else(|| CliError::Usage("minimal family needs --C".into()))?;
    Ok(MinimalParams { a, c, eps: p.eps, alpha, beta })
}

/// Closed-form family meridian restricted to `range` (or its default window).
fn closed_family(
    family: FamilyName,
    stype: SurfaceType,
    alpha: f64,
    beta: f64,
    p: &FamilyParams,
    range: Option<GridRange>,
) -> CliResult<Meridian> {
    let requested = range.map(|r| (r.start, r.end));
    let m = match family {
        FamilyName::Minimal => {
            let mp = minimal_params(alpha, beta, p)?;
            let window = requested.or(match stype {
                SurfaceType::TypeI => Some((-2.0, 2.0)),
                SurfaceType::TypeII => None,
            });
            let m = minimal_meridian(stype, mp, window)?;
            let (lo, hi) = m.domain();
            if hi.is_infinite() {
                m.restricted(lo, lo + 2.0)?
            } else {
                m
            }
        }
        FamilyName::Pnmc => {
            let c = p.c_const.ok_or_else(|| CliError::Usage("pnmc family needs --C".into()))?;
            let window = requested.or(match stype {
                SurfaceType::TypeI => Some((-2.0, 2.0)),
                SurfaceType::TypeII => None,
            });
            pnmc_meridian(stype, c, p.sign, alpha, beta, window)?
        }
        other => {
            return Err(CliError::Usage(format!(
                "{} is an ODE family; generate it first and pass --meridian-csv",
                family_label(other)
            )))
        }
    };
    Ok(m)
}

fn family_label(f: FamilyName) -> &'static str {
    match f {
        FamilyName::Minimal => "minimal",
        FamilyName::Pnmc => "pnmc",
        FamilyName::Flat => "flat",
        FamilyName::FlatNormal => "flat-normal",
        FamilyName::Cmc => "cmc",
    }
}

/// Builds the surface and its u grid from the meridian source flags.
pub fn resolve_surface(a: &SurfaceArgs) -> CliResult<(SurfaceSpec, Vec<f64>)> {
    let sources = [a.f.is_some(), a.meridian_csv.is_some(), a.family.is_some()].iter().filter(|x| **x).count();
    if sources != 1 {
        return Err(CliError::Usage("give exactly one of --f, --meridian-csv, --family".into()));
    }
    if a.g.is_some() && a.f.is_none() {
        return Err(CliError::Usage("--g needs --f".into()));
    }
    let meridian = if let Some(f) = &a.f {
        let dom = a.u_range.map(|r| (r.start, r.end)).unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
        Meridian::from_dsl(f, a.g.as_deref(), dom)?
    } else if let Some(p) = &a.meridian_csv {
        Meridian::load_csv(p)?
    } else {
        closed_family(a.family.unwrap_or(FamilyName::Minimal), a.stype, a.alpha, a.beta, &a.params, a.u_range)?
    };
    let us = match a.u_range {
        Some(r) => r.points(),
        None => {
            let (lo, hi) = meridian.domain();
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(CliError::Usage("meridian domain is unbounded; give --u-range".into()));
            }
            GridRange { start: lo, end: hi, count: DEFAULT_U_COUNT }.points()
        }
    };
    Ok((SurfaceSpec::new(a.stype, a.alpha, a.beta, meridian)?, us))
}

fn sample_row(s: &InvariantSample) -> Vec<String> {
    let mut row = vec![num(s.u), if s.valid { "1" } else { "0" }.to_string()];
    let vals =
        [s.E, s.F, s.G, s.K, s.H1, s.H2, s.Hnorm2, s.kappa, s.gamma, s.mu, s.nu1, s.nu2, s.phi, s.D1, s.D2, s.D3];
    row.extend(vals.iter().map(|&x| if s.valid { num(x) } else { String::new() }));
    row
}

/// Writes the invariant table; invalid rows keep `u` and leave numeric cells empty.
pub fn write_invariants_csv<W: Write>(w: W, samples: &[InvariantSample]) -> CliResult<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(INVARIANTS_HEADER).map_err(Error::from)?;
    for s in samples {
        wr.write_record(sample_row(s)).map_err(Error::from)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn cmd_invariants(a: &InvariantsArgs) -> CliResult<Outcome> {
    let (spec, us) = resolve_surface(&a.surface)?;
    let samples: Vec<InvariantSample> = us.iter().map(|&u| invariant_sample(&spec, u)).collect();
    if !samples.iter().any(|s| s.valid) {
        return Err(Error::EmptyDomain("no valid point on the u grid".into()).into());
    }
    let mut out = sink(a.out.as_deref())?;
    match a.format {
        Format::Csv => write_invariants_csv(&mut out, &samples)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &samples).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Obj => return Err(CliError::Usage("invariants supports --format csv or json".into())),
    }
    out.flush()?;
    Ok(Outcome::Ok)
}

pub fn cmd_generate(a: &GenerateArgs) -> CliResult<Outcome> {
    let (meridian, outcome) = match a.family {
        FamilyName::Minimal | FamilyName::Pnmc => {
            let m = closed_family(a.family, a.stype, a.alpha, a.beta, &a.params, a.u_range)?;
            let n = a.u_range.map_or(DEFAULT_U_COUNT, |r| r.count);
            (m.to_sampled(n)?, Outcome::Ok)
        }
        FamilyName::Flat | FamilyName::FlatNormal | FamilyName::Cmc => {
            let sclass = match a.family {
                FamilyName::Flat => SpecialClass::Flat,
                FamilyName::FlatNormal => SpecialClass::FlatNormal,
                _ => SpecialClass::Cmc(a.c.ok_or_else(|| CliError::Usage("cmc needs --c".into()))?),
            };
            let need = |x: Option<f64>, flag: &str| x.ok_or_else(|| CliError::Usage(format!("{flag} is required")));
            let cfg = IvpConfig {
                u0: need(a.u0, "--u0")?,
                f0: need(a.f0, "--f0")?,
                fp0: need(a.fp0, "--fp0")?,
                u_end: need(a.u_end, "--u-end")?,
                h: a.h,
            };
            let run = integrate_special(sclass, a.stype, a.alpha, a.beta, cfg)?;
            let outcome = if run.truncated {
                let (lo, hi) = run.meridian.domain();
                eprintln!(
                    "truncated: {} (integrated span [{lo}, {hi}])",
                    run.reason.as_deref().unwrap_or("singularity guard")
                );
                Outcome::Truncated
            } else {
                Outcome::Ok
            };
            (run.meridian, outcome)
        }
    };
    let mut out = sink(a.out.as_deref())?;
    meridian.write_csv(&mut out)?;
    out.flush()?;
    Ok(outcome)
}

pub fn cmd_verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let params = VerifyParams { seed: a.seed, ode_step: a.h, ..VerifyParams::default() };
    if !(a.h > 0.0) {
        return Err(CliError::Usage("--h must be positive".into()));
    }
    let reports = run_suite(&a.suite, &params)?;
    let json = serde_json::to_string_pretty(&reports).map_err(io::Error::from)?;
    let mut stdout = io::stdout().lock();
    match (&a.out, a.format) {
        (Some(p), _) => {
            std::fs::write(p, format!("{json}\n"))?;
            write!(stdout, "{}", format_table(&reports))?;
        }
        (None, Some(Format::Json)) => writeln!(stdout, "{json}")?,
        (None, Some(Format::Csv | Format::Obj)) => {
            return Err(CliError::Usage("verify supports --format json".into()));
        }
        (None, None) => write!(stdout, "{}", format_table(&reports))?,
    }
    stdout.flush()?;
    Ok(if reports.iter().all(|r| r.passed) { Outcome::Ok } else { Outcome::ChecksFailed })
}

/// Default v grid: 64 points on `[0, 2π)`.
pub fn default_v_grid() -> Vec<f64> {
    (0..64).map(|j| TAU * j as f64 / 64.0).collect()
}

/// Row-major grid of positions, `u` outer.
pub fn mesh_points(spec: &SurfaceSpec, us: &[f64], vs: &[f64]) -> CliResult<Vec<(f64, f64, Vec4)>> {
    if !us.iter().any(|&u| spec.validity(u).unwrap_or(false)) {
        return Err(Error::EmptyDomain("no valid point on the u grid".into()).into());
    }
    let mut pts = Vec::with_capacity(us.len() * vs.len());
    for &u in us {
        for &v in vs {
            pts.push((u, v, spec.position(u, v)?));
        }
    }
    Ok(pts)
}

pub fn write_mesh_csv<W: Write>(w: W, pts: &[(f64, f64, Vec4)]) -> CliResult<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(MESH_CSV_HEADER).map_err(Error::from)?;
    for &(u, v, x) in pts {
        wr.write_record([u, v, x.x1, x.x2, x.x3, x.x4].map(num)).map_err(Error::from)?;
    }
    wr.flush()?;
    Ok(())
}

/// Quads `(i, j)…(i+1, j+1)` split along the diagonal; no wrap in `v`.
pub fn write_obj<W: Write>(
    mut w: W,
    pts: &[(f64, f64, Vec4)],
    nu: usize,
    nv: usize,
    projection: Projection,
) -> CliResult<()> {
    let name = projection.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    writeln!(w, "# rotsurf mesh {nu}x{nv} {name}")?;
    for &(_, _, x) in pts {
        let [a, b, c] = projection.apply(x);
        writeln!(w, "v {} {} {}", num(a), num(b), num(c))?;
    }
    let idx = |i: usize, j: usize| i * nv + j + 1;
    for i in 0..nu.saturating_sub(1) {
        for j in 0..nv.saturating_sub(1) {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            writeln!(w, "f {a} {b} {c}")?;
            writeln!(w, "f {a} {c} {d}")?;
        }
    }
    Ok(())
}

pub fn cmd_mesh(a: &MeshArgs) -> CliResult<Outcome> {
    let (spec, us) = resolve_surface(&a.surface)?;
    let vs = a.v_range.map_or_else(default_v_grid, |r| r.points());
    let pts = mesh_points(&spec, &us, &vs)?;
    let mut out = sink(a.out.as_deref())?;
    match a.format {
        Format::Csv => write_mesh_csv(&mut out, &pts)?,
        Format::Obj => write_obj(&mut out, &pts, us.len(), vs.len(), a.projection)?,
        Format::Json => return Err(CliError::Usage("mesh supports --format obj or csv".into())),
    }
    out.flush()?;
    Ok(Outcome::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse_and_reject() {
        let r: GridRange = "0:1:3".parse().unwrap();
        assert_eq!(r.points(), vec![0.0, 0.5, 1.0]);
        let r: GridRange = "-1.5:2e0:2".parse().unwrap();
        assert_eq!((r.start, r.end), (-1.5, 2.0));
        for bad in ["1:0:5", "0:1:1", "0:1", "0:inf:3", "0:1:x", "pi:4:3", "0:1:3:4"] {
            assert!(bad.parse::<GridRange>().is_err(), "{bad}");
        }
    }

    #[test]
    fn plain_numbers_only() {
        assert_eq!(plain_f64("1e-3"), Ok(1e-3));
        assert_eq!(plain_f64("-0.5"), Ok(-0.5));
        for bad in ["nan", "inf", "-infinity", "2*3", "sqrt(2)", ""] {
            assert!(plain_f64(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn default_v_grid_is_half_open() {
        let v = default_v_grid();
        assert_eq!(v.len(), 64);
        assert_eq!(v[0], 0.0);
        assert!(v[63] < TAU);
    }

    #[test]
    fn projections_keep_three_coordinates() {
        let x = Vec4::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(Projection::DropX4.apply(x), [1.0, 2.0, 3.0]);
        assert_eq!(Projection::DropX3.apply(x), [1.0, 2.0, 4.0]);
        assert_eq!(Projection::DropX1.apply(x), [2.0, 3.0, 4.0]);
    }

    #[test]
    fn obj_topology_for_small_grid() {
        let m = Meridian::from_dsl("1", Some("u"), (0.0, 1.0)).unwrap();
        let spec = SurfaceSpec::new(SurfaceType::TypeI, 1.0, 1.0, m).unwrap();
        let us = [0.0, 0.5, 1.0];
        let vs = [0.0, 0.5, 1.0];
        let pts = mesh_points(&spec, &us, &vs).unwrap();
        let mut buf = Vec::new();
        write_obj(&mut buf, &pts, 3, 3, Projection::DropX4).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 9);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 8);
        assert!(text.lines().any(|l| l == "f 1 4 5"));
    }

    #[test]
    fn invalid_rows_have_empty_cells() {
        let s = InvariantSample { u: 0.25, ..Default::default() };
        let row = sample_row(&s);
        assert_eq!(row.len(), INVARIANTS_HEADER.len());
        assert_eq!(row[1], "0");
        assert!(row[2..].iter().all(String::is_empty));
    }

    #[test]
    fn meridian_source_must_be_unique() {
        let cli =
            Cli::try_parse_from(["rotsurf", "invariants", "--f", "1", "--family", "minimal", "--A", "1", "--C", "0"])
                .unwrap();
        let Command::Invariants(a) = cli.command else { unreachable!() };
        assert!(matches!(resolve_surface(&a.surface), Err(CliError::Usage(_))));
    }
}
