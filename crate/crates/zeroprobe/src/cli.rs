//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a negative finding (a `NotPSD` verdict or no
//! witness), 2 unreadable or invalid input, 3 no `NotPSD` verdict but some
//! points inconclusive or none evaluated.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use zeroprobe_core::bounds::{BoundReport, RegionKind};
use zeroprobe_core::hankel::{default_grid, ScanReport, Verdict};
use zeroprobe_core::sine::{witness_search_with, ProbeMode};
use zeroprobe_core::zeros::{spacing_report, validate_conjugate_symmetry};
use zeroprobe_core::zeta::{
    hrrh_default_grid, hrrh_report, lambda_spacing_report, region_curve, to_lambda, CurveKind, TRUNCATION_CAVEAT,
};
use zeroprobe_core::ZeroConfig;

use crate::config::{OutputFormat, Overrides, RunConfig};
use crate::input::{read_grid, read_odlyzko, read_zero_config, write_odlyzko};
use crate::output::{self, Table};
use crate::scan::{par_nlp_scan, with_pool};
use crate::IoError;

/// Conjectured lower bound on consecutive gaps of the squared zeta heights.
pub const GAP_THRESHOLD: f64 = 159.0;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "zeroprobe", version, about = "Hankel and sine probes of genus-one zero sets")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// TOML run configuration
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the report here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Starting precision of the sine probes in bits (at least 53)
    #[arg(long, global = true, value_name = "BITS")]
    pub precision: Option<u32>,
    /// Absolute PSD tolerance (default: scaled to each matrix)
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Pole exclusion factor: grid points within delta*max(1,|x|) of a real zero are skipped
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Interior grid points per gap for automatic grids
    #[arg(long, global = true, value_name = "K")]
    pub per_gap: Option<usize>,
    /// Reserved; no command uses randomness
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

impl GlobalArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            precision_bits: self.precision,
            tolerance: self.tolerance,
            delta_factor: self.delta,
            grid_points_per_gap: self.per_gap,
            output_format: self.format,
            threads: self.threads,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spacing constant c, height b and aperture kappa of a zero file
    Spacing { file: PathBuf },
    /// Hankel PSD verdicts of order N over a grid
    CheckNlp {
        file: PathBuf,
        #[arg(long)]
        order: usize,
        /// Grid file, or `auto`
        #[arg(long, default_value = "auto")]
        grid: String,
    },
    /// Search for a certified negative sine or Taylor probe
    SineWitness {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Taylor order (taylor mode only)
        #[arg(long)]
        order: Option<usize>,
    },
    /// Closed-form bounds
    Bounds(BoundsArgs),
    /// Zeta zero tables
    #[command(subcommand)]
    Zeta(ZetaCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sin,
    Taylor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Thm1,
    Refined,
    Thm2,
    Thm3,
    Corollary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegionArg {
    Hrrh1,
    Hrrhn,
    Ford,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// Aperture (thm2)
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Bisection width (refined)
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Strong-spacing constant C (thm3)
    #[arg(long = "c")]
    pub c: Option<f64>,
    /// Strong-spacing exponent (thm3)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Zero index j (thm3)
    #[arg(long)]
    pub j: Option<usize>,
    /// |Re lambda_floor(j/2)|, or |Re lambda_1| when j = 1 (thm3)
    #[arg(long)]
    pub re_half: Option<f64>,
    /// Region kind (corollary); hrrhn needs --n and --m
    #[arg(long, value_enum, default_value = "hrrh1")]
    pub kind: RegionArg,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum ZetaCommand {
    /// Validate a height table; `--out` writes it back normalised
    Import { file: PathBuf },
    /// Consecutive gaps of the squared heights
    Gaps {
        file: PathBuf,
        /// Use the first L heights (default: all)
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Hankel scan of the squared heights
    Hrrh {
        file: PathBuf,
        #[arg(long)]
        order: usize,
        /// Automatic grid covers the first L heights
        #[arg(long, default_value_t = 100)]
        limit: usize,
        /// Grid file, or `auto`
        #[arg(long, default_value = "auto")]
        grid: String,
        /// Hypothetical off-line zero: K=SIGMA moves zero K to real part SIGMA
        #[arg(long = "override", value_name = "K=SIGMA", value_parser = parse_override)]
        overrides: Vec<(usize, f64)>,
    },
    /// Boundary curves of zero-free regions
    Region {
        #[arg(long, value_enum)]
        kind: RegionArg,
        /// Range LO..HI
        #[arg(long = "t", value_parser = parse_range)]
        t: (f64, f64),
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<f64>,
    },
}

fn parse_override(s: &str) -> Result<(usize, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected K=SIGMA")?;
    Ok((
        k.trim().parse().map_err(|_| format!("bad index {k:?}"))?,
        v.trim().parse().map_err(|_| format!("bad sigma {v:?}"))?,
    ))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once("..").ok_or("expected LO..HI")?;
    Ok((
        a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?,
        b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?,
    ))
}

/// Failure of a command: the message goes to standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

impl From<zeroprobe_core::Error> for Failure {
    fn from(e: zeroprobe_core::Error) -> Self {
        IoError::Core(e).into()
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        IoError::Io(e).into()
    }
}

fn open(path: &Path) -> Result<Box<dyn BufRead>, Failure> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(std::io::stdin())));
    }
    let f = File::open(path).map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })?;
    Ok(Box::new(BufReader::new(f)))
}

fn with_path<T>(path: &Path, r: Result<T, IoError>) -> Result<T, Failure> {
    r.map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })
}

struct Ctx<'a> {
    rc: RunConfig,
    out: Option<&'a Path>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        match self.out {
            Some(p) => std::fs::write(p, text)
                .map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", p.display()) }),
            None => Ok(self.stdout.write_all(text.as_bytes())?),
        }
    }

    fn emit_report(
        &mut self,
        table: impl FnOnce() -> Table,
        json: impl FnOnce() -> serde_json::Value,
    ) -> Result<(), Failure> {
        let text = match self.rc.output_format {
            OutputFormat::Csv => table().to_csv(),
            OutputFormat::Json => output::to_json(&json()),
        };
        self.emit(&text)
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.stderr, "{msg}");
    }

    fn load_zeros(&mut self, path: &Path) -> Result<ZeroConfig, Failure> {
        let cfg = with_path(path, read_zero_config(open(path)?))?;
        if !validate_conjugate_symmetry(&cfg) {
            self.note("warning: zero set is not closed under conjugation");
        }
        Ok(cfg)
    }

    fn grid(&self, spec: &str, auto: impl FnOnce() -> Vec<f64>) -> Result<Vec<f64>, Failure> {
        if spec == "auto" {
            Ok(auto())
        } else {
            let p = Path::new(spec);
            with_path(p, read_grid(open(p)?))
        }
    }

    fn scan(&mut self, config: &ZeroConfig, order: usize, grid: &[f64]) -> Result<ScanReport, Failure> {
        if order == 0 {
            return Err(Failure { code: EXIT_INPUT, message: "--order must be at least 1".into() });
        }
        let opts = self.rc.scan_options();
        Ok(with_pool(self.rc.threads, || par_nlp_scan(config, order, grid, &opts))?)
    }

    fn finish_scan(&mut self, report: &ScanReport, caveats: &[&str]) -> Result<i32, Failure> {
        let json = || {
            let mut v = output::scan_json(report);
            v["caveats"] = serde_json::json!(caveats);
            v
        };
        self.emit_report(|| output::verdict_table(report), json)?;
        if !report.excluded.is_empty() {
            self.note(&format!("{} grid points excluded near real zeros", report.excluded.len()));
        }
        if self.rc.output_format == OutputFormat::Csv {
            for c in caveats {
                self.note(&format!("note: {c}"));
            }
        }
        Ok(scan_exit_code(report))
    }
}

/// Exit code of a scan: 1 on any `NotPSD`, 3 when nothing was decided.
pub fn scan_exit_code(report: &ScanReport) -> i32 {
    if report.any_not_psd() {
        EXIT_FOUND
    } else if report.points.is_empty() || report.count(Verdict::Inconclusive) > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let rc = match RunConfig::load(cli.global.config.as_deref(), &cli.global.overrides()) {
        Ok(rc) => rc,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut ctx = Ctx { rc, out: cli.global.out.as_deref(), stdout, stderr };
    match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            ctx.note(&format!("error: {}", f.message));
            f.code
        }
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<i32, Failure> {
    match cmd {
        Command::Spacing { file } => {
            let cfg = ctx.load_zeros(file)?;
            let r = spacing_report(&cfg);
            if r.coincident_abscissae {
                ctx.note("note: distinct non-conjugate zeros share a real part, so c = 0");
            }
            ctx.emit_report(|| output::spacing_table(&r), || output::spacing_json(&r))?;
            Ok(EXIT_OK)
        }
        Command::CheckNlp { file, order, grid } => {
            let cfg = ctx.load_zeros(file)?;
            let (per_gap, copts) = (ctx.rc.grid_points_per_gap, ctx.rc.coeff_options());
            let grid = ctx.grid(grid, || default_grid(&cfg, per_gap, &copts))?;
            let report = ctx.scan(&cfg, *order, &grid)?;
            ctx.finish_scan(&report, &[])
        }
        Command::SineWitness { file, mode, order } => {
            let cfg = ctx.load_zeros(file)?;
            let (mode, order) = match mode {
                ModeArg::Sin => {
                    if order.is_some() {
                        ctx.note("note: --order is ignored in sin mode");
                    }
                    (ProbeMode::SinSum, None)
                }
                ModeArg::Taylor => {
                    let n = order.unwrap_or(1);
                    if n == 0 {
                        return Err(Failure { code: EXIT_INPUT, message: "--order must be at least 1".into() });
                    }
                    (ProbeMode::TaylorSum, Some(n))
                }
            };
            let opts = ctx.rc.search_options();
            match witness_search_with(&cfg, mode, order, &opts) {
                Some(w) => {
                    ctx.emit(&output::to_json(&output::witness_json(&w)))?;
                    Ok(EXIT_OK)
                }
                None => {
                    ctx.emit("none\n")?;
                    Ok(EXIT_FOUND)
                }
            }
        }
        Command::Bounds(b) => {
            let report = bound_report(b)?;
            ctx.emit_report(|| output::bound_table(&report), || output::bound_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::Zeta(z) => zeta(z, ctx),
    }
}

fn need<T>(v: Option<T>, flag: &str, which: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure { code: EXIT_INPUT, message: format!("--which {which} needs --{flag}") })
}

fn bound_report(b: &BoundsArgs) -> Result<BoundReport, Failure> {
    Ok(match b.which {
        Which::Thm1 => BoundReport::thm1(),
        Which::Refined => BoundReport::refined(b.tol)?,
        Which::Thm2 => BoundReport::thm2(need(b.kappa, "kappa", "thm2")?)?,
        Which::Thm3 => BoundReport::thm3(
            need(b.c, "c", "thm3")?,
            need(b.gamma, "gamma", "thm3")?,
            need(b.j, "j", "thm3")?,
            need(b.re_half, "re-half", "thm3")?,
        )?,
        Which::Corollary => BoundReport::corollary(match b.kind {
            RegionArg::Hrrh1 => RegionKind::Hrrh1,
            RegionArg::Hrrhn => RegionKind::HrrhN { n: need(b.n, "n", "corollary --kind hrrhn")?, m: b.m },
            RegionArg::Ford => {
                return Err(Failure { code: EXIT_INPUT, message: "the Ford curve has no corollary bound".into() })
            }
        })?,
    })
}

fn zeta(cmd: &ZetaCommand, ctx: &mut Ctx) -> Result<i32, Failure> {
    let load = |file: &Path| with_path(file, read_odlyzko(open(file)?, &file.display().to_string()));
    match cmd {
        ZetaCommand::Import { file } => {
            let table = load(file)?;
            ctx.note(&format!("{} heights", table.len()));
            let mut text = Vec::new();
            write_odlyzko(&mut text, &table)?;
            ctx.emit(std::str::from_utf8(&text).expect("decimal text"))?;
            Ok(EXIT_OK)
        }
        ZetaCommand::Gaps { file, limit } => {
            let table = load(file)?;
            let lc = to_lambda(&table, &BTreeMap::new())?;
            let s = lambda_spacing_report(&lc, limit.unwrap_or(lc.len()))?;
            let pass = s.min_gap > GAP_THRESHOLD;
            let min = s.min_gap_exact.as_ref().map_or_else(|| output::g17(s.min_gap), ToString::to_string);
            ctx.note(&format!(
                "minimal gap {min} at j = {} over {} heights: {} (threshold {GAP_THRESHOLD})",
                s.argmin,
                s.gaps.len() + 1,
                if pass { "PASS" } else { "FAIL" }
            ));
            ctx.emit_report(|| output::gap_table(&s), || output::gap_json(&s, GAP_THRESHOLD, &[TRUNCATION_CAVEAT]))?;
            Ok(EXIT_OK)
        }
        ZetaCommand::Hrrh { file, order, limit, grid, overrides } => {
            let table = load(file)?;
            let lc = to_lambda(&table, &overrides.iter().copied().collect())?;
            let per_gap = ctx.rc.grid_points_per_gap;
            let grid = ctx.grid(grid, || hrrh_default_grid(&lc, *limit, per_gap))?;
            let scan = ctx.scan(lc.config(), *order, &grid)?;
            let report = hrrh_report(&lc, scan);
            ctx.finish_scan(&report.scan, &report.caveats)
        }
        ZetaCommand::Region { kind, t, samples, n, m } => {
            let curve = match kind {
                RegionArg::Hrrh1 => CurveKind::Hrrh1,
                RegionArg::Hrrhn => CurveKind::HrrhN {
                    n: n.ok_or_else(|| Failure { code: EXIT_INPUT, message: "--kind hrrhn needs --n".into() })?,
                    m: *m,
                },
                RegionArg::Ford => CurveKind::Ford,
            };
            let pts = region_curve(curve, t.0, t.1, *samples)?;
            let name = kind.to_possible_value().expect("named variant").get_name().to_string();
            ctx.emit_report(|| output::curve_table(&pts), || output::curve_json(&name, &pts))?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("zeroprobe").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn bounds_commands() {
        let (code, out, _) = run_str(&["bounds", "--which", "thm1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("name,inputs,value,notes\nthm1,,0.55132889542179"), "{out}");
        let (code, out, _) = run_str(&["bounds", "--which", "thm2", "--kappa", "1", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"].as_f64().unwrap() - 43393.52543943716).abs() < 1e-6);
        assert_eq!(run_str(&["bounds", "--which", "thm2"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["bounds", "--which", "thm2", "--kappa", "-1"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["bounds", "--which", "nope"]).0, EXIT_INPUT);
    }

    #[test]
    fn region_command() {
        let (code, out, _) = run_str(&["zeta", "region", "--kind", "hrrh1", "--t", "100..200", "--samples", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().nth(1).unwrap(), "100.00000000000000,0.93830647186032468");
        assert_eq!(run_str(&["zeta", "region", "--kind", "ford", "--t", "1..10"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["zeta", "region", "--kind", "hrrhn", "--t", "10..20", "--n", "6"]).0, EXIT_INPUT);
    }

    #[test]
    fn overrides_and_ranges_parse() {
        assert_eq!(parse_override("3=0.6"), Ok((3, 0.6)));
        assert!(parse_override("3").is_err());
        assert_eq!(parse_range("10..500"), Ok((10.0, 500.0)));
        assert!(parse_range("10-500").is_err());
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("check-nlp"));
    }
}
