//! Command-line front end. [`execute`] does the work and returns captured
//! output, [`parse_and_dispatch`] prints it and returns the exit status.

pub mod mapspec;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harmonic_atlas::harmonic::{harmonic_koebe_exact, HarmonicMap};
use harmonic_atlas::harness::{run_suite, CheckRecord, ConstantTable, Overrides, QuadratureSpec, Suite, SuiteConfig};
use harmonic_atlas::metrics::{distortion_checks, spherical_area, BoundaryCurve, Normalization};
use harmonic_atlas::modular_q::q_coefficients;
use harmonic_atlas::quadrature::{DiskQuadrature, NodeCounts};
use harmonic_atlas::subordination::{missed_disk_a2_bound, ps_search, MissedDiskDatum};
use harmonic_atlas::{Complex64, VerificationReport};
use serde::{Deserialize, Serialize};

pub use mapspec::MapSpec;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "HARMONIC_ATLAS_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "harmonic-atlas", version, about = "Coefficient bounds, areas and distortion estimates for planar harmonic maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Inline map, `kind:key=value;...` with kind one of identity,
    /// koebe-harmonic, shear, q-subordinate, polynomial.
    #[arg(long, conflicts_with = "spec_file", required_unless_present = "spec_file")]
    pub map: Option<String>,
    /// JSON map specification (same keys as --map plus a "kind" tag).
    #[arg(long)]
    pub spec_file: Option<PathBuf>,
}

impl MapArgs {
    fn resolve(&self) -> Result<MapSpec, CliError> {
        match (&self.map, &self.spec_file) {
            (Some(m), _) => m.parse::<MapSpec>().map_err(CliError::Data),
            (None, Some(p)) => read_spec(p),
            (None, None) => Err(CliError::Usage("--map or --spec-file is required".into())),
        }
    }
}

fn read_spec(p: &PathBuf) -> Result<MapSpec, CliError> {
    let text = std::fs::read_to_string(p).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))
}

fn complex_arg(s: &str) -> Result<Complex64, String> {
    mapspec::parse_complex(s)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact coefficients A_n of Q with first and second differences.
    QCoeffs {
        /// Number of coefficients.
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact coefficient table of the harmonic Koebe map.
    Koebe {
        /// Number of coefficients.
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Shear construction h - g = F, g' = phi h'.
    Shear {
        /// Dilatation coefficients c_0, c_1, ... (comma separated).
        #[arg(long, required_unless_present = "spec_file")]
        phi: Option<String>,
        /// Coefficients of F from z^1 (comma separated).
        #[arg(long = "F", required_unless_present = "spec_file")]
        big_f: Option<String>,
        /// Truncation order.
        #[arg(long, default_value_t = mapspec::DEFAULT_ORDER)]
        order: usize,
        /// JSON map specification of kind "shear".
        #[arg(long, conflicts_with_all = ["phi", "big_f"])]
        spec_file: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Random search for the maximum of |β₃ + μβ₁β₂ + νβ₁³|.
    PsSearch {
        /// Parameter μ.
        #[arg(long, default_value_t = 16.0, allow_negative_numbers = true)]
        mu: f64,
        /// Parameter ν.
        #[arg(long, default_value_t = 44.0, allow_negative_numbers = true)]
        nu: f64,
        /// Number of Schwarz candidates.
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        /// RNG seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bound on |a₂| for a map omitting the disk |w - c| < r.
    A2Bound {
        /// Disk center, `re,im`.
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        c: Complex64,
        /// Disk radius, 0 < r ≤ |c|.
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spherical area of a map over |z| ≤ rho.
    Area {
        #[command(flatten)]
        map: MapArgs,
        /// Outer radius of the quadrature disk.
        #[arg(long, default_value_t = 0.999)]
        rho: f64,
        /// Node counts, RADIALxANGULAR.
        #[arg(long, default_value = "512x512")]
        nodes: NodeCounts,
        /// Spherical metric normalization.
        #[arg(long, default_value = "paper-literal", value_parser = parse_normalization)]
        normalization: Normalization,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distortion and boundary-distance inequalities at one point.
    Distortion {
        #[command(flatten)]
        map: MapArgs,
        /// Point in the disk, `re,im`.
        #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
        z: Complex64,
        /// Dilation radius: the map is replaced by f(ρz)/ρ so its boundary is sampled on the unit circle.
        #[arg(long, default_value_t = 0.9)]
        rho: f64,
        /// Boundary samples on the unit circle.
        #[arg(long, default_value_t = 4096)]
        boundary_samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run verification suites and emit a report.
    Verify {
        /// Suite to run.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// RNG seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Samples per randomized check.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Series truncation order.
        #[arg(long, default_value_t = 30)]
        order: usize,
        /// Quadrature node counts, RADIALxANGULAR.
        #[arg(long, default_value = "128x128")]
        nodes: NodeCounts,
        /// Spherical metric normalization.
        #[arg(long, default_value = "paper-literal", value_parser = parse_normalization)]
        normalization: Normalization,
        /// Replace a printed constant, NAME=VALUE (repeatable).
        #[arg(long = "override-constant", value_name = "NAME=VALUE")]
        override_constant: Vec<String>,
        /// Replace one coefficient of the Q table, N=VALUE (repeatable).
        #[arg(long = "override-q", value_name = "N=VALUE")]
        override_q: Vec<String>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_normalization(s: &str) -> Result<Normalization, String> {
    s.parse::<Normalization>().map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Data(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Usage(m) | Self::Data(m) => m,
        }
    }
}

fn data<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QRow {
    pub n: usize,
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KoebeRow {
    pub n: usize,
    pub a: String,
    pub b: String,
    pub a_value: f64,
    pub b_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct A2BoundOutput {
    pub c: Complex64,
    pub r: f64,
    pub alpha: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionOutput {
    pub z: Complex64,
    pub rho: f64,
    pub checks: Vec<VerificationReport>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn reports_csv<'a>(rows: impl Iterator<Item = &'a CheckRecord>) -> String {
    let mut out = String::from("check_name,status,computed,bound,margin,tolerance,provenance\n");
    for r in rows {
        match r {
            CheckRecord::Checked(v) => {
                let status = if v.passed { "passed" } else { "failed" };
                let _ = writeln!(
                    out,
                    "{},{status},{},{},{},{},{}",
                    csv_field(&v.check_name),
                    v.computed,
                    v.bound,
                    v.margin,
                    v.tolerance,
                    csv_field(&v.provenance)
                );
            }
            CheckRecord::Skipped(s) => {
                let _ = writeln!(out, "{},skipped,,,,,{}", csv_field(&s.check_name), csv_field(&s.provenance));
            }
        }
    }
    out
}

fn map_csv(f: &HarmonicMap) -> String {
    let mut out = String::from("index,h_re,h_im,g_re,g_im\n");
    for (k, (a, b)) in f.h().coeffs().iter().zip(f.g().coeffs()).enumerate() {
        let _ = writeln!(out, "{k},{},{},{},{}", a.re, a.im, b.re, b.im);
    }
    out
}

fn dilated_boundaries(f: &HarmonicMap, samples: usize) -> Result<(BoundaryCurve, BoundaryCurve), CliError> {
    let omega = BoundaryCurve::image_of_map(f, 1.0, samples).map_err(data)?;
    let d = BoundaryCurve::image_of_series(f.h(), 1.0, samples)
        .and_then(|c| c.outer_boundary())
        .map_err(data)?;
    Ok((omega, d))
}

fn run(cli: Cli, out: &mut Outcome) -> Result<(), CliError> {
    match cli.command {
        Command::QCoeffs { order, output } => {
            if order == 0 {
                return Err(CliError::Usage("--order must be ≥ 1".into()));
            }
            let q = q_coefficients(order);
            let (b, c) = (q.first_differences(), q.second_differences());
            let rows: Vec<QRow> = (0..order)
                .map(|i| QRow {
                    n: i + 1,
                    a: q.coeffs()[i].to_string(),
                    b: b[i].to_string(),
                    c: c[i].to_string(),
                })
                .collect();
            out.stdout = match output.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut s = String::from("n,A_n,B_n,C_n\n");
                    for r in &rows {
                        let _ = writeln!(s, "{},{},{},{}", r.n, r.a, r.b, r.c);
                    }
                    s
                }
            };
        }
        Command::Koebe { order, output } => {
            if order == 0 {
                return Err(CliError::Usage("--order must be ≥ 1".into()));
            }
            let k = harmonic_koebe_exact(order);
            let rows: Vec<KoebeRow> = (1..=order)
                .map(|n| KoebeRow {
                    n,
                    a: k.a[n].to_string(),
                    b: k.b[n].to_string(),
                    a_value: *k.a[n].numer() as f64 / *k.a[n].denom() as f64,
                    b_value: *k.b[n].numer() as f64 / *k.b[n].denom() as f64,
                })
                .collect();
            out.stdout = match output.format {
                Format::Json => to_json(&rows),
                Format::Csv => {
                    let mut s = String::from("n,a_n,b_n\n");
                    for r in &rows {
                        let _ = writeln!(s, "{},{},{}", r.n, r.a, r.b);
                    }
                    s
                }
            };
        }
        Command::Shear {
            phi,
            big_f,
            order,
            spec_file,
            output,
        } => {
            let spec = match (spec_file, phi, big_f) {
                (Some(p), _, _) => read_spec(&p)?,
                (None, Some(phi), Some(f)) => MapSpec::Shear {
                    phi: mapspec::parse_list(&phi).map_err(CliError::Data)?,
                    big_f: mapspec::parse_list(&f).map_err(CliError::Data)?,
                    order,
                },
                _ => return Err(CliError::Usage("--phi and --F, or --spec-file, are required".into())),
            };
            if !matches!(spec, MapSpec::Shear { .. }) {
                return Err(CliError::Data("spec file must have kind \"shear\"".into()));
            }
            let f = spec.build().map_err(CliError::Data)?;
            out.stdout = match output.format {
                Format::Json => to_json(&f),
                Format::Csv => map_csv(&f),
            };
        }
        Command::PsSearch {
            mu,
            nu,
            trials,
            seed,
            output,
        } => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be ≥ 1".into()));
            }
            let r = ps_search(mu, nu, trials, seed);
            out.stdout = match output.format {
                Format::Json => to_json(&r),
                Format::Csv => format!(
                    "mu,nu,trials,seed,max,argmax_index,in_region\n{},{},{},{},{},{},{}\n",
                    r.mu, r.nu, r.trials, r.seed, r.max, r.argmax_index, r.in_region
                ),
            };
        }
        Command::A2Bound { c, r, output } => {
            let d = MissedDiskDatum::new(c, r, None).map_err(data)?;
            let o = A2BoundOutput {
                c,
                r,
                alpha: 2.0 * (c.norm() / r).ln(),
                bound: missed_disk_a2_bound(&d),
            };
            out.stdout = match output.format {
                Format::Json => to_json(&o),
                Format::Csv => format!("c_re,c_im,r,alpha,bound\n{},{},{},{},{}\n", c.re, c.im, r, o.alpha, o.bound),
            };
        }
        Command::Area {
            map,
            rho,
            nodes,
            normalization,
            output,
        } => {
            let f = map.resolve()?.build().map_err(CliError::Data)?;
            let q = DiskQuadrature::new(rho, nodes.radial, nodes.angular).map_err(data)?;
            let a = spherical_area(&f, &q, normalization).map_err(data)?;
            out.stdout = match output.format {
                Format::Json => to_json(&a),
                Format::Csv => format!(
                    "value,rho_max,nodes,estimated_error,normalization\n{},{},{},{},{}\n",
                    a.value, a.rho_max, a.nodes, a.estimated_error, a.normalization
                ),
            };
        }
        Command::Distortion {
            map,
            z,
            rho,
            boundary_samples,
            output,
        } => {
            if !(rho > 0.0 && rho <= 1.0) {
                return Err(CliError::Usage("--rho must lie in (0, 1]".into()));
            }
            if z.norm() >= 1.0 {
                return Err(CliError::Data(format!("z = {z} is not in the unit disk")));
            }
            if boundary_samples < 3 {
                return Err(CliError::Usage("--boundary-samples must be ≥ 3".into()));
            }
            let f = map.resolve()?.build().map_err(CliError::Data)?.dilate(rho);
            let (omega, d) = dilated_boundaries(&f, boundary_samples)?;
            let checks = distortion_checks(&f, z, &omega, &d).map_err(data)?;
            let o = DistortionOutput { z, rho, checks };
            out.stdout = match output.format {
                Format::Json => to_json(&o),
                Format::Csv => reports_csv(o.checks.iter().cloned().map(CheckRecord::Checked).collect::<Vec<_>>().iter()),
            };
            if o.checks.iter().any(|c| !c.passed) {
                out.code = EXIT_FAILURE;
            }
        }
        Command::Verify {
            suite,
            seed,
            trials,
            order,
            nodes,
            normalization,
            override_constant,
            override_q,
            out: out_path,
            output,
        } => {
            let cfg = SuiteConfig {
                seed,
                trials,
                series_order: order,
                quadrature: QuadratureSpec {
                    radial: nodes.radial,
                    angular: nodes.angular,
                    ..SuiteConfig::default().quadrature
                },
                normalization,
                ..SuiteConfig::default()
            };
            let overrides = overrides(&override_constant, &override_q, order)?;
            let doc = run_suite(&cfg, suite, &overrides).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = match output.format {
                Format::Json => to_json(&doc),
                Format::Csv => reports_csv(doc.checks.iter()),
            };
            let summary = format!(
                "{} passed, {} failed, {} skipped\n",
                doc.summary.passed, doc.summary.failed, doc.summary.skipped
            );
            match out_path {
                Some(p) => {
                    std::fs::write(&p, text).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
                    out.stdout = summary;
                }
                None => {
                    out.stdout = text;
                    out.stderr.push_str(&summary);
                }
            }
            for f in doc.failures() {
                let _ = writeln!(out.stderr, "FAILED {}: computed {} bound {} margin {}", f.check_name, f.computed, f.bound, f.margin);
            }
            if !doc.all_passed() {
                out.code = EXIT_FAILURE;
            }
        }
    }
    Ok(())
}

fn split_assignment(s: &str) -> Result<(&str, f64), CliError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected NAME=VALUE, got {s:?}")))?;
    let v = v
        .trim()
        .parse::<f64>()
        .map_err(|e| CliError::Usage(format!("bad value in {s:?}: {e}")))?;
    Ok((k.trim(), v))
}

fn overrides(constants: &[String], q: &[String], order: usize) -> Result<Overrides, CliError> {
    let mut table = ConstantTable::default();
    for s in constants {
        let (k, v) = split_assignment(s)?;
        table.set(k, v).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let mut q_table = None;
    for s in q {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected N=VALUE, got {s:?}")))?;
        let n: usize = k.trim().parse().map_err(|e| CliError::Usage(format!("bad index in {s:?}: {e}")))?;
        let v: i64 = v.trim().parse().map_err(|e| CliError::Usage(format!("bad value in {s:?}: {e}")))?;
        if n == 0 || n > order {
            return Err(CliError::Usage(format!("Q index {n} outside 1..={order}")));
        }
        let base = q_table.take().unwrap_or_else(|| q_coefficients(order));
        q_table = Some(base.with_coefficient(n, v.into()));
    }
    Ok(Overrides {
        constants: table,
        q_table,
    })
}

fn configure_threads(out: &mut Outcome) {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                // a second call in the same process keeps the first pool
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                let _ = writeln!(out.stderr, "ignoring {THREADS_ENV}={v:?}: expected a positive integer");
            }
        }
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Outcome::default();
    configure_threads(&mut out);
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                out.stderr.push_str(&text);
                out.code = EXIT_USAGE;
            } else {
                out.stdout = text;
            }
            return out;
        }
    };
    if let Err(e) = run(cli, &mut out) {
        let _ = writeln!(out.stderr, "error: {}", e.message());
        out.code = e.code();
    }
    out
}

pub fn parse_and_dispatch<T: AsRef<str>>(argv: &[T]) -> i32 {
    let out = execute(argv.iter().map(|s| s.as_ref().to_owned()));
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
