//! Command-line front end: every table and figure from one configuration.

// `!(x > 0.0)` style checks reject NaN on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use eigenflow_core::spectra::SequenceFamily;
use eigenflow_core::Complex64;

use crate::commands::Kind;
pub use crate::config::{load_config, ConfigError, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Worker-thread cap; 0 or unset means one per core.
pub const THREADS_ENV: &str = "EIGENFLOW_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "eigenflow",
    version,
    about = "Reciprocal eigensets, tables and homotopy figures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: ConfigArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the eigenset as CSV.
    Eigens {
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unit-circle table, modulus bins, fits and density probe.
    Stats,
    /// Classification table.
    Classify,
    /// Coefficient table, modulus partition and series homotopy snapshots.
    Jungreis,
    /// Snapshot series for the chosen deformations.
    Homotopy {
        /// Comma-separated kinds; all when omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        kind: Vec<Kind>,
    },
    /// Escape-time raster and eigenset overlays.
    Render,
    /// Every artifact plus structural self-checks.
    ReproduceAll,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE or RE,IM, got {s:?}")),
    }
}

/// One flag per configuration key; a flag beats the config file.
#[derive(Args, Debug, Default)]
struct ConfigArgs {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    family: Option<SequenceFamily>,
    #[arg(long, global = true)]
    n_max: Option<usize>,
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true)]
    eps_ring: Option<f64>,
    #[arg(long, global = true, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, global = true, value_delimiter = ',')]
    bin_sizes: Option<Vec<usize>>,
    #[arg(long, global = true)]
    bin_start: Option<f64>,
    #[arg(long, global = true)]
    bin_width: Option<f64>,
    #[arg(long, global = true)]
    bin_count: Option<usize>,
    #[arg(long, global = true)]
    arg_tol: Option<f64>,
    #[arg(long, global = true)]
    denominator_cap: Option<u32>,
    /// Tuning base point, `RE,IM`.
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    c0: Option<Complex64>,
    /// Tuning target, `RE,IM`.
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    c_prime: Option<Complex64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    tuning_scale: Option<f64>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    rotation_center: Option<Complex64>,
    /// Radians.
    #[arg(long, global = true, allow_hyphen_values = true)]
    rotation: Option<f64>,
    #[arg(long, global = true)]
    s_start: Option<f64>,
    #[arg(long, global = true)]
    s_end: Option<f64>,
    /// `false` drops the translation to the rotation centre.
    #[arg(long, global = true)]
    translate: Option<bool>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    bulb_center: Option<Complex64>,
    #[arg(long, global = true)]
    r0: Option<f64>,
    #[arg(long, global = true)]
    r1: Option<f64>,
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    linear_target: Option<Complex64>,
    #[arg(long, global = true)]
    jungreis_terms: Option<usize>,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
    #[arg(long, global = true)]
    max_iter: Option<u32>,
    #[arg(long, global = true)]
    escape_radius: Option<f64>,
    #[arg(long, global = true)]
    width_px: Option<u32>,
    #[arg(long, global = true)]
    height_px: Option<u32>,
    #[arg(long, global = true)]
    figure_n: Option<usize>,
    #[arg(long, global = true)]
    marker_radius: Option<f64>,
    #[arg(long, global = true)]
    marker_fill: Option<String>,
    #[arg(long, global = true)]
    marker_opacity: Option<f64>,
    #[arg(long, global = true)]
    density_angles: Option<usize>,
}

macro_rules! overlay {
    ($($flag:expr => $field:expr),* $(,)?) => {
        $(if let Some(v) = $flag { $field = v; })*
    };
}

impl ConfigArgs {
    fn apply(self, c: &mut RunConfig) {
        overlay! {
            self.family => c.family,
            self.n_max => c.n_max,
            self.tolerance => c.tolerance,
            self.eps_ring => c.eps_ring,
            self.bin_start => c.bin_start,
            self.bin_width => c.bin_width,
            self.bin_count => c.bin_count,
            self.arg_tol => c.thresholds.arg_tol,
            self.denominator_cap => c.thresholds.denominator_cap,
            self.c0 => c.tuning.c0,
            self.c_prime => c.tuning.c_prime,
            self.tuning_scale => c.tuning.scale,
            self.rotation_center => c.rotated_cardioid.center,
            self.rotation => c.rotated_cardioid.rotation,
            self.s_start => c.rotated_cardioid.s_start,
            self.s_end => c.rotated_cardioid.s_end,
            self.translate => c.rotated_cardioid.translate,
            self.bulb_center => c.radial_bulb.center,
            self.r0 => c.radial_bulb.r0,
            self.r1 => c.radial_bulb.r1,
            self.linear_target => c.linear_target,
            self.jungreis_terms => c.jungreis_terms,
            self.out_dir => c.out_dir,
            self.t_grid => c.t_grid,
            self.max_iter => c.max_iter,
            self.escape_radius => c.escape_radius,
            self.width_px => c.width_px,
            self.height_px => c.height_px,
            self.figure_n => c.figure_n,
            self.marker_radius => c.marker.radius,
            self.marker_fill => c.marker.fill,
            self.marker_opacity => c.marker.opacity,
            self.density_angles => c.density_angles,
        }
        if self.sizes.is_some() {
            c.sizes = self.sizes;
        }
        if self.bin_sizes.is_some() {
            c.bin_sizes = self.bin_sizes;
        }
    }
}

/// Config file first, then flags.
fn resolve(mut opts: ConfigArgs) -> Result<RunConfig, ConfigError> {
    let mut cfg = match opts.config.take() {
        Some(path) => load_config(&path)?,
        None => RunConfig::default(),
    };
    opts.apply(&mut cfg);
    Ok(cfg)
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())
}

/// Parses `argv` (program name first) and runs the subcommand.
/// Returns 0 on success, 1 on validation or computation failure, 2 on usage errors.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match resolve(cli.opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let min = cfg.family.min_degree();
    if cfg.n_max < min {
        eprintln!(
            "error: --n-max must be at least {min} for the {} family, got {}\n\n\
             Usage: eigenflow <COMMAND> --n-max <N_MAX> [OPTIONS]",
            cfg.family, cfg.n_max
        );
        return EXIT_USAGE;
    }
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return EXIT_FAILURE;
    }
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(cli.command, &cfg)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn execute(cmd: Command, cfg: &RunConfig) -> eigenflow_core::Result<i32> {
    use commands as c;
    if let Command::ReproduceAll = cmd {
        let checks = c::reproduce_all(cfg)?;
        let failed: Vec<_> = checks.iter().filter(|k| !k.pass).collect();
        for f in &failed {
            eprintln!("check failed: {} ({})", f.name, f.detail);
        }
        return Ok(if failed.is_empty() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        });
    }
    let es = c::eigenset(cfg)?;
    if let Command::Eigens { out } = &cmd {
        c::eigens(&es, out.as_deref())?;
        return Ok(EXIT_OK);
    }
    let dir = c::prepare_out_dir(cfg)?;
    let mut rasters = c::RasterCache::default();
    match cmd {
        Command::Stats => {
            c::stats(cfg, &es, &dir)?;
        }
        Command::Classify => {
            c::classify(cfg, &es, &dir)?;
        }
        Command::Jungreis => {
            c::jungreis(cfg, &es, &dir, &mut rasters)?;
        }
        Command::Homotopy { kind } => {
            let kinds = if kind.is_empty() {
                Kind::ALL.to_vec()
            } else {
                kind
            };
            c::homotopy(cfg, &es, &kinds, &dir, &mut rasters)?;
        }
        Command::Render => {
            c::render(cfg, &es, &dir, &mut rasters)?;
        }
        Command::Eigens { .. } | Command::ReproduceAll => unreachable!("handled above"),
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("eigenflow").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn complex_flags() {
        assert_eq!(
            parse_complex("-0.1575,1.0325").unwrap(),
            Complex64::new(-0.1575, 1.0325)
        );
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
        let cli = parse(&["render", "--c-prime", "-0.1,0.2", "--rotation", "-0.5"]);
        assert_eq!(cli.opts.c_prime, Some(Complex64::new(-0.1, 0.2)));
        assert_eq!(cli.opts.rotation, Some(-0.5));
    }

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"eps_ring": 0.02, "n_max": 30}"#).unwrap();
        let p = path.to_str().unwrap();
        let cfg = resolve(parse(&["stats", "--config", p, "--eps-ring", "0.01"]).opts).unwrap();
        assert_eq!(cfg.eps_ring, 0.01);
        assert_eq!(cfg.n_max, 30);
        let cfg = resolve(parse(&["stats", "--config", p]).opts).unwrap();
        assert_eq!(cfg.eps_ring, 0.02);
    }

    #[test]
    fn malformed_config_reports_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{\n  \"n_max\": ,\n}").unwrap();
        let err = load_config(&path).unwrap_err();
        match err {
            ConfigError::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("{other}"),
        }
        let code = run(["eigenflow", "stats", "--config", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(
            run([
                "eigenflow",
                "eigens",
                "--family",
                "fibonacci",
                "--n-max",
                "1"
            ]),
            EXIT_USAGE
        );
        assert_eq!(run(["eigenflow", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["eigenflow", "eigens", "--bogus"]), EXIT_USAGE);
        assert_eq!(
            run([
                "eigenflow",
                "eigens",
                "--family",
                "narayana",
                "--n-max",
                "2"
            ]),
            EXIT_USAGE
        );
        assert_eq!(run(["eigenflow", "--help"]), EXIT_OK);
    }

    #[test]
    fn validation_failure_is_exit_one() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        assert_eq!(
            run([
                "eigenflow",
                "stats",
                "--n-max",
                "20",
                "--sizes",
                "30",
                "--out-dir",
                out
            ]),
            EXIT_FAILURE
        );
        assert_eq!(
            run([
                "eigenflow",
                "homotopy",
                "--n-max",
                "5",
                "--t-grid",
                "0,1.5",
                "--out-dir",
                out
            ]),
            EXIT_FAILURE
        );
    }
}
