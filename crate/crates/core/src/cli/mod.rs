//! The `ncbound` command line: `sweep`, `figure` and `check`.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 numerical failure,
//! 3 oracle failure.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::Result;
use crate::oracle::{self, CheckOptions};
use crate::sweep::{self, Figure, FigureOverrides};

pub use config::RunConfig;
use output::{PlotKind, PlotPanel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

/// Largest field change tolerated by `--verify-dim`.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "ncbound", version, about = "Uncertainty bounds on non-commutative phase space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one θ sweep described by a config file and write its CSV.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        theta_steps: Option<usize>,
        /// Override a config key, e.g. `--set lambda=0.2`. Repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Fail with exit 2 unless doubling the truncation changes no field
        /// by more than 1e-8.
        #[arg(long)]
        verify_dim: bool,
    },
    /// Write the CSVs and gnuplot script behind one figure (fig1..fig5).
    Figure {
        id: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        theta_steps: Option<usize>,
    },
    /// Run the oracle suite and print one line per check.
    Check {
        #[arg(long, default_value_t = crate::hilbert::DEFAULT_DIM)]
        dim: usize,
        /// Random instances for the brute-force comparison.
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Print failing checks and the summary only.
        #[arg(short, long)]
        quiet: bool,
        /// Build the linear model with λ negated (negative control).
        #[arg(long, hide = true)]
        inject_lambda_sign_flip: bool,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Sweep { config, theta_steps, set, verify_dim } => {
            let mut overrides = set;
            if let Some(n) = theta_steps {
                overrides.push(format!("theta_steps={n}"));
            }
            cmd_sweep(&config, &overrides, verify_dim)
        }
        Command::Figure { id, out_dir, dim, theta_steps } => {
            let mut o = FigureOverrides::default();
            o.dim = dim.unwrap_or(o.dim);
            o.theta_steps = theta_steps.unwrap_or(o.theta_steps);
            cmd_figure(&id, &out_dir, &o)
        }
        Command::Check { dim, instances, quiet, inject_lambda_sign_flip } => {
            let opts = CheckOptions {
                dim,
                instances,
                seed: oracle::seed_from_env(),
                flip_lambda_sign: inject_lambda_sign_flip,
                ..CheckOptions::default()
            };
            cmd_check(&opts, quiet)
        }
    }
}

fn fail(code: i32, e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    code
}

pub fn cmd_sweep(config_path: &Path, overrides: &[String], verify_dim: bool) -> i32 {
    let mut cfg = match RunConfig::from_file(config_path) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    if let Err(e) = cfg.apply_overrides(overrides.iter().map(String::as_str)) {
        return fail(EXIT_CONFIG, e);
    }
    if verify_dim {
        match sweep::convergence_deviation(&cfg.sweep) {
            Ok(dev) if dev <= CONVERGENCE_TOLERANCE => {
                eprintln!("dim {} -> {}: max field change {dev:.3e}", cfg.sweep.dim, 2 * cfg.sweep.dim)
            }
            Ok(dev) => {
                return fail(
                    EXIT_NUMERICAL,
                    format!(
                        "not converged: dim {} -> {} changes a field by {dev:.3e} (> {CONVERGENCE_TOLERANCE:e})",
                        cfg.sweep.dim,
                        2 * cfg.sweep.dim
                    ),
                )
            }
            Err(e) => return fail(EXIT_NUMERICAL, e),
        }
    }
    let result = match sweep::run_sweep(&cfg.sweep) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    if let Some((theta, _)) = result.points.iter().find(|(_, r)| r.var_a.is_nan()) {
        return fail(EXIT_NUMERICAL, format!("bounds could not be evaluated at theta = {theta}"));
    }
    if let Err(e) = output::write_csv(&cfg.out_csv, &result) {
        return fail(EXIT_CONFIG, e);
    }
    if let Some(plot) = &cfg.out_plot {
        let csv = output::relative_to_script(plot, &cfg.out_csv);
        let csv = csv.to_string_lossy();
        let image = plot.with_extension("png");
        let image = image.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let title = format!("{} model, pair {}", cfg.sweep.model, cfg.sweep.pair);
        let panels = [
            PlotPanel { title: title.clone(), kind: PlotKind::Product, files: vec![(&csv, String::new())] },
            PlotPanel { title, kind: PlotKind::Sum, files: vec![(&csv, String::new())] },
        ];
        if let Err(e) = output::write_atomic(plot, output::gnuplot_script(&image, &panels).as_bytes()) {
            return fail(EXIT_CONFIG, e);
        }
    }
    println!("wrote {} ({} rows)", cfg.out_csv.display(), result.points.len());
    EXIT_OK
}

pub fn cmd_figure(id: &str, out_dir: &Path, overrides: &FigureOverrides) -> i32 {
    let figure: Figure = match id.parse() {
        Ok(f) => f,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    match write_figure(figure, out_dir, overrides) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            EXIT_OK
        }
        Err(e) => fail(EXIT_CONFIG, e),
    }
}

/// Writes one CSV per sweep behind `figure` plus `<id>.gp` into `out_dir`
/// and returns the paths written.
pub fn write_figure(figure: Figure, out_dir: &Path, overrides: &FigureOverrides) -> Result<Vec<PathBuf>> {
    let datasets = sweep::figure_dataset(figure, overrides)?;
    let mut written = Vec::new();
    let mut files = Vec::new();
    for (name, result) in &datasets {
        let file = format!("{name}.csv");
        let path = out_dir.join(&file);
        output::write_csv(&path, result)?;
        written.push(path);
        files.push((file, result));
    }
    let panels: Vec<PlotPanel<'_>> = match figure {
        Figure::Fig2 => {
            let series = files
                .iter()
                .map(|(f, r)| (f.as_str(), format!("(lambda={}, gamma={})", r.config.linear.lambda, r.config.linear.gamma)))
                .collect::<Vec<_>>();
            vec![PlotPanel { title: "linear model, X1 and P1".into(), kind: PlotKind::Comparison, files: series }]
        }
        _ => {
            let kind = if figure.is_product() { PlotKind::Product } else { PlotKind::Sum };
            let (file, result) = &files[0];
            vec![PlotPanel {
                title: format!("{} model, X1 and P1", result.config.model),
                kind,
                files: vec![(file.as_str(), String::new())],
            }]
        }
    };
    let script = output::gnuplot_script(&format!("{}.png", figure.id()), &panels);
    let script_path = out_dir.join(format!("{}.gp", figure.id()));
    output::write_atomic(&script_path, script.as_bytes())?;
    written.push(script_path);
    Ok(written)
}

pub fn cmd_check(opts: &CheckOptions, quiet: bool) -> i32 {
    let reports = match oracle::run_checks(opts) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_ORACLE, e),
    };
    let failures = reports.iter().filter(|r| !r.informational && !r.pass).count();
    for r in &reports {
        if !quiet || (!r.informational && !r.pass) {
            println!("{r}");
        }
    }
    let gated = reports.iter().filter(|r| !r.informational).count();
    println!(
        "{} of {gated} checks passed (dim {}, seed {}, {} informational)",
        gated - failures,
        opts.dim,
        opts.seed,
        reports.len() - gated
    );
    if failures == 0 {
        EXIT_OK
    } else {
        EXIT_ORACLE
    }
}
