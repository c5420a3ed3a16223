//! Command-line front end for spectral-lempert.

mod config;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spectral_lempert::calg::scalar::{fmt_complex, fmt_complex_short, fmt_real, fmt_real_short, parse_complex};
use spectral_lempert::calg::{cyclicity, elem_sym, DEFAULT_CYCLIC_TOL};
use spectral_lempert::discs::{lempert_upper, optimize_disc, DiscConstraints};
use spectral_lempert::domains::h_g3;
use spectral_lempert::experiments::{
    example_run, example_verdicts, prop_b_run, prop_b_verdicts, step1_run, step1_verdicts, ExampleParams, Verdict,
    DEFAULT_T_GRID,
};
use spectral_lempert::{Error, C64};

use config::RunConfig;

const DISPLAY_DIGITS: usize = 12;
const DISPLAY_SNAP: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse(_) | Error::ZeroT => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "spectral-lempert", version, about = "Lempert-function bounds on the 3x3 spectral ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a reproduction sequence, write its CSV and print one verdict per claim.
    Reproduce(ReproduceArgs),
    /// Evaluate a single point (3 entries) or matrix (9 entries, row-major).
    Eval(EvalArgs),
    /// Search for a small disc through a point of the symmetrized domain.
    Optimize(OptimizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    PropB,
    Example,
    Step1,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::PropB => "prop-b",
            Which::Example => "example",
            Which::Step1 => "step1",
        }
    }
}

#[derive(clap::Args, Debug)]
struct ReproduceArgs {
    which: Which,
    /// Inclusive range a..b of exponents, t_j = 2^-j.
    #[arg(long = "j")]
    j: Option<String>,
    /// B, sqrt-e32, or const:<9 comma-separated entries>.
    #[arg(long, allow_hyphen_values = true)]
    perturbation: Option<String>,
    /// Comma-separated t values.
    #[arg(long = "t", allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Simplex iterations per restart.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    degree: Option<usize>,
    /// Angular samples per radius for the explicit disc check.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Emit an SVG next to the CSV even without --svg.
    #[arg(long)]
    emit_svg: bool,
    /// JSON file with RunConfig fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalWhat {
    #[value(name = "h-g3")]
    HG3,
    Sigma,
    Cyclic,
    LempertUpper,
}

#[derive(clap::Args, Debug)]
struct EvalArgs {
    what: EvalWhat,
    #[arg(allow_hyphen_values = true)]
    operand: String,
    /// Print shortest round-trip values instead of 12 significant digits.
    #[arg(long)]
    precise: bool,
}

#[derive(clap::Args, Debug)]
struct OptimizeArgs {
    #[arg(allow_hyphen_values = true)]
    point: String,
    #[arg(long, default_value_t = config::DEFAULT_DEGREE)]
    degree: usize,
    #[arg(long, default_value_t = config::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = config::DEFAULT_BUDGET)]
    budget: usize,
    /// Impose the theta relation for this t (also used for the ratio).
    #[arg(long, allow_hyphen_values = true)]
    relation3_t: Option<String>,
    /// Report |alpha|/|t| for this t.
    #[arg(long = "t", allow_hyphen_values = true)]
    t: Option<String>,
    /// Drop the flatness constraint on the third component.
    #[arg(long)]
    no_flat: bool,
    /// Write the certificate and disc as JSON.
    #[arg(long)]
    certificate: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Reproduce(a) => cmd_reproduce(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Optimize(a) => cmd_optimize(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn cmd_reproduce(a: ReproduceArgs) -> Result<(), CliError> {
    let file = match &a.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let flags = RunConfig {
        j_range: a.j,
        perturbation: a.perturbation,
        t_grid: a.t.as_deref().map(config::parse_real_list).transpose()?,
        degree: a.degree,
        seed: a.seed,
        budget: a.budget,
        samples: a.samples,
        out: a.out,
        svg: a.svg,
        emit_svg: a.emit_svg,
    };
    let cfg = file.merged(flags);
    let name = a.which.name();

    let (csv, series, verdicts) = match a.which {
        Which::PropB => {
            let perturbation = cfg.perturbation()?;
            let rows = prop_b_run(cfg.j_range()?, &perturbation);
            (report::prop_b_csv(&rows), report::prop_b_series(&rows), prop_b_verdicts(&rows, &perturbation))
        }
        Which::Step1 => {
            let ts: Vec<C64> = cfg.t_grid(&config::DEFAULT_STEP1_T)?.into_iter().map(|t| C64::new(t, 0.0)).collect();
            let rows = step1_run(&ts)?;
            (report::step1_csv(&rows), report::step1_series(&rows), step1_verdicts(&rows))
        }
        Which::Example => {
            let params = ExampleParams {
                degree: cfg.degree()?,
                seed: cfg.seed(),
                budget: cfg.budget()?,
                samples: cfg.samples()?,
            };
            let run = example_run(&cfg.t_grid(&DEFAULT_T_GRID)?, &params)?;
            (report::example_csv(&run.rows), report::example_series(&run.rows), example_verdicts(&run))
        }
    };

    let out = cfg.out_path(name);
    report::write_atomic(&out, &csv)?;
    println!("wrote {}", out.display());
    if let Some(path) = cfg.svg_path(name) {
        report::write_atomic(&path, &svg::render(name, &series))?;
        println!("wrote {}", path.display());
    }
    print_verdicts(&verdicts)
}

fn print_verdicts(verdicts: &[Verdict]) -> Result<(), CliError> {
    for v in verdicts {
        println!("{v}");
    }
    let failed = verdicts.iter().filter(|v| !v.pass).count();
    if failed > 0 {
        return Err(CliError::Failure(format!("{failed} of {} verdicts failed", verdicts.len())));
    }
    Ok(())
}

fn real_out(x: f64, precise: bool) -> String {
    if precise {
        fmt_real(x)
    } else {
        fmt_real_short(x, DISPLAY_DIGITS)
    }
}

fn complex_out(values: &[C64], precise: bool) -> String {
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    values
        .iter()
        .map(|&z| if precise { fmt_complex(z) } else { fmt_complex_short(z, DISPLAY_DIGITS, DISPLAY_SNAP * scale) })
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_eval(a: EvalArgs) -> Result<(), CliError> {
    match a.what {
        EvalWhat::HG3 => {
            let z = config::parse_point(&a.operand)?;
            println!("{}", real_out(h_g3(&z), a.precise));
        }
        EvalWhat::Sigma => {
            let m = config::parse_matrix(&a.operand)?;
            println!("{}", complex_out(&elem_sym(&m).as_array(), a.precise));
        }
        EvalWhat::Cyclic => {
            let m = config::parse_matrix(&a.operand)?;
            let r = cyclicity(&m, DEFAULT_CYCLIC_TOL);
            println!(
                "cyclic={} min_poly_degree={} min_poly_coeffs={} krylov_smin={}",
                r.cyclic,
                r.min_poly_degree,
                complex_out(&r.min_poly_coeffs, a.precise),
                real_out(r.krylov_smin, a.precise)
            );
        }
        EvalWhat::LempertUpper => {
            let m = config::parse_matrix(&a.operand)?;
            let ub = lempert_upper(&m)?;
            println!("{}", real_out(ub.value, a.precise));
        }
    }
    Ok(())
}

fn parse_t(s: &str) -> Result<C64, CliError> {
    let t = parse_complex(s).map_err(|e| CliError::Usage(e.to_string()))?;
    if t.norm() == 0.0 {
        return Err(CliError::Usage("t must be nonzero".into()));
    }
    Ok(t)
}

fn cmd_optimize(a: OptimizeArgs) -> Result<(), CliError> {
    let target = config::parse_point(&a.point)?;
    let relation3 = a.relation3_t.as_deref().map(parse_t).transpose()?;
    let t = match a.t.as_deref() {
        Some(s) => Some(parse_t(s)?),
        None => relation3,
    };
    let constraints = DiscConstraints { phi3_flat: !a.no_flat, relation3 };
    let best = optimize_disc(&target, a.degree, constraints, a.seed, a.budget)?;
    let alpha = best.certificate.alpha.norm();
    println!("alpha={}", fmt_real(alpha));
    if let Some(t) = t {
        println!("ratio={}", fmt_real(alpha / t.norm()));
    }
    println!("boundary_sup={}", fmt_real(best.certificate.boundary_sup));
    println!("admissible={}", best.certificate.admissible);
    if let Some(path) = &a.certificate {
        let json = serde_json::to_string_pretty(&best).map_err(|e| CliError::Io(e.to_string()))?;
        report::write_atomic(path, &(json + "\n"))?;
        println!("wrote {}", path.display());
    }
    if !best.certificate.admissible {
        return Err(CliError::Failure("certificate not admissible".into()));
    }
    Ok(())
}
