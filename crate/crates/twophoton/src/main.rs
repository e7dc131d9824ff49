use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use twophoton::sweep::{FIGURE_STEPS, FIGURE_TMAX};
use twophoton::twophoton_core::{BasisState, InitialAtomicState, ModelParams, TimeGrid};
use twophoton::{compute_sweep, run_figure_on, run_oracle_compare, Error, SweepRequest};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;

/// Entanglement of two atoms driven by a two-mode thermal field through a
/// nondegenerate two-photon interaction.
#[derive(Debug, Parser)]
#[command(name = "twophoton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced atomic state and negativity over a time grid, as CSV.
    Sweep(SweepArgs),
    /// Regenerate the curves of a figure preset, one CSV file per curve.
    Figure(FigureArgs),
    /// Compare the closed form with the brute-force oracle; exits 2 if they
    /// disagree by 1e-8 or more.
    Check(SweepArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Initial {
    Ee,
    Eg,
    Ge,
    Gg,
    Mixed,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    initial: Initial,
    /// Excitation probability of each atom; only with `--initial mixed`.
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    nbar1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    nbar2: f64,
    /// End of the grid in units of g·t.
    #[arg(long, default_value_t = FIGURE_TMAX, allow_negative_numbers = true)]
    tmax: f64,
    #[arg(long, default_value_t = FIGURE_STEPS)]
    steps: usize,
    /// Bound on the neglected thermal weight of the Fock sums.
    #[arg(long, default_value_t = 1e-10, allow_negative_numbers = true)]
    tail_tol: f64,
    /// Explicit Fock cutoffs `N1,N2`. With `--oracle` and for `check` this is
    /// the truncation of the joint space (at most 14); initial photon
    /// numbers then run up to `N − 2`.
    #[arg(long, value_parser = parse_cutoff)]
    cutoff: Option<(usize, usize)>,
    /// Compute with the brute-force oracle instead of the closed form.
    #[arg(long)]
    oracle: bool,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    preset: u8,
    /// Directory receiving the curve files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, default_value_t = FIGURE_TMAX)]
    tmax: f64,
    #[arg(long, default_value_t = FIGURE_STEPS)]
    steps: usize,
}

fn parse_cutoff(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected N1,N2, got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

impl SweepArgs {
    fn request(&self) -> Result<SweepRequest, Error> {
        let initial = match (self.initial, self.lambda) {
            (Initial::Mixed, Some(l)) => InitialAtomicState::Mixed(l),
            (Initial::Mixed, None) => return Err(Error::Usage("--initial mixed requires --lambda".into())),
            (_, Some(_)) => return Err(Error::Usage("--lambda is only valid with --initial mixed".into())),
            (Initial::Ee, None) => BasisState::Ee.into(),
            (Initial::Eg, None) => BasisState::Eg.into(),
            (Initial::Ge, None) => BasisState::Ge.into(),
            (Initial::Gg, None) => BasisState::Gg.into(),
        };
        let grid = TimeGrid::new(self.tmax, self.steps)?;
        let mut req = SweepRequest::new(initial, ModelParams::new(1.0, self.nbar1, self.nbar2), grid);
        req.tail_tol = self.tail_tol;
        req.cutoff_override = self.cutoff;
        req.oracle = self.oracle;
        req.validate()?;
        Ok(req)
    }
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, contents).map_err(|source| Error::Write {
            path: p.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(contents.as_bytes())
            .map_err(|source| Error::Write {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Sweep(args) => {
            let sweep = compute_sweep(&args.request()?)?;
            write_output(args.out.as_deref(), &sweep.to_csv())?;
        }
        Command::Figure(args) => {
            let grid = TimeGrid::new(args.tmax, args.steps)?;
            let curves = run_figure_on(args.preset, grid)?;
            fs::create_dir_all(&args.out).map_err(|source| Error::Write {
                path: args.out.clone(),
                source,
            })?;
            for curve in curves {
                let path = args.out.join(&curve.name);
                write_output(Some(&path), &curve.sweep.to_csv())?;
                println!("{}", path.display());
            }
        }
        Command::Check(args) => {
            let report = run_oracle_compare(&args.request()?)?;
            let text = format!("{report}\n");
            write_output(args.out.as_deref(), &text)?;
            if !report.passed() {
                return Ok(EXIT_VALIDATION);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
