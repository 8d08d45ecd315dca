use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arcsos::cli::{self, emit, exit, Command, Format, Outcome, Overrides};
use arcsos::OrderKind;

#[derive(Parser)]
#[command(name = "arcsos", version, about = "Negative-arc and sum-of-squares certificates on real varieties")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Groebner basis, leading monomials and dimension
    Gb(Run),
    /// Normal forms of f and the candidates
    Nf(Run),
    /// Exact k-sos certificate for f, or numerical evidence against one
    Sos(Run),
    /// Negative-arc search for f at each point
    Arc(Run),
    /// Lift the arc in the problem file to a higher order
    Lift(Run),
    /// Tangent spaces, singularity and first-order obstructions
    Singular(Run),
    /// Convex-singularity witnesses at the points
    Witness(Run),
    /// Theta-body membership at the points for k up to kMax
    Theta(Run),
    /// The full pipeline
    Report(Run),
    /// Re-check every certificate in a report
    Verify {
        report: PathBuf,
        #[arg(long, value_enum, default_value_t = Fmt::Json)]
        format: Fmt,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ord {
    Lex,
    Grevlex,
}

#[derive(Args)]
struct Run {
    problem: PathBuf,
    #[arg(long, value_enum)]
    order: Option<Ord>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    max_order: Option<usize>,
    /// Branches per order in the arc search
    #[arg(long)]
    budget: Option<usize>,
    /// Half-width of the sampling box
    #[arg(long = "box")]
    half_width: Option<f64>,
    #[arg(long)]
    resolution: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    assert_real_radical: bool,
    #[arg(long, value_enum, default_value_t = Fmt::Json)]
    format: Fmt,
}

impl Run {
    fn overrides(&self) -> Overrides {
        Overrides {
            order: self.order.map(|o| match o {
                Ord::Lex => OrderKind::Lex,
                Ord::Grevlex => OrderKind::GrevLex,
            }),
            k: self.k,
            max_order: self.max_order,
            budget: self.budget,
            half_width: self.half_width,
            resolution: self.resolution,
            tol: self.tol,
            assert_real_radical: self.assert_real_radical,
        }
    }
}

fn format(f: Fmt) -> Format {
    match f {
        Fmt::Json => Format::Json,
        Fmt::Text => Format::Text,
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (result, fmt) = match args.cmd {
        Cmd::Verify { report, format: f } => (
            std::fs::read_to_string(&report)
                .map_err(|e| arcsos::Error::Invalid(format!("{}: {e}", report.display())))
                .and_then(|t| cli::run_verify(&t)),
            f,
        ),
        other => {
            let (cmd, run) = match other {
                Cmd::Gb(r) => (Command::Gb, r),
                Cmd::Nf(r) => (Command::Nf, r),
                Cmd::Sos(r) => (Command::Sos, r),
                Cmd::Arc(r) => (Command::Arc, r),
                Cmd::Lift(r) => (Command::Lift, r),
                Cmd::Singular(r) => (Command::Singular, r),
                Cmd::Witness(r) => (Command::Witness, r),
                Cmd::Theta(r) => (Command::Theta, r),
                Cmd::Report(r) => (Command::Report, r),
                Cmd::Verify { .. } => unreachable!(),
            };
            let result = std::fs::read_to_string(&run.problem)
                .map_err(|e| arcsos::Error::Invalid(format!("{}: {e}", run.problem.display())))
                .and_then(|t| cli::run_text(cmd, &t, &run.overrides()));
            (result, run.format)
        }
    };
    match result {
        Ok(Outcome { report, exit: code }) => {
            print!("{}", emit(&report, format(fmt)));
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = cli::exit_code(&e);
            ExitCode::from(if code == exit::OK { exit::OTHER } else { code })
        }
    }
}
