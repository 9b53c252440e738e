use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quasiword::report::{self, ReportDocument, ReportPayload};
use quasiword::DEFAULT_BUDGET;

/// Analysis of quasiperiodic words: generator languages, code
/// certificates, subword counts and growth rates.
#[derive(Parser)]
#[command(name = "quasiword", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit the report as CSV (count, survey and omega only).
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generators, star root, suffix-code flag and decipherability delay.
    Analyze {
        /// The quasiperiod.
        q: String,
    },
    /// Per-length star, prefix and infix counts with the sandwich verdict.
    Count {
        /// The quasiperiod.
        q: String,
        /// Largest length to report.
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// Characteristic polynomial and growth rate.
    Lambda {
        /// The quasiperiod.
        q: String,
    },
    /// Growth rates of every quasiperiod up to a length, one per renaming
    /// class, sorted by growth rate.
    Survey {
        /// Largest quasiperiod length (at most 12).
        #[arg(long = "max-len")]
        max_len: usize,
        /// Alphabet size.
        #[arg(long = "alphabet", default_value_t = 2)]
        alphabet: usize,
    },
    /// Construct a maximal-complexity prefix and check its subword counts.
    Omega {
        /// The quasiperiod.
        q: String,
        /// Minimal prefix length to construct.
        #[arg(long)]
        len: usize,
        /// Window length to profile (at most 14).
        #[arg(long)]
        n: usize,
    },
    /// Cross-check the independent decision and counting routes.
    Selftest,
}

fn budget_from_env() -> Result<usize, String> {
    match std::env::var("QUASIWORD_BUDGET") {
        Ok(text) => text
            .parse::<usize>()
            .map_err(|_| format!("QUASIWORD_BUDGET must be a number, got {text:?}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn run(cli: &Cli, budget: usize) -> quasiword::Result<ReportDocument> {
    match &cli.command {
        Command::Analyze { q } => report::cmd_analyze(q),
        Command::Count { q, max_n } => report::cmd_count(q, *max_n, budget),
        Command::Lambda { q } => report::cmd_lambda(q),
        Command::Survey { max_len, alphabet } => report::cmd_survey(*max_len, *alphabet),
        Command::Omega { q, len, n } => report::cmd_omega(q, *len, *n),
        Command::Selftest => report::cmd_selftest(budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match budget_from_env() {
        Ok(budget) => budget,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };

    let doc = match run(&cli, budget) {
        Ok(doc) => doc,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(err.exit_code() as u8);
        }
    };

    if cli.json {
        match serde_json::to_string_pretty(&doc) {
            Ok(json) => println!("{json}"),
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::from(4);
            }
        }
    } else if cli.csv {
        match report::render_csv(&doc) {
            Ok(csv) => print!("{csv}"),
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::from(err.exit_code() as u8);
            }
        }
    } else {
        print!("{}", report::render_human(&doc));
    }

    if let ReportPayload::Selftest(selftest) = &doc.payload {
        if !selftest.passed {
            return ExitCode::from(4);
        }
    }
    ExitCode::SUCCESS
}
