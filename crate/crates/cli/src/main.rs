use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kummer_core::galois::{self, FiniteInvolutiveGroup};
use kummer_core::mukai;
use kummer_field::{set_degree_cap, BigRational, RationalFunction};
use kummer_verify::{emit, run_suite, Format, Mode, RunConfig, Suite};

const DEGREE_ENV: &str = "KUMMER_MAX_DEGREE";

#[derive(Parser)]
#[command(name = "kummer-verify", version, about = "Exact verification suite for the Kummer surface construction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Specialized,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and write a report.
    Verify {
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: ModeArg,
        #[arg(long)]
        s: Option<BigRational>,
        #[arg(long)]
        t: Option<BigRational>,
        /// Comma-separated subset of config,fibration,torsor,mukai,cohomology,omega.
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<String>>,
        #[arg(long, default_value_t = 8)]
        omega_n: i64,
        #[arg(long, default_value_t = 16)]
        torus_level: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the normalized quadric with its coefficients.
    PrintAlphas {
        #[arg(long)]
        s: Option<BigRational>,
        #[arg(long)]
        t: Option<BigRational>,
    },
    /// Read `{order, table, theta}` from stdin and print the number of classes.
    H1,
}

fn apply_degree_cap() -> Result<(), String> {
    if let Ok(v) = std::env::var(DEGREE_ENV) {
        let cap: u32 = v.parse().map_err(|_| format!("{DEGREE_ENV} must be a non-negative integer, got `{v}`"))?;
        set_degree_cap(Some(cap));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = apply_degree_cap() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Verify { mode, s, t, suites, omega_n, torus_level, format, out } => {
            let suites = match suites {
                None => Suite::ALL.into_iter().collect(),
                Some(list) => list
                    .iter()
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse::<Suite>().map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?,
            };
            let config = RunConfig {
                mode: match mode {
                    ModeArg::Symbolic => Mode::Symbolic,
                    ModeArg::Specialized => Mode::Specialized,
                },
                s,
                t,
                suites,
                omega_n,
                torus_level,
            };
            let report = run_suite(&config).map_err(|e| e.to_string())?;
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            };
            let text = emit(&report, format);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(report.exit_code() as u8)
        }
        Command::PrintAlphas { s, t } => {
            let (s, t) = match (s, t) {
                (Some(s), Some(t)) => (RationalFunction::constant(s), RationalFunction::constant(t)),
                (None, None) => (RationalFunction::s(), RationalFunction::t()),
                _ => return Err("give both --s and --t or neither".into()),
            };
            let frame = mukai::frame_and_alphas(&s, &t).map_err(|e| e.to_string())?;
            println!("{}", mukai::template_equation(&frame.alpha));
            Ok(0)
        }
        Command::H1 => {
            let mut input = String::new();
            std::io::stdin().read_to_string(&mut input).map_err(|e| e.to_string())?;
            let g = FiniteInvolutiveGroup::from_json(&input).map_err(|e| e.to_string())?;
            println!("{}", galois::h1(&g).count);
            Ok(0)
        }
    }
}
