use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ortho_llc::cli::{check_desiderata, parse_spec, print_spec, run_command, CheckConfig, CliError, Format, Mutation};

#[derive(Parser)]
#[command(name = "llc", version, about = "Symbolic L-packets of even orthogonal groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the command of a scenario file (`-` reads stdin).
    Run {
        file: String,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Print a scenario file in canonical form.
    Fmt { file: String },
    /// Run the randomized property battery.
    Check {
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        /// Falls back to LLC_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 6)]
        max_summands: usize,
        /// Inject a known bug (negative control).
        #[arg(long)]
        mutation: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
}

fn read(file: &str) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if file == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|t| text = t)
    };
    res.map_err(|e| CliError::Usage(format!("cannot read {file}: {e}")))?;
    Ok(text)
}

fn seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("LLC_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("LLC_SEED is not an integer: {v}"))),
        Err(_) => Ok(42),
    }
}

fn execute(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Run { file, format } => {
            let scenario = parse_spec(&read(&file)?)?;
            let format = match format {
                Some(f) => f.into(),
                None => scenario.command.word("format").and_then(Format::parse).unwrap_or(Format::Table),
            };
            print!("{}", run_command(&scenario)?.render(format));
            Ok(0)
        }
        Cmd::Fmt { file } => {
            print!("{}", print_spec(&parse_spec(&read(&file)?)?));
            Ok(0)
        }
        Cmd::Check { p, trials, seed: flag, max_summands, mutation, format } => {
            let mutation = match mutation {
                None => None,
                Some(m) => Some(Mutation::parse(&m).ok_or_else(|| {
                    let known: Vec<&str> = Mutation::ALL.iter().map(|m| m.name()).collect();
                    CliError::Usage(format!("unknown mutation `{m}`; known: {}", known.join(", ")))
                })?),
            };
            let config = CheckConfig { p, trials, seed: seed(flag)?, max_summands, mutation };
            let report = check_desiderata(&config)?;
            print!("{}", report.report().render(format.into()));
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
