use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use covercalc::{analyze, emit_config, emit_report, parse_config, preset, Format, PRESET_NAMES};

/// Invariants of abelian covers of the projective plane branched over line arrangements.
#[derive(Parser)]
#[command(name = "covercalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the cover described by a config file.
    Analyze(AnalyzeArgs),
    /// List the built-in covers or print one as a config file.
    Preset(PresetArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    /// Emit a single JSON object instead of text.
    #[arg(long)]
    json: bool,
    /// Also analyze the universal cover.
    #[arg(long)]
    universal: bool,
    /// Enumerate divisors with even pullback (q = 2 only).
    #[arg(long)]
    torsion_divisors: bool,
    /// Include the branch-curve table.
    #[arg(long)]
    curves: bool,
}

#[derive(Args)]
struct PresetArgs {
    /// Print the preset names.
    #[arg(long, conflicts_with_all = ["name", "emit"])]
    list: bool,
    #[arg(required_unless_present = "list", requires = "emit")]
    name: Option<String>,
    /// Print the preset as an explicit config file.
    #[arg(long)]
    emit: bool,
}

fn fail(err: covercalc::Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(err.exit_code() as u8)
}

fn run_analyze(args: AnalyzeArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let mut config = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    config.universal |= args.universal;
    config.torsion_divisors |= args.torsion_divisors;
    config.curves |= args.curves;
    match analyze(&config) {
        Ok(report) => {
            let format = if args.json { Format::Json } else { Format::Text };
            print!("{}", emit_report(&report, format));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn run_preset(args: PresetArgs) -> ExitCode {
    if args.list {
        for name in PRESET_NAMES {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let name = args.name.expect("clap enforces a name");
    match preset(&name) {
        Ok((_, spec)) => {
            print!("{}", emit_config(&spec, Some(&name)));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze(args) => run_analyze(args),
        Command::Preset(args) => run_preset(args),
    }
}
