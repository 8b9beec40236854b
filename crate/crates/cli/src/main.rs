use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyshock::{load_config, run, Command};

#[derive(Parser)]
#[command(
    name = "polyshock",
    version,
    about = "Six-field polyatomic gas closure and shock structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Evaluate closure quantities at the configured states.
    Closure(Common),
    /// Compute one shock profile.
    Shock(Common),
    /// Compute profiles over a parameter grid.
    Sweep(Common),
    /// Run the verification suite.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// TOML configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Also write SVG plots.
    #[arg(long)]
    plot: bool,
    /// Output directory (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Sub::Closure(a) => (Command::Closure, a),
        Sub::Shock(a) => (Command::Shock, a),
        Sub::Sweep(a) => (Command::Sweep, a),
        Sub::Verify(a) => (Command::Verify, a),
    };
    let result = load_config(&args.config, command, args.plot, args.out)
        .and_then(|cfg| run(&cfg, &mut std::io::stdout().lock()));
    match result {
        Ok(outcome) => {
            for f in outcome.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("polyshock: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
