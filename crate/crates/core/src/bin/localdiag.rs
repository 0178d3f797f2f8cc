use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;

use localdiag::cli::{self, exit, CommandError, Focus, SystemFile};
use localdiag::gen::{random_circuit, CircuitParams};
use localdiag::locality::RetrievalBudget;
use localdiag::logic::{parse_formula, Formula};

#[derive(Parser)]
#[command(
    name = "localdiag",
    version,
    about = "Consistency-based diagnosis with relevance focusing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ObsArgs {
    /// Observation formula, e.g. "!C & !F".
    #[arg(long)]
    obs: Option<String>,
    /// File holding the observation formula.
    #[arg(long)]
    obs_file: Option<PathBuf>,
}

#[derive(Args)]
struct FocusArgs {
    /// Stop spreading after N frontier expansions.
    #[arg(long, value_name = "N")]
    max_rounds: Option<NonZeroUsize>,
    /// Stop spreading once N atoms are marked.
    #[arg(long, value_name = "N")]
    max_marked: Option<NonZeroUsize>,
    /// Soft wall-clock limit on spreading.
    #[arg(long, value_name = "N")]
    timeout_ms: Option<u64>,
}

impl FocusArgs {
    fn focus(&self) -> Focus {
        Focus {
            budget: RetrievalBudget {
                max_rounds: self.max_rounds,
                max_marked: self.max_marked,
            },
            timeout: self.timeout_ms.map(Duration::from_millis),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal diagnoses of the whole system, or of the retrieved compartment with --local.
    Diagnose {
        file: PathBuf,
        #[command(flatten)]
        obs: ObsArgs,
        #[arg(long)]
        local: bool,
        #[command(flatten)]
        focus: FocusArgs,
        #[arg(long)]
        json: bool,
    },
    /// Minimal conflict sets.
    Conflicts {
        file: PathBuf,
        #[command(flatten)]
        obs: ObsArgs,
        #[arg(long)]
        json: bool,
    },
    /// Kernels of SD ∪ ASS (plus the observation, if given) for a target.
    Kernels {
        file: PathBuf,
        #[arg(long, default_value = "false")]
        target: String,
        #[arg(long)]
        obs: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The relevant compartment for an observation.
    Compartment {
        file: PathBuf,
        #[command(flatten)]
        obs: ObsArgs,
        #[command(flatten)]
        focus: FocusArgs,
        #[arg(long)]
        json: bool,
    },
    /// Semi-revise SD ∪ ASS by a formula, giving up assumables first.
    Revise {
        file: PathBuf,
        /// The formula to add.
        #[command(flatten)]
        obs: ObsArgs,
        /// Additional formulas to prefer giving up (repeatable).
        #[arg(long)]
        prefer: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Global versus local diagnosis on the same input.
    Bench {
        file: PathBuf,
        #[command(flatten)]
        obs: ObsArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print a random component-structured system file.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        components: usize,
        #[arg(long, default_value_t = 4)]
        inputs: usize,
        #[arg(long, default_value_t = 1)]
        faults: usize,
        /// Write the generated observation here instead of a trailing comment.
        #[arg(long)]
        obs_out: Option<PathBuf>,
    },
}

fn formula(text: &str) -> Result<Formula, CommandError> {
    parse_formula(text).map_err(|e| CommandError::Input(format!("formula {text:?}: {e}")))
}

fn read(path: &Path) -> Result<String, CommandError> {
    std::fs::read_to_string(path).map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SystemFile, CommandError> {
    Ok(SystemFile::parse(&read(path)?)?)
}

fn observation(args: &ObsArgs) -> Result<Formula, CommandError> {
    match (&args.obs, &args.obs_file) {
        (Some(text), _) => formula(text),
        (None, Some(path)) => formula(&read(path)?),
        (None, None) => Err(CommandError::Input("no observation given".into())),
    }
}

fn emit(report: &cli::RunReport, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.to_human());
    }
}

fn run(cmd: Command) -> Result<(), CommandError> {
    match cmd {
        Command::Diagnose {
            file,
            obs,
            local,
            focus,
            json,
        } => {
            let report = cli::cmd_diagnose(&load(&file)?, &observation(&obs)?, local, &focus.focus())?;
            emit(&report, json);
        }
        Command::Conflicts { file, obs, json } => {
            emit(&cli::cmd_conflicts(&load(&file)?, &observation(&obs)?), json);
        }
        Command::Kernels {
            file,
            target,
            obs,
            json,
        } => {
            let obs = obs.as_deref().map(formula).transpose()?;
            emit(&cli::cmd_kernels(&load(&file)?, &formula(&target)?, obs.as_ref()), json);
        }
        Command::Compartment { file, obs, focus, json } => {
            emit(
                &cli::cmd_compartment(&load(&file)?, &observation(&obs)?, &focus.focus())?,
                json,
            );
        }
        Command::Revise {
            file,
            obs,
            prefer,
            json,
        } => {
            let prefer = prefer.iter().map(|p| formula(p)).collect::<Result<Vec<_>, _>>()?;
            emit(&cli::cmd_revise(&load(&file)?, &observation(&obs)?, &prefer), json);
        }
        Command::Bench { file, obs, json } => {
            let report = cli::cmd_bench(&load(&file)?, &observation(&obs)?)?;
            if json {
                println!("{}", report.to_json());
            } else {
                println!("{}", report.to_human());
            }
        }
        Command::Generate {
            seed,
            components,
            inputs,
            faults,
            obs_out,
        } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let params = CircuitParams {
                inputs: inputs.max(1),
                components,
                faults,
                ..CircuitParams::default()
            };
            let circuit = random_circuit(&mut rng, params);
            print!("{}", circuit.file.render());
            match obs_out {
                Some(path) => std::fs::write(&path, format!("{}\n", circuit.observation))
                    .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))?,
                None => println!("\n# observation: {}", circuit.observation),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("localdiag: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
