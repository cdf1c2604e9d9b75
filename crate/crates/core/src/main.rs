use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tubefit::io::{
    cmd_forward, cmd_modes, cmd_retrieve, cmd_roundtrip, write_sidecar, BranchSetting, CliError, ForwardMethod, Outcome, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "tubefit",
    version,
    about = "Effective properties of a partially filling sample in an impedance tube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Permit frequencies above the first radial cut-on.
    #[arg(long)]
    allow_above_cutoff: bool,
    /// Overrides retrieval.modes.
    #[arg(long)]
    modes: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Fdfd,
    Averaged,
}

impl From<Method> for ForwardMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Fdfd => Self::Fdfd,
            Method::Averaged => Self::Averaged,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Retrieve n1 and z1 from a (T, R) sweep.
    Retrieve {
        #[command(flatten)]
        common: Common,
        /// CSV with columns f, re_t, im_t, re_r, im_r.
        #[arg(long)]
        input: PathBuf,
        /// Branch index at the lowest frequency.
        #[arg(long, allow_hyphen_values = true)]
        branch_seed: Option<i32>,
        /// Use the coefficient signs as originally printed.
        #[arg(long)]
        printed_signs: bool,
    },
    /// Compute a (T, R) sweep for the configured material.
    Forward {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "averaged")]
        method: Method,
    },
    /// Forward then retrieve, reporting errors against the configured material.
    Roundtrip {
        #[command(flatten)]
        common: Common,
        /// Restrict to one forward method; both by default.
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, allow_hyphen_values = true)]
        branch_seed: Option<i32>,
        #[arg(long)]
        printed_signs: bool,
    },
    /// List radial modes and cut-on frequencies.
    Modes {
        #[command(flatten)]
        common: Common,
        /// Mark modes propagating or evanescent at this frequency (Hz).
        #[arg(long)]
        frequency: Option<f64>,
    },
}

fn load(common: &Common) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::load(&common.config)?;
    config.retrieval.allow_above_cutoff |= common.allow_above_cutoff;
    if let Some(m) = common.modes {
        config.retrieval.modes = m;
    }
    Ok(config)
}

fn apply(config: &mut RunConfig, seed: Option<i32>, printed: bool) -> Result<(), CliError> {
    if let Some(m) = seed {
        config.retrieval.branch = BranchSetting::Fixed(m);
    }
    config.retrieval.printed_signs |= printed;
    config.validate()
}

fn emit(
    common: &Common,
    entries: Vec<(&str, String)>,
    run: impl FnOnce(&mut dyn Write) -> Result<Outcome, CliError>,
) -> Result<Outcome, CliError> {
    let outcome = match &common.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            let outcome = run(&mut w)?;
            w.flush()?;
            write_sidecar(path, &entries, &outcome)?;
            outcome
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            run(&mut lock)?
        }
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    for s in &outcome.summary {
        eprintln!("{s}");
    }
    Ok(outcome)
}

fn metadata<'a>(command: &str, config: &Path, input: Option<&Path>) -> Vec<(&'a str, String)> {
    let mut v = vec![
        ("tool", format!("tubefit {}", env!("CARGO_PKG_VERSION"))),
        ("command", command.to_string()),
        ("config", config.display().to_string()),
        ("arguments", std::env::args().collect::<Vec<_>>().join(" ")),
    ];
    if let Some(i) = input {
        v.push(("input", i.display().to_string()));
    }
    v
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Retrieve {
            common,
            input,
            branch_seed,
            printed_signs,
        } => {
            let mut config = load(&common)?;
            apply(&mut config, branch_seed, printed_signs)?;
            let meta = metadata("retrieve", &common.config, Some(&input));
            emit(&common, meta, |w| cmd_retrieve(&config, &input, w))
        }
        Command::Forward { common, method } => {
            let config = load(&common)?;
            let meta = metadata("forward", &common.config, None);
            emit(&common, meta, |w| cmd_forward(&config, method.into(), w))
        }
        Command::Roundtrip {
            common,
            method,
            branch_seed,
            printed_signs,
        } => {
            let mut config = load(&common)?;
            apply(&mut config, branch_seed, printed_signs)?;
            let methods: Vec<ForwardMethod> = match method {
                Some(m) => vec![m.into()],
                None => vec![ForwardMethod::Averaged, ForwardMethod::Fdfd],
            };
            let meta = metadata("roundtrip", &common.config, None);
            emit(&common, meta, |w| cmd_roundtrip(&config, &methods, w))
        }
        Command::Modes { common, frequency } => {
            let config = load(&common)?;
            let meta = metadata("modes", &common.config, None);
            emit(&common, meta, |w| cmd_modes(&config, frequency, w))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) if outcome.passed => ExitCode::SUCCESS,
        Ok(_) => {
            eprintln!("error: round trip exceeded tolerance");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
