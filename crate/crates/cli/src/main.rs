use std::path::PathBuf;
use std::process::ExitCode;

use atomspec_cli::{run, Command, CommandRequest, Format, Options};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "atomspec", version, about = "Atom spectra and sheafification vanishing over toric Cox rings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Sub {
    /// Decide whether each module sheafifies to zero, by both routes.
    CheckZero {
        cox: PathBuf,
        #[arg(required = true)]
        modules: Vec<PathBuf>,
        /// Also decide whether the degree-zero part of M_f vanishes.
        #[arg(long)]
        localize: Option<String>,
    },
    /// Prime filtration factors with twists.
    Filtration { cox: PathBuf, module: PathBuf },
    /// Factor atoms and the minimal primes of the support.
    Asupp { cox: PathBuf, module: PathBuf },
    /// The fiber G/G_p over a monomial prime.
    Fiber {
        cox: PathBuf,
        /// Comma-separated variable names; empty for the zero ideal.
        #[arg(long, allow_hyphen_values = true)]
        prime: String,
        /// Comma-separated degree coordinates of an atom in the fiber.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
    },
    /// The distinct fiber types over all monomial primes.
    FiberClasses {
        cox: PathBuf,
        #[arg(long, default_value_t = atomspec::atoms::DEFAULT_FIBER_CLASS_CAP)]
        cap: usize,
    },
    /// Generators of the irrelevant ideal.
    Irrelevant { cox: PathBuf },
    /// Cox data of a fan.
    CoxFromFan { fan: PathBuf },
    /// Identity checks, route agreement and the bounded localization oracle.
    Verify {
        cox: PathBuf,
        #[arg(long, default_value_t = atomspec_cli::DEFAULT_COSET_WINDOW)]
        window: u64,
        #[arg(long, default_value_t = atomspec_cli::DEFAULT_K_MAX)]
        k_max: u32,
        #[arg(long, default_value_t = atomspec_cli::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = atomspec_cli::DEFAULT_DEGREE_CAP)]
        degree_cap: u32,
    },
}

fn request(sub: Sub) -> CommandRequest {
    let mut options = Options::default();
    let (command, inputs) = match sub {
        Sub::CheckZero { cox, modules, localize } => {
            options.localize = localize;
            let mut inputs = vec![cox];
            inputs.extend(modules);
            (Command::CheckZero, inputs)
        }
        Sub::Filtration { cox, module } => (Command::Filtration, vec![cox, module]),
        Sub::Asupp { cox, module } => (Command::Asupp, vec![cox, module]),
        Sub::Fiber { cox, prime, degree } => {
            options.prime = Some(prime);
            options.degree = degree;
            (Command::Fiber, vec![cox])
        }
        Sub::FiberClasses { cox, cap } => {
            options.fiber_cap = cap;
            (Command::FiberClasses, vec![cox])
        }
        Sub::Irrelevant { cox } => (Command::Irrelevant, vec![cox]),
        Sub::CoxFromFan { fan } => (Command::CoxFromFan, vec![fan]),
        Sub::Verify { cox, window, k_max, samples, seed, degree_cap } => {
            options.coset_window = window;
            options.k_max = k_max;
            options.samples = samples;
            options.seed = seed;
            options.degree_cap = degree_cap;
            (Command::Verify, vec![cox])
        }
    };
    CommandRequest { command, inputs, options }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let mut req = request(cli.command);
    if let Ok(v) = std::env::var("ATOMSPEC_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => req.options.threads = Some(n),
            _ => {
                eprintln!("error: ATOMSPEC_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(&req) {
        Ok(resp) => {
            println!("{}", resp.render(format).trim_end());
            ExitCode::from(resp.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
