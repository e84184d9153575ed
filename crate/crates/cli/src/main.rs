mod fault;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fault::FaultyRMax;
use report::{
    AxiomsDoc, EigenDoc, ProjectDoc, ResiduateDoc, SimulateDoc, SpectrumDoc, UscDoc, UscWitnessDoc,
};
use tropica::function_space::usc_violation;
use tropica::io;
use tropica::laws::{run_scalar_laws, run_semimodule_laws};
use tropica::semifield::ClosedSemifield;
use tropica::semimodule::residuate;
use tropica::spectral::{all_eigenvalues, max_cycle_mean, orbit_simulate, principal_eigenpair};
use tropica::{Error, MaxTimes, RMax};

#[derive(Parser)]
#[command(name = "tropica", version, about = "Idempotent (max-plus) linear algebra toolkit")]
struct Cli {
    /// Scalar algebra the input files are written over
    #[arg(long, value_enum, default_value_t = SemifieldChoice::Rmax, global = true)]
    semifield: SemifieldChoice,

    /// Output rendering
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemifieldChoice {
    Rmax,
    Maxtimes,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Principal eigenpair of a square matrix
    Eigen { matrix: PathBuf },

    /// Every eigenvalue with a verified witness (exponential subset oracle)
    Spectrum {
        matrix: PathBuf,
        /// Refuse matrices larger than this
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },

    /// Seeded property suites for the scalar and semimodule laws
    Axioms {
        #[arg(long, env = "TROPICA_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: u32,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },

    /// Greatest x with A ⊙ x ⪯ b, plus the achieved A ⊙ x
    Residuate { matrix: PathBuf, vector: PathBuf },

    /// Orbit x, A⊙x, A²⊙x, ... with a growth-rate estimate
    Simulate {
        matrix: PathBuf,
        vector: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        steps: u32,
    },

    /// Upper semicontinuity of a function on a finite topology
    Usc { topology: PathBuf, function: PathBuf },

    /// Least member of a generated subspace above a function
    Project { subspace: PathBuf, function: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::VerificationFailed => 3,
            Error::TooLarge { .. } => 4,
            Error::UnboundedCoordinate(_) => 5,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

struct Output {
    body: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.semifield {
        SemifieldChoice::Rmax => run::<RMax>(&cli),
        SemifieldChoice::Maxtimes => run::<MaxTimes>(&cli),
    };
    match result {
        Ok(output) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &output.body).map_err(|e| e.to_string()),
                None => {
                    print!("{}", output.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(output.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn render<D: Serialize>(cli: &Cli, doc: &D, text: String) -> String {
    match cli.format {
        Format::Json => {
            let mut json = serde_json::to_string(doc).expect("report serialization cannot fail");
            json.push('\n');
            json
        }
        Format::Text => text,
    }
}

fn run<K: ClosedSemifield>(cli: &Cli) -> Result<Output, Failure> {
    let body = match &cli.command {
        Command::Eigen { matrix } => {
            let a = io::parse_matrix::<K>(&read(matrix)?)?;
            let sol = principal_eigenpair(&a)?;
            let doc = EigenDoc::new(&sol);
            render(cli, &doc, doc.text())
        }

        Command::Spectrum { matrix, max_n } => {
            let a = io::parse_matrix::<K>(&read(matrix)?)?;
            let spectrum = all_eigenvalues(&a, *max_n)?;
            let doc = SpectrumDoc::new(&spectrum);
            render(cli, &doc, doc.text())
        }

        Command::Axioms {
            seed,
            samples,
            inject_fault,
        } => {
            let doc = if *inject_fault {
                AxiomsDoc::new(
                    "rmax (injected fault)",
                    *seed,
                    *samples,
                    vec![
                        ("scalar", run_scalar_laws::<FaultyRMax>(*seed, *samples)),
                        ("semimodule", run_semimodule_laws::<FaultyRMax>(*seed, *samples)),
                    ],
                )
            } else {
                AxiomsDoc::new(
                    K::NAME,
                    *seed,
                    *samples,
                    vec![
                        ("scalar", run_scalar_laws::<K>(*seed, *samples)),
                        ("semimodule", run_semimodule_laws::<K>(*seed, *samples)),
                    ],
                )
            };
            let code = if doc.passed { 0 } else { 1 };
            let body = render(cli, &doc, doc.text());
            return Ok(Output { body, code });
        }

        Command::Residuate { matrix, vector } => {
            let a = io::parse_matrix::<K>(&read(matrix)?)?;
            let b = io::parse_vector::<K>(&read(vector)?)?;
            let solution = residuate(&a, &b)?;
            let achieved = a.apply(&solution)?;
            let doc = ResiduateDoc {
                solution: solution.entries().to_vec(),
                achieved: achieved.entries().to_vec(),
            };
            render(cli, &doc, doc.text())
        }

        Command::Simulate {
            matrix,
            vector,
            steps,
        } => {
            let a = io::parse_matrix::<K>(&read(matrix)?)?;
            let x0 = io::parse_vector::<K>(&read(vector)?)?;
            let orbit = orbit_simulate(&a, &x0, *steps as usize)?;
            let rho = max_cycle_mean(&a)?;
            let doc = SimulateDoc::new(&orbit, rho);
            render(cli, &doc, doc.text())
        }

        Command::Usc { topology, function } => {
            let t = io::parse_topology(&read(topology)?)?;
            let f = io::parse_vector::<K>(&read(function)?)?;
            let witness = usc_violation(&t, &f)?;
            let doc = UscDoc {
                usc: witness.is_none(),
                witness: witness.map(|w| UscWitnessDoc {
                    threshold: w.threshold,
                    superlevel: w.superlevel,
                }),
            };
            render(cli, &doc, doc.text())
        }

        Command::Project { subspace, function } => {
            let w = io::parse_subspace::<K>(&read(subspace)?)?;
            let f = io::parse_vector::<K>(&read(function)?)?;
            let projection = w.project(&f)?;
            let doc = ProjectDoc {
                member: w.contains(&f)?,
                projection: projection.entries().to_vec(),
            };
            render(cli, &doc, doc.text())
        }
    };
    Ok(Output { body, code: 0 })
}
