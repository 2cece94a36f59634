//! `regmat` — rough-set regular lattices and the matroids they induce.
//!
//! Exit status: 0 on success, 1 when a verification run finds a failing
//! check or a derivation discrepancy, 2 on usage or input errors.

mod output;
mod parse;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use regmat_core::{
    derive_closed_sets, regular_set_lattice, run_campaign, verify_all, ApproximationSpace,
    CampaignConfig, LatticeMatroid,
};

use output::ExampleView;
use parse::RelationDocument;

/// The four-element worked example wired into the `example` subcommand.
const WORKED_EXAMPLE_RELATION: &str = "\
universe 4
1 1
1 3
2 1
2 3
2 4
3 1
3 3
4 4
";

#[derive(Parser)]
#[command(
    name = "regmat",
    version,
    about = "Regular sets of a serial and transitive relation, their lattice, and the induced matroid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BasicFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DiagramFormat {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Report seriality, transitivity, reflexivity, and symmetry
    Check {
        /// Relation file
        #[arg(long)]
        relation: PathBuf,
    },
    /// Enumerate the regular sets of the space
    Regular {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum, default_value_t = BasicFormat::Text)]
        format: BasicFormat,
    },
    /// The regular-set lattice: elements, Hasse edges, atoms, heights, structure flags
    Lattice {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Text)]
        format: DiagramFormat,
        /// Write the rendered output to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The induced matroid: independent sets, bases, rank table, axiom report
    Matroid {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum, default_value_t = BasicFormat::Text)]
        format: BasicFormat,
    },
    /// Closed sets via brute force and via the three-step derivation
    Closed {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Text)]
        format: DiagramFormat,
    },
    /// Run the verification catalog on a relation, or over a random campaign
    Verify {
        /// Relation file (exclusive with --random)
        #[arg(long)]
        relation: Option<PathBuf>,
        /// Number of random spaces to generate
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        /// Universe size for generated spaces
        #[arg(long, value_name = "N")]
        size: Option<usize>,
        /// Edge density for generated spaces
        #[arg(long, value_name = "D")]
        density: Option<f64>,
        /// Seed for the generated stream
        #[arg(long, value_name = "S")]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = BasicFormat::Text)]
        format: BasicFormat,
    },
    /// Print the built-in worked examples
    Example {
        /// Which example to print (default: both)
        #[arg(long, value_parser = ["3.5", "4.8"])]
        which: Option<String>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<RelationDocument, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    RelationDocument::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, rendered: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, rendered).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { relation } => {
            let doc = load(&relation)?;
            print!("{}", output::check_text(&doc.relation()));
            Ok(ExitCode::SUCCESS)
        }

        Command::Regular { relation, format } => {
            let doc = load(&relation)?;
            let space = doc.space();
            let regular = space.enumerate_regular_sets().map_err(|e| e.to_string())?;
            let rendered = match format {
                BasicFormat::Text => output::regular_text(&regular),
                BasicFormat::Json => output::json_document(
                    Some(doc.universe()),
                    "regular",
                    output::family_json(&regular),
                ),
            };
            print!("{rendered}");
            Ok(ExitCode::SUCCESS)
        }

        Command::Lattice {
            relation,
            format,
            out,
        } => {
            let doc = load(&relation)?;
            let lattice = regular_set_lattice(&doc.space()).map_err(|e| e.to_string())?;
            let rendered = match format {
                DiagramFormat::Text => output::lattice_text(&lattice),
                DiagramFormat::Json => output::json_document(
                    Some(doc.universe()),
                    "lattice",
                    output::lattice_json(&lattice),
                ),
                DiagramFormat::Dot => lattice.to_dot(),
            };
            emit(out.as_deref(), &rendered)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Matroid { relation, format } => {
            let doc = load(&relation)?;
            let matroid = LatticeMatroid::from_space(&doc.space()).map_err(|e| e.to_string())?;
            let view = output::matroid_view(&matroid).map_err(|e| e.to_string())?;
            let rendered = match format {
                BasicFormat::Text => output::matroid_text(&view),
                BasicFormat::Json => output::json_document(
                    Some(doc.universe()),
                    "matroid",
                    output::matroid_json(&view),
                ),
            };
            print!("{rendered}");
            Ok(ExitCode::SUCCESS)
        }

        Command::Closed { relation, format } => {
            let doc = load(&relation)?;
            let matroid = LatticeMatroid::from_space(&doc.space()).map_err(|e| e.to_string())?;
            let derivation = derive_closed_sets(&matroid).map_err(|e| e.to_string())?;
            let rendered = match format {
                DiagramFormat::Text => output::closed_text(&derivation),
                DiagramFormat::Json => output::json_document(
                    Some(doc.universe()),
                    "closed",
                    output::closed_json(&derivation),
                ),
                DiagramFormat::Dot => {
                    let lattice = matroid.closed_set_lattice().map_err(|e| e.to_string())?;
                    lattice.to_dot()
                }
            };
            print!("{rendered}");
            if derivation.discrepancy.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }

        Command::Verify {
            relation,
            random,
            size,
            density,
            seed,
            format,
        } => match (relation, random) {
            (Some(_), Some(_)) => Err("--relation and --random are mutually exclusive".to_string()),
            (Some(path), None) => {
                let doc = load(&path)?;
                let reports = verify_all(&doc.space()).map_err(|e| e.to_string())?;
                let rendered = match format {
                    BasicFormat::Text => output::verify_text(&doc.relation(), &reports),
                    BasicFormat::Json => output::json_document(
                        Some(doc.universe()),
                        "verify",
                        output::verify_json(&doc.relation(), &reports),
                    ),
                };
                print!("{rendered}");
                let failed = reports.iter().any(|r| !r.passed());
                Ok(if failed {
                    ExitCode::from(1)
                } else {
                    ExitCode::SUCCESS
                })
            }
            (None, Some(count)) => {
                let size = size.ok_or("--random requires --size N")?;
                let seed = seed.ok_or("--random requires --seed S")?;
                let density = density.unwrap_or(0.2);
                if !(0.0..=1.0).contains(&density) {
                    return Err("--density must lie in [0, 1]".to_string());
                }
                if !(1..=regmat_core::verification::CAMPAIGN_SIZE_CAP).contains(&size) {
                    return Err(format!(
                        "--size must lie in 1..={}",
                        regmat_core::verification::CAMPAIGN_SIZE_CAP
                    ));
                }
                let report = run_campaign(&CampaignConfig {
                    count,
                    sizes: size..=size,
                    densities: (density, density),
                    seed,
                });
                let rendered = match format {
                    BasicFormat::Text => output::campaign_text(&report),
                    BasicFormat::Json => {
                        output::json_document(None, "verify", output::campaign_json(&report))
                    }
                };
                print!("{rendered}");
                Ok(if report.has_findings() {
                    ExitCode::from(1)
                } else {
                    ExitCode::SUCCESS
                })
            }
            (None, None) => Err("verify needs --relation FILE or --random COUNT".to_string()),
        },

        Command::Example { which } => {
            let doc = RelationDocument::parse(WORKED_EXAMPLE_RELATION)
                .expect("the built-in relation parses");
            let space: ApproximationSpace = doc.space();
            let matroid = LatticeMatroid::from_space(&space).expect("built-in space is valid");
            let view = ExampleView {
                relation_text: doc.to_text(),
                neighborhoods: (0..doc.universe().size())
                    .map(|x| {
                        let neighborhood =
                            space.neighborhood(x).expect("index within the universe");
                        (doc.universe().label(x).to_string(), neighborhood)
                    })
                    .collect(),
                regular: space
                    .enumerate_regular_sets()
                    .expect("built-in space is small"),
                independent: matroid
                    .enumerate_independent_sets()
                    .expect("built-in space is small"),
                derivation: derive_closed_sets(&matroid).expect("built-in space is small"),
            };
            let (show_35, show_48) = match which.as_deref() {
                Some("3.5") => (true, false),
                Some("4.8") => (false, true),
                _ => (true, true),
            };
            print!("{}", output::example_text(&view, show_35, show_48));
            Ok(ExitCode::SUCCESS)
        }
    }
}
