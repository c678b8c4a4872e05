use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polynuclei::axioms::classify;
use polynuclei::construct::{
    double_coset_algebra, quotient_hypergroup, split_labels, GroupTable, SubgroupSpec,
};
use polynuclei::fixtures::{self, OracleCaps};
use polynuclei::io::{parse_with_warnings, serialize_structure};
use polynuclei::nuclei::{
    containments, nucleus_report, NucleusOrder, Strategy, DEFAULT_SUBSET_CAP,
};
use polynuclei::report::{fixture_checks_human, NucleiView, ProfileView, TheoremView};
use polynuclei::search::{parse_requirements, search_structures, SearchSpec};
use polynuclei::{Error, StructureBundle};

#[derive(Parser)]
#[command(
    name = "polynuclei",
    version,
    about = "Classify finite hyperstructures and compute their nuclei"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure file against every structure class.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compute left, middle and right nuclei of the requested orders.
    Nuclei {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        orders: Vec<u8>,
        /// Enumerate subsets instead of using the singleton reduction.
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check the twenty containments between nucleus orders; exits 2 on a violation.
    Verify {
        file: PathBuf,
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build a hyperstructure from a group file and a subgroup.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        group: PathBuf,
        /// Subgroup members, comma separated (commas inside parentheses are kept).
        #[arg(long)]
        subgroup: String,
    },
    /// Backtracking search for tables with the required flags.
    Search {
        #[arg(long)]
        order: usize,
        /// Flags such as `polyloop,!semihypergroup` or `tallini2=false`.
        #[arg(long, default_value = "")]
        require: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        cell_size_max: Option<usize>,
        /// Write one file per structure here instead of printing them.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// The embedded published examples.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Quotient,
    DoubleCoset,
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Dump {
        id: String,
    },
    /// Regression check of classifications and nucleus sets.
    Check {
        /// Largest order cross-checked by the subset oracle for orders 2 and 3.
        #[arg(long, default_value_t = OracleCaps::default().single)]
        cap_single: usize,
        /// Largest order cross-checked by the subset oracle for order 4.
        #[arg(long, default_value_t = OracleCaps::default().pair)]
        cap_pair: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CliResult = Result<(), Failure>;

fn read_bundle(path: &Path) -> Result<StructureBundle, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let (bundle, warnings) = parse_with_warnings(&bytes)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(bundle)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(text: &str) -> CliResult {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::Input(format!("stdout: {e}")))
        }
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(format: Format, view: &T, human: impl FnOnce(&T) -> String) -> CliResult {
    match format {
        Format::Human => out(&human(view)),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(view).expect("report serializes");
            s.push('\n');
            out(&s)
        }
    }
}

fn strategy(brute: bool, cap: usize) -> Strategy {
    if brute {
        Strategy::Brute { cap }
    } else {
        Strategy::Fast
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Classify { file, format } => {
            let b = read_bundle(&file)?;
            let profile = classify(&b)?;
            emit(format, &ProfileView::new(&b, &profile), ProfileView::human)?;
        }
        Command::Nuclei {
            file,
            orders,
            brute,
            cap,
            format,
        } => {
            let b = read_bundle(&file)?;
            let orders = orders
                .into_iter()
                .map(NucleusOrder::new)
                .collect::<Result<Vec<_>, _>>()?;
            let report = nucleus_report(&b.table, &orders, strategy(brute, cap))?;
            emit(format, &NucleiView::new(&b, &report), NucleiView::human)?;
        }
        Command::Verify {
            file,
            brute,
            cap,
            format,
        } => {
            let b = read_bundle(&file)?;
            let report = nucleus_report(&b.table, &NucleusOrder::ALL, strategy(brute, cap))?;
            let theorems = containments(&report)?;
            emit(format, &TheoremView::new(&b, &theorems), TheoremView::human)?;
            if !theorems.all_hold() {
                return Err(Failure::Internal(
                    "a nucleus containment is violated".into(),
                ));
            }
        }
        Command::Construct {
            kind,
            group,
            subgroup,
        } => {
            let gb = read_bundle(&group)?;
            let g = GroupTable::from_bundle(&gb)?;
            let labels = split_labels(&subgroup);
            let h = SubgroupSpec::from_labels(&g, &labels)?;
            let what = format!("{} by {{{}}}", gb.name, labels.join(", "));
            let bundle = match kind {
                ConstructKind::Quotient => {
                    StructureBundle::new(format!("{}/H", gb.name), quotient_hypergroup(&g, &h)?)
                        .with_provenance(format!("left cosets of {what}"))
                }
                ConstructKind::DoubleCoset => {
                    let mut b = double_coset_algebra(&g, &h)?;
                    b.name = format!("{}//H", gb.name);
                    b.with_provenance(format!("double cosets of {what}"))
                }
            };
            out(&serialize_structure(&bundle))?;
        }
        Command::Search {
            order,
            require,
            seed,
            budget,
            count,
            cell_size_max,
            out_dir,
        } => {
            let spec = SearchSpec {
                order,
                required: parse_requirements(&require)?,
                cell_size_max: cell_size_max.unwrap_or(order),
                seed,
                node_budget: budget,
                count,
            };
            let outcome = search_structures(&spec)?;
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir)
                    .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
            }
            for b in &outcome.structures {
                let text = serialize_structure(b);
                match &out_dir {
                    Some(dir) => {
                        let path = dir.join(format!("{}.json", b.name));
                        fs::write(&path, text)
                            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    }
                    None => out(&text)?,
                }
            }
            let state = if outcome.exhausted {
                "search space exhausted"
            } else if outcome.budget_hit {
                "node budget reached"
            } else {
                "requested count reached"
            };
            eprintln!(
                "{} structure(s), {} nodes, {state}",
                outcome.structures.len(),
                outcome.nodes
            );
        }
        Command::Fixtures { action } => match action {
            FixtureAction::List => {
                let mut s = String::new();
                for f in &fixtures::FIXTURES {
                    let b = f.bundle();
                    s += &format!(
                        "{:<14} order {:<3} {}\n",
                        f.id,
                        b.table.order(),
                        b.provenance.as_deref().unwrap_or("")
                    );
                }
                out(&s)?;
            }
            FixtureAction::Dump { id } => {
                let f = fixtures::find(&id)
                    .ok_or_else(|| Failure::Input(format!("unknown fixture {id:?}")))?;
                out(&serialize_structure(&f.bundle()))?;
            }
            FixtureAction::Check {
                cap_single,
                cap_pair,
                format,
            } => {
                let caps = OracleCaps {
                    single: cap_single,
                    pair: cap_pair,
                };
                let checks = fixtures::check_all(caps)?;
                emit(format, &checks, |c| fixture_checks_human(c))?;
                if !checks.iter().all(|c| c.passed()) {
                    return Err(Failure::Internal("fixture regression failed".into()));
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(2)
        }
    }
}
