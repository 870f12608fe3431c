//! `minbal`: command-line access to minimal balanced families, core checks
//! and the lemma searches.
//!
//! Structured JSON goes to standard output, diagnostics to standard error.
//! Exit codes: 0 success or true verdict, 1 false verdict, 2 input error,
//! 3 resource budget exceeded (or, for `core --method both`, a disagreement
//! between the two methods).

mod lemma;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use minbal::doc::{self, CatalogDoc, CoreReportDoc, PartitionTableDoc, PointSetDoc, VerdictDoc, VerificationDoc};
use minbal::enumeration::{enumerate_minimal_balanced, Budget, BUDGET_ENV};
use minbal::game::{core_direct, core_via_theorem1, random_games, Game};
use minbal::geometry::{cross_polytope, signed_simplex, simplex_edge_midpoints};
use minbal::lemmas::{generate_disc_triangulation, DiscKind};
use minbal::partitions::{check_alternating_identity, count_labeled_minimal};
use minbal::two_subset::verify_theorem1;
use minbal::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "minbal", version, about = "Minimal balanced families, core checks and discrete fixed-point lemmas")]
struct Cli {
    /// Cap on subsets (or families) examined; overrides MINBAL_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print BS(V), the minimal balanced subsets of a point set, with witnesses.
    Bs { points: PathBuf },
    /// Compare the odd-cycle generator with geometric enumeration of V_d.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1 {
        #[arg(long)]
        d: u32,
    },
    /// Tabulate q(d), b(d) and labelled counts, checking the alternating identity.
    Partitions {
        #[arg(long)]
        max_d: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide whether a game's core is empty.
    Core {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Cross-validate both core methods on seeded random games.
    #[command(name = "cross-validate")]
    CrossValidate {
        #[arg(long, default_value_t = 1000)]
        games: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        min_d: u32,
        #[arg(long, default_value_t = 6)]
        max_d: u32,
    },
    /// Run a lemma search on a labelled complex.
    Lemma {
        #[command(subcommand)]
        lemma: lemma::LemmaCommand,
    },
    /// Write standard point sets and triangulations as documents.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// V_d, the cross polytope, or the signed simplex.
    Points {
        #[arg(value_enum)]
        kind: PointKind,
        #[arg(long)]
        d: u32,
    },
    /// A subdivided simplex (with carriers), a symmetric 2-disc, or a path.
    Complex {
        #[arg(value_enum)]
        kind: ComplexKind,
        /// Simplex dimension.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Subdivision parameter, boundary size, or path length.
        #[arg(long)]
        size: usize,
        /// Interior vertices of a symmetric disc (0, 1 or 2).
        #[arg(long, default_value_t = 1)]
        interior: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PointKind {
    Vd,
    Cross,
    SignedSimplex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexKind {
    Simplex,
    Disc,
    Path,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Theorem1,
    Both,
}

/// What a command hands back to `main`: a document and a verdict.
pub(crate) struct Outcome {
    payload: String,
    verdict: bool,
}

impl Outcome {
    pub(crate) fn json<T: serde::Serialize>(doc: &T, verdict: bool) -> Self {
        Outcome {
            payload: doc::to_json(doc),
            verdict,
        }
    }
}

pub(crate) enum Failure {
    Input(String),
    Budget(String),
    Disagreement(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

pub(crate) fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.map(Budget::new).unwrap_or_else(Budget::from_env);
    match run(cli.command, budget) {
        Ok(out) => {
            print!("{}", out.payload);
            ExitCode::from(if out.verdict { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}; raise --budget or {BUDGET_ENV}");
            ExitCode::from(3)
        }
        Err(Failure::Disagreement(payload, msg)) => {
            print!("{payload}");
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command, budget: Budget) -> Result<Outcome, Failure> {
    match command {
        Command::Bs { points } => {
            let v = doc::parse_point_set(&read(&points)?)?;
            let catalog = enumerate_minimal_balanced(&v, budget)?;
            eprintln!("{} minimal balanced subsets", catalog.len());
            Ok(Outcome::json(&CatalogDoc::from(&catalog), true))
        }
        Command::VerifyTheorem1 { d } => {
            let report = verify_theorem1(d, budget)?;
            eprintln!(
                "d = {d}: generator {} families, geometric {} sets",
                report.generated, report.geometric
            );
            Ok(Outcome::json(&VerificationDoc::from(&report), report.equal()))
        }
        Command::Partitions { max_d, format } => {
            let report = check_alternating_identity(max_d);
            let labeled: Vec<Option<String>> = (0..=max_d)
                .map(|d| count_labeled_minimal(d).ok().map(|c| c.to_string()))
                .collect();
            let table = PartitionTableDoc::new(&report, &labeled);
            let payload = match format {
                Format::Json => doc::to_json(&table),
                Format::Table => table.to_table(),
            };
            Ok(Outcome {
                payload,
                verdict: table.identity_holds,
            })
        }
        Command::Core { game, method } => {
            let game = doc::parse_game(&read(&game)?)?;
            core(&game, method, budget)
        }
        Command::CrossValidate {
            games,
            seed,
            min_d,
            max_d,
        } => cross_validate(games, seed, min_d, max_d, budget),
        Command::Lemma { lemma } => lemma::run(lemma, budget),
        Command::Generate { what } => generate(what),
    }
}

fn core(game: &Game, method: Method, budget: Budget) -> Result<Outcome, Failure> {
    let mut verdicts = Vec::new();
    if method != Method::Theorem1 {
        verdicts.push(VerdictDoc::new("direct", &core_direct(game), game));
    }
    if method != Method::Direct {
        verdicts.push(VerdictDoc::new("theorem1", &core_via_theorem1(game, budget)?, game));
    }
    let agree = verdicts.windows(2).all(|w| w[0].nonempty == w[1].nonempty);
    let verified = verdicts.iter().all(|v| v.certificate_verified);
    let report = CoreReportDoc {
        d: game.d(),
        grand: minbal::rational::format(game.grand()),
        defaulted_pairs: game.defaulted_pairs().iter().map(|&(i, j)| [i, j]).collect(),
        agree: (method == Method::Both).then_some(agree),
        verdicts,
    };
    if !agree || !verified {
        let msg = if agree {
            "a returned certificate failed exact verification"
        } else {
            "direct and theorem1 methods disagree"
        };
        return Err(Failure::Disagreement(doc::to_json(&report), msg.into()));
    }
    let nonempty = report.verdicts[0].nonempty;
    eprintln!("core is {}", if nonempty { "nonempty" } else { "empty" });
    Ok(Outcome::json(&report, nonempty))
}

fn cross_validate(count: usize, seed: u64, min_d: u32, max_d: u32, budget: Budget) -> Result<Outcome, Failure> {
    if min_d < 2 || min_d > max_d {
        return Err(Failure::Input(format!("need 2 <= min-d <= max-d, got {min_d}..{max_d}")));
    }
    let games = random_games(seed, count, min_d..=max_d);
    let mut nonempty = 0;
    let mut disagreements = Vec::new();
    let mut unverified = 0;
    for (k, g) in games.iter().enumerate() {
        let direct = core_direct(g);
        let family = core_via_theorem1(g, budget)?;
        if !direct.verifies(g) || !family.verifies(g) {
            unverified += 1;
        }
        if direct.nonempty != family.nonempty {
            disagreements.push(json!({ "index": k, "game": doc::GameDoc::from(g) }));
        }
        nonempty += direct.nonempty as usize;
    }
    let summary = json!({
        "games": count,
        "seed": seed,
        "min_d": min_d,
        "max_d": max_d,
        "nonempty": nonempty,
        "empty": count - nonempty,
        "agree": disagreements.is_empty(),
        "certificates_verified": unverified == 0,
        "disagreements": disagreements,
    });
    if !disagreements.is_empty() || unverified > 0 {
        return Err(Failure::Disagreement(
            doc::to_json(&summary),
            format!("{} disagreements, {unverified} unverified certificates", disagreements.len()),
        ));
    }
    eprintln!("{count} games agree ({nonempty} nonempty)");
    Ok(Outcome::json(&summary, true))
}

fn generate(what: Generate) -> Result<Outcome, Failure> {
    match what {
        Generate::Points { kind, d } => {
            let v = match kind {
                PointKind::Vd => simplex_edge_midpoints(d)?,
                PointKind::Cross => cross_polytope(d as usize)?.0,
                PointKind::SignedSimplex => signed_simplex(d as usize)?.0,
            };
            Ok(Outcome::json(&PointSetDoc::from(&v), true))
        }
        Generate::Complex {
            kind,
            dim,
            size,
            interior,
        } => {
            let kind = match kind {
                ComplexKind::Simplex => DiscKind::SubdividedSimplex { dim, k: size },
                ComplexKind::Disc => DiscKind::SymmetricDisc {
                    boundary: size,
                    interior,
                },
                ComplexKind::Path => DiscKind::Path { edges: size },
            };
            let g = generate_disc_triangulation(kind)?;
            Ok(Outcome::json(
                &doc::ComplexDoc::new(&g.triangulation, None, g.carriers.as_ref()),
                true,
            ))
        }
    }
}
