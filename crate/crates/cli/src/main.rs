//! `unitforge`: command line access to the library's computations and checks.
//!
//! Exit status is 0 when every check passes, 1 when some check fails and 2
//! for usage or input errors.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::Family;
use unitforge::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "unitforge",
    version,
    about = "Exact unit computations in integral group rings"
)]
struct Cli {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, env = "UNITFORGE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog groups.
    Groups {
        #[command(subcommand)]
        action: GroupsAction,
    },
    /// Properties of one group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Construct bicyclic or Bass units.
    Units {
        #[command(subcommand)]
        kind: UnitKind,
    },
    /// Sweep unit identities over groups.
    Verify {
        #[command(subcommand)]
        family: VerifyFamily,
    },
    /// Abelianize a presentation file or catalog entry.
    Abelianize {
        /// JSON presentation file, or a catalog id such as `V(ZS3)` or `S3`.
        source: String,
    },
    /// The embedded unit group presentations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check an integer-valued weight homomorphism on a catalog presentation.
    Kappa {
        id: String,
        /// JSON object mapping generator names to integer weights.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Class counts, L-sets and the rank of the centre.
    Invariants { group: String },
    /// Checks in the 2x2 matrix model for dihedral groups of order 2p.
    Dihedral2p {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[command(subcommand)]
        action: DihedralAction,
    },
}

#[derive(Subcommand)]
enum GroupsAction {
    List {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// A catalog name or a JSON Cayley table file.
    Info { name: String },
}

#[derive(Subcommand)]
enum UnitKind {
    /// `b(g, h)^power`.
    Bicyclic {
        #[arg(long)]
        group: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        power: i64,
    },
    /// `u_{k,m}(g)`; `m` defaults to Euler's totient of the order of `g`.
    Bass {
        #[arg(long)]
        group: String,
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        m: Option<u64>,
    },
}

#[derive(clap::Args)]
struct Scope {
    /// A single group; the whole catalog when omitted.
    #[arg(long, conflicts_with = "all")]
    group: Option<String>,
    /// Every catalog group up to `--max-order` (the default).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 16)]
    max_order: usize,
}

#[derive(Subcommand)]
enum VerifyFamily {
    /// One of the eight Bass unit rules.
    Eq {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        rule: u8,
        #[command(flatten)]
        scope: Scope,
    },
    /// Products of commutators with powers of `h` against powers of `b(g, h)`.
    Prop31 {
        #[command(flatten)]
        scope: Scope,
    },
    /// Commutators of Bass units with `h` normalizing `<g>`.
    Lemma33 {
        #[command(flatten)]
        scope: Scope,
    },
    /// Conjugation of Bass units by `h` normalizing `<g>`.
    Lemma34 {
        #[command(flatten)]
        scope: Scope,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    Verify,
}

#[derive(Subcommand)]
enum DihedralAction {
    Verify,
}

fn run(cli: &Cli) -> anyhow::Result<report::Outcome> {
    let sweep = |family, scope: &Scope| commands::verify(family, scope.group.as_deref(), scope.max_order);
    match &cli.command {
        Command::Groups {
            action: GroupsAction::List { max_order },
        } => commands::groups_list(*max_order),
        Command::Group {
            action: GroupAction::Info { name },
        } => commands::group_info(name),
        Command::Units { kind } => match kind {
            UnitKind::Bicyclic { group, g, h, power } => commands::units_bicyclic(group, g, h, *power),
            UnitKind::Bass { group, g, k, m } => commands::units_bass(group, g, *k, *m),
        },
        Command::Verify { family } => match family {
            VerifyFamily::Eq { rule, scope } => sweep(Family::BassRule(*rule), scope),
            VerifyFamily::Prop31 { scope } => sweep(Family::BicyclicCommutators, scope),
            VerifyFamily::Lemma33 { scope } => sweep(Family::BassCommutators, scope),
            VerifyFamily::Lemma34 { scope } => sweep(Family::BassConjugation, scope),
        },
        Command::Abelianize { source } => commands::abelianize(source),
        Command::Catalog {
            action: CatalogAction::Verify,
        } => commands::catalog_verify(),
        Command::Kappa { id, weights } => commands::kappa(id, weights.as_deref()),
        Command::Invariants { group } => commands::invariants(group),
        Command::Dihedral2p {
            p,
            trials,
            action: DihedralAction::Verify,
        } => commands::dihedral_verify(*p, *trials, cli.seed),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", report::to_json(&argv, cli.seed, &outcome));
            } else {
                print!("{}", report::to_text(&outcome, start.elapsed()));
            }
            if outcome.failed() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
