//! Command-line front end. Every command prints JSON on stdout.
//!
//! Exit codes: 0 success (negative answers included), 2 invalid input,
//! 3 unknown verdict, unsupported input or timeout, 4 internal invariant
//! violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use f218::error::{Error, Result};
use f218::lifting::{aut_lift_decision, aut_x_order, involution_trivial_p2_lift};
use f218::linearize::VerdictStatus;
use f218::surface::{delta_singular_points_with, discriminant, z_smooth, SingularRoute, Surface22};
use f218::workbench::json::{
    aut_order_to_json, certificate_to_json, generators_from_json, lift_decision_to_json, parse_json,
    point_to_json, poly_to_json, projmat_from_json, surface_from_json, surface_to_json, verdict_to_json,
};
use f218::workbench::report::verdict_for;
use f218::workbench::{catalog_get, run_catalog, sample_generic, NAMES};

#[derive(Parser)]
#[command(name = "f218", version, about = "Double covers of P1 x P2 branched in (2,2)-divisors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Delta,
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// The discriminant quartic Δ = Q2² − Q1·Q3.
    Discriminant {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Smoothness of Δ or of the branch divisor Z.
    Smooth {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "delta")]
        target: Target,
    },
    /// Involution of P1 × P2 acting only on P1 and preserving Z.
    LiftInvolution {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Whether an automorphism N of Δ lifts to P1 × P2 preserving Z.
    LiftAut {
        #[arg(short, long)]
        input: PathBuf,
        /// JSON 3x3 matrix {"rows": ...}.
        #[arg(short = 'm', long)]
        matrix: PathBuf,
    },
    /// Order of the automorphism group of X over a subgroup of Aut(Δ).
    AutOrder {
        #[arg(short, long)]
        input: PathBuf,
        /// JSON {"generators": [matrix, ...]}.
        #[arg(short, long)]
        generators: PathBuf,
    },
    /// Linearizability verdict for a group of automorphisms of X.
    Verdict {
        #[arg(short, long)]
        input: PathBuf,
        /// JSON {"generators": [...]} or {"elements": [...]} of {"M","N","u"}.
        #[arg(short = 'G', long)]
        group: PathBuf,
        /// The group is cyclic, generated by its single listed generator.
        #[arg(long)]
        cyclic: bool,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Statistics over random integer quadric triples.
    Sample {
        #[arg(short = 'n', long, default_value_t = 1000)]
        count: usize,
        #[arg(short, long, default_value_t = 5)]
        bound: i64,
        #[arg(short, long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Run { name: String },
    /// Print an entry's surface as input JSON.
    Show { name: String },
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text)
}

fn read_surface(path: &PathBuf) -> Result<Surface22> {
    surface_from_json(&read_json(path)?)
}

/// Output and exit code.
fn run(cmd: Command) -> Result<(Value, u8)> {
    match cmd {
        Command::Discriminant { input } => {
            let s = read_surface(&input)?;
            Ok((json!({"delta": poly_to_json(discriminant(&s)?.form())}), 0))
        }
        Command::Smooth { input, target } => {
            let s = read_surface(&input)?;
            match target {
                Target::Delta => {
                    let r = delta_singular_points_with(&s, SingularRoute::Jacobian)?;
                    let pts: Vec<Value> = r
                        .points
                        .iter()
                        .map(|p| json!({"point": point_to_json(&p.point), "node": p.node}))
                        .collect();
                    let code = if r.smooth || !r.points.is_empty() || r.complete { 0 } else { 3 };
                    Ok((json!({"target": "delta", "smooth": r.smooth, "singular_points": pts, "complete": r.complete}), code))
                }
                Target::Z => Ok((json!({"target": "z", "smooth": z_smooth(&s)?}), 0)),
            }
        }
        Command::LiftInvolution { input } => {
            let s = read_surface(&input)?;
            Ok((certificate_to_json(involution_trivial_p2_lift(&s)?.as_ref()), 0))
        }
        Command::LiftAut { input, matrix } => {
            let s = read_surface(&input)?;
            let n = projmat_from_json(&read_json(&matrix)?, Some(s.order()), 3)?;
            Ok((lift_decision_to_json(&aut_lift_decision(&s, n.matrix())?), 0))
        }
        Command::AutOrder { input, generators } => {
            let s = read_surface(&input)?;
            let gens = generators_from_json(&read_json(&generators)?, s.order())?;
            Ok((aut_order_to_json(&aut_x_order(&s, &gens)?), 0))
        }
        Command::Verdict { input, group, cyclic } => {
            let s = read_surface(&input)?;
            let (v, size) = verdict_for(&s, &read_json(&group)?, cyclic)?;
            let mut out = verdict_to_json(&v);
            out["group_size"] = json!(size);
            let code = if v.status == VerdictStatus::Unknown { 3 } else { 0 };
            Ok((out, code))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let entries: Vec<Value> = NAMES
                    .iter()
                    .map(|n| {
                        let e = catalog_get(n).unwrap();
                        json!({"name": e.name, "description": e.description})
                    })
                    .collect();
                Ok((Value::Array(entries), 0))
            }
            CatalogAction::Run { name } => {
                let r = run_catalog(&name)?;
                let code = if r.all_pass() { 0 } else { 4 };
                Ok((r.to_json(true), code))
            }
            CatalogAction::Show { name } => Ok((surface_to_json(&catalog_get(&name)?.surface), 0)),
        },
        Command::Sample { count, bound, seed } => {
            if count == 0 || bound < 1 {
                return Err(Error::Validation("count and bound must be at least 1".into()));
            }
            Ok((serde_json::to_value(sample_generic(count, bound, seed)).unwrap(), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((v, code)) => {
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            ExitCode::from(code)
        }
        Err(e) => {
            let mut out = json!({"error": e.to_string()});
            if let Error::Parse { line, column, .. } = &e {
                out["line"] = json!(line);
                out["column"] = json!(column);
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
