//! `nmg`: verify, search, analyze, and audit labeled mixed graphs stored
//! in `.nmg` files.
//!
//! Exit codes: 0 success or true verdict, 1 property false, 2 usage or
//! parse error, 3 search budget exhausted before exhaustion.

use clap::{Parser, Subcommand};
use nmgraph::graph::{order_bound, NMGraph, Params};
use nmgraph::hom::{absolute_clique_number, chromatic_number, find_homomorphism, Chromatic};
use nmgraph::io::{parse_nmg, write_nmg};
use nmgraph::search::{
    search_extremal, verify_corpus, verify_witness, GraphClass, SearchConfig, SearchStatus,
};
use nmgraph::seeing::{sees, SeeWitness};
use nmgraph::structure::{audit, Verdict};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "nmg", version, about = "Mixed graphs with typed arcs and edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the planar order bound 3(2n+m)^2 + (2n+m) + 1.
    Bound { n: u32, m: u32 },
    /// Verify a witness file: class membership, completeness, order bound.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "any")]
        class: GraphClass,
    },
    /// Print the witness that u sees v, or NONE.
    Sees { file: PathBuf, u: usize, v: usize },
    /// Print a homomorphism from the first graph to the second, or NONE.
    Hom { gfile: PathBuf, hfile: PathBuf },
    /// Print the least order of a homomorphic image.
    Chi {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Print the largest subset inducing a complete subgraph.
    Clique { file: PathBuf },
    /// Search for the largest class-constrained complete graph.
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "any")]
        class: GraphClass,
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value_t = 60)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the witness graph.
        #[arg(long, default_value = "witness.nmg")]
        out: PathBuf,
    },
    /// Audit a planar complete graph against the counting inequalities.
    Audit {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check every row of a witness corpus manifest.
    VerifyCorpus { dir: PathBuf },
}

fn load(path: &PathBuf) -> Result<NMGraph, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })?;
    parse_nmg(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn params_for(n: u32, m: u32) -> Result<Params, ExitCode> {
    Params::new(n, m).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Bound { n, m } => {
            let params = params_for(n, m)?;
            match order_bound(params) {
                Ok(b) => {
                    println!("{b}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Err(ExitCode::from(2))
                }
            }
        }
        Command::Verify { file, class } => {
            let g = load(&file)?;
            let report = verify_witness(&g, class);
            println!("class {}: {}", class, if report.class_ok { "yes" } else { "no" });
            match report.seeing.blaming_pair.or(report.identification.blaming_pair) {
                None => println!("complete: yes"),
                Some((u, v)) => println!("complete: no (pair {u},{v})"),
            }
            match report.bound {
                Some(b) => println!("order: {} (bound {b})", report.order),
                None => println!("order: {} (bound not applicable)", report.order),
            }
            Ok(if report.passes() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Sees { file, u, v } => {
            let g = load(&file)?;
            if u >= g.order() || v >= g.order() || u == v {
                eprintln!("error: vertices must be distinct and within 0..{}", g.order());
                return Err(ExitCode::from(2));
            }
            match sees(&g, u, v).expect("vertices validated") {
                Some(SeeWitness::Adjacent) => {
                    println!("ADJACENT");
                    Ok(ExitCode::SUCCESS)
                }
                Some(SeeWitness::SpecialPath { middle, labels }) => {
                    println!("SPECIAL {middle} ({},{})", labels.0, labels.1);
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("NONE");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Hom { gfile, hfile } => {
            let g = load(&gfile)?;
            let h = load(&hfile)?;
            match find_homomorphism(&g, &h) {
                Ok(Some(mapping)) => {
                    let words: Vec<String> =
                        mapping.map.iter().map(|t| t.to_string()).collect();
                    println!("{}", words.join(" "));
                    Ok(ExitCode::SUCCESS)
                }
                Ok(None) => {
                    println!("NONE");
                    Ok(ExitCode::from(1))
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Err(ExitCode::from(2))
                }
            }
        }
        Command::Chi { file, limit } => {
            let g = load(&file)?;
            let limit = limit.unwrap_or_else(|| g.order().max(1));
            if limit < 1 {
                eprintln!("error: --limit must be at least 1");
                return Err(ExitCode::from(2));
            }
            match chromatic_number(&g, limit) {
                Chromatic::Value(k) => {
                    println!("{k}");
                    Ok(ExitCode::SUCCESS)
                }
                Chromatic::ExceedsLimit => {
                    println!("exceeds limit {limit}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Clique { file } => {
            let g = load(&file)?;
            let (size, witness) = absolute_clique_number(&g);
            println!("{size} {witness}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { n, m, class, max_order, budget, threads, seed, out } => {
            let params = params_for(n, m)?;
            let config = SearchConfig {
                params,
                graph_class: class,
                max_order,
                time_budget: Duration::from_secs(budget),
                thread_count: threads,
                seed,
                trust_order_bound: false,
            };
            let outcome = search_extremal(&config).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?;
            let status = match outcome.status {
                SearchStatus::Exhausted => "exhausted",
                SearchStatus::BudgetExhausted => "budget-exhausted",
            };
            println!(
                "best_order {} status {status} nodes {}",
                outcome.best_order, outcome.nodes_explored
            );
            std::fs::write(&out, write_nmg(&outcome.witness)).map_err(|e| {
                eprintln!("error: cannot write {}: {e}", out.display());
                ExitCode::from(2)
            })?;
            println!("witness written to {}", out.display());
            Ok(match outcome.status {
                SearchStatus::Exhausted => ExitCode::SUCCESS,
                SearchStatus::BudgetExhausted => ExitCode::from(3),
            })
        }
        Command::Audit { file, json } => {
            let g = load(&file)?;
            let report = audit(&g, &file.display().to_string());
            println!("case: {}", report.case);
            let q = &report.quantities;
            println!(
                "quantities: p={} k={:?} i={:?} j={:?} s_max={:?} E={:?} |V|={}",
                q.p, q.k, q.i, q.j, q.s_max, q.excess, q.order
            );
            match report.bound {
                Some(b) => println!("bound: {b}"),
                None => println!("bound: not applicable"),
            }
            for r in &report.inequalities {
                println!(
                    "  {} [{}] {} <= {} : {}",
                    r.name,
                    if r.hypothesis_holds { "applies" } else { "vacuous" },
                    r.lhs,
                    r.rhs,
                    if r.satisfied { "ok" } else { "VIOLATED" }
                );
            }
            println!("verdict: {}", report.verdict.as_str());
            if let Some(path) = json {
                std::fs::write(&path, report.to_json_string()).map_err(|e| {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    ExitCode::from(2)
                })?;
            }
            Ok(match report.verdict {
                Verdict::Ok => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            })
        }
        Command::VerifyCorpus { dir } => {
            let results = verify_corpus(&dir).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?;
            let mut all_ok = true;
            for r in &results {
                all_ok &= r.passed;
                println!(
                    "{} {}: {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.row.file,
                    r.detail
                );
            }
            println!("{} rows, {} failed", results.len(), results.iter().filter(|r| !r.passed).count());
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(code) => code,
    }
}
