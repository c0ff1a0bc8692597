use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::Serialize;
use tilelab_core::bignum::BigUint;
use tilelab_core::cost::{instrumented_exhaust, PerPrimitive};
use tilelab_core::search::{exhaust_sequences, solve_with, TableSummary};
use tilelab_core::verify::verify_with_ledger;
use tilelab_core::{
    budget, claim_report, enumerate_reachable, is_solvable, Algorithm, BudgetKind, CostLedger, MoveSeq, SearchError,
    TileGrid, VerifyError,
};

use crate::error::{search_failure, CliError};
use crate::output::Outcome;
use crate::{Algo, PuzzleCmd};

pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

fn read_grid(path: &Path) -> Result<TileGrid, CliError> {
    Ok(TileGrid::parse_any(&read_input(path)?)?)
}

fn parse_seq(s: &str) -> Result<MoveSeq, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("bad move sequence: {e}")))
}

#[derive(Serialize)]
struct SolveDoc {
    solvable: bool,
    algorithm: &'static str,
    psi: Option<usize>,
    seq: Option<MoveSeq>,
    expanded: Option<u64>,
}

#[derive(Serialize)]
struct VerifyDoc {
    valid: bool,
    decisions: u64,
    k: usize,
}

#[derive(Serialize)]
struct CostDoc {
    n: usize,
    k: usize,
    valid: bool,
    decisions: u64,
    #[serde(serialize_with = "tilelab_core::bignum::serialize_big")]
    ceiling: BigUint,
    within: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_primitive: Option<PerPrimitive>,
}

#[derive(Serialize)]
struct ExhaustDoc {
    found: bool,
    k_max: usize,
    psi: Option<usize>,
    seq: Option<MoveSeq>,
    expanded: Option<u64>,
    decisions: u64,
    #[serde(serialize_with = "tilelab_core::bignum::serialize_big")]
    ceiling: BigUint,
    within: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_primitive: Option<PerPrimitive>,
}

#[derive(Serialize)]
struct StateEntry<'a> {
    cells: &'a [Option<u16>],
    depth: usize,
}

#[derive(Serialize)]
struct TableFile<'a> {
    #[serde(flatten)]
    summary: &'a TableSummary,
    states: Vec<StateEntry<'a>>,
}

pub fn run(cmd: PuzzleCmd) -> Result<Outcome, CliError> {
    match cmd {
        PuzzleCmd::Solve { grid, algo, kmax, limits } => {
            let g = read_grid(&grid.input)?;
            let limits = limits.limits();
            let (name, result) = match algo {
                Algo::Auto => ("auto", solve_with(&g, Algorithm::Auto, &limits)),
                Algo::Bfs => ("bfs", solve_with(&g, Algorithm::Bfs, &limits)),
                Algo::Ida => ("ida", solve_with(&g, Algorithm::IdaStar, &limits)),
                Algo::Exhaust if !is_solvable(&g) => ("exhaust", Err(SearchError::Unsolvable)),
                Algo::Exhaust => ("exhaust", exhaust_sequences(&g, kmax, &limits)),
            };
            match result {
                Ok(r) => {
                    let text = format!("psi {}\nseq {}\nexpanded {}", r.psi, r.seq, r.expanded);
                    let doc = SolveDoc {
                        solvable: true,
                        algorithm: name,
                        psi: Some(r.psi),
                        seq: Some(r.seq),
                        expanded: Some(r.expanded),
                    };
                    Ok(Outcome::ok(doc, text))
                }
                Err(SearchError::Unsolvable) => {
                    let doc = SolveDoc { solvable: false, algorithm: name, psi: None, seq: None, expanded: None };
                    Ok(Outcome::new(doc, "unsolvable".into(), 1))
                }
                Err(SearchError::NotFound { k_max }) => {
                    let doc = SolveDoc { solvable: true, algorithm: name, psi: None, seq: None, expanded: None };
                    let mut o = Outcome::new(doc, format!("no solution of length <= {k_max}"), 1);
                    o.diagnostic = Some(format!("no solution of length <= {k_max}; raise --kmax"));
                    Ok(o)
                }
                Err(e) => Err(search_failure(e)),
            }
        }
        PuzzleCmd::Verify { grid, seq } => {
            let g = read_grid(&grid.input)?;
            let seq = parse_seq(&seq)?;
            let (valid, ledger) = verify_with_ledger(&g, &seq);
            let text = format!("{}\ndecisions {}", if valid { "valid" } else { "invalid" }, ledger.decisions());
            let doc = VerifyDoc { valid, decisions: ledger.decisions(), k: seq.len() };
            Ok(Outcome::new(doc, text, if valid { 0 } else { 1 }))
        }
        PuzzleCmd::Enumerate { n, depth_limit, out, limits } => {
            let table = enumerate_reachable(n, depth_limit, &limits.limits()).map_err(search_failure)?;
            let summary = table.summary();
            if let Some(path) = out {
                let states = table.states();
                let entries: Vec<Vec<Option<u16>>> = states.iter().map(|(g, _)| g.entries()).collect();
                let file = TableFile {
                    summary: &summary,
                    states: entries.iter().zip(&states).map(|(c, (_, d))| StateEntry { cells: c, depth: *d }).collect(),
                };
                let body = serde_json::to_string(&file)?;
                std::fs::write(&path, body).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            }
            let mut text = format!("n {}\ncount {}\ndiameter {}\n", summary.n, summary.count, summary.diameter);
            for (d, c) in summary.depth_histogram.iter().enumerate() {
                let _ = writeln!(text, "depth {d:>2}: {c}");
            }
            Ok(Outcome::ok(&summary, text))
        }
        PuzzleCmd::Bounds { n, limits } => {
            if !(2..=3).contains(&n) {
                return Err(CliError::Usage(format!("bounds need ground truth; --n must be 2 or 3, got {n}")));
            }
            let report = claim_report(n, &limits.limits()).map_err(|e| match e {
                VerifyError::Search(s) => search_failure(s),
                other => CliError::Usage(other.to_string()),
            })?;
            let text = crate::report::bounds_text(&report);
            Ok(Outcome::ok(&report, text))
        }
        PuzzleCmd::Cost { grid, seq, emit_ledger } => {
            let g = read_grid(&grid.input)?;
            let seq = parse_seq(&seq)?;
            let (valid, ledger) = verify_with_ledger(&g, &seq);
            let b = budget(BudgetKind::Verify, g.n() as u64, seq.len() as u64);
            let within = b.admits(ledger.decisions());
            let text = cost_text(&ledger, &b.ceiling.to_string(), within, emit_ledger);
            let doc = CostDoc {
                n: g.n(),
                k: seq.len(),
                valid,
                decisions: ledger.decisions(),
                ceiling: b.ceiling,
                within,
                per_primitive: emit_ledger.then(|| *ledger.per_primitive()),
            };
            Ok(Outcome::ok(doc, text))
        }
        PuzzleCmd::Exhaust { grid, kmax, emit_ledger, limits } => {
            let g = read_grid(&grid.input)?;
            if !is_solvable(&g) {
                let doc = SolveDoc { solvable: false, algorithm: "exhaust", psi: None, seq: None, expanded: None };
                let mut o = Outcome::new(doc, "unsolvable".into(), 1);
                o.diagnostic = Some("grid is not solvable; exhaustive search would never succeed".into());
                return Ok(o);
            }
            let mut ledger = CostLedger::new();
            let result = instrumented_exhaust(&g, kmax, &limits.limits(), &mut ledger);
            let b = budget(BudgetKind::Search, g.n() as u64, kmax as u64);
            let within = b.admits(ledger.decisions());
            let mut text = cost_text(&ledger, &b.ceiling.to_string(), within, emit_ledger);
            let (found, psi, seq, expanded) = match result {
                Ok(r) => {
                    text = format!("psi {}\nseq {}\n{text}", r.psi, r.seq);
                    (true, Some(r.psi), Some(r.seq), Some(r.expanded))
                }
                Err(SearchError::NotFound { .. }) => {
                    text = format!("no solution of length <= {kmax}\n{text}");
                    (false, None, None, None)
                }
                Err(e) => return Err(search_failure(e)),
            };
            let doc = ExhaustDoc {
                found,
                k_max: kmax,
                psi,
                seq,
                expanded,
                decisions: ledger.decisions(),
                ceiling: b.ceiling,
                within,
                per_primitive: emit_ledger.then(|| *ledger.per_primitive()),
            };
            Ok(Outcome::new(doc, text, if found { 0 } else { 1 }))
        }
    }
}

fn cost_text(ledger: &CostLedger, ceiling: &str, within: bool, emit_ledger: bool) -> String {
    let mut text = format!("decisions {}\nceiling {ceiling}\nwithin {within}\n", ledger.decisions());
    if emit_ledger {
        let p = ledger.per_primitive();
        let _ = writeln!(
            text,
            "rho {} tau {} lambda {} sigma {} phi {} compare {}",
            p.rho, p.tau, p.lambda, p.sigma, p.phi, p.compare
        );
    }
    text
}
