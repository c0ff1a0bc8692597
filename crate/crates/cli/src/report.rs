use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tilelab_core::{claim_report, BoundReport, DynPoly, Kind, Mode, NormClaim, Verdict, VerifyError};

use crate::error::{search_failure, CliError};
use crate::output::Outcome;
use crate::puzzle::read_input;
use crate::roots::{find_options, poly_from_json, search, RootsDoc};
use crate::ReportArgs;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusEntry {
    #[serde(default)]
    name: Option<String>,
    p: Value,
    #[serde(default)]
    q: Option<Value>,
    /// Defaults to real for rational coefficients, complex otherwise.
    #[serde(default)]
    mode: Option<ModeName>,
}

#[derive(Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum ModeName {
    Real,
    Complex,
}

#[derive(Serialize)]
struct PolyEntry {
    index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    p: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Vec<String>>,
    /// Multiplicativity of the max-coefficient norm on `(p, q)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<NormClaim>,
    roots: RootsEntry,
}

#[derive(Serialize)]
#[serde(untagged)]
enum RootsEntry {
    Found(Box<RootsDoc>),
    Error { error: String },
}

#[derive(Serialize, Default)]
struct Summary {
    norm_checks: usize,
    norm_violations: usize,
    roots_solved: usize,
    roots_unsolved: usize,
}

#[derive(Serialize)]
struct ReportDoc {
    bounds: Vec<BoundReport>,
    polynomials: Vec<PolyEntry>,
    summary: Summary,
}

pub fn bounds_text(r: &BoundReport) -> String {
    let v = |x: Verdict| match x {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Untested => "untested",
    };
    let opt = |x: Option<u64>| x.map_or("-".to_string(), |b| b.to_string());
    let mut t = String::new();
    let _ = writeln!(t, "n {}: {} solvable states, diameter {}", r.n, r.ground_truth_count, r.ground_truth_diameter);
    let _ = writeln!(t, "  thm2   diameter <= {:.6}  {}", r.thm2_bound, v(r.verdicts.thm2));
    let _ = writeln!(t, "  thm3   count <= {}  {}", r.thm3_bound, v(r.verdicts.thm3));
    let _ = writeln!(t, "  thm4   count <= {}  {}", opt(r.thm4_bound), v(r.verdicts.thm4));
    let _ = writeln!(t, "  cor1   diameter <= {}  {}", opt(r.cor1_bound), v(r.verdicts.cor1));
    let _ = writeln!(t, "  lemma1 arrangements = {} (observed {})  {}", r.lemma1_count, r.lemma1_observed, v(r.verdicts.lemma1));
    t
}

pub fn run(args: ReportArgs) -> Result<Outcome, CliError> {
    let mut n_list = args.n_list.clone();
    n_list.sort_unstable();
    n_list.dedup();
    if let Some(bad) = n_list.iter().find(|n| !(2..=3).contains(*n)) {
        return Err(CliError::Usage(format!("report audits n = 2 and 3 only, got {bad}")));
    }
    let opts = find_options(&args.solver)?;
    let corpus: Vec<CorpusEntry> = match &args.corpus {
        Some(path) => serde_json::from_str(&read_input(path)?)?,
        None => Vec::new(),
    };

    let limits = args.limits.limits();
    let mut bounds = Vec::new();
    for &n in &n_list {
        bounds.push(claim_report(n, &limits).map_err(|e| match e {
            VerifyError::Search(s) => search_failure(s),
            other => CliError::Usage(other.to_string()),
        })?);
    }

    let mut summary = Summary::default();
    let mut polynomials = Vec::new();
    for (index, entry) in corpus.into_iter().enumerate() {
        let p = poly_from_json(&entry.p).map_err(|e| CliError::Usage(format!("corpus entry {index}: p: {e}")))?;
        let q = entry
            .q
            .as_ref()
            .map(poly_from_json)
            .transpose()
            .map_err(|e| CliError::Usage(format!("corpus entry {index}: q: {e}")))?;
        let norm = match &q {
            Some(q) => Some(p.norm_claim_check(q).map_err(|e| CliError::Usage(format!("corpus entry {index}: {e}")))?),
            None => None,
        };
        if let Some(claim) = &norm {
            summary.norm_checks += 1;
            summary.norm_violations += usize::from(matches!(claim, NormClaim::Violated { .. }));
        }
        let mode = match entry.mode {
            Some(ModeName::Real) => Mode::Real,
            Some(ModeName::Complex) => Mode::Complex,
            None if p.kind() == Kind::Rational => Mode::Real,
            None => Mode::Complex,
        };
        let roots = if p.degree().unwrap_or(0) == 0 {
            RootsEntry::Error { error: "polynomial must have degree at least 1".into() }
        } else {
            match search(&p, mode, &opts) {
                Ok((doc, solved)) => {
                    if solved || doc.no_real_roots {
                        summary.roots_solved += 1;
                    } else {
                        summary.roots_unsolved += 1;
                    }
                    RootsEntry::Found(Box::new(doc))
                }
                Err(e) => RootsEntry::Error { error: e.to_string() },
            }
        };
        polynomials.push(PolyEntry {
            index,
            name: entry.name,
            p: p.coeff_strings(),
            q: q.as_ref().map(DynPoly::coeff_strings),
            norm,
            roots,
        });
    }

    let mut text = String::new();
    for b in &bounds {
        text.push_str(&bounds_text(b));
    }
    let _ = writeln!(
        text,
        "polynomials: {} ({} norm checks, {} violations; roots settled for {}, unsettled for {})",
        polynomials.len(),
        summary.norm_checks,
        summary.norm_violations,
        summary.roots_solved,
        summary.roots_unsolved
    );
    Ok(Outcome::ok(ReportDoc { bounds, polynomials, summary }, text))
}
