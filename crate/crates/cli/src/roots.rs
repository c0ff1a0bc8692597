use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use tilelab_core::poly::{multiplicity, parse_coeff_list, parse_json, parse_scalar, Scalar};
use tilelab_core::vieta::{ordered_patterns, CaseOutcome};
use tilelab_core::{
    find_roots, CaseOrder, DynPoly, FindOptions, Mode, MultiplicityPattern, Root, RootSet, RootValue, SolveConfig,
    VietaError,
};

use crate::error::CliError;
use crate::output::Outcome;
use crate::puzzle::read_input;
use crate::{ModeArg, OrderArg, PolyInput, RootsCmd, SolverArgs};

pub fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Real => Mode::Real,
        ModeArg::Complex => Mode::Complex,
    }
}

fn order(o: Option<OrderArg>) -> Option<CaseOrder> {
    o.map(|o| match o {
        OrderArg::FewestRoots => CaseOrder::FewestRootsFirst,
        OrderArg::MostRoots => CaseOrder::MostRootsFirst,
    })
}

pub fn find_options(s: &SolverArgs) -> Result<FindOptions, CliError> {
    if !(s.tol > 0.0) || s.starts == 0 || s.max_iters == 0 {
        return Err(CliError::Usage("--tol, --starts and --max-iters must be positive".into()));
    }
    Ok(FindOptions {
        config: SolveConfig { tol: s.tol, max_iters: s.max_iters, starts: s.starts },
        order: order(s.order),
    })
}

pub fn read_poly(input: &PolyInput) -> Result<DynPoly, CliError> {
    match (&input.poly, &input.poly_file) {
        (Some(text), _) => Ok(parse_coeff_list(text)?),
        (None, Some(path)) => poly_from_json(&serde_json::from_str(&read_input(path)?)?),
        (None, None) => Err(CliError::Usage("one of --poly or --poly-file is required".into())),
    }
}

/// Accepts the JSON polynomial format or a text coefficient list in a string.
pub fn poly_from_json(v: &serde_json::Value) -> Result<DynPoly, CliError> {
    match v {
        serde_json::Value::String(s) => Ok(parse_coeff_list(s)?),
        other => Ok(parse_json(other)?),
    }
}

/// Result of a root search, including the case-by-case trail.
#[derive(Serialize)]
pub struct RootsDoc {
    pub mode: Mode,
    pub roots: Vec<Root>,
    /// Number of distinct roots; absent when no pattern was solved.
    pub tau: Option<usize>,
    /// Label of the solved pattern.
    pub case: Option<String>,
    pub no_real_roots: bool,
    pub outcomes: Vec<CaseOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<RootSet>,
}

/// Runs the search; `Ok((doc, solved))`.
pub fn search(p: &DynPoly, m: Mode, opts: &FindOptions) -> Result<(RootsDoc, bool), CliError> {
    match find_roots(p, m, opts) {
        Ok(r) => Ok((
            RootsDoc {
                mode: m,
                tau: Some(r.tau),
                roots: r.roots.roots,
                case: Some(r.case.label()),
                no_real_roots: false,
                outcomes: r.outcomes,
                oracle: r.oracle,
            },
            true,
        )),
        Err(VietaError::NoPatternSolved { outcomes, no_real_roots }) => Ok((
            RootsDoc {
                mode: m,
                roots: Vec::new(),
                tau: no_real_roots.then_some(0),
                case: None,
                no_real_roots,
                outcomes,
                oracle: None,
            },
            false,
        )),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

fn roots_text(doc: &RootsDoc) -> String {
    let mut t = String::new();
    for o in &doc.outcomes {
        let status = if o.is_solved() {
            "solved"
        } else if o.is_inconsistent() {
            "inconsistent"
        } else {
            "no convergence"
        };
        let _ = writeln!(t, "case {:<8} {status}", o.pattern.label());
    }
    match (doc.tau, &doc.case) {
        (Some(tau), Some(case)) => {
            let _ = writeln!(t, "tau {tau} (case {case})");
            for r in &doc.roots {
                let _ = writeln!(t, "  {}  mult {}  residual {:.3e}", value_text(r.value), r.mult, r.residual);
            }
        }
        (Some(0), None) => t.push_str("no real roots\n"),
        _ => t.push_str("no pattern solved\n"),
    }
    t
}

fn value_text(v: RootValue) -> String {
    match v {
        RootValue::Real(x) => format!("{x:.15}"),
        RootValue::Complex(z) => format!("{:.15} {:+.15}i", z.re, z.im),
    }
}

#[derive(Serialize)]
struct VerifyDoc {
    root: RootValue,
    residual: f64,
    tol: f64,
    is_root: bool,
    multiplicity: Option<usize>,
}

#[derive(Serialize)]
struct CasesDoc {
    degree: usize,
    mode: Mode,
    order: CaseOrder,
    patterns: Vec<MultiplicityPattern>,
}

pub fn run(cmd: RootsCmd) -> Result<Outcome, CliError> {
    match cmd {
        RootsCmd::Find { poly, mode: m, solver } => {
            let p = read_poly(&poly)?;
            let opts = find_options(&solver)?;
            let (doc, solved) = search(&p, mode(m), &opts)?;
            let text = roots_text(&doc);
            Ok(Outcome::new(doc, text, if solved { 0 } else { 1 }))
        }
        RootsCmd::Verify { poly, root, tol } => {
            if !(tol > 0.0) {
                return Err(CliError::Usage("--tol must be positive".into()));
            }
            let p = read_poly(&poly)?;
            let candidate = parse_scalar(&root)?;
            let (value, residual, mult) = match (&p, &candidate) {
                // Exact evaluation and exact division.
                (DynPoly::Rational(q), Scalar::Rational(r)) => {
                    let residual = q.eval(r).abs().to_f64().unwrap_or(f64::INFINITY);
                    let x = candidate.to_complex();
                    let mult = multiplicity(q, r, tol).ok().or_else(|| multiplicity(&p.to_complex(), &x, tol).ok());
                    (RootValue::Real(x.re), residual, mult)
                }
                _ => {
                    let z: Complex64 = candidate.to_complex();
                    let pc = p.to_complex();
                    let residual = pc.eval(&z).norm();
                    let value = if z.im == 0.0 { RootValue::Real(z.re) } else { RootValue::Complex(z) };
                    (value, residual, multiplicity(&pc, &z, tol).ok())
                }
            };
            let is_root = residual <= tol;
            let text = format!(
                "{} {}\nresidual {residual:.3e}\nmultiplicity {}",
                value_text(value),
                if is_root { "is a root" } else { "is not a root" },
                mult.map_or("-".into(), |m| m.to_string())
            );
            let doc = VerifyDoc { root: value, residual, tol, is_root, multiplicity: if is_root { mult } else { None } };
            Ok(Outcome::new(doc, text, if is_root { 0 } else { 1 }))
        }
        RootsCmd::Cases { degree, mode: m, order: o } => {
            if degree == 0 {
                return Err(CliError::Usage("--degree must be at least 1".into()));
            }
            let m = mode(m);
            let ord = order(o).unwrap_or(CaseOrder::default_for(m));
            let patterns = ordered_patterns(degree, m, ord);
            let text = patterns.iter().map(|p| p.label()).collect::<Vec<_>>().join("\n");
            Ok(Outcome::ok(CasesDoc { degree, mode: m, order: ord, patterns }, text))
        }
    }
}
