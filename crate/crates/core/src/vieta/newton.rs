//! Multi-start damped Gauss-Newton on one Vieta system.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::oracle::oracle_real_roots;
use super::pattern::{Mode, MultiplicityPattern};
use super::system::{modulus, Field, VietaSystem};
use crate::poly::{same_root, Poly, Root, RootValue};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveConfig {
    /// Bound on the coefficient residual max-norm, relative to `max(1, |a|∞)`.
    pub tol: f64,
    pub max_iters: usize,
    pub starts: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { tol: 1e-10, max_iters: 100, starts: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CaseStatus {
    Solved {
        roots: Vec<Root>,
        /// Monic cofactor coefficients, low to high, without the leading 1.
        cofactor: Vec<RootValue>,
        residual: f64,
    },
    Inconsistent {
        reason: String,
    },
    NoConvergence {
        reason: String,
        best_residual: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SolveTrace {
    /// Newton iterations summed over all starts.
    pub iterations: usize,
    pub starts_used: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub pattern: MultiplicityPattern,
    #[serde(flatten)]
    pub status: CaseStatus,
    /// Pattern that converged roots collapsed to under the clustering radius.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub merged_into: Option<MultiplicityPattern>,
    pub trace: SolveTrace,
}

impl CaseOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self.status, CaseStatus::Solved { .. })
    }

    pub fn is_inconsistent(&self) -> bool {
        matches!(self.status, CaseStatus::Inconsistent { .. })
    }
}

/// How one start ended.
#[derive(Debug, Clone)]
enum Run<S> {
    Converged { u: Vec<S>, residual: f64 },
    /// Least-squares stationary point with a residual at or above tolerance.
    Stationary { residual: f64 },
    /// Iteration budget exhausted, stalled without a stationarity certificate, or diverged.
    Unfinished { residual: f64 },
}

/// Solves one case: exact linear presolve first, then multi-start Gauss-Newton.
pub fn solve_case<S: Field>(sys: &VietaSystem<S>, mode: Mode, config: &SolveConfig) -> CaseOutcome {
    solve_case_seeded(sys, mode, config, &[])
}

/// [`solve_case`] with extra starting points tried before the generated ones.
pub fn solve_case_seeded<S: Field>(
    sys: &VietaSystem<S>,
    mode: Mode,
    config: &SolveConfig,
    seeds: &[Vec<S>],
) -> CaseOutcome {
    let pattern = sys.pattern().clone();
    let outcome = |status, trace| CaseOutcome { pattern: pattern.clone(), status, merged_into: None, trace };
    let q = pattern.cofactor_degree();
    if mode == Mode::Real && q % 2 == 1 {
        let reason = format!("a real cofactor of odd degree {q} has a real root");
        return outcome(CaseStatus::Inconsistent { reason }, SolveTrace::default());
    }
    if let Some(status) = presolve(sys, mode, config) {
        return outcome(status, SolveTrace::default());
    }

    let mut starts: Vec<Vec<S>> = seeds.to_vec();
    starts.extend(generate_starts(sys, mode, config.starts));
    let runs: Vec<(Run<S>, usize)> = starts.par_iter().map(|u0| run_start(sys, u0, config)).collect();
    let trace = SolveTrace { iterations: runs.iter().map(|r| r.1).sum(), starts_used: runs.len() };

    let mut best: Option<(f64, Vec<Root>, Vec<RootValue>)> = None;
    let mut merged: Option<MultiplicityPattern> = None;
    let mut violations = Vec::new();
    let mut unfinished_residuals = Vec::new();
    let mut stationary_floor = f64::INFINITY;
    let mut best_residual = f64::INFINITY;
    for (run, _) in &runs {
        match run {
            Run::Converged { u, residual } => {
                best_residual = best_residual.min(*residual);
                match check_constraints(sys, mode, u, config) {
                    Ok((roots, cofactor)) => {
                        let better = match &best {
                            None => true,
                            Some((r, b, _)) => *residual < *r || (*residual == *r && root_key(&roots) < root_key(b)),
                        };
                        if better {
                            best = Some((*residual, roots, cofactor));
                        }
                    }
                    Err(Violation::Clustered(p)) => {
                        merged.get_or_insert(p);
                        violations.push("roots coincide");
                    }
                    Err(Violation::Other(why)) => violations.push(why),
                }
            }
            Run::Stationary { residual } => {
                best_residual = best_residual.min(*residual);
                stationary_floor = stationary_floor.min(*residual);
            }
            Run::Unfinished { residual } => {
                best_residual = best_residual.min(*residual);
                unfinished_residuals.push(*residual);
            }
        }
    }

    if let Some((residual, roots, cofactor)) = best {
        return outcome(CaseStatus::Solved { roots, cofactor, residual }, trace);
    }
    // Starts still creeping down toward a stationary level already found
    // (within 0.1%) are not evidence of a nearby exact solution.
    let unfinished = unfinished_residuals.iter().filter(|&&r| r < PLATEAU * stationary_floor).count();
    if unfinished == 0 {
        let reason = if violations.is_empty() {
            format!(
                "all {} starts reach least-squares stationary points with residual >= {:e} (best {:e})",
                runs.len(),
                config.tol,
                best_residual
            )
        } else {
            violations.sort_unstable();
            violations.dedup();
            format!("every converged start violates a constraint: {}", violations.join(", "))
        };
        return CaseOutcome { merged_into: merged, ..outcome(CaseStatus::Inconsistent { reason }, trace) };
    }
    let reason = format!("{unfinished} of {} starts did not settle", runs.len());
    CaseOutcome { merged_into: merged, ..outcome(CaseStatus::NoConvergence { reason, best_residual }, trace) }
}

const PLATEAU: f64 = 1.0 - 1e-3;

fn root_key(roots: &[Root]) -> Vec<(f64, f64)> {
    roots.iter().map(|r| (r.value.to_complex().re, r.value.to_complex().im)).collect()
}

fn scale<S: Field>(sys: &VietaSystem<S>) -> f64 {
    sys.target().iter().map(|&a| modulus(a)).fold(1.0, f64::max)
}

fn max_norm<S: Field>(v: &DVector<S>) -> f64 {
    v.iter().map(|&x| modulus(x)).fold(0.0, f64::max)
}

/// Exact consequences of the linear `x^{d−1}` equation.
///
/// That equation reads `Σ mᵢrᵢ − ι_{q−1} = −a_{d−1}/c`. When it is the only
/// freedom (one unknown in total) the unknown is fixed and the remaining
/// equations either hold or give a contradiction.
fn presolve<S: Field>(sys: &VietaSystem<S>, mode: Mode, config: &SolveConfig) -> Option<CaseStatus> {
    if sys.n_unknowns() != 1 {
        return None;
    }
    let d = sys.degree();
    let p = sys.pattern();
    let trace = -sys.target()[d - 1] / sys.leading();
    let (u, name) = if p.k() == 1 {
        (trace / S::from_real(p.mults()[0] as f64), "r")
    } else {
        // Cofactor-only of degree 1: ι₀ = −trace.
        (-trace, "ι₀")
    };
    let res = sys.residual(&[u]);
    let tol = config.tol * scale(sys);
    match (0..d).find(|&i| modulus(res[i]) >= tol) {
        None => {
            let u = vec![u];
            match check_constraints(sys, mode, &u, config) {
                Ok((roots, cofactor)) => Some(CaseStatus::Solved { roots, cofactor, residual: max_norm(&res) / scale(sys) }),
                Err(Violation::Clustered(_)) => unreachable!("one root cannot cluster"),
                Err(Violation::Other(why)) => Some(CaseStatus::Inconsistent { reason: why.to_string() }),
            }
        }
        Some(i) => {
            let got = res[i] + sys.target()[i];
            let reason = format!(
                "coefficient of x^{} forces {name} = {}; coefficient of x^{i} is then {} but must be {}",
                d - 1,
                fmt_scalar(u),
                fmt_scalar(got),
                fmt_scalar(sys.target()[i]),
            );
            Some(CaseStatus::Inconsistent { reason })
        }
    }
}

fn fmt_scalar<S: Field>(x: S) -> String {
    // Adding zero turns −0 into +0.
    let z = x.to_c64() + Complex64::new(0.0, 0.0);
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{z}")
    }
}

enum Violation {
    Clustered(MultiplicityPattern),
    Other(&'static str),
}

/// Whether roots `i` and `j` can be replaced by their weighted mean with the
/// residual still below `tol`: the data cannot tell them apart.
fn indistinguishable<S: Field>(sys: &VietaSystem<S>, u: &[S], i: usize, j: usize, tol: f64) -> bool {
    let (mi, mj) = (sys.pattern().mults()[i] as f64, sys.pattern().mults()[j] as f64);
    let mean = (u[i] * S::from_real(mi) + u[j] * S::from_real(mj)) / S::from_real(mi + mj);
    let mut merged = u.to_vec();
    merged[i] = mean;
    merged[j] = mean;
    max_norm(&sys.residual(&merged)) / scale(sys) < tol
}

/// Distinct roots, small Horner residuals, and (real mode) a cofactor without real roots.
fn check_constraints<S: Field>(
    sys: &VietaSystem<S>,
    mode: Mode,
    u: &[S],
    config: &SolveConfig,
) -> Result<(Vec<Root>, Vec<RootValue>), Violation> {
    let (roots, cofactor) = sys.split(u);
    let p = sys.pattern();
    let zs: Vec<Complex64> = roots.iter().map(|&r| r.to_c64()).collect();

    // Group roots that fall within the clustering radius.
    let mut group: Vec<usize> = (0..zs.len()).collect();
    for i in 0..zs.len() {
        for j in 0..i {
            if same_root(zs[i], zs[j]) || indistinguishable(sys, u, i, j, config.tol) {
                let (gi, gj) = (group[i], group[j]);
                group.iter_mut().filter(|g| **g == gi).for_each(|g| *g = gj);
            }
        }
    }
    let mut sums: Vec<usize> = Vec::new();
    for leader in 0..zs.len() {
        let m: usize = (0..zs.len()).filter(|&i| group[i] == leader).map(|i| p.mults()[i]).sum();
        if m > 0 {
            sums.push(m);
        }
    }
    if sums.len() < zs.len() {
        return Err(Violation::Clustered(MultiplicityPattern::new(sums, p.cofactor_degree()).unwrap()));
    }

    let poly = Poly::new(sys.target().to_vec());
    let limit = 10.0 * config.tol * scale(sys);
    let mut out = Vec::with_capacity(zs.len());
    for (&r, &m) in roots.iter().zip(p.mults()) {
        let residual = modulus(poly.eval(&r));
        if !residual.is_finite() || residual >= limit {
            return Err(Violation::Other("root fails the Horner residual check"));
        }
        let value = match mode {
            Mode::Real => RootValue::Real(r.to_c64().re),
            Mode::Complex => RootValue::Complex(r.to_c64()),
        };
        out.push(Root { value, mult: m, residual });
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.value.to_complex(), b.value.to_complex());
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
    });

    if mode == Mode::Real && !cofactor.is_empty() {
        let mut iota: Vec<f64> = cofactor.iter().map(|c| c.to_c64().re).collect();
        iota.push(1.0);
        if oracle_real_roots(&Poly::from_f64(&iota)).tau() > 0 {
            return Err(Violation::Other("cofactor has a real root"));
        }
    }
    let cofactor = cofactor
        .iter()
        .map(|c| match mode {
            Mode::Real => RootValue::Real(c.to_c64().re),
            Mode::Complex => RootValue::Complex(c.to_c64()),
        })
        .collect();
    Ok((out, cofactor))
}

/// Deterministic initial points.
///
/// Roots start on Chebyshev nodes (real mode) or a spiral (complex mode)
/// inside `1 + max|aᵢ/a_d|`; cofactors start as `(x² + t²)^(q/2)`.
pub fn generate_starts<S: Field>(sys: &VietaSystem<S>, mode: Mode, count: usize) -> Vec<Vec<S>> {
    let d = sys.degree();
    let lead = modulus(sys.leading());
    let bound = 1.0 + (0..d).map(|i| modulus(sys.target()[i]) / lead).fold(0.0, f64::max);
    let k = sys.pattern().k();
    let q = sys.pattern().cofactor_degree();
    let radii = [1.0, 0.5, 0.25, 0.75];
    (0..count)
        .map(|s| {
            let rho = bound * radii[s % 4];
            let phase = (s / 4) as f64 * 0.37;
            let mut u = Vec::with_capacity(k + q);
            for j in 0..k {
                // Odd starts assign the nodes to the multiplicity slots in reverse.
                let slot = if s % 2 == 1 { k - 1 - j } else { j };
                let z = match mode {
                    Mode::Real => {
                        let theta = std::f64::consts::PI * (2 * slot + 1) as f64 / (2 * k) as f64 + phase / k as f64;
                        Complex64::new(rho * theta.cos(), 0.0)
                    }
                    Mode::Complex => {
                        let theta = std::f64::consts::TAU * slot as f64 / k as f64 + 0.4 + phase;
                        let r = rho * (1.0 + 0.1 * slot as f64 / k as f64);
                        Complex64::from_polar(r, theta)
                    }
                };
                u.push(S::from_c64(z));
            }
            if q > 0 {
                let t = rho * (0.5 + 0.5 * ((s / 4) as f64 / 8.0));
                let mut iota = vec![1.0];
                for _ in 0..q / 2 {
                    iota = Poly::from_f64(&iota).mul(&Poly::from_f64(&[t * t, 0.0, 1.0])).into_coeffs();
                }
                if q % 2 == 1 {
                    iota = Poly::from_f64(&iota).mul(&Poly::from_f64(&[t, 1.0])).into_coeffs();
                }
                u.extend(iota[..q].iter().map(|&c| S::from_real(c)));
            }
            u
        })
        .collect()
}

/// Damped Gauss-Newton from `u0`. Returns the outcome and the iteration count.
fn run_start<S: Field>(sys: &VietaSystem<S>, u0: &[S], config: &SolveConfig) -> (Run<S>, usize) {
    let scale = scale(sys);
    let divergence = 1e8 * (1.0 + u0.iter().map(|&x| modulus(x)).fold(0.0, f64::max));
    let mut u = DVector::from_column_slice(u0);
    let mut res = sys.residual(u.as_slice());
    let mut polish = 0;
    for it in 0..config.max_iters {
        let rn = max_norm(&res) / scale;
        if !rn.is_finite() {
            return (Run::Unfinished { residual: f64::INFINITY }, it);
        }
        if rn < config.tol {
            polish += 1;
            if polish > 3 {
                return (Run::Converged { u: u.as_slice().to_vec(), residual: rn }, it);
            }
        }
        let jac = sys.jacobian(u.as_slice());
        let Some(step) = least_squares(&jac, &(-&res)) else {
            return (Run::Unfinished { residual: rn }, it);
        };
        let r2 = res.norm();
        let mut alpha = 1.0;
        let mut accepted = None;
        while alpha > 1e-10 {
            let trial = &u + &step * S::from_real(alpha);
            let tres = sys.residual(trial.as_slice());
            if tres.norm() < r2 {
                accepted = Some((trial, tres));
                break;
            }
            alpha *= 0.5;
        }
        // Near a rank drop the Gauss-Newton direction can be useless; fall back
        // to damped (Levenberg-Marquardt) steps before giving up.
        let Some((next, next_res)) = accepted.or_else(|| damped_step(sys, &u, &jac, &res)) else {
            return (settle(rn, &jac, &res, config, &u), it);
        };
        let moved = (&next - &u).norm();
        u = next;
        res = next_res;
        if u.norm() > divergence {
            return (Run::Unfinished { residual: max_norm(&res) / scale }, it + 1);
        }
        if moved <= 1e-15 * (1.0 + u.norm()) {
            let rn = max_norm(&res) / scale;
            if rn < config.tol {
                return (Run::Converged { u: u.as_slice().to_vec(), residual: rn }, it + 1);
            }
            return (settle(rn, &jac, &res, config, &u), it + 1);
        }
    }
    let rn = max_norm(&res) / scale;
    if rn < config.tol {
        return (Run::Converged { u: u.as_slice().to_vec(), residual: rn }, config.max_iters);
    }
    let jac = sys.jacobian(u.as_slice());
    (settle(rn, &jac, &res, config, &u), config.max_iters)
}

/// Classifies a start that can make no further progress.
///
/// Below tolerance it has converged. Otherwise it counts as a least-squares
/// stationary point only when the gradient `Jᴴr` is negligible relative to
/// `|J|·|r|`.
fn settle<S: Field>(rn: f64, jac: &DMatrix<S>, res: &DVector<S>, config: &SolveConfig, u: &DVector<S>) -> Run<S> {
    if rn < config.tol {
        return Run::Converged { u: u.as_slice().to_vec(), residual: rn };
    }
    let grad = jac.adjoint() * res;
    if grad.norm() <= 1e-6 * jac.norm().max(1e-300) * res.norm() {
        Run::Stationary { residual: rn }
    } else {
        Run::Unfinished { residual: rn }
    }
}

/// First residual-reducing step of `(JᴴJ + μI)δ = −Jᴴr` for growing `μ`.
fn damped_step<S: Field>(
    sys: &VietaSystem<S>,
    u: &DVector<S>,
    jac: &DMatrix<S>,
    res: &DVector<S>,
) -> Option<(DVector<S>, DVector<S>)> {
    let jh = jac.adjoint();
    let normal = &jh * jac;
    let grad = &jh * res;
    let r2 = res.norm();
    let mut mu = 1e-6 * normal.norm().max(1e-300);
    for _ in 0..40 {
        let mut m = normal.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += S::from_real(mu);
        }
        if let Some(step) = m.cholesky().map(|c| c.solve(&(-&grad))) {
            let trial = u + step;
            let tres = sys.residual(trial.as_slice());
            if tres.norm() < r2 {
                return Some((trial, tres));
            }
        }
        mu *= 10.0;
    }
    None
}

/// Minimum-norm least-squares step via SVD.
fn least_squares<S: Field>(jac: &DMatrix<S>, rhs: &DVector<S>) -> Option<DVector<S>> {
    let svd = jac.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let step = svd.solve(rhs, smax * 1e-14).ok()?;
    step.iter().all(|x| modulus(*x).is_finite()).then_some(step)
}
