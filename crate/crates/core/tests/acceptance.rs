//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Criteria listed in [`KNOWN_RED`] are expected to fail for the reason given
//! there. Any other failure, or a known-red criterion that starts passing,
//! makes the run exit nonzero.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilelab_core::cost::{instrumented_exhaust, instrumented_verify};
use tilelab_core::poly::{norm_claim_check, parse_coeff_list, NormClaim, Poly};
use tilelab_core::search::{enumerate_reachable, solve_bfs};
use tilelab_core::verify::{bound_cor1, bound_thm2, bound_thm4, count_lemma1};
use tilelab_core::vieta::{find_real, oracle_real_roots};
use tilelab_core::{
    budget, claim_report, find_roots, length, solve_optimal, verify_solution, ApplyMode, BudgetKind, CostLedger,
    FindOptions, Mode, MoveSeq, SearchLimits, TileGrid, Verdict, VietaError,
};

/// Criteria that cannot pass as written, with the reason.
const KNOWN_RED: &[(u32, &str)] = &[
    (4, "the quoted 9.2316 is not log4(9!) = 9.23457...; no correct evaluation is within 1e-3 of it"),
    (5, "the search ceiling 4^k(n^2+2)+27k charges move application once rather than once per sequence"),
];

struct Check {
    id: u32,
    pass: bool,
    detail: String,
}

fn check(id: u32, pass: bool, detail: impl Into<String>) -> Check {
    Check { id, pass, detail: detail.into() }
}

fn sample_grid() -> TileGrid {
    TileGrid::from_rows(&[[1, 0, 2, 4], [5, 6, 3, 8], [9, 10, 7, 11], [13, 14, 15, 12]]).unwrap()
}

fn pi_cubic() -> Poly<f64> {
    Poly::from_f64(&[PI / 2.0, -PI * PI, 0.0, 2.0])
}

fn random_grid(rng: &mut ChaCha8Rng, n: usize) -> TileGrid {
    let mut cells: Vec<u16> = (0..(n * n) as u16).collect();
    for i in (1..cells.len()).rev() {
        cells.swap(i, rng.gen_range(0..=i));
    }
    let rows: Vec<Vec<u16>> = cells.chunks(n).map(<[u16]>::to_vec).collect();
    TileGrid::from_rows(&rows).unwrap()
}

fn random_seq(rng: &mut ChaCha8Rng, max: usize) -> MoveSeq {
    let len = rng.gen_range(0..=max);
    (0..len).map(|_| tilelab_core::Move::ALL[rng.gen_range(0..4)]).collect()
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let g = sample_grid();
    let seq: MoveSeq = "RDDRD".parse().unwrap();
    let reaches = g.apply_seq(&seq, ApplyMode::Strict).map(|h| h == TileGrid::goal(4)).unwrap_or(false);
    let valid = verify_solution(&g, &seq);
    let psi = solve_optimal(&g, &SearchLimits::default()).map(|r| r.psi);
    let elapsed = t.elapsed();
    check(
        1,
        reaches && valid && psi == Ok(5) && elapsed < Duration::from_secs(1),
        format!("reaches goal {reaches}, verify {valid}, psi {psi:?}, {elapsed:.2?}"),
    )
}

fn criterion_2() -> Check {
    let seq: MoveSeq = "RDDRD".parse().unwrap();
    let rev = seq.reversed();
    let back = TileGrid::goal(4).apply_seq(&rev, ApplyMode::Strict);
    check(2, back.as_ref() == Ok(&sample_grid()), format!("reverse sequence {rev}"))
}

fn criterion_3() -> Check {
    let limits = SearchLimits::default();
    let t = Instant::now();
    let t2 = enumerate_reachable(2, None, &limits).unwrap();
    let d2 = t.elapsed();
    let t = Instant::now();
    let t3 = enumerate_reachable(3, None, &limits).unwrap();
    let d3 = t.elapsed();
    let report = claim_report(3, &limits).unwrap();
    let v = &report.verdicts;
    let all_fail = [v.thm2, v.thm3, v.thm4, v.cor1].iter().all(|&x| x == Verdict::Fails);
    let pass = t2.count() == 12
        && t2.diameter() == 6
        && d2 < Duration::from_millis(100)
        && t3.count() == 181_440
        && t3.diameter() == 31
        && d3 < Duration::from_secs(60)
        && all_fail;
    check(
        3,
        pass,
        format!(
            "n=2: {} states, diameter {} in {d2:.2?}; n=3: {} states, diameter {} in {d3:.2?}; n=3 bound verdicts {:?}",
            t2.count(),
            t2.diameter(),
            t3.count(),
            t3.diameter(),
            [v.thm2, v.thm3, v.thm4, v.cor1]
        ),
    )
}

fn criterion_4() -> Check {
    let thm4 = bound_thm4(3).unwrap();
    let cor1 = bound_cor1(3).unwrap();
    let thm2 = bound_thm2(3).unwrap();
    let lemma1 = count_lemma1(2).unwrap();
    let pass = thm4 == 8 && cor1 == 16 && (thm2 - 9.2316).abs() < 1e-3 && lemma1 == 24u32.into();
    check(4, pass, format!("thm4(3) = {thm4}, cor1(3) = {cor1}, thm2(3) = {thm2:.6} (quoted 9.2316), lemma1(2) = {lemma1}"))
}

fn criterion_5() -> Check {
    let limits = SearchLimits::default();
    let mut verify_cases = 0u32;
    let mut verify_within = 0u32;
    let mut tally = |g: &TileGrid, seq: &MoveSeq| {
        let mut ledger = CostLedger::new();
        instrumented_verify(g, seq, &mut ledger);
        verify_cases += 1;
        verify_within += u32::from(budget(BudgetKind::Verify, g.n() as u64, seq.len() as u64).admits(ledger.decisions()));
    };
    let table = enumerate_reachable(2, None, &limits).unwrap();
    for (g, _) in table.states() {
        tally(&g, &solve_bfs(&g, &limits).unwrap().seq);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for n in [3, 4] {
        for _ in 0..10_000 {
            let g = random_grid(&mut rng, n);
            let seq = random_seq(&mut rng, 40);
            tally(&g, &seq);
        }
    }

    let mut search_cases = 0u32;
    let mut search_within = 0u32;
    let mut worst = (0u64, 0u64, 0usize);
    for (g, _) in table.states() {
        for k_max in 0..=6 {
            let mut ledger = CostLedger::new();
            let _ = instrumented_exhaust(&g, k_max, &limits, &mut ledger);
            let ceiling = budget(BudgetKind::Search, 2, k_max as u64);
            search_cases += 1;
            if ceiling.admits(ledger.decisions()) {
                search_within += 1;
            } else if ledger.decisions() > worst.0 {
                worst = (ledger.decisions(), num_traits::ToPrimitive::to_u64(&ceiling.ceiling).unwrap(), k_max);
            }
        }
    }
    check(
        5,
        verify_within == verify_cases && search_within == search_cases,
        format!(
            "verify ceiling held {verify_within}/{verify_cases}; search ceiling held {search_within}/{search_cases} \
             (largest overrun {} decisions vs ceiling {} at k_max {})",
            worst.0, worst.1, worst.2
        ),
    )
}

fn criterion_6() -> Check {
    let a = length("1!+456j");
    let b = length("y=3; for(i=1; i<k; i++){ y=y+i;}");
    check(6, a == 7 && b == 28, format!("lengths {a} and {b}"))
}

fn criterion_7() -> Check {
    let t = Instant::now();
    let p = parse_coeff_list("pi/2, -pi^2, 0, 2").unwrap();
    let result = find_roots(&p, Mode::Real, &FindOptions::default());
    let elapsed = t.elapsed();
    let Ok(r) = result else {
        return check(7, false, format!("{result:?}"));
    };
    let statuses: Vec<String> = r
        .outcomes
        .iter()
        .map(|o| {
            let s = if o.is_solved() { "solved" } else if o.is_inconsistent() { "inconsistent" } else { "no_convergence" };
            format!("{}:{s}", o.pattern.label())
        })
        .collect();
    let cubic = pi_cubic();
    let oracle = oracle_real_roots(&cubic);
    let roots_ok = r.roots.roots.len() == 3
        && r.roots.roots.iter().zip(&oracle.roots).all(|(a, b)| {
            let x = a.value.to_complex().re;
            cubic.eval(&x).abs() < 1e-9 && (x - b.value.to_complex().re).abs() < 1e-8
        });
    let pass = statuses == ["3:inconsistent", "2,1:inconsistent", "1,1,1:solved"]
        && r.tau == 3
        && roots_ok
        && elapsed < Duration::from_secs(1);
    let values: Vec<f64> = r.roots.roots.iter().map(|x| x.value.to_complex().re).collect();
    check(7, pass, format!("{statuses:?}, roots {values:.12?}, {elapsed:.2?}"))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let (mut ok, mut missed, mut wrong) = (0u32, 0u32, 0u32);
    for _ in 0..500 {
        let k = rng.gen_range(1..=5);
        let mut roots: Vec<f64> = Vec::with_capacity(k);
        while roots.len() < k {
            let r: f64 = rng.gen_range(-5.0..=5.0);
            if roots.iter().all(|&s| s != r) {
                roots.push(r);
            }
        }
        let c = [-2.0, -1.0, 1.0, 2.0][rng.gen_range(0..4)];
        let p = roots.iter().fold(Poly::from_f64(&[c]), |acc, &r| acc.mul(&Poly::linear_root(r)));
        roots.sort_by(f64::total_cmp);
        match find_real(&p, &FindOptions::default()) {
            Ok(res) => {
                let got: Vec<f64> = res.roots.roots.iter().map(|x| x.value.to_complex().re).collect();
                if got.len() == k && got.iter().zip(&roots).all(|(a, b)| (a - b).abs() < 1e-6) {
                    ok += 1;
                } else {
                    wrong += 1;
                    eprintln!("  wrong roots: want {roots:?}, got {got:?} ({})", res.case.label());
                }
            }
            Err(VietaError::NoPatternSolved { no_real_roots: false, .. }) => {
                missed += 1;
                eprintln!("  no convergence: roots {roots:?}, c {c}");
            }
            Err(e) => {
                wrong += 1;
                eprintln!("  unexpected error for {roots:?}: {e}");
            }
        }
    }
    check(8, wrong == 0 && ok >= 495, format!("{ok}/500 recovered, {missed} no convergence, {wrong} wrong"))
}

fn criterion_9() -> Check {
    let p = Poly::from_ints(&[1, 1]);
    let claim = norm_claim_check(&p, &p);
    let recorded = claim == NormClaim::Violated { lhs: 2.0, rhs: 1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let rand_poly = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..=12);
        let v: Vec<BigRational> =
            (0..len).map(|_| BigRational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=9).into())).collect();
        Poly::new(v)
    };
    let mut held = 0;
    for _ in 0..10_000 {
        let (a, b) = (rand_poly(&mut rng), rand_poly(&mut rng));
        let na = a.max_norm();
        let nonneg = !na.is_negative();
        let definite = na.is_zero() == a.is_zero();
        let triangle = a.add(&b).max_norm() <= na + b.max_norm();
        held += u32::from(nonneg && definite && triangle);
    }
    check(9, recorded && held == 10_000, format!("(x+1)(x+1): {claim:?}; norm axioms held on {held}/10000 pairs"))
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut held = 0;
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let d = rng.gen_range(0..=20);
        let coeffs: Vec<f64> = (0..=d).map(|_| rng.gen_range(-10.0..=10.0)).collect();
        let p = Poly::from_f64(&coeffs);
        let x = rng.gen_range(-2.0..=2.0);
        let (h, n) = (p.eval(&x), p.eval_naive(&x));
        let rel = if n == 0.0 { h.abs() } else { (h - n).abs() / n.abs() };
        worst = worst.max(rel);
        held += u32::from(rel <= 1e-12);
    }
    check(10, held == 10_000, format!("{held}/10000 within 1e-12 relative, worst {worst:.3e}"))
}

fn main() -> ExitCode {
    let checks = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    let mut unexpected = Vec::new();
    for c in &checks {
        let known = KNOWN_RED.iter().find(|(id, _)| *id == c.id);
        println!("criterion {:>2}: {}  {}", c.id, if c.pass { "PASS" } else { "FAIL" }, c.detail);
        match (c.pass, known) {
            (false, Some((_, why))) => println!("              known red: {why}"),
            (false, None) => unexpected.push(format!("criterion {} failed", c.id)),
            (true, Some(_)) => unexpected.push(format!("criterion {} passes but is listed as known red", c.id)),
            (true, None) => {}
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    println!("{passed}/{} criteria pass", checks.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        for u in unexpected {
            eprintln!("{u}");
        }
        ExitCode::FAILURE
    }
}
