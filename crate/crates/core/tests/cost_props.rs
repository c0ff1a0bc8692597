use proptest::prelude::*;
use tilelab_core::cost::{
    instrumented_compare, instrumented_step, instrumented_verify, witness_bound, PHI_MAX, RHO_MAX, SIGMA_MAX, TAU_MAX,
};
use tilelab_core::{budget, length, polytime_witness, BudgetKind, CostLedger, Move, MoveSeq, TileGrid};

fn moves(max: usize) -> impl Strategy<Value = Vec<Move>> {
    prop::collection::vec(prop::sample::select(Move::ALL.to_vec()), 0..=max)
}

fn any_grid(n: usize) -> impl Strategy<Value = TileGrid> {
    Just((0..(n * n) as u16).collect::<Vec<_>>()).prop_shuffle().prop_map(move |p| {
        let rows: Vec<Vec<u16>> = p.chunks(n).map(<[u16]>::to_vec).collect();
        TileGrid::from_rows(&rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn per_call_ceilings(g in (2usize..=6).prop_flat_map(any_grid)) {
        for m in Move::ALL {
            let mut ledger = CostLedger::new();
            let mut h = g.clone();
            let t = instrumented_step(&mut h, m, &mut ledger);
            prop_assert!(t.rho <= RHO_MAX && t.tau <= TAU_MAX && t.sigma <= SIGMA_MAX && t.phi <= PHI_MAX, "{t:?}");
            prop_assert_eq!(t.legal, g.is_legal(m));
            prop_assert_eq!(&h, &g.apply_move_total(m));
            prop_assert_eq!(ledger.decisions(), ledger.per_primitive().total());
            prop_assert_eq!(ledger.decisions(), t.phi);
        }
    }

    #[test]
    fn verify_stays_within_budget(n in 2usize..=5, start in moves(40), seq in moves(25)) {
        let g = TileGrid::goal(n).apply_seq_total(&MoveSeq::from(start));
        let seq = MoveSeq::from(seq);
        let mut ledger = CostLedger::new();
        let ok = instrumented_verify(&g, &seq, &mut ledger);
        prop_assert_eq!(ok, g.apply_seq_total(&seq).is_goal());
        prop_assert!(budget(BudgetKind::Verify, n as u64, seq.len() as u64).admits(ledger.decisions()));
    }

    #[test]
    fn compare_cost_is_prefix_plus_one(a in any_grid(3), b in any_grid(3)) {
        let mut ledger = CostLedger::new();
        let eq = instrumented_compare(&a, &b, &mut ledger);
        let prefix = a.cells().iter().zip(b.cells()).position(|(x, y)| x != y).map_or(9, |i| i + 1);
        prop_assert_eq!(eq, a == b);
        prop_assert_eq!(ledger.decisions(), prefix as u64 + 1);
    }

    #[test]
    fn length_ignores_whitespace(s in "[a-z0-9+;(){}=<! \t\n]{0,40}", ws in "[ \t\n\u{00a0}\u{2003}]{0,6}", at in 0usize..41) {
        let at = s.char_indices().map(|(i, _)| i).chain([s.len()]).nth(at.min(s.chars().count())).unwrap();
        let padded = format!("{}{}{}", &s[..at], ws, &s[at..]);
        prop_assert_eq!(length(&padded), length(&s));
    }

    #[test]
    fn witness_is_monotone(d in 0u64..1_000_000, l in 1u64..4, n in 2u64..4, k in 0u64..3) {
        if polytime_witness(d + 1, l, n, k) {
            prop_assert!(polytime_witness(d, l, n, k));
        }
        if polytime_witness(d, l, n, k) {
            prop_assert!(polytime_witness(d, l + 1, n, k));
            prop_assert!(polytime_witness(d, l, n, k + 1));
        }
    }
}

#[test]
fn budget_arithmetic() {
    assert_eq!(budget(BudgetKind::Verify, 4, 5).ceiling, 152u32.into());
    assert_eq!(budget(BudgetKind::Search, 2, 1).ceiling, 51u32.into());
    assert_eq!(budget(BudgetKind::Search, 3, 3).ceiling, 785u32.into());
}

#[test]
fn witness_boundary() {
    // length 1: (1 + 1)^e = 2^e; n = 1 is outside the puzzle but exercises
    // exponent arithmetic n² + 27k + 1 = 2 at k = 0.
    let ceiling = witness_bound(1, 2);
    assert_eq!(ceiling, 4u32.into());
    assert!(polytime_witness(4, 1, 1, 0));
    assert!(!polytime_witness(5, 1, 1, 0));
    assert!(polytime_witness(0, 7, 3, 2));
    assert!(polytime_witness(152, 1, 4, 5));
}

#[test]
fn length_examples() {
    assert_eq!(length("1!+456j"), 7);
    assert_eq!(length("y=3; for(i=1; i<k; i++){ y=y+i;}"), 28);
    assert_eq!(length(""), 0);
}
