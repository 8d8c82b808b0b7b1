use num_bigint::BigInt;
use proptest::prelude::*;

use fknot::corpus::{corpus, primary_entries};
use fknot::diagram::Kink;
use fknot::locsys::{LocalSystems, DEFAULT_BUDGET};
use fknot::{alexander_from_matrix, count_invertible_modules, dehn_matrix, dehn_presentation, mirror, parse_pd, Diagram};

const KINKS: [Kink; 4] = [Kink::UnderLeft, Kink::UnderRight, Kink::OverLeft, Kink::OverRight];

fn delta(d: &Diagram) -> fknot::AlexPoly {
    alexander_from_matrix(&dehn_matrix(&dehn_presentation(d).unwrap())).unwrap()
}

fn kinked(d: &Diagram, moves: &[(usize, usize)]) -> Diagram {
    moves.iter().fold(d.clone(), |acc, &(edge, k)| {
        let e = if acc.edge_count() == 0 { 0 } else { edge % acc.edge_count() };
        acc.with_kink(e, KINKS[k]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kinks_keep_delta_and_counts(
        knot in 0usize..5,
        moves in prop::collection::vec((0usize..64, 0usize..4), 1..3),
        grid in 0usize..3,
    ) {
        let entries = primary_entries();
        let d = parse_pd(&entries[knot].pd).unwrap();
        let k = kinked(&d, &moves);
        prop_assert_eq!(delta(&k), delta(&d));
        let (p, nu) = [(2u64, 1u32), (3, 1), (2, 2)][grid];
        let a = count_invertible_modules(&d, p, nu).unwrap();
        let b = count_invertible_modules(&k, p, nu).unwrap();
        prop_assert_eq!(a.count, b.count);
        prop_assert_eq!(a.delta_q, b.delta_q);
    }

    #[test]
    fn reparsing_the_printed_code_is_stable(knot in 0usize..10, moves in prop::collection::vec((0usize..64, 0usize..4), 0..3)) {
        let c = corpus();
        let d = kinked(&parse_pd(&c[knot].pd).unwrap(), &moves);
        let again = parse_pd(&d.pd_string()).unwrap();
        prop_assert_eq!(again.pd_string(), d.pd_string());
        prop_assert_eq!(delta(&again), delta(&d));
    }
}

/// Level-by-level: classes defined over F_{p^M} number prod gcd(d_i, p^M - 1).
#[test]
fn oracle_levels_follow_the_elementary_divisors() {
    for e in primary_entries() {
        let d = parse_pd(&e.pd).unwrap();
        for (p, nu, top) in [(2u64, 1u32, 12u32), (3, 1, 8), (2, 2, 12), (5, 1, 6)] {
            let c = count_invertible_modules(&d, p, nu).unwrap();
            let sys = LocalSystems::new(&d, p, nu).unwrap();
            for level in (nu..=top).step_by(nu as usize) {
                let n = sys.enumerate_classes(level, DEFAULT_BUDGET).unwrap().len();
                assert_eq!(BigInt::from(n), c.count_at_level(p, level), "{} ({p},{nu}) level {level}", e.name);
            }
        }
    }
}

#[test]
fn mirrors_share_every_count() {
    for e in primary_entries() {
        let d = parse_pd(&e.pd).unwrap();
        let m = mirror(&d);
        for (p, nu) in [(2, 1), (2, 2), (3, 1), (5, 1), (7, 2)] {
            let a = count_invertible_modules(&d, p, nu).unwrap();
            let b = count_invertible_modules(&m, p, nu).unwrap();
            assert_eq!((a.count, a.p_divides_c0), (b.count, b.p_divides_c0), "{} ({p},{nu})", e.name);
        }
    }
}
