use selfdual::format::{parse_sequences, parse_stgc, write_sequences, write_stgc};
use selfdual::operators::recurse_ccr_sds;
use selfdual::registers::{count_mccr_by_period, cycle_structure, fsr_cycles};
use selfdual::stgc::diff::build_diff_stgc;
use selfdual::stgc::recursive::build_recursive_stgc;
use selfdual::stgc::search::search_thm3_max_period;
use selfdual::stgc::{construct_from_binary_sds, construct_from_sds, full_period_ordering, verify_stgc};
use selfdual::zmseq::{is_self_dual, period};
use selfdual::{CyclicSeq, RegisterSpec, Stgc};

fn ccr(m: u8, n: usize) -> std::collections::BTreeSet<CyclicSeq> {
    fsr_cycles(&RegisterSpec::ccr(m, n).unwrap()).unwrap()
}

#[test]
fn register_cycles_are_self_dual_and_round_trip() {
    for m in 2..=5u8 {
        for n in 1..=4 {
            let cycles: Vec<CyclicSeq> = ccr(m, n).into_iter().collect();
            for c in &cycles {
                assert!(is_self_dual(c), "m={m} n={n} {c:?}");
                assert_eq!(period(c), c.len());
                assert_eq!((m as usize * n) % c.len(), 0);
            }
            let text = write_sequences(m, &cycles);
            assert_eq!(parse_sequences(&text).unwrap(), (m, cycles));
        }
    }
}

#[test]
fn period_counts_agree_with_simulation() {
    for m in 2..=6u8 {
        for n in 1..=7 {
            let Ok(sim) = cycle_structure(&RegisterSpec::ccr(m, n).unwrap()) else { continue };
            assert!(count_mccr_by_period(m, n).same_counts(&sim), "m={m} n={n}");
        }
    }
}

#[test]
fn doubling_reaches_every_larger_register() {
    let level6 = recurse_ccr_sds(&ccr(2, 3), 3).unwrap();
    assert_eq!(level6, ccr(2, 6));
    let level12 = recurse_ccr_sds(&level6, 6).unwrap();
    assert_eq!(level12.len(), 172);
    assert_eq!(level12, ccr(2, 12));
}

fn round_trip(code: &Stgc) {
    let back = parse_stgc(&write_stgc(code)).unwrap();
    assert_eq!(&back, code);
    assert!(verify_stgc(&back).passed());
}

#[test]
fn every_construction_round_trips() {
    for m in 3..=5 {
        round_trip(&build_diff_stgc(m).unwrap());
    }
    for p in [3, 5, 7] {
        round_trip(&search_thm3_max_period(p).unwrap().unwrap());
    }
    round_trip(&build_recursive_stgc(3, 2).unwrap().0);
    for (m, n) in [(2, 3), (2, 5), (2, 6), (3, 2), (4, 2)] {
        round_trip(&construct_from_sds(&full_period_ordering(m, n).unwrap()).unwrap());
    }
}

#[test]
fn binary_construction_is_the_general_one() {
    for n in [3, 5, 7] {
        let o = full_period_ordering(2, n).unwrap();
        let code = construct_from_binary_sds(&o).unwrap();
        assert_eq!(code, construct_from_sds(&o).unwrap());
        assert_eq!(code.period(), 2 * n * o.seqs.len());
    }
    assert!(construct_from_binary_sds(&full_period_ordering(3, 2).unwrap()).is_err());
}
