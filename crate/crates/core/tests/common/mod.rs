//! Property checks shared by the `invariants` and `acceptance` targets.

#![allow(dead_code)]

use std::f64::consts::PI;

use legendre::combinatorics::{
    binomial, subset_rank, subset_unrank, Composition, Polarity, SelectionSpace,
};
use legendre::number_theory::{OrbitDecomposition, Subgroup};
use legendre::seq::{compress, paf, psd_exact_third, RootTable};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;
pub const TOL: f64 = 1e-6;

type Check = std::result::Result<(), TestCaseError>;

/// `+-1` sequences of odd length `3..=max_len`.
pub fn pm_sequence(max_len: usize) -> impl Strategy<Value = Vec<i8>> {
    (1..=max_len / 2)
        .prop_flat_map(|h| proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 2 * h + 1))
}

/// `+-1` sequences whose length is an odd multiple of 3.
pub fn pm_sequence_mod3(max_len: usize) -> impl Strategy<Value = Vec<i8>> {
    (0..max_len / 6)
        .prop_flat_map(|k| proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 6 * k + 3))
}

pub fn symmetric(a: &[i8]) -> Check {
    let l = a.len();
    let t = RootTable::new(l);
    for s in 1..l {
        prop_assert_eq!(paf(a, s).unwrap(), paf(a, l - s).unwrap());
        let d = t.psd(a, s).unwrap() - t.psd(a, l - s).unwrap();
        prop_assert!(d.abs() < TOL, "lag {}: {}", s, d);
    }
    Ok(())
}

pub fn parseval(a: &[i8]) -> Check {
    let l = a.len();
    let t = RootTable::new(l);
    let total: f64 = (1..=l).map(|s| t.psd(a, s).unwrap()).sum();
    let n2 = (l * l) as f64;
    prop_assert!((total - n2).abs() < TOL * n2, "{} vs {}", total, n2);
    Ok(())
}

pub fn wiener_khinchin(a: &[i8]) -> Check {
    let l = a.len();
    let t = RootTable::new(l);
    let pafs: Vec<i64> = (0..l).map(|s| paf(a, s).unwrap()).collect();
    for k in 1..=l {
        let via_paf: f64 = pafs
            .iter()
            .enumerate()
            .map(|(s, &v)| v as f64 * (2.0 * PI * (k * s) as f64 / l as f64).cos())
            .sum();
        let d = via_paf - t.psd(a, k).unwrap();
        prop_assert!(d.abs() < TOL * l as f64, "lag {}: {}", k, d);
    }
    Ok(())
}

/// `PSD(a, m k) = PSD(compress(a, m), k)` for a divisor `m` picked by `pick`.
pub fn compression(a: &[i8], pick: usize) -> Check {
    let l = a.len();
    let divisors: Vec<usize> = (1..=l).filter(|m| l % m == 0).collect();
    let m = divisors[pick % divisors.len()];
    let c = compress(a, m).unwrap();
    let n = l / m;
    let (ta, tc) = (RootTable::new(l), RootTable::new(n));
    for k in 1..=n {
        let d = ta.psd(a, m * k).unwrap() - tc.psd(&c.entries, k).unwrap();
        prop_assert!(d.abs() < TOL * l as f64, "m {} k {}: {}", m, k, d);
    }
    Ok(())
}

pub fn exact_third(a: &[i8]) -> Check {
    let l = a.len();
    let exact = psd_exact_third(a).unwrap();
    let float = RootTable::new(l).psd(a, l / 3).unwrap();
    prop_assert!((exact as f64 - float).abs() < TOL, "{} vs {}", exact, float);
    Ok(())
}

pub fn subset_bijection(n: usize, k_pick: usize, r_pick: u128) -> Check {
    let k = k_pick % (n + 1);
    let r = r_pick % binomial(n, k).unwrap();
    let s = subset_unrank(r, k, n).unwrap();
    prop_assert_eq!(s.len(), k);
    prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
    prop_assert!(s.iter().all(|&x| (1..=n).contains(&x)));
    prop_assert_eq!(subset_rank(&s, n).unwrap(), r);
    Ok(())
}

/// Mixed-radix rank round trip in the two length-117 `H1` selection spaces.
pub fn selection_bijection(r_pick: u128, plus: bool) -> Check {
    let h = Subgroup::new(117, [1, 16, 22]).unwrap();
    let d = OrbitDecomposition::new(&h).unwrap();
    let (comp, pol) = if plus {
        ("2x1+19x3", Polarity::Plus)
    } else {
        ("1x1+19x3", Polarity::Minus)
    };
    let comp: Composition = comp.parse().unwrap();
    let space = SelectionSpace::new(&d, &comp, pol).unwrap();
    let r = r_pick % space.size();
    let sel = space.rank_to_selection(r).unwrap();
    prop_assert_eq!(space.selection_rank(&sel).unwrap(), r);
    prop_assert!(space.rank_to_sequence(r).unwrap().is_normalized());
    Ok(())
}

/// Runs `check` on `CASES` fresh inputs with a fixed-seed runner.
pub fn run_property<S: Strategy>(
    strategy: S,
    check: impl Fn(S::Value) -> Check,
) -> Result<u32, String> {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: CASES,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(
            proptest::test_runner::RngAlgorithm::ChaCha,
        ),
    );
    runner
        .run(&strategy, check)
        .map(|()| CASES)
        .map_err(|e| e.to_string())
}
