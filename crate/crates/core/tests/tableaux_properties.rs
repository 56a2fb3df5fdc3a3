mod common;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use qmi_orbits::majorization::majorizes;
use qmi_orbits::tableaux::{
    catalog, enumerate_young, exhaustive_minimum, histogram_minimizers, hook_count, marginals, minimal_table,
    sort_table, symmetry_classes, table_mi,
};
use qmi_orbits::{Pattern, Shape, Spectrum, Table};

fn shape(r: usize, c: usize) -> Shape {
    Shape::new(r, c).unwrap()
}

fn h(v: &[f64]) -> f64 {
    entropy_bits(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn young_minimum_matches_brute_force_small(s in prop_oneof![spectrum((2, 2)), spectrum((2, 3))]) {
        let (r, c) = s.dims();
        let y = minimal_table(&s).unwrap();
        let oracle = brute_force_minimum(s.values(), r, c);
        prop_assert!((y.value - oracle).abs() < 1e-12);
        prop_assert!((exhaustive_minimum(&s).unwrap().value - oracle).abs() < 1e-12);
        prop_assert!(y.table.is_young());
    }

    #[test]
    fn sorting_a_table_lowers_marginal_entropy(w in weights(9).prop_flat_map(|w| {
        let t: f64 = w.iter().sum();
        Just(w.into_iter().map(|x| x / t).collect::<Vec<_>>()).prop_shuffle()
    }), tall in any::<bool>()) {
        let sh = if tall { shape(3, 3) } else { shape(3, 3).transposed() };
        let t = Table::new(sh, w).unwrap();
        let sorted = sort_table(&t);
        prop_assert!(sorted.is_young());
        let (a0, b0) = marginals(&t);
        let (a1, b1) = marginals(&sorted);
        prop_assert!(h(&a1) + h(&b1) <= h(&a0) + h(&b0) + 1e-12);
        prop_assert!(majorizes(&a1, &a0).unwrap());
        prop_assert!(majorizes(&b1, &b0).unwrap());
        prop_assert!(majorizes_naive(&a1, &a0, 1e-12) && majorizes_naive(&b1, &b0, 1e-12));
    }

    #[test]
    fn sorting_rectangular_tables(w in weights(6).prop_flat_map(|w| {
        let t: f64 = w.iter().sum();
        Just(w.into_iter().map(|x| x / t).collect::<Vec<_>>()).prop_shuffle()
    })) {
        let t = Table::new(shape(2, 3), w).unwrap();
        let sorted = sort_table(&t);
        let (a0, b0) = marginals(&t);
        let (a1, b1) = marginals(&sorted);
        prop_assert!(sorted.is_young());
        prop_assert!(h(&a1) + h(&b1) <= h(&a0) + h(&b0) + 1e-12);
        prop_assert!(majorizes(&a1, &a0).unwrap() && majorizes(&b1, &b0).unwrap());
    }

    #[test]
    fn two_qubit_ranking_chain(s in spectrum((2, 2))) {
        let sh = shape(2, 2);
        let mi = |p: &str| table_mi(&Pattern::parse(sh, p).unwrap().fill(&s).unwrap());
        let l = s.values();
        let sorted = mi(catalog::T4_SORTED);
        prop_assert!((sorted - classical_mi(l, 2, 2)).abs() < 1e-12);
        prop_assert!(mi(catalog::T4_TWO) >= mi(catalog::T4_ONE) - 1e-12);
        prop_assert!(mi(catalog::T4_ONE) >= sorted - 1e-12);
    }

    #[test]
    fn symmetry_class_members_share_their_value(s in spectrum((2, 3))) {
        for class in symmetry_classes(shape(2, 3)).unwrap() {
            let v = table_mi(&class.representative.fill(&s).unwrap());
            for m in &class.members {
                prop_assert!((table_mi(&m.fill(&s).unwrap()) - v).abs() < 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn young_minimum_matches_brute_force_qutrits(s in spectrum((3, 3))) {
        let y = minimal_table(&s).unwrap();
        prop_assert!((y.value - brute_force_minimum(s.values(), 3, 3)).abs() < 1e-12);
    }
}

#[test]
fn young_counts_follow_the_hook_formula() {
    for (r, c) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (2, 5), (3, 4), (4, 4)] {
        let sh = shape(r, c);
        let n = BigUint::from(enumerate_young(sh).unwrap().len());
        let expected = if r == c { hook_count(sh) / 2u32 } else { hook_count(sh) };
        assert_eq!(n, expected, "shape {sh}");
    }
}

#[test]
fn hook_formula_against_a_recursive_count() {
    // Number of standard fillings, counted by placing the largest entry in a removable corner.
    fn count(rows: &mut Vec<usize>, memo: &mut std::collections::HashMap<Vec<usize>, u64>) -> u64 {
        if rows.iter().all(|&r| r == 0) {
            return 1;
        }
        if let Some(&v) = memo.get(rows) {
            return v;
        }
        let mut total = 0;
        for i in 0..rows.len() {
            let next = if i + 1 < rows.len() { rows[i + 1] } else { 0 };
            if rows[i] > next {
                rows[i] -= 1;
                total += count(rows, memo);
                rows[i] += 1;
            }
        }
        memo.insert(rows.clone(), total);
        total
    }
    for (r, c) in [(2, 2), (2, 3), (3, 3), (4, 4), (3, 5)] {
        let mut rows = vec![c; r];
        let n = count(&mut rows, &mut Default::default());
        assert_eq!(hook_count(shape(r, c)), BigUint::from(n));
    }
}

#[test]
fn histogram_is_independent_of_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| histogram_minimizers(shape(2, 3), 20_000, 11).unwrap())
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.counts, b.counts);
    assert_eq!(a.ties, b.ties);
    assert_eq!(a.counts.iter().sum::<u64>(), 20_000);
}

#[test]
fn degenerate_spectra_report_ties() {
    let s = Spectrum::uniform((2, 3));
    let m = minimal_table(&s).unwrap();
    assert!(m.tie && m.value.abs() < 1e-12 && m.index == 0);
}
