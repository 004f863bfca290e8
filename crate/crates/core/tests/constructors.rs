use unisets::bounds::{cff_bounds_report, universal_bounds_report, BoundField};
use unisets::cff::{
    construct_cff_derandomized, construct_cff_randomized, construct_cff_sperner, derandomized_row_bound,
};
use unisets::oracle::{minimal_cff_size, minimal_universal_size, SearchBudget};
use unisets::universal::{
    build_universal_lemma1, construct_universal_greedy, lemma1_components, ComponentMethod,
};
use unisets::{verify_cff, verify_universal, CffSpec, SymbolMatrix, UniversalSpec};

fn cff_grid() -> impl Iterator<Item = CffSpec> {
    (2..=9).flat_map(|n| {
        (1..=n.min(4)).flat_map(move |d| (0..=d).map(move |r| CffSpec::new(n, r, d - r).unwrap()))
    })
}

#[test]
fn derandomized_families_verify_within_bound() {
    for spec in cff_grid() {
        let (m, trace) = construct_cff_derandomized(spec).unwrap();
        assert!(verify_cff(&m, spec.r(), spec.s()).unwrap().is_valid(), "{spec}");
        assert!(m.len() <= derandomized_row_bound(spec), "{spec}: {} rows", m.len());
        assert!(trace.is_monotone(), "{spec}");
        assert_eq!(trace.total_rows(), m.len());
        // deterministic
        assert_eq!(construct_cff_derandomized(spec).unwrap().0, m);
    }
}

#[test]
fn derandomized_bound_examples() {
    // M = 12, c = 1/4 -> floor(8.64) + 1
    assert_eq!(derandomized_row_bound(CffSpec::new(4, 1, 1).unwrap()), 9);
    assert_eq!(derandomized_row_bound(CffSpec::new(6, 0, 3).unwrap()), 1);
}

#[test]
fn randomized_families_verify() {
    for (k, spec) in cff_grid().enumerate() {
        let m = construct_cff_randomized(spec, k as u64, 1 + k % 3).unwrap();
        assert!(verify_cff(&m, spec.r(), spec.s()).unwrap().is_valid(), "{spec}");
    }
}

#[test]
fn oracle_sandwich() {
    let budget = SearchBudget::default();
    for (n, r, s) in [(3, 1, 1), (4, 1, 1), (4, 1, 2), (5, 1, 1), (4, 2, 2), (5, 2, 1)] {
        let spec = CffSpec::new(n, r, s).unwrap();
        let least = minimal_cff_size(spec, budget).unwrap().size().unwrap();
        let (m, _) = construct_cff_derandomized(spec).unwrap();
        assert!(least <= m.len() && m.len() <= derandomized_row_bound(spec), "{spec}");
    }
    for (n, d) in [(3, 2), (4, 2), (5, 2), (4, 3)] {
        let spec = UniversalSpec::new(n, d, 2).unwrap();
        let least = minimal_universal_size(spec, budget).unwrap().size().unwrap();
        assert!(least >= 1 << d, "{spec}");
        let (greedy, _) = construct_universal_greedy(spec).unwrap();
        let lemma1 = build_universal_lemma1(n, d, ComponentMethod::Derandomized).unwrap();
        assert!(least <= greedy.len() && least <= lemma1.len(), "{spec}");
    }
}

#[test]
fn sperner_matches_oracle_small() {
    for n in 2..=8 {
        let m = construct_cff_sperner(n).unwrap();
        let least = minimal_cff_size(CffSpec::new(n, 1, 1).unwrap(), SearchBudget::default())
            .unwrap()
            .size();
        assert_eq!(Some(m.len()), least, "n={n}");
    }
}

#[test]
fn lemma1_union_is_universal_and_cover_free() {
    for method in [
        ComponentMethod::Derandomized,
        ComponentMethod::SpernerWhereApplicable,
        ComponentMethod::Randomized { seed: 3, batch: 2 },
    ] {
        for n in 2..=10 {
            for d in 1..=n.min(4) {
                let m = build_universal_lemma1(n, d, method).unwrap();
                assert!(verify_universal(&m, d).unwrap().is_valid(), "({n},{d}) {method:?}");
                for i in 0..=d {
                    assert!(verify_cff(&m, i, d - i).unwrap().is_valid(), "({n},{d}) i={i}");
                }
                let parts: usize = lemma1_components(n, d, method).unwrap().iter().map(SymbolMatrix::len).sum();
                assert!(m.len() <= parts);
                assert!(m.len() >= 1 << d);
            }
        }
    }
}

#[test]
fn lemma1_four_two_with_antichain() {
    let parts = lemma1_components(4, 2, ComponentMethod::SpernerWhereApplicable).unwrap();
    assert_eq!(parts.iter().map(SymbolMatrix::len).collect::<Vec<_>>(), vec![1, 4, 1]);
    let m = build_universal_lemma1(4, 2, ComponentMethod::SpernerWhereApplicable).unwrap();
    assert_eq!(m.len(), 6);
    let union = SymbolMatrix::stack(4, 2, &parts).unwrap();
    assert_eq!(union.dedup_rows().len(), 6);
}

#[test]
fn greedy_universal_sizes_and_traces() {
    for q in [2, 3, 4] {
        for d in 1..=3 {
            for n in d..=8 {
                let spec = UniversalSpec::new(n, d, q).unwrap();
                let (m, trace) = construct_universal_greedy(spec).unwrap();
                assert!(verify_universal(&m, d).unwrap().is_valid(), "{spec}");
                assert!(m.len() >= q.pow(d as u32));
                assert!(trace.is_monotone());
            }
        }
    }
}

#[test]
fn bound_fields_increase_with_n() {
    let ns: Vec<usize> = (2..=10).map(|k| 1 << k).collect();
    for (d, q) in [(1, 2), (2, 2), (3, 3), (4, 2)] {
        for field in BoundField::ALL {
            let values: Vec<f64> = ns
                .iter()
                .filter_map(|&n| universal_bounds_report(UniversalSpec::new(n, d, q).unwrap()).unwrap().get(field))
                .collect();
            assert!(values.windows(2).all(|w| w[0] < w[1]), "{field:?} d={d} q={q}");
        }
    }
    for (r, s) in [(1, 1), (1, 3), (2, 2)] {
        for field in [BoundField::Dyachkov, BoundField::EntropyForm] {
            let values: Vec<f64> = ns
                .iter()
                .map(|&n| cff_bounds_report(CffSpec::new(n, r, s).unwrap()).unwrap().get(field).unwrap())
                .collect();
            assert!(values.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn entropy_form_matches_theorem_target_per_strength() {
    for d in [2, 4, 6] {
        let n = 512;
        let cff = cff_bounds_report(CffSpec::new(n, d / 2, d / 2).unwrap()).unwrap();
        let uni = universal_bounds_report(UniversalSpec::new(n, d, 2).unwrap()).unwrap();
        let ratio = cff.entropy_form.unwrap() / (uni.theorem1_target.unwrap() / d as f64);
        assert!((ratio - 1.0).abs() < 1e-12);
    }
}

#[test]
fn theorem_target_below_baseline() {
    for d in 1..=12 {
        for n in [2, 3, 10, 1000, 1 << 20] {
            if d <= n {
                let r = universal_bounds_report(UniversalSpec::new(n, d, 2).unwrap()).unwrap();
                assert!(r.theorem1_target.unwrap() < r.bshouty_baseline.unwrap());
            }
        }
    }
}
