//! Universal-set constructors.
//!
//! [`build_universal_lemma1`] assembles a binary `(n,d)`-universal set as
//! the union of cover-free families `F(n,(i,d-i))` for `i = 0..=d`: a
//! pattern with `i` ones on columns `S` is produced by the `(i, d-i)`
//! family, which has a row that is 1 on the ones and 0 on the zeros.
//! Families with `i > d/2` are complements of the `(d-i, i)` families.
//!
//! [`construct_universal_greedy`] handles any alphabet directly with the
//! conditional-expectations greedy over `(S, sigma)` constraints.

use crate::cff::{construct_cff, CffMethod, GreedyTrace};
use crate::error::{Error, Result};
use crate::greedy::{cover_greedily, greedy_row_bound, ConstraintSet};
use crate::matrix::{CffSpec, SymbolMatrix, UniversalSpec};

/// Which constructor supplies the component families of the union.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentMethod {
    Derandomized,
    /// Component `i` uses seed `seed + i`.
    Randomized { seed: u64, batch: usize },
    /// Antichain construction for the `(1,1)` component, derandomized greedy
    /// for the rest.
    SpernerWhereApplicable,
}

impl ComponentMethod {
    fn for_component(self, spec: CffSpec, index: usize) -> CffMethod {
        match self {
            ComponentMethod::Derandomized => CffMethod::Derandomized,
            ComponentMethod::Randomized { seed, batch } => CffMethod::Randomized {
                seed: seed.wrapping_add(index as u64),
                batch,
            },
            ComponentMethod::SpernerWhereApplicable if spec.r() == 1 && spec.s() == 1 => {
                CffMethod::Sperner
            }
            ComponentMethod::SpernerWhereApplicable => CffMethod::Derandomized,
        }
    }
}

/// Component families `F(n,(i,d-i))` for `i = 0..=d`, in that order.
pub fn lemma1_components(n: usize, d: usize, method: ComponentMethod) -> Result<Vec<SymbolMatrix>> {
    UniversalSpec::new(n, d, 2)?;
    let half = d / 2;
    let direct = (0..=half)
        .map(|i| {
            let spec = CffSpec::new(n, i, d - i)?;
            construct_cff(spec, method.for_component(spec, i))
        })
        .collect::<Result<Vec<_>>>()?;
    (0..=d)
        .map(|i| {
            if i <= half {
                Ok(direct[i].clone())
            } else {
                direct[d - i].complement()
            }
        })
        .collect()
}

/// Binary `(n,d)`-universal set as the deduplicated union of the
/// components.
pub fn build_universal_lemma1(n: usize, d: usize, method: ComponentMethod) -> Result<SymbolMatrix> {
    let parts = lemma1_components(n, d, method)?;
    Ok(SymbolMatrix::stack(n, 2, &parts)?.dedup_rows())
}

/// Greedy `(n,d)`-universal set over `q` symbols.
pub fn construct_universal_greedy(spec: UniversalSpec) -> Result<(SymbolMatrix, GreedyTrace)> {
    let constraints = ConstraintSet::universal(spec)?;
    let weights = vec![1u64; spec.q()];
    cover_greedily(spec.n(), spec.q(), &weights, &constraints)
}

/// `floor(ln(C(n,d) q^d) / -ln(1 - q^-d)) + 1`.
pub fn greedy_universal_row_bound(spec: UniversalSpec) -> usize {
    let m = spec.constraint_count().map_or(f64::INFINITY, |m| m as f64);
    let c = (spec.q() as f64).powi(-(spec.d() as i32));
    greedy_row_bound(m, c)
}

/// Lemma-1 builds are binary only.
pub fn require_binary(spec: UniversalSpec) -> Result<()> {
    if spec.q() != 2 {
        return Err(Error::Alphabet(format!(
            "the cover-free union construction is binary; got q={}",
            spec.q()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_cff, verify_universal};

    #[test]
    fn strength_one_is_two_constant_rows() {
        for n in 1..6 {
            let m = build_universal_lemma1(n, 1, ComponentMethod::Derandomized).unwrap();
            assert_eq!(m.len(), 2);
            assert!(verify_universal(&m, 1).unwrap().is_valid());
        }
    }

    #[test]
    fn four_two_with_antichain_component() {
        let m = build_universal_lemma1(4, 2, ComponentMethod::SpernerWhereApplicable).unwrap();
        assert_eq!(m.len(), 6);
        assert!(verify_universal(&m, 2).unwrap().is_valid());
    }

    #[test]
    fn three_two() {
        let m = build_universal_lemma1(3, 2, ComponentMethod::Derandomized).unwrap();
        assert!(verify_universal(&m, 2).unwrap().is_valid());
        assert!(m.len() >= 4);
    }

    #[test]
    fn components_follow_weight_classes() {
        let parts = lemma1_components(5, 3, ComponentMethod::Derandomized).unwrap();
        assert_eq!(parts.len(), 4);
        for (i, part) in parts.iter().enumerate() {
            assert!(verify_cff(part, i, 3 - i).unwrap().is_valid(), "component {i}");
        }
        assert_eq!(parts[3], parts[0].complement().unwrap());
        assert_eq!(parts[2], parts[1].complement().unwrap());
    }

    #[test]
    fn randomized_components() {
        let method = ComponentMethod::Randomized { seed: 9, batch: 2 };
        let a = build_universal_lemma1(6, 3, method).unwrap();
        assert!(verify_universal(&a, 3).unwrap().is_valid());
        assert_eq!(a, build_universal_lemma1(6, 3, method).unwrap());
    }

    #[test]
    fn lemma1_parameter_errors() {
        assert!(build_universal_lemma1(3, 4, ComponentMethod::Derandomized).is_err());
        assert!(build_universal_lemma1(3, 0, ComponentMethod::Derandomized).is_err());
    }

    #[test]
    fn greedy_two_two_is_all_vectors() {
        let (m, _) = construct_universal_greedy(UniversalSpec::new(2, 2, 2).unwrap()).unwrap();
        let mut rows: Vec<String> = (0..m.len()).map(|i| m.row_digits(i)).collect();
        rows.sort();
        assert_eq!(rows, vec!["00", "01", "10", "11"]);
    }

    #[test]
    fn greedy_small_cases() {
        for (n, d, lo, hi) in [(3, 2, 4, 9), (4, 2, 5, 12)] {
            let spec = UniversalSpec::new(n, d, 2).unwrap();
            let (m, trace) = construct_universal_greedy(spec).unwrap();
            assert!(verify_universal(&m, d).unwrap().is_valid());
            assert!((lo..=hi).contains(&m.len()), "({n},{d}) gave {}", m.len());
            assert_eq!(greedy_universal_row_bound(spec), hi);
            assert!(trace.is_monotone());
        }
    }

    #[test]
    fn greedy_ternary() {
        let spec = UniversalSpec::new(5, 2, 3).unwrap();
        let (m, _) = construct_universal_greedy(spec).unwrap();
        assert_eq!(m.q(), 3);
        assert!(verify_universal(&m, 2).unwrap().is_valid());
        assert!(m.len() >= 9);
    }

    #[test]
    fn binary_only_guard() {
        assert!(require_binary(UniversalSpec::new(3, 2, 3).unwrap()).is_err());
    }
}
