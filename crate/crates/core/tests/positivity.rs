mod common;

use std::sync::{Arc, OnceLock};

use common::{alg, SEED};
use descent_core::linalg::{rat, Rational};
use descent_core::subset::power_set;
use descent_core::{DescentAlgebra, DescentVector, Subset};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

const LABELS: [&str; 6] = ["A2", "A3", "B3", "H3", "A1xA2", "I2(5)"];

fn algebras() -> &'static Vec<Arc<DescentAlgebra>> {
    static CELL: OnceLock<Vec<Arc<DescentAlgebra>>> = OnceLock::new();
    CELL.get_or_init(|| LABELS.iter().map(|l| alg(l)).collect())
}

fn config() -> Config {
    Config { cases: 48, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

/// A system index and nonnegative x-coordinates in `0..=9` (not all zero).
fn positive() -> impl Strategy<Value = DescentVector> {
    (0..LABELS.len()).prop_flat_map(|k| {
        let a = Arc::clone(&algebras()[k]);
        prop::collection::vec(0i64..=9, a.dim())
            .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
            .prop_map(move |v| a.from_x(v.into_iter().map(rat).collect()))
    })
}

fn positive_pair() -> impl Strategy<Value = (DescentVector, DescentVector)> {
    (0..LABELS.len()).prop_flat_map(|k| {
        let a = Arc::clone(&algebras()[k]);
        let n = a.dim();
        (prop::collection::vec(0i64..=9, n), prop::collection::vec(0i64..=9, n)).prop_map(move |(u, v)| {
            (a.from_x(u.into_iter().map(rat).collect()), a.from_x(v.into_iter().map(rat).collect()))
        })
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn positive_elements_are_closed_under_sums_and_products((a, b) in positive_pair()) {
        prop_assert!((&a + &b).is_positive());
        prop_assert!((&a * &b).is_positive());
    }

    #[test]
    fn tau_grows_downward(a in positive()) {
        let alg = a.algebra();
        for k in power_set(alg.rank()) {
            for j in k.subsets() {
                prop_assert!(alg.tau_at(&a, k) <= alg.tau_at(&a, j));
            }
        }
    }

    #[test]
    fn minimal_polynomial_is_square_free(a in positive()) {
        prop_assert!(a.algebra().minimal_polynomial(&a).is_square_free());
    }

    #[test]
    fn right_ideal_is_spanned_by_its_family(a in positive()) {
        let alg = a.algebra();
        prop_assert_eq!(alg.right_ideal(&a), alg.family_span(&alg.saturated_family(&a, true)));
        prop_assert!(alg.left_ideal(&a).is_subspace_of(&alg.family_span(&alg.saturated_family(&a, false))));
    }

    #[test]
    fn ideals_are_stable_under_powers(a in positive()) {
        let alg = a.algebra();
        for n in [2, 3] {
            let p = a.pow(n);
            prop_assert_eq!(alg.right_ideal(&p), alg.right_ideal(&a));
            prop_assert_eq!(alg.left_ideal(&p), alg.left_ideal(&a));
        }
    }

    #[test]
    fn centralizer_is_stable_under_squaring(a in positive()) {
        let alg = a.algebra();
        prop_assert_eq!(alg.centralizer(&a.pow(2)), alg.centralizer(&a));
    }

    #[test]
    fn right_ideals_add((a, b) in positive_pair()) {
        let alg = a.algebra();
        prop_assert_eq!(alg.right_ideal(&a).sum(&alg.right_ideal(&b)), alg.right_ideal(&(&a + &b)));
    }

    #[test]
    fn invertible_iff_top_coefficient_positive(a in positive()) {
        let alg = a.algebra();
        prop_assert_eq!(alg.is_invertible(&a), a.xi(alg.system().full_set()) > rat(0));
    }

    #[test]
    fn saturated_module_traces(a in positive(), k in 0usize..4) {
        let alg = a.algebra();
        let r = alg.rank();
        let families: Vec<Vec<Subset>> = vec![
            power_set(r).filter(|s| s.len() <= k).collect(),
            Subset::full(r.min(k)).subsets().collect(),
        ];
        for family in families {
            let trace = family
                .iter()
                .map(|&i| (&a * &alg.basis_x(i)).xi(i))
                .fold(Rational::zero(), |s, t| s + t);
            let characters = family.iter().map(|&i| alg.tau_at(&a, i)).fold(Rational::zero(), |s, t| s + t);
            prop_assert_eq!(trace, characters);
        }
    }
}
