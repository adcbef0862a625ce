//! Cross-cutting integration tests: serialization round-trips on
//! random models, alternative marginalization orders, and regression
//! pins for the bundled food-security example.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use deun_core::{
    jtree_eu, parse_model_str, rank_decisions, serialize_model, theorem1_eu,
    theorem1_eu_with_order, validate_model, DeunError, Method,
};

use common::{random_continuous_model, random_tabular_model};

#[test]
fn serialization_round_trips_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..20 {
        let model = if trial % 2 == 0 {
            random_continuous_model(rng.gen_range(2..=6), 2, &mut rng)
        } else {
            random_tabular_model(rng.gen_range(2..=4), 2, 3, &mut rng)
        };
        let text = serialize_model(&model);
        let parsed = parse_model_str(&text).unwrap();
        // Canonical form is a fixed point.
        assert_eq!(serialize_model(&parsed), text, "trial {trial}");
        // And the parsed model evaluates identically.
        let a = theorem1_eu(&model, "d0").unwrap();
        let b = theorem1_eu(&parsed, "d0").unwrap();
        assert_eq!(a.to_bits(), b.to_bits(), "trial {trial}");
    }
}

#[test]
fn random_models_pass_validation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let model = random_continuous_model(rng.gen_range(2..=6), 2, &mut rng);
        let report = validate_model(&model);
        assert!(report.is_clean(), "{:?}", report.violations);
    }
    for _ in 0..10 {
        let model = random_tabular_model(rng.gen_range(2..=4), 2, 3, &mut rng);
        let report = validate_model(&model);
        assert!(report.is_clean(), "{:?}", report.violations);
    }
}

#[test]
fn custom_orders_agree_with_default() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..25 {
        let n = rng.gen_range(2..=6);
        let model = random_continuous_model(n, 1, &mut rng);
        let reference = theorem1_eu(&model, "d0").unwrap();
        // Any order that integrates children before their parents in
        // the probabilistic graph is admissible.
        let mut order: Vec<u32> = (1..=n).rev().collect();
        for _ in 0..20 {
            let a = rng.gen_range(0..n as usize);
            let b = rng.gen_range(0..n as usize);
            order.swap(a, b);
            let valid = model.deun.prob_edges().iter().all(|&(i, j)| {
                let pos = |v: u32| order.iter().position(|&x| x == v).unwrap();
                pos(j) < pos(i)
            });
            if valid {
                let alt = theorem1_eu_with_order(&model, "d0", &order).unwrap();
                assert!((alt - reference).abs() <= 1e-9 * reference.abs().max(1.0));
            } else {
                assert!(matches!(
                    theorem1_eu_with_order(&model, "d0", &order),
                    Err(DeunError::Validation(_))
                ));
            }
        }
    }
}

#[test]
fn food_model_regression_values() {
    let model = deun_core::food::food_security_model();
    assert!(validate_model(&model).is_clean());

    // Pinned expected utilities under the bundled six-sigma domains.
    let expected = [
        ("d0", 0.196659376800895236),
        ("d1", 0.173960623987452601),
        ("d2", 0.181624508672931367),
    ];
    for &(label, value) in &expected {
        let eu = theorem1_eu(&model, label).unwrap();
        assert!((eu - value).abs() < 1e-12, "{label}: {eu}");
    }

    // Ranking mirrors the pinned scores and is method-independent.
    let ranked = rank_decisions(&model, Method::Theorem1).unwrap();
    let labels: Vec<&str> = ranked.iter().map(|(l, _)| l.as_str()).collect();
    assert_eq!(labels, vec!["d0", "d2", "d1"]);
    let ranked_jt = rank_decisions(&model.decompose(), Method::Jtree).unwrap();
    let labels_jt: Vec<&str> = ranked_jt.iter().map(|(l, _)| l.as_str()).collect();
    assert_eq!(labels_jt, labels);

    // The health attribute can be integrated after the later
    // attributes: only probabilistic edges constrain the order.
    for label in ["d0", "d1", "d2"] {
        let default = theorem1_eu(&model, label).unwrap();
        let custom = theorem1_eu_with_order(&model, label, &[2, 3, 1, 4]).unwrap();
        assert!((default - custom).abs() <= 1e-13, "{label}: {default} vs {custom}");
    }
}

#[test]
fn food_model_decomposition_adds_shadow_edges() {
    let model = deun_core::food::food_security_model();
    assert!(deun_core::is_decomposable(&model.deun).is_err());
    let closed = model.decompose();
    assert!(deun_core::is_decomposable(&closed.deun).is_ok());
    let added: Vec<_> = closed
        .deun
        .prob_edges()
        .difference(model.deun.prob_edges())
        .copied()
        .collect();
    assert_eq!(added, vec![(1, 4), (2, 4)]);
    // The added parents are vacuous, so both graphs evaluate alike.
    for label in ["d0", "d1", "d2"] {
        let a = theorem1_eu(&model, label).unwrap();
        let b = jtree_eu(&closed, label).unwrap();
        assert!((a - b).abs() <= 1e-12, "{label}: {a} vs {b}");
    }
}
