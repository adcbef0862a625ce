//! The bundled food-security worked example: four attributes (health,
//! educational attainment, social cohesion, policy cost), three free
//! school meal policies, Gaussian regressions and exponential
//! utilities. The serialized form ships at `models/food_security.json`;
//! `models/food_security_notes.md` documents every number.

use std::collections::BTreeMap;

use crate::graph::Deun;
use crate::model::{Attribute, Cpd, DecisionModel, UtilityForm};
use crate::table::{CornerConfig, LabeledTable};

pub const HEALTH: u32 = 1;
pub const EDUCATION: u32 = 2;
pub const SOCIAL: u32 = 3;
pub const COST: u32 = 4;

/// Per-attribute domains. Published expected-utility scores depend on
/// this (historically unstated) choice; these intervals cover every
/// policy's mean by at least six standard deviations, keeping
/// out-of-domain sampling mass negligible. See `models/CALIBRATION.md`
/// for the sensitivity analysis.
pub const DOMAINS: [(f64, f64); 4] = [
    (-40.0, 40.0),   // health index change
    (-350.0, 350.0), // educational attainment index change
    (-600.0, 600.0), // social cohesion index change
    (-60.0, 90.0),   // budget-percentage change
];

/// Builds the food-security decision model.
pub fn food_security_model() -> DecisionModel {
    // Health feeds education and social cohesion probabilistically;
    // utility independence is violated health -> education and
    // {health, education} -> cost.
    let deun = Deun::new(
        4,
        [(HEALTH, EDUCATION), (HEALTH, SOCIAL)],
        [(HEALTH, EDUCATION), (HEALTH, COST), (EDUCATION, COST)],
    )
    .expect("static structure is valid");

    let names = ["health", "education", "social", "cost"];
    let attributes = (0..4)
        .map(|k| {
            let (lo, hi) = DOMAINS[k];
            // Cost utilities decrease: the best reference is the lower
            // endpoint. The other three attributes increase.
            let decreasing = k as u32 + 1 == COST;
            Attribute {
                index: k as u32 + 1,
                name: names[k].to_string(),
                domain: (lo, hi),
                ref_zero: if decreasing { hi } else { lo },
                ref_star: if decreasing { lo } else { hi },
            }
        })
        .collect();

    let decisions = vec!["d0".to_string(), "d1".to_string(), "d2".to_string()];
    // Rows: theta_0H, sigma_H, theta_0C, sigma_C, theta_0E, sigma_E, theta_HE.
    let params = [
        [1.5, 5.0, 30.0, 8.0, 5.0, 40.0, 7.0],
        [-2.0, 4.0, -5.0, 5.0, -6.0, 20.0, 2.0],
        [-0.5, 3.0, 10.0, 4.0, 3.0, 15.0, 7.0],
    ];
    let (theta_0s, theta_hs, sigma_s) = (5.0, 17.0, 20.0);

    let gaussian = |intercept: f64, coeffs: &[(u32, f64)], sigma: f64| Cpd::LinearGaussian {
        intercept,
        coeffs: coeffs.iter().copied().collect(),
        sigma,
    };
    let cpds = params
        .iter()
        .map(|p| {
            let [t0h, sh, t0c, sc, t0e, se, the] = *p;
            BTreeMap::from([
                (HEALTH, gaussian(t0h, &[], sh)),
                (EDUCATION, gaussian(t0e, &[(HEALTH, the)], se)),
                (SOCIAL, gaussian(theta_0s, &[(HEALTH, theta_hs)], sigma_s)),
                (COST, gaussian(t0c, &[], sc)),
            ])
        })
        .collect();

    let corner = |key: &str, scope: &[u32]| CornerConfig::parse(key, scope).unwrap();
    let utilities = BTreeMap::from([
        (
            HEALTH,
            BTreeMap::from([(corner("", &[]), UtilityForm::ExpIncreasing { delta: 0.02 })]),
        ),
        (
            EDUCATION,
            // Conditioned on the health corner.
            BTreeMap::from([
                (
                    corner("0", &[HEALTH]),
                    UtilityForm::ExpIncreasing { delta: 0.01 },
                ),
                (
                    corner("*", &[HEALTH]),
                    UtilityForm::ExpIncreasing { delta: 0.005 },
                ),
            ]),
        ),
        (
            SOCIAL,
            BTreeMap::from([(corner("", &[]), UtilityForm::ExpIncreasing { delta: 0.01 })]),
        ),
        (
            COST,
            // Conditioned on (health, education) corners, in that key
            // order; only the all-zero corner is exp-decreasing.
            BTreeMap::from([
                (
                    corner("00", &[HEALTH, EDUCATION]),
                    UtilityForm::ExpDecreasing { delta: 0.05 },
                ),
                (
                    corner("0*", &[HEALTH, EDUCATION]),
                    UtilityForm::OneMinusExp { delta: 0.001 },
                ),
                (
                    corner("*0", &[HEALTH, EDUCATION]),
                    UtilityForm::OneMinusExp { delta: 0.005 },
                ),
                (
                    corner("**", &[HEALTH, EDUCATION]),
                    UtilityForm::OneMinusExp { delta: 0.02 },
                ),
            ]),
        ),
    ]);

    // Elicited joint utilities at the 16 reference corners, keyed in
    // (health, education, social, cost) order.
    let weights: BTreeMap<&str, f64> = BTreeMap::from([
        ("0000", 0.0),
        ("000*", 0.05),
        ("00*0", 0.2),
        ("00**", 0.25),
        ("0*00", 0.25),
        ("0*0*", 0.3),
        ("0**0", 0.5),
        ("0***", 0.55),
        ("*000", 0.5),
        ("*00*", 0.55),
        ("*0*0", 0.7),
        ("*0**", 0.75),
        ("**00", 0.75),
        ("**0*", 0.8),
        ("***0", 0.85),
        ("****", 1.0),
    ]);
    let scope = vec![HEALTH, EDUCATION, SOCIAL, COST];
    let corner_weights = LabeledTable::from_fn(scope, |c| weights[c.key().as_str()]);

    DecisionModel {
        deun,
        attributes,
        decisions,
        cpds,
        utilities,
        corner_weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_model;

    #[test]
    fn bundled_model_is_clean() {
        let model = food_security_model();
        let report = validate_model(&model);
        assert!(report.is_clean(), "{:?}", report.violations);
        assert!(report.warnings.is_empty(), "{:?}", report.warnings);
    }

    #[test]
    fn bundled_model_is_not_decomposable_until_filled() {
        let model = food_security_model();
        assert!(crate::graph::is_decomposable(&model.deun).is_err());
        let fixed = model.decompose();
        assert!(crate::graph::is_decomposable(&fixed.deun).is_ok());
        // Missing paths health -> cost and education -> cost are added.
        assert!(fixed.deun.prob_edges().contains(&(HEALTH, COST)));
        assert!(fixed.deun.prob_edges().contains(&(EDUCATION, COST)));
    }
}
