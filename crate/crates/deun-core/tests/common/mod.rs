//! Shared fixtures for the integration suites: random model
//! generators and an attribute-relabeling transform.

// Each test target uses a different subset of these helpers.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;

use deun_core::{
    make_decomposable, Attribute, CornerConfig, Cpd, DecisionModel, Deun, LabeledTable,
    UtilityForm,
};

/// Random edge sets over `1..=n` honoring the low-to-high convention.
pub fn random_deun(n: u32, rng: &mut impl Rng, edge_prob: f64) -> Deun {
    loop {
        let mut prob = Vec::new();
        let mut util = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if rng.gen_bool(edge_prob) {
                    prob.push((i, j));
                }
                if rng.gen_bool(edge_prob) {
                    util.push((i, j));
                }
            }
        }
        let deun = Deun::new(n, prob, util).unwrap();
        // Keep utility-parent counts small so tables stay tiny.
        if (1..=n).all(|v| deun.util_parents(v).len() <= 3) {
            return deun;
        }
    }
}

/// Monotone corner weights: an inclusion-increasing set function with
/// random positive increments, scaled so the all-star corner gets 1.
pub fn random_monotone_weights(n: u32, rng: &mut impl Rng) -> LabeledTable<f64> {
    let singles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let base = rng.gen_range(0.0..0.3);
    let full: f64 = base + singles.iter().sum::<f64>();
    let scope: Vec<u32> = (1..=n).collect();
    LabeledTable::from_fn(scope, |config| {
        let sum: f64 = config
            .stars()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(k, _)| singles[k])
            .sum();
        if config.stars().iter().all(|&s| s) {
            1.0
        } else {
            (base * 0.5 + sum) / full
        }
    })
}

/// A random decomposable model with linear-Gaussian CPDs and
/// exponential utilities over comfortable domains.
pub fn random_continuous_model(n: u32, decisions: usize, rng: &mut impl Rng) -> DecisionModel {
    let deun = make_decomposable(&random_deun(n, rng, 0.35));
    continuous_model_with_deun(deun, decisions, rng)
}

/// Same as [`random_continuous_model`] but with a caller-chosen graph.
pub fn continuous_model_with_deun(
    deun: Deun,
    decisions: usize,
    rng: &mut impl Rng,
) -> DecisionModel {
    let n = deun.n();
    let increasing: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let attributes: Vec<Attribute> = (1..=n)
        .map(|i| {
            let half = rng.gen_range(30.0..80.0);
            let up = increasing[i as usize - 1];
            Attribute {
                index: i,
                name: format!("a{i}"),
                domain: (-half, half),
                ref_zero: if up { -half } else { half },
                ref_star: if up { half } else { -half },
            }
        })
        .collect();
    let cpds = (0..decisions)
        .map(|_| {
            (1..=n)
                .map(|i| {
                    let coeffs: BTreeMap<u32, f64> = deun
                        .prob_parents(i)
                        .into_iter()
                        .map(|p| (p, rng.gen_range(-0.5..0.5)))
                        .collect();
                    (
                        i,
                        Cpd::LinearGaussian {
                            intercept: rng.gen_range(-3.0..3.0),
                            coeffs,
                            sigma: rng.gen_range(0.3..2.5),
                        },
                    )
                })
                .collect()
        })
        .collect();
    let utilities = (1..=n)
        .map(|i| {
            let up = increasing[i as usize - 1];
            let map = CornerConfig::enumerate(&deun.util_parents(i))
                .into_iter()
                .map(|cfg| {
                    let delta = rng.gen_range(0.01..0.06);
                    let form = if up {
                        UtilityForm::ExpIncreasing { delta }
                    } else if rng.gen_bool(0.5) {
                        UtilityForm::ExpDecreasing { delta }
                    } else {
                        UtilityForm::OneMinusExp { delta }
                    };
                    (cfg, form)
                })
                .collect();
            (i, map)
        })
        .collect();
    DecisionModel {
        deun,
        attributes,
        decisions: (0..decisions).map(|d| format!("d{d}")).collect(),
        cpds,
        utilities,
        corner_weights: random_monotone_weights(n, rng),
    }
}

/// A random fully tabular model (supports of 2..=max_support points).
pub fn random_tabular_model(
    n: u32,
    decisions: usize,
    max_support: usize,
    rng: &mut impl Rng,
) -> DecisionModel {
    let deun = random_deun(n, rng, 0.35);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=max_support)).collect();
    let supports: Vec<Vec<f64>> = sizes
        .iter()
        .map(|&k| {
            let mut pts: Vec<f64> = Vec::with_capacity(k);
            let mut cur = rng.gen_range(-10.0..-5.0);
            for _ in 0..k {
                pts.push(cur);
                cur += rng.gen_range(1.0..5.0);
            }
            pts
        })
        .collect();
    let attributes: Vec<Attribute> = (1..=n)
        .map(|i| {
            let s = &supports[i as usize - 1];
            Attribute {
                index: i,
                name: format!("a{i}"),
                domain: (s[0] - 1.0, s[s.len() - 1] + 1.0),
                ref_zero: s[0],
                ref_star: s[s.len() - 1],
            }
        })
        .collect();
    let cpds = (0..decisions)
        .map(|_| {
            (1..=n)
                .map(|i| {
                    let support = supports[i as usize - 1].clone();
                    let row_count: usize = deun
                        .prob_parents(i)
                        .iter()
                        .map(|&p| sizes[p as usize - 1])
                        .product();
                    let rows = (0..row_count)
                        .map(|_| {
                            let raw: Vec<f64> =
                                (0..support.len()).map(|_| rng.gen_range(0.05..1.0)).collect();
                            let total: f64 = raw.iter().sum();
                            raw.iter().map(|v| v / total).collect()
                        })
                        .collect();
                    (i, Cpd::Tabular { support, rows })
                })
                .collect()
        })
        .collect();
    let utilities = (1..=n)
        .map(|i| {
            let k = sizes[i as usize - 1];
            let map = CornerConfig::enumerate(&deun.util_parents(i))
                .into_iter()
                .map(|cfg| {
                    // Strictly increasing values: extrema sit at the
                    // support endpoints, matching the reference points.
                    let mut v = 0.0;
                    let values: Vec<f64> = (0..k)
                        .map(|_| {
                            let prev = v;
                            v += rng.gen_range(0.05..1.0);
                            prev
                        })
                        .collect();
                    let max = values[k - 1];
                    (
                        cfg,
                        UtilityForm::Tabular {
                            values: values.iter().map(|x| x / max).collect(),
                        },
                    )
                })
                .collect();
            (i, map)
        })
        .collect();
    DecisionModel {
        deun,
        attributes,
        decisions: (0..decisions).map(|d| format!("d{d}")).collect(),
        cpds,
        utilities,
        corner_weights: random_monotone_weights(n, rng),
    }
}

/// Applies a vertex relabeling `perm[old - 1] = new`. Only valid when
/// every edge keeps its low-to-high orientation under the permutation.
pub fn relabel_model(model: &DecisionModel, perm: &[u32]) -> DecisionModel {
    let n = model.n();
    let map = |v: u32| perm[v as usize - 1];
    let remap_edges = |edges: &std::collections::BTreeSet<(u32, u32)>| {
        edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (map(i), map(j));
                assert!(a < b, "permutation must preserve edge orientation");
                (a, b)
            })
            .collect::<Vec<_>>()
    };
    let deun = Deun::new(
        n,
        remap_edges(model.deun.prob_edges()),
        remap_edges(model.deun.util_edges()),
    )
    .unwrap();

    let mut attributes: Vec<Option<Attribute>> = vec![None; n as usize];
    for attr in &model.attributes {
        let mut moved = attr.clone();
        moved.index = map(attr.index);
        let slot = moved.index as usize - 1;
        attributes[slot] = Some(moved);
    }
    let attributes: Vec<Attribute> = attributes.into_iter().map(Option::unwrap).collect();

    let cpds = model
        .cpds
        .iter()
        .map(|per_decision| {
            per_decision
                .iter()
                .map(|(&i, cpd)| {
                    let cpd = match cpd {
                        Cpd::LinearGaussian {
                            intercept,
                            coeffs,
                            sigma,
                        } => Cpd::LinearGaussian {
                            intercept: *intercept,
                            coeffs: coeffs.iter().map(|(&p, &c)| (map(p), c)).collect(),
                            sigma: *sigma,
                        },
                        Cpd::Tabular { support, rows } => {
                            // Row-major order over ascending parents must
                            // be rebuilt when the parents' order flips.
                            let old_parents = model.deun.prob_parents(i);
                            let new_parents = deun.prob_parents(map(i));
                            let old_dims: Vec<usize> = old_parents
                                .iter()
                                .map(|&p| match &model.cpds[0][&p] {
                                    Cpd::Tabular { support, .. } => support.len(),
                                    _ => unreachable!(),
                                })
                                .collect();
                            // position of each new parent among the old.
                            let order: Vec<usize> = new_parents
                                .iter()
                                .map(|&np| {
                                    old_parents.iter().position(|&op| map(op) == np).unwrap()
                                })
                                .collect();
                            let total: usize = old_dims.iter().product::<usize>().max(1);
                            let mut rows_new = vec![Vec::new(); total];
                            for (flat, row) in rows.iter().enumerate() {
                                let mut rem = flat;
                                let mut assign = vec![0usize; old_dims.len()];
                                for k in (0..old_dims.len()).rev() {
                                    assign[k] = rem % old_dims[k];
                                    rem /= old_dims[k];
                                }
                                let new_flat = order
                                    .iter()
                                    .fold(0usize, |acc, &k| acc * old_dims[k] + assign[k]);
                                rows_new[new_flat] = row.clone();
                            }
                            Cpd::Tabular {
                                support: support.clone(),
                                rows: rows_new,
                            }
                        }
                    };
                    (map(i), cpd)
                })
                .collect()
        })
        .collect();

    let utilities = model
        .utilities
        .iter()
        .map(|(&i, per_corner)| {
            let new_scope = deun.util_parents(map(i));
            let map_cfg = |cfg: &CornerConfig| {
                let stars = new_scope
                    .iter()
                    .map(|&np| {
                        let old = model.deun.util_parents(i);
                        let &op = old.iter().find(|&&op| map(op) == np).unwrap();
                        cfg.is_star(op).unwrap()
                    })
                    .collect();
                CornerConfig::new(new_scope.clone(), stars)
            };
            (
                map(i),
                per_corner
                    .iter()
                    .map(|(cfg, form)| (map_cfg(cfg), form.clone()))
                    .collect::<BTreeMap<_, _>>(),
            )
        })
        .collect();

    let scope: Vec<u32> = (1..=n).collect();
    let corner_weights = LabeledTable::from_fn(scope.clone(), |config| {
        // New config corresponds to the old corner with each old
        // attribute's bit read from its new position.
        let old_stars: Vec<bool> = (1..=n).map(|old| config.is_star(map(old)).unwrap()).collect();
        *model
            .corner_weights
            .get(&CornerConfig::new(scope.clone(), old_stars))
    });

    DecisionModel {
        deun,
        attributes,
        decisions: model.decisions.clone(),
        cpds,
        utilities,
        corner_weights,
    }
}

/// A random permutation of `1..=n` preserving both edge sets'
/// low-to-high orientation (identity is always valid).
pub fn random_consistent_permutation(
    model: &DecisionModel,
    rng: &mut impl Rng,
) -> Vec<u32> {
    let n = model.n() as usize;
    let ok = |perm: &[u32]| {
        model
            .deun
            .prob_edges()
            .iter()
            .chain(model.deun.util_edges())
            .all(|&(i, j)| perm[i as usize - 1] < perm[j as usize - 1])
    };
    for _ in 0..200 {
        let mut perm: Vec<u32> = (1..=n as u32).collect();
        // Fisher-Yates.
        for k in (1..n).rev() {
            let j = rng.gen_range(0..=k);
            perm.swap(k, j);
        }
        if ok(&perm) && perm.iter().enumerate().any(|(k, &v)| v != k as u32 + 1) {
            return perm;
        }
    }
    (1..=n as u32).collect()
}
