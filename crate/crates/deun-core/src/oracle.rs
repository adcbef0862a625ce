//! Independent verification backends for the closed-form engine: exact
//! enumeration over finite supports, seeded Monte Carlo for Gaussian
//! models, and adaptive quadrature for single expectations.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{DeunError, Result};
use crate::engine::PointwiseEvaluator;
use crate::expr::ExpLinExpr;
use crate::model::{Cpd, DecisionModel};

/// Identifier of the sampling scheme baked into reports, so an
/// independent implementation can reproduce the stream: ChaCha8 seeded
/// from the 64-bit seed, stream counter set to the sample index, one
/// standard normal per attribute in ascending index order.
pub const MC_ALGORITHM: &str = "chacha8/stream-per-sample/std-normal-ascending";

/// Largest joint support size exact enumeration will attempt.
pub const ENUMERATION_CAP: u64 = 10_000_000;

/// Outcome of a Monte Carlo estimation run.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub estimate: f64,
    /// Sample standard deviation over the square root of the count.
    pub std_error: f64,
    pub sample_count: u64,
    pub seed: u64,
    /// Sampling-scheme identifier ([`MC_ALGORITHM`]).
    pub algorithm: String,
    /// Fraction of samples with at least one coordinate outside its
    /// attribute domain (clamped or extended depending on the mode).
    pub out_of_domain_fraction: f64,
    /// True when out-of-domain coordinates were clamped to the domain
    /// boundary rather than evaluated through the analytic forms.
    pub clamped: bool,
}

/// Brute-force expected utility for fully tabular models: sums
/// probability times joint utility over every joint configuration.
pub fn exact_discrete_eu(model: &DecisionModel, decision: &str) -> Result<f64> {
    let d = model.decision_index(decision)?;
    let n = model.n() as usize;
    let supports: Vec<&[f64]> = (1..=model.n())
        .map(|i| {
            model
                .support(i)
                .ok_or(DeunError::UnsupportedCombination(i))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total_configs: u64 = 1;
    for s in &supports {
        total_configs = total_configs.saturating_mul(s.len() as u64);
        if total_configs > ENUMERATION_CAP {
            return Err(DeunError::TooLarge(total_configs));
        }
    }
    let evaluator = PointwiseEvaluator::new(model)?;
    let mut indices = vec![0usize; n];
    let mut point = vec![0.0f64; n];
    let mut total = 0.0;
    loop {
        let mut prob = 1.0;
        for i in 1..=model.n() {
            let k = i as usize - 1;
            point[k] = supports[k][indices[k]];
            match model.cpd(d, i) {
                Cpd::Tabular { rows, .. } => {
                    let parents = model.deun.prob_parents(i);
                    let row_idx = parents.iter().fold(0usize, |acc, &p| {
                        acc * supports[p as usize - 1].len() + indices[p as usize - 1]
                    });
                    prob *= rows[row_idx][indices[k]];
                }
                Cpd::LinearGaussian { .. } => {
                    return Err(DeunError::UnsupportedCombination(i))
                }
            }
        }
        if prob != 0.0 {
            total += prob * evaluator.evaluate(&point)?;
        }
        // Mixed-radix increment, last attribute fastest.
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(total);
            }
            k -= 1;
            indices[k] += 1;
            if indices[k] < supports[k].len() {
                break;
            }
            indices[k] = 0;
        }
    }
}

/// Monte Carlo expected utility by ancestral sampling; out-of-domain
/// coordinates are pushed through the analytic utility forms unchanged
/// (the convention of the closed-form path). See
/// [`monte_carlo_eu_clamped`] for the bounded-domain convention.
pub fn monte_carlo_eu(
    model: &DecisionModel,
    decision: &str,
    samples: u64,
    seed: u64,
) -> Result<McReport> {
    monte_carlo_run(model, decision, samples, seed, false)
}

/// Monte Carlo with out-of-domain coordinates clamped to the domain
/// boundary before utility evaluation.
pub fn monte_carlo_eu_clamped(
    model: &DecisionModel,
    decision: &str,
    samples: u64,
    seed: u64,
) -> Result<McReport> {
    monte_carlo_run(model, decision, samples, seed, true)
}

fn monte_carlo_run(
    model: &DecisionModel,
    decision: &str,
    samples: u64,
    seed: u64,
    clamp: bool,
) -> Result<McReport> {
    assert!(samples >= 1, "at least one sample required");
    let d = model.decision_index(decision)?;
    let n = model.n() as usize;
    for i in 1..=model.n() {
        if model.cpd(d, i).is_tabular() {
            return Err(DeunError::UnsupportedCombination(i));
        }
    }
    let evaluator = PointwiseEvaluator::new(model)?;
    let base = ChaCha8Rng::seed_from_u64(seed);

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut out_of_domain = 0u64;
    let mut point = vec![0.0f64; n];
    for s in 0..samples {
        // Per-sample stream: shard-independent and bit-reproducible.
        let mut rng = base.clone();
        rng.set_stream(s);
        let mut escaped = false;
        for i in 1..=model.n() {
            let (mu, sigma) = match model.cpd(d, i) {
                Cpd::LinearGaussian {
                    intercept,
                    coeffs,
                    sigma,
                } => {
                    let mu = intercept
                        + coeffs
                            .iter()
                            .map(|(&p, &c)| c * point[p as usize - 1])
                            .sum::<f64>();
                    (mu, *sigma)
                }
                Cpd::Tabular { .. } => unreachable!("checked above"),
            };
            let z: f64 = rng.sample(StandardNormal);
            let mut y = mu + sigma * z;
            let (lo, hi) = model.attribute(i).domain;
            if y < lo || y > hi {
                escaped = true;
                if clamp {
                    y = y.clamp(lo, hi);
                }
            }
            point[i as usize - 1] = y;
        }
        if escaped {
            out_of_domain += 1;
        }
        let u = evaluator.evaluate_unchecked(&point);
        sum += u;
        sum_sq += u * u;
    }

    let count = samples as f64;
    let estimate = sum / count;
    let variance = if samples > 1 {
        ((sum_sq - sum * sum / count) / (count - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(McReport {
        estimate,
        std_error: (variance / count).sqrt(),
        sample_count: samples,
        seed,
        algorithm: MC_ALGORITHM.to_string(),
        out_of_domain_fraction: out_of_domain as f64 / count,
        clamped: clamp,
    })
}

/// Absolute tolerance of [`quadrature_expectation`].
pub const QUADRATURE_TOL: f64 = 1e-10;
const QUADRATURE_MAX_DEPTH: u32 = 48;

/// Numerically integrates `e(y) * normal_pdf(y; mean, sigma)` over
/// `mean ± 12 sigma` with adaptive Simpson quadrature. Variables other
/// than `var` are evaluated at zero.
pub fn quadrature_expectation(e: &ExpLinExpr, var: u32, mean: f64, sigma: f64) -> Result<f64> {
    assert!(sigma > 0.0, "sigma must be positive");
    let norm = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    let f = |y: f64| {
        let density = norm * (-0.5 * ((y - mean) / sigma).powi(2)).exp();
        e.evaluate(&BTreeMap::from([(var, y)])) * density
    };
    let (a, b) = (mean - 12.0 * sigma, mean + 12.0 * sigma);
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive_simpson(&f, a, b, fa, fm, fb, whole, QUADRATURE_TOL, QUADRATURE_MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(DeunError::NonConvergence);
    }
    let half_tol = 0.5 * tol;
    let l = adaptive_simpson(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?;
    let r = adaptive_simpson(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?;
    Ok(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::LinForm;

    #[test]
    fn quadrature_density_normalizes() {
        let one = ExpLinExpr::one();
        let v = quadrature_expectation(&one, 1, 3.0, 2.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn quadrature_matches_mgf() {
        let e = ExpLinExpr::exp_term(1.0, LinForm::var(1, 0.1));
        let v = quadrature_expectation(&e, 1, 0.0, 1.0).unwrap();
        assert!((v - 0.005f64.exp()).abs() < 1e-8, "{v}");
    }

    #[test]
    fn quadrature_multi_term() {
        let e = ExpLinExpr::from_terms([
            (2.0, LinForm::var(1, 0.03)),
            (-0.5, LinForm::var(1, -0.02)),
            (1.0, LinForm::zero()),
        ]);
        let (mu, s) = (1.5, 4.0);
        let expected = 2.0 * (0.03 * mu + 0.5 * (0.03 * s as f64).powi(2)).exp()
            - 0.5 * (-0.02 * mu + 0.5 * (0.02 * s as f64).powi(2)).exp()
            + 1.0;
        let v = quadrature_expectation(&e, 1, mu, s).unwrap();
        assert!((v - expected).abs() < 1e-8, "{v} vs {expected}");
    }
}
