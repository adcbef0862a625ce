//! The elicited decision model: attributes with domains and reference
//! values, per-decision conditional distributions, per-corner-config
//! univariate utilities with min-max normalization, and corner weights.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{DeunError, Result};
use crate::expr::{ExpLinExpr, LinForm};
use crate::graph::{make_decomposable, Deun};
use crate::table::{CornerConfig, LabeledTable};

#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    pub index: u32,
    pub name: String,
    /// Closed interval `[lo, hi]`.
    pub domain: (f64, f64),
    pub ref_zero: f64,
    pub ref_star: f64,
}

/// A conditional distribution for one attribute under one decision.
#[derive(Debug, Clone, PartialEq)]
pub enum Cpd {
    LinearGaussian {
        intercept: f64,
        /// Regression coefficient per probabilistic parent.
        coeffs: BTreeMap<u32, f64>,
        /// Standard deviation, strictly positive.
        sigma: f64,
    },
    Tabular {
        /// Finite support of this attribute.
        support: Vec<f64>,
        /// One probability row per parent configuration, row-major over
        /// ascending parents; each row sums to one over `support`.
        rows: Vec<Vec<f64>>,
    },
}

impl Cpd {
    pub fn is_tabular(&self) -> bool {
        matches!(self, Cpd::Tabular { .. })
    }
}

/// Univariate utility shape for one corner configuration of the
/// utility parents, before normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum UtilityForm {
    /// `exp(delta * y)`, increasing.
    ExpIncreasing { delta: f64 },
    /// `exp(-delta * y)`, decreasing.
    ExpDecreasing { delta: f64 },
    /// `1 - exp(delta * y)`, decreasing.
    OneMinusExp { delta: f64 },
    /// Support-aligned values for a tabular attribute.
    Tabular { values: Vec<f64> },
}

/// A normalized utility evaluator together with the extrema of the
/// un-normalized form over the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedUtility {
    pub kind: NormalizedKind,
    /// Minimum of the un-normalized form over the domain.
    pub min: f64,
    /// Maximum of the un-normalized form over the domain.
    pub max: f64,
    /// Domain point attaining normalized value 1.
    pub star_point: f64,
    /// Domain point attaining normalized value 0.
    pub zero_point: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormalizedKind {
    /// Closed-form `c0 + c1 * exp(±delta * y)` in the attribute.
    Continuous(ExpLinExpr),
    /// Min-max rescaled support values.
    Tabular(Vec<f64>),
}

impl NormalizedUtility {
    /// Evaluates the normalized utility at a domain point. Tabular
    /// utilities require `support` to resolve the point's index.
    pub fn eval_at(&self, y: f64, var: u32, support: Option<&[f64]>) -> f64 {
        match &self.kind {
            NormalizedKind::Continuous(expr) => {
                expr.evaluate(&BTreeMap::from([(var, y)]))
            }
            NormalizedKind::Tabular(values) => {
                let support = support.expect("tabular utility needs the support");
                let idx = support
                    .iter()
                    .position(|&s| (s - y).abs() <= 1e-9)
                    .expect("point must be a support value");
                values[idx]
            }
        }
    }
}

/// Min-max normalization `u = (u_dot - m) / (M - m)` over the domain.
/// Monotone exponential forms take their extrema at the endpoints.
pub fn normalize_utility(form: &UtilityForm, attr: &Attribute) -> Result<NormalizedUtility> {
    let (lo, hi) = attr.domain;
    let var = attr.index;
    match form {
        UtilityForm::ExpIncreasing { delta } => {
            let (m, big_m) = ((delta * lo).exp(), (delta * hi).exp());
            if big_m == m {
                return Err(DeunError::DegenerateUtility);
            }
            let span = big_m - m;
            let expr = ExpLinExpr::from_terms([
                (-m / span, LinForm::zero()),
                (1.0 / span, LinForm::var(var, *delta)),
            ]);
            Ok(NormalizedUtility {
                kind: NormalizedKind::Continuous(expr),
                min: m,
                max: big_m,
                star_point: hi,
                zero_point: lo,
            })
        }
        UtilityForm::ExpDecreasing { delta } => {
            let (m, big_m) = ((-delta * hi).exp(), (-delta * lo).exp());
            if big_m == m {
                return Err(DeunError::DegenerateUtility);
            }
            let span = big_m - m;
            let expr = ExpLinExpr::from_terms([
                (-m / span, LinForm::zero()),
                (1.0 / span, LinForm::var(var, -*delta)),
            ]);
            Ok(NormalizedUtility {
                kind: NormalizedKind::Continuous(expr),
                min: m,
                max: big_m,
                star_point: lo,
                zero_point: hi,
            })
        }
        UtilityForm::OneMinusExp { delta } => {
            let (m, big_m) = (1.0 - (delta * hi).exp(), 1.0 - (delta * lo).exp());
            if big_m == m {
                return Err(DeunError::DegenerateUtility);
            }
            let span = big_m - m;
            let expr = ExpLinExpr::from_terms([
                ((1.0 - m) / span, LinForm::zero()),
                (-1.0 / span, LinForm::var(var, *delta)),
            ]);
            Ok(NormalizedUtility {
                kind: NormalizedKind::Continuous(expr),
                min: m,
                max: big_m,
                star_point: lo,
                zero_point: hi,
            })
        }
        UtilityForm::Tabular { values } => {
            let m = values.iter().copied().fold(f64::INFINITY, f64::min);
            let big_m = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if big_m == m {
                return Err(DeunError::DegenerateUtility);
            }
            let rescaled: Vec<f64> = values.iter().map(|v| (v - m) / (big_m - m)).collect();
            // Support points are resolved by the caller; extrema
            // positions are reported through min/max only.
            Ok(NormalizedUtility {
                kind: NormalizedKind::Tabular(rescaled),
                min: m,
                max: big_m,
                star_point: f64::NAN,
                zero_point: f64::NAN,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionModel {
    pub deun: Deun,
    /// Attribute `i` at position `i - 1`.
    pub attributes: Vec<Attribute>,
    pub decisions: Vec<String>,
    /// One CPD map per decision, keyed by attribute index.
    pub cpds: Vec<BTreeMap<u32, Cpd>>,
    /// Per attribute, one form per corner configuration of its utility
    /// parents; shared across decisions.
    pub utilities: BTreeMap<u32, BTreeMap<CornerConfig, UtilityForm>>,
    /// Corner weights `u(y^{0*})` over the full attribute scope.
    pub corner_weights: LabeledTable<f64>,
}

impl DecisionModel {
    pub fn n(&self) -> u32 {
        self.deun.n()
    }

    pub fn attribute(&self, index: u32) -> &Attribute {
        &self.attributes[index as usize - 1]
    }

    pub fn decision_index(&self, label: &str) -> Result<usize> {
        self.decisions
            .iter()
            .position(|d| d == label)
            .ok_or_else(|| DeunError::UnknownDecision(label.to_string()))
    }

    pub fn cpd(&self, decision: usize, attr: u32) -> &Cpd {
        &self.cpds[decision][&attr]
    }

    /// Finite support of a tabular attribute, from the first decision.
    pub fn support(&self, attr: u32) -> Option<&[f64]> {
        match &self.cpds[0][&attr] {
            Cpd::Tabular { support, .. } => Some(support),
            Cpd::LinearGaussian { .. } => None,
        }
    }

    pub fn utility_form(&self, attr: u32, parent_cfg: &CornerConfig) -> &UtilityForm {
        &self.utilities[&attr][parent_cfg]
    }

    /// Replaces the network with its decomposable closure, giving every
    /// new probabilistic parent a vanishing influence: zero regression
    /// coefficients for Gaussians, replicated rows for tabular CPDs.
    /// The joint distribution of every decision is unchanged.
    pub fn decompose(&self) -> DecisionModel {
        let deun = make_decomposable(&self.deun);
        let mut cpds = Vec::with_capacity(self.cpds.len());
        for per_decision in &self.cpds {
            let mut new_map = BTreeMap::new();
            for (&attr, cpd) in per_decision {
                let old_parents = self.deun.prob_parents(attr);
                let new_parents = deun.prob_parents(attr);
                let cpd = if new_parents == old_parents {
                    cpd.clone()
                } else {
                    match cpd {
                        Cpd::LinearGaussian {
                            intercept,
                            coeffs,
                            sigma,
                        } => {
                            let mut coeffs = coeffs.clone();
                            for &p in &new_parents {
                                coeffs.entry(p).or_insert(0.0);
                            }
                            Cpd::LinearGaussian {
                                intercept: *intercept,
                                coeffs,
                                sigma: *sigma,
                            }
                        }
                        Cpd::Tabular { support, rows } => {
                            let dims: Vec<usize> = new_parents
                                .iter()
                                .map(|p| self.support(*p).map(|s| s.len()).unwrap_or(1))
                                .collect();
                            let old_pos: Vec<usize> = old_parents
                                .iter()
                                .map(|p| new_parents.iter().position(|np| np == p).unwrap())
                                .collect();
                            let old_dims: Vec<usize> =
                                old_pos.iter().map(|&k| dims[k]).collect();
                            let total: usize = dims.iter().product::<usize>().max(1);
                            let mut new_rows = Vec::with_capacity(total);
                            for flat in 0..total {
                                // Decode the new parent assignment, project
                                // onto the old parents, re-encode.
                                let mut rem = flat;
                                let mut assign = vec![0usize; dims.len()];
                                for k in (0..dims.len()).rev() {
                                    assign[k] = rem % dims[k];
                                    rem /= dims[k];
                                }
                                let old_idx = old_pos.iter().zip(&old_dims).fold(
                                    0usize,
                                    |acc, (&k, &d)| acc * d + assign[k],
                                );
                                new_rows.push(rows[old_idx].clone());
                            }
                            Cpd::Tabular {
                                support: support.clone(),
                                rows: new_rows,
                            }
                        }
                    }
                };
                new_map.insert(attr, cpd);
            }
            cpds.push(new_map);
        }
        DecisionModel {
            deun,
            attributes: self.attributes.clone(),
            decisions: self.decisions.clone(),
            cpds,
            utilities: self.utilities.clone(),
            corner_weights: self.corner_weights.clone(),
        }
    }
}

/// The vector of conditional utilities and disutilities for attribute
/// `i`: scope `{i} ∪ Π_i^u`; star entries hold the normalized utility,
/// zero entries its complement `1 - u`, both as expressions in `y_i`.
pub fn conditional_utility_vector(
    model: &DecisionModel,
    i: u32,
) -> Result<LabeledTable<ExpLinExpr>> {
    let util_parents = model.deun.util_parents(i);
    let mut scope: Vec<u32> = util_parents.clone();
    scope.push(i);
    scope.sort_unstable();
    let mut entries = Vec::with_capacity(1 << scope.len());
    for config in CornerConfig::enumerate(&scope) {
        let parent_cfg = config.restrict(&util_parents);
        let form = model.utility_form(i, &parent_cfg);
        let normalized = normalize_utility(form, model.attribute(i))?;
        let u = match normalized.kind {
            NormalizedKind::Continuous(expr) => expr,
            NormalizedKind::Tabular(_) => {
                return Err(DeunError::UnsupportedCombination(i));
            }
        };
        let entry = if config.is_star(i).unwrap() {
            u
        } else {
            ExpLinExpr::one().sub(&u)
        };
        entries.push(entry);
    }
    Ok(LabeledTable::new(scope, entries))
}

/// Discrete counterpart of [`conditional_utility_vector`] for tabular
/// attributes: entries are functions over the attribute's support.
pub fn conditional_utility_vector_discrete(
    model: &DecisionModel,
    i: u32,
) -> Result<LabeledTable<crate::discrete::DiscreteExpr>> {
    use crate::discrete::DiscreteExpr;
    let util_parents = model.deun.util_parents(i);
    let mut scope: Vec<u32> = util_parents.clone();
    scope.push(i);
    scope.sort_unstable();
    let mut entries = Vec::with_capacity(1 << scope.len());
    for config in CornerConfig::enumerate(&scope) {
        let parent_cfg = config.restrict(&util_parents);
        let form = model.utility_form(i, &parent_cfg);
        let normalized = normalize_utility(form, model.attribute(i))?;
        let values = match normalized.kind {
            NormalizedKind::Tabular(values) => values,
            NormalizedKind::Continuous(_) => {
                return Err(DeunError::UnsupportedCombination(i));
            }
        };
        let entry = if config.is_star(i).unwrap() {
            DiscreteExpr::univariate(i, values)
        } else {
            DiscreteExpr::univariate(i, values.iter().map(|v| 1.0 - v).collect())
        };
        entries.push(entry);
    }
    Ok(LabeledTable::new(scope, entries))
}

/// Outcome of [`validate_model`]: all violations, not just the first,
/// plus non-fatal warnings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every model invariant and cross-reference; violations are
/// data, not errors.
pub fn validate_model(model: &DecisionModel) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = model.n();
    let v = &mut report.violations;

    if model.attributes.len() as u32 != n {
        v.push(format!(
            "expected {n} attributes, found {}",
            model.attributes.len()
        ));
        return report;
    }
    let mut names = BTreeSet::new();
    for (pos, attr) in model.attributes.iter().enumerate() {
        let i = pos as u32 + 1;
        if attr.index != i {
            v.push(format!(
                "attribute at position {pos} has index {}, expected {i}",
                attr.index
            ));
        }
        if attr.name.is_empty() {
            v.push(format!("attribute {i} has an empty name"));
        }
        if !names.insert(attr.name.clone()) {
            v.push(format!("duplicate attribute name '{}'", attr.name));
        }
        let (lo, hi) = attr.domain;
        if !(lo < hi) {
            v.push(format!("attribute {i}: domain [{lo}, {hi}] is not an interval"));
        }
        if attr.ref_zero == attr.ref_star {
            v.push(format!("attribute {i}: reference values coincide"));
        }
        for (label, val) in [("ref_zero", attr.ref_zero), ("ref_star", attr.ref_star)] {
            if val < lo || val > hi {
                v.push(format!("attribute {i}: {label} = {val} outside [{lo}, {hi}]"));
            }
        }
    }

    if model.decisions.is_empty() {
        v.push("no decisions declared".into());
    }
    let mut labels = BTreeSet::new();
    for d in &model.decisions {
        if !labels.insert(d.clone()) {
            v.push(format!("duplicate decision label '{d}'"));
        }
    }
    if model.cpds.len() != model.decisions.len() {
        v.push(format!(
            "{} CPD sets for {} decisions",
            model.cpds.len(),
            model.decisions.len()
        ));
        return report;
    }

    for (d, per_decision) in model.cpds.iter().enumerate() {
        let label = &model.decisions[d];
        for i in 1..=n {
            let parents = model.deun.prob_parents(i);
            match per_decision.get(&i) {
                None => v.push(format!("decision '{label}': attribute {i} has no CPD")),
                Some(Cpd::LinearGaussian { coeffs, sigma, .. }) => {
                    let keys: Vec<u32> = coeffs.keys().copied().collect();
                    if keys != parents {
                        v.push(format!(
                            "decision '{label}', attribute {i}: coefficient keys {keys:?} do not match probabilistic parents {parents:?}"
                        ));
                    }
                    if !(*sigma > 0.0) {
                        v.push(format!(
                            "decision '{label}', attribute {i}: sigma must be positive"
                        ));
                    }
                }
                Some(Cpd::Tabular { support, rows }) => {
                    if support.is_empty() {
                        v.push(format!(
                            "decision '{label}', attribute {i}: empty support"
                        ));
                        continue;
                    }
                    if let Some(base) = model.support(i) {
                        if base != &support[..] {
                            v.push(format!(
                                "decision '{label}', attribute {i}: support differs across decisions"
                            ));
                        }
                    }
                    let mut expected_rows = 1usize;
                    for &p in &parents {
                        match per_decision.get(&p) {
                            Some(Cpd::Tabular { support: ps, .. }) => expected_rows *= ps.len(),
                            _ => {
                                v.push(format!(
                                    "decision '{label}', attribute {i}: tabular CPD requires tabular parent {p}"
                                ));
                            }
                        }
                    }
                    if rows.len() != expected_rows {
                        v.push(format!(
                            "decision '{label}', attribute {i}: {} probability rows, expected {expected_rows}",
                            rows.len()
                        ));
                    }
                    for (r, row) in rows.iter().enumerate() {
                        if row.len() != support.len() {
                            v.push(format!(
                                "decision '{label}', attribute {i}: row {r} has {} entries for a support of {}",
                                row.len(),
                                support.len()
                            ));
                            continue;
                        }
                        if row.iter().any(|&p| p < 0.0) {
                            v.push(format!(
                                "decision '{label}', attribute {i}: row {r} has a negative probability"
                            ));
                        }
                        let total: f64 = row.iter().sum();
                        if (total - 1.0).abs() > 1e-12 {
                            v.push(format!(
                                "decision '{label}', attribute {i}: row {r} sums to {total}, not 1"
                            ));
                        }
                    }
                }
            }
        }
    }

    for i in 1..=n {
        let util_parents = model.deun.util_parents(i);
        let attr = model.attribute(i);
        match model.utilities.get(&i) {
            None => v.push(format!("attribute {i}: no utility specification")),
            Some(map) => {
                let expected: BTreeSet<CornerConfig> =
                    CornerConfig::enumerate(&util_parents).into_iter().collect();
                let present: BTreeSet<CornerConfig> = map.keys().cloned().collect();
                for missing in expected.difference(&present) {
                    v.push(format!(
                        "attribute {i}: missing utility form for parent corner '{}'",
                        missing.key()
                    ));
                }
                for extra in present.difference(&expected) {
                    v.push(format!(
                        "attribute {i}: utility form for unknown parent corner '{}'",
                        extra.key()
                    ));
                }
                for (cfg, form) in map {
                    match form {
                        UtilityForm::ExpIncreasing { delta }
                        | UtilityForm::ExpDecreasing { delta }
                        | UtilityForm::OneMinusExp { delta } => {
                            if !(*delta > 0.0) {
                                v.push(format!(
                                    "attribute {i}, corner '{}': delta must be positive",
                                    cfg.key()
                                ));
                                continue;
                            }
                            match normalize_utility(form, attr) {
                                Err(e) => v.push(format!(
                                    "attribute {i}, corner '{}': {e}",
                                    cfg.key()
                                )),
                                Ok(norm) => {
                                    if norm.star_point != attr.ref_star {
                                        v.push(format!(
                                            "attribute {i}, corner '{}': normalized maximum at {} but ref_star = {}",
                                            cfg.key(),
                                            norm.star_point,
                                            attr.ref_star
                                        ));
                                    }
                                    if norm.zero_point != attr.ref_zero {
                                        v.push(format!(
                                            "attribute {i}, corner '{}': normalized minimum at {} but ref_zero = {}",
                                            cfg.key(),
                                            norm.zero_point,
                                            attr.ref_zero
                                        ));
                                    }
                                }
                            }
                        }
                        UtilityForm::Tabular { values } => {
                            match model.support(i) {
                                None => v.push(format!(
                                    "attribute {i}, corner '{}': tabular utility on a continuous attribute",
                                    cfg.key()
                                )),
                                Some(support) => {
                                    if values.len() != support.len() {
                                        v.push(format!(
                                            "attribute {i}, corner '{}': {} utility values for a support of {}",
                                            cfg.key(),
                                            values.len(),
                                            support.len()
                                        ));
                                        continue;
                                    }
                                    if values.iter().any(|&u| !(0.0..=1.0).contains(&u)) {
                                        v.push(format!(
                                            "attribute {i}, corner '{}': utility values outside [0, 1]",
                                            cfg.key()
                                        ));
                                    }
                                    match normalize_utility(form, attr) {
                                        Err(e) => v.push(format!(
                                            "attribute {i}, corner '{}': {e}",
                                            cfg.key()
                                        )),
                                        Ok(norm) => {
                                            if let NormalizedKind::Tabular(vals) = &norm.kind {
                                                let star = support[argmax(vals)];
                                                let zero = support[argmin(vals)];
                                                if star != attr.ref_star {
                                                    v.push(format!(
                                                        "attribute {i}, corner '{}': maximum utility at {star} but ref_star = {}",
                                                        cfg.key(),
                                                        attr.ref_star
                                                    ));
                                                }
                                                if zero != attr.ref_zero {
                                                    v.push(format!(
                                                        "attribute {i}, corner '{}': minimum utility at {zero} but ref_zero = {}",
                                                        cfg.key(),
                                                        attr.ref_zero
                                                    ));
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Corner weights: range and single-flip monotonicity.
    let full_scope: Vec<u32> = (1..=n).collect();
    debug_assert_eq!(model.corner_weights.scope(), &full_scope[..]);
    for config in model.corner_weights.configs() {
        let w = *model.corner_weights.get(&config);
        if !(0.0..=1.0).contains(&w) {
            report
                .violations
                .push(format!("corner '{}': weight {w} outside [0, 1]", config.key()));
        }
        for (k, &star) in config.stars().iter().enumerate() {
            if star {
                continue;
            }
            let mut flipped = config.stars().to_vec();
            flipped[k] = true;
            let up = CornerConfig::new(full_scope.clone(), flipped);
            let wu = *model.corner_weights.get(&up);
            if wu < w {
                report.violations.push(format!(
                    "corner weights not monotone: '{}' = {w} exceeds '{}' = {wu}",
                    config.key(),
                    up.key()
                ));
            } else if wu == w {
                report.warnings.push(format!(
                    "corner weights tie between '{}' and '{}'",
                    config.key(),
                    up.key()
                ));
            }
        }
    }

    report
}

fn argmax(vals: &[f64]) -> usize {
    vals.iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap()
}

fn argmin(vals: &[f64]) -> usize {
    vals.iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn attr(index: u32, lo: f64, hi: f64, ref_zero: f64, ref_star: f64) -> Attribute {
        Attribute {
            index,
            name: format!("y{index}"),
            domain: (lo, hi),
            ref_zero,
            ref_star,
        }
    }

    #[test]
    fn exp_decreasing_normalization_matches_closed_form() {
        let a = attr(1, -100.0, 100.0, 100.0, -100.0);
        let form = UtilityForm::ExpDecreasing { delta: 0.05 };
        let norm = normalize_utility(&form, &a).unwrap();
        assert!((norm.min - (-5.0f64).exp()).abs() < 1e-15);
        assert!((norm.max - 5.0f64.exp()).abs() < 1e-12);
        assert!((norm.eval_at(-100.0, 1, None) - 1.0).abs() < 1e-12);
        assert!(norm.eval_at(100.0, 1, None).abs() < 1e-12);
    }

    #[test]
    fn normalization_hits_zero_and_one_at_endpoints() {
        let a = attr(2, -40.0, 60.0, -40.0, 60.0);
        for form in [
            UtilityForm::ExpIncreasing { delta: 0.02 },
            UtilityForm::ExpDecreasing { delta: 0.03 },
            UtilityForm::OneMinusExp { delta: 0.01 },
        ] {
            let norm = normalize_utility(&form, &a).unwrap();
            let lo = norm.eval_at(-40.0, 2, None);
            let hi = norm.eval_at(60.0, 2, None);
            let (min, max) = (lo.min(hi), lo.max(hi));
            assert!(min.abs() < 1e-12, "{form:?}: min {min}");
            assert!((max - 1.0).abs() < 1e-12, "{form:?}: max {max}");
        }
    }

    #[test]
    fn degenerate_tabular_utility_rejected() {
        let a = attr(1, 0.0, 1.0, 0.0, 1.0);
        let form = UtilityForm::Tabular {
            values: vec![0.4, 0.4],
        };
        assert!(matches!(
            normalize_utility(&form, &a),
            Err(DeunError::DegenerateUtility)
        ));
    }
}
