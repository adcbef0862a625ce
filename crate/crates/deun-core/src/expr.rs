//! Sums of `coefficient * exp(linear form)`, closed under products and
//! Gaussian expectation. This is the closed-form integration kernel: for
//! Gaussian `Y` the identity `E[exp(tY)] = exp(t*mean + 0.5 t^2 sigma^2)`
//! keeps every intermediate quantity inside the class.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{DeunError, Result};

/// Exponent-merging tolerance: two linear forms are the same exponent
/// when every coefficient (and the constant) matches this closely.
const MERGE_TOL: f64 = 1e-12;
/// Terms below this magnitude are dropped during canonicalization.
const UNDERFLOW_TOL: f64 = 1e-300;

/// A linear form `constant + sum_i coeff_i * y_i` over attribute indices.
#[derive(Debug, Clone, PartialEq)]
pub struct LinForm {
    constant: f64,
    coeffs: BTreeMap<u32, f64>,
}

impl LinForm {
    pub fn constant(c: f64) -> Self {
        LinForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `c + sum coeff * var` with explicit zeros removed.
    pub fn new(constant: f64, coeffs: impl IntoIterator<Item = (u32, f64)>) -> Self {
        let mut form = LinForm {
            constant,
            coeffs: coeffs.into_iter().collect(),
        };
        form.coeffs.retain(|_, c| *c != 0.0);
        form
    }

    pub fn var(v: u32, coeff: f64) -> Self {
        Self::new(0.0, [(v, coeff)])
    }

    pub fn constant_part(&self) -> f64 {
        self.constant
    }

    pub fn coeff(&self, v: u32) -> f64 {
        self.coeffs.get(&v).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, f64> {
        &self.coeffs
    }

    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn mentions(&self, v: u32) -> bool {
        self.coeffs.contains_key(&v)
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        let mut coeffs = self.coeffs.clone();
        for (&v, &c) in &other.coeffs {
            *coeffs.entry(v).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        LinForm {
            constant: self.constant + other.constant,
            coeffs,
        }
    }

    pub fn scale(&self, s: f64) -> LinForm {
        LinForm::new(
            self.constant * s,
            self.coeffs.iter().map(|(&v, &c)| (v, c * s)),
        )
    }

    /// Drop `var`, returning its coefficient and the remainder.
    fn split(&self, var: u32) -> (f64, LinForm) {
        let mut rest = self.clone();
        let b = rest.coeffs.remove(&var).unwrap_or(0.0);
        (b, rest)
    }

    pub fn evaluate(&self, point: &BTreeMap<u32, f64>) -> f64 {
        self.constant
            + self
                .coeffs
                .iter()
                .map(|(v, c)| c * point.get(v).copied().unwrap_or(0.0))
                .sum::<f64>()
    }

    fn close_to(&self, other: &LinForm) -> bool {
        if (self.constant - other.constant).abs() > MERGE_TOL {
            return false;
        }
        let keys: BTreeSet<u32> = self.vars().chain(other.vars()).collect();
        keys.iter().all(|&v| (self.coeff(v) - other.coeff(v)).abs() <= MERGE_TOL)
    }

    fn cmp_canonical(&self, other: &LinForm) -> std::cmp::Ordering {
        let keys: BTreeSet<u32> = self.vars().chain(other.vars()).collect();
        for &v in &keys {
            match self.coeff(v).partial_cmp(&other.coeff(v)).unwrap() {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.constant.partial_cmp(&other.constant).unwrap()
    }
}

/// A finite sum of `coefficient * exp(linear form)` terms in canonical
/// form: terms sorted by exponent, no two terms sharing one.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpLinExpr {
    terms: Vec<(f64, LinForm)>,
}

impl ExpLinExpr {
    pub fn from_terms(terms: impl IntoIterator<Item = (f64, LinForm)>) -> Self {
        let mut terms: Vec<(f64, LinForm)> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.1.cmp_canonical(&b.1));
        let mut merged: Vec<(f64, LinForm)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            match merged.last_mut() {
                Some((mc, me)) if me.close_to(&e) => *mc += c,
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| c.abs() >= UNDERFLOW_TOL);
        ExpLinExpr { terms: merged }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms([(c, LinForm::zero())])
    }

    pub fn zero() -> Self {
        ExpLinExpr { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// `c * exp(form)`.
    pub fn exp_term(c: f64, form: LinForm) -> Self {
        Self::from_terms([(c, form)])
    }

    pub fn terms(&self) -> &[(f64, LinForm)] {
        &self.terms
    }

    /// Attribute indices still appearing in any exponent.
    pub fn pending_vars(&self) -> BTreeSet<u32> {
        self.terms.iter().flat_map(|(_, e)| e.vars()).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, e)| e.coeffs.is_empty())
    }

    /// The value of a constant expression; `None` when variables remain.
    pub fn constant_value(&self) -> Option<f64> {
        if self.is_constant() {
            Some(self.terms.iter().map(|(c, e)| c * e.constant.exp()).sum())
        } else {
            None
        }
    }

    pub fn add(&self, other: &ExpLinExpr) -> ExpLinExpr {
        Self::from_terms(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn sub(&self, other: &ExpLinExpr) -> ExpLinExpr {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> ExpLinExpr {
        Self::from_terms(self.terms.iter().map(|(c, e)| (c * s, e.clone())))
    }

    pub fn evaluate(&self, point: &BTreeMap<u32, f64>) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * e.evaluate(point).exp())
            .sum()
    }

    pub fn substitute(&self, var: u32, value: f64) -> ExpLinExpr {
        Self::from_terms(self.terms.iter().map(|(c, e)| {
            let (b, rest) = e.split(var);
            (*c, rest.add(&LinForm::constant(b * value)))
        }))
    }
}

/// Distributive product: coefficients multiply, exponents add.
pub fn expr_mul(a: &ExpLinExpr, b: &ExpLinExpr) -> ExpLinExpr {
    let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
    for (ca, ea) in &a.terms {
        for (cb, eb) in &b.terms {
            terms.push((ca * cb, ea.add(eb)));
        }
    }
    ExpLinExpr::from_terms(terms)
}

/// Integrates out `var` against a Gaussian whose mean is itself a linear
/// form over other attributes: each term `c * exp(l + b*y)` maps to
/// `c * exp(l + b*mean + 0.5 b^2 sigma^2)`.
pub fn gaussian_expectation(
    e: &ExpLinExpr,
    var: u32,
    mean: &LinForm,
    sigma: f64,
) -> Result<ExpLinExpr> {
    if mean.mentions(var) {
        return Err(DeunError::SelfReferentialMean(var));
    }
    debug_assert!(sigma >= 0.0);
    let terms = e.terms.iter().map(|(c, form)| {
        let (b, rest) = form.split(var);
        let shifted = rest
            .add(&mean.scale(b))
            .add(&LinForm::constant(0.5 * (b * sigma).powi(2)));
        (*c, shifted)
    });
    Ok(ExpLinExpr::from_terms(terms.collect::<Vec<_>>()))
}
