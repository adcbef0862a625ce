//! Expected-utility computation: backward induction over the vertex
//! order, junction-tree absorption for decomposable networks, the
//! corner-monomial expansion of the joint utility, and decision ranking.

use std::collections::{BTreeMap, BTreeSet};

use crate::discrete::DiscreteExpr;
use crate::error::{DeunError, Result};
use crate::expr::{gaussian_expectation, ExpLinExpr, LinForm};
use crate::graph::build_junction_tree;
use crate::model::{
    conditional_utility_vector, conditional_utility_vector_discrete, normalize_utility, Cpd,
    DecisionModel, UtilityForm,
};
use crate::table::{table_circ, table_reduce_sum, CornerConfig, LabeledTable, TableEntry};

/// Maximum attribute count for the full corner-monomial expansion.
pub const DEFAULT_EXPANSION_CAP: u32 = 24;

/// Which expected-utility algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Theorem1,
    Jtree,
}

/// Whether the model evaluates in closed form (Gaussian CPDs with
/// exponential utilities) or by finite sums (tabular throughout).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ModelKind {
    Continuous,
    Discrete,
}

fn model_kind(model: &DecisionModel) -> Result<ModelKind> {
    let mut kind = None;
    for i in 1..=model.n() {
        let cpd_tabular = model.cpd(0, i).is_tabular();
        for d in 1..model.decisions.len() {
            if model.cpd(d, i).is_tabular() != cpd_tabular {
                return Err(DeunError::UnsupportedCombination(i));
            }
        }
        let util_tabular = model.utilities[&i]
            .values()
            .all(|f| matches!(f, UtilityForm::Tabular { .. }));
        let util_continuous = model.utilities[&i]
            .values()
            .all(|f| !matches!(f, UtilityForm::Tabular { .. }));
        let this = match (cpd_tabular, util_tabular, util_continuous) {
            (true, true, _) => ModelKind::Discrete,
            (false, _, true) => ModelKind::Continuous,
            _ => return Err(DeunError::UnsupportedCombination(i)),
        };
        match kind {
            None => kind = Some(this),
            Some(k) if k != this => return Err(DeunError::UnsupportedCombination(i)),
            Some(_) => {}
        }
    }
    Ok(kind.expect("n >= 1"))
}

/// The entry algebra each evaluation path plugs into the shared
/// induction: its utility tables and its expectation operator.
trait EvalKernel: TableEntry {
    fn utility_table(model: &DecisionModel, i: u32) -> Result<LabeledTable<Self>>;
    fn integrate(model: &DecisionModel, decision: usize, e: &Self, var: u32) -> Result<Self>;
    fn from_weight(w: f64) -> Self;
}

impl EvalKernel for ExpLinExpr {
    fn utility_table(model: &DecisionModel, i: u32) -> Result<LabeledTable<Self>> {
        conditional_utility_vector(model, i)
    }

    fn integrate(model: &DecisionModel, decision: usize, e: &Self, var: u32) -> Result<Self> {
        match model.cpd(decision, var) {
            Cpd::LinearGaussian {
                intercept,
                coeffs,
                sigma,
            } => {
                let mean = LinForm::new(*intercept, coeffs.iter().map(|(&v, &c)| (v, c)));
                gaussian_expectation(e, var, &mean, *sigma)
            }
            Cpd::Tabular { .. } => Err(DeunError::UnsupportedCombination(var)),
        }
    }

    fn from_weight(w: f64) -> Self {
        ExpLinExpr::constant(w)
    }
}

impl EvalKernel for DiscreteExpr {
    fn utility_table(model: &DecisionModel, i: u32) -> Result<LabeledTable<Self>> {
        conditional_utility_vector_discrete(model, i)
    }

    fn integrate(model: &DecisionModel, decision: usize, e: &Self, var: u32) -> Result<Self> {
        match model.cpd(decision, var) {
            Cpd::Tabular { support, rows } => {
                let parents = model.deun.prob_parents(var);
                let dims = parents
                    .iter()
                    .map(|p| {
                        model
                            .support(*p)
                            .map(|s| s.len())
                            .ok_or(DeunError::UnsupportedCombination(*p))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                Ok(e.expectation(var, &parents, &dims, support.len(), rows))
            }
            Cpd::LinearGaussian { .. } => Err(DeunError::UnsupportedCombination(var)),
        }
    }

    fn from_weight(w: f64) -> Self {
        DiscreteExpr::constant(w)
    }
}

fn finish<E: EvalKernel>(model: &DecisionModel, table: LabeledTable<E>) -> Result<f64> {
    let weights = model.corner_weights.map(|w| E::from_weight(*w));
    match table_reduce_sum(&table_circ(&weights, &table)) {
        Ok(total) => Ok(total.abs()),
        Err(DeunError::NotConstant(vars)) => Err(DeunError::PendingVariable(vars[0])),
        Err(e) => Err(e),
    }
}

fn theorem1_generic<E: EvalKernel>(
    model: &DecisionModel,
    decision: usize,
    order: &[u32],
) -> Result<f64> {
    let mut table = LabeledTable::<E>::unit();
    for &i in order {
        table = table_circ(&table, &E::utility_table(model, i)?);
        table = table.try_map(|e| E::integrate(model, decision, e, i))?;
    }
    finish(model, table)
}

/// Backward induction over descending vertex index: each step composes
/// the running table with the vertex's conditional utility vector and
/// takes the expectation over that vertex.
pub fn theorem1_eu(model: &DecisionModel, decision: &str) -> Result<f64> {
    let order: Vec<u32> = (1..=model.n()).rev().collect();
    theorem1_eu_with_order(model, decision, &order)
}

/// Backward induction with an explicit marginalization order. Valid
/// orders visit every vertex once and never integrate a vertex before
/// all of its probabilistic children: a child's expectation re-introduces
/// the parent through the conditional mean (or probability row), so the
/// parent's integral must come later.
pub fn theorem1_eu_with_order(
    model: &DecisionModel,
    decision: &str,
    order: &[u32],
) -> Result<f64> {
    let d = model.decision_index(decision)?;
    validate_order(model, order)?;
    match model_kind(model)? {
        ModelKind::Continuous => theorem1_generic::<ExpLinExpr>(model, d, order),
        ModelKind::Discrete => theorem1_generic::<DiscreteExpr>(model, d, order),
    }
}

fn validate_order(model: &DecisionModel, order: &[u32]) -> Result<()> {
    let n = model.n();
    let mut errs = Vec::new();
    let seen: BTreeSet<u32> = order.iter().copied().collect();
    if order.len() as u32 != n || seen.len() != order.len() || seen != (1..=n).collect() {
        errs.push(format!("order {order:?} is not a permutation of 1..={n}"));
    } else {
        let pos: BTreeMap<u32, usize> =
            order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        for &(i, j) in model.deun.prob_edges() {
            if pos[&j] > pos[&i] {
                errs.push(format!(
                    "order integrates {i} before its probabilistic child {j}"
                ));
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(DeunError::Validation(errs))
    }
}

fn jtree_generic<E: EvalKernel>(model: &DecisionModel, decision: usize) -> Result<f64> {
    let jt = build_junction_tree(&model.deun)?;
    let m = jt.clique_set.cliques.len();
    // With maximum-cardinality-search ordering the vertices assigned by
    // family containment are exactly each clique's residual, so every
    // variable is integrated at the unique clique introducing it.
    debug_assert!((0..m).all(|c| {
        let residual: Vec<u32> = jt.clique_set.cliques[c]
            .difference(&jt.clique_set.separators[c])
            .copied()
            .collect();
        jt.assigned(c) == residual
    }));

    // Utility potentials; corner weights ride on the first root.
    let mut potentials: Vec<Option<LabeledTable<E>>> = (0..m)
        .map(|c| {
            let mut psi = LabeledTable::<E>::unit();
            for v in jt.assigned(c) {
                psi = table_circ(&psi, &E::utility_table(model, v)?);
            }
            Ok(Some(psi))
        })
        .collect::<Result<Vec<_>>>()?;
    let first_root = jt
        .clique_set
        .rip_parent
        .iter()
        .position(|p| p.is_none())
        .expect("a root clique exists");
    let weights = model.corner_weights.map(|w| E::from_weight(*w));
    potentials[first_root] = Some(table_circ(
        potentials[first_root].as_ref().unwrap(),
        &weights,
    ));

    // Absorb highest-index cliques first; by then all their descendants
    // are already folded in, so integrating the residual is exact.
    let mut root_results: Vec<LabeledTable<E>> = Vec::new();
    for c in (0..m).rev() {
        let mut psi = potentials[c].take().expect("not yet absorbed");
        let mut residual = jt.assigned(c);
        residual.sort_unstable_by(|a, b| b.cmp(a)); // children before parents
        for v in residual {
            psi = psi.try_map(|e| E::integrate(model, decision, e, v))?;
        }
        match jt.clique_set.rip_parent[c] {
            Some(p) => {
                let parent = potentials[p].take().expect("parent not yet absorbed");
                potentials[p] = Some(table_circ(&parent, &psi));
            }
            None => root_results.push(psi),
        }
    }

    // Forest: combine the fully-integrated component roots, then sum.
    let combined = root_results
        .iter()
        .fold(LabeledTable::<E>::unit(), |acc, t| table_circ(&acc, t));
    match table_reduce_sum(&combined) {
        Ok(total) => Ok(total.abs()),
        Err(DeunError::NotConstant(vars)) => Err(DeunError::PendingVariable(vars[0])),
        Err(e) => Err(e),
    }
}

/// Junction-tree evaluation: clique utility potentials are absorbed
/// leaf-first into their running-intersection parents, integrating each
/// clique's residual variables along the way.
pub fn jtree_eu(model: &DecisionModel, decision: &str) -> Result<f64> {
    let d = model.decision_index(decision)?;
    match model_kind(model)? {
        ModelKind::Continuous => jtree_generic::<ExpLinExpr>(model, d),
        ModelKind::Discrete => jtree_generic::<DiscreteExpr>(model, d),
    }
}

/// One factor of a corner monomial: the utility (starred) or disutility
/// of one attribute, conditioned on the corner restricted to its
/// utility parents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialFactor {
    pub attr: u32,
    /// True for `u`, false for the complement `1 - u`.
    pub starred: bool,
    pub parent_corner: CornerConfig,
}

/// One term of the joint-utility expansion: a corner weight times one
/// (dis)utility factor per attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub corner: CornerConfig,
    pub weight: f64,
    pub factors: Vec<MonomialFactor>,
}

pub fn utility_expansion(model: &DecisionModel) -> Result<Vec<Monomial>> {
    utility_expansion_with_cap(model, DEFAULT_EXPANSION_CAP)
}

/// All `2^n` corner monomials of the joint utility, in canonical corner
/// order. Factors appear in ascending attribute order, so each one
/// conditions only on corner bits of earlier attributes.
pub fn utility_expansion_with_cap(model: &DecisionModel, cap: u32) -> Result<Vec<Monomial>> {
    let n = model.n();
    if n > cap {
        return Err(DeunError::ExpansionTooLarge { n, cap });
    }
    let scope: Vec<u32> = (1..=n).collect();
    let mut monomials = Vec::with_capacity(1 << n);
    for corner in CornerConfig::enumerate(&scope) {
        let weight = *model.corner_weights.get(&corner);
        let factors = (1..=n)
            .map(|i| MonomialFactor {
                attr: i,
                starred: corner.is_star(i).unwrap(),
                parent_corner: corner.restrict(&model.deun.util_parents(i)),
            })
            .collect();
        monomials.push(Monomial {
            corner,
            weight,
            factors,
        });
    }
    Ok(monomials)
}

/// A reusable joint-utility evaluator: normalizes every per-corner form
/// once, then evaluates the full expansion at arbitrary domain points.
pub struct PointwiseEvaluator<'m> {
    model: &'m DecisionModel,
    /// Normalized utility per (attribute, utility-parent corner).
    utils: BTreeMap<(u32, CornerConfig), crate::model::NormalizedUtility>,
}

impl<'m> PointwiseEvaluator<'m> {
    pub fn new(model: &'m DecisionModel) -> Result<Self> {
        let mut utils = BTreeMap::new();
        for i in 1..=model.n() {
            for (cfg, form) in &model.utilities[&i] {
                utils.insert((i, cfg.clone()), normalize_utility(form, model.attribute(i))?);
            }
        }
        Ok(PointwiseEvaluator { model, utils })
    }

    /// Joint utility at `y` (one coordinate per attribute, ascending).
    /// Coordinates must lie inside their attribute domains.
    pub fn evaluate(&self, y: &[f64]) -> Result<f64> {
        let model = self.model;
        let n = model.n();
        if y.len() as u32 != n {
            return Err(DeunError::Parse(format!(
                "point has {} coordinates, model has {n} attributes",
                y.len()
            )));
        }
        for (k, &yi) in y.iter().enumerate() {
            let attr = model.attribute(k as u32 + 1);
            let (lo, hi) = attr.domain;
            if yi < lo || yi > hi || !yi.is_finite() {
                return Err(DeunError::OutOfDomain {
                    attr: attr.index,
                    value: yi,
                    lo,
                    hi,
                });
            }
        }
        Ok(self.evaluate_unchecked(y))
    }

    /// Like [`evaluate`](Self::evaluate) but extends the utilities'
    /// analytic forms beyond the attribute domains instead of erroring.
    /// Tabular utilities still require in-support coordinates.
    pub fn evaluate_unchecked(&self, y: &[f64]) -> f64 {
        let model = self.model;
        let n = model.n();
        // u(y_i | parent corner) per attribute and parent corner.
        let u_vals: BTreeMap<&(u32, CornerConfig), f64> = self
            .utils
            .iter()
            .map(|(key, norm)| {
                let i = key.0;
                let yi = y[i as usize - 1];
                (key, norm.eval_at(yi, i, model.support(i)))
            })
            .collect();
        let scope: Vec<u32> = (1..=n).collect();
        let mut total = 0.0;
        for corner in CornerConfig::enumerate(&scope) {
            let weight = *model.corner_weights.get(&corner);
            if weight == 0.0 {
                continue;
            }
            let mut product = weight;
            for i in 1..=n {
                let parent_corner = corner.restrict(&model.deun.util_parents(i));
                let u = u_vals[&(i, parent_corner)];
                product *= if corner.is_star(i).unwrap() { u } else { 1.0 - u };
                if product == 0.0 {
                    break;
                }
            }
            total += product;
        }
        total
    }
}

/// Joint utility of the outcome `y`, as the weighted corner expansion.
pub fn evaluate_utility_pointwise(model: &DecisionModel, y: &[f64]) -> Result<f64> {
    PointwiseEvaluator::new(model)?.evaluate(y)
}

/// All decisions with their expected utilities, best first; ties keep
/// declaration order.
pub fn rank_decisions(model: &DecisionModel, method: Method) -> Result<Vec<(String, f64)>> {
    let mut ranked = Vec::with_capacity(model.decisions.len());
    for label in &model.decisions {
        let eu = match method {
            Method::Theorem1 => theorem1_eu(model, label)?,
            Method::Jtree => jtree_eu(model, label)?,
        };
        ranked.push((label.clone(), eu));
    }
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    Ok(ranked)
}
