//! Directed expected-utility networks: a DAG over attributes carrying
//! probabilistic (Bayesian-network) edges and utility-independence
//! edges, with exact expected-utility evaluation by backward induction
//! or junction-tree absorption, plus independent verification oracles.

pub mod discrete;
pub mod engine;
pub mod food;
pub mod error;
pub mod expr;
pub mod graph;
pub mod io;
pub mod model;
pub mod oracle;
pub mod table;

pub use engine::{
    evaluate_utility_pointwise, jtree_eu, rank_decisions, theorem1_eu, theorem1_eu_with_order,
    utility_expansion, utility_expansion_with_cap, Method, Monomial, MonomialFactor,
    PointwiseEvaluator, DEFAULT_EXPANSION_CAP,
};
pub use error::{DeunError, Result};
pub use expr::{expr_mul, gaussian_expectation, ExpLinExpr, LinForm};
pub use graph::{
    build_junction_tree, enumerate_cliques, is_decomposable, make_decomposable, validate_deun,
    CliqueSet, Dag, DecomposabilityWitness, Deun, JunctionTree,
};
pub use io::{parse_model, parse_model_str, parse_model_str_with_report, serialize_model, write_model};
pub use model::{
    conditional_utility_vector, normalize_utility, validate_model, Attribute, Cpd, DecisionModel,
    NormalizedKind, NormalizedUtility, UtilityForm, ValidationReport,
};
pub use oracle::{
    exact_discrete_eu, monte_carlo_eu, monte_carlo_eu_clamped, quadrature_expectation, McReport,
    ENUMERATION_CAP, MC_ALGORITHM, QUADRATURE_TOL,
};
pub use table::{table_circ, table_reduce_sum, CornerConfig, LabeledTable, TableEntry};
