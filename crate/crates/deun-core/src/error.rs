use thiserror::Error;

/// Errors produced by graph transforms, evaluation and the oracles.
#[derive(Debug, Error)]
pub enum DeunError {
    #[error("vertex count must be positive")]
    EmptyGraph,
    #[error("self loop at vertex {0}")]
    SelfLoop(u32),
    #[error("directed cycle: {}", fmt_cycle(.0))]
    CycleDetected(Vec<u32>),
    #[error("edge ({0}, {1}) violates the low-to-high ordering convention")]
    OrderingViolated(u32, u32),
    #[error("network is not decomposable: {0}")]
    NotDecomposable(String),
    #[error("mean of variable {0} refers to itself")]
    SelfReferentialMean(u32),
    #[error("table entry still depends on variables {0:?}")]
    NotConstant(Vec<u32>),
    #[error("degenerate utility: minimum equals maximum over the domain")]
    DegenerateUtility,
    #[error("unsupported distribution/utility combination for attribute {0}")]
    UnsupportedCombination(u32),
    #[error("internal consistency failure: variable {0} still pending")]
    PendingVariable(u32),
    #[error("expansion over {n} attributes exceeds the cap of {cap}")]
    ExpansionTooLarge { n: u32, cap: u32 },
    #[error("value {value} for attribute {attr} is outside its domain [{lo}, {hi}]")]
    OutOfDomain {
        attr: u32,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("joint support has {0} configurations, above the enumeration limit")]
    TooLarge(u64),
    #[error("quadrature failed to converge")]
    NonConvergence,
    #[error("unknown decision label '{0}'")]
    UnknownDecision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("model validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn fmt_cycle(cycle: &[u32]) -> String {
    cycle
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" -> ")
}

pub type Result<T> = std::result::Result<T, DeunError>;
