use thiserror::Error;

/// Every failure the toolkit reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("search space of {size} exceeds limit {limit}")]
    LimitExceeded { size: u128, limit: u128 },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("unsupported problem: {0}")]
    UnsupportedProblem(String),
    #[error("problem {0} is not handled by this solver")]
    WrongProblem(String),
    #[error("obnoxious pebbles {a} and {b} share color and start vertex but differ in cost")]
    MovementCostAsymmetry { a: usize, b: usize },
    #[error("value {value} exceeds declared bound {bound}")]
    ValueOverM { value: u64, bound: u64 },
    #[error("red pebble {0} is not stationary")]
    NonStationaryReds(usize),
    #[error("{edges} edges exceed the planar bound for {vertices} vertices")]
    NotPlanarSanity { vertices: usize, edges: usize },
    #[error("constraint graph does not match the pattern: {0}")]
    PrimalMismatch(String),
    #[error("no feasible solution")]
    Infeasible,
    #[error("optimum {optimum} exceeds budget {budget}")]
    BudgetExceeded { optimum: u64, budget: u64 },
    #[error("solution rejected: {0}")]
    Rejected(#[from] VerifyError),
}

/// Reasons a proposed solution fails verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("witness has {size} vertices, limit is {limit}")]
    WitnessTooLarge { size: usize, limit: usize },
    #[error("main pebble {0} ends outside the witness")]
    MainPebbleOutsideWitness(usize),
    #[error("witness dominates no pattern")]
    NoDominatedPattern,
    #[error("cost {cost} exceeds budget {budget}")]
    CostBudgetExceeded { cost: String, budget: u64 },
    #[error("plan has infinite cost")]
    InfiniteCost,
    #[error("malformed plan or witness: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
