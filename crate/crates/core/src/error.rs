use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state space needs at least {min} states, got {got}")]
    StateSpaceTooSmall { min: usize, got: usize },
    #[error("duplicate state label `{0}`")]
    DuplicateLabel(String),
    #[error("event must be non-empty")]
    EmptyEvent,
    #[error("state index {index} out of range for {n_states} states")]
    StateOutOfRange { index: usize, n_states: usize },
    #[error("probability vector sums to {sum}, expected 1")]
    NotAProbability { sum: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("event has (near-)zero probability under the belief")]
    ZeroProbabilityEvent,
    #[error("expert {expert} assigns (near-)zero probability to the event")]
    EventNotConditionable { expert: usize },
    #[error("mixture coefficient must lie strictly inside (0,1)")]
    AlphaOutOfRange,
    #[error("geometric pooling undefined: expert supports are (near-)disjoint")]
    GeometricUndefined,
    #[error("geometric rules do not reduce to an evaluation-profile functional")]
    NotProfileFunctional,
    #[error("rule expects {expected} experts, profile has {got}")]
    WrongExpertCount { expected: usize, got: usize },
    #[error("expert index {index} out of range for {n_experts} experts")]
    IndexOutOfRange { index: usize, n_experts: usize },
    #[error("expert disagreement is not restricted within the event")]
    DisagreementNotRestricted,
    #[error("bisection bracket grew past its cap without enclosing a root")]
    BracketFailure,
    #[error("vertex {vertex} puts (near-)zero mass on the event or its complement")]
    ConditioningUndefined { vertex: usize },
    #[error("weight on expert 1 must lie strictly inside (0,1)")]
    WeightDegenerate,
    #[error("vertex list must be non-empty")]
    NoVertices,
    #[error("utility entries must be finite")]
    NonFiniteUtility,
    #[error("tolerances must be strictly positive with eps_bisect <= eps_value")]
    BadTolerance,
    #[error("h-sample set is empty")]
    NoSamples,
}

pub type Result<T> = std::result::Result<T, Error>;
