use thiserror::Error;

/// Every failure the library reports.
///
/// Item and agent indices inside errors are 1-based, matching how instances
/// are written down by hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptyMatrix")]
    EmptyMatrix,
    #[error("RaggedGrid(row {row}: expected {expected} entries, found {found})")]
    RaggedGrid { row: usize, expected: usize, found: usize },
    #[error("NegativeUtility({item}, {agent})")]
    NegativeUtility { item: usize, agent: usize },
    #[error("ColumnNotNormalized({agent}, {sum})")]
    ColumnNotNormalized { agent: usize, sum: String },
    #[error("DimensionMismatch({0})")]
    DimensionMismatch(String),
    #[error("InvalidAllocation({0})")]
    InvalidAllocation(String),
    #[error("SearchSpaceTooLarge({size})")]
    SearchSpaceTooLarge { size: String },
    #[error("InconsistentTau(item {item})")]
    InconsistentTau { item: usize },
    #[error("NotSmall({0})")]
    NotSmall(usize),
    #[error("NotBig({0})")]
    NotBig(usize),
    #[error("FullSupport({0})")]
    FullSupport(usize),
    #[error("NotLeveled({0})")]
    NotLeveled(usize),
    #[error("NotCanonical(agent {0} does not value its own item highest)")]
    NotCanonical(usize),
    #[error("OwnItemOutsideBlock({0})")]
    OwnItemOutsideBlock(usize),
    #[error("EnvyViolated({0})")]
    EnvyViolated(usize),
    #[error("NonRealizable(block items {used} > {n})")]
    NonRealizable { used: usize, n: usize },
    #[error("NotCanonicalForm({0})")]
    NotCanonicalForm(String),
    #[error("InvalidWitness({0})")]
    InvalidWitness(String),
    #[error("NoEnvyFreeAllocation")]
    NoEnvyFreeAllocation,
    #[error("GuardViolation({0})")]
    GuardViolation(String),
    #[error("LayoutInfeasible({0})")]
    LayoutInfeasible(String),
    #[error("RejectionCapExceeded(accepted {accepted} of {requested} after {draws} draws)")]
    RejectionCapExceeded { accepted: usize, requested: usize, draws: usize },
    #[error("DomainError({0})")]
    DomainError(String),
    #[error("ParseError({0})")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
