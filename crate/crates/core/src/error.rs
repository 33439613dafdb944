use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("element labels must be non-empty")]
    EmptyLabel,
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("carrier of size {size} exceeds the limit of {limit}")]
    CarrierTooLarge { size: usize, limit: usize },
    #[error("element index {0} is outside the carrier")]
    UnknownElement(usize),
    #[error("operation requires a non-empty argument")]
    EmptyArgument,
    #[error("subset belongs to a different poset")]
    OwnerMismatch,
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("subset is not a filter")]
    NotAFilter,
    #[error("subset is not a prime filter")]
    NotAPrimeFilter,
    #[error("filter is not proper")]
    NotProper,
    #[error("ideal and filter are not disjoint")]
    NotDisjoint,
    #[error("poset has no least element")]
    NoLeastElement,
    #[error("filter does not satisfy the *-condition")]
    StarConditionFails,
    #[error("poset is not pseudocomplemented: {0}")]
    NotPseudocomplemented(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("carrier of size {size} exceeds the subset-quantifier limit of {limit}")]
    CarrierTooLargeForSubsetQuantifier { size: usize, limit: usize },
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("no pseudocomplemented poset found within {0} attempts")]
    RejectionBudgetExhausted(usize),
}
