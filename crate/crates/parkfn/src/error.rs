use crate::counting::BigCount;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("position {pos} out of range 1..={n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("car {car} out of range 1..={n}")]
    CarOutOfRange { car: usize, n: usize },
    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("spot set must be nonempty")]
    EmptySpotSet,
    #[error("spot {spot} out of range 1..={n}")]
    SpotOutOfRange { spot: usize, n: usize },
    #[error("street length {n} exceeds the simulator cap of 64 spots")]
    StreetTooLong { n: usize },
    #[error("family has {got} entries, expected {expected}")]
    FamilyLengthMismatch { expected: usize, got: usize },
    #[error("car {car} lists spot {spot} more than once")]
    DuplicatePreference { car: usize, spot: usize },
    #[error("prefix length {m} out of range 0..={n}")]
    PrefixOutOfRange { m: usize, n: usize },
    #[error("invalid size profile: {0}")]
    InvalidProfile(String),
    #[error("outcome has length {got}, expected {expected}")]
    OutcomeLengthMismatch { expected: usize, got: usize },
    #[error("outcome is not in S_n^{k}: last {k} entries must strictly increase")]
    OutcomeNotInSnk { k: usize },
    #[error("{what}: n = {requested} exceeds the guard of {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    #[error("family space holds {required} members, over the budget of {budget}")]
    BudgetExceeded { required: BigCount, budget: u64 },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
