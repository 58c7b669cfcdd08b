use thiserror::Error;

/// Everything that can go wrong while loading or analyzing a choice dataset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: menu {{{menu}}} is listed more than once")]
    DuplicateMenu { line: usize, menu: String },

    #[error("missing menu {{{0}}}")]
    MissingMenu(String),

    #[error("line {line}: chosen item {choice} is not in menu {{{menu}}}")]
    ChoiceOutsideMenu {
        line: usize,
        menu: String,
        choice: String,
    },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("ground set has {0} elements; at most 16 are supported")]
    GroundTooLarge(usize),

    #[error("invalid ground set: {0}")]
    InvalidGround(String),

    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),

    #[error("invalid choice correspondence: {0}")]
    InvalidCorrespondence(String),

    #[error("invalid choice function: {0}")]
    InvalidChoice(String),

    #[error("relation cannot be extended to a linear order: {0}")]
    NotExtendable(String),

    #[error("no maximal elements in menu {{{0}}}")]
    EmptyMaxima(String),

    #[error("capacity bound violated in menu {{{0}}}")]
    CapacityViolated(String),

    #[error("({small}, {large}) is not a switch")]
    NotASwitch { small: String, large: String },

    #[error("{what} is limited to ground sets of at most {max} elements (got {n})")]
    BoundExceeded { what: String, n: usize, max: usize },

    #[error("{model}: exhaustive search is only supported for n <= {max} (got {n})")]
    UnsupportedSearchBound { model: String, n: usize, max: usize },

    #[error("{0}: search space exhausted without an explanation")]
    SearchExhausted(String),

    #[error("dataset is not in model {model}: {reason}")]
    NotInModel { model: String, reason: String },

    #[error("unknown model {0:?}")]
    UnknownModel(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("ground set mismatch")]
    GroundMismatch,

    #[error("malformed explanation: {0}")]
    MalformedExplanation(String),
}

impl Error {
    /// True for errors that describe a bad input dataset (as opposed to a
    /// resource bound or an analysis outcome).
    pub fn is_dataset_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::DuplicateMenu { .. }
                | Error::MissingMenu(_)
                | Error::ChoiceOutsideMenu { .. }
                | Error::GroundTooLarge(_)
                | Error::InvalidGround(_)
                | Error::Io { .. }
        )
    }

    pub fn is_bound_error(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. }
                | Error::UnsupportedSearchBound { .. }
                | Error::SearchExhausted(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
