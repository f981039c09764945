use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("element budget must be positive")]
    InvalidBudget,

    #[error("closure overflow: more than {cap} elements{}", fmt_subset(.subset))]
    ClosureOverflow {
        cap: u64,
        subset: Option<Vec<usize>>,
    },

    #[error("field error: {0}")]
    Field(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("vector {0:?} is singular for the form")]
    SingularVector(Vec<u32>),

    #[error("reflections need odd characteristic, field has characteristic 2")]
    EvenCharacteristic,

    #[error("permutation domain of {size} vectors exceeds the budget of {cap}")]
    DomainTooLarge { size: u64, cap: u64 },

    #[error("not an sggi: {0}")]
    NotSggi(String),

    #[error("rank {rank} is below the required minimum {min}")]
    RankTooSmall { rank: usize, min: usize },

    #[error("input is not a verified irreducible string C-group ({0}); pass force to reduce anyway")]
    NotGuaranteedInput(String),

    #[error("Schläfli type of length {0} is too short (need at least 3 entries)")]
    TypeTooShort(usize),

    #[error("group of order {order} exceeds the search bound {bound}")]
    GroupTooLarge { order: String, bound: u64 },

    #[error("invalid CPR graph: {0}")]
    Cpr(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown example {name:?}; registered: {known}")]
    UnknownExample { name: String, known: String },

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_subset(subset: &Option<Vec<usize>>) -> String {
    match subset {
        Some(s) => format!(" while enumerating the subgroup on generators {s:?}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn with_subset(self, subset: &[usize]) -> Self {
        match self {
            Error::ClosureOverflow { cap, subset: None } => Error::ClosureOverflow {
                cap,
                subset: Some(subset.to_vec()),
            },
            other => other,
        }
    }
}
