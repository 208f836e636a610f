use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("{0} is not a negative discriminant (need d < 0 and d = 0, 1 mod 4)")]
    InvalidQuadDiscriminant(i64),
    #[error("{0} is not the discriminant of an indefinite division quaternion algebra")]
    InvalidShimuraDiscriminant(u64),
    #[error("atkin-lehner index {m} is not a nontrivial divisor of {d}")]
    InvalidAtkinLehner { d: u64, m: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("genus of V_{d} is {genus}, need at least 2")]
    GenusTooSmall { d: u64, genus: u64 },
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("{ell} divides the discriminant {d}")]
    BadPrime { d: u64, ell: u64 },
    #[error("{0} is not of the form 3p with p = 2 mod 3 and genus at least 2")]
    WrongShape(u64),
    #[error("torsion present for (D = {d}, p = {p}); only a count skeleton is available")]
    TorsionPresent { d: u64, p: u64 },
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("action is not an involution compatible with the graph: {0}")]
    NotInvolution(String),
    #[error("graph has first Betti number {0}, expected 1")]
    NotGenusOne(i64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate curve label {0}")]
    DuplicateLabel(String),
    #[error("curve {label} has bad reduction at {p}")]
    BadReduction { label: String, p: u64 },
    #[error("curve {label} does not have multiplicative reduction at {p}")]
    NotMultiplicative { label: String, p: u64 },
    #[error("expected exactly one isogeny class of conductor {conductor} with the required sign, found {found}")]
    AmbiguousClass { conductor: u64, found: usize },
    #[error("database has no curves of conductor {0}")]
    MissingConductor(u64),
    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("fixture mismatch: {0}")]
    FixtureMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
