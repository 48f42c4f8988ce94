//! Exact-arithmetic construction and machine verification of braided Hopf
//! algebras, their stable anti-Yetter-Drinfeld modules, the associated
//! (para-)cocyclic objects, and Hochschild/cyclic cohomology dimensions with
//! independent cross-checks.
//!
//! Everything is computed over Q or a cyclotomic extension Q(zeta_n); every
//! verdict is an exact matrix equality, never a tolerance.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactnum`]: canonical scalars over Q and Q(zeta_n)
//! - [`linalg`]: based spaces, sparse exact matrices, kernel/cokernel/rank
//! - [`moncat`]: braiding providers (trivial, Koszul, bicharacter, R-matrix,
//!   Yetter-Drinfeld) and the block-braiding calculus
//! - [`hopf`]: Hopf objects, axiom and derived-identity verification,
//!   characters, twisted antipodes, modular pairs in involution
//! - [`sayd`]: modules, comodules, anti-Yetter-Drinfeld checks, module
//!   coalgebras, diagonal actions, balanced tensor products
//! - [`cocyclic`]: the (para-)cocyclic object builders and their verifier
//! - [`homology`]: Hochschild b, Connes' B, cyclic cohomology via the (b,B)
//!   bicomplex, Cotor via the reduced cobar complex, decomposition checks
//! - [`superlie`]: super Lie algebras, Chevalley-Eilenberg homology, the
//!   antisymmetrization map and enveloping-algebra models
//! - [`catalog`]: built-in verified examples and the interchange file format

pub mod catalog;
pub mod cocyclic;
pub mod exactnum;
pub mod homology;
pub mod hopf;
pub mod linalg;
pub mod moncat;
pub mod report;
pub mod sayd;
pub mod superlie;

pub use exactnum::{Field, Scalar};
pub use linalg::{LinearMap, Space, SubquotientData};
pub use report::{CheckItem, CheckReport, Witness};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("singular: {0}")]
    Singular(String),

    #[error("object does not live in this category: {0}")]
    ObjectNotInCategory(String),

    #[error("host mismatch: {0}")]
    HostMismatch(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("induced map undefined: {0}")]
    InducedMapUndefined(String),

    #[error("restriction undefined: {0}")]
    RestrictionUndefined(String),

    #[error("calibration failed: {0}")]
    CalibrationFailed(String),

    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),

    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),

    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),

    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),

    #[error("unknown catalog name: {0}")]
    UnknownName(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
