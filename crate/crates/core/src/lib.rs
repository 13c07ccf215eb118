//! Difference group cohomology and difference rational cohomology over finite fields.
//!
//! A difference ring is a ring with a distinguished endomorphism `σ`; a left
//! difference module carries an additive `σ_M` with `σ_M(σ(r)·m) = r·σ_M(m)`.
//! This crate computes, exactly and over small finite fields:
//!
//! * arithmetic in `F_{p^n}` with a power of Frobenius as `σ` ([`fields`]),
//! * twisted polynomial rings `R[σ]` and the colimit module `R̃` ([`ore`]),
//! * finite groups with an endomorphism and their difference modules ([`diffgroup`]),
//! * group cohomology through the bar complex together with the induced
//!   `σ`-action ([`groupcoh`]),
//! * difference cohomology `H^j_σ(G, M)` by two independent routes, stable
//!   cohomology, and the comparison with the induced module `M^∞` ([`diffcoh`]),
//! * the computable rational cases: graded modules for `G_m` and the
//!   cohomology of `G_a` from its quoted shift algebra ([`ratdiff`]).
//!
//! Dimensions of difference cohomology are reported over the prime field,
//! because `σ_M` is in general only semilinear.

pub mod diffcoh;
pub mod diffgroup;
pub mod fields;
pub mod groupcoh;
pub mod linalg;
pub mod ore;
pub mod random;
pub mod ratdiff;

pub use diffgroup::{DiffModule, FiniteDiffGroup};
pub use fields::{FieldSpec, FqElem, SemilinearMap};
pub use linalg::{Field, Matrix, PrimeField};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("sigma power {s} must lie in 0..{n}")]
    BadSigmaPower { s: i64, n: u32 },
    #[error("field of order {q} is larger than the supported maximum {max}")]
    FieldTooLarge { q: u64, max: u32 },
    #[error("eigenvalue must be a nonzero element of the prime field")]
    ZeroEigenvalue,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("sigma is not injective on this ring")]
    NonInjectiveSigma,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("multiplier t = {t} must satisfy 1 <= t < {m}")]
    BadMultiplier { m: i64, t: i64 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("rho is not a homomorphism: rho(g)rho(h) != rho(gh) for g = {g}, h = {h}")]
    NotHomomorphism { g: usize, h: usize },
    #[error("invalid difference module: {0}")]
    InvalidModule(String),
    #[error("sigma on cochains is not a chain map in degree {degree}")]
    ChainMapViolation { degree: usize },
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("truncation {given} is too small, need at least {required}")]
    TruncationTooSmall { given: u32, required: u32 },
    #[error("prime {0} is not supported here")]
    UnsupportedPrime(u32),
    #[error("invalid graded module: {0}")]
    InvalidGraded(String),
    #[error("problem too large: {0}")]
    SizeLimit(String),
    #[error("dual computations disagree: {0}")]
    Mismatch(String),
}
