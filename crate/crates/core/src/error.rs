use kummer_field::FieldError;
use thiserror::Error;

use crate::config::CurveId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LegendreError {
    #[error("lambda = {0} is degenerate (must avoid 0 and 1)")]
    DegenerateLambda(String),
    #[error("point {0} is not on the curve")]
    OffCurve(String),
    #[error("{0} is not one of the named 2-torsion points")]
    NotTwoTorsion(String),
    #[error("translation map {0:?} is not a permutation")]
    NotAPermutation([usize; 4]),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{name} is not an isometry: ({a}, {b}) pairs to {before} but images pair to {after}")]
    IsometryViolation { name: String, a: CurveId, b: CurveId, before: i64, after: i64 },
    #[error("{name} is not injective on its domain")]
    NotInjective { name: String },
    #[error("sigma exists only when the two elliptic curves coincide")]
    MissingSameCurveFlag,
    #[error("{id} is outside the domain of {name}")]
    NotInDomain { name: String, id: CurveId },
    #[error("unknown curve id `{0}`")]
    UnknownCurve(String),
    #[error("unknown fiber divisor `{0}`")]
    UnknownDivisor(String),
    #[error(transparent)]
    Legendre(#[from] LegendreError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("fiber support does not form an 8-cycle: {0}")]
    NotACycle(String),
    #[error("{0} is not a section of the fibration")]
    NotASection(CurveId),
    #[error("zero section {0} does not meet the fiber class once")]
    BadZeroSection(CurveId),
    #[error("Shioda-Tate rank would be negative ({0})")]
    NegativeRank(i64),
    #[error("branch count {0} must be even and positive")]
    BadBranchCount(u64),
    #[error("Euler numbers sum to {0}, not 24")]
    EulerMismatch(i64),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsorError {
    #[error("{0} does not meet an even component of the fiber")]
    NotASection(CurveId),
    #[error("calibration constraints are inconsistent: {0}")]
    Inconsistent(String),
    #[error("Mobius map is degenerate (ad - bc = 0)")]
    Degenerate,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MukaiError {
    #[error("the four base points are coplanar")]
    Coplanar,
    #[error("template normalization impossible: {0}")]
    TemplateUnreachable(String),
    #[error("{0} lies in the indeterminacy locus")]
    Indeterminacy(String),
    #[error("all homogeneous coordinates vanish")]
    ZeroPoint,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("theta is not an involutive automorphism: {0}")]
    BadInvolution(String),
    #[error("matrix does not square to the identity")]
    NotInvolutive,
    #[error("invalid level: {0}")]
    BadLevel(String),
}
