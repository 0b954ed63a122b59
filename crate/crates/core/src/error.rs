use thiserror::Error;

use crate::rat::{rat_to_string, Rat};

/// Every domain failure the library can report.
///
/// The CLI maps each variant to a stable machine-readable `kind` string.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero quaternion")]
    ZeroDivision,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("bidegree {0:?} exceeds (1,1)")]
    BidegreeTooHigh((u32, u32)),
    #[error("norm square is not a product P(u)R(v)")]
    NotSeparable,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("factorization check failed: {0}")]
    VerificationFailed(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("pole at u={}{}{}", rat_to_string(.u), .v.as_ref().map(|v| format!(", v={}", rat_to_string(v))).unwrap_or_default(), .detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default())]
    PoleAt {
        u: Rat,
        v: Option<Rat>,
        detail: Option<String>,
    },
    #[error("invalid curve: c and d both vanish")]
    InvalidCurve,
    #[error("curve is a {0}, not a circle")]
    NotCircle(&'static str),
    #[error("not contained in Im H")]
    NotInImH,
    #[error("curve is a line (Im h = 0)")]
    LineCase,
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("inversion center is a pole")]
    CenterPole,
    #[error("duplicate points")]
    DuplicatePoints,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("determinant vanishes identically")]
    IdenticallyZeroDeterminant,
    #[error("restriction to t = 0 vanishes identically")]
    ZeroRestriction,
    #[error("G^k does not clear denominators")]
    DenominatorNotCleared,
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("residue is not of the form b*u*v")]
    NonpolynomialResidue,
    #[error("surface lies neither in Im H nor in S^3")]
    AmbientNeither,
    #[error("not contained in S^3")]
    NotInS3,
    #[error("|B|^2 != |A|^2 |C|^2")]
    NormIdentityFails,
    #[error("quartic is not of Darboux form")]
    NotDarboux,
    #[error("bidegree violation: {0}")]
    BidegreeViolation(String),
    #[error("identity failure: {0}")]
    IdentityFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDivision => "ZeroDivision",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::BidegreeTooHigh(_) => "BidegreeTooHigh",
            Error::NotSeparable => "NotSeparable",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::PoleAt { .. } => "PoleAt",
            Error::InvalidCurve => "InvalidCurve",
            Error::NotCircle(_) => "NotCircle",
            Error::NotInImH => "NotInImH",
            Error::LineCase => "LineCase",
            Error::DomainViolation(_) => "DomainViolation",
            Error::CenterPole => "CenterPole",
            Error::DuplicatePoints => "DuplicatePoints",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::IdenticallyZeroDeterminant => "IdenticallyZeroDeterminant",
            Error::ZeroRestriction => "ZeroRestriction",
            Error::DenominatorNotCleared => "DenominatorNotCleared",
            Error::PatternMismatch(_) => "PatternMismatch",
            Error::NonpolynomialResidue => "NonpolynomialResidue",
            Error::AmbientNeither => "AmbientNeither",
            Error::NotInS3 => "NotInS3",
            Error::NormIdentityFails => "NormIdentityFails",
            Error::NotDarboux => "NotDarboux",
            Error::BidegreeViolation(_) => "BidegreeViolation",
            Error::IdentityFailure(_) => "IdentityFailure",
            Error::Parse(_) => "Parse",
        }
    }

    pub(crate) fn pole_u(u: &Rat) -> Self {
        Error::PoleAt {
            u: u.clone(),
            v: None,
            detail: None,
        }
    }

    pub(crate) fn pole_uv(u: &Rat, v: &Rat) -> Self {
        Error::PoleAt {
            u: u.clone(),
            v: Some(v.clone()),
            detail: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
