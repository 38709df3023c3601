use thiserror::Error;

use crate::exact_forms::FormError;
use crate::weierstrass::ParseError;

/// Pipeline stage an error is attributed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Parse,
    Reduce,
    Discriminant,
    Classify,
    Decide,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Parse => "parse",
            Stage::Reduce => "reduce",
            Stage::Discriminant => "discriminant",
            Stage::Classify => "classify",
            Stage::Decide => "decide",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not in del Pezzo normal form: the coefficient of w^2 is zero")]
    MissingW2,
    #[error("not in del Pezzo normal form: the coefficient of z^3 is zero")]
    MissingZ3,
    #[error("not an elliptic fibration: discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error("non-minimal place at {place}: not du Val")]
    NonMinimalPlace { place: String },
    #[error("inconsistent valuation triple (v4={v4}, v6={v6}, vD={vd})")]
    InconsistentValuations { v4: String, v6: String, vd: u32 },
    #[error("degree {0} is outside 2..=9; degree 1 goes through the full classifier")]
    DegreeOutOfRange(u32),
    #[error("du Val rank sum {0} exceeds 8")]
    RankOverflow(u32),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse_error",
            Error::MissingW2 => "missing_w2",
            Error::MissingZ3 => "missing_z3",
            Error::ZeroDiscriminant => "zero_discriminant",
            Error::NonMinimalPlace { .. } => "non_minimal_place",
            Error::InconsistentValuations { .. } => "inconsistent_valuations",
            Error::DegreeOutOfRange(_) => "degree_out_of_range",
            Error::RankOverflow(_) => "rank_overflow",
            Error::Form(_) => "form_error",
            Error::Invariant(_) => "invariant_violation",
        }
    }

    pub fn stage(&self) -> Stage {
        match self {
            Error::Parse(_) => Stage::Parse,
            Error::MissingW2 | Error::MissingZ3 => Stage::Reduce,
            Error::ZeroDiscriminant => Stage::Discriminant,
            Error::NonMinimalPlace { .. } | Error::InconsistentValuations { .. } | Error::Form(_) => {
                Stage::Classify
            }
            Error::DegreeOutOfRange(_) | Error::RankOverflow(_) | Error::Invariant(_) => {
                Stage::Decide
            }
        }
    }

    /// True for the four ways an input can fail to be a du Val del Pezzo
    /// surface of degree one in normal form.
    pub fn is_invalid_surface(&self) -> bool {
        matches!(
            self,
            Error::MissingW2 | Error::MissingZ3 | Error::ZeroDiscriminant | Error::NonMinimalPlace { .. }
        )
    }
}
