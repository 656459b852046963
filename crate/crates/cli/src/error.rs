use coxcomb_core::abelian::AbelianError;
use coxcomb_core::iteration::IterationError;
use coxcomb_core::platonic::PlatonicError;
use coxcomb_core::ring::RingError;
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_SCHEMA: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_HYPOTHESES: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Platonic(#[from] PlatonicError),
    #[error(transparent)]
    Iteration(#[from] IterationError),
}

impl CliError {
    pub fn schema(msg: impl Into<String>) -> Self {
        Self::Schema(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Schema(_) | Self::Io { .. } => EXIT_SCHEMA,
            Self::Platonic(PlatonicError::HypothesesNotMet(_)) => EXIT_HYPOTHESES,
            Self::Platonic(PlatonicError::MissingExponents) => EXIT_SCHEMA,
            _ => EXIT_PRECONDITION,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Schema(_) => "schema",
            Self::Io { .. } => "io",
            Self::Platonic(PlatonicError::HypothesesNotMet(_)) => "hypotheses_not_met",
            Self::Platonic(PlatonicError::MissingExponents) => "schema",
            Self::Abelian(_) => "abelian_precondition",
            Self::Ring(_) => "ring_precondition",
            Self::Platonic(_) => "platonic_precondition",
            Self::Iteration(_) => "invalid_profile",
        }
    }
}
