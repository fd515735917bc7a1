//! Command line surface: JSON documents, the experiment CSV and SVG output.

mod cli;
mod document;
mod experiment;
mod svg;

pub use cli::{run, Cli};
pub use document::{load_decomposition, Metadata, RepDocument, SurfaceShape};
pub use experiment::{ergodic_experiment, ExperimentConfig, ExperimentRecord, ExperimentSummary, CSV_HEADER, CSV_SCHEMA};
pub use svg::{detect_pairings, render_svg, Model, RenderDomain, SidePair, SvgOptions};

use crate::character_dynamics::CharacterError;
use crate::covering_group::CoveringError;
use crate::domain_builder::{DomainError, PantsError};
use crate::isometries::IsometryError;
use crate::surface_glue::GlueError;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("{source_name}:{line}:{column}: malformed JSON: {message}")]
    Json { source_name: String, line: usize, column: usize, message: String },
    /// The reader closed standard output; not reported.
    #[error("output closed")]
    BrokenPipe,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Precondition(_) => 2,
            CliError::Exhausted(_) => 3,
            CliError::Json { .. } => 4,
            CliError::BrokenPipe => 0,
        }
    }

    pub(crate) fn json(source_name: &str, e: &serde_json::Error) -> Self {
        CliError::Json { source_name: source_name.to_string(), line: e.line(), column: e.column(), message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::BrokenPipe;
        }
        CliError::Precondition(e.to_string())
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        match e {
            DomainError::NotFound { .. } | DomainError::EpsilonUnderflow(_) => CliError::Exhausted(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<GlueError> for CliError {
    fn from(e: GlueError) -> Self {
        match e {
            GlueError::SearchExhausted { .. } | GlueError::NoCompatibleBasepoint { .. } => CliError::Exhausted(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<CharacterError> for CliError {
    fn from(e: CharacterError) -> Self {
        match e {
            CharacterError::IterationBudgetExceeded(_)
            | CharacterError::ReductionStalled(_)
            | CharacterError::EmptyAfterMaxRejects(_) => CliError::Exhausted(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

macro_rules! precondition_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Precondition(e.to_string())
            }
        }
    )*};
}

precondition_from!(CoveringError, PantsError, IsometryError, crate::plane_geometry::GeometryError);
