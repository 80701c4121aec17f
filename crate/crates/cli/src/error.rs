use plasmon_spdc::entangle::EntangleError;
use plasmon_spdc::materials::MaterialError;
use plasmon_spdc::phasematch::MatchError;
use plasmon_spdc::spp::SppError;
use plasmon_spdc::stratified::StackError;
use thiserror::Error;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_NUMERICAL: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: StageError,
    },
}

#[derive(Debug, Error)]
pub enum StageError {
    #[error(transparent)]
    Material(#[from] MaterialError),
    #[error(transparent)]
    Stack(#[from] StackError),
    #[error(transparent)]
    Spp(#[from] SppError),
    #[error(transparent)]
    Match(#[from] MatchError),
    #[error(transparent)]
    Entangle(#[from] EntangleError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => EXIT_CONFIG,
            CliError::Stage { source, .. } => source.exit_code(),
        }
    }
}

fn material_code(e: &MaterialError) -> u8 {
    match e {
        MaterialError::OutOfRange { .. } => EXIT_DOMAIN,
        _ => EXIT_CONFIG,
    }
}

fn spp_code(e: &SppError) -> u8 {
    match e {
        SppError::Material(m) => material_code(m),
        SppError::Pole | SppError::NoPrismCoupling { .. } => EXIT_DOMAIN,
        SppError::Invalid(_) => EXIT_CONFIG,
    }
}

impl StageError {
    pub fn exit_code(&self) -> u8 {
        match self {
            StageError::Material(m) => material_code(m),
            StageError::Stack(s) => match s {
                StackError::Material(m) => material_code(m),
                StackError::Numerical(_) => EXIT_NUMERICAL,
                _ => EXIT_CONFIG,
            },
            StageError::Spp(s) => spp_code(s),
            StageError::Match(m) => match m {
                MatchError::Spp(s) => spp_code(s),
                MatchError::Numerical(_) => EXIT_NUMERICAL,
                MatchError::Invalid(_) => EXIT_CONFIG,
                MatchError::Regime { .. } | MatchError::Unmatchable(_) | MatchError::GratingUnnecessary { .. } => {
                    EXIT_DOMAIN
                }
            },
            StageError::Entangle(_) => EXIT_CONFIG,
        }
    }
}

/// Attaches the pipeline stage to a library error.
pub trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T, CliError>;
}

impl<T, E: Into<StageError>> StageExt<T> for Result<T, E> {
    fn stage(self, stage: &'static str) -> Result<T, CliError> {
        self.map_err(|e| CliError::Stage {
            stage,
            source: e.into(),
        })
    }
}
