//! Plasmon-assisted spontaneous parametric down-conversion at a
//! prism / metal film / dielectric interface.
//!
//! The crate is organised bottom-up:
//!
//! * [`materials`]: optical-constant tables and permittivities
//! * [`stratified`]: transfer matrices, reflectance and field enhancement
//! * [`spp`]: single-interface surface-plasmon dispersion
//! * [`phasematch`]: pump-to-pair momentum matching and grating design
//! * [`spdc`]: transformation coefficient, radiance and pair yield
//! * [`entangle`]: the emitted polarisation state and Bell tests
//!
//! All numerics are generic over [`Real`]; the `*F64` aliases below are the
//! concrete types used by the command-line tool.

pub mod constants;
pub mod entangle;
pub mod materials;
pub mod phasematch;
pub mod scalar;
pub mod search;
pub mod spdc;
pub mod spp;
pub mod stratified;

pub use scalar::{Cx, Real};

pub type MaterialF64 = materials::Material<f64>;
pub type OpticalConstantTableF64 = materials::OpticalConstantTable<f64>;
pub type LayerStackF64 = stratified::LayerStack<f64>;
pub type LayerStackF32 = stratified::LayerStack<f32>;
pub type StackResponseF64 = stratified::StackResponse<f64>;
pub type SppModeF64 = spp::SppMode<f64>;
pub type PhaseMatchSolutionF64 = phasematch::PhaseMatchSolution<f64>;
pub type SpdcScenarioF64 = spdc::SpdcScenario<f64>;
pub type YieldReportF64 = spdc::YieldReport<f64>;
pub type TwoPhotonStateF64 = entangle::TwoPhotonState<f64>;
pub type AnalyzerF64 = entangle::Analyzer<f64>;
