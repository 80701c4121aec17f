//! Optical constants and permittivities.
//!
//! Metals are described by tabulated `(λ, n, k)` samples, dielectrics by a
//! constant real index. Tables are read from a small CSV dialect:
//!
//! ```text
//! # comment lines start with '#'
//! lambda_um,n,k
//! 1.0,0.2,6.8
//! 1.2,0.3,8.0
//! ```
//!
//! Wavelengths are stored in metres. Interpolation is linear in photon
//! energy (∝ 1/λ), applied to `n` and `k` separately, and never extrapolates.

use std::io::Read;
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::{Cx, Real};

/// Silver optical constants of Johnson & Christy (1972), bundled with the crate.
pub const SILVER_JC_CSV: &str = include_str!("../data/silver_jc.csv");

const HEADER: [&str; 3] = ["lambda_um", "n", "k"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MaterialError {
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("unexpected header {found:?}, expected `lambda_um,n,k`")]
    BadHeader { found: String },
    #[error("insufficient samples: {found} (need at least 2)")]
    InsufficientSamples { found: usize },
    #[error("wavelengths not strictly increasing: duplicate {lambda_um} um with conflicting values")]
    NonMonotonic { lambda_um: f64 },
    #[error("invalid optical constant at {lambda_um} um: {reason}")]
    InvalidValue { lambda_um: f64, reason: String },
    #[error("io error: {0}")]
    Io(String),
    #[error("wavelength {lambda_m} m outside table `{table}` range [{min_m}, {max_m}] m")]
    OutOfRange {
        table: String,
        lambda_m: f64,
        min_m: f64,
        max_m: f64,
    },
    #[error("refractive index must be positive and finite, got {0}")]
    InvalidIndex(f64),
}

/// One tabulated sample: vacuum wavelength (m) and complex index `n + ik`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalSample<T> {
    pub lambda: T,
    pub n: T,
    pub k: T,
}

/// Validated, wavelength-sorted optical-constant table.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalConstantTable<T> {
    name: String,
    source: String,
    samples: Vec<OpticalSample<T>>,
}

impl<T: Real> OpticalConstantTable<T> {
    /// Builds a table from samples in metres. Samples are sorted, exact
    /// duplicates dropped, and the invariants checked.
    pub fn new(
        name: impl Into<String>,
        source: impl Into<String>,
        mut samples: Vec<OpticalSample<T>>,
    ) -> Result<Self, MaterialError> {
        for s in &samples {
            let lambda_um = s.lambda.to_f64_lossy() * 1e6;
            if !(s.lambda.is_finite() && s.lambda > T::zero()) {
                return Err(MaterialError::InvalidValue {
                    lambda_um,
                    reason: "wavelength must be positive and finite".into(),
                });
            }
            if !(s.n.is_finite() && s.k.is_finite()) || s.n < T::zero() || s.k < T::zero() {
                return Err(MaterialError::InvalidValue {
                    lambda_um,
                    reason: "n and k must be finite and non-negative".into(),
                });
            }
        }
        samples.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).expect("finite wavelengths"));
        samples.dedup();
        for pair in samples.windows(2) {
            if pair[1].lambda <= pair[0].lambda {
                return Err(MaterialError::NonMonotonic {
                    lambda_um: pair[1].lambda.to_f64_lossy() * 1e6,
                });
            }
        }
        if samples.len() < 2 {
            return Err(MaterialError::InsufficientSamples {
                found: samples.len(),
            });
        }
        Ok(Self {
            name: name.into(),
            source: source.into(),
            samples,
        })
    }

    /// The bundled Johnson–Christy silver table.
    pub fn silver_johnson_christy() -> Self {
        load_optical_constants(
            SILVER_JC_CSV.as_bytes(),
            "silver",
            "P. B. Johnson and R. W. Christy, Phys. Rev. B 6, 4370 (1972)",
        )
        .expect("bundled silver table is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn samples(&self) -> &[OpticalSample<T>] {
        &self.samples
    }

    /// Covered wavelength interval in metres.
    pub fn range(&self) -> (T, T) {
        (
            self.samples[0].lambda,
            self.samples[self.samples.len() - 1].lambda,
        )
    }

    /// Complex index `n + ik` at `lambda` (m), linear in 1/λ between samples.
    pub fn index_at(&self, lambda: T) -> Result<Cx<T>, MaterialError> {
        let (lo, hi) = self.range();
        if !(lambda >= lo && lambda <= hi) {
            return Err(MaterialError::OutOfRange {
                table: self.name.clone(),
                lambda_m: lambda.to_f64_lossy(),
                min_m: lo.to_f64_lossy(),
                max_m: hi.to_f64_lossy(),
            });
        }
        // first sample with wavelength >= lambda
        let j = self.samples.partition_point(|s| s.lambda < lambda);
        let upper = &self.samples[j];
        if upper.lambda == lambda || j == 0 {
            return Ok(Cx::new(upper.n, upper.k));
        }
        let lower = &self.samples[j - 1];
        let (e, e0, e1) = (lambda.recip(), lower.lambda.recip(), upper.lambda.recip());
        let w = (e - e0) / (e1 - e0);
        let n = lower.n + w * (upper.n - lower.n);
        let k = lower.k + w * (upper.k - lower.k);
        Ok(Cx::new(n, k))
    }
}

/// Reads the `lambda_um,n,k` CSV dialect. `#` lines are comments.
pub fn load_optical_constants<T: Real, R: Read>(
    source: R,
    name: &str,
    citation: &str,
) -> Result<OpticalConstantTable<T>, MaterialError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(source);

    let mut header_seen = false;
    let mut samples = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| match e.kind() {
            csv::ErrorKind::Io(io) => MaterialError::Io(io.to_string()),
            _ => MaterialError::MalformedRow {
                line: e.position().map(|p| p.line()).unwrap_or(0),
                reason: e.to_string(),
            },
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if !header_seen {
            let fields: Vec<&str> = record.iter().collect();
            if fields != HEADER {
                return Err(MaterialError::BadHeader {
                    found: fields.join(","),
                });
            }
            header_seen = true;
            continue;
        }
        if record.len() != 3 {
            return Err(MaterialError::MalformedRow {
                line,
                reason: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let mut values = [0.0_f64; 3];
        for (slot, field) in values.iter_mut().zip(record.iter()) {
            *slot = field.parse().map_err(|_| MaterialError::MalformedRow {
                line,
                reason: format!("not a number: {field:?}"),
            })?;
        }
        let [lambda_um, n, k] = values;
        samples.push(OpticalSample {
            lambda: T::lit(lambda_um * 1e-6),
            n: T::lit(n),
            k: T::lit(k),
        });
    }
    OpticalConstantTable::new(name, citation, samples)
}

/// A medium that can report its permittivity at a vacuum wavelength.
#[derive(Debug, Clone, PartialEq)]
pub enum Material<T> {
    /// Lossless dielectric with a wavelength-independent real index.
    ConstantIndex(T),
    Tabulated(Arc<OpticalConstantTable<T>>),
}

impl<T: Real> Material<T> {
    pub fn constant(n: T) -> Result<Self, MaterialError> {
        if n.is_finite() && n > T::zero() {
            Ok(Material::ConstantIndex(n))
        } else {
            Err(MaterialError::InvalidIndex(n.to_f64_lossy()))
        }
    }

    pub fn vacuum() -> Self {
        Material::ConstantIndex(T::one())
    }

    pub fn tabulated(table: OpticalConstantTable<T>) -> Self {
        Material::Tabulated(Arc::new(table))
    }

    pub fn silver() -> Self {
        Self::tabulated(OpticalConstantTable::silver_johnson_christy())
    }

    pub fn is_lossless(&self) -> bool {
        matches!(self, Material::ConstantIndex(_))
    }

    /// Real index of a constant-index medium.
    pub fn real_index(&self) -> Option<T> {
        match self {
            Material::ConstantIndex(n) => Some(*n),
            Material::Tabulated(_) => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Material::ConstantIndex(n) => format!("n={n}"),
            Material::Tabulated(t) => t.name().to_string(),
        }
    }

    /// Complex refractive index `n + ik` at `lambda` (m).
    pub fn index(&self, lambda: T) -> Result<Cx<T>, MaterialError> {
        match self {
            Material::ConstantIndex(n) => Ok(Cx::new(*n, T::zero())),
            Material::Tabulated(table) => table.index_at(lambda),
        }
    }

    /// Relative permittivity `ε = (n + ik)²`.
    pub fn permittivity(&self, lambda: T) -> Result<Cx<T>, MaterialError> {
        match self {
            Material::ConstantIndex(n) => Ok(Cx::new(*n * *n, T::zero())),
            Material::Tabulated(table) => {
                let m = table.index_at(lambda)?;
                Ok(m * m)
            }
        }
    }
}

/// Free-function form of [`Material::permittivity`].
pub fn permittivity<T: Real>(material: &Material<T>, lambda: T) -> Result<Cx<T>, MaterialError> {
    material.permittivity(lambda)
}
