//! Flat `key = value` scenario configuration.
//!
//! Precedence is built-in defaults, then the config file, then flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use clap::Args;
use plasmon_spdc::materials::{load_optical_constants, Material, OpticalConstantTable};
use sha2::{Digest, Sha256};

use crate::error::{CliError, StageExt};

/// Scenario keys; every one is also a `--kebab-case` flag.
#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioFlags {
    /// Prism refractive index
    #[arg(long, global = true)]
    pub prism_index: Option<f64>,
    /// Film material: `silver`, a `--table` name, or a constant index
    #[arg(long, global = true)]
    pub film_material: Option<String>,
    #[arg(long, global = true)]
    pub film_thickness_nm: Option<f64>,
    /// Exit medium: `vacuum`, `air`, a `--table` name, or a constant index
    #[arg(long, global = true)]
    pub exit_medium: Option<String>,
    /// Vacuum wavelength of the degenerate pair photons
    #[arg(long, global = true)]
    pub lambda_pair_um: Option<f64>,
    #[arg(long, global = true)]
    pub chi2_pm_per_v: Option<f64>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub loss_factor: Option<f64>,
    /// Pump angle from the interface plane; default is the resonance angle
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub angle_deg: Option<f64>,
    /// Coherence length; default is the SPP damping length
    #[arg(long, global = true)]
    pub l_delta_mm: Option<f64>,
    /// Pump enhancement; default is the transfer-matrix value
    #[arg(long, global = true)]
    pub eta0: Option<f64>,
    /// Pair enhancement; default is the transfer-matrix value
    #[arg(long, global = true)]
    pub eta1: Option<f64>,
    #[arg(long, global = true)]
    pub pump_field_v_per_m: Option<f64>,
    #[arg(long, global = true)]
    pub idler_photons: Option<f64>,
    /// Phase of |zy> relative to |yz>
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub relative_phase_rad: Option<f64>,
    #[arg(long, global = true)]
    pub grating_order: Option<u32>,
    #[arg(long, global = true)]
    pub grating_period_um: Option<f64>,
    /// Extra optical-constant table, `NAME=PATH` (lambda_um,n,k CSV)
    #[arg(long = "table", global = true, value_name = "NAME=PATH")]
    pub tables: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub prism_index: f64,
    pub film_material: String,
    pub film_thickness_nm: f64,
    pub exit_medium: String,
    pub lambda_pair_um: f64,
    pub chi2_pm_per_v: f64,
    pub alpha: f64,
    pub loss_factor: f64,
    pub angle_deg: Option<f64>,
    pub l_delta_mm: Option<f64>,
    pub eta0: Option<f64>,
    pub eta1: Option<f64>,
    pub pump_field_v_per_m: Option<f64>,
    pub idler_photons: f64,
    pub relative_phase_rad: f64,
    pub grating_order: Option<u32>,
    pub grating_period_um: Option<f64>,
    /// `(name, path)` in the order given.
    pub tables: Vec<(String, String)>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            prism_index: 1.5,
            film_material: "silver".into(),
            film_thickness_nm: 60.0,
            exit_medium: "vacuum".into(),
            lambda_pair_um: 1.0,
            chi2_pm_per_v: 1.0,
            alpha: plasmon_spdc::spdc::DEFAULT_ALPHA,
            loss_factor: 1.0,
            angle_deg: None,
            l_delta_mm: None,
            eta0: None,
            eta1: None,
            pump_field_v_per_m: None,
            idler_photons: 0.0,
            relative_phase_rad: 0.0,
            grating_order: None,
            grating_period_um: None,
            tables: Vec::new(),
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("`{key}`: cannot parse {value:?}")))
}

fn parse_table(spec: &str) -> Result<(String, String), CliError> {
    match spec.split_once('=') {
        Some((name, path)) if !name.trim().is_empty() && !path.trim().is_empty() => {
            Ok((name.trim().to_string(), path.trim().to_string()))
        }
        _ => Err(CliError::Config(format!("table must be NAME=PATH, got {spec:?}"))),
    }
}

impl ScenarioConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "prism_index" => self.prism_index = parse_num(key, value)?,
            "film_material" => self.film_material = value.to_string(),
            "film_thickness_nm" => self.film_thickness_nm = parse_num(key, value)?,
            "exit_medium" => self.exit_medium = value.to_string(),
            "lambda_pair_um" => self.lambda_pair_um = parse_num(key, value)?,
            "chi2_pm_per_v" => self.chi2_pm_per_v = parse_num(key, value)?,
            "alpha" => self.alpha = parse_num(key, value)?,
            "loss_factor" => self.loss_factor = parse_num(key, value)?,
            "angle_deg" => self.angle_deg = Some(parse_num(key, value)?),
            "l_delta_mm" => self.l_delta_mm = Some(parse_num(key, value)?),
            "eta0" => self.eta0 = Some(parse_num(key, value)?),
            "eta1" => self.eta1 = Some(parse_num(key, value)?),
            "pump_field_v_per_m" => self.pump_field_v_per_m = Some(parse_num(key, value)?),
            "idler_photons" => self.idler_photons = parse_num(key, value)?,
            "relative_phase_rad" => self.relative_phase_rad = parse_num(key, value)?,
            "grating_order" => self.grating_order = Some(parse_num(key, value)?),
            "grating_period_um" => self.grating_period_um = Some(parse_num(key, value)?),
            "table" => self.tables.push(parse_table(value)?),
            _ => return Err(CliError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`, got {raw:?}", i + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("line {}: {}", i + 1, e.to_string().trim_start_matches("config: "))))?;
        }
        Ok(())
    }

    pub fn apply_flags(&mut self, f: &ScenarioFlags) -> Result<(), CliError> {
        macro_rules! take {
            ($($field:ident),*) => {$(
                if let Some(v) = f.$field.clone() {
                    self.$field = v.into();
                }
            )*};
        }
        take!(prism_index, film_material, film_thickness_nm, exit_medium, lambda_pair_um, chi2_pm_per_v, alpha, loss_factor, idler_photons, relative_phase_rad);
        macro_rules! take_opt {
            ($($field:ident),*) => {$(
                if f.$field.is_some() {
                    self.$field = f.$field;
                }
            )*};
        }
        take_opt!(angle_deg, l_delta_mm, eta0, eta1, pump_field_v_per_m, grating_order, grating_period_um);
        for t in &f.tables {
            self.tables.push(parse_table(t)?);
        }
        Ok(())
    }

    pub fn load(path: Option<&Path>, flags: &ScenarioFlags) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(p) = path {
            let text = fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            cfg.apply_text(&text)?;
        }
        cfg.apply_flags(flags)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("prism_index", self.prism_index),
            ("lambda_pair_um", self.lambda_pair_um),
        ];
        for (k, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Config(format!("`{k}` must be positive, got {v}")));
            }
        }
        let non_negative = [
            ("film_thickness_nm", Some(self.film_thickness_nm)),
            ("chi2_pm_per_v", Some(self.chi2_pm_per_v)),
            ("alpha", Some(self.alpha)),
            ("loss_factor", Some(self.loss_factor)),
            ("idler_photons", Some(self.idler_photons)),
            ("l_delta_mm", self.l_delta_mm),
            ("eta0", self.eta0),
            ("eta1", self.eta1),
            ("pump_field_v_per_m", self.pump_field_v_per_m),
        ];
        for (k, v) in non_negative {
            if let Some(v) = v {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(CliError::Config(format!("`{k}` must be non-negative and finite, got {v}")));
                }
            }
        }
        if let Some(a) = self.angle_deg {
            if !(a > 0.0 && a <= 90.0) {
                return Err(CliError::Config(format!("`angle_deg` must lie in (0, 90], got {a}")));
            }
        }
        if !self.relative_phase_rad.is_finite() {
            return Err(CliError::Config("`relative_phase_rad` must be finite".into()));
        }
        if let Some(p) = self.grating_period_um {
            if !(p.is_finite() && p > 0.0) {
                return Err(CliError::Config(format!("`grating_period_um` must be positive, got {p}")));
            }
        }
        if self.grating_order == Some(0) {
            return Err(CliError::Config("`grating_order` must be at least 1".into()));
        }
        Ok(())
    }

    /// Canonical `key=value` lines in fixed order; unset optionals are omitted.
    pub fn canonical(&self) -> String {
        let mut m: BTreeMap<&str, String> = BTreeMap::new();
        m.insert("prism_index", self.prism_index.to_string());
        m.insert("film_material", self.film_material.clone());
        m.insert("film_thickness_nm", self.film_thickness_nm.to_string());
        m.insert("exit_medium", self.exit_medium.clone());
        m.insert("lambda_pair_um", self.lambda_pair_um.to_string());
        m.insert("chi2_pm_per_v", self.chi2_pm_per_v.to_string());
        m.insert("alpha", self.alpha.to_string());
        m.insert("loss_factor", self.loss_factor.to_string());
        m.insert("idler_photons", self.idler_photons.to_string());
        m.insert("relative_phase_rad", self.relative_phase_rad.to_string());
        let optional = [
            ("angle_deg", self.angle_deg),
            ("l_delta_mm", self.l_delta_mm),
            ("eta0", self.eta0),
            ("eta1", self.eta1),
            ("pump_field_v_per_m", self.pump_field_v_per_m),
            ("grating_period_um", self.grating_period_um),
        ];
        for (k, v) in optional {
            if let Some(v) = v {
                m.insert(k, v.to_string());
            }
        }
        if let Some(o) = self.grating_order {
            m.insert("grating_order", o.to_string());
        }
        let mut out: String = m.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        for (name, path) in &self.tables {
            out.push_str(&format!("table={name}={path}\n"));
        }
        out
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Materials resolved from names, with the citation of every table used.
#[derive(Debug, Clone)]
pub struct MaterialSet {
    tables: Vec<(String, OpticalConstantTable<f64>)>,
}

impl MaterialSet {
    pub fn load(cfg: &ScenarioConfig) -> Result<Self, CliError> {
        let mut tables = vec![("silver".to_string(), OpticalConstantTable::silver_johnson_christy())];
        for (name, path) in &cfg.tables {
            let file = fs::File::open(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let table = load_optical_constants(file, name, path).stage("table")?;
            tables.retain(|(n, _)| n != name);
            tables.push((name.clone(), table));
        }
        Ok(Self { tables })
    }

    pub fn resolve(&self, name: &str) -> Result<(Material<f64>, Option<String>), CliError> {
        let key = name.trim().to_ascii_lowercase();
        if key == "vacuum" || key == "air" {
            return Ok((Material::vacuum(), None));
        }
        if let Some((_, t)) = self.tables.iter().find(|(n, _)| n.eq_ignore_ascii_case(&key)) {
            return Ok((Material::tabulated(t.clone()), Some(format!("{}: {}", t.name(), t.source()))));
        }
        match name.trim().parse::<f64>() {
            Ok(n) => Material::constant(n).map(|m| (m, None)).stage("material"),
            Err(_) => Err(CliError::Config(format!("unknown material `{name}`"))),
        }
    }
}
