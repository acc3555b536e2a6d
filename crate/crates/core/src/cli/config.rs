//! Effective run configuration: built-in defaults, then an optional TOML
//! file, then command-line flags.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::materials::{MaterialSpec, SellmeierPermittivity};
use crate::phys;
use crate::reflection::ReflectionModel;

/// Smallest and largest accepted quadrature / truncation tolerance.
pub const TOL_RANGE: (f64, f64) = (1e-12, 1e-4);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// Material given in practical units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomMaterial {
    pub name: String,
    pub eps0: f64,
    pub eps_inf: f64,
    /// rad/s
    pub omega0: f64,
    /// cm^-3 K^-3/2
    pub nc_prefactor: f64,
    pub nv_prefactor: f64,
    pub gap_e0_ev: f64,
    pub gap_alpha_ev: f64,
    /// K
    pub gap_beta: f64,
    pub tau0_ps: f64,
    pub tau1_ps: f64,
    pub tau_c1: f64,
    pub tau_c2: f64,
    pub mass_ratio: f64,
    #[serde(default = "yes")]
    pub carrier_doubling: bool,
    /// Measured dc resistivity for the conductivity model, ohm cm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resistivity_ohm_cm: Option<f64>,
}

fn yes() -> bool {
    true
}

impl CustomMaterial {
    pub fn to_spec(&self) -> MaterialSpec {
        MaterialSpec {
            name: self.name.clone(),
            permittivity: SellmeierPermittivity {
                eps0: self.eps0,
                eps_inf: self.eps_inf,
                omega0: self.omega0,
            },
            nc_prefactor: self.nc_prefactor,
            nv_prefactor: self.nv_prefactor,
            gap_e0: phys::ev_to_erg(self.gap_e0_ev),
            gap_alpha: phys::ev_to_erg(self.gap_alpha_ev),
            gap_beta: self.gap_beta,
            tau0: phys::ps_to_s(self.tau0_ps),
            tau1: phys::ps_to_s(self.tau1_ps),
            tau_c1: self.tau_c1,
            tau_c2: self.tau_c2,
            mass_ratio: self.mass_ratio,
            carrier_doubling: self.carrier_doubling,
            reference_sigma0: self.resistivity_ohm_cm.map(|r| phys::GAUSSIAN_PER_SIEMENS_CM / r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum MaterialChoice {
    /// "Ge", "Si", or "all" where a command accepts several.
    Name(String),
    Custom(CustomMaterial),
}

impl MaterialChoice {
    pub fn specs(&self) -> Result<Vec<MaterialSpec>, ConfigError> {
        match self {
            MaterialChoice::Custom(c) => {
                let spec = c.to_spec();
                spec.validate().map_err(|e| bad(format!("material {}: {e}", c.name)))?;
                Ok(vec![spec])
            }
            MaterialChoice::Name(n) if n.eq_ignore_ascii_case("all") => {
                Ok(vec![MaterialSpec::germanium(), MaterialSpec::silicon()])
            }
            MaterialChoice::Name(n) => MaterialSpec::builtin(n)
                .map(|s| vec![s])
                .ok_or_else(|| bad(format!("unknown material '{n}' (built-ins: Ge, Si, all)"))),
        }
    }
}

/// A number list: `[1, 2]`, `3.5`, or a spec string (see [`parse_list`]).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ListValue {
    One(f64),
    Many(Vec<f64>),
    Spec(String),
}

impl ListValue {
    fn resolve(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        match self {
            ListValue::One(v) => Ok(vec![*v]),
            ListValue::Many(v) => Ok(v.clone()),
            ListValue::Spec(s) => parse_list(s).map_err(|e| bad(format!("{key}: {e}"))),
        }
    }
}

/// Parses `a`, `a,b,c`, `start:stop:logN` or `start:stop:linN`.
pub fn parse_list(s: &str) -> Result<Vec<f64>, ConfigError> {
    let num = |t: &str| -> Result<f64, ConfigError> {
        t.trim().parse::<f64>().map_err(|_| bad(format!("'{t}' is not a number")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => single.split(',').map(num).collect(),
        [a, b, kind] => {
            let (a, b) = (num(a)?, num(b)?);
            let kind = kind.trim();
            let (log, count) = if let Some(n) = kind.strip_prefix("log") {
                (true, n)
            } else if let Some(n) = kind.strip_prefix("lin") {
                (false, n)
            } else {
                return Err(bad(format!("range kind '{kind}' must be logN or linN")));
            };
            let n: usize = count
                .parse()
                .map_err(|_| bad(format!("'{count}' is not a point count")))?;
            if n == 0 {
                return Err(bad("a range needs at least one point"));
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            if log && !(a > 0.0 && b > 0.0) {
                return Err(bad("log ranges need positive end points"));
            }
            let step = |i: usize| i as f64 / (n - 1) as f64;
            Ok((0..n)
                .map(|i| match (log, i) {
                    (_, 0) => a,
                    (_, i) if i == n - 1 => b,
                    (true, i) => (a.ln() + step(i) * (b.ln() - a.ln())).exp(),
                    (false, i) => a + step(i) * (b - a),
                })
                .collect())
        }
        _ => Err(bad(format!("cannot read '{s}' as a list or start:stop:logN range"))),
    }
}

/// Keys accepted in a config file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub command: Option<String>,
    pub material: Option<toml::Value>,
    pub model: Option<String>,
    pub temperature: Option<f64>,
    pub distances_um: Option<ListValue>,
    pub sigma0_ohm_cm: Option<f64>,
    pub tol_quad: Option<f64>,
    pub tol_sum: Option<f64>,
    pub temperatures: Option<ListValue>,
    pub xi_rad_s: Option<ListValue>,
    pub k_cm: Option<ListValue>,
    pub fd_step: Option<f64>,
}

/// Prefix of the header lines that carry the configuration in output files.
pub const HEADER_PREFIX: &str = "# config: ";

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        // an output CSV carries its configuration in its header
        let embedded: Vec<&str> = text
            .lines()
            .filter_map(|l| l.strip_prefix(HEADER_PREFIX))
            .collect();
        let body = if embedded.is_empty() {
            text.to_string()
        } else {
            embedded.join("\n")
        };
        toml::from_str(&body).map_err(|e| bad(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn material(&self) -> Result<Option<MaterialChoice>, ConfigError> {
        match &self.material {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(MaterialChoice::Name(s.clone()))),
            Some(v @ toml::Value::Table(_)) => {
                let c: CustomMaterial = v
                    .clone()
                    .try_into()
                    .map_err(|e: toml::de::Error| bad(format!("material: {}", e.message())))?;
                Ok(Some(MaterialChoice::Custom(c)))
            }
            Some(_) => Err(bad("material must be a name or a table")),
        }
    }
}

/// Command-line overrides, all optional.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub material: Option<String>,
    pub model: Option<String>,
    pub temperature: Option<f64>,
    pub distances: Option<String>,
    pub sigma0: Option<f64>,
    pub tol_quad: Option<f64>,
    pub tol_sum: Option<f64>,
    pub temperatures: Option<String>,
    pub xi: Option<String>,
    pub k: Option<String>,
    pub fd_step: Option<f64>,
}

/// Fully resolved configuration of one run. Serialises to a TOML file that
/// [`FileConfig`] reads back.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub model: String,
    /// K
    pub temperature: f64,
    pub distances_um: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma0_ohm_cm: Option<f64>,
    pub tol_quad: f64,
    pub tol_sum: f64,
    pub temperatures: Vec<f64>,
    pub xi_rad_s: Vec<f64>,
    pub k_cm: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    pub material: MaterialChoice,
}

/// Per-command starting values.
#[derive(Debug, Clone)]
pub struct Defaults {
    pub material: &'static str,
    pub model: &'static str,
    pub distances: &'static str,
    pub temperatures: &'static str,
    pub xi: &'static str,
    pub k: &'static str,
}

impl Default for Defaults {
    fn default() -> Self {
        Self {
            material: "Ge",
            model: "drift",
            distances: "1",
            temperatures: "300",
            xi: "",
            k: "1e2:1e6:log9",
        }
    }
}

impl RunConfig {
    pub fn resolve(command: &str, defaults: &Defaults, file: &FileConfig, flags: &Overrides) -> Result<Self, ConfigError> {
        if let Some(c) = &file.command {
            if c != command {
                return Err(bad(format!("config file is for '{c}', not '{command}'")));
            }
        }
        let list = |flag: &Option<String>, key: &str, from_file: &Option<ListValue>, default: &str| {
            if let Some(s) = flag {
                return parse_list(s).map_err(|e| bad(format!("{key}: {e}")));
            }
            if let Some(v) = from_file {
                return v.resolve(key);
            }
            if default.is_empty() {
                Ok(Vec::new())
            } else {
                parse_list(default)
            }
        };
        let material = match &flags.material {
            Some(m) => MaterialChoice::Name(m.clone()),
            None => file
                .material()?
                .unwrap_or_else(|| MaterialChoice::Name(defaults.material.into())),
        };
        let cfg = RunConfig {
            command: command.into(),
            model: flags
                .model
                .clone()
                .or_else(|| file.model.clone())
                .unwrap_or_else(|| defaults.model.into())
                .to_ascii_lowercase(),
            temperature: flags.temperature.or(file.temperature).unwrap_or(300.0),
            distances_um: list(&flags.distances, "distances_um", &file.distances_um, defaults.distances)?,
            sigma0_ohm_cm: flags.sigma0.or(file.sigma0_ohm_cm),
            tol_quad: flags.tol_quad.or(file.tol_quad).unwrap_or(1e-10),
            tol_sum: flags.tol_sum.or(file.tol_sum).unwrap_or(1e-10),
            temperatures: list(&flags.temperatures, "temperatures", &file.temperatures, defaults.temperatures)?,
            xi_rad_s: list(&flags.xi, "xi_rad_s", &file.xi_rad_s, defaults.xi)?,
            k_cm: list(&flags.k, "k_cm", &file.k_cm, defaults.k)?,
            fd_step: flags.fd_step.or(file.fd_step),
            material,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let (lo, hi) = TOL_RANGE;
        for (key, v) in [("tol_quad", self.tol_quad), ("tol_sum", self.tol_sum)] {
            if !(v >= lo && v <= hi) {
                return Err(bad(format!("{key} = {v:e} outside [{lo:e}, {hi:e}]")));
            }
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(bad(format!("temperature {} K must be positive", self.temperature)));
        }
        if self.distances_um.is_empty() {
            return Err(bad("no distances given"));
        }
        if self.distances_um.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
            return Err(bad("distances must be positive"));
        }
        if self.distances_um.windows(2).any(|w| w[1] <= w[0]) {
            return Err(bad("distances must be sorted in increasing order"));
        }
        if self.temperatures.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(bad("temperatures must be positive"));
        }
        if self.xi_rad_s.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
            return Err(bad("xi values must be finite and non-negative"));
        }
        if self.k_cm.iter().any(|&k| !(k > 0.0 && k.is_finite())) {
            return Err(bad("k values must be positive"));
        }
        if let Some(r) = self.sigma0_ohm_cm {
            if !(r > 0.0 && r.is_finite()) {
                return Err(bad(format!("sigma0 resistivity {r} ohm cm must be positive")));
            }
        }
        if let Some(h) = self.fd_step {
            if !(h > 0.0) {
                return Err(bad("fd_step must be positive"));
            }
        }
        if !["bare", "cond", "drift", "nonlocal"].contains(&self.model.as_str()) {
            return Err(bad(format!("unknown model '{}' (bare, cond, drift, nonlocal)", self.model)));
        }
        self.material.specs()?;
        Ok(())
    }

    /// Amplitude model for `spec` at temperature `t`. The conductivity model
    /// takes its sigma0 from `--sigma0`, else from the material's reference
    /// value, else from the material state.
    pub fn model_for(&self, name: &str, spec: &MaterialSpec, t: f64) -> Result<ReflectionModel, crate::Error> {
        Ok(match name {
            "bare" => ReflectionModel::Bare,
            "drift" => ReflectionModel::Drift,
            "nonlocal" => ReflectionModel::Nonlocal,
            _ => ReflectionModel::Conductivity {
                sigma0: self.cond_sigma0(spec, t)?,
            },
        })
    }

    pub fn model(&self, spec: &MaterialSpec, t: f64) -> Result<ReflectionModel, crate::Error> {
        self.model_for(&self.model, spec, t)
    }

    pub fn cond_sigma0(&self, spec: &MaterialSpec, t: f64) -> Result<f64, crate::Error> {
        if let Some(r) = self.sigma0_ohm_cm {
            return phys::sigma_gaussian(1.0 / r);
        }
        if let Some(s) = spec.reference_sigma0 {
            return Ok(s);
        }
        Ok(crate::materials::material_state(spec, t)?.sigma0)
    }

    pub fn settings(&self) -> crate::lifshitz::Settings {
        crate::lifshitz::Settings {
            tol_quad: self.tol_quad,
            tol_sum: self.tol_sum,
            ..Default::default()
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configuration serialises")
    }

    /// Hex SHA-256 of [`RunConfig::to_toml`].
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml().as_bytes()))
    }
}
