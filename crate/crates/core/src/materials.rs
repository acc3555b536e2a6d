//! Temperature-dependent optical and transport models for intrinsic
//! semiconductors and other low-carrier-density media.
//!
//! All stored parameters are Gaussian CGS. The built-in germanium and silicon
//! sets are assembled from their customary practical units at construction.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::phys::{self, E_CHARGE, K_B, M_ELECTRON};

/// Upper edge of the temperature range the fitted models are trusted in.
pub const VALIDITY_T_MAX: f64 = 400.0;

/// Single-oscillator Sellmeier form of the bare permittivity on the
/// imaginary axis: `eps_inf + omega0^2 (eps0 - eps_inf) / (xi^2 + omega0^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SellmeierPermittivity {
    pub eps0: f64,
    pub eps_inf: f64,
    /// Resonance frequency, rad/s.
    pub omega0: f64,
}

impl SellmeierPermittivity {
    pub fn new(eps0: f64, eps_inf: f64, omega0: f64) -> Result<Self> {
        let s = Self {
            eps0,
            eps_inf,
            omega0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps0 > self.eps_inf && self.eps_inf >= 1.0 && self.omega0 > 0.0)
            || !self.eps0.is_finite()
            || !self.omega0.is_finite()
        {
            return Err(Error::ModelValidity(format!(
                "Sellmeier parameters need eps0 > eps_inf >= 1 and omega0 > 0, got ({}, {}, {})",
                self.eps0, self.eps_inf, self.omega0
            )));
        }
        Ok(())
    }

    /// Value at imaginary frequency `xi >= 0`. No argument checking.
    #[inline]
    pub fn at(&self, xi: f64) -> f64 {
        let w2 = self.omega0 * self.omega0;
        self.eps_inf + w2 * (self.eps0 - self.eps_inf) / (xi * xi + w2)
    }
}

/// Fitted parameter set for one medium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialSpec {
    pub name: String,
    pub permittivity: SellmeierPermittivity,
    /// Conduction-band effective density of states prefactor, cm^-3 K^-3/2.
    pub nc_prefactor: f64,
    /// Valence-band prefactor, cm^-3 K^-3/2.
    pub nv_prefactor: f64,
    /// Band gap at T = 0, erg.
    pub gap_e0: f64,
    /// Varshni alpha, erg/K.
    pub gap_alpha: f64,
    /// Varshni beta, K.
    pub gap_beta: f64,
    /// Relaxation-time offset, s.
    pub tau0: f64,
    /// Relaxation-time amplitude, s.
    pub tau1: f64,
    pub tau_c1: f64,
    pub tau_c2: f64,
    /// Carrier effective mass in units of the electron mass.
    pub mass_ratio: f64,
    /// Count electrons and holes as one species of twice the density.
    pub carrier_doubling: bool,
    /// Measured dc conductivity (1/s) used by the additive-conductivity model,
    /// when one is known for this medium.
    pub reference_sigma0: Option<f64>,
}

impl MaterialSpec {
    /// Intrinsic germanium.
    pub fn germanium() -> Self {
        Self {
            name: "Ge".into(),
            permittivity: SellmeierPermittivity {
                eps0: 16.2,
                eps_inf: 1.1,
                omega0: 5.0e15,
            },
            nc_prefactor: 1.98e15,
            nv_prefactor: 9.6e14,
            gap_e0: phys::ev_to_erg(0.742),
            gap_alpha: phys::ev_to_erg(4.8e-4),
            gap_beta: 235.0,
            tau0: phys::ps_to_s(0.26),
            tau1: phys::ps_to_s(1.49),
            tau_c1: -0.434,
            tau_c2: 1.322,
            mass_ratio: 0.12,
            carrier_doubling: true,
            // 1 / (43 ohm cm)
            reference_sigma0: Some(phys::GAUSSIAN_PER_SIEMENS_CM / 43.0),
        }
    }

    /// Intrinsic silicon.
    pub fn silicon() -> Self {
        Self {
            name: "Si".into(),
            permittivity: SellmeierPermittivity {
                eps0: 11.87,
                eps_inf: 1.035,
                omega0: 6.6e15,
            },
            nc_prefactor: 6.2e15,
            nv_prefactor: 3.5e15,
            gap_e0: phys::ev_to_erg(1.17),
            gap_alpha: phys::ev_to_erg(4.73e-4),
            gap_beta: 636.0,
            tau0: phys::ps_to_s(1.0),
            tau1: phys::ps_to_s(-0.538),
            tau_c1: 0.0015,
            tau_c2: -0.09,
            mass_ratio: 0.26,
            carrier_doubling: true,
            // 1 / (2.3e5 ohm cm)
            reference_sigma0: Some(phys::GAUSSIAN_PER_SIEMENS_CM / 2.3e5),
        }
    }

    /// Looks up a compiled-in parameter set by name (case-insensitive).
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ge" | "germanium" => Some(Self::germanium()),
            "si" | "silicon" => Some(Self::silicon()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.permittivity.validate()?;
        let positive = [
            ("nc_prefactor", self.nc_prefactor),
            ("nv_prefactor", self.nv_prefactor),
            ("gap_e0", self.gap_e0),
            ("mass_ratio", self.mass_ratio),
        ];
        for (field, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::ModelValidity(format!("{field} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn carrier_mass(&self) -> f64 {
        self.mass_ratio * M_ELECTRON
    }
}

/// Bare permittivity at imaginary frequency `xi`.
pub fn bare_eps(spec: &MaterialSpec, xi: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(domain("bare_eps", format!("xi = {xi} must be non-negative")));
    }
    Ok(spec.permittivity.at(xi))
}

/// Band gap in erg.
pub fn band_gap(spec: &MaterialSpec, t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain("band_gap", format!("T = {t} K")));
    }
    Ok(spec.gap_e0 - spec.gap_alpha * t * t / (t + spec.gap_beta))
}

/// Effective conduction and valence densities of states, cm^-3.
pub fn band_densities(spec: &MaterialSpec, t: f64) -> (f64, f64) {
    let t32 = t * t.sqrt();
    (spec.nc_prefactor * t32, spec.nv_prefactor * t32)
}

/// Intrinsic carrier density in cm^-3, doubled when `carrier_doubling` is set.
pub fn carrier_density(spec: &MaterialSpec, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain("carrier_density", format!("T = {t} K must be positive")));
    }
    let (nc, nv) = band_densities(spec, t);
    let gap = band_gap(spec, t)?;
    let n = (nc * nv).sqrt() * (-gap / (2.0 * K_B * t)).exp();
    Ok(if spec.carrier_doubling { 2.0 * n } else { n })
}

/// Carrier relaxation time in seconds.
pub fn relaxation_time(spec: &MaterialSpec, t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(domain("relaxation_time", format!("T = {t} K")));
    }
    let x = t / 300.0;
    let tau = spec.tau0 + spec.tau1 * (spec.tau_c1 * x * x + spec.tau_c2 * x).exp();
    if !(tau > 0.0) {
        return Err(Error::ModelValidity(format!(
            "relaxation time {tau:e} s is not positive at T = {t} K"
        )));
    }
    Ok(tau)
}

/// Transport quantities of one medium at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialState {
    /// Temperature, K.
    pub t: f64,
    /// Carrier density, cm^-3.
    pub n0: f64,
    /// Relaxation time, s.
    pub tau: f64,
    /// dc Drude conductivity e^2 n0 tau / m, 1/s.
    pub sigma0: f64,
    /// Thermal velocity sqrt(k_B T / m), cm/s.
    pub v_t: f64,
    /// Mobility e tau / m.
    pub mobility: f64,
    /// Diffusion constant v_T^2 tau, cm^2/s.
    pub diffusion: f64,
    /// Inverse Debye radius with the static bare permittivity, 1/cm.
    pub kappa: f64,
    /// Debye radius 1/kappa, cm.
    pub debye_radius: f64,
    /// Static bare permittivity used in kappa.
    pub eps0: f64,
    /// Set when T lies outside the fitted models' range.
    pub out_of_range: bool,
}

impl MaterialState {
    fn assemble(spec: &MaterialSpec, t: f64, n0: f64, tau: f64) -> Self {
        let m = spec.carrier_mass();
        let eps0 = spec.permittivity.eps0;
        let kt = K_B * t;
        let v_t = (kt / m).sqrt();
        let kappa = (4.0 * PI * E_CHARGE * E_CHARGE * n0 / (eps0 * kt)).sqrt();
        Self {
            t,
            n0,
            tau,
            sigma0: E_CHARGE * E_CHARGE * n0 * tau / m,
            v_t,
            mobility: E_CHARGE * tau / m,
            diffusion: v_t * v_t * tau,
            kappa,
            debye_radius: 1.0 / kappa,
            eps0,
            out_of_range: t > VALIDITY_T_MAX,
        }
    }

    /// Same state with the carrier density replaced; everything that depends
    /// on it is recomputed. `n0 = 0` gives an ideal dielectric.
    pub fn with_carrier_density(&self, spec: &MaterialSpec, n0: f64) -> Self {
        Self::assemble(spec, self.t, n0, self.tau)
    }

    /// Screening wavevector squared at imaginary frequency, using the
    /// frequency-dependent bare permittivity.
    #[inline]
    pub fn screening_sq(&self, eps_bar: f64) -> f64 {
        self.kappa * self.kappa * self.eps0 / eps_bar
    }
}

pub fn material_state(spec: &MaterialSpec, t: f64) -> Result<MaterialState> {
    spec.validate()?;
    let n0 = carrier_density(spec, t)?;
    let tau = relaxation_time(spec, t)?;
    Ok(MaterialState::assemble(spec, t, n0, tau))
}

/// Conduction rate 4 pi sigma0 / eps_bar(i xi), rad/s.
pub fn omega_c(state: &MaterialState, spec: &MaterialSpec, xi: f64) -> Result<f64> {
    let eps = bare_eps(spec, xi)?;
    Ok(4.0 * PI * state.sigma0 / eps)
}
