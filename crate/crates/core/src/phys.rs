//! Physical constants and unit conversions.
//!
//! Everything inside the crate runs in Gaussian CGS units: erg, cm, s, K, esu.
//! Practical units (eV, um, ps, ohm cm) only appear at the configuration
//! boundary, via the conversion factors below.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Reduced Planck constant, erg s (CODATA 2018).
pub const HBAR: f64 = 1.054_571_817e-27;
/// Boltzmann constant, erg/K (exact).
pub const K_B: f64 = 1.380_649e-16;
/// Speed of light, cm/s (exact).
pub const C: f64 = 2.997_924_58e10;
/// Elementary charge, esu.
pub const E_CHARGE: f64 = 4.803_204_712_570_263e-10;
/// Electron rest mass, g (CODATA 2018).
pub const M_ELECTRON: f64 = 9.109_383_701_5e-28;

/// Bundle of the constants above, for callers that prefer a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub hbar: f64,
    pub k_b: f64,
    pub c: f64,
    pub e_charge: f64,
    pub m_electron: f64,
}

pub const CGS: Constants = Constants {
    hbar: HBAR,
    k_b: K_B,
    c: C,
    e_charge: E_CHARGE,
    m_electron: M_ELECTRON,
};

/// cm per micrometre.
pub const CM_PER_UM: f64 = 1e-4;
/// erg per electronvolt (exact since 2019).
pub const ERG_PER_EV: f64 = 1.602_176_634e-12;
/// s per picosecond.
pub const S_PER_PS: f64 = 1e-12;
/// Gaussian conductivity (1/s) per ohm^-1 cm^-1, i.e. c^2 * 1e-9.
pub const GAUSSIAN_PER_SIEMENS_CM: f64 = C * C * 1e-9;

pub fn um_to_cm(um: f64) -> f64 {
    um * CM_PER_UM
}

pub fn cm_to_um(cm: f64) -> f64 {
    cm / CM_PER_UM
}

pub fn ev_to_erg(ev: f64) -> f64 {
    ev * ERG_PER_EV
}

pub fn erg_to_ev(erg: f64) -> f64 {
    erg / ERG_PER_EV
}

pub fn ps_to_s(ps: f64) -> f64 {
    ps * S_PER_PS
}

pub fn s_to_ps(s: f64) -> f64 {
    s / S_PER_PS
}

fn check_temperature(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(domain("temperature", format!("T = {t} K must be finite and positive")));
    }
    Ok(())
}

/// Matsubara frequency 2 pi n k_B T / hbar in rad/s.
pub fn matsubara_xi(n: usize, t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(matsubara_step(t) * n as f64)
}

/// Spacing of the Matsubara ladder, theta = 2 pi k_B T / hbar.
pub fn matsubara_step(t: f64) -> f64 {
    2.0 * PI * K_B * t / HBAR
}

/// Converts a conductivity in ohm^-1 cm^-1 to Gaussian units (1/s).
pub fn sigma_gaussian(sigma_siemens_cm: f64) -> Result<f64> {
    if !(sigma_siemens_cm >= 0.0) || !sigma_siemens_cm.is_finite() {
        return Err(domain(
            "conductivity",
            format!("{sigma_siemens_cm} ohm^-1 cm^-1 must be finite and non-negative"),
        ));
    }
    Ok(sigma_siemens_cm * GAUSSIAN_PER_SIEMENS_CM)
}

/// Thermal photon wavelength hbar c / k_B T in cm.
pub fn thermal_wavelength(t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(HBAR * C / (K_B * t))
}
