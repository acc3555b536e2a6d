//! Reflection amplitudes of a single vacuum/medium interface, evaluated on
//! the imaginary frequency axis.
//!
//! Four response models are available: the bare local permittivity, the bare
//! permittivity plus an additive dc conduction term, the drift model that
//! follows from linearised Boltzmann transport (Debye screening plus carrier
//! diffusion), and the same drift response expressed through a spatially
//! dispersive permittivity tensor. Every quantity involved is real on the
//! imaginary axis, so no complex arithmetic is needed.
//!
//! The `xi = 0` terms are never obtained by substituting zero into the
//! frequency-dependent expressions; each model has an explicit static branch.

mod boundary;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::materials::{self, MaterialSpec, MaterialState};
use crate::nonlocal;
use crate::phys::C;

pub use boundary::{r_oracle_bc, BoundarySolution, MIN_TRANSVERSE_GAP};

/// One point on the (imaginary frequency, in-plane wavevector) grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    /// Imaginary frequency, rad/s.
    pub xi: f64,
    /// In-plane wavevector magnitude, 1/cm.
    pub k: f64,
}

impl Mode {
    pub fn new(xi: f64, k: f64) -> Result<Self> {
        if !(xi >= 0.0) || !xi.is_finite() {
            return Err(domain("mode", format!("xi = {xi} must be finite and >= 0")));
        }
        if !(k > 0.0) || !k.is_finite() {
            return Err(domain("mode", format!("k = {k} must be finite and > 0")));
        }
        Ok(Self { xi, k })
    }

    /// (xi / c)^2 in cm^-2.
    #[inline]
    pub fn xi_c_sq(&self) -> f64 {
        let w = self.xi / C;
        w * w
    }

    /// Vacuum decay constant sqrt(k^2 + xi^2/c^2).
    #[inline]
    pub fn gamma0(&self) -> f64 {
        self.k.hypot(self.xi / C)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    #[serde(rename = "TM")]
    Tm,
    #[serde(rename = "TE")]
    Te,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::Te, Polarization::Tm];

    pub fn label(self) -> &'static str {
        match self {
            Polarization::Tm => "TM",
            Polarization::Te => "TE",
        }
    }
}

/// Selects the amplitude formulas used for a plate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ReflectionModel {
    /// Fresnel with the bare permittivity only.
    Bare,
    /// Fresnel with `eps_bar + 4 pi sigma0 / xi`; sigma0 in 1/s.
    Conductivity { sigma0: f64 },
    /// Screened drift-diffusion amplitudes.
    Drift,
    /// Drift response expressed through the nonlocal permittivity tensor.
    Nonlocal,
}

impl ReflectionModel {
    pub fn label(&self) -> &'static str {
        match self {
            ReflectionModel::Bare => "bare",
            ReflectionModel::Conductivity { .. } => "cond",
            ReflectionModel::Drift => "drift",
            ReflectionModel::Nonlocal => "nonlocal",
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let ReflectionModel::Conductivity { sigma0 } = self {
            if !(*sigma0 >= 0.0) || !sigma0.is_finite() {
                return Err(domain("conductivity model", format!("sigma0 = {sigma0}")));
            }
        }
        Ok(())
    }
}

/// Transverse and longitudinal decay constants of the drift model plus the
/// TM surface combination chi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftQuantities {
    pub eta_l: f64,
    pub eta_t: f64,
    pub chi: f64,
    /// eta_T^2 - k^2, computed without cancellation.
    pub transverse_excess: f64,
}

/// Conduction contribution 4 pi sigma(i xi) xi / c^2 to eta_T^2, with the
/// ac Drude conductivity sigma0 / (1 + xi tau).
#[inline]
fn drift_conduction(xi: f64, state: &MaterialState) -> f64 {
    4.0 * PI * state.sigma0 / (1.0 + xi * state.tau) * xi / (C * C)
}

/// Longitudinal (screening plus diffusion) decay constant.
pub fn eta_l(mode: &Mode, state: &MaterialState, eps_bar: f64) -> f64 {
    let xi = mode.xi;
    let k = mode.k;
    let diffusive = if xi == 0.0 {
        0.0
    } else {
        xi * (1.0 + xi * state.tau) / state.diffusion
    };
    (k * k + state.screening_sq(eps_bar) + diffusive).sqrt()
}

/// Transverse decay constant; at `xi = 0` this is its limit `k`.
pub fn eta_t(mode: &Mode, state: &MaterialState, eps_bar: f64) -> f64 {
    let k = mode.k;
    (k * k + transverse_excess(mode, state, eps_bar)).sqrt()
}

fn transverse_excess(mode: &Mode, state: &MaterialState, eps_bar: f64) -> f64 {
    eps_bar * mode.xi_c_sq() + drift_conduction(mode.xi, state)
}

/// TM surface combination
/// `(1/eta_L) [k^2 + eps_bar (xi/c)^2 (eta_L eta_T - k^2) / (eta_T^2 - k^2)]`.
///
/// This form takes the decay constants as given and so recovers
/// `eta_T^2 - k^2` by subtraction; [`drift_quantities`] avoids that.
pub fn chi(mode: &Mode, eta_l: f64, eta_t: f64, eps_bar: f64) -> Result<f64> {
    let k = mode.k;
    let excess = (eta_t - k) * (eta_t + k);
    if !(excess > 0.0) {
        return Err(Error::Evaluation {
            k,
            xi: mode.xi,
            detail: "eta_T^2 - k^2 vanishes in chi".into(),
        });
    }
    Ok((k * k + eps_bar * mode.xi_c_sq() * (eta_l * eta_t - k * k) / excess) / eta_l)
}

/// All drift-model quantities at one mode with `xi > 0`.
///
/// chi is evaluated as `f eta_T + (1 - f) k^2 / eta_L` with
/// `f = eps_bar (xi/c)^2 / (eta_T^2 - k^2)`, algebraically identical to
/// [`chi`] but free of cancellation at small `xi`.
pub fn drift_quantities(mode: &Mode, state: &MaterialState, eps_bar: f64) -> Result<DriftQuantities> {
    let k = mode.k;
    let local = eps_bar * mode.xi_c_sq();
    let conduction = drift_conduction(mode.xi, state);
    let excess = local + conduction;
    if !(excess > 0.0) {
        return Err(Error::Evaluation {
            k,
            xi: mode.xi,
            detail: "drift amplitudes need xi > 0".into(),
        });
    }
    let eta_l = eta_l(mode, state, eps_bar);
    let eta_t = (k * k + excess).sqrt();
    let f = local / excess;
    let g = conduction / excess;
    Ok(DriftQuantities {
        eta_l,
        eta_t,
        chi: f * eta_t + g * k * k / eta_l,
        transverse_excess: excess,
    })
}

/// TM Fresnel amplitude for a local permittivity `eps`, written in terms of
/// the medium decay constant `eta`.
#[inline]
fn fresnel_tm(eps: f64, gamma0: f64, eta: f64) -> f64 {
    (eps * gamma0 - eta) / (eps * gamma0 + eta)
}

/// TE Fresnel amplitude `(gamma0 - eta) / (gamma0 + eta)` with
/// `eta^2 = k^2 + excess`, as `((xi/c)^2 - excess) / (gamma0 + eta)^2`.
#[inline]
fn fresnel_te(mode: &Mode, excess: f64) -> f64 {
    let gamma0 = mode.gamma0();
    let eta = (mode.k * mode.k + excess).sqrt();
    let sum = gamma0 + eta;
    (mode.xi_c_sq() - excess) / (sum * sum)
}

/// Static drift TM amplitude `(eps0 q - k) / (eps0 q + k)`, `q^2 = k^2 + kappa^2`.
pub fn drift_static_tm(k: f64, kappa: f64, eps0: f64) -> f64 {
    let q = k.hypot(kappa);
    (eps0 * q - k) / (eps0 * q + k)
}

/// A plate material bound to a response model at a fixed temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct Medium {
    pub spec: MaterialSpec,
    pub state: MaterialState,
    pub model: ReflectionModel,
}

impl Medium {
    pub fn new(spec: MaterialSpec, model: ReflectionModel, t: f64) -> Result<Self> {
        model.validate()?;
        let state = materials::material_state(&spec, t)?;
        Ok(Self { spec, state, model })
    }

    /// Uses an explicit state, e.g. one with the carrier density overridden.
    pub fn with_state(spec: MaterialSpec, state: MaterialState, model: ReflectionModel) -> Result<Self> {
        model.validate()?;
        Ok(Self { spec, state, model })
    }

    #[inline]
    pub fn eps_bar(&self, xi: f64) -> f64 {
        self.spec.permittivity.at(xi)
    }

    pub fn r_tm(&self, mode: &Mode) -> Result<f64> {
        let eps = self.eps_bar(mode.xi);
        let gamma0 = mode.gamma0();
        if mode.xi == 0.0 {
            return Ok(match self.model {
                ReflectionModel::Bare => (eps - 1.0) / (eps + 1.0),
                ReflectionModel::Conductivity { sigma0 } if sigma0 > 0.0 => 1.0,
                ReflectionModel::Conductivity { .. } => (eps - 1.0) / (eps + 1.0),
                ReflectionModel::Drift => drift_static_tm(mode.k, self.state.kappa, eps),
                ReflectionModel::Nonlocal => {
                    nonlocal::static_response(mode.k, &self.state).r_tm()
                }
            });
        }
        match self.model {
            ReflectionModel::Bare => {
                let eta = (mode.k * mode.k + eps * mode.xi_c_sq()).sqrt();
                Ok(fresnel_tm(eps, gamma0, eta))
            }
            ReflectionModel::Conductivity { sigma0 } => {
                let eps_tot = eps + 4.0 * PI * sigma0 / mode.xi;
                let eta = (mode.k * mode.k + eps_tot * mode.xi_c_sq()).sqrt();
                Ok(fresnel_tm(eps_tot, gamma0, eta))
            }
            ReflectionModel::Drift => {
                let q = drift_quantities(mode, &self.state, eps)?;
                Ok((eps * gamma0 - q.chi) / (eps * gamma0 + q.chi))
            }
            ReflectionModel::Nonlocal => {
                let tensor = nonlocal::EffectiveDriftTensor::new(self.state, self.spec.permittivity);
                Ok(nonlocal::closed_h_functions(&tensor, mode)?.r_tm())
            }
        }
    }

    pub fn r_te(&self, mode: &Mode) -> Result<f64> {
        if mode.xi == 0.0 {
            return Ok(0.0);
        }
        let eps = self.eps_bar(mode.xi);
        let s = mode.xi_c_sq();
        match self.model {
            ReflectionModel::Bare => Ok(fresnel_te(mode, eps * s)),
            ReflectionModel::Conductivity { sigma0 } => {
                Ok(fresnel_te(mode, eps * s + 4.0 * PI * sigma0 * mode.xi / (C * C)))
            }
            ReflectionModel::Drift => Ok(fresnel_te(mode, transverse_excess(mode, &self.state, eps))),
            ReflectionModel::Nonlocal => {
                let tensor = nonlocal::EffectiveDriftTensor::new(self.state, self.spec.permittivity);
                Ok(nonlocal::closed_h_functions(&tensor, mode)?.r_te())
            }
        }
    }

    pub fn r(&self, pol: Polarization, mode: &Mode) -> Result<f64> {
        match pol {
            Polarization::Tm => self.r_tm(mode),
            Polarization::Te => self.r_te(mode),
        }
    }
}

/// TM amplitude of `spec` at temperature `t` under `model`.
pub fn r_tm(model: ReflectionModel, mode: &Mode, spec: &MaterialSpec, t: f64) -> Result<f64> {
    Medium::new(spec.clone(), model, t)?.r_tm(mode)
}

/// TE amplitude of `spec` at temperature `t` under `model`.
pub fn r_te(model: ReflectionModel, mode: &Mode, spec: &MaterialSpec, t: f64) -> Result<f64> {
    Medium::new(spec.clone(), model, t)?.r_te(mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phys;
    use approx::assert_relative_eq;

    fn ge300() -> Medium {
        Medium::new(MaterialSpec::germanium(), ReflectionModel::Drift, 300.0).unwrap()
    }

    fn xi1() -> f64 {
        phys::matsubara_xi(1, 300.0).unwrap()
    }

    #[test]
    fn mode_validation() {
        assert!(Mode::new(0.0, 1.0).is_ok());
        assert!(Mode::new(-1.0, 1.0).is_err());
        assert!(Mode::new(1.0, 0.0).is_err());
        let m = Mode::new(3.0 * C, 4.0).unwrap();
        assert_relative_eq!(m.gamma0(), 5.0, max_relative = 1e-15);
    }

    #[test]
    fn eta_l_static_and_without_carriers() {
        let m = ge300();
        let mode = Mode::new(0.0, 1e4).unwrap();
        let eps0 = m.eps_bar(0.0);
        assert_relative_eq!(
            eta_l(&mode, &m.state, eps0),
            (1e8 + m.state.kappa * m.state.kappa).sqrt(),
            max_relative = 1e-15
        );
        let empty = m.state.with_carrier_density(&m.spec, 0.0);
        let mode = Mode::new(xi1(), 1e4).unwrap();
        let eps = m.eps_bar(mode.xi);
        let expect = (1e8 + mode.xi * (1.0 + mode.xi * empty.tau) / (empty.v_t * empty.v_t * empty.tau)).sqrt();
        assert_relative_eq!(eta_l(&mode, &empty, eps), expect, max_relative = 1e-14);
    }

    #[test]
    fn eta_t_limits() {
        let m = ge300();
        let mode = Mode::new(0.0, 2.5e3).unwrap();
        assert_eq!(eta_t(&mode, &m.state, 16.2), 2.5e3);
        let empty = m.state.with_carrier_density(&m.spec, 0.0);
        let mode = Mode::new(xi1(), 2.5e3).unwrap();
        let eps = m.eps_bar(mode.xi);
        assert_relative_eq!(
            eta_t(&mode, &empty, eps),
            (2.5e3f64.powi(2) + eps * mode.xi_c_sq()).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn chi_forms_agree_and_reduce() {
        let m = ge300();
        for xi in [1e-2 * xi1(), xi1(), 1e2 * xi1()] {
            for k in [1e2, 1e4, 1e6] {
                let mode = Mode::new(xi, k).unwrap();
                let eps = m.eps_bar(xi);
                let dq = drift_quantities(&mode, &m.state, eps).unwrap();
                let direct = chi(&mode, dq.eta_l, dq.eta_t, eps).unwrap();
                assert_relative_eq!(direct, dq.chi, max_relative = 1e-7);
            }
        }
        let empty = m.state.with_carrier_density(&m.spec, 0.0);
        let mode = Mode::new(xi1(), 1e4).unwrap();
        let eps = m.eps_bar(mode.xi);
        let dq = drift_quantities(&mode, &empty, eps).unwrap();
        assert_relative_eq!(dq.chi, dq.eta_t, max_relative = 1e-12);
        let direct = chi(&mode, dq.eta_l, dq.eta_t, eps).unwrap();
        assert_relative_eq!(direct, dq.eta_t, max_relative = 1e-12);
    }

    #[test]
    fn chi_small_xi_limit() {
        let m = ge300();
        let k: f64 = 1e4;
        let q = k.hypot(m.state.kappa);
        let mode = Mode::new(1e-14 * xi1(), k).unwrap();
        let dq = drift_quantities(&mode, &m.state, m.eps_bar(mode.xi)).unwrap();
        assert_relative_eq!(dq.chi, k * k / q, max_relative = 1e-8);
    }

    #[test]
    fn chi_rejects_degenerate_denominator() {
        let mode = Mode::new(1.0, 10.0).unwrap();
        assert!(matches!(chi(&mode, 20.0, 10.0, 2.0), Err(Error::Evaluation { .. })));
    }

    #[test]
    fn static_drift_amplitude_at_k_equal_kappa() {
        let m = ge300();
        let mode = Mode::new(0.0, m.state.kappa).unwrap();
        let eps0 = 16.2f64;
        let expect = (eps0 * 2f64.sqrt() - 1.0) / (eps0 * 2f64.sqrt() + 1.0);
        assert_relative_eq!(m.r_tm(&mode).unwrap(), expect, max_relative = 1e-14);
        assert_eq!(m.r_te(&mode).unwrap(), 0.0);
    }

    #[test]
    fn te_vanishes_statically_for_all_models() {
        let spec = MaterialSpec::germanium();
        let models = [
            ReflectionModel::Bare,
            ReflectionModel::Conductivity { sigma0: 2.09e10 },
            ReflectionModel::Drift,
            ReflectionModel::Nonlocal,
        ];
        for model in models {
            for k in [1e2, 1e4, 1e6] {
                let mode = Mode::new(0.0, k).unwrap();
                assert_eq!(r_te(model, &mode, &spec, 300.0).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn conductivity_static_is_perfect_reflector() {
        let spec = MaterialSpec::silicon();
        let mode = Mode::new(0.0, 3e3).unwrap();
        let r = r_tm(ReflectionModel::Conductivity { sigma0: 3.9e6 }, &mode, &spec, 300.0).unwrap();
        assert_eq!(r, 1.0);
        let r0 = r_tm(ReflectionModel::Conductivity { sigma0: 0.0 }, &mode, &spec, 300.0).unwrap();
        let rb = r_tm(ReflectionModel::Bare, &mode, &spec, 300.0).unwrap();
        assert_eq!(r0, rb);
    }

    #[test]
    fn vacuum_like_medium_does_not_reflect() {
        let ge = MaterialSpec::germanium();
        let state = materials::material_state(&ge, 300.0).unwrap();
        let mut spec = ge.clone();
        spec.permittivity = materials::SellmeierPermittivity {
            eps0: 1.0,
            eps_inf: 1.0,
            omega0: 1e15,
        };
        let m = Medium::with_state(spec, state, ReflectionModel::Bare).unwrap();
        for xi in [0.0, 1e13, 1e15] {
            let mode = Mode::new(xi, 1e4).unwrap();
            assert_eq!(m.r_tm(&mode).unwrap(), 0.0);
            assert_eq!(m.r_te(&mode).unwrap(), 0.0);
        }
    }

    #[test]
    fn drift_te_is_fresnel_with_ac_conductivity() {
        let m = ge300();
        let mode = Mode::new(xi1(), 1e4).unwrap();
        let eps = m.eps_bar(mode.xi);
        let sigma = m.state.sigma0 / (1.0 + mode.xi * m.state.tau);
        let eps_tot = eps + 4.0 * PI * sigma / mode.xi;
        let g0 = mode.gamma0();
        let eta = (mode.k * mode.k + eps_tot * mode.xi_c_sq()).sqrt();
        let expect = (g0 - eta) / (g0 + eta);
        let r = m.r_te(&mode).unwrap();
        assert!(r < 0.0);
        assert_relative_eq!(r, expect, max_relative = 1e-12);
    }

    #[test]
    fn large_screening_makes_static_tm_perfect() {
        let kappa = 1e4;
        let mut prev = 1.0;
        for k in [1e-2, 1e-1, 1.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6] {
            let r = drift_static_tm(k, kappa, 16.2);
            assert!(r < prev);
            prev = r;
        }
        assert!(1.0 - drift_static_tm(1e-3, kappa, 16.2) < 1e-7);
    }
}
