//! Reflection from a spatially dispersive (uniaxial) medium via surface
//! response H-functions, and the permittivity tensor that reproduces the
//! drift amplitudes.
//!
//! On the imaginary axis, with `s = (xi/c)^2`, `q^2 = k^2 + q_z^2` and the
//! tilde meaning "minus the same integral with eps = 1":
//!
//! ```text
//! h_a = 2k      int dq_z/2pi  1 / (q^2 eps_par)
//! h_b = 2 g0    int dq_z/2pi  1 / (q^2 + eps_perp s)
//! h_c = 2 k g0 (k + g0) int dq_z/2pi 1 / (q^2 (q^2 + eps_perp s))
//!
//! G     = 1 + (k/g0) h~_a + (s/g0^2) h~_b + k (k - g0)/g0^2 h~_c
//! H_TM  = 1 / G,    H_TE = 1 + h~_b,    r = (H - 1) / (H + 1)
//! ```
//!
//! The `h_c` prefactor `2 (w/c)^2 k g0 / (k - g0)` has been rewritten with
//! `-s / (k - g0) = k + g0`, which removes the apparent singularity at
//! small `xi`. `G` is the surface impedance the integrals produce directly;
//! its reciprocal is the H-function whose `(H - 1)/(H + 1)` carries the same
//! sign convention as the Fresnel TM amplitude used elsewhere in the crate.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{domain, Error, Result};
use crate::materials::{MaterialState, SellmeierPermittivity};
use crate::phys::C;
use crate::quad::{self, QuadSettings};
use crate::reflection::{self, Mode};

/// Uniaxial permittivity `diag(eps_perp, eps_perp, eps_par)` on the imaginary
/// axis, possibly depending on the in-plane (`k`) and normal (`q_z`)
/// wavevector components.
pub trait PermittivityTensor: Sync {
    fn eps_perp(&self, k: f64, qz: f64, xi: f64) -> f64;
    fn eps_par(&self, k: f64, qz: f64, xi: f64) -> f64;
    /// Whether either component varies with `q_z`.
    fn depends_on_qz(&self) -> bool;
}

/// eps = 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct Vacuum;

impl PermittivityTensor for Vacuum {
    fn eps_perp(&self, _: f64, _: f64, _: f64) -> f64 {
        1.0
    }
    fn eps_par(&self, _: f64, _: f64, _: f64) -> f64 {
        1.0
    }
    fn depends_on_qz(&self) -> bool {
        false
    }
}

/// Isotropic local medium described by its bare permittivity.
#[derive(Debug, Clone, Copy)]
pub struct LocalTensor(pub SellmeierPermittivity);

impl PermittivityTensor for LocalTensor {
    fn eps_perp(&self, _: f64, _: f64, xi: f64) -> f64 {
        self.0.at(xi)
    }
    fn eps_par(&self, _: f64, _: f64, xi: f64) -> f64 {
        self.0.at(xi)
    }
    fn depends_on_qz(&self) -> bool {
        false
    }
}

/// Constant components, independent of wavevector and frequency.
#[derive(Debug, Clone, Copy)]
pub struct UniformTensor {
    pub perp: f64,
    pub par: f64,
}

impl PermittivityTensor for UniformTensor {
    fn eps_perp(&self, _: f64, _: f64, _: f64) -> f64 {
        self.perp
    }
    fn eps_par(&self, _: f64, _: f64, _: f64) -> f64 {
        self.par
    }
    fn depends_on_qz(&self) -> bool {
        false
    }
}

/// Drift medium: transverse Drude response plus the diffusive longitudinal
/// response `eps_bar [1 + kappa'^2 / (q^2 + xi (1 + xi tau) / D)]`, which
/// depends on the full wavevector `q`.
#[derive(Debug, Clone, Copy)]
pub struct DriftTensor {
    pub state: MaterialState,
    pub eps: SellmeierPermittivity,
}

impl DriftTensor {
    pub fn new(state: MaterialState, eps: SellmeierPermittivity) -> Self {
        Self { state, eps }
    }
}

impl PermittivityTensor for DriftTensor {
    fn eps_perp(&self, _: f64, _: f64, xi: f64) -> f64 {
        perp_unchecked(xi, &self.state, self.eps.at(xi))
    }
    fn eps_par(&self, k: f64, qz: f64, xi: f64) -> f64 {
        par_unchecked(k.hypot(qz), xi, &self.state, self.eps.at(xi))
    }
    fn depends_on_qz(&self) -> bool {
        true
    }
}

/// Drift medium with the longitudinal component folded into a
/// `q_z`-independent effective value that yields the same `h_a`.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveDriftTensor {
    pub state: MaterialState,
    pub eps: SellmeierPermittivity,
}

impl EffectiveDriftTensor {
    pub fn new(state: MaterialState, eps: SellmeierPermittivity) -> Self {
        Self { state, eps }
    }
}

impl PermittivityTensor for EffectiveDriftTensor {
    fn eps_perp(&self, _: f64, _: f64, xi: f64) -> f64 {
        perp_unchecked(xi, &self.state, self.eps.at(xi))
    }
    fn eps_par(&self, k: f64, _: f64, xi: f64) -> f64 {
        effective_par_unchecked(k, xi, &self.state, self.eps.at(xi))
    }
    fn depends_on_qz(&self) -> bool {
        false
    }
}

#[inline]
fn perp_unchecked(xi: f64, state: &MaterialState, eps_bar: f64) -> f64 {
    eps_bar + 4.0 * PI * state.sigma0 / (xi * (1.0 + xi * state.tau))
}

#[inline]
fn diffusive_sq(xi: f64, state: &MaterialState) -> f64 {
    xi * (1.0 + xi * state.tau) / state.diffusion
}

#[inline]
fn par_unchecked(q: f64, xi: f64, state: &MaterialState, eps_bar: f64) -> f64 {
    eps_bar * (1.0 + state.screening_sq(eps_bar) / (q * q + diffusive_sq(xi, state)))
}

fn effective_par_unchecked(k: f64, xi: f64, state: &MaterialState, eps_bar: f64) -> f64 {
    // 1/eps_par = [beta^2 + kappa'^2 k / eta_L] / [eps_bar (beta^2 + kappa'^2)]
    let beta2 = diffusive_sq(xi, state);
    let kappa2 = state.screening_sq(eps_bar);
    let eta_l = (k * k + kappa2 + beta2).sqrt();
    eps_bar * (beta2 + kappa2) / (beta2 + kappa2 * k / eta_l)
}

fn require_positive_xi(what: &'static str, xi: f64) -> Result<()> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(domain(what, format!("xi = {xi} must be positive; use the static response at xi = 0")));
    }
    Ok(())
}

/// Transverse permittivity `eps_bar [1 + omega_c / (xi (1 + xi tau))]`.
pub fn eps_perp_drift(k: f64, xi: f64, state: &MaterialState, eps_bar: f64) -> Result<f64> {
    let _ = k;
    require_positive_xi("eps_perp_drift", xi)?;
    Ok(perp_unchecked(xi, state, eps_bar))
}

/// Longitudinal permittivity of the drift medium at total wavevector `q`.
/// Reduces to `eps0 [1 + 1/(q R_D)^2]` as `xi -> 0`.
pub fn eps_par_drift(q: f64, xi: f64, state: &MaterialState, eps_bar: f64) -> Result<f64> {
    require_positive_xi("eps_par_drift", xi)?;
    if !(q > 0.0) {
        return Err(domain("eps_par_drift", format!("q = {q} must be positive")));
    }
    Ok(par_unchecked(q, xi, state, eps_bar))
}

/// `q_z`-independent longitudinal permittivity equivalent to [`eps_par_drift`]
/// inside `h_a`, in closed form.
pub fn eps_par_effective(mode: &Mode, state: &MaterialState, eps_bar: f64) -> Result<f64> {
    require_positive_xi("eps_par_effective", mode.xi)?;
    Ok(effective_par_unchecked(mode.k, mode.xi, state, eps_bar))
}

/// Longitudinal permittivity obtained by inverting the TM H-function:
/// `eps_par = (k/g0) / [chi/(eps_bar g0) - 1 + k/g0 - b - c]` with `b`, `c`
/// the transverse terms of `G`.
pub fn eps_par_from_tm(mode: &Mode, state: &MaterialState, eps_bar: f64) -> Result<f64> {
    require_positive_xi("eps_par_from_tm", mode.xi)?;
    let dq = reflection::drift_quantities(mode, state, eps_bar)?;
    let k = mode.k;
    let g0 = mode.gamma0();
    let (b, c) = transverse_terms(mode, dq.eta_t, dq.transverse_excess);
    let bracket = dq.chi / (eps_bar * g0) - 1.0 + k / g0 - b - c;
    if bracket == 0.0 || !bracket.is_finite() {
        return Err(Error::Evaluation {
            k,
            xi: mode.xi,
            detail: "bracket in longitudinal permittivity vanishes".into(),
        });
    }
    Ok(k / g0 / bracket)
}

/// The `h_b` and `h_c` contributions to `G`, closed form, for a `q_z`
/// independent transverse component with `eta^2 = k^2 + excess`.
fn transverse_terms(mode: &Mode, eta: f64, excess: f64) -> (f64, f64) {
    let k = mode.k;
    let s = mode.xi_c_sq();
    let g0 = mode.gamma0();
    // g0 - eta without cancellation
    let g0_minus_eta = (s - excess) / (g0 + eta);
    let hb = g0_minus_eta / eta;
    // 1/(eta (k + eta)) - 1/(g0 (k + g0))
    let diff = g0_minus_eta * (k + g0 + eta) / (eta * g0 * (k + eta) * (k + g0));
    let hc = g0 * (k + g0) * diff;
    (s / (g0 * g0) * hb, -k * s * hc / (g0 * g0 * (k + g0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Quadrature,
}

/// Subtracted h-integrals at one mode and the H-functions built from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HFunctions {
    pub h_a: f64,
    pub h_b: f64,
    pub h_c: f64,
    /// `k (k - g0) / g0^2 * h_c`, finite for all xi.
    pub c_term: f64,
    pub gamma0: f64,
    pub k: f64,
    pub xi: f64,
    /// Summed quadrature error estimate; zero for closed forms.
    pub quad_error: f64,
}

impl HFunctions {
    /// `G - 1`, the TM surface impedance minus its vacuum value.
    pub fn tm_excess(&self) -> f64 {
        let s = (self.xi / C).powi(2);
        self.k / self.gamma0 * self.h_a + s / (self.gamma0 * self.gamma0) * self.h_b + self.c_term
    }

    pub fn h_tm(&self) -> f64 {
        1.0 / (1.0 + self.tm_excess())
    }

    pub fn h_te(&self) -> f64 {
        1.0 + self.h_b
    }

    /// `(H_TM - 1)/(H_TM + 1) = -(G - 1)/(G + 1)`.
    pub fn r_tm(&self) -> f64 {
        let e = self.tm_excess();
        -e / (2.0 + e)
    }

    pub fn r_te(&self) -> f64 {
        self.h_b / (2.0 + self.h_b)
    }
}

/// Drift response at `xi = 0`: `G = k / (eps0 q)`, `H_TE = 1`.
pub fn static_response(k: f64, state: &MaterialState) -> HFunctions {
    let q = k.hypot(state.kappa);
    HFunctions {
        h_a: k / (state.eps0 * q) - 1.0,
        h_b: 0.0,
        h_c: 0.0,
        c_term: 0.0,
        gamma0: k,
        k,
        xi: 0.0,
        quad_error: 0.0,
    }
}

/// Evaluates the h-integrals for `tensor` at `mode` (xi > 0).
pub fn h_integrals<T: PermittivityTensor + ?Sized>(tensor: &T, mode: &Mode, method: Method) -> Result<HFunctions> {
    match method {
        Method::Closed => closed_h_functions(tensor, mode),
        Method::Quadrature => quadrature_h_functions(tensor, mode, QuadSettings::relative(1e-12)),
    }
}

/// Closed forms, valid when neither component depends on `q_z`.
pub fn closed_h_functions<T: PermittivityTensor + ?Sized>(tensor: &T, mode: &Mode) -> Result<HFunctions> {
    require_positive_xi("h_integrals", mode.xi)?;
    if tensor.depends_on_qz() {
        return Err(domain("h_integrals", "closed forms need q_z-independent permittivities; use quadrature"));
    }
    let k = mode.k;
    let xi = mode.xi;
    let s = mode.xi_c_sq();
    let g0 = mode.gamma0();
    let perp = tensor.eps_perp(k, 0.0, xi);
    let par = tensor.eps_par(k, 0.0, xi);
    let excess = perp * s;
    let eta = (k * k + excess).sqrt();
    let g0_minus_eta = (s - excess) / (g0 + eta);
    let diff = g0_minus_eta * (k + g0 + eta) / (eta * g0 * (k + eta) * (k + g0));
    let h_c = g0 * (k + g0) * diff;
    Ok(HFunctions {
        h_a: 1.0 / par - 1.0,
        h_b: g0_minus_eta / eta,
        h_c,
        c_term: -k * s * h_c / (g0 * g0 * (k + g0)),
        gamma0: g0,
        k,
        xi,
        quad_error: 0.0,
    })
}

/// Integrates `f` over `q_z in [0, inf)`. The half line is cut at
/// `k * 10^j` (j = -2..=8) and the last piece mapped by `q_z = Q tan(theta)`.
fn half_line_integral<F: Fn(f64) -> f64>(f: F, k: f64, settings: QuadSettings) -> Result<quad::QuadResult> {
    let mut cuts = vec![0.0];
    cuts.extend((-2..=8).map(|j| k * 10f64.powi(j)));
    let n = cuts.len() - 1;
    let q_max = cuts[n];
    let mapped = |t: f64| {
        let j = (t.floor() as usize).min(n);
        if j < n {
            let w = cuts[j + 1] - cuts[j];
            f(cuts[j] + (t - j as f64) * w) * w
        } else {
            let theta = FRAC_PI_4 * (1.0 + (t - n as f64));
            let sec = 1.0 / theta.cos();
            f(q_max * theta.tan()) * q_max * sec * sec * FRAC_PI_4
        }
    };
    let points: Vec<f64> = (0..=n + 1).map(|j| j as f64).collect();
    quad::integrate(mapped, &points, settings)
}

/// Generic path: the three subtracted integrals by adaptive quadrature.
pub fn quadrature_h_functions<T: PermittivityTensor + ?Sized>(
    tensor: &T,
    mode: &Mode,
    settings: QuadSettings,
) -> Result<HFunctions> {
    require_positive_xi("h_integrals", mode.xi)?;
    let k = mode.k;
    let xi = mode.xi;
    let s = mode.xi_c_sq();
    let g0 = mode.gamma0();
    let q2 = |qz: f64| k * k + qz * qz;

    let ia = half_line_integral(|qz| (1.0 / tensor.eps_par(k, qz, xi) - 1.0) / q2(qz), k, settings)?;
    // 1/(q^2 + eps s) - 1/(q^2 + s)
    let transverse = |qz: f64| {
        let perp = tensor.eps_perp(k, qz, xi);
        let q = q2(qz);
        s * (1.0 - perp) / ((q + perp * s) * (q + s))
    };
    let ib = half_line_integral(transverse, k, settings)?;
    let ic = half_line_integral(|qz| transverse(qz) / q2(qz), k, settings)?;

    let h_a = 2.0 * k / PI * ia.value;
    let h_b = 2.0 * g0 / PI * ib.value;
    let pre_c = 2.0 * k * g0 * (k + g0) / PI;
    let h_c = pre_c * ic.value;
    Ok(HFunctions {
        h_a,
        h_b,
        h_c,
        c_term: -k * s * h_c / (g0 * g0 * (k + g0)),
        gamma0: g0,
        k,
        xi,
        quad_error: 2.0 * k / PI * ia.error + 2.0 * g0 / PI * ib.error + pre_c * ic.error,
    })
}

pub fn h_tm(hf: &HFunctions) -> f64 {
    hf.h_tm()
}

pub fn h_te(hf: &HFunctions) -> f64 {
    hf.h_te()
}

/// `(H - 1) / (H + 1)`; an infinite `H` is a perfect reflector.
///
/// For `H` close to one this loses digits to the subtraction; the
/// [`HFunctions`] methods apply the same map to `H - 1` directly.
pub fn r_from_h(h: f64) -> Result<f64> {
    if h == -1.0 {
        return Err(Error::Pole);
    }
    if h.is_infinite() && h > 0.0 {
        return Ok(1.0);
    }
    Ok((h - 1.0) / (h + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{material_state, MaterialSpec};
    use crate::phys;
    use approx::assert_relative_eq;

    fn ge() -> (MaterialSpec, MaterialState) {
        let spec = MaterialSpec::germanium();
        let st = material_state(&spec, 300.0).unwrap();
        (spec, st)
    }

    fn xi1() -> f64 {
        phys::matsubara_xi(1, 300.0).unwrap()
    }

    #[test]
    fn vacuum_gives_unit_h_functions() {
        let mode = Mode::new(xi1(), 3e3).unwrap();
        for method in [Method::Closed, Method::Quadrature] {
            let hf = h_integrals(&Vacuum, &mode, method).unwrap();
            assert_eq!((hf.h_a, hf.h_b, hf.h_c), (0.0, 0.0, 0.0));
            assert_eq!(hf.h_tm(), 1.0);
            assert_eq!(hf.h_te(), 1.0);
            assert_eq!(hf.r_tm(), 0.0);
        }
    }

    #[test]
    fn local_tensor_recovers_fresnel() {
        let (spec, _) = ge();
        let eps = spec.permittivity.at(xi1());
        let mode = Mode::new(xi1(), 7e3).unwrap();
        let hf = h_integrals(&LocalTensor(spec.permittivity), &mode, Method::Closed).unwrap();
        let g0 = mode.gamma0();
        let eta = (mode.k * mode.k + eps * mode.xi_c_sq()).sqrt();
        assert_relative_eq!(hf.h_tm(), eps * g0 / eta, max_relative = 1e-13);
        assert_relative_eq!(hf.h_te(), g0 / eta, max_relative = 1e-13);
        assert_relative_eq!(hf.r_tm(), (eps * g0 - eta) / (eps * g0 + eta), max_relative = 1e-13);
    }

    #[test]
    fn closed_form_rejects_qz_dependent_tensor() {
        let (spec, st) = ge();
        let mode = Mode::new(xi1(), 1e4).unwrap();
        assert!(h_integrals(&DriftTensor::new(st, spec.permittivity), &mode, Method::Closed).is_err());
    }

    #[test]
    fn perp_identity_with_eta_t() {
        let (spec, st) = ge();
        for xi in [1e-3 * xi1(), xi1(), 30.0 * xi1()] {
            for k in [1e2, 1e4, 1e6] {
                let mode = Mode::new(xi, k).unwrap();
                let eps = spec.permittivity.at(xi);
                let perp = eps_perp_drift(k, xi, &st, eps).unwrap();
                let eta_t = reflection::eta_t(&mode, &st, eps);
                assert_relative_eq!(k * k + perp * mode.xi_c_sq(), eta_t * eta_t, max_relative = 1e-12);
            }
        }
        let empty = st.with_carrier_density(&spec, 0.0);
        assert_eq!(eps_perp_drift(1e4, xi1(), &empty, 7.0).unwrap(), 7.0);
        assert!(eps_perp_drift(1e4, 0.0, &st, 7.0).is_err());
    }

    #[test]
    fn longitudinal_static_and_local_limits() {
        let (spec, st) = ge();
        let xi = 1e-5 * xi1();
        let eps = spec.permittivity.at(xi);
        for k in [1e5, 3e5, 1e6] {
            let expect = st.eps0 * (1.0 + 1.0 / (k * st.debye_radius).powi(2));
            assert_relative_eq!(eps_par_drift(k, xi, &st, eps).unwrap(), expect, max_relative = 1e-3);
        }
        let xi = 1e-12 * xi1();
        let eps = spec.permittivity.at(xi);
        for k in [1e2, 1e3, 1e4] {
            let expect = st.eps0 * (1.0 + 1.0 / (k * st.debye_radius).powi(2));
            assert_relative_eq!(eps_par_drift(k, xi, &st, eps).unwrap(), expect, max_relative = 1e-3);
        }
        let empty = st.with_carrier_density(&spec, 0.0);
        let eps = spec.permittivity.at(xi1());
        assert_relative_eq!(eps_par_drift(1e4, xi1(), &empty, eps).unwrap(), eps, max_relative = 1e-8);
        let mode = Mode::new(xi1(), 1e4).unwrap();
        assert_relative_eq!(eps_par_effective(&mode, &empty, eps).unwrap(), eps, max_relative = 1e-8);
        assert_relative_eq!(eps_par_from_tm(&mode, &empty, eps).unwrap(), eps, max_relative = 1e-8);
    }

    #[test]
    fn inverted_longitudinal_matches_closed_effective_form() {
        let (spec, st) = ge();
        for xi in [1e-2 * xi1(), xi1(), 1e2 * xi1()] {
            for k in [1e2, 1e3, 1e4, 1e5] {
                let mode = Mode::new(xi, k).unwrap();
                let eps = spec.permittivity.at(xi);
                let a = eps_par_from_tm(&mode, &st, eps).unwrap();
                let b = eps_par_effective(&mode, &st, eps).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn drift_tensor_identities() {
        let (spec, st) = ge();
        let tensor = EffectiveDriftTensor::new(st, spec.permittivity);
        for xi in [1e-3 * xi1(), xi1(), 1e3 * xi1()] {
            for k in [1e2, 1e4, 1e6] {
                let mode = Mode::new(xi, k).unwrap();
                let eps = spec.permittivity.at(xi);
                let dq = reflection::drift_quantities(&mode, &st, eps).unwrap();
                let hf = h_integrals(&tensor, &mode, Method::Closed).unwrap();
                assert_relative_eq!(hf.h_te(), mode.gamma0() / dq.eta_t, max_relative = 1e-12);
                assert_relative_eq!(hf.h_tm() * dq.chi / (eps * mode.gamma0()), 1.0, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_h_c_and_h_b() {
        let (spec, st) = ge();
        let tensor = EffectiveDriftTensor::new(st, spec.permittivity);
        for xi in [1e-2 * xi1(), xi1(), 1e2 * xi1()] {
            for k in [1e2, 1e4, 1e6] {
                let mode = Mode::new(xi, k).unwrap();
                let a = h_integrals(&tensor, &mode, Method::Closed).unwrap();
                let b = h_integrals(&tensor, &mode, Method::Quadrature).unwrap();
                assert_relative_eq!(a.h_a, b.h_a, max_relative = 1e-8);
                assert_relative_eq!(a.h_b, b.h_b, max_relative = 1e-8);
                assert_relative_eq!(a.h_c, b.h_c, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn q_dependent_longitudinal_response_reproduces_drift_amplitudes() {
        let (spec, st) = ge();
        let full = DriftTensor::new(st, spec.permittivity);
        let medium = reflection::Medium::with_state(spec.clone(), st, reflection::ReflectionModel::Drift).unwrap();
        for xi in [1e-3 * xi1(), xi1(), 1e3 * xi1()] {
            for k in [1e2, 1e4, 1e6] {
                let mode = Mode::new(xi, k).unwrap();
                let hf = h_integrals(&full, &mode, Method::Quadrature).unwrap();
                assert_relative_eq!(hf.r_tm(), medium.r_tm(&mode).unwrap(), max_relative = 1e-8);
                assert_relative_eq!(hf.r_te(), medium.r_te(&mode).unwrap(), max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn h_c_has_no_small_frequency_singularity() {
        let t = UniformTensor { perp: 12.0, par: 12.0 };
        let mode = Mode::new(1e-6, 1e4).unwrap();
        let hf = h_integrals(&t, &mode, Method::Closed).unwrap();
        assert!(hf.h_c.is_finite());
        assert!(hf.c_term.abs() < 1e-20);
    }

    #[test]
    fn r_from_h_limits() {
        assert_eq!(r_from_h(1.0).unwrap(), 0.0);
        assert_eq!(r_from_h(f64::INFINITY).unwrap(), 1.0);
        assert!(1.0 - r_from_h(1e12).unwrap() < 1e-11);
        assert!(matches!(r_from_h(-1.0), Err(Error::Pole)));
    }

    #[test]
    fn static_response_matches_drift_static_amplitude() {
        let (_, st) = ge();
        for k in [1e2, 1e4, 1e6] {
            let r = static_response(k, &st).r_tm();
            assert_relative_eq!(r, reflection::drift_static_tm(k, st.kappa, st.eps0), max_relative = 1e-13);
        }
    }
}
