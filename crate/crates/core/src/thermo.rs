//! Entropy `S = -d(E/A)/dT` by Richardson-extrapolated central differences,
//! small-frequency probes of the mode function `g`, and temperature sweeps
//! for the low-temperature trend of `S`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::lifshitz::{self, Geometry, Settings};
use crate::materials::VALIDITY_T_MAX;
use crate::phys;
use crate::reflection::{Mode, Polarization, ReflectionModel};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyPoint {
    /// K.
    pub t: f64,
    /// erg / (cm^2 K).
    pub s: f64,
    /// Largest temperature step used, K.
    pub fd_step: f64,
    /// `|S(h/2) - S(h)|`, erg / (cm^2 K).
    pub richardson_error: f64,
    pub warnings: Vec<String>,
}

/// `T/20`, but not below 0.25 K.
pub fn default_fd_step(t: f64) -> f64 {
    (t / 20.0).max(0.25)
}

fn central_difference<F: Fn(f64) -> Result<f64>>(f: &F, t: f64, h: f64) -> Result<f64> {
    Ok(-(f(t + h)? - f(t - h)?) / (2.0 * h))
}

/// `-dF/dT` of an arbitrary temperature-dependent free energy `f`.
pub fn entropy_of<F: Fn(f64) -> Result<f64>>(f: F, t: f64, fd_step: f64) -> Result<EntropyPoint> {
    if !(fd_step > 0.0) || !(t - 2.0 * fd_step > 0.0) {
        return Err(domain(
            "entropy",
            format!("step {fd_step} K too large for T = {t} K (need T - 2 h > 0)"),
        ));
    }
    let coarse = central_difference(&f, t, fd_step)?;
    let fine = central_difference(&f, t, fd_step / 2.0)?;
    let s = (4.0 * fine - coarse) / 3.0;
    let richardson_error = (fine - coarse).abs();
    let mut warnings = Vec::new();
    if richardson_error > s.abs() {
        warnings.push(format!(
            "entropy at T = {t} K: step pair disagrees by {richardson_error:e}, more than |S| = {:e}",
            s.abs()
        ));
    }
    Ok(EntropyPoint {
        t,
        s,
        fd_step,
        richardson_error,
        warnings,
    })
}

/// Entropy per area of `geom`, including the temperature dependence of the
/// material state.
pub fn entropy(geom: &Geometry, t: f64, fd_step: Option<f64>, settings: &Settings) -> Result<EntropyPoint> {
    let h = fd_step.unwrap_or_else(|| default_fd_step(t));
    entropy_of(|tt| Ok(lifshitz::free_energy_per_area(geom, tt, settings)?.value), t, h)
}

/// Entropy carried by the screening part of the static TM term: the
/// temperature derivative of `E_0(model) - E_0(bare)`. Vanishes as carriers
/// freeze out.
pub fn zero_frequency_screening_entropy(
    geom: &Geometry,
    t: f64,
    fd_step: Option<f64>,
    settings: &Settings,
) -> Result<EntropyPoint> {
    let h = fd_step.unwrap_or_else(|| default_fd_step(t));
    let bare = geom.with_model(ReflectionModel::Bare);
    let static_term = |g: &Geometry, tt: f64| -> Result<f64> {
        let (a, b) = g.media(tt)?;
        let (term, _) =
            lifshitz::matsubara_term(&a, &b, 0, g.distance, tt, lifshitz::Quantity::FreeEnergy, settings)?;
        Ok(term.tm)
    };
    entropy_of(|tt| Ok(static_term(geom, tt)? - static_term(&bare, tt)?), t, h)
}

/// Small-frequency behaviour of `g^p(i xi, k)` at one temperature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GProbe {
    pub pol: Polarization,
    /// 1/cm.
    pub k: f64,
    /// `2 pi k_B T / hbar`, rad/s.
    pub theta: f64,
    /// `g` evaluated with the static amplitudes.
    pub g0: f64,
    /// `g(0+)` extrapolated from the stencil.
    pub g0_limit: f64,
    /// `dg/dxi` at `0+`, s.
    pub g_xi: f64,
    /// `d^2 g / dxi^2` at `0+`, s^2.
    pub g_xixi: f64,
    /// Change of `g_xi` when the stencil spacing doubles.
    pub g_xi_error: f64,
    pub g_xixi_error: f64,
}

/// One-sided estimates at `0+` from samples at `h, 2h, 3h`:
/// value, first and second derivative.
fn one_sided(g: [f64; 3], h: f64) -> (f64, f64, f64) {
    let [g1, g2, g3] = g;
    (
        3.0 * g1 - 3.0 * g2 + g3,
        (-5.0 * g1 + 8.0 * g2 - 3.0 * g3) / (2.0 * h),
        (g1 - 2.0 * g2 + g3) / (h * h),
    )
}

/// Relative stencil spacing: samples at `{1, 2, 3} * 1e-4 * theta`.
pub const PROBE_SPACING: f64 = 1e-4;

pub fn g_probe(pol: Polarization, k: f64, geom: &Geometry, t: f64) -> Result<GProbe> {
    let theta = phys::matsubara_xi(1, t)?;
    let (a, b) = geom.media(t)?;
    let d = geom.distance;
    let g_at = |xi: f64| -> Result<f64> { lifshitz::g_mode_with(&a, &b, pol, &Mode::new(xi, k)?, d) };
    let sample = |h: f64| -> Result<[f64; 3]> { Ok([g_at(h)?, g_at(2.0 * h)?, g_at(3.0 * h)?]) };
    let h = PROBE_SPACING * theta;
    let (g0_limit, g_xi, g_xixi) = one_sided(sample(h)?, h);
    let (_, g_xi_2, g_xixi_2) = one_sided(sample(2.0 * h)?, 2.0 * h);
    let probe = GProbe {
        pol,
        k,
        theta,
        g0: g_at(0.0)?,
        g0_limit,
        g_xi,
        g_xixi,
        g_xi_error: (g_xi - g_xi_2).abs(),
        g_xixi_error: (g_xixi - g_xixi_2).abs(),
    };
    let finite = [probe.g0_limit, probe.g_xi, probe.g_xixi, probe.g_xi_error, probe.g_xixi_error];
    if finite.iter().any(|v| !v.is_finite()) {
        return Err(Error::Evaluation {
            k,
            xi: h,
            detail: "g-function stencil produced non-finite derivatives".into(),
        });
    }
    Ok(probe)
}

/// Result of an entropy sweep, ordered as the input temperatures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NernstSweep {
    pub points: Vec<EntropyPoint>,
    pub diagnostics: Vec<String>,
    /// `|S|` decreases with falling T among the points at or below 75 K.
    pub low_t_monotone: bool,
    /// `|S(T_min)| / |S(T_max)|`.
    pub end_ratio: f64,
    /// Every `S` has the same sign.
    pub single_sign: bool,
}

/// Upper end of the temperature window checked for monotone decay of `|S|`.
pub const LOW_T_WINDOW: f64 = 75.0;

pub fn nernst_sweep(geom: &Geometry, temperatures: &[f64], settings: &Settings) -> Result<NernstSweep> {
    if temperatures.is_empty() {
        return Err(domain("nernst_sweep", "empty temperature list"));
    }
    if let Some(t) = temperatures.iter().find(|&&t| !(t > 0.0 && t <= VALIDITY_T_MAX)) {
        return Err(domain(
            "nernst_sweep",
            format!("T = {t} K outside the validity range (0, {VALIDITY_T_MAX}] K"),
        ));
    }
    let points = temperatures
        .par_iter()
        .map(|&t| entropy(geom, t, None, settings))
        .collect::<Result<Vec<_>>>()?;

    let mut by_t: Vec<&EntropyPoint> = points.iter().collect();
    by_t.sort_by(|a, b| b.t.total_cmp(&a.t));
    let low: Vec<&EntropyPoint> = by_t.iter().copied().filter(|p| p.t <= LOW_T_WINDOW).collect();
    let low_t_monotone = low.windows(2).all(|w| w[1].s.abs() < w[0].s.abs());
    let end_ratio = by_t[by_t.len() - 1].s.abs() / by_t[0].s.abs();
    let single_sign = points.iter().all(|p| p.s >= 0.0) || points.iter().all(|p| p.s <= 0.0);

    let mut diagnostics = Vec::new();
    diagnostics.push(format!(
        "|S| {} for T <= {LOW_T_WINDOW} K",
        if low_t_monotone { "decreases monotonically" } else { "is not monotone" }
    ));
    diagnostics.push(format!("|S(T_min)| / |S(T_max)| = {end_ratio:.4e}"));
    if !single_sign {
        diagnostics.push("entropy changes sign within the sweep".into());
    }
    for p in &points {
        diagnostics.extend(p.warnings.iter().cloned());
    }
    Ok(NernstSweep {
        points,
        diagnostics,
        low_t_monotone,
        end_ratio,
        single_sign,
    })
}
