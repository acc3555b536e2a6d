//! Matsubara-summed free energy per area and pressure between two planar
//! half-spaces.
//!
//! With `u = 2 d gamma0` the in-plane integral of mode `n` becomes
//!
//! ```text
//! E_n = k_B T w_n / (8 pi d^2) * int_{u_n}^inf  u   ln(1 - x) du
//! P_n = k_B T w_n / (8 pi d^3) * int_{u_n}^inf  u^2 x / (1 - x) du
//! x   = r1 r2 exp(-u),  u_n = 2 d xi_n / c,  w_0 = 1/2, w_n = 1
//! ```
//!
//! summed over both polarizations. `P` is positive for attraction and equals
//! `dE/dd` when the amplitudes do not depend on `d`.

use std::cell::RefCell;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::materials::MaterialSpec;
use crate::phys::{self, C, K_B};
use crate::quad::{self, QuadSettings};
use crate::reflection::{Medium, Mode, Polarization, ReflectionModel};

/// Anything that yields a reflection amplitude per polarization and mode.
pub trait Response: Sync {
    fn amplitude(&self, pol: Polarization, mode: &Mode) -> Result<f64>;
}

impl Response for Medium {
    fn amplitude(&self, pol: Polarization, mode: &Mode) -> Result<f64> {
        self.r(pol, mode)
    }
}

/// Constant amplitudes at every mode. `Ideal::ZERO` is no interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ideal {
    pub tm: f64,
    pub te: f64,
}

impl Ideal {
    pub const ZERO: Ideal = Ideal { tm: 0.0, te: 0.0 };
    pub const METAL: Ideal = Ideal { tm: 1.0, te: 1.0 };
}

impl Response for Ideal {
    fn amplitude(&self, pol: Polarization, _: &Mode) -> Result<f64> {
        Ok(match pol {
            Polarization::Tm => self.tm,
            Polarization::Te => self.te,
        })
    }
}

/// Uses `zero` at `xi = 0` and `rest` at every other frequency.
pub struct ZeroFrequencySplit<'a> {
    pub zero: &'a dyn Response,
    pub rest: &'a dyn Response,
}

impl Response for ZeroFrequencySplit<'_> {
    fn amplitude(&self, pol: Polarization, mode: &Mode) -> Result<f64> {
        if mode.xi == 0.0 {
            self.zero.amplitude(pol, mode)
        } else {
            self.rest.amplitude(pol, mode)
        }
    }
}

/// One half-space: a material and the amplitude model applied to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Plate {
    pub material: MaterialSpec,
    pub model: ReflectionModel,
}

impl Plate {
    pub fn new(material: MaterialSpec, model: ReflectionModel) -> Self {
        Self { material, model }
    }

    pub fn at(&self, t: f64) -> Result<Medium> {
        Medium::new(self.material.clone(), self.model, t)
    }
}

/// Two plates a distance `distance` (cm) apart.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub distance: f64,
    pub plates: [Plate; 2],
}

impl Geometry {
    pub fn new(distance: f64, first: Plate, second: Plate) -> Result<Self> {
        if !(distance > 0.0) || !distance.is_finite() {
            return Err(domain("geometry", format!("distance {distance} cm must be positive")));
        }
        Ok(Self {
            distance,
            plates: [first, second],
        })
    }

    /// Two identical plates.
    pub fn symmetric(distance: f64, material: MaterialSpec, model: ReflectionModel) -> Result<Self> {
        let plate = Plate::new(material, model);
        Self::new(distance, plate.clone(), plate)
    }

    /// Same geometry with both plates switched to `model`.
    pub fn with_model(&self, model: ReflectionModel) -> Self {
        let mut g = self.clone();
        for p in &mut g.plates {
            p.model = model;
        }
        g
    }

    pub fn with_distance(&self, distance: f64) -> Result<Self> {
        Self::new(distance, self.plates[0].clone(), self.plates[1].clone())
    }

    pub fn media(&self, t: f64) -> Result<(Medium, Medium)> {
        Ok((self.plates[0].at(t)?, self.plates[1].at(t)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    /// Relative tolerance of each in-plane integral.
    pub tol_quad: f64,
    /// A term counts as negligible below this fraction of the running sum.
    pub tol_sum: f64,
    pub max_terms: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol_quad: 1e-10,
            tol_sum: 1e-10,
            max_terms: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    FreeEnergy,
    Pressure,
}

/// Weighted contribution of one Matsubara frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermParts {
    pub n: usize,
    pub te: f64,
    pub tm: f64,
}

impl TermParts {
    pub fn total(&self) -> f64 {
        self.te + self.tm
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummationResult {
    /// erg/cm^2 for the free energy, dyn/cm^2 for the pressure.
    pub value: f64,
    pub per_n_terms: Vec<TermParts>,
    /// Number of terms summed.
    pub n_truncated_at: usize,
    pub quadrature_error_estimate: f64,
    pub truncation_error_estimate: f64,
    pub warnings: Vec<String>,
}

impl SummationResult {
    pub fn term(&self, n: usize) -> Option<&TermParts> {
        self.per_n_terms.get(n)
    }
}

/// `1 - r1 r2 exp(-u)`, accurate when both amplitudes are close to one and
/// `u` is small.
#[inline]
fn one_minus_x(rr: f64, u: f64) -> f64 {
    (1.0 - rr) - rr * (-u).exp_m1()
}

/// `g = ln(1 - r1 r2 exp(-2 d gamma0))` for given amplitudes.
pub fn g_from_amplitudes(r1: f64, r2: f64, u: f64) -> Result<f64> {
    let rr = r1 * r2;
    let x = rr * (-u).exp();
    if x < 0.5 {
        return Ok((-x).ln_1p());
    }
    let om = one_minus_x(rr, u);
    if !(om > 0.0) {
        return Err(domain("g", format!("r1 r2 exp(-u) = {x} is not below 1")));
    }
    Ok(om.ln())
}

/// `g^p(i xi, k)` for the plates of `geom` at temperature `t`.
pub fn g_mode(pol: Polarization, mode: &Mode, geom: &Geometry, t: f64) -> Result<f64> {
    let (a, b) = geom.media(t)?;
    g_mode_with(&a, &b, pol, mode, geom.distance)
}

pub fn g_mode_with(r1: &dyn Response, r2: &dyn Response, pol: Polarization, mode: &Mode, d: f64) -> Result<f64> {
    let u = 2.0 * d * mode.gamma0();
    g_from_amplitudes(r1.amplitude(pol, mode)?, r2.amplitude(pol, mode)?, u)
}

const PANEL_EDGES: [f64; 8] = [0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];

/// Weighted contribution of frequency `n`, both polarizations.
pub fn matsubara_term(
    r1: &dyn Response,
    r2: &dyn Response,
    n: usize,
    d: f64,
    t: f64,
    quantity: Quantity,
    settings: &Settings,
) -> Result<(TermParts, f64)> {
    let xi = phys::matsubara_xi(n, t)?;
    let u_n = 2.0 * d * xi / C;
    let weight = if n == 0 { 0.5 } else { 1.0 };
    let scale = match quantity {
        Quantity::FreeEnergy => K_B * t * weight / (8.0 * PI * d * d),
        Quantity::Pressure => K_B * t * weight / (8.0 * PI * d * d * d),
    };
    let qs = QuadSettings::relative(settings.tol_quad);
    let mut parts = [0.0; 2];
    let mut qerr = 0.0;
    for (slot, pol) in [Polarization::Te, Polarization::Tm].into_iter().enumerate() {
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let integrand = |s: f64| -> f64 {
            let u = u_n + s;
            let k = (s * (s + 2.0 * u_n)).sqrt() / (2.0 * d);
            let eval = || -> Result<f64> {
                let mode = Mode::new(xi, k)?;
                let rr = r1.amplitude(pol, &mode)? * r2.amplitude(pol, &mode)?;
                if rr == 0.0 {
                    return Ok(0.0);
                }
                match quantity {
                    Quantity::FreeEnergy => Ok(u * g_from_amplitudes(rr, 1.0, u)?),
                    Quantity::Pressure => {
                        let om = one_minus_x(rr, u);
                        if !(om > 0.0) {
                            return Err(domain("pressure", format!("r1 r2 exp(-u) not below 1 at u = {u}")));
                        }
                        Ok(u * u * rr * (-u).exp() / om)
                    }
                }
            };
            match eval() {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            }
        };
        let res = quad::integrate(integrand, &PANEL_EDGES, qs);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        let res = res?;
        parts[slot] = scale * res.value;
        qerr += scale * res.error;
    }
    Ok((
        TermParts {
            n,
            te: parts[0],
            tm: parts[1],
        },
        qerr,
    ))
}

const BATCH: usize = 32;

/// Sums Matsubara terms until three successive ones each fall below
/// `tol_sum` of the running total. Terms are evaluated in parallel batches
/// and accumulated in index order, so the result does not depend on the
/// number of worker threads.
pub fn sum_responses(
    r1: &dyn Response,
    r2: &dyn Response,
    d: f64,
    t: f64,
    quantity: Quantity,
    settings: &Settings,
) -> Result<SummationResult> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(domain("lifshitz sum", format!("distance {d} cm must be positive")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain("lifshitz sum", format!("T = {t} K must be positive")));
    }
    // terms decay at least like exp(-2 d xi_n / c); refuse sums that could
    // not converge within the cap instead of grinding through it
    let decay = 2.0 * d * phys::matsubara_step(t) / C;
    let needed = (1.0 / settings.tol_sum).ln() / decay;
    if needed > settings.max_terms as f64 {
        return Err(Error::Convergence {
            terms: 0,
            partial: 0.0,
            hint: format!(
                "about {needed:.3e} terms needed, cap is {}; raise the temperature or reduce the separation",
                settings.max_terms
            ),
        });
    }
    let mut terms = Vec::new();
    let mut value = 0.0;
    let mut qerr = 0.0;
    let mut quiet = 0;
    let mut start = 0;
    while start < settings.max_terms {
        let end = (start + BATCH).min(settings.max_terms);
        let batch: Vec<Result<(TermParts, f64)>> = (start..end)
            .into_par_iter()
            .map(|n| matsubara_term(r1, r2, n, d, t, quantity, settings))
            .collect();
        for item in batch {
            let (term, e) = item?;
            value += term.total();
            qerr += e;
            terms.push(term);
            if term.total().abs() <= settings.tol_sum * value.abs() {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet == 3 {
                let truncation = geometric_tail(&terms);
                return Ok(SummationResult {
                    value,
                    n_truncated_at: terms.len(),
                    per_n_terms: terms,
                    quadrature_error_estimate: qerr,
                    truncation_error_estimate: truncation,
                    warnings: Vec::new(),
                });
            }
        }
        start = end;
    }
    Err(Error::Convergence {
        terms: terms.len(),
        partial: value,
        hint: "raise the temperature or reduce the separation".into(),
    })
}

/// Tail of a geometrically decaying series fitted to its last three terms.
fn geometric_tail(terms: &[TermParts]) -> f64 {
    let m = terms.len();
    if m < 3 {
        return 0.0;
    }
    let (a, b, c) = (terms[m - 3].total(), terms[m - 2].total(), terms[m - 1].total());
    if c == 0.0 {
        return 0.0;
    }
    let ratio = if a != 0.0 { ((c / a).abs()).sqrt() } else { (c / b).abs() };
    if ratio < 1.0 && ratio.is_finite() {
        (c * ratio / (1.0 - ratio)).abs()
    } else {
        c.abs() * terms.len() as f64
    }
}

fn sum_geometry(geom: &Geometry, t: f64, quantity: Quantity, settings: &Settings) -> Result<SummationResult> {
    let (a, b) = geom.media(t)?;
    let mut res = sum_responses(&a, &b, geom.distance, t, quantity, settings)?;
    for m in [&a, &b] {
        if m.state.out_of_range {
            res.warnings.push(format!(
                "{} at T = {t} K lies outside the fitted range of the material models",
                m.spec.name
            ));
        }
    }
    res.warnings.dedup();
    Ok(res)
}

/// Free energy per unit area, erg/cm^2.
pub fn free_energy_per_area(geom: &Geometry, t: f64, settings: &Settings) -> Result<SummationResult> {
    sum_geometry(geom, t, Quantity::FreeEnergy, settings)
}

/// Pressure, dyn/cm^2, positive for attraction.
pub fn pressure(geom: &Geometry, t: f64, settings: &Settings) -> Result<SummationResult> {
    sum_geometry(geom, t, Quantity::Pressure, settings)
}

/// Below this magnitude (erg/cm^2) a reference free energy cannot normalise.
pub const NORMALIZATION_FLOOR: f64 = 1e-30;

/// Free energy of `geom` divided by the same geometry with bare amplitudes.
pub fn ratio_to_bare(geom: &Geometry, t: f64, settings: &Settings) -> Result<f64> {
    let bare = free_energy_per_area(&geom.with_model(ReflectionModel::Bare), t, settings)?.value;
    if bare.abs() < NORMALIZATION_FLOOR {
        return Err(Error::Normalization(bare));
    }
    Ok(free_energy_per_area(geom, t, settings)?.value / bare)
}
