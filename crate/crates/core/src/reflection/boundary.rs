//! Numerical boundary-matching oracle for the drift amplitudes.
//!
//! Inside the medium the TM field is a superposition of a transverse branch
//! (decay constant eta_T, divergence free) and a longitudinal branch (decay
//! constant eta_L, curl free). Matching E_x, H_y and eps_bar E_z across the
//! interface, together with the bulk relation between the transverse E_x and
//! H_y amplitudes, gives a 4x4 real system. TE matches E_y, H_x and
//! eps_bar E_z with the longitudinal branch left free, which must come out
//! with zero amplitude.
//!
//! Conventions: the vacuum field is `e^{gamma0 z} + r e^{-gamma0 z}` in H_y
//! (TM) or E_y (TE), electric amplitudes are scaled by xi/c, and the
//! longitudinal potential carries a factor i so the system is real.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use super::Mode;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySolution {
    pub r_tm: f64,
    pub r_te: f64,
    /// Transmitted H_y amplitude of the transverse TM branch.
    pub tm_transverse: f64,
    /// Longitudinal potential amplitude excited by TM incidence.
    pub tm_longitudinal: f64,
    /// Transmitted E_y amplitude for TE incidence.
    pub te_transverse: f64,
    /// Longitudinal amplitude under TE incidence; zero up to round-off.
    pub te_longitudinal: f64,
}

fn equilibrate<const N: usize>(rows: &mut [[f64; N]], rhs: &mut [f64]) {
    for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        let scale = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale > 0.0 {
            row.iter_mut().for_each(|v| *v /= scale);
            *b /= scale;
        }
    }
}

/// Smallest `(eta_T - k) / k` the oracle accepts.
pub const MIN_TRANSVERSE_GAP: f64 = 1e-6;

/// Solves the interface matching problem numerically for `xi > 0`.
pub fn r_oracle_bc(mode: &Mode, eta_l: f64, eta_t: f64, eps_bar: f64) -> Result<BoundarySolution> {
    let k = mode.k;
    let s = mode.xi_c_sq();
    let singular = || Error::Oracle { k, xi: mode.xi };
    if !(s > 0.0) {
        return Err(singular());
    }
    // eta_T^2 - k^2 is recovered from eta_T; below this relative gap the
    // recovered value is dominated by rounding
    if !((eta_t - k) / k >= MIN_TRANSVERSE_GAP) {
        return Err(singular());
    }
    let g0 = mode.gamma0();
    // Transverse permittivity including conduction, from eta_T^2 = k^2 + eps s.
    let eps_t = (eta_t - k) * (eta_t + k) / s;

    // Unknowns: [r, h_t, a_t, p].
    let mut rows = [
        // E_x: -g0 (1 - r) = a_t + k p
        [g0, 0.0, -1.0, -k],
        // H_y: 1 + r = h_t
        [1.0, -1.0, 0.0, 0.0],
        // eps_bar E_z: k (1 + r) = eps_bar [(k / eps_t) h_t - eta_L p]
        [k, -eps_bar * k / eps_t, 0.0, eps_bar * eta_l],
        // transverse bulk relation: a_t = -(eta_T / eps_t) h_t
        [0.0, eta_t / eps_t, 1.0, 0.0],
    ];
    let mut rhs = [g0, -1.0, -k, 0.0];
    equilibrate(&mut rows, &mut rhs);
    let a = Matrix4::from_fn(|i, j| rows[i][j]);
    let tm = a
        .lu()
        .solve(&Vector4::from_column_slice(&rhs))
        .ok_or_else(singular)?;

    // Unknowns: [r, t, p].
    let mut rows = [
        // E_y: 1 + r = t
        [1.0, -1.0, 0.0],
        // H_x: g0 (1 - r) = eta_T t
        [g0, eta_t, 0.0],
        // eps_bar E_z: 0 = eps_bar eta_L p
        [0.0, 0.0, eps_bar * eta_l],
    ];
    let mut rhs = [-1.0, g0, 0.0];
    equilibrate(&mut rows, &mut rhs);
    let a = Matrix3::from_fn(|i, j| rows[i][j]);
    let te = a
        .lu()
        .solve(&Vector3::from_column_slice(&rhs))
        .ok_or_else(singular)?;

    let out = BoundarySolution {
        r_tm: tm[0],
        r_te: te[0],
        tm_transverse: tm[1],
        tm_longitudinal: tm[3],
        te_transverse: te[1],
        te_longitudinal: te[2],
    };
    if [out.r_tm, out.r_te].iter().all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(singular())
    }
}
