//! The integrand g(xi, k) = ln(1 - r^2 exp(-2 d gamma0)) on a coarse grid,
//! printed as a text heat map per polarization.

use casimir_drift::lifshitz::{self, Geometry};
use casimir_drift::materials::MaterialSpec;
use casimir_drift::phys;
use casimir_drift::reflection::{Mode, Polarization, ReflectionModel};

const SHADES: &[u8] = b" .:-=+*#%@";

fn main() -> casimir_drift::Result<()> {
    let t = 300.0;
    let g = Geometry::symmetric(phys::um_to_cm(1.0), MaterialSpec::germanium(), ReflectionModel::Drift)?;
    let ks: Vec<f64> = (0..48).map(|i| 10f64.powf(2.0 + 2.5 * i as f64 / 47.0)).collect();
    let xis: Vec<f64> = (0..16).map(|j| 3e14 * j as f64 / 15.0).collect();
    for pol in Polarization::BOTH {
        println!("{} (rows xi 0..3e14 rad/s, columns k 1e2..3e4 1/cm)", pol.label());
        for &xi in &xis {
            let mut line = String::new();
            for &k in &ks {
                let v = -lifshitz::g_mode(pol, &Mode::new(xi, k)?, &g, t)?;
                let i = ((v / 0.6).min(1.0) * (SHADES.len() - 1) as f64) as usize;
                line.push(SHADES[i] as char);
            }
            println!("|{line}|");
        }
    }
    Ok(())
}
