//! Entropy of the germanium drift configuration as T falls, plus the slope
//! of g(xi) at xi -> 0 that controls its low-temperature behaviour.

use casimir_drift::lifshitz::{Geometry, Settings};
use casimir_drift::materials::MaterialSpec;
use casimir_drift::phys;
use casimir_drift::reflection::{Polarization, ReflectionModel};
use casimir_drift::thermo;

fn main() -> casimir_drift::Result<()> {
    let d = phys::um_to_cm(1.0);
    let g = Geometry::symmetric(d, MaterialSpec::germanium(), ReflectionModel::Drift)?;
    let sweep = thermo::nernst_sweep(&g, &[300.0, 150.0, 75.0, 40.0, 20.0, 10.0, 5.0], &Settings::default())?;
    for p in &sweep.points {
        println!("T={:>5} K  S={:+.6e} erg/(cm^2 K)  +-{:.1e}", p.t, p.s, p.richardson_error);
    }
    for line in &sweep.diagnostics {
        println!("{line}");
    }
    for pol in Polarization::BOTH {
        let p = thermo::g_probe(pol, 1.0 / d, &g, 300.0)?;
        println!("{}: g(0)={:+.6e} dg/dxi={:+.4e} s (+-{:.1e})", pol.label(), p.g0, p.g_xi, p.g_xi_error);
    }
    Ok(())
}
