//! Carrier and transport properties of the built-in media over temperature.

use casimir_drift::materials::{self, MaterialSpec};
use casimir_drift::phys;

fn main() -> casimir_drift::Result<()> {
    println!("{:>4} {:>5} {:>8} {:>11} {:>8} {:>11} {:>10}", "", "T", "Eg/eV", "n0/cm^-3", "tau/ps", "sigma0/s^-1", "R_D/um");
    for spec in [MaterialSpec::germanium(), MaterialSpec::silicon()] {
        for t in [10.0, 77.0, 150.0, 300.0, 400.0] {
            let s = materials::material_state(&spec, t)?;
            println!(
                "{:>4} {t:>5} {:>8.4} {:>11.3e} {:>8.3} {:>11.3e} {:>10.3e}",
                spec.name,
                phys::erg_to_ev(materials::band_gap(&spec, t)?),
                s.n0,
                phys::s_to_ps(s.tau),
                s.sigma0,
                phys::cm_to_um(s.debye_radius),
            );
        }
    }
    Ok(())
}
