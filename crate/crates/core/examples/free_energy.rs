//! Free energy per unit area between two germanium plates, with the
//! per-frequency breakdown of the leading terms.

use casimir_drift::lifshitz::{self, Geometry, Settings};
use casimir_drift::materials::MaterialSpec;
use casimir_drift::phys;
use casimir_drift::reflection::ReflectionModel;

fn main() -> casimir_drift::Result<()> {
    let t = 300.0;
    let g = Geometry::symmetric(phys::um_to_cm(1.0), MaterialSpec::germanium(), ReflectionModel::Drift)?;
    let res = lifshitz::free_energy_per_area(&g, t, &Settings::default())?;
    println!("E = {:.10e} erg/cm^2 from {} terms", res.value, res.n_truncated_at);
    println!("quadrature error ~ {:.1e}, truncation ~ {:.1e}", res.quadrature_error_estimate, res.truncation_error_estimate);
    for p in res.per_n_terms.iter().take(5) {
        println!("  n={:<2} TM {:+.6e}  TE {:+.6e}", p.n, p.tm, p.te);
    }
    for w in &res.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
