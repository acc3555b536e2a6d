//! Drift amplitudes recovered from surface-response integrals of a uniaxial
//! permittivity tensor, by closed form and by quadrature.

use casimir_drift::materials::{self, MaterialSpec};
use casimir_drift::nonlocal::{self, DriftTensor, EffectiveDriftTensor, Method};
use casimir_drift::reflection::{Medium, Mode, ReflectionModel};

fn main() -> casimir_drift::Result<()> {
    let spec = MaterialSpec::germanium();
    let state = materials::material_state(&spec, 300.0)?;
    let drift = Medium::with_state(spec.clone(), state, ReflectionModel::Drift)?;
    let effective = EffectiveDriftTensor::new(state, spec.permittivity);
    let hydrodynamic = DriftTensor::new(state, spec.permittivity);

    for (xi, k) in [(1e12, 1e3), (2.5e14, 1e4), (1e15, 1e5)] {
        let mode = Mode::new(xi, k)?;
        let closed = nonlocal::h_integrals(&effective, &mode, Method::Closed)?;
        let quad = nonlocal::h_integrals(&effective, &mode, Method::Quadrature)?;
        // eps_par(q) varies with q_z here, so only quadrature applies
        let q_dep = nonlocal::h_integrals(&hydrodynamic, &mode, Method::Quadrature)?;
        println!("xi={xi:.1e} k={k:.1e}");
        println!("  drift     r_TM={:+.12} r_TE={:+.12}", drift.r_tm(&mode)?, drift.r_te(&mode)?);
        println!("  closed    r_TM={:+.12} r_TE={:+.12}", closed.r_tm(), closed.r_te());
        println!("  quad      r_TM={:+.12} r_TE={:+.12}", quad.r_tm(), quad.r_te());
        println!("  eps_par(q) r_TM={:+.12} (quad err {:.1e})", q_dep.r_tm(), q_dep.quad_error);
    }
    Ok(())
}
