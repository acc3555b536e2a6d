//! TM and TE amplitudes of germanium at the first Matsubara frequency for
//! each reflection model.

use casimir_drift::materials::MaterialSpec;
use casimir_drift::phys;
use casimir_drift::reflection::{Medium, Mode, ReflectionModel};

fn main() -> casimir_drift::Result<()> {
    let t = 300.0;
    let spec = MaterialSpec::germanium();
    let xi = phys::matsubara_xi(1, t)?;
    let models = [
        ReflectionModel::Bare,
        ReflectionModel::Conductivity { sigma0: spec.reference_sigma0.unwrap() },
        ReflectionModel::Drift,
        ReflectionModel::Nonlocal,
    ];
    for model in models {
        let m = Medium::new(spec.clone(), model, t)?;
        for k in [1e3, 1e4, 1e5] {
            let mode = Mode::new(xi, k)?;
            println!("{:>8} k={k:<7e} r_TM={:+.10} r_TE={:+.10}", model.label(), m.r_tm(&mode)?, m.r_te(&mode)?);
        }
    }

    // at xi = 0 only the drift model screens the TM field partially
    let m = Medium::new(spec, ReflectionModel::Drift, t)?;
    for k in [1e2, 1e4, 1e6] {
        println!("static drift r_TM(k={k:e}) = {:.8}", m.r_tm(&Mode::new(0.0, k)?)?);
    }
    Ok(())
}
