//! Pressure versus separation for silicon plates under three models.

use casimir_drift::lifshitz::{self, Geometry, Settings};
use casimir_drift::materials::MaterialSpec;
use casimir_drift::phys;
use casimir_drift::reflection::ReflectionModel;

fn main() -> casimir_drift::Result<()> {
    let spec = MaterialSpec::silicon();
    let cond = ReflectionModel::Conductivity { sigma0: spec.reference_sigma0.unwrap() };
    let settings = Settings::default();
    println!("{:>6} {:>16} {:>16} {:>16}", "d/um", "bare", "cond", "drift");
    for d_um in [0.5, 1.0, 2.0, 5.0] {
        let g = Geometry::symmetric(phys::um_to_cm(d_um), spec.clone(), ReflectionModel::Bare)?;
        let p = |m| lifshitz::pressure(&g.with_model(m), 300.0, &settings).map(|r| r.value);
        println!(
            "{d_um:>6} {:>16.6e} {:>16.6e} {:>16.6e}",
            p(ReflectionModel::Bare)?,
            p(cond)?,
            p(ReflectionModel::Drift)?
        );
    }
    println!("dyn/cm^2, positive is attractive");
    Ok(())
}
