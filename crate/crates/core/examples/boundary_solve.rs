//! Compare the closed-form drift amplitudes with a direct numerical solve of
//! the interface matching conditions.

use casimir_drift::materials::MaterialSpec;
use casimir_drift::reflection::{self, Medium, Mode, ReflectionModel};

fn main() -> casimir_drift::Result<()> {
    let m = Medium::new(MaterialSpec::silicon(), ReflectionModel::Drift, 300.0)?;
    for (xi, k) in [(1e13, 1e3), (1e14, 3e4), (5e14, 1e5), (1e15, 2e3)] {
        let mode = Mode::new(xi, k)?;
        let eps = m.eps_bar(xi);
        let q = reflection::drift_quantities(&mode, &m.state, eps)?;
        let bc = reflection::r_oracle_bc(&mode, q.eta_l, q.eta_t, eps)?;
        println!(
            "xi={xi:.1e} k={k:.1e}  TM {:+.12} vs {:+.12}  TE {:+.12} vs {:+.12}",
            m.r_tm(&mode)?,
            bc.r_tm,
            m.r_te(&mode)?,
            bc.r_te
        );
    }
    Ok(())
}
