//! Free energy normalised to the bare-permittivity result, over separation.
//! At large d the drift ratio for germanium climbs towards the value obtained
//! by treating the static TM mode as a perfect conductor.

use rayon::prelude::*;

use casimir_drift::lifshitz::{self, Geometry, Ideal, Quantity, Settings, ZeroFrequencySplit};
use casimir_drift::materials::MaterialSpec;
use casimir_drift::phys;
use casimir_drift::reflection::{Medium, ReflectionModel};

fn main() -> casimir_drift::Result<()> {
    let t = 300.0;
    let s = Settings::default();
    let ds = [0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0];
    for spec in [MaterialSpec::germanium(), MaterialSpec::silicon()] {
        let bare = Medium::new(spec.clone(), ReflectionModel::Bare, t)?;
        let metal_tm = Ideal { tm: 1.0, te: 0.0 };
        let limit = ZeroFrequencySplit { zero: &metal_tm, rest: &bare };
        let rows = ds
            .par_iter()
            .map(|&d_um| {
                let d = phys::um_to_cm(d_um);
                let g = Geometry::symmetric(d, spec.clone(), ReflectionModel::Drift)?;
                let e_bare = lifshitz::free_energy_per_area(&g.with_model(ReflectionModel::Bare), t, &s)?.value;
                let drift = lifshitz::ratio_to_bare(&g, t, &s)?;
                let asym = lifshitz::sum_responses(&limit, &limit, d, t, Quantity::FreeEnergy, &s)?.value / e_bare;
                Ok((d_um, drift, asym))
            })
            .collect::<casimir_drift::Result<Vec<_>>>()?;
        for (d, drift, asym) in rows {
            println!("{} d={d:>5} um  drift/bare={drift:.6}  conductor n=0 limit={asym:.6}", spec.name);
        }
    }
    Ok(())
}
