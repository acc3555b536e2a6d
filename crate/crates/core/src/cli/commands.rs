use rayon::prelude::*;

use super::config::{ConfigError, Defaults, RunConfig};
use super::output::{Cell, Table};
use super::CliError;
use crate::lifshitz::{self, Geometry};
use crate::materials::{self, MaterialSpec};
use crate::nonlocal::{self, EffectiveDriftTensor, Method};
use crate::phys;
use crate::reflection::{Medium, Mode, Polarization, ReflectionModel};
use crate::thermo;

pub(super) fn defaults(command: &str) -> Defaults {
    let base = Defaults::default();
    match command {
        "fig1" => Defaults {
            material: "all",
            distances: "0.1:20:log25",
            ..base
        },
        "entropy" => Defaults {
            temperatures: "",
            ..base
        },
        "nernst" => Defaults {
            temperatures: "300,150,75,40,20,10",
            ..base
        },
        "nonlocal-verify" => Defaults {
            k: "1e2:1e6:log20",
            ..base
        },
        "modeplot" => Defaults {
            temperatures: "1,150,300",
            xi: "0:3e14:lin31",
            k: "1e2:3e4:log25",
            ..base
        },
        _ => base,
    }
}

pub(super) fn evaluate(cfg: &RunConfig) -> Result<Table, CliError> {
    match cfg.command.as_str() {
        "materials" => materials_table(cfg),
        "reflect" => reflect(cfg),
        "energy" => sums(cfg, lifshitz::Quantity::FreeEnergy),
        "pressure" => sums(cfg, lifshitz::Quantity::Pressure),
        "entropy" => entropy(cfg),
        "fig1" => fig1(cfg),
        "nernst" => nernst(cfg),
        "nonlocal-verify" => nonlocal_verify(cfg),
        "modeplot" => modeplot(cfg),
        other => Err(ConfigError(format!("unknown command '{other}'")).into()),
    }
}

fn single_material(cfg: &RunConfig) -> Result<MaterialSpec, CliError> {
    let mut specs = cfg.material.specs()?;
    if specs.len() != 1 {
        return Err(ConfigError(format!("'{}' takes a single material", cfg.command)).into());
    }
    Ok(specs.remove(0))
}

fn single_distance(cfg: &RunConfig) -> Result<f64, CliError> {
    match cfg.distances_um.as_slice() {
        [d] => Ok(phys::um_to_cm(*d)),
        _ => Err(ConfigError(format!("'{}' takes a single distance", cfg.command)).into()),
    }
}

fn geometry(cfg: &RunConfig, spec: &MaterialSpec, d_cm: f64, t: f64) -> Result<Geometry, CliError> {
    Ok(Geometry::symmetric(d_cm, spec.clone(), cfg.model(spec, t)?)?)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn range_note(table: &mut Table, spec: &MaterialSpec, t: f64) {
    if t > materials::VALIDITY_T_MAX {
        table.note(format!(
            "warning: {} at T = {t} K lies outside the fitted range (0, {}] K",
            spec.name,
            materials::VALIDITY_T_MAX
        ));
    }
}

fn materials_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new(
        &[
            "material", "T_K", "Eg_eV", "nc_cm3", "nv_cm3", "n0_cm3", "tau_ps", "sigma0_s", "v_T_cm_s", "mobility",
            "D_cm2_s", "kappa_cm", "R_D_um", "eps0", "eps_inf", "omega0_rad_s",
        ],
        "T K; Eg eV; densities cm^-3; tau ps; sigma0 1/s (Gaussian); v_T cm/s; mobility cm^2/(statV s); \
         D cm^2/s; kappa 1/cm; R_D um; omega0 rad/s",
    );
    let t = cfg.temperature;
    for spec in cfg.material.specs()? {
        let st = materials::material_state(&spec, t)?;
        let (nc, nv) = materials::band_densities(&spec, t);
        range_note(&mut table, &spec, t);
        table.push(vec![
            spec.name.clone().into(),
            t.into(),
            phys::erg_to_ev(materials::band_gap(&spec, t)?).into(),
            nc.into(),
            nv.into(),
            st.n0.into(),
            phys::s_to_ps(st.tau).into(),
            st.sigma0.into(),
            st.v_t.into(),
            st.mobility.into(),
            st.diffusion.into(),
            st.kappa.into(),
            phys::cm_to_um(st.debye_radius).into(),
            spec.permittivity.eps0.into(),
            spec.permittivity.eps_inf.into(),
            spec.permittivity.omega0.into(),
        ]);
    }
    Ok(table)
}

fn reflect(cfg: &RunConfig) -> Result<Table, CliError> {
    let spec = single_material(cfg)?;
    let t = cfg.temperature;
    let medium = Medium::new(spec.clone(), cfg.model(&spec, t)?, t)?;
    let xis: Vec<f64> = if cfg.xi_rad_s.is_empty() {
        (0..5).map(|n| phys::matsubara_xi(n, t)).collect::<crate::Result<_>>()?
    } else {
        cfg.xi_rad_s.clone()
    };
    let mut table = Table::new(&["model", "polarization", "xi_rad_s", "k_cm", "r"], "xi rad/s; k 1/cm; r dimensionless");
    table.note(format!("material {} at T = {t} K", spec.name));
    range_note(&mut table, &spec, t);
    for pol in Polarization::BOTH {
        for &xi in &xis {
            for &k in &cfg.k_cm {
                let r = medium.r(pol, &Mode::new(xi, k)?)?;
                table.push(vec![cfg.model.as_str().into(), pol.label().into(), xi.into(), k.into(), r.into()]);
            }
        }
    }
    Ok(table)
}

fn sums(cfg: &RunConfig, quantity: lifshitz::Quantity) -> Result<Table, CliError> {
    let spec = single_material(cfg)?;
    let t = cfg.temperature;
    let settings = cfg.settings();
    let (columns, units): (&[&'static str], &str) = match quantity {
        lifshitz::Quantity::FreeEnergy => (
            &["d_um", "E_erg_cm2", "quadrature_error", "truncation_error", "n_terms", "E_n0_TM"],
            "d um; energies erg/cm^2",
        ),
        lifshitz::Quantity::Pressure => (
            &["d_um", "P_dyn_cm2", "quadrature_error", "truncation_error", "n_terms", "P_n0_TM"],
            "d um; pressures dyn/cm^2, positive for attraction",
        ),
    };
    let mut table = Table::new(columns, units);
    table.note(format!("material {} model {} at T = {t} K", spec.name, cfg.model));
    let results = cfg
        .distances_um
        .par_iter()
        .map(|&d| {
            let g = geometry(cfg, &spec, phys::um_to_cm(d), t)?;
            let r = match quantity {
                lifshitz::Quantity::FreeEnergy => lifshitz::free_energy_per_area(&g, t, &settings),
                lifshitz::Quantity::Pressure => lifshitz::pressure(&g, t, &settings),
            }?;
            Ok((d, r))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    for (d, r) in results {
        for w in &r.warnings {
            table.note(format!("warning: {w}"));
        }
        table.push(vec![
            d.into(),
            r.value.into(),
            r.quadrature_error_estimate.into(),
            r.truncation_error_estimate.into(),
            r.n_truncated_at.into(),
            r.per_n_terms[0].tm.into(),
        ]);
    }
    Ok(table)
}

fn entropy(cfg: &RunConfig) -> Result<Table, CliError> {
    let spec = single_material(cfg)?;
    let d = single_distance(cfg)?;
    let temps = if cfg.temperatures.is_empty() {
        vec![cfg.temperature]
    } else {
        cfg.temperatures.clone()
    };
    let settings = cfg.settings();
    let mut table = Table::new(&["T_K", "S", "error_est", "fd_step"], "T K; S erg/(cm^2 K); fd_step K");
    table.note(format!("material {} model {} at d = {} um", spec.name, cfg.model, phys::cm_to_um(d)));
    let points = temps
        .par_iter()
        .map(|&t| {
            let g = geometry(cfg, &spec, d, t)?;
            Ok(thermo::entropy(&g, t, cfg.fd_step, &settings)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    for p in points {
        for w in &p.warnings {
            table.note(format!("warning: {w}"));
        }
        table.push(vec![p.t.into(), p.s.into(), p.richardson_error.into(), p.fd_step.into()]);
    }
    Ok(table)
}

fn fig1(cfg: &RunConfig) -> Result<Table, CliError> {
    let t = cfg.temperature;
    let settings = cfg.settings();
    let mut table = Table::new(
        &["material", "d_um", "E_bare", "E_drift", "E_cond", "ratio_drift", "ratio_cond"],
        "d um; energies erg/cm^2; ratios dimensionless",
    );
    table.note(format!("T = {t} K; ratios are normalised to the bare-permittivity free energy"));
    for spec in cfg.material.specs()? {
        range_note(&mut table, &spec, t);
        let cond = cfg.model_for("cond", &spec, t)?;
        if let ReflectionModel::Conductivity { sigma0 } = cond {
            table.note(format!("{} cond model sigma0 = {sigma0:.6e} 1/s", spec.name));
        }
        let rows = cfg
            .distances_um
            .par_iter()
            .map(|&d| {
                let g = Geometry::symmetric(phys::um_to_cm(d), spec.clone(), ReflectionModel::Bare)?;
                let energy = |m: ReflectionModel| lifshitz::free_energy_per_area(&g.with_model(m), t, &settings);
                let bare = energy(ReflectionModel::Bare)?.value;
                let drift = energy(ReflectionModel::Drift)?.value;
                let cond = energy(cond)?.value;
                if bare.abs() < lifshitz::NORMALIZATION_FLOOR {
                    return Err(crate::Error::Normalization(bare));
                }
                Ok(vec![
                    Cell::from(spec.name.as_str()),
                    d.into(),
                    bare.into(),
                    drift.into(),
                    cond.into(),
                    (drift / bare).into(),
                    (cond / bare).into(),
                ])
            })
            .collect::<crate::Result<Vec<_>>>()?;
        for r in rows {
            table.push(r);
        }
    }
    Ok(table)
}

/// Upper bound on `|S(T_min)| / |S(T_max)|` for a passing sweep.
const NERNST_END_RATIO: f64 = 0.05;

fn nernst(cfg: &RunConfig) -> Result<Table, CliError> {
    let spec = single_material(cfg)?;
    let d = single_distance(cfg)?;
    let settings = cfg.settings();
    let g = geometry(cfg, &spec, d, cfg.temperature)?;
    let sweep = thermo::nernst_sweep(&g, &cfg.temperatures, &settings)?;
    let mut table = Table::new(&["T_K", "S", "error_est", "fd_step"], "T K; S erg/(cm^2 K); fd_step K");
    table.note(format!("material {} model {} at d = {} um", spec.name, cfg.model, phys::cm_to_um(d)));
    for line in &sweep.diagnostics {
        table.note(line.clone());
    }
    for p in &sweep.points {
        table.push(vec![p.t.into(), p.s.into(), p.richardson_error.into(), p.fd_step.into()]);
    }
    let k = 1.0 / d;
    let te = thermo::g_probe(Polarization::Te, k, &g, cfg.temperature)?;
    let tm = thermo::g_probe(Polarization::Tm, k, &g, cfg.temperature)?;
    let te_flat = te.g_xi.abs() <= te.g_xi_error;
    let tm_rising = tm.g_xi > tm.g_xi_error;
    let trend = sweep.low_t_monotone && sweep.end_ratio < NERNST_END_RATIO;
    table.trailer.push(format!(
        "TE probe at k = {k:.4e} 1/cm: g_xi(0) = {:.4e} s, stencil error {:.4e} s",
        te.g_xi, te.g_xi_error
    ));
    table.trailer.push(format!(
        "TM probe at k = {k:.4e} 1/cm: g_xi(0) = {:.4e} s, stencil error {:.4e} s",
        tm.g_xi, tm.g_xi_error
    ));
    table.trailer.push(format!(
        "{} entropy trend (|S| monotone below {} K: {}, end ratio {:.4e} < {NERNST_END_RATIO}; TE flat: {te_flat}; TM rising: {tm_rising})",
        verdict(trend && te_flat && tm_rising),
        thermo::LOW_T_WINDOW,
        sweep.low_t_monotone,
        sweep.end_ratio,
    ));
    Ok(table)
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Required agreement between the two formulations.
const NONLOCAL_TOL: f64 = 1e-8;

fn nonlocal_verify(cfg: &RunConfig) -> Result<Table, CliError> {
    let spec = single_material(cfg)?;
    let t = cfg.temperature;
    let xis: Vec<f64> = if cfg.xi_rad_s.is_empty() {
        let xi1 = phys::matsubara_xi(1, t)?;
        super::config::parse_list("1e-3:1e3:log20")?.into_iter().map(|f| f * xi1).collect()
    } else {
        cfg.xi_rad_s.clone()
    };
    let drift = Medium::new(spec.clone(), ReflectionModel::Drift, t)?;
    let tensor = EffectiveDriftTensor::new(drift.state, spec.permittivity);
    let mut table = Table::new(
        &["polarization", "k_cm", "xi_rad_s", "r_drift", "r_nonlocal", "rel_diff"],
        "k 1/cm; xi rad/s; amplitudes dimensionless",
    );
    table.note(format!("material {} at T = {t} K", spec.name));
    let mut worst = 0.0f64;
    let mut worst_quad = 0.0f64;
    for pol in Polarization::BOTH {
        for &k in &cfg.k_cm {
            for &xi in &xis {
                let mode = Mode::new(xi, k)?;
                let a = drift.r(pol, &mode)?;
                let b = if xi == 0.0 {
                    match pol {
                        Polarization::Tm => nonlocal::static_response(k, &drift.state).r_tm(),
                        Polarization::Te => 0.0,
                    }
                } else {
                    let hf = nonlocal::closed_h_functions(&tensor, &mode)?;
                    match pol {
                        Polarization::Tm => hf.r_tm(),
                        Polarization::Te => hf.r_te(),
                    }
                };
                let diff = rel_diff(a, b);
                worst = worst.max(diff);
                table.push(vec![pol.label().into(), k.into(), xi.into(), a.into(), b.into(), diff.into()]);
            }
        }
    }
    let quad_modes: Vec<Mode> = cfg
        .k_cm
        .iter()
        .step_by(4)
        .flat_map(|&k| xis.iter().step_by(4).filter(|&&xi| xi > 0.0).map(move |&xi| Mode { xi, k }))
        .collect();
    let quad_diffs = quad_modes
        .par_iter()
        .map(|mode| {
            let a = nonlocal::h_integrals(&tensor, mode, Method::Closed)?;
            let b = nonlocal::h_integrals(&tensor, mode, Method::Quadrature)?;
            Ok(rel_diff(a.h_a, b.h_a).max(rel_diff(a.h_b, b.h_b)).max(rel_diff(a.h_c, b.h_c)))
        })
        .collect::<crate::Result<Vec<f64>>>()?;
    for d in quad_diffs {
        worst_quad = worst_quad.max(d);
    }
    table.trailer.push(format!(
        "{} amplitudes: max rel diff {worst:.3e} (tolerance {NONLOCAL_TOL:e})",
        verdict(worst <= NONLOCAL_TOL)
    ));
    table.trailer.push(format!(
        "{} h-integrals, quadrature vs closed form on {} modes: max rel diff {worst_quad:.3e} (tolerance {NONLOCAL_TOL:e})",
        verdict(worst_quad <= NONLOCAL_TOL),
        quad_modes.len()
    ));
    Ok(table)
}

fn modeplot(cfg: &RunConfig) -> Result<Table, CliError> {
    let spec = single_material(cfg)?;
    let d = single_distance(cfg)?;
    let mut table = Table::new(
        &["T_K", "polarization", "xi_rad_s", "k_cm", "g"],
        "T K; xi rad/s; k 1/cm; g dimensionless",
    );
    table.note(format!("material {} model {} at d = {} um", spec.name, cfg.model, phys::cm_to_um(d)));
    for &t in &cfg.temperatures {
        let g = geometry(cfg, &spec, d, t)?;
        let (a, b) = g.media(t)?;
        for pol in Polarization::BOTH {
            let rows = cfg
                .xi_rad_s
                .par_iter()
                .map(|&xi| {
                    cfg.k_cm
                        .iter()
                        .map(|&k| {
                            let v = lifshitz::g_mode_with(&a, &b, pol, &Mode::new(xi, k)?, d)?;
                            Ok(vec![Cell::from(t), pol.label().into(), xi.into(), k.into(), v.into()])
                        })
                        .collect::<crate::Result<Vec<_>>>()
                })
                .collect::<crate::Result<Vec<_>>>()?;
            for r in rows.into_iter().flatten() {
                table.push(r);
            }
        }
    }
    Ok(table)
}
