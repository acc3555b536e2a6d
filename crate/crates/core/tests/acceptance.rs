//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are computed and reported like the
//! rest, but the target only fails if their outcome changes. Everything else
//! must pass.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use casimir_drift::cli;
use casimir_drift::lifshitz::{self, Geometry, Ideal, Quantity, Settings, ZeroFrequencySplit};
use casimir_drift::materials::{self, MaterialSpec};
use casimir_drift::nonlocal::{self, EffectiveDriftTensor, Method};
use casimir_drift::phys::{self, K_B};
use casimir_drift::reflection::{self, Medium, Mode, Polarization, ReflectionModel};
use casimir_drift::thermo;

const ZETA3: f64 = 1.202_056_903_159_594_3;
const T_ROOM: f64 = 300.0;

/// Sub-checks whose outcome is FAIL with the reference parameter sets.
/// See the README section on known discrepancies.
const KNOWN_FAILURES: &[&str] = &["1-nc", "8a-si", "8c"];

struct Report {
    lines: Vec<(String, bool, String)>,
}

impl Report {
    fn check(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} criterion {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        self.lines.push((id.to_string(), pass, detail));
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..n).map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64)).collect()
}

fn materials_pair() -> [MaterialSpec; 2] {
    [MaterialSpec::germanium(), MaterialSpec::silicon()]
}

fn within(v: f64, target: f64, tol: f64) -> bool {
    (v - target).abs() <= tol * target.abs()
}

fn criterion_1(r: &mut Report) {
    let ge = MaterialSpec::germanium();
    let si = MaterialSpec::silicon();
    let eg_ge = phys::erg_to_ev(materials::band_gap(&ge, T_ROOM).unwrap());
    let tau_ge = phys::s_to_ps(materials::relaxation_time(&ge, T_ROOM).unwrap());
    let nc_ge = materials::band_densities(&ge, T_ROOM).0;
    let eg_si = phys::erg_to_ev(materials::band_gap(&si, T_ROOM).unwrap());
    let tau_si = phys::s_to_ps(materials::relaxation_time(&si, T_ROOM).unwrap());
    let pass = within(eg_ge, 0.66, 5e-3) && within(tau_ge, 3.9, 2e-2) && within(eg_si, 1.12, 5e-3) && within(tau_si, 0.5, 5e-2);
    r.check(
        "1",
        pass,
        format!("Ge E_g = {eg_ge:.4} eV, tau = {tau_ge:.4} ps; Si E_g = {eg_si:.4} eV, tau = {tau_si:.4} ps"),
    );
    r.check(
        "1-nc",
        within(nc_ge, 1.0e19, 2e-2),
        format!("Ge conduction-band density of states {nc_ge:.4e} cm^-3 vs 1.0e19 (tol 2%)"),
    );
}

fn criterion_2(r: &mut Report) {
    let rd = |s: &MaterialSpec| phys::cm_to_um(materials::material_state(s, T_ROOM).unwrap().debye_radius);
    let ge = rd(&MaterialSpec::germanium());
    let si = rd(&MaterialSpec::silicon());
    let pass = (0.55..=0.85).contains(&ge) && (16.0..=36.0).contains(&si);
    r.check("2", pass, format!("Debye radius Ge {ge:.4} um in [0.55, 0.85], Si {si:.4} um in [16, 36]"));
}

fn criterion_3(r: &mut Report) {
    let mut te_zero = true;
    let mut worst_last = 0.0f64;
    let mut monotone = true;
    let mut exact_static = true;
    for spec in materials_pair() {
        let m = Medium::new(spec.clone(), ReflectionModel::Drift, T_ROOM).unwrap();
        let xi1 = phys::matsubara_xi(1, T_ROOM).unwrap();
        for k in log_grid(1e2, 1e6, 9) {
            let target = reflection::drift_static_tm(k, m.state.kappa, m.state.eps0);
            let zero = Mode::new(0.0, k).unwrap();
            te_zero &= m.r_te(&zero).unwrap() == 0.0;
            exact_static &= rel(m.r_tm(&zero).unwrap(), target) <= 1e-14;
            let diffs: Vec<f64> = (4..=16)
                .map(|p| rel(m.r_tm(&Mode::new(xi1 * 10f64.powi(-p), k).unwrap()).unwrap(), target))
                .collect();
            // once the deviation reaches rounding level it may jitter
            monotone &= diffs.windows(2).all(|w| w[1] <= w[0] || w[1] < 1e-13);
            worst_last = worst_last.max(*diffs.last().unwrap());
        }
    }
    r.check(
        "3",
        te_zero && exact_static && monotone && worst_last <= 1e-8,
        format!(
            "r_TE(0) == 0: {te_zero}; r_TM(0) equals static form: {exact_static}; \
             xi -> 0 approach monotone: {monotone}, deviation at 1e-16 xi_1 = {worst_last:.3e} (tol 1e-8)"
        ),
    );
}

fn criterion_4(r: &mut Report) {
    let mut worst = 0.0f64;
    for spec in materials_pair() {
        let state = materials::material_state(&spec, T_ROOM).unwrap().with_carrier_density(&spec, 0.0);
        let drift = Medium::with_state(spec.clone(), state, ReflectionModel::Drift).unwrap();
        let bare = Medium::with_state(spec.clone(), state, ReflectionModel::Bare).unwrap();
        let xi1 = phys::matsubara_xi(1, T_ROOM).unwrap();
        for k in log_grid(1e2, 1e6, 20) {
            for f in log_grid(1e-3, 1e3, 20) {
                let mode = Mode::new(f * xi1, k).unwrap();
                for pol in Polarization::BOTH {
                    worst = worst.max(rel(drift.r(pol, &mode).unwrap(), bare.r(pol, &mode).unwrap()));
                }
            }
        }
    }
    r.check("4", worst <= 1e-10, format!("n0 = 0 drift vs bare on 20x20 grid: max rel diff {worst:.3e} (tol 1e-10)"));
}

fn criterion_5(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let media = materials_pair().map(|s| Medium::new(s, ReflectionModel::Drift, T_ROOM).unwrap());
    let xi1 = phys::matsubara_xi(1, T_ROOM).unwrap();
    let mut worst = 0.0f64;
    let mut solved = 0;
    for i in 0..50 {
        let m = &media[i % 2];
        let xi = xi1 * 10f64.powf(rng.random_range(-2.0..2.0));
        let k = 10f64.powf(rng.random_range(2.0..5.0));
        let mode = Mode::new(xi, k).unwrap();
        let eps = m.eps_bar(xi);
        let dq = reflection::drift_quantities(&mode, &m.state, eps).unwrap();
        if let Ok(bc) = reflection::r_oracle_bc(&mode, dq.eta_l, dq.eta_t, eps) {
            solved += 1;
            worst = worst.max(rel(bc.r_tm, m.r_tm(&mode).unwrap()));
            worst = worst.max(rel(bc.r_te, m.r_te(&mode).unwrap()));
        }
    }
    r.check(
        "5",
        solved == 50 && worst <= 1e-9,
        format!("boundary solves at {solved}/50 random modes: max rel diff {worst:.3e} (tol 1e-9)"),
    );
}

fn criterion_6(r: &mut Report) {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut worst_quad = 0.0f64;
    let mut quad_modes = 0;
    for spec in materials_pair() {
        let drift = Medium::new(spec.clone(), ReflectionModel::Drift, T_ROOM).unwrap();
        let tensor = EffectiveDriftTensor::new(drift.state, spec.permittivity);
        let xi1 = phys::matsubara_xi(1, T_ROOM).unwrap();
        let ks = log_grid(1e2, 1e6, 20);
        let xis: Vec<f64> = log_grid(1e-3, 1e3, 20).into_iter().map(|f| f * xi1).collect();
        for (i, &k) in ks.iter().enumerate() {
            for (j, &xi) in xis.iter().enumerate() {
                let mode = Mode::new(xi, k).unwrap();
                let hf = nonlocal::closed_h_functions(&tensor, &mode).unwrap();
                worst = worst.max(rel(hf.r_tm(), drift.r_tm(&mode).unwrap()));
                worst = worst.max(rel(hf.r_te(), drift.r_te(&mode).unwrap()));
                if i % 4 == 0 && j % 4 == 0 {
                    let q = nonlocal::h_integrals(&tensor, &mode, Method::Quadrature).unwrap();
                    quad_modes += 1;
                    worst_quad = worst_quad
                        .max(rel(q.h_a, hf.h_a))
                        .max(rel(q.h_b, hf.h_b))
                        .max(rel(q.h_c, hf.h_c));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    r.check(
        "6",
        worst <= 1e-8 && worst_quad <= 1e-8 && secs < 60.0,
        format!(
            "tensor amplitudes vs drift: max rel diff {worst:.3e}; quadrature vs closed h-integrals on {quad_modes} modes: {worst_quad:.3e} (tol 1e-8); {secs:.2} s"
        ),
    );
}

fn criterion_7(r: &mut Report) {
    let settings = Settings::default();
    let (d, t) = (1e-4, T_ROOM);
    let metal = Ideal::METAL;
    let (e0, _) = lifshitz::matsubara_term(&metal, &metal, 0, d, t, Quantity::FreeEnergy, &settings).unwrap();
    let exact = -K_B * t * ZETA3 / (16.0 * PI * d * d);
    let e_diff = rel(e0.tm, exact);

    let tight = Settings { tol_quad: 1e-12, tol_sum: 1e-13, ..settings };
    let g = Geometry::symmetric(d, MaterialSpec::germanium(), ReflectionModel::Drift).unwrap();
    let p = lifshitz::pressure(&g, t, &tight).unwrap().value;
    let h = d / 1000.0;
    let e = |x: f64| lifshitz::free_energy_per_area(&g.with_distance(x).unwrap(), t, &tight).unwrap().value;
    let p_fd = (e(d + h) - e(d - h)) / (2.0 * h);
    let p_diff = rel(p, p_fd);
    r.check(
        "7",
        e_diff <= 1e-8 && p_diff <= 1e-5,
        format!("ideal-metal n=0 TM term rel diff {e_diff:.3e} (tol 1e-8); pressure vs dE/dd rel diff {p_diff:.3e} (tol 1e-5)"),
    );
}

fn energy(g: &Geometry, model: ReflectionModel) -> f64 {
    lifshitz::free_energy_per_area(&g.with_model(model), T_ROOM, &Settings::default()).unwrap().value
}

fn ratio(spec: &MaterialSpec, d_um: f64, model: ReflectionModel) -> f64 {
    let g = Geometry::symmetric(phys::um_to_cm(d_um), spec.clone(), ReflectionModel::Bare).unwrap();
    energy(&g, model) / energy(&g, ReflectionModel::Bare)
}

fn cond(spec: &MaterialSpec) -> ReflectionModel {
    ReflectionModel::Conductivity {
        sigma0: spec.reference_sigma0.unwrap(),
    }
}

fn criterion_8(r: &mut Report) {
    let start = Instant::now();
    let [ge, si] = materials_pair();

    let si_ratios: Vec<(f64, f64)> = [0.1, 0.2, 0.5, 1.0].iter().map(|&d| (d, ratio(&si, d, ReflectionModel::Drift))).collect();
    let si_worst = si_ratios.iter().map(|(_, v)| (v - 1.0).abs()).fold(0.0, f64::max);
    r.check(
        "8a-si",
        si_worst <= 1e-3,
        format!(
            "Si drift ratio within 1e-3 of 1 for d <= 1 um: {}",
            si_ratios.iter().map(|(d, v)| format!("{d} um -> {v:.6}")).collect::<Vec<_>>().join(", ")
        ),
    );
    let ge_2 = ratio(&ge, 2.0, ReflectionModel::Drift);
    r.check("8a-ge", ge_2 > 1.01, format!("Ge drift ratio at 2 um = {ge_2:.6} > 1.01"));

    // bare free energy with the n = 0 TM amplitude replaced by an ideal conductor
    let d = phys::um_to_cm(15.0);
    let g = Geometry::symmetric(d, ge.clone(), ReflectionModel::Bare).unwrap();
    let bare_medium = Medium::new(ge.clone(), ReflectionModel::Bare, T_ROOM).unwrap();
    let metal_tm = Ideal { tm: 1.0, te: 0.0 };
    let split = ZeroFrequencySplit { zero: &metal_tm, rest: &bare_medium };
    let asym = lifshitz::sum_responses(&split, &split, d, T_ROOM, Quantity::FreeEnergy, &Settings::default())
        .unwrap()
        .value
        / energy(&g, ReflectionModel::Bare);
    let ge_15 = energy(&g, ReflectionModel::Drift) / energy(&g, ReflectionModel::Bare);
    r.check(
        "8b",
        rel(ge_15, asym) <= 0.05,
        format!("Ge drift ratio at 15 um = {ge_15:.6}, conductor asymptote {asym:.6}, rel diff {:.3e} (tol 0.05)", rel(ge_15, asym)),
    );

    let (ge_c, si_c) = (ratio(&ge, 20.0, cond(&ge)), ratio(&si, 20.0, cond(&si)));
    r.check(
        "8c",
        rel(ge_c, si_c) <= 0.02,
        format!("cond ratios at 20 um: Ge {ge_c:.6}, Si {si_c:.6}, rel diff {:.3e} (tol 0.02)", rel(ge_c, si_c)),
    );
    let g20 = |s: &MaterialSpec| Geometry::symmetric(phys::um_to_cm(20.0), s.clone(), cond(s)).unwrap();
    let (e_ge, e_si) = (energy(&g20(&ge), cond(&ge)), energy(&g20(&si), cond(&si)));
    r.check(
        "8c-energy",
        rel(e_ge, e_si) <= 0.02,
        format!("cond free energies at 20 um: Ge {e_ge:.6e}, Si {e_si:.6e} erg/cm^2, rel diff {:.3e}", rel(e_ge, e_si)),
    );
    let secs = start.elapsed().as_secs_f64();
    r.check("8-runtime", secs < 300.0, format!("{secs:.2} s"));
}

fn criterion_9(r: &mut Report) {
    let mut worst = 0.0f64;
    for spec in materials_pair() {
        let drift = Medium::new(spec.clone(), ReflectionModel::Drift, T_ROOM).unwrap();
        let bare = Medium::new(spec.clone(), ReflectionModel::Bare, T_ROOM).unwrap();
        let split = ZeroFrequencySplit { zero: &drift, rest: &bare };
        for d_um in [0.5, 1.0, 2.0, 5.0, 10.0] {
            let d = phys::um_to_cm(d_um);
            let s = Settings::default();
            let full = lifshitz::sum_responses(&drift, &drift, d, T_ROOM, Quantity::FreeEnergy, &s).unwrap().value;
            let single = lifshitz::sum_responses(&split, &split, d, T_ROOM, Quantity::FreeEnergy, &s).unwrap().value;
            worst = worst.max(rel(full, single));
        }
    }
    r.check("9", worst < 1e-3, format!("bare amplitudes at n >= 1 change E by at most {worst:.3e} (tol 1e-3)"));
}

fn criterion_10(r: &mut Report) {
    let start = Instant::now();
    let d = phys::um_to_cm(1.0);
    let g = Geometry::symmetric(d, MaterialSpec::germanium(), ReflectionModel::Drift).unwrap();
    let sweep = thermo::nernst_sweep(&g, &[300.0, 75.0, 40.0, 20.0, 10.0], &Settings::default()).unwrap();
    let s: Vec<String> = sweep.points.iter().map(|p| format!("S({} K) = {:.4e}", p.t, p.s)).collect();
    let te = thermo::g_probe(Polarization::Te, 1.0 / d, &g, T_ROOM).unwrap();
    let tm = thermo::g_probe(Polarization::Tm, 1.0 / d, &g, T_ROOM).unwrap();
    let te_flat = te.g_xi.abs() <= te.g_xi_error;
    let tm_rising = tm.g_xi > tm.g_xi_error;
    let secs = start.elapsed().as_secs_f64();
    r.check(
        "10",
        sweep.low_t_monotone && sweep.end_ratio < 0.05 && te_flat && tm_rising && secs < 600.0,
        format!(
            "{}; monotone below 75 K: {}; |S(10)|/|S(300)| = {:.3e}; TE g_xi = {:.3e} (stencil err {:.3e}); TM g_xi = {:.3e} s; {secs:.2} s",
            s.join(", "),
            sweep.low_t_monotone,
            sweep.end_ratio,
            te.g_xi,
            te.g_xi_error,
            tm.g_xi,
        ),
    );
}

fn criterion_11(r: &mut Report) {
    let run = || {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run_with(["casimir-drift", "fig1"], &mut out, &mut err);
        (code, out)
    };
    let (c1, a) = run();
    let (c2, b) = run();
    r.check(
        "11",
        c1 == 0 && c2 == 0 && !a.is_empty() && a == b,
        format!("two fig1 runs: exit codes {c1}, {c2}; {} bytes; identical: {}", a.len(), a == b),
    );
}

fn main() -> ExitCode {
    let mut report = Report { lines: Vec::new() };
    criterion_1(&mut report);
    criterion_2(&mut report);
    criterion_3(&mut report);
    criterion_4(&mut report);
    criterion_5(&mut report);
    criterion_6(&mut report);
    criterion_7(&mut report);
    criterion_8(&mut report);
    criterion_9(&mut report);
    criterion_10(&mut report);
    criterion_11(&mut report);

    let unexpected: Vec<&str> = report
        .lines
        .iter()
        .filter(|(id, pass, _)| *pass == KNOWN_FAILURES.contains(&id.as_str()))
        .map(|(id, _, _)| id.as_str())
        .collect();
    let failed = report.lines.iter().filter(|(_, p, _)| !p).count();
    println!("{} checks, {failed} FAIL (known: {})", report.lines.len(), KNOWN_FAILURES.join(", "));
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("outcome differs from the recorded expectation for: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
