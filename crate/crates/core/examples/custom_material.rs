//! Drive the command-line front end from a TOML file describing a material
//! that is not built in.

use casimir_drift::cli;

const CONFIG: &str = r#"
temperature = 300.0
distances_um = [0.5, 1.0, 3.0]
model = "drift"

[material]
name = "InSb-like"
eps0 = 17.7
eps_inf = 15.7
omega0 = 3.4e13
nc_prefactor = 9.0e13
nv_prefactor = 1.4e15
gap_e0_ev = 0.235
gap_alpha_ev = 3.2e-4
gap_beta = 170.0
tau0_ps = 0.1
tau1_ps = 0.2
tau_c1 = 0.0
tau_c2 = -0.5
mass_ratio = 0.014
carrier_doubling = true
"#;

fn main() {
    let dir = std::env::temp_dir().join(format!("casimir-drift-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("insb.toml");
    std::fs::write(&path, CONFIG).unwrap();
    for command in ["materials", "energy"] {
        let code = cli::run(["casimir-drift", command, "--config", path.to_str().unwrap()]);
        println!("exit {code}");
    }
    std::fs::remove_dir_all(&dir).ok();
}
