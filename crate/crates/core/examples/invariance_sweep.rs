//! Seeded sweep: entropy of the one-particle reduction before and after U(Λ).

use relqi::cli::{cmd_invariance_sweep, RunConfig, SweepArgs};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2024);
    let cfg = RunConfig {
        seed,
        ..RunConfig::default()
    };
    let args = SweepArgs {
        n_samples: 100,
        max_rapidity: 3.0,
    };
    let report = cmd_invariance_sweep(&cfg, &args).expect("sweep inputs are valid");
    print!("{}", report.to_csv().unwrap());
    eprintln!(
        "max |ΔS₁| = {:.3e}, max |Δλ| = {:.3e}",
        report.data["max_delta_entropy"].as_f64().unwrap(),
        report.data["max_delta_spectrum"].as_f64().unwrap()
    );
}
