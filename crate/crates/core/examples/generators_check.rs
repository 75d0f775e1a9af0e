//! Lorentz algebra of the momentum-space generators on a grid: commutator
//! residuals under refinement and the Hermiticity pairings.

use relqi::cli::{cmd_generators_check, GeneratorArgs, RunConfig};

fn main() {
    let levels = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let report = cmd_generators_check(&RunConfig::default(), &GeneratorArgs { levels })
        .expect("default grid is valid");
    print!("{}", report.to_csv().unwrap());
    let h = &report.data["hermiticity"];
    println!("Hermiticity residuals:");
    for k in [
        "with_term_flat",
        "without_term_invariant",
        "with_term_invariant",
        "without_term_flat",
    ] {
        println!("  {k:24} {:.3e}", h[k].as_f64().unwrap());
    }
    println!(
        "separation {:.1}",
        report.data["hermiticity_separation"].as_f64().unwrap()
    );
    println!("checks {:?}", report.checks);
}
