//! Both worked examples, from the coefficient matrix to the entropy.

use relqi::cli::{cmd_entropy_demo, RunConfig};

fn main() {
    let report = cmd_entropy_demo(&RunConfig::default()).expect("demo inputs are valid");
    for case in ["unentangled", "bell_b0"] {
        let c = &report.data[case];
        println!("{case}: expected {}", c["expected"]);
        println!("  spectrum {}", c["spectrum"]);
        for (route, v) in c["routes"].as_object().unwrap() {
            println!(
                "  {route:22} {:.15}  (residual {:.1e})",
                v["value"].as_f64().unwrap(),
                v["residual"].as_f64().unwrap()
            );
        }
    }
    println!("all checks pass: {}", report.pass);
}
