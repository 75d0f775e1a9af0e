//! Entropy as a zeta-function derivative, for a few α and a tabulated ζ.

use relqi::zeta::{
    direct_entropy, entropy_via_alpha, entropy_via_inverse_zeta_at_one,
    entropy_via_zeta_at_minus_one, zeta_table, zeta_table_csv, ZetaSpectrum,
};

fn main() -> relqi::Result<()> {
    let spec = ZetaSpectrum::new(&[0.4, 0.3, 0.2, 0.1, 0.0])?;
    println!("−Σλ ln λ           {:.15}", direct_entropy(&spec));
    println!(
        "ζ_ρ′(−1)           {:.15}",
        entropy_via_zeta_at_minus_one(&spec)
    );
    println!(
        "−ζ_ρ⁻¹′(1)         {:.15}",
        entropy_via_inverse_zeta_at_one(&spec)
    );
    for a in [-2.0, -0.5, 0.5, 2.0] {
        println!("α = {a:>4}           {:.15}", entropy_via_alpha(&spec, a)?);
    }
    let s: Vec<f64> = (-8..=8).map(|k| k as f64 * 0.25).collect();
    print!("{}", zeta_table_csv(&zeta_table(&spec, &s))?);
    Ok(())
}
