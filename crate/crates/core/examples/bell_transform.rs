//! SO(4) mixing of the Bell amplitudes for a centre-of-mass pair under a
//! perpendicular boost, and invariance of the singlet under rotations.

use nalgebra::Vector3;
use num_complex::Complex64 as C;
use relqi::bell::{conventional_map, transform_bell, BellVector};
use relqi::fock::MomentumGrid;
use relqi::lorentz::{boost_matrix, rotation_matrix, BoostParams, FourVector, RotationParams};

fn main() -> relqi::Result<()> {
    let grid = MomentumGrid::default();
    let m = 1.0;
    let p1 = FourVector::on_shell(m, Vector3::new(0.8, 0.0, 0.0))?;
    let p2 = FourVector::on_shell(m, Vector3::new(-0.8, 0.0, 0.0))?;

    for mu in 0..4 {
        let (label, phase) = conventional_map(mu)?;
        println!("B^{mu} = ({phase}) {}", label.label());
    }

    let one = [C::from(1.0), C::from(0.0), C::from(0.0), C::from(0.0)];
    let singlet = BellVector::new(p1, p2, (0, 0), (m, m), one, &grid)?;

    let rot = rotation_matrix(&RotationParams::new(
        1.1,
        Vector3::new(0.3, -0.5, 0.8).normalize(),
    )?);
    let t = transform_bell(&rot, &singlet, m, m)?;
    println!("singlet after rotation: {:?}", t.out.amps);

    let boost = boost_matrix(&BoostParams::new(1.5, Vector3::y())?);
    let t = transform_bell(&boost, &singlet, m, m)?;
    println!("R for a perpendicular boost:\n{:.6}", t.r.0);
    let (orth, det) = t.r.residuals();
    println!("|RᵀR − I| = {orth:.2e}, |det R − 1| = {det:.2e}");
    println!("amplitudes: {:?}", t.out.amps);

    // the same transformation on the Fock-space state
    let state = singlet.to_fock(&grid)?;
    let moved = relqi::fock::lorentz_transform_state(&boost, &state, |_| m, &grid)?;
    let back = BellVector::from_fock(&moved, t.out.p1, t.out.p2, (0, 0), &grid)?;
    let diff = (0..4)
        .map(|i| (back.amps[i] - t.out.amps[i]).norm())
        .fold(0.0, f64::max);
    println!("Fock-space route differs by {diff:.2e}");
    Ok(())
}
