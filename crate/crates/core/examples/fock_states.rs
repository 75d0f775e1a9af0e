//! Creation operators, anticommutation signs and a boosted two-particle state.

use nalgebra::Vector3;
use num_complex::Complex64 as C;
use relqi::fock::{annihilate, create, inner_product, FockState, Mode, MomentumGrid, Spin};
use relqi::lorentz::{boost_matrix, BoostParams};

fn main() -> relqi::Result<()> {
    let a = Mode::new(Vector3::new(0.2, 0.0, 0.0), Spin::Up, 0)?;
    let b = Mode::new(Vector3::new(-0.2, 0.1, 0.0), Spin::Down, 0)?;

    let ab = create(&create(&FockState::vacuum(), &b), &a);
    let ba = create(&create(&FockState::vacuum(), &a), &b);
    println!("a†a†: ⟨ab|ba⟩ = {}", inner_product(&ab, &ba));
    println!(
        "a†a† on the same mode is zero: {}",
        create(&create(&FockState::vacuum(), &a), &a).is_zero()
    );
    println!(
        "a(a) a†(a)|0⟩ = {:?}",
        annihilate(&create(&FockState::vacuum(), &a), &a)
            .terms()
            .collect::<Vec<_>>()
    );

    let psi = ab
        .add(&FockState::from_modes(&[
            a.with_spin(Spin::Down),
            b.with_spin(Spin::Up),
        ]))
        .scale(C::from(std::f64::consts::FRAC_1_SQRT_2));
    println!("{}", psi.to_json()?);

    let grid = MomentumGrid::default();
    let l = boost_matrix(&BoostParams::new(0.9, Vector3::z())?);
    let moved = relqi::fock::lorentz_transform_state(&l, &psi, |_| 1.0, &grid)?;
    println!(
        "after the boost: {} terms, norm {:.15}",
        moved.len(),
        moved.norm()
    );
    for m in moved.modes() {
        println!(
            "  p = {:?} spin {}",
            m.momentum().as_slice(),
            m.spin().symbol()
        );
    }
    Ok(())
}
