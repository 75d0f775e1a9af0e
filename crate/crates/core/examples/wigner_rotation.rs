//! Wigner rotation of a boost followed by a rotation, computed in closed form and
//! by direct matrix products, plus the first-order angle for a small ω.

use nalgebra::{Matrix4, Vector3};
use relqi::lorentz::{boost_matrix, rotation_matrix, BoostParams, FourVector, RotationParams};
use relqi::wigner::{wigner_finite, wigner_infinitesimal, wigner_oracle, WignerRotation};

fn main() -> relqi::Result<()> {
    let mass = 1.0;
    let p = FourVector::on_shell(mass, Vector3::new(0.3, 0.4, -0.2))?;

    let boost = BoostParams::new(1.2, Vector3::x())?;
    let rot = RotationParams::new(0.5, Vector3::z())?;
    let l = rotation_matrix(&rot) * boost_matrix(&boost);

    let w = wigner_finite(&l, &p, mass)?;
    let oracle = WignerRotation::from_little_group(&wigner_oracle(&l, &p, mass)?);
    println!(
        "closed form  angle {:.12}  axis {:?}",
        w.angle(),
        w.axis().as_slice()
    );
    println!(
        "oracle       angle {:.12}  axis {:?}",
        oracle.angle(),
        oracle.axis().as_slice()
    );
    println!("SO(3) residual {:.3e}", w.so3_distance(&oracle));
    println!("D(W) =\n{:.6}", w.su2());

    // a pure rotation is its own Wigner rotation
    let r = rotation_matrix(&RotationParams::new(0.7, Vector3::z())?);
    let wr = wigner_finite(&r, &p, mass)?;
    println!(
        "pure rotation: angle {:.12} about {:?}",
        wr.angle(),
        wr.axis().as_slice()
    );

    // infinitesimal: θ_W = θ − p×τ/(p⁰+m)
    let mut omega = Matrix4::zeros();
    let eps = 1e-4;
    omega[(0, 1)] = eps;
    omega[(1, 0)] = -eps;
    omega[(1, 2)] = 0.5 * eps;
    omega[(2, 1)] = -0.5 * eps;
    let lin = wigner_infinitesimal(&omega, &p, mass)?;
    let exact = wigner_finite(
        &relqi::lorentz::LorentzMatrix::exp_algebra(&omega)?,
        &p,
        mass,
    )?;
    println!(
        "first order {:?}\nexact       {:?}",
        lin.0.as_slice(),
        exact.angle_vector().0.as_slice()
    );
    Ok(())
}
