//! Block-diagonal form of a random two-fermion coefficient matrix and the
//! entropy bounds ln 2 ≤ S₁ ≤ ln(2𝒩_f).

use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relqi::density::{block_diagonalize, entropy_from_blocks};

fn main() -> relqi::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in [4, 5, 8] {
        let mut c = DMatrix::<C>::zeros(d, d);
        for i in 0..d {
            for j in (i + 1)..d {
                let z = C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                c[(i, j)] = z;
                c[(j, i)] = -z;
            }
        }
        // 4Σ|c_k|² = 1 ⇔ ‖C‖²_F = 1/2
        let n = c.norm();
        c /= C::from(n * std::f64::consts::SQRT_2);
        let b = block_diagonalize(&c)?;
        let s = entropy_from_blocks(&b)?;
        println!(
            "d = {d}: |c_k| = {:?}, 𝒩_f = {}, residual {:.1e}, S₁ = {s:.6} ∈ [{:.6}, {:.6}]",
            b.c.iter()
                .map(|z| (z.norm() * 1e6).round() / 1e6)
                .collect::<Vec<_>>(),
            b.n_f,
            b.residual(&c),
            std::f64::consts::LN_2,
            (2.0 * b.n_f as f64).ln()
        );
    }
    Ok(())
}
