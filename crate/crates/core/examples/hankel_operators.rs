//! Weighted Hankel matrices of the eleven tags, the commuting Jacobi
//! matrices, and the commutator residual.

use elliptic_hankel::operators::{build_hankel, build_jacobi, commutator_residual, general_commuting_moments, general_commuting_moments_integral, Tag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = 0.5;
    println!("tag   (a, b, c)            H_00              H_01              [H, J] on N = 128");
    for t in Tag::ALL {
        let h = build_hankel(t, k, 128)?;
        let j = build_jacobi(t, k, 128)?;
        println!("{:<4}  {:<20} {:.15}  {:.15}  {:.1e}", t.as_str(), format!("{:?}", t.abc()), h.entry(0, 0), h.entry(0, 1), commutator_residual(&h, &j)?);
    }

    let mut h = build_hankel(Tag::F, k, 64)?;
    h.w[3] *= 1.01;
    println!("\nf with w_3 scaled by 1.01: residual {:.2e}", commutator_residual(&h, &build_jacobi(Tag::F, k, 64)?)?);

    let sigma = 1.0 / (1.0 + k * k);
    println!("\ngeneric moments for a = −1/2, σ = 1/(1+k²)");
    for n in [0usize, 3, 10] {
        let a = general_commuting_moments(-0.5, sigma, k, n)?;
        let b = general_commuting_moments_integral(-0.5, sigma, k, n)?;
        println!("  n = {n}: 2F1 form {a:.15e}, integral {b:.15e}");
    }
    Ok(())
}
