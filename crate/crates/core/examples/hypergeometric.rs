//! Gauss 2F1, the quadratic identity, and the moments E_n, F_n.

use elliptic_hankel::hypergeo::{connection_rhs, gauss_2f1, moment_e, moment_f, quadratic_identity_check};
use elliptic_hankel::quadrature::integrate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 2F1(1,1;2;z) = −ln(1−z)/z
    for z in [0.1, 0.5, 0.9, -3.0] {
        let f = gauss_2f1(1.0, 1.0, 2.0, z)?;
        println!("2F1(1,1;2;{z}) = {f:.16}  closed {:.16}", -(1.0 - z).ln() / z);
    }

    println!("\nquadratic identity residuals");
    for (a, b, c, z) in [(0.3, 0.7, 0.4, 0.2), (1.1, -0.4, 1.6, -0.3), (0.5, 0.5, 0.8, 0.55)] {
        println!("  ({a}, {b}, {c}, {z}): {:.2e}", quadratic_identity_check(a, b, c, z)?);
    }

    let (a, b, c, z) = (0.3, 0.45, 1.2, 0.4);
    println!("\nconnection formula: 2F1(a,b;a+b−c+1;1−z) = {:.16}, via z: {:.16}", gauss_2f1(a, b, a + b - c + 1.0, 1.0 - z)?, connection_rhs(a, b, c, z)?);

    // E_n = ∫₀¹ t^{2n} √((1−t²)/(1−k²t²)) dt
    let k: f64 = 0.6;
    println!("\n n   E_n                    quadrature             F_n");
    for n in [0usize, 1, 5, 20] {
        let e = moment_e(n, k)?;
        let q = integrate(|t| t.powi(2 * n as i32) * ((1.0 - t * t) / (1.0 - k * k * t * t)).sqrt(), 0.0, 1.0, 1e-16, 1e-14)?;
        println!("{n:2}   {e:.16e}  {q:.16e}  {:.16e}", moment_f(n, k)?);
    }
    Ok(())
}
