//! The six Stieltjes-Carlitz families: recurrences, discrete measures,
//! orthonormality, generating functions, and the moment-sum identities.

use elliptic_hankel::carlitz::Family;
use elliptic_hankel::elliptic::EllipticContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = EllipticContext::new(0.5)?;
    for fam in Family::ALL {
        let m0 = fam.m_start();
        let (lam, mass) = fam.spectral_point(m0 + 1, &c)?;
        let g = fam.orthonormality_sum(2, 2, &c)?;
        let o = fam.orthonormality_sum(1, 3, &c)?;
        println!("{}: λ_{} = {lam:.10}, mass {mass:.6e}; Σρ P̂₂² = {g:.14}, Σρ P̂₁P̂₃ = {o:.1e}", fam.letter(), m0 + 1);
    }

    println!("\ngenerating functions at x = 2, u = 0.4 (80 terms)");
    for fam in Family::ALL {
        let (s, closed) = fam.generating_check(2.0, 0.4, 80, &c)?;
        println!("  {}: series {s:.15}, closed {closed:.15}", fam.letter());
    }

    println!("\nmoment series vs elliptic integral at x = 1.3");
    for fam in Family::ALL {
        let (s, i) = fam.moment_sum_identity(1.3, &c)?;
        println!("  {}: {s:.14} {i:.14}", fam.letter());
    }

    println!("\nasymptotic ratio of p at x = 1.3");
    for n in [50usize, 100, 200, 300] {
        let (v, lead) = Family::F3.asymptotic_leading(n, 1.3, &c)?;
        println!("  n = {n}: {:.6}", v / lead);
    }
    Ok(())
}
