//! Smallest eigenvalues of the Jacobi truncations by implicit QL, with the
//! doubling check, against the spectral points λ_m.

use elliptic_hankel::elliptic::EllipticContext;
use elliptic_hankel::operators::Tag;
use elliptic_hankel::spectral::jacobi_spectrum_doubled;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = 0.5;
    let c = EllipticContext::new(k)?;
    for t in [Tag::F, Tag::G, Tag::P, Tag::Q, Tag::R, Tag::S] {
        let (a, b) = jacobi_spectrum_doubled(t, k, 300, 5)?;
        print!("{} ({}):", t.as_str(), t.family().letter());
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            // J for s has no eigenvalue at λ_0 = 0
            let m = i + t.family().weight_start();
            let lam = t.family().spectral_point(m, &c)?.0;
            let gap = if lam == 0.0 { x.abs() } else { ((x - lam) / lam).abs() };
            print!("  λ_{m} {x:.8} ({gap:.0e}, {:.0e})", (x - y).abs());
        }
        println!();
    }
    Ok(())
}
