//! Complete integrals, the nome, and sn/cn/dn from the AGM against their
//! Fourier series.

use elliptic_hankel::elliptic::{fourier_eval, EllipticContext, FourierSeries};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in [0.3, 0.5, 0.8, 0.9] {
        let c = EllipticContext::new(k)?;
        println!("k = {k}: K = {:.15}, K' = {:.15}, E = {:.15}, q = {:.6e}", c.big_k, c.big_k_prime, c.big_e, c.q);
    }

    let c = EllipticContext::new(0.8)?;
    let u = 0.7;
    let (sn, cn, dn) = c.sn_cn_dn(u);
    println!("\nsn, cn, dn at u = {u}: {sn:.15} {cn:.15} {dn:.15}");
    println!("sn² + cn² − 1 = {:e}", sn * sn + cn * cn - 1.0);
    println!("dn² + k²sn² − 1 = {:e}", dn * dn + c.k * c.k * sn * sn - 1.0);

    let v = u * std::f64::consts::PI / (2.0 * c.big_k);
    for s in FourierSeries::ALL {
        let f = fourier_eval(s, v, &c, None)?;
        let d = s.direct(v, &c);
        println!("{s:?}: series {:.15} ({} terms), AGM {:.15}, gap {:.1e}", f.value, f.terms, d, (f.value - d).abs());
    }
    Ok(())
}
