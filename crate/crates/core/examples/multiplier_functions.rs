//! Multiplier functions h(x): integral form over [0, K], the polynomial
//! series form, and their values at the spectral points.

use elliptic_hankel::elliptic::EllipticContext;
use elliptic_hankel::operators::Tag;
use elliptic_hankel::spectral::{closed_eigenvalue, multiplier_at_spectral_point, multiplier_function, multiplier_series, multiplier_series_extrapolated, spectral_point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = EllipticContext::new(0.5)?;
    println!("tag   h(3.7) integral      series (60 terms)   series (extrapolated)   max rel gap to ν_m, m ≤ 6: Fourier, quadrature");
    for t in Tag::ALL {
        let i = multiplier_function(t, &c, 3.7)?;
        let s60 = multiplier_series(t, &c, 3.7, 60)?;
        let sx = multiplier_series_extrapolated(t, &c, 3.7)?;
        let (mut fourier, mut quad): (f64, f64) = (0.0, 0.0);
        for m in t.m_start()..=6 {
            let nu = closed_eigenvalue(t, &c, m)?;
            fourier = fourier.max(((multiplier_at_spectral_point(t, &c, m)? - nu) / nu).abs());
            quad = quad.max(((multiplier_function(t, &c, spectral_point(t, &c, m)?)? - nu) / nu).abs());
        }
        println!("{:<4}  {i:+.15}  {s60:+.15}  {sx:+.15}  {fourier:.1e}  {quad:.1e}", t.as_str());
    }
    Ok(())
}
