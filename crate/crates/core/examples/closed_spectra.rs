//! Closed-form eigenvalues and eigenvectors against a dense Jacobi-rotation
//! diagonalization of the truncated matrices.

use elliptic_hankel::operators::{build_hankel, Tag};
use elliptic_hankel::spectral::{closed_eigvec, default_truncation, dense_symmetric_eigen, ClosedFormSpectrum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = 0.8;
    let n = default_truncation(k);
    println!("k = {k}, N = {n}");
    for t in Tag::ALL {
        let spec = ClosedFormSpectrum::new(t, k)?;
        let h = build_hankel(t, k, n)?;
        let mat = h.to_mat();
        let dense = dense_symmetric_eigen(&mat, 8)?;
        let closed = spec.eigenvalues(8)?;
        let worst = dense.values.iter().zip(&closed).map(|(a, b)| ((a - b) / b).abs()).fold(0.0, f64::max);

        let m = spec.m_start() + 3;
        let nu = spec.eigenvalue(m)?;
        let psi = closed_eigvec(t, &spec.ctx, m, n)?.entries;
        let hp = mat.matvec(&psi);
        let res = hp.iter().zip(&psi).map(|(a, b)| (a - nu * b).powi(2)).sum::<f64>().sqrt();
        let norm2: f64 = psi.iter().map(|x| x * x).sum();
        println!(
            "{:<4} ν_{} = {:.6e}  top-8 worst rel err {worst:.1e}  eigvec residual m={m}: {:.1e}  ‖Ψ‖² gap {:.1e}  trace gap {:.1e}",
            t.as_str(),
            spec.m_start(),
            closed[0],
            res / (nu * norm2.sqrt()),
            norm2 / spec.norm_sq(m)? - 1.0,
            (h.trace() - spec.trace()?).abs()
        );
    }
    Ok(())
}
