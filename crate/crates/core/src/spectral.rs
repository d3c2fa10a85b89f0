//! Closed-form spectra of the eleven Hankel operators, numerical spectra of
//! their truncations, multiplier functions and verification reports.

use std::f64::consts::PI;

use crate::carlitz::{cos_integral, sin_integral, Family};
use crate::elliptic::{fourier_coefficient, EllipticContext, FourierSeries};
use crate::error::{LabError, Result};
use crate::linalg::tridiagonal_eigenvalues;
use crate::quadrature::richardson_doubling;
use crate::operators::{build_hankel, build_jacobi, commutator_residual, JacobiOperator, Tag};

pub use crate::linalg::{dense_symmetric_eigen, SymmetricEigen};

fn check_index(tag: Tag, m: usize) -> Result<()> {
    if m < tag.m_start() {
        return Err(LabError::Index(format!("tag {tag} has no eigenvalue at m = {m}; λ_0 = 0 is not in its spectrum")));
    }
    Ok(())
}

/// ν_m, enumerated in descending order from `tag.m_start()`.
pub fn closed_eigenvalue(tag: Tag, ctx: &EllipticContext, m: usize) -> Result<f64> {
    check_index(tag, m)?;
    let (k, kk, q) = (ctx.k, ctx.big_k, ctx.q);
    let mf = m as f64;
    let sp = PI.sqrt();
    let odd = q.powf(mf + 0.5);
    let even = q.powi(m as i32);
    let q_odd = q.powi(2 * m as i32 + 1);
    let q_even = q.powi(2 * m as i32);
    Ok(match tag {
        Tag::P => 4.0 * sp / k * odd / (1.0 + q_odd),
        Tag::Q => 2.0 * sp / k * odd / (1.0 + q_odd),
        Tag::R => 2.0 * sp * even / (1.0 + q_even),
        Tag::S => 4.0 * sp / (k * k) * even / (1.0 + q_even),
        Tag::F => 4.0 / k * odd / (1.0 + q_odd),
        Tag::G => 8.0 / (k * k) * even / (1.0 + q_even),
        Tag::Qp => 2.0 * PI / (k * kk) * (2.0 * mf + 1.0) * odd / (1.0 - q_odd),
        Tag::Sp => 4.0 * PI / (k * k * kk) * mf * even / (1.0 - q_even),
        Tag::Fp => 4.0 * kk / (sp * k) * odd / ((2.0 * mf + 1.0) * (1.0 - q_odd)),
        Tag::Fpp => 2.0 * PI * sp / (k * kk) * (2.0 * mf + 1.0) * odd / (1.0 - q_odd),
        Tag::Gp => 2.0 * PI * sp / (k * k * kk) * mf * even / (1.0 - q_even),
    })
}

/// Spectral point λ_m of the commuting Jacobi matrix.
pub fn spectral_point(tag: Tag, ctx: &EllipticContext, m: usize) -> Result<f64> {
    check_index(tag, m)?;
    Ok(tag.family().spectral_point(m, ctx)?.0)
}

/// ‖Ψ_m‖² of the eigenvector with entries P̂_n(λ_m).
///
/// Variant tags share the eigenvectors of their base tag. For r at m = 0
/// the value is 2K/π (the λ_0 = 0 point carries half the generic mass).
pub fn norm_sq(tag: Tag, ctx: &EllipticContext, m: usize) -> Result<f64> {
    check_index(tag, m)?;
    let (k, kk, q) = (ctx.k, ctx.big_k, ctx.q);
    let mf = m as f64;
    let odd = q.powf(mf + 0.5);
    let even = q.powi(m as i32);
    let q_odd = q.powi(2 * m as i32 + 1);
    let q_even = q.powi(2 * m as i32);
    Ok(match tag {
        Tag::P => k * kk / (2.0 * PI) * (1.0 + q_odd) / odd,
        Tag::Q | Tag::Qp => 2.0 * k * kk.powi(3) / PI.powi(3) * (1.0 + q_odd) / ((2.0 * mf + 1.0).powi(2) * odd),
        Tag::R => {
            if m == 0 {
                2.0 * kk / PI
            } else {
                kk / (2.0 * PI) * (1.0 + q_even) / even
            }
        }
        Tag::S | Tag::Sp => k * k * kk.powi(3) / (2.0 * PI.powi(3)) * (1.0 + q_even) / (mf * mf * even),
        Tag::F | Tag::Fp | Tag::Fpp => k * kk * kk / (PI * PI) * (1.0 - q_odd) / ((2.0 * mf + 1.0) * odd),
        Tag::G | Tag::Gp => k * k * kk.powi(4) / PI.powi(4) * (1.0 - q_even) / (mf.powi(3) * even),
    })
}

/// Entries (Ψ_m)_0 … (Ψ_m)_{len−1} = P̂_n(λ_m) of the eigenvector belonging to ν_m.
#[derive(Debug, Clone)]
pub struct Eigvec {
    pub entries: Vec<f64>,
    /// leading entries that plain forward recurrence reproduces reliably
    pub forward_trusted: usize,
}

pub fn closed_eigvec(tag: Tag, ctx: &EllipticContext, m: usize, len: usize) -> Result<Eigvec> {
    let lam = spectral_point(tag, ctx, m)?;
    let fam = tag.family();
    Ok(Eigvec {
        entries: fam.minimal_sequence(len, lam, ctx.k),
        forward_trusted: fam.forward_trusted_len(len, lam, ctx.k, 1e-9, 1e-6),
    })
}

/// Single entry (Ψ_m)_n.
pub fn closed_eigvec_entry(tag: Tag, ctx: &EllipticContext, m: usize, n: usize) -> Result<f64> {
    Ok(closed_eigvec(tag, ctx, m, n + 1)?.entries[n])
}

/// Closed-form spectrum bundled with its elliptic context.
#[derive(Debug, Clone)]
pub struct ClosedFormSpectrum {
    pub tag: Tag,
    pub ctx: EllipticContext,
}

impl ClosedFormSpectrum {
    pub fn new(tag: Tag, k: f64) -> Result<Self> {
        Ok(Self { tag, ctx: EllipticContext::new(k)? })
    }

    pub fn m_start(&self) -> usize {
        self.tag.m_start()
    }

    pub fn eigenvalue(&self, m: usize) -> Result<f64> {
        closed_eigenvalue(self.tag, &self.ctx, m)
    }

    pub fn eigvec_entry(&self, m: usize, n: usize) -> Result<f64> {
        closed_eigvec_entry(self.tag, &self.ctx, m, n)
    }

    pub fn norm_sq(&self, m: usize) -> Result<f64> {
        norm_sq(self.tag, &self.ctx, m)
    }

    /// `count` eigenvalues starting from m_start, descending.
    pub fn eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        (self.m_start()..self.m_start() + count).map(|m| self.eigenvalue(m)).collect()
    }

    /// Σ ν_m over all m with q^m ≥ 1e-17.
    pub fn trace(&self) -> Result<f64> {
        let mut sum = 0.0;
        let mut m = self.m_start();
        while self.ctx.q.powi(m as i32) >= 1e-17 || m < self.m_start() + 2 {
            sum += self.eigenvalue(m)?;
            m += 1;
        }
        Ok(sum)
    }
}

/// Multiplier function h^(tag)(x) from its integral form over [0, K].
pub fn multiplier_function(tag: Tag, ctx: &EllipticContext, x: f64) -> Result<f64> {
    let (k, kk) = (ctx.k, ctx.big_k);
    let sp = PI.sqrt();
    let sinc_k = crate::carlitz::sin_sqrt(x, kk);
    let cos_cn = || cos_integral(x, ctx, |_, c, _| c);
    let cos_dn = || cos_integral(x, ctx, |_, _, d| d);
    let cos_sn2 = || cos_integral(x, ctx, |s, _, _| s * s);
    let sin_sn = || sin_integral(x, ctx, |s, _, _| s);
    Ok(match tag {
        Tag::P => 4.0 / sp * cos_cn()?,
        Tag::Q => 2.0 / sp * cos_cn()?,
        Tag::R => 2.0 / sp * cos_dn()?,
        Tag::S => 4.0 / (k * k * sp) * (cos_dn()? - ctx.kp * sinc_k),
        Tag::F => 4.0 / PI * cos_cn()?,
        Tag::G => 8.0 / (PI * k * k) * (cos_dn()? - ctx.kp * sinc_k),
        Tag::Qp => 4.0 / PI * sin_integral(x, ctx, |s, _, _| (1.0 + k * k) * s - 2.0 * k * k * s * s * s)?,
        Tag::Sp => 4.0 / PI * (sinc_k - cos_sn2()?),
        Tag::Fp => 2.0 / sp * sin_sn()?,
        Tag::Fpp => 4.0 / sp * (crate::carlitz::cos_sqrt(x, kk) + x * sin_sn()?),
        Tag::Gp => 2.0 / sp * (sinc_k - cos_sn2()?),
    })
}

/// The integral form of the multiplier function at x = λ_m, integrated
/// termwise against the Fourier series of the elliptic factor. At the
/// spectral points only one Fourier mode survives and the boundary terms
/// sin(√x K), cos(√x K) vanish exactly, so this avoids the cancellation a
/// quadrature at the rounded λ_m suffers (|h′(λ)| ulp(λ) is ~1e-14).
pub fn multiplier_at_spectral_point(tag: Tag, ctx: &EllipticContext, m: usize) -> Result<f64> {
    check_index(tag, m)?;
    let (k, kk) = (ctx.k, ctx.big_k);
    let sp = PI.sqrt();
    let half_integer = matches!(tag.family(), Family::F1 | Family::F3 | Family::F4);
    let a = if half_integer { (2 * m + 1) as f64 * PI / (2.0 * kk) } else { m as f64 * PI / kk };
    // ∫₀^K cos(a u) f(u) du and ∫₀^K sin(a u)/a f(u) du by orthogonality
    let cos_int = |f: FourierSeries| {
        let c = fourier_coefficient(f, m, ctx);
        if m == 0 && !half_integer {
            c * kk
        } else {
            c * kk / 2.0
        }
    };
    let sin_int = |f: FourierSeries| fourier_coefficient(f, m, ctx) * kk / (2.0 * a);
    Ok(match tag {
        Tag::P => 4.0 / sp * cos_int(FourierSeries::Cn),
        Tag::Q => 2.0 / sp * cos_int(FourierSeries::Cn),
        Tag::R => 2.0 / sp * cos_int(FourierSeries::Dn),
        Tag::S => 4.0 / (k * k * sp) * cos_int(FourierSeries::Dn),
        Tag::F => 4.0 / PI * cos_int(FourierSeries::Cn),
        Tag::G => 8.0 / (PI * k * k) * cos_int(FourierSeries::Dn),
        Tag::Qp => 4.0 / PI * ((1.0 + k * k) * sin_int(FourierSeries::Sn) - 2.0 * k * k * sin_int(FourierSeries::Sn3)),
        Tag::Sp => -4.0 / PI * cos_int(FourierSeries::Sn2),
        Tag::Fp => 2.0 / sp * sin_int(FourierSeries::Sn),
        Tag::Fpp => 4.0 / sp * a * a * sin_int(FourierSeries::Sn),
        Tag::Gp => -2.0 / sp * cos_int(FourierSeries::Sn2),
    })
}

/// Polynomial-series form Σ_{n<terms} H_{n,0} P̂_n(x).
///
/// H_{n,0} decays like kⁿ and P̂_n(x) grows like k⁻ⁿ, so each term is formed
/// as w_0 w_n (k⁻ⁿ h_n)(kⁿ P̂_n) to stay clear of underflow and overflow.
pub fn multiplier_series(tag: Tag, ctx: &EllipticContext, x: f64, terms: usize) -> Result<f64> {
    let p = tag.family().scaled_sequence(terms, x, ctx.k);
    let w0 = tag.weight(0)?;
    let mut sum = 0.0;
    for (n, pn) in p.iter().enumerate() {
        sum += w0 * tag.weight(n)? * tag.moment_over_kn(n, ctx.k)? * pn;
    }
    Ok(sum)
}

/// Series form extrapolated to infinitely many terms: away from the
/// spectrum the partial sums converge only like 1/n, so partial sums at
/// 25·2^j terms, j < 6, go through Richardson extrapolation.
pub fn multiplier_series_extrapolated(tag: Tag, ctx: &EllipticContext, x: f64) -> Result<f64> {
    let partials = (0..6).map(|j| multiplier_series(tag, ctx, x, 25 << j)).collect::<Result<Vec<_>>>()?;
    Ok(richardson_doubling(&partials))
}

/// Smallest `want` eigenvalues of a Jacobi truncation, ascending.
pub fn tridiagonal_eigen(j: &JacobiOperator, want: usize) -> Result<Vec<f64>> {
    let mut ev = tridiagonal_eigenvalues(&j.beta, &j.alpha)?;
    ev.truncate(want);
    Ok(ev)
}

/// Smallest `want` Jacobi eigenvalues at truncation n, alongside the same
/// at 2n (the doubling check).
pub fn jacobi_spectrum_doubled(tag: Tag, k: f64, n: usize, want: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let a = tridiagonal_eigen(&build_jacobi(tag, k, n)?, want)?;
    let b = tridiagonal_eigen(&build_jacobi(tag, k, 2 * n)?, want)?;
    Ok((a, b))
}

/// N = max(64, ⌈ln 1e-18 / ln k⌉).
pub fn default_truncation(k: f64) -> usize {
    ((1e-18f64).ln() / k.ln()).ceil().max(64.0) as usize
}

/// Tolerances and sizes for [`verify`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// truncation order; `None` picks [`default_truncation`]
    pub n: Option<usize>,
    /// number of eigenvalues compared, counted from m_start
    pub m_max: usize,
    /// relative tolerance for eigenvalues
    pub tol: f64,
    pub commutator_tol: f64,
    /// eigenvectors are checked for m < m_start + eigvec_count
    pub eigvec_count: usize,
    pub eigvec_tol: f64,
    pub trace_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { n: None, m_max: 8, tol: 1e-8, commutator_tol: 1e-8, eigvec_count: 6, eigvec_tol: 1e-6, trace_tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenRecord {
    pub m: usize,
    pub closed_form: f64,
    pub numeric: f64,
    pub rel_err: f64,
    /// ‖H_N Ψ − ν Ψ‖/(ν ‖Ψ‖), for the leading few m
    pub eigvec_residual: Option<f64>,
    /// partial ‖Ψ‖² over n < N relative to the closed norm, minus 1
    pub norm_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub tag: Tag,
    pub k: f64,
    pub truncation: usize,
    pub m_start: usize,
    pub records: Vec<EigenRecord>,
    pub commutator_residual: f64,
    pub trace_gap: f64,
    /// failed checks, by name; empty when everything passed
    pub failures: Vec<String>,
    pub pass: bool,
}

impl SpectralReport {
    fn fail(&mut self, what: String) {
        self.failures.push(what);
        self.pass = false;
    }
}

/// Run every check for one (tag, k). Failures are recorded, never thrown.
pub fn verify(tag: Tag, k: f64, config: &VerifyConfig) -> SpectralReport {
    let truncation = config.n.unwrap_or_else(|| default_truncation(k));
    let mut rep = SpectralReport {
        tag,
        k,
        truncation,
        m_start: tag.m_start(),
        records: Vec::new(),
        commutator_residual: f64::NAN,
        trace_gap: f64::NAN,
        failures: Vec::new(),
        pass: true,
    };
    if let Err(e) = verify_into(&mut rep, config) {
        rep.fail(format!("error: {e}"));
    }
    rep
}

fn verify_into(rep: &mut SpectralReport, config: &VerifyConfig) -> Result<()> {
    let (tag, k, n) = (rep.tag, rep.k, rep.truncation);
    let spec = ClosedFormSpectrum::new(tag, k)?;
    let h = build_hankel(tag, k, n)?;
    let j = build_jacobi(tag, k, n)?;

    rep.commutator_residual = commutator_residual(&h, &j)?;
    if !(rep.commutator_residual < config.commutator_tol) {
        rep.fail(format!("commutator residual {:e}", rep.commutator_residual));
    }

    let mat = h.to_mat();
    let dense = dense_symmetric_eigen(&mat, config.m_max)?;
    for (i, &numeric) in dense.values.iter().enumerate() {
        let m = spec.m_start() + i;
        let closed = spec.eigenvalue(m)?;
        let rel_err = ((numeric - closed) / closed).abs();
        let (mut eigvec_residual, mut norm_gap) = (None, None);
        if i < config.eigvec_count {
            let psi = closed_eigvec(tag, &spec.ctx, m, n)?.entries;
            let hp = mat.matvec(&psi);
            let num: f64 = hp.iter().zip(&psi).map(|(a, b)| (a - closed * b).powi(2)).sum::<f64>().sqrt();
            let partial: f64 = psi.iter().map(|x| x * x).sum();
            let r = num / (closed * partial.sqrt());
            let g = partial / spec.norm_sq(m)? - 1.0;
            if !(r < config.eigvec_tol) {
                rep.fail(format!("eigenvector residual m={m}: {r:e}"));
            }
            if !(g.abs() < config.eigvec_tol) {
                rep.fail(format!("eigenvector norm m={m}: {g:e}"));
            }
            eigvec_residual = Some(r);
            norm_gap = Some(g);
        }
        if !(rel_err < config.tol) {
            rep.fail(format!("eigenvalue m={m}: rel err {rel_err:e}"));
        }
        rep.records.push(EigenRecord { m, closed_form: closed, numeric, rel_err, eigvec_residual, norm_gap });
    }

    rep.trace_gap = (h.trace() - spec.trace()?).abs();
    if !(rep.trace_gap < config.trace_tol) {
        rep.fail(format!("trace gap {:e}", rep.trace_gap));
    }
    Ok(())
}
