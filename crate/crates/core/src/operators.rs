//! Truncated Jacobi and weighted Hankel matrices for the eleven tags,
//! and their commutator.

use std::fmt;
use std::str::FromStr;

use crate::carlitz::Family;
use crate::error::{domain, LabError, Result};
use crate::gamma::gamma_ratio;
use crate::hypergeo::gauss_2f1;
use crate::linalg::Mat;
use crate::quadrature::tanh_sinh;
use crate::recurrence::RecurrenceParams;

/// The eleven Hankel operators with closed-form spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    P,
    Q,
    R,
    S,
    F,
    G,
    Qp,
    Sp,
    Fp,
    Fpp,
    Gp,
}

impl Tag {
    pub const ALL: [Tag; 11] = [Tag::P, Tag::Q, Tag::R, Tag::S, Tag::F, Tag::G, Tag::Qp, Tag::Sp, Tag::Fp, Tag::Fpp, Tag::Gp];

    /// Command-line spelling.
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::P => "p",
            Tag::Q => "q",
            Tag::R => "r",
            Tag::S => "s",
            Tag::F => "f",
            Tag::G => "g",
            Tag::Qp => "qp",
            Tag::Sp => "sp",
            Tag::Fp => "fp",
            Tag::Fpp => "fpp",
            Tag::Gp => "gp",
        }
    }

    /// Polynomial family whose Jacobi matrix commutes with this Hankel matrix.
    pub fn family(self) -> Family {
        match self {
            Tag::P => Family::F3,
            Tag::Q | Tag::Qp => Family::F4,
            Tag::R => Family::F5,
            Tag::S | Tag::Sp => Family::F6,
            Tag::F | Tag::Fp | Tag::Fpp => Family::F1,
            Tag::G | Tag::Gp => Family::F2,
        }
    }

    /// Parameters (a, b, c) of the Jacobi class.
    pub fn abc(self) -> (f64, f64, f64) {
        match self {
            Tag::P | Tag::R => (-0.5, -0.5, 0.0),
            Tag::Q | Tag::S => (0.5, 0.5, 0.0),
            Tag::F => (0.0, 0.5, -0.5),
            Tag::G => (1.0, 0.5, 0.5),
            Tag::Qp | Tag::Sp => (0.0, 0.5, 0.5),
            Tag::Fp => (0.5, 0.0, -0.5),
            Tag::Fpp => (-0.5, 0.0, 0.5),
            Tag::Gp => (0.5, 0.5, 1.0),
        }
    }

    pub fn sigma(self, k: f64) -> f64 {
        let k2 = k * k;
        match self {
            Tag::P => 1.0 / (1.0 + k2),
            Tag::Q | Tag::Qp => (1.0 + 2.0 * k2) / (1.0 + k2),
            Tag::R => k2 / (1.0 + k2),
            Tag::S | Tag::Sp => (2.0 + k2) / (1.0 + k2),
            Tag::F | Tag::Fp | Tag::Fpp => 1.0,
            Tag::G | Tag::Gp => 2.0,
        }
    }

    /// First eigenvalue index (λ_0 = 0 is not an eigenvalue for s, g and their variants).
    pub fn m_start(self) -> usize {
        usize::from(matches!(self, Tag::S | Tag::G | Tag::Sp | Tag::Gp))
    }

    pub fn is_weighted(self) -> bool {
        let (a, b, c) = self.abc();
        !(a == b && c == 0.0)
    }

    /// Recurrence satisfied by the moments: ξ = a, η = b + c + 2.
    pub fn recurrence(self, k: f64) -> Result<RecurrenceParams> {
        let (a, b, c) = self.abc();
        RecurrenceParams::new(k, self.sigma(k), a, b + c + 2.0)
    }

    /// Moment h_n.
    pub fn moment(self, n: usize, k: f64) -> Result<f64> {
        Ok(k.powi(n as i32) * self.moment_over_kn(n, k)?)
    }

    /// k⁻ⁿ h_n, which stays of moderate size where h_n itself underflows.
    pub fn moment_over_kn(self, n: usize, k: f64) -> Result<f64> {
        let nf = n as f64;
        let z = k * k;
        let hyp = |g1: f64, g2: f64, a: f64, b: f64, c: f64| -> Result<f64> { Ok(gamma_ratio(nf + g1, nf + g2)? * gauss_2f1(nf + a, b, nf + c, z)?) };
        match self {
            Tag::P => hyp(0.5, 2.0, 0.5, 0.5, 2.0),
            Tag::Q => hyp(1.5, 2.0, 1.5, -0.5, 2.0),
            Tag::R => hyp(0.5, 1.0, 0.5, -0.5, 1.0),
            Tag::S => hyp(1.5, 3.0, 1.5, 0.5, 3.0),
            Tag::F => Ok(1.0 / (nf + 1.0)),
            Tag::G => Ok(1.0 / (nf + 2.0)),
            Tag::Qp => Ok((nf + 2.0 - (nf + 1.0) * z) / ((nf + 1.0) * (nf + 2.0))),
            Tag::Sp => Ok(1.0 / ((nf + 1.0) * (nf + 2.0))),
            Tag::Fp => hyp(1.5, 2.0, 1.5, 0.5, 2.0),
            Tag::Fpp => hyp(0.5, 2.0, 0.5, -0.5, 2.0),
            Tag::Gp => hyp(1.5, 3.0, 1.5, -0.5, 3.0),
        }
    }

    pub fn weight(self, n: usize) -> Result<f64> {
        let (a, b, c) = self.abc();
        weight_sequence(a, b, c, n)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self> {
        Tag::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| LabError::UnknownTag(s.to_string()))
    }
}

/// w_n = √((b+1)_n (c+1)_n / (n! (a+1)_n)), accumulated as a product of
/// ratios so neither overflow nor log-space rounding enters.
pub fn weight_sequence(a: f64, b: f64, c: f64, n: usize) -> Result<f64> {
    if a <= -1.0 || b <= -1.0 || c <= -1.0 {
        return domain(format!("weights need a, b, c > −1, got ({a}, {b}, {c})"));
    }
    if a == b && c == 0.0 {
        return Ok(1.0);
    }
    let mut w2 = 1.0;
    for j in 0..n {
        let j = j as f64;
        w2 *= (b + 1.0 + j) * (c + 1.0 + j) / ((j + 1.0) * (a + 1.0 + j));
    }
    Ok(w2.sqrt())
}

/// ω(a, σ) = (−2k² + (1+k²)(σ − a))/(1 − k²).
pub fn commuting_omega(a: f64, sigma: f64, k: f64) -> f64 {
    let k2 = k * k;
    (-2.0 * k2 + (1.0 + k2) * (sigma - a)) / (1.0 - k2)
}

/// Square-summable moments of a Hankel matrix commuting with the Jacobi
/// matrix of parameters (a, a, 0) and σ:
/// h_n = kⁿ Γ(n+a+1)/Γ(n+a+ω+1) 2F1(n+a+1, ω−1; n+a+ω+1; k²).
pub fn general_commuting_moments(a: f64, sigma: f64, k: f64, n: usize) -> Result<f64> {
    if a <= -1.0 || !(k > 0.0 && k < 1.0) {
        return domain("general moments need a > −1 and k in (0,1)");
    }
    let w = commuting_omega(a, sigma, k);
    let nf = n as f64;
    Ok(k.powi(n as i32) * gamma_ratio(nf + a + 1.0, nf + a + w + 1.0)? * gauss_2f1(nf + a + 1.0, w - 1.0, nf + a + w + 1.0, k * k)?)
}

/// The same moments from kⁿ/Γ(ω) ∫₀¹ t^{n+a} ((1−t)/(1−k²t))^{ω−1} dt.
pub fn general_commuting_moments_integral(a: f64, sigma: f64, k: f64, n: usize) -> Result<f64> {
    let w = commuting_omega(a, sigma, k);
    if w <= 0.0 {
        return domain("integral representation needs ω > 0");
    }
    let e = n as f64 + a;
    let k2 = k * k;
    let val = tanh_sinh(|t, dl, dr| dl.powf(e) * (dr / (1.0 - k2 * t)).powf(w - 1.0), 0.0, 1.0, 1e-14)?;
    Ok(k.powi(n as i32) / crate::gamma::gamma(w)? * val)
}

/// Symmetric tridiagonal truncation: diagonal β_0..β_{N−1}, off-diagonal α_0..α_{N−2}.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiOperator {
    pub tag: Option<Tag>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl JacobiOperator {
    pub fn size(&self) -> usize {
        self.beta.len()
    }

    /// Generic member α_n = −√((n+1)(n+a+1)(n+b+1)(n+c+1)), β_n = (k + 1/k) n (n + σ).
    pub fn from_abc(a: f64, b: f64, c: f64, sigma: f64, k: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return domain("Jacobi truncation needs N ≥ 2");
        }
        let alpha = (0..n - 1)
            .map(|j| {
                let j = j as f64;
                -((j + 1.0) * (j + a + 1.0) * (j + b + 1.0) * (j + c + 1.0)).sqrt()
            })
            .collect();
        let beta = (0..n).map(|j| (k + 1.0 / k) * j as f64 * (j as f64 + sigma)).collect();
        Ok(Self { tag: None, alpha, beta })
    }

    pub fn to_mat(&self) -> Mat {
        let n = self.size();
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                self.beta[i]
            } else if i.abs_diff(j) == 1 {
                self.alpha[i.min(j)]
            } else {
                0.0
            }
        })
    }
}

/// Tridiagonal truncation of J for `tag` as used in the diagonalization
/// (the family's recurrence data, i.e. 4k times the generic member plus a
/// constant). Variant tags reuse the base matrix.
pub fn build_jacobi(tag: Tag, k: f64, n: usize) -> Result<JacobiOperator> {
    if !(k > 0.0 && k < 1.0) {
        return domain(format!("k must lie in (0,1), got {k}"));
    }
    if n < 2 {
        return domain("Jacobi truncation needs N ≥ 2");
    }
    let fam = tag.family();
    Ok(JacobiOperator {
        tag: Some(tag),
        alpha: (0..n - 1).map(|j| fam.alpha(j, k)).collect(),
        beta: (0..n).map(|j| fam.beta(j, k)).collect(),
    })
}

/// H_{m,n} = w_m w_n h_{m+n}, m, n < N.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedHankelOperator {
    pub tag: Tag,
    pub k: f64,
    /// h_0 … h_{2N−2}
    pub h: Vec<f64>,
    /// w_0 … w_{N−1}
    pub w: Vec<f64>,
}

impl WeightedHankelOperator {
    pub fn size(&self) -> usize {
        self.w.len()
    }

    pub fn entry(&self, m: usize, n: usize) -> f64 {
        self.w[m] * self.w[n] * self.h[m + n]
    }

    pub fn to_mat(&self) -> Mat {
        let n = self.size();
        Mat::from_fn(n, n, |i, j| self.entry(i, j))
    }

    pub fn trace(&self) -> f64 {
        (0..self.size()).map(|n| self.entry(n, n)).sum()
    }

    /// Sum of all entries of the truncation.
    pub fn total_sum(&self) -> f64 {
        let n = self.size();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.entry(i, j)).sum()
    }
}

pub fn build_hankel(tag: Tag, k: f64, n: usize) -> Result<WeightedHankelOperator> {
    if !(k > 0.0 && k < 1.0) {
        return domain(format!("k must lie in (0,1), got {k}"));
    }
    if n < 2 {
        return domain("Hankel truncation needs N ≥ 2");
    }
    let h = (0..2 * n - 1).map(|j| tag.moment(j, k)).collect::<Result<Vec<_>>>()?;
    let w = (0..n).map(|j| tag.weight(j)).collect::<Result<Vec<_>>>()?;
    Ok(WeightedHankelOperator { tag, k, h, w })
}

/// max over m, n ≤ N−2 of |(HJ − JH)_{m,n}|; the last row and column are
/// excluded since truncation breaks the commutation there.
pub fn commutator_residual(h: &WeightedHankelOperator, j: &JacobiOperator) -> Result<f64> {
    let n = h.size();
    if j.size() != n {
        return Err(LabError::Dimension(format!("Hankel N = {n}, Jacobi N = {}", j.size())));
    }
    // (HJ)_{mn} = H_{m,n−1} α_{n−1} + H_{mn} β_n + H_{m,n+1} α_n
    let hj = |m: usize, c: usize| -> f64 {
        let mut v = h.entry(m, c) * j.beta[c];
        if c > 0 {
            v += h.entry(m, c - 1) * j.alpha[c - 1];
        }
        if c + 1 < n {
            v += h.entry(m, c + 1) * j.alpha[c];
        }
        v
    };
    let mut worst: f64 = 0.0;
    for m in 0..n.saturating_sub(1) {
        for c in 0..n.saturating_sub(1) {
            // (JH)_{mc} = (HJ)_{cm} by symmetry of both factors
            worst = worst.max((hj(m, c) - hj(c, m)).abs());
        }
    }
    Ok(worst)
}
