//! Complete elliptic integrals, the nome, and Jacobian elliptic functions.
//!
//! sn, cn, dn are computed by descending Landen/AGM recursion; the Fourier
//! expansions in the nome are provided as an independent route.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Modulus k together with the constants derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticContext {
    pub k: f64,
    /// complementary modulus √(1-k²)
    pub kp: f64,
    pub big_k: f64,
    pub big_k_prime: f64,
    pub big_e: f64,
    pub q: f64,
}

/// Returns (AGM(1, b), E/K factor) where the factor is 1 - Σ 2^{n-1} c_n², c_0 = c0.
fn agm_with_sum(b0: f64, c0: f64) -> (f64, f64) {
    let mut a = 1.0;
    let mut b = b0;
    let mut pow2 = 0.5;
    let mut sum = pow2 * c0 * c0;
    for _ in 0..64 {
        let c = 0.5 * (a - b);
        pow2 *= 2.0;
        sum += pow2 * c * c;
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        if c.abs() <= f64::EPSILON * a {
            break;
        }
    }
    (a, 1.0 - sum)
}

/// Complete elliptic integral of the first kind, K(k) = π / (2 AGM(1, k')).
pub fn complete_k(k: f64) -> f64 {
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    PI / (2.0 * agm_with_sum(kp, k).0)
}

impl EllipticContext {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0) {
            return domain(format!("modulus must lie in (0,1), got {k}"));
        }
        let kp = ((1.0 - k) * (1.0 + k)).sqrt();
        let (a, factor) = agm_with_sum(kp, k);
        let big_k = PI / (2.0 * a);
        let big_e = big_k * factor;
        let big_k_prime = PI / (2.0 * agm_with_sum(k, kp).0);
        let q = (-PI * big_k_prime / big_k).exp();
        Ok(Self { k, kp, big_k, big_k_prime, big_e, q })
    }

    /// (sn, cn, dn) at real argument u.
    pub fn sn_cn_dn(&self, u: f64) -> (f64, f64, f64) {
        let mut a = [0.0f64; 40];
        let mut c = [0.0f64; 40];
        a[0] = 1.0;
        let mut b = self.kp;
        c[0] = self.k;
        let mut n = 0;
        while c[n].abs() > f64::EPSILON * a[n] && n < 39 {
            a[n + 1] = 0.5 * (a[n] + b);
            c[n + 1] = 0.5 * (a[n] - b);
            b = (a[n] * b).sqrt();
            n += 1;
        }
        let mut phi = 2f64.powi(n as i32) * a[n] * u;
        for j in (1..=n).rev() {
            phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
        }
        let (sn, cn) = phi.sin_cos();
        let ks = self.k * sn;
        (sn, cn, ((1.0 - ks) * (1.0 + ks)).sqrt())
    }

    pub fn sn(&self, u: f64) -> f64 {
        self.sn_cn_dn(u).0
    }

    pub fn cn(&self, u: f64) -> f64 {
        self.sn_cn_dn(u).1
    }

    pub fn dn(&self, u: f64) -> f64 {
        self.sn_cn_dn(u).2
    }

    /// Right-hand sides of (sn, cn, dn)' = (cn dn, -sn dn, -k² sn cn).
    pub fn derivatives(&self, u: f64) -> (f64, f64, f64) {
        let (s, c, d) = self.sn_cn_dn(u);
        (c * d, -s * d, -self.k * self.k * s * c)
    }

    /// Smallest n with q^n/(1-q) < 1e-15, capped at 512.
    pub fn default_terms(&self) -> usize {
        terms_for_tolerance(self.q, 1e-15)
    }
}

fn terms_for_tolerance(q: f64, tol: f64) -> usize {
    let mut n = 1;
    while n < 512 && q.powi(n as i32) / (1.0 - q) >= tol {
        n += 1;
    }
    n
}

/// Which Fourier expansion to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierSeries {
    /// sn(2Kv/π)
    Sn,
    /// cn(2Kv/π)
    Cn,
    /// dn(Kv/π)
    Dn,
    /// sn²(Kv/π)
    Sn2,
    /// sn³(2Kv/π)
    Sn3,
}

impl FourierSeries {
    pub const ALL: [FourierSeries; 5] = [Self::Sn, Self::Cn, Self::Dn, Self::Sn2, Self::Sn3];

    /// Map v to the elliptic argument u used by this series.
    pub fn argument(self, v: f64, ctx: &EllipticContext) -> f64 {
        match self {
            Self::Sn | Self::Cn | Self::Sn3 => 2.0 * ctx.big_k * v / PI,
            Self::Dn | Self::Sn2 => ctx.big_k * v / PI,
        }
    }

    /// The same quantity through the AGM route.
    pub fn direct(self, v: f64, ctx: &EllipticContext) -> f64 {
        let (s, c, d) = ctx.sn_cn_dn(self.argument(v, ctx));
        match self {
            Self::Sn => s,
            Self::Cn => c,
            Self::Dn => d,
            Self::Sn2 => s * s,
            Self::Sn3 => s * s * s,
        }
    }
}

/// Partial Fourier sum with its geometric tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierValue {
    pub value: f64,
    pub terms: usize,
    /// q^terms / (1 - q)
    pub tail_bound: f64,
}

impl FourierValue {
    /// True when the tail bound exceeds `tol`, i.e. the caller asked for too few terms.
    pub fn warning(&self, tol: f64) -> bool {
        self.tail_bound > tol
    }
}

/// Coefficient of the n-th term of a Fourier expansion.
///
/// Sn, Cn, Sn3 expand in sin or cos of (2n+1)v; Dn and Sn2 in cos(nv), with
/// n = 0 giving the constant term.
pub fn fourier_coefficient(series: FourierSeries, n: usize, ctx: &EllipticContext) -> f64 {
    let (k, kk, q) = (ctx.k, ctx.big_k, ctx.q);
    match series {
        FourierSeries::Sn | FourierSeries::Cn | FourierSeries::Sn3 => {
            let m = (2 * n + 1) as f64;
            let qn = q.powi(n as i32) * q.sqrt();
            let q2 = q.powi(2 * n as i32 + 1);
            match series {
                FourierSeries::Sn => 2.0 * PI / (k * kk) * qn / (1.0 - q2),
                FourierSeries::Cn => 2.0 * PI / (k * kk) * qn / (1.0 + q2),
                _ => {
                    let f = 1.0 + k * k - m * m * PI * PI / (4.0 * kk * kk);
                    PI / (k * k * k * kk) * qn / (1.0 - q2) * f
                }
            }
        }
        FourierSeries::Dn => {
            if n == 0 {
                return PI / (2.0 * kk);
            }
            let qn = q.powi(n as i32);
            2.0 * PI / kk * qn / (1.0 + qn * qn)
        }
        FourierSeries::Sn2 => {
            if n == 0 {
                return (kk - ctx.big_e) / (k * k * kk);
            }
            let qn = q.powi(n as i32);
            -2.0 * PI * PI / (k * k * kk * kk) * n as f64 * qn / (1.0 - qn * qn)
        }
    }
}

/// Partial sum of the Fourier series `series` at v with `terms` terms
/// (`None` picks [`EllipticContext::default_terms`]).
pub fn fourier_eval(series: FourierSeries, v: f64, ctx: &EllipticContext, terms: Option<usize>) -> Result<FourierValue> {
    let terms = terms.unwrap_or_else(|| ctx.default_terms());
    if terms == 0 {
        return domain("fourier_eval needs at least one term");
    }
    let c = |n| fourier_coefficient(series, n, ctx);
    let value = match series {
        FourierSeries::Sn | FourierSeries::Sn3 => (0..terms).map(|n| c(n) * ((2 * n + 1) as f64 * v).sin()).sum(),
        FourierSeries::Cn => (0..terms).map(|n| c(n) * ((2 * n + 1) as f64 * v).cos()).sum(),
        FourierSeries::Dn | FourierSeries::Sn2 => c(0) + (1..=terms).map(|n| c(n) * (n as f64 * v).cos()).sum::<f64>(),
    };
    Ok(FourierValue { value, terms, tail_bound: ctx.q.powi(terms as i32) / (1.0 - ctx.q) })
}
