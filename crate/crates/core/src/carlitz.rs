//! The six Stieltjes-Carlitz polynomial families.
//!
//! Each family is stored through its orthonormal Jacobi data on the
//! positive axis: diagonal β_n > 0 and off-diagonal α_n < 0, so that
//!
//! P̂_{n+1}(x) = ((x − β_n) P̂_n(x) − α_{n−1} P̂_{n−1}(x)) / α_n,  P̂_0 = 1.
//!
//! For p, q, r, s the monic polynomials are P_n = (−1)ⁿ norm(n) P̂_n; for f
//! and g the monic polynomials in the original variable satisfy
//! P_n(−x) = norm(n) P̂_n(x).

use std::f64::consts::PI;

use crate::elliptic::EllipticContext;
use crate::error::{domain, LabError, Result};
use crate::hypergeo::{moment_e, moment_f};
use crate::quadrature::{integrate, richardson_doubling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::F1, Family::F2, Family::F3, Family::F4, Family::F5, Family::F6];

    /// Conventional letter of the family.
    pub fn letter(self) -> char {
        match self {
            Family::F1 => 'f',
            Family::F2 => 'g',
            Family::F3 => 'p',
            Family::F4 => 'q',
            Family::F5 => 'r',
            Family::F6 => 's',
        }
    }

    /// Diagonal β_n of the orthonormal recurrence.
    pub fn beta(self, n: usize, k: f64) -> f64 {
        let n = n as f64;
        let k2 = k * k;
        match self {
            Family::F1 => (k2 + 1.0) * (2.0 * n + 1.0).powi(2),
            Family::F2 => (k2 + 1.0) * (2.0 * n + 2.0).powi(2),
            Family::F3 => k2 * (2.0 * n).powi(2) + (2.0 * n + 1.0).powi(2),
            Family::F4 => (2.0 * n + 1.0).powi(2) + k2 * (2.0 * n + 2.0).powi(2),
            Family::F5 => (2.0 * n).powi(2) + k2 * (2.0 * n + 1.0).powi(2),
            Family::F6 => k2 * (2.0 * n + 1.0).powi(2) + (2.0 * n + 2.0).powi(2),
        }
    }

    /// Off-diagonal α_n (negative) of the orthonormal recurrence.
    pub fn alpha(self, n: usize, k: f64) -> f64 {
        let n = n as f64;
        -2.0 * k
            * match self {
                Family::F1 => (n + 1.0) * ((2.0 * n + 1.0) * (2.0 * n + 3.0)).sqrt(),
                Family::F2 => (2.0 * n + 3.0) * ((n + 1.0) * (n + 2.0)).sqrt(),
                Family::F3 | Family::F5 => (n + 1.0) * (2.0 * n + 1.0),
                Family::F4 | Family::F6 => (n + 1.0) * (2.0 * n + 3.0),
            }
    }

    /// Coefficient B_n in the monic recurrence P_{n+1} = (x − B_n) P_n − α²_{n−1} P_{n−1}.
    pub fn monic_b(self, n: usize, k: f64) -> f64 {
        match self {
            Family::F1 | Family::F2 => -self.beta(n, k),
            _ => self.beta(n, k),
        }
    }

    /// α²_{n−1}, the factor multiplying P_{n−1} (n ≥ 1).
    pub fn alpha_sq(self, n: usize, k: f64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        self.alpha(n - 1, k).powi(2)
    }

    /// ln of the orthonormalization divisor norm(n), e.g. kⁿ(2n)! for p.
    pub fn ln_norm(self, n: usize, k: f64) -> f64 {
        let nf = n as f64;
        let ln_fact = |m: usize| (1..=m).map(|j| (j as f64).ln()).sum::<f64>();
        nf * k.ln()
            + match self {
                Family::F1 => ln_fact(2 * n) + 0.5 * (2.0 * nf + 1.0).ln(),
                Family::F2 => ln_fact(2 * n + 1) + 0.5 * (nf + 1.0).ln(),
                Family::F3 | Family::F5 => ln_fact(2 * n),
                Family::F4 | Family::F6 => ln_fact(2 * n + 1),
            }
    }

    /// Sign relating the monic polynomial to P̂_n at the evaluation point.
    pub fn sign(self, n: usize) -> f64 {
        match self {
            Family::F1 | Family::F2 => 1.0,
            _ if n % 2 == 1 => -1.0,
            _ => 1.0,
        }
    }

    /// Whether the monic polynomial is evaluated at −x when matched with P̂_n(x).
    pub fn reflected(self) -> bool {
        matches!(self, Family::F1 | Family::F2)
    }

    /// Degree-n monic polynomial at x by forward recurrence.
    pub fn monic_eval(self, n: usize, x: f64, k: f64) -> Result<f64> {
        let mut prev = 0.0;
        let mut cur = 1.0;
        for j in 0..n {
            let next = (x - self.monic_b(j, k)) * cur - self.alpha_sq(j, k) * prev;
            prev = cur;
            cur = next;
            if !cur.is_finite() {
                return Err(LabError::Domain(format!("monic {} polynomial overflows at degree {}", self.letter(), j + 1)));
            }
        }
        Ok(cur)
    }

    /// P̂_0(x) … P̂_{len−1}(x) by forward recurrence.
    pub fn orthonormal_sequence(self, len: usize, x: f64, k: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(len);
        let mut prev = 0.0;
        let mut cur = 1.0;
        for n in 0..len {
            out.push(cur);
            let a_prev = if n == 0 { 0.0 } else { self.alpha(n - 1, k) };
            let next = ((x - self.beta(n, k)) * cur - a_prev * prev) / self.alpha(n, k);
            prev = cur;
            cur = next;
        }
        out
    }

    pub fn orthonormal_eval(self, n: usize, x: f64, k: f64) -> f64 {
        *self.orthonormal_sequence(n + 1, x, k).last().expect("len ≥ 1")
    }

    /// kⁿ P̂_n(x) for n < len, computed without forming P̂_n (which grows like k⁻ⁿ).
    pub fn scaled_sequence(self, len: usize, x: f64, k: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(len);
        let mut prev = 0.0;
        let mut cur = 1.0;
        for n in 0..len {
            out.push(cur);
            let a_prev = if n == 0 { 0.0 } else { self.alpha(n - 1, k) };
            let next = k * ((x - self.beta(n, k)) * cur - a_prev * k * prev) / self.alpha(n, k);
            prev = cur;
            cur = next;
        }
        out
    }

    /// The monic polynomial divided by its factorial, as it appears in the
    /// asymptotic statements: p_n(x)/(2n)!, q_n(x)/(2n+1)!, r_n(x)/(2n)!,
    /// s_n(x)/(2n+1)!, f_n(−x)/(2n)!, g_n(−x)/(2n+1)!.
    pub fn factorial_scaled(self, len: usize, x: f64, k: f64) -> Vec<f64> {
        self.scaled_sequence(len, x, k)
            .into_iter()
            .enumerate()
            .map(|(n, v)| {
                let nf = n as f64;
                match self {
                    Family::F1 => v * (2.0 * nf + 1.0).sqrt(),
                    Family::F2 => v * (nf + 1.0).sqrt(),
                    _ => self.sign(n) * v,
                }
            })
            .collect()
    }

    /// First index of the spectral measure (F2 has no point at λ = 0).
    pub fn m_start(self) -> usize {
        usize::from(self == Family::F2)
    }

    /// First index with positive orthonormality weight: for s the weight
    /// λ·μ vanishes at λ_0 = 0.
    pub fn weight_start(self) -> usize {
        usize::from(matches!(self, Family::F2 | Family::F6))
    }

    /// Spectral point λ_m and the mass of δ_{λ_m} in the family's measure.
    pub fn spectral_point(self, m: usize, ctx: &EllipticContext) -> Result<(f64, f64)> {
        let (k, kk, q) = (ctx.k, ctx.big_k, ctx.q);
        let mf = m as f64;
        Ok(match self {
            Family::F1 => {
                let lam = PI * PI * (2.0 * mf + 1.0).powi(2) / (4.0 * kk * kk);
                let mass = PI * PI / (kk * kk * k) * (2.0 * mf + 1.0) * q.powf(mf + 0.5) / (1.0 - q.powi(2 * m as i32 + 1));
                (lam, mass)
            }
            Family::F2 => {
                if m == 0 {
                    return Err(LabError::Index("the g measure starts at m = 1".into()));
                }
                let lam = PI * PI * mf * mf / (kk * kk);
                let mass = PI.powi(4) / (kk.powi(4) * k * k) * mf.powi(3) * q.powi(m as i32) / (1.0 - q.powi(2 * m as i32));
                (lam, mass)
            }
            Family::F3 | Family::F4 => {
                let lam = PI * PI * (2.0 * mf + 1.0).powi(2) / (4.0 * kk * kk);
                let mass = 2.0 * PI / (kk * k) * q.powf(mf + 0.5) / (1.0 + q.powi(2 * m as i32 + 1));
                (lam, mass)
            }
            Family::F5 | Family::F6 => {
                let lam = PI * PI * mf * mf / (kk * kk);
                // the point λ_0 = 0 carries half the generic weight, so that
                // the total mass is 1 (constant term of the dn expansion)
                let mass = if m == 0 { PI / (2.0 * kk) } else { 2.0 * PI / kk * q.powi(m as i32) / (1.0 + q.powi(2 * m as i32)) };
                (lam, mass)
            }
        })
    }

    /// Weight ρ_m of λ_m in the orthonormality relation of P̂: the mass
    /// itself, λ_m times the mass for q, and k⁻² λ_m times the mass for s.
    pub fn orthonormality_weight(self, m: usize, ctx: &EllipticContext) -> Result<f64> {
        let (lam, mass) = self.spectral_point(m, ctx)?;
        Ok(match self {
            Family::F4 => lam * mass,
            Family::F6 => lam * mass / (ctx.k * ctx.k),
            _ => mass,
        })
    }

    /// Σ_ℓ ρ_ℓ P̂_m(λ_ℓ) P̂_n(λ_ℓ), summed until both the mass tail
    /// q^M/(1−q) < 1e-12 and the summands are negligible.
    pub fn orthonormality_sum(self, m: usize, n: usize, ctx: &EllipticContext) -> Result<f64> {
        let deg = m.max(n) + 1;
        let mut sum = 0.0;
        let mut quiet = 0;
        let mut l = self.weight_start();
        loop {
            let w = self.orthonormality_weight(l, ctx)?;
            let (lam, _) = self.spectral_point(l, ctx)?;
            let p = self.orthonormal_sequence(deg, lam, ctx.k);
            let term = w * p[m] * p[n];
            sum += term;
            let tail_ok = ctx.q.powi(l as i32) / (1.0 - ctx.q) < 1e-12;
            quiet = if term.abs() < 1e-18 { quiet + 1 } else { 0 };
            if tail_ok && quiet >= 5 {
                return Ok(sum);
            }
            l += 1;
            if l > 100_000 {
                return Err(LabError::NonConvergence { what: "orthonormality sum", iterations: l });
            }
        }
    }

    /// N-term partial sum of the generating series at (x, u) and its closed form.
    ///
    /// p: Σ (−1)ⁿ p_n(x)/(2n)! sn^{2n} = cos(√x u)/cn u
    /// q: Σ (−1)ⁿ q_n(x)/(2n+1)! sn^{2n+1} = sin(√x u)/(√x dn u)
    /// r: Σ (−1)ⁿ r_n(x)/(2n)! sn^{2n} = cos(√x u)/dn u
    /// s: Σ (−1)ⁿ s_n(x)/(2n+1)! sn^{2n+1} = sin(√x u)/(√x cn u)
    /// f: Σ f_n(x)/(2n+1)! sn^{2n+1} = sinh(√x u)/√x
    /// g: Σ g_n(x)/(2n+1)! sn^{2n+1} = sinh(√x u)/(√x cn u dn u)
    pub fn generating_check(self, x: f64, u: f64, terms: usize, ctx: &EllipticContext) -> Result<(f64, f64)> {
        let (sn, cn, dn) = ctx.sn_cn_dn(u);
        if sn.abs() >= 1.0 {
            return domain("generating series needs |sn u| < 1");
        }
        let t = sn * sn;
        let (y, odd) = match self {
            Family::F1 | Family::F2 => (-x, true),
            Family::F3 | Family::F5 => (x, false),
            Family::F4 | Family::F6 => (x, true),
        };
        let coeffs = self.scaled_sequence(terms, y, ctx.k);
        let mut power = if odd { sn } else { 1.0 };
        let mut partial = 0.0;
        for (n, c) in coeffs.iter().enumerate() {
            let extra = match self {
                Family::F1 => 1.0 / (2.0 * n as f64 + 1.0).sqrt(),
                Family::F2 => (n as f64 + 1.0).sqrt(),
                _ => 1.0,
            };
            partial += c * extra * power;
            power *= t;
        }
        let closed = match self {
            Family::F1 => sin_sqrt(-x, u),
            Family::F2 => sin_sqrt(-x, u) / (cn * dn),
            Family::F3 => cos_sqrt(x, u) / cn,
            Family::F4 => sin_sqrt(x, u) / dn,
            Family::F5 => cos_sqrt(x, u) / dn,
            Family::F6 => sin_sqrt(x, u) / cn,
        };
        Ok((partial, closed))
    }

    /// The factorial-scaled value at degree n and the leading term of its
    /// large-n asymptotics.
    pub fn asymptotic_leading(self, n: usize, x: f64, ctx: &EllipticContext) -> Result<(f64, f64)> {
        if n < 2 {
            return domain("asymptotic comparison needs n ≥ 2");
        }
        let exact = self.factorial_scaled(n + 1, x, ctx.k)[n];
        let nf = n as f64;
        let sk = x.sqrt() * ctx.big_k;
        let kp2 = 1.0 - ctx.k * ctx.k;
        let alt = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let sp = PI.sqrt();
        let lead = match self {
            Family::F3 => alt * sk.cos() / (PI * nf).sqrt(),
            Family::F4 => alt * sk.cos() / (2.0 * kp2 * sp * nf.powf(1.5)),
            Family::F5 => -alt * x.sqrt() * sk.sin() / (2.0 * kp2 * sp * nf.powf(1.5)),
            Family::F6 => alt * sk.sin() / (x.sqrt() * (PI * nf).sqrt()),
            Family::F1 => sk.cos() / (PI * nf * kp2).sqrt(),
            Family::F2 => sk.sin() / (x.sqrt() * (PI * nf * kp2).sqrt()),
        };
        Ok((exact, lead))
    }

    /// The n-th term of the moment series whose sum equals an elliptic integral.
    fn moment_term(self, n: usize, scaled: f64, k: f64) -> Result<f64> {
        let nf = n as f64;
        Ok(match self {
            Family::F3 => moment_e(n, k)? * scaled,
            Family::F4 => moment_f(n + 1, k)? * scaled,
            Family::F5 => moment_f(n, k)? * scaled,
            Family::F6 => moment_e(n + 1, k)? * scaled,
            Family::F1 => {
                // (π/4) f_n(−x)/(4ⁿ n!(n+1)!)
                let c = crate::gamma::central_binomial_over_4n(n);
                PI / 4.0 * scaled * (2.0 * nf + 1.0).sqrt() * c / (nf + 1.0)
            }
            Family::F2 => {
                // (π/8) g_n(−x)/(4ⁿ n!(n+2)!)
                let c = crate::gamma::central_binomial_over_4n(n);
                PI / 8.0 * scaled * (nf + 1.0).sqrt() * c * (2.0 * nf + 1.0) / ((nf + 1.0) * (nf + 2.0))
            }
        })
    }

    /// Moment series (extrapolated in the number of terms) and the elliptic
    /// integral it should equal:
    ///
    /// p: Σ (−1)ⁿ E_n p_n/(2n)!        = ∫₀^K cos(√x u) cn u du
    /// q: Σ (−1)ⁿ F_{n+1} q_n/(2n+1)!  = ∫₀^K cos(√x u) cn u du
    /// r: Σ (−1)ⁿ F_n r_n/(2n)!        = ∫₀^K cos(√x u) dn u du
    /// s: Σ (−1)ⁿ E_{n+1} s_n/(2n+1)!  = −k′ sin(√x K)/(k²√x) + k⁻² ∫₀^K cos(√x u) dn u du
    /// f: (π/4) Σ f_n(−x)/(4ⁿ n!(n+1)!) = ∫₀^K cos(√x u) cn u du
    /// g: (π/8) Σ g_n(−x)/(4ⁿ n!(n+2)!) = −k′ sin(√x K)/(k²√x) + k⁻² ∫₀^K cos(√x u) dn u du
    pub fn moment_sum_identity(self, x: f64, ctx: &EllipticContext) -> Result<(f64, f64)> {
        let k = ctx.k;
        let levels = 6;
        let n0 = 250;
        let nmax = n0 << (levels - 1);
        let scaled = self.scaled_sequence(nmax, x, k);
        let mut partials = Vec::with_capacity(levels);
        let mut sum = 0.0;
        let mut next = n0;
        for (n, s) in scaled.iter().enumerate() {
            sum += self.moment_term(n, *s, k)?;
            if n + 1 == next {
                partials.push(sum);
                next *= 2;
            }
        }
        let series = richardson_doubling(&partials);
        let cos_cn = cos_integral(x, ctx, |_, c, _| c)?;
        let integral = match self {
            Family::F3 | Family::F4 | Family::F1 => cos_cn,
            Family::F5 => cos_integral(x, ctx, |_, _, d| d)?,
            Family::F6 | Family::F2 => {
                let cos_dn = cos_integral(x, ctx, |_, _, d| d)?;
                -ctx.kp * sin_sqrt(x, ctx.big_k) / (k * k) + cos_dn / (k * k)
            }
        };
        Ok((series, integral))
    }

    /// P̂_0(x) … P̂_{len−1}(x) for x a spectral point.
    ///
    /// At a point of the spectrum P̂_n(x) is the minimal solution of the
    /// recurrence, which forward evaluation cannot follow for long. The tail
    /// comes from backward (Miller) recurrence started far beyond `len`; the
    /// head up to the peak of |P̂_n| comes from forward recurrence, and the
    /// two are matched at the peak. Normalizing the backward run at n = 0
    /// instead would leave the first row of J unsatisfied: a one-ulp error
    /// in x moves y_1/y_0 by about ‖P̂‖² ulp.
    pub fn minimal_sequence(self, len: usize, x: f64, k: f64) -> Vec<f64> {
        let extra = ((1e-24f64).ln() / (2.0 * k.ln())).ceil() as usize + 16;
        let top = len + extra;
        let mut y = vec![0.0; top + 2];
        y[top] = 1e-280;
        for n in (1..=top).rev() {
            let v = ((x - self.beta(n, k)) * y[n] - self.alpha(n, k) * y[n + 1]) / self.alpha(n - 1, k);
            y[n - 1] = v;
            if v.abs() > 1e250 {
                y.iter_mut().for_each(|e| *e *= 1e-250);
            }
        }
        y.truncate(len);
        let peak = (0..len).max_by(|&a, &b| y[a].abs().total_cmp(&y[b].abs())).unwrap_or(0);
        let head = self.orthonormal_sequence(peak + 1, x, k);
        let s = head[peak] / y[peak];
        y.iter_mut().for_each(|e| *e *= s);
        y[..=peak].copy_from_slice(&head);
        y
    }

    /// Length of the leading stretch of the forward sequence P̂_n(x) that is
    /// insensitive to perturbing x by `rel_perturb` (relative, absolute
    /// when x = 0): entries whose two perturbed runs differ by more than
    /// `flag` relative to the local magnitude end the trusted range.
    pub fn forward_trusted_len(self, len: usize, x: f64, k: f64, rel_perturb: f64, flag: f64) -> usize {
        let dx = rel_perturb * x.abs().max(1.0);
        let a = self.orthonormal_sequence(len, x + dx, k);
        let b = self.orthonormal_sequence(len, x - dx, k);
        for n in 0..len {
            let scale = a[n].abs().max(b[n].abs()).max(if n > 0 { a[n - 1].abs() } else { 0.0 });
            if (a[n] - b[n]).abs() > flag * scale {
                return n;
            }
        }
        len
    }
}

/// sin(√x u)/√x, continued to x ≤ 0.
pub fn sin_sqrt(x: f64, u: f64) -> f64 {
    if x > 0.0 {
        let r = x.sqrt();
        (r * u).sin() / r
    } else if x < 0.0 {
        let r = (-x).sqrt();
        (r * u).sinh() / r
    } else {
        u
    }
}

/// cos(√x u), continued to x ≤ 0.
pub fn cos_sqrt(x: f64, u: f64) -> f64 {
    if x >= 0.0 {
        (x.sqrt() * u).cos()
    } else {
        ((-x).sqrt() * u).cosh()
    }
}

/// ∫₀^K cos(√x u) g(sn, cn, dn) du.
pub fn cos_integral(x: f64, ctx: &EllipticContext, g: impl Fn(f64, f64, f64) -> f64) -> Result<f64> {
    integrate(
        |u| {
            let (s, c, d) = ctx.sn_cn_dn(u);
            cos_sqrt(x, u) * g(s, c, d)
        },
        0.0,
        ctx.big_k,
        1e-15,
        1e-14,
    )
}

/// ∫₀^K sin(√x u)/√x · g(sn, cn, dn) du.
pub fn sin_integral(x: f64, ctx: &EllipticContext, g: impl Fn(f64, f64, f64) -> f64) -> Result<f64> {
    integrate(
        |u| {
            let (s, c, d) = ctx.sn_cn_dn(u);
            sin_sqrt(x, u) * g(s, c, d)
        },
        0.0,
        ctx.big_k,
        1e-15,
        1e-14,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(k: f64) -> EllipticContext {
        EllipticContext::new(k).unwrap()
    }

    #[test]
    fn low_degree_examples() {
        let k = 0.5;
        for fam in Family::ALL {
            assert_eq!(fam.monic_eval(0, 3.3, k).unwrap(), 1.0);
            assert_eq!(fam.orthonormal_eval(0, 3.3, k), 1.0);
        }
        assert!((Family::F3.monic_eval(1, 2.5, k).unwrap() - 1.5).abs() < 1e-15);
        assert!((Family::F1.monic_eval(1, 2.5, k).unwrap() - (2.5 + k * k + 1.0)).abs() < 1e-15);
        // p_2 by hand: (x − 4k² − 9)(x − 1) − 4k²
        let x = 2.5;
        let p2 = (x - 4.0 * k * k - 9.0) * (x - 1.0) - 4.0 * k * k;
        assert!((Family::F3.monic_eval(2, x, k).unwrap() - p2).abs() < 1e-13);
    }

    #[test]
    fn monic_orthonormal_consistency() {
        let k = 0.6;
        for fam in Family::ALL {
            for &x in &[0.3, 2.7, 11.0] {
                for n in 0..=20 {
                    let arg = if fam.reflected() { -x } else { x };
                    let monic = fam.monic_eval(n, arg, k).unwrap();
                    let from_on = fam.sign(n) * fam.ln_norm(n, k).exp() * fam.orthonormal_eval(n, x, k);
                    assert!(((from_on - monic) / monic).abs() < 1e-12, "{fam:?} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn monic_overflow_signalled() {
        assert!(Family::F4.monic_eval(200, 1.0, 0.5).is_err());
        assert!(Family::F4.orthonormal_eval(200, 1.0, 0.5).is_finite());
    }

    #[test]
    fn measure_examples() {
        let c = ctx(1e-7);
        let (lam, _) = Family::F3.spectral_point(2, &c).unwrap();
        assert!((lam - 25.0).abs() < 1e-9);
        let c = ctx(0.5);
        let (lam, mass) = Family::F5.spectral_point(0, &c).unwrap();
        assert_eq!(lam, 0.0);
        assert!((mass - PI / (2.0 * c.big_k)).abs() < 1e-15);
        let (_, mass) = Family::F1.spectral_point(0, &c).unwrap();
        let want = PI * PI / (c.big_k * c.big_k * 0.5) * c.q.sqrt() / (1.0 - c.q);
        assert!(((mass - want) / want).abs() < 1e-14);
        assert!(Family::F2.spectral_point(0, &c).is_err());
        for fam in Family::ALL {
            let pts: Vec<f64> = (fam.m_start()..fam.m_start() + 10).map(|m| fam.spectral_point(m, &c).unwrap().0).collect();
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn orthonormality_all_families() {
        for &k in &[0.5, 0.8] {
            let c = ctx(k);
            for fam in Family::ALL {
                for m in 0..=6 {
                    for n in 0..=m {
                        let s = fam.orthonormality_sum(m, n, &c).unwrap();
                        let want = if m == n { 1.0 } else { 0.0 };
                        assert!((s - want).abs() < 1e-8, "{fam:?} k={k} ({m},{n}): {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn dual_orthogonality() {
        let c = ctx(0.5);
        for fam in Family::ALL {
            let st = fam.weight_start();
            let seqs: Vec<Vec<f64>> = (st..st + 4).map(|l| fam.minimal_sequence(120, fam.spectral_point(l, &c).unwrap().0, c.k)).collect();
            for a in 0..4 {
                for b in 0..4 {
                    let s: f64 = seqs[a].iter().zip(&seqs[b]).map(|(x, y)| x * y).sum();
                    let wa = fam.orthonormality_weight(st + a, &c).unwrap();
                    let wb = fam.orthonormality_weight(st + b, &c).unwrap();
                    let scale = 1.0 / (wa * wb).sqrt();
                    let want = if a == b { 1.0 / wa } else { 0.0 };
                    assert!((s - want).abs() < 1e-6 * scale, "{fam:?} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn forward_and_backward_agree_where_trusted() {
        let c = ctx(0.5);
        for fam in Family::ALL {
            let (lam, _) = fam.spectral_point(fam.weight_start() + 1, &c).unwrap();
            let fwd = fam.orthonormal_sequence(40, lam, c.k);
            let bwd = fam.minimal_sequence(40, lam, c.k);
            let t = fam.forward_trusted_len(40, lam, c.k, 1e-9, 1e-6);
            assert!((2..40).contains(&t), "{fam:?} t={t}");
            for n in 0..t {
                assert!((fwd[n] - bwd[n]).abs() < 1e-6 * fwd[n].abs().max(1e-300).max(bwd[n].abs()), "{fam:?} n={n}");
            }
        }
    }

    #[test]
    fn generating_examples() {
        let c = ctx(0.5);
        for fam in Family::ALL {
            let (s, cl) = fam.generating_check(2.0, 0.0, 10, &c).unwrap();
            assert!((s - cl).abs() < 1e-15);
        }
        // sn(0.8K)² ≈ 0.92 at k = 0.5, so 40 terms leave a tail of ~1e-2;
        // 600 terms reach the tolerance
        let (s, cl) = Family::F3.generating_check(2.0, 0.8 * c.big_k, 600, &c).unwrap();
        assert!((s - cl).abs() < 1e-9, "{s} {cl}");
        let c3 = ctx(0.3);
        let (s, cl) = Family::F6.generating_check(1.0, 0.5 * c3.big_k, 40, &c3).unwrap();
        assert!((s - cl).abs() < 1e-10);
    }

    #[test]
    fn asymptotic_trend_f3() {
        let c = ctx(0.5);
        let mut prev = f64::INFINITY;
        for &n in &[50, 100, 200] {
            let (e, l) = Family::F3.asymptotic_leading(n, 1.5, &c).unwrap();
            let gap = (e / l - 1.0).abs();
            assert!(gap < prev);
            prev = gap;
        }
        // at a zero of cos(√x K) the n^{-1/2} term vanishes
        let x0 = (PI / (2.0 * c.big_k)).powi(2);
        let (e, _) = Family::F3.asymptotic_leading(200, x0, &c).unwrap();
        assert!(e.abs() * (200.0f64).sqrt() < 1e-2);
    }

    #[test]
    fn moment_identity_p() {
        let c = ctx(0.5);
        let (s, i) = Family::F3.moment_sum_identity(1.7, &c).unwrap();
        assert!((s - i).abs() < 1e-8, "{s} {i}");
    }
}
