//! Three-term recurrences with linear coefficients,
//!
//! (k + 1/k)(n + σ) h_n − (n + ξ) h_{n−1} − (n + η) h_{n+1} = 0,
//!
//! their hypergeometric solution basis, the square-summable solution h⁺,
//! and a fixed-point oracle for the minimal solution built from the
//! matrices L, G and R.

use crate::error::{domain, LabError, Result};
use crate::gamma::gamma_ratio;
use crate::hypergeo::gauss_2f1;
use crate::linalg::{lu_solve, Mat};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceParams {
    pub k: f64,
    pub sigma: f64,
    pub xi: f64,
    pub eta: f64,
}

fn is_integer(x: f64) -> bool {
    x == x.round()
}

impl RecurrenceParams {
    pub fn new(k: f64, sigma: f64, xi: f64, eta: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0) {
            return domain(format!("k must lie in (0,1), got {k}"));
        }
        Ok(Self { k, sigma, xi, eta })
    }

    /// ω = (−ξ − k²η + (1+k²)σ)/(1−k²).
    pub fn omega(&self) -> f64 {
        let k2 = self.k * self.k;
        (-self.xi - k2 * self.eta + (1.0 + k2) * self.sigma) / (1.0 - k2)
    }

    /// Left-hand side of the recurrence at index n for the triple
    /// (h_{n−1}, h_n, h_{n+1}).
    pub fn residual(&self, n: usize, prev: f64, cur: f64, next: f64) -> f64 {
        let nf = n as f64;
        (self.k + 1.0 / self.k) * (nf + self.sigma) * cur - (nf + self.xi) * prev - (nf + self.eta) * next
    }

    /// h_{n−1} from h_n and h_{n+1}.
    pub fn descend(&self, n: usize, cur: f64, next: f64) -> Result<f64> {
        let nf = n as f64;
        let d = nf + self.xi;
        if d == 0.0 {
            return domain(format!("descending step divides by n + ξ = 0 at n = {n}"));
        }
        Ok(((self.k + 1.0 / self.k) * (nf + self.sigma) * cur - (nf + self.eta) * next) / d)
    }
}

/// (h^I_n, h^II_n):
/// h^I_n = kⁿ 2F1(n+η, ω; η−ξ; 1−k²),
/// h^II_n = kⁿ Γ(n+ξ+1)/Γ(n+η) 2F1(n+ξ+1, ω+ξ−η+1; ξ−η+2; 1−k²).
pub fn solution_basis(p: &RecurrenceParams, n: usize) -> Result<(f64, f64)> {
    if is_integer(p.xi - p.eta) {
        return domain("solution basis needs ξ − η outside the integers");
    }
    let nf = n as f64;
    let w = p.omega();
    let z = (1.0 - p.k) * (1.0 + p.k);
    let kn = p.k.powi(n as i32);
    let h1 = kn * gauss_2f1(nf + p.eta, w, p.eta - p.xi, z)?;
    let h2 = kn * gamma_ratio(nf + p.xi + 1.0, nf + p.eta)? * gauss_2f1(nf + p.xi + 1.0, w + p.xi - p.eta + 1.0, p.xi - p.eta + 2.0, z)?;
    Ok((h1, h2))
}

/// Closed form of h^II_{n+1} h^I_n − h^I_{n+1} h^II_n:
/// Γ(n+ξ+1)/Γ(n+η+1) (ξ−η+1) k^{−2ξ−2ω−1}.
pub fn wronskian_formula(p: &RecurrenceParams, n: usize) -> Result<f64> {
    let nf = n as f64;
    Ok(gamma_ratio(nf + p.xi + 1.0, nf + p.eta + 1.0)? * (p.xi - p.eta + 1.0) * p.k.powf(-2.0 * p.xi - 2.0 * p.omega() - 1.0))
}

/// The Wronskian evaluated from the basis.
pub fn wronskian_numeric(p: &RecurrenceParams, n: usize) -> Result<f64> {
    let (a0, b0) = solution_basis(p, n)?;
    let (a1, b1) = solution_basis(p, n + 1)?;
    Ok(b1 * a0 - a1 * b0)
}

/// Square-summable solution
/// h⁺_n = kⁿ Γ(n+ξ+1)/Γ(n+ω+ξ+1) 2F1(n+ξ+1, ω+ξ−η+1; n+ω+ξ+1; k²).
pub fn solution_plus(p: &RecurrenceParams, n: usize) -> Result<f64> {
    if p.xi < 0.0 && is_integer(p.xi) {
        return domain(format!("h+ needs −ξ outside the positive integers, ξ = {}", p.xi));
    }
    let nf = n as f64;
    let w = p.omega();
    let g = gamma_ratio(nf + p.xi + 1.0, nf + w + p.xi + 1.0)?;
    Ok(p.k.powi(n as i32) * g * gauss_2f1(nf + p.xi + 1.0, w + p.xi - p.eta + 1.0, nf + w + p.xi + 1.0, p.k * p.k)?)
}

/// h⁺_0 … h⁺_{len−1}.
pub fn solution_plus_sequence(p: &RecurrenceParams, len: usize) -> Result<Vec<f64>> {
    (0..len).map(|n| solution_plus(p, n)).collect()
}

/// Constant C in h⁺_n ~ C kⁿ n^{−ω}: C = (1−k²)^{−ω−ξ+η−1}.
pub fn asymptotic_constant(p: &RecurrenceParams) -> f64 {
    (1.0 - p.k * p.k).powf(-p.omega() - p.xi + p.eta - 1.0)
}

/// Scale so that entry 0 equals 1, or to unit ℓ² norm when it vanishes.
pub fn normalize(v: &mut [f64]) {
    let s = if v.first().is_some_and(|&x| x != 0.0) {
        v[0]
    } else {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    };
    if s != 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
}

/// Truncated matrices L, G, R and the vector 𝐤 = (1, k, k², …).
///
/// L_{mn} = (k+1/k)δ_{mn} − δ_{m,n+1} − δ_{m+1,n},
/// G_{mn} = k^{|m−n|+1}/(1−k²),
/// R_{mn} = −(k+1/k) s_{N₀+m} δ_{mn} + x_{N₀+m} δ_{m,n+1} + y_{N₀+m} δ_{m+1,n}
/// with s_n = σ/n, x_n = ξ/n, y_n = η/n.
#[derive(Debug, Clone)]
pub struct BandSystem {
    pub l: Mat,
    pub g: Mat,
    pub r: Mat,
    pub kvec: Vec<f64>,
    pub offset: usize,
}

impl BandSystem {
    pub fn new(p: &RecurrenceParams, size: usize, offset: usize) -> Result<Self> {
        if offset == 0 {
            return domain("tail offset N₀ must be positive");
        }
        let k = p.k;
        let kk = k + 1.0 / k;
        let l = Mat::from_fn(size, size, |m, n| {
            if m == n {
                kk
            } else if m.abs_diff(n) == 1 {
                -1.0
            } else {
                0.0
            }
        });
        let g = Mat::from_fn(size, size, |m, n| k.powi(m.abs_diff(n) as i32 + 1) / (1.0 - k * k));
        let r = Mat::from_fn(size, size, |m, n| {
            let idx = (offset + m) as f64;
            if m == n {
                -kk * p.sigma / idx
            } else if m == n + 1 {
                p.xi / idx
            } else if m + 1 == n {
                p.eta / idx
            } else {
                0.0
            }
        });
        let kvec = (0..size).map(|n| k.powi(n as i32)).collect();
        Ok(Self { l, g, r, kvec, offset })
    }

    pub fn size(&self) -> usize {
        self.kvec.len()
    }

    /// max over interior rows 1 ≤ n ≤ N−2 of |(L𝐤)_n|.
    pub fn l_kvec_interior(&self) -> f64 {
        let lk = self.l.matvec(&self.kvec);
        let n = self.size();
        (1..n.saturating_sub(1)).map(|i| lk[i].abs()).fold(0.0, f64::max)
    }

    /// Interior residuals of LG = I + k²/(1−k²) e₀𝐤ᵀ (rows ≤ N−2) and
    /// GL = I + k²/(1−k²) 𝐤e₀ᵀ (columns ≤ N−2).
    pub fn lg_gl_residuals(&self, k: f64) -> Result<(f64, f64)> {
        let n = self.size();
        let c = k * k / (1.0 - k * k);
        let lg = self.l.matmul(&self.g)?;
        let gl = self.g.matmul(&self.l)?;
        let mut r1: f64 = 0.0;
        let mut r2: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { 1.0 } else { 0.0 };
                if i + 1 < n {
                    let want = id + if i == 0 { c * self.kvec[j] } else { 0.0 };
                    r1 = r1.max((lg[(i, j)] - want).abs());
                }
                if j + 1 < n {
                    let want = id + if j == 0 { c * self.kvec[i] } else { 0.0 };
                    r2 = r2.max((gl[(i, j)] - want).abs());
                }
            }
        }
        Ok((r1, r2))
    }

    /// ‖GR‖_∞ on the truncation.
    pub fn contraction_norm(&self) -> Result<f64> {
        Ok(self.g.matmul(&self.r)?.norm_inf())
    }

    /// Solve (I − GR) h̃ = 𝐤.
    pub fn solve_tail(&self) -> Result<Vec<f64>> {
        let gr = self.g.matmul(&self.r)?;
        let n = self.size();
        let a = Mat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - gr[(i, j)]);
        lu_solve(&a, &self.kvec)
    }
}

pub const MAX_TAIL_OFFSET: usize = 20_000;

/// Smallest tail offset N₀ for which the bound ‖G‖_∞ ‖R‖_∞ < 1/2 holds.
pub fn contraction_offset(p: &RecurrenceParams) -> Result<usize> {
    let k = p.k;
    let g_norm = k * (1.0 + k) / ((1.0 - k) * (1.0 - k * k));
    let r_num = (k + 1.0 / k) * p.sigma.abs() + p.xi.abs() + p.eta.abs();
    let n0 = (2.0 * g_norm * r_num).ceil().max(1.0) as usize;
    if n0 > MAX_TAIL_OFFSET {
        return Err(LabError::Domain(format!("‖GR‖ < 1 needs N₀ = {n0} beyond the supported {MAX_TAIL_OFFSET}")));
    }
    Ok(n0)
}

/// Minimal solution h_0 … h_{len−1} from the fixed-point system on the tail
/// n ≥ N₀ followed by the descending recurrence; normalized with h_0 = 1.
///
/// `offset` overrides N₀ (it is raised to the contraction bound when
/// smaller). N₀ is at least `len`, so every returned entry comes from the
/// descending recurrence, which is the stable direction for a minimal
/// solution.
pub fn minimal_solution_oracle(p: &RecurrenceParams, len: usize, offset: Option<usize>) -> Result<Vec<f64>> {
    let n0 = contraction_offset(p)?.max(offset.unwrap_or(0)).max(len);
    let size = 2 * len.max(16);
    let sys = BandSystem::new(p, size, n0)?;
    let norm = sys.contraction_norm()?;
    if norm >= 1.0 {
        return domain(format!("‖GR‖ = {norm} ≥ 1 at N₀ = {n0}"));
    }
    let tail = sys.solve_tail()?;
    let mut h = vec![0.0; n0 + 2];
    h[n0] = tail[0];
    h[n0 + 1] = tail[1];
    for n in (1..=n0).rev() {
        h[n - 1] = p.descend(n, h[n], h[n + 1])?;
        // keep magnitudes in range; the result is normalized anyway
        if h[n - 1].abs() > 1e200 {
            h.iter_mut().for_each(|x| *x *= 1e-200);
        }
    }
    h.truncate(len);
    normalize(&mut h);
    Ok(h)
}
