//! Numerical integration: adaptive Gauss-Kronrod (7/15) for smooth
//! integrands and tanh-sinh for integrable endpoint singularities.

use crate::error::{LabError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Stops when the summed error estimate falls below
/// `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut pieces = vec![{
        let (v, e) = gk15(&f, a, b);
        (a, b, v, e)
    }];
    for _ in 0..4000 {
        let total: f64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, _, _) = pieces.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
    Err(LabError::NonConvergence { what: "adaptive Gauss-Kronrod", iterations: 4000 })
}

/// Tanh-sinh quadrature over `[a, b]`.
///
/// The integrand receives `(x, x - a, b - x)` with both distances computed
/// without cancellation, so endpoint singularities such as `(1 - t)^(-1/2)`
/// stay accurate.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let half = 0.5 * (b - a);
    let hpi = std::f64::consts::FRAC_PI_2;
    let eval = |t: f64| -> f64 {
        // x = mid + half * tanh(π/2 sinh t)
        let s = hpi * t.sinh();
        let w = hpi * t.cosh() / s.cosh().powi(2);
        // distance to the nearer endpoint: half * (1 - tanh|s|) = half * 2/(1+e^{2|s|})
        let d = half * 2.0 / (1.0 + (2.0 * s.abs()).exp());
        if d <= 0.0 || !w.is_finite() || w == 0.0 {
            return 0.0;
        }
        let (x, dl, dr) = if s < 0.0 {
            (a + d, d, 2.0 * half - d)
        } else {
            (b - d, 2.0 * half - d, d)
        };
        let v = f(x, dl, dr);
        if v.is_finite() {
            v * w * half
        } else {
            0.0
        }
    };
    let tmax = 6.5;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut j = 1;
    while (j as f64) * h <= tmax {
        let t = j as f64 * h;
        sum += eval(t) + eval(-t);
        j += 1;
    }
    let mut prev = sum * h;
    for level in 0..10 {
        h *= 0.5;
        let mut add = 0.0;
        let mut j = 1;
        while (j as f64) * h <= tmax {
            let t = j as f64 * h;
            add += eval(t) + eval(-t);
            j += 2;
        }
        sum += add;
        let cur = sum * h;
        if level >= 2 && (cur - prev).abs() <= rel_tol * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(LabError::NonConvergence { what: "tanh-sinh", iterations: 10 })
}

/// Richardson extrapolation of partial sums S(N_0 2^j), j = 0, 1, …,
/// assuming S(N) = S + c_1/N + c_2/N² + ….
pub fn richardson_doubling(partials: &[f64]) -> f64 {
    let mut table = partials.to_vec();
    for level in 1..partials.len() {
        let f = 2f64.powi(level as i32);
        for j in (level..partials.len()).rev() {
            table[j] = (f * table[j] - table[j - 1]) / (f - 1.0);
        }
    }
    *table.last().expect("at least one partial sum")
}
