//! Gauss hypergeometric function 2F1 on real arguments, its classical
//! transformations, and the moment integrals E_n(k), F_n(k).

use std::f64::consts::PI;

use crate::error::{domain, LabError, Result};
use crate::gamma::{gamma, gamma_ratio};

const STOP_REL: f64 = 1e-17;
const MAX_TERMS: usize = 20_000;
const CANCELLATION_LIMIT: f64 = 1e4;

/// Parameters of 2F1(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeoArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

fn nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

impl HypergeoArgs {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Result<Self> {
        let args = Self { a, b, c, z };
        args.validate()?;
        Ok(args)
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.a, self.b, self.c, self.z].iter().all(|v| v.is_finite()) {
            return domain("non-finite 2F1 argument");
        }
        if nonpositive_integer(self.c) {
            return domain(format!("2F1 undefined for c = {}", self.c));
        }
        if self.z >= 1.0 {
            return domain(format!("2F1 needs z < 1, got {}", self.z));
        }
        Ok(())
    }
}

/// Raw power series; returns (sum, max |term| / |sum|).
fn power_series(a: f64, b: f64, c: f64, z: f64) -> Result<(f64, f64)> {
    let terminating = nonpositive_integer(a) || nonpositive_integer(b);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut biggest = 1.0f64;
    let mut small_run = 0;
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * z;
        if term == 0.0 && terminating {
            return Ok((sum, biggest / sum.abs()));
        }
        if !term.is_finite() {
            break;
        }
        sum += term;
        biggest = biggest.max(term.abs());
        if term.abs() < STOP_REL * sum.abs() {
            small_run += 1;
            if small_run == 3 {
                return Ok((sum, biggest / sum.abs()));
            }
        } else {
            small_run = 0;
        }
    }
    Err(LabError::NonConvergence { what: "2F1 power series", iterations: MAX_TERMS })
}

/// 2F1(a, b; c; z) for real parameters and z < 1.
///
/// Negative z is mapped to z/(z-1) by Pfaff's transformation. For z in
/// (0, 1) the direct series is used, and the Euler-transformed series
/// (1-z)^{c-a-b} 2F1(c-a, c-b; c; z) replaces it when it suffers less
/// cancellation.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    HypergeoArgs::new(a, b, c, z)?;
    if z == 0.0 {
        return Ok(1.0);
    }
    if nonpositive_integer(a) || nonpositive_integer(b) {
        return Ok(power_series(a, b, c, z)?.0);
    }
    if z < 0.0 {
        let w = z / (z - 1.0);
        // choose the Pfaff variant that keeps a nonpositive-integer
        // numerator parameter (and thus termination) when there is one
        let (p, r) = if nonpositive_integer(c - b) { (a, c - b) } else if nonpositive_integer(c - a) { (b, c - a) } else { (a, c - b) };
        return Ok((1.0 - z).powf(-p) * gauss_2f1(p, r, c, w)?);
    }
    let direct = power_series(a, b, c, z);
    match direct {
        Ok((v, canc)) if canc <= CANCELLATION_LIMIT => Ok(v),
        _ => {
            let euler = power_series(c - a, c - b, c, z).map(|(v, canc)| ((1.0 - z).powf(c - a - b) * v, canc));
            match (direct, euler) {
                (Ok((v, c1)), Ok((w, c2))) => Ok(if c2 < c1 { w } else { v }),
                (Ok((v, _)), Err(_)) => Ok(v),
                (Err(_), Ok((w, _))) => Ok(w),
                (Err(e), Err(_)) => Err(e),
            }
        }
    }
}

/// Evaluate with the argument struct.
pub fn gauss_2f1_args(args: &HypergeoArgs) -> Result<f64> {
    gauss_2f1(args.a, args.b, args.c, args.z)
}

/// Largest absolute residual of three contiguous relations at `args`:
///
/// (c-a) F(a-1) + (2a-c+(b-a)z) F + a(z-1) F(a+1) = 0,
/// b(z-1) F(b+1) - (a-c) F(a-1) - (c-a-b) F = 0,
/// c F(a-1) + c(z-1) F - (c-b) z F(c+1) = 0.
pub fn contiguous_check(args: &HypergeoArgs) -> Result<f64> {
    let HypergeoArgs { a, b, c, z } = *args;
    let f = gauss_2f1(a, b, c, z)?;
    let fam = gauss_2f1(a - 1.0, b, c, z)?;
    let fap = gauss_2f1(a + 1.0, b, c, z)?;
    let fbp = gauss_2f1(a, b + 1.0, c, z)?;
    let fcp = gauss_2f1(a, b, c + 1.0, z)?;
    let r1 = (c - a) * fam + (2.0 * a - c + (b - a) * z) * f + a * (z - 1.0) * fap;
    let r2 = b * (z - 1.0) * fbp - (a - c) * fam - (c - a - b) * f;
    let r3 = c * fam + c * (z - 1.0) * f - (c - b) * z * fcp;
    Ok(r1.abs().max(r2.abs()).max(r3.abs()))
}

/// The two products of the bilinear identity,
/// (a-c+1) F(a,b;c) F(a-c+2,b-c+1;2-c) and a F(a+1,b;c) F(a-c+1,b-c+1;2-c).
/// Their difference is the left-hand side; their size sets the rounding floor.
pub fn quadratic_identity_terms(a: f64, b: f64, c: f64, z: f64) -> Result<(f64, f64)> {
    if nonpositive_integer(2.0 - c) {
        return domain(format!("2 - c = {} is a nonpositive integer", 2.0 - c));
    }
    let f1 = gauss_2f1(a, b, c, z)?;
    let f2 = gauss_2f1(a - c + 2.0, b - c + 1.0, 2.0 - c, z)?;
    let f3 = gauss_2f1(a + 1.0, b, c, z)?;
    let f4 = gauss_2f1(a - c + 1.0, b - c + 1.0, 2.0 - c, z)?;
    Ok(((a - c + 1.0) * f1 * f2, a * f3 * f4))
}

pub fn quadratic_identity_lhs(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let (t1, t2) = quadratic_identity_terms(a, b, c, z)?;
    Ok(t1 - t2)
}

/// |LHS - (1-c)(1-z)^{-a-b+c-1}| for the bilinear identity above.
pub fn quadratic_identity_check(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.abs() >= 1.0 {
        return domain("quadratic identity needs |z| < 1");
    }
    let rhs = (1.0 - c) * (1.0 - z).powf(-a - b + c - 1.0);
    Ok((quadratic_identity_lhs(a, b, c, z)? - rhs).abs())
}

/// Right-hand side of the connection formula expressing
/// 2F1(a, b; a+b-c+1; 1-z) through functions of z:
///
/// Γ(1+a+b-c)Γ(1-c)/(Γ(1+a-c)Γ(1+b-c)) F(a,b;c;z)
/// + Γ(1+a+b-c)Γ(c-1)/(Γ(a)Γ(b)) z^{1-c} F(a-c+1,b-c+1;2-c;z).
pub fn connection_rhs(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return domain("connection formula needs 0 < z < 1");
    }
    let g0 = gamma(1.0 + a + b - c)?;
    let c1 = g0 * gamma_ratio(1.0 - c, 1.0 + a - c)? / gamma(1.0 + b - c)?;
    let c2 = g0 * gamma_ratio(c - 1.0, a)? / gamma(b)?;
    Ok(c1 * gauss_2f1(a, b, c, z)? + c2 * z.powf(1.0 - c) * gauss_2f1(a - c + 1.0, b - c + 1.0, 2.0 - c, z)?)
}

/// E_n(k) = ∫₀¹ t^{2n} √((1-t²)/(1-k²t²)) dt via
/// π(2n)!/(2^{2n+2} n!(n+1)!) · 2F1(n+1/2, 1/2; n+2; k²).
pub fn moment_e(n: usize, k: f64) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) {
        return domain(format!("moment_e needs k in (0,1), got {k}"));
    }
    let nf = n as f64;
    let central = gamma_ratio(nf + 0.5, nf + 1.0)? / PI.sqrt();
    Ok(PI / 4.0 * central / (nf + 1.0) * gauss_2f1(nf + 0.5, 0.5, nf + 2.0, k * k)?)
}

/// F_n(k) = ∫₀¹ t^{2n} √((1-k²t²)/(1-t²)) dt via
/// π(2n)!/(2^{2n+1} (n!)²) · 2F1(n+1/2, -1/2; n+1; k²).
pub fn moment_f(n: usize, k: f64) -> Result<f64> {
    if !(k > 0.0 && k < 1.0) {
        return domain(format!("moment_f needs k in (0,1), got {k}"));
    }
    let nf = n as f64;
    let central = gamma_ratio(nf + 0.5, nf + 1.0)? / PI.sqrt();
    Ok(PI / 2.0 * central * gauss_2f1(nf + 0.5, -0.5, nf + 1.0, k * k)?)
}
