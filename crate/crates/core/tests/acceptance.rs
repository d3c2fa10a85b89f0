//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. The process exits nonzero when
//! any gated criterion fails; INFO lines are reported but not gated.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use elliptic_hankel::carlitz::Family;
use elliptic_hankel::elliptic::{fourier_eval, EllipticContext, FourierSeries};
use elliptic_hankel::hypergeo::{moment_e, moment_f, quadratic_identity_check};
use elliptic_hankel::operators::{build_hankel, build_jacobi, commutator_residual, Tag};
use elliptic_hankel::quadrature::integrate;
use elliptic_hankel::recurrence::{
    asymptotic_constant, minimal_solution_oracle, normalize, solution_plus, solution_plus_sequence, wronskian_formula, wronskian_numeric,
    RecurrenceParams,
};
use elliptic_hankel::spectral::{closed_eigvec, default_truncation, dense_symmetric_eigen, jacobi_spectrum_doubled, ClosedFormSpectrum};

const KS: [f64; 3] = [0.3, 0.5, 0.8];
const BASE_TAGS: [Tag; 6] = [Tag::P, Tag::Q, Tag::R, Tag::S, Tag::F, Tag::G];

type Criterion = fn() -> Vec<Outcome>;

/// Worst observed value of a check against its threshold.
struct Outcome {
    worst: f64,
    limit: f64,
    detail: String,
    errors: Vec<String>,
}

impl Outcome {
    fn new(limit: f64) -> Self {
        Self { worst: 0.0, limit, detail: String::new(), errors: Vec::new() }
    }

    fn record(&mut self, value: f64, at: impl FnOnce() -> String) {
        if !(value <= self.worst) {
            self.worst = value;
            self.detail = at();
        }
    }

    fn error(&mut self, e: impl std::fmt::Display) {
        self.errors.push(e.to_string());
    }

    fn pass(&self) -> bool {
        self.errors.is_empty() && self.worst < self.limit
    }

    fn summary(&self) -> String {
        let mut s = format!("worst {:.3e} (limit {:.0e}) at {}", self.worst, self.limit, self.detail);
        if !self.errors.is_empty() {
            s.push_str(&format!("; errors: {}", self.errors.join("; ")));
        }
        s
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ctx(k: f64) -> EllipticContext {
    EllipticContext::new(k).expect("modulus in (0,1)")
}

fn representative(f: Family) -> Tag {
    *BASE_TAGS.iter().find(|t| t.family() == f).expect("every family has a base tag")
}

fn c1_commutation() -> Vec<Outcome> {
    let pairs: Vec<(Tag, f64)> = Tag::ALL.iter().flat_map(|&t| KS.iter().map(move |&k| (t, k))).collect();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(t, k)| build_hankel(t, k, 128).and_then(|h| build_jacobi(t, k, 128).and_then(|j| commutator_residual(&h, &j))))
        .collect();
    let mut o = Outcome::new(1e-8);
    for ((t, k), r) in pairs.iter().zip(results) {
        match r {
            Ok(v) => o.record(v, || format!("tag={t} k={k}")),
            Err(e) => o.error(format!("tag={t} k={k}: {e}")),
        }
    }
    vec![o]
}

/// Top-8 eigenvalues against the dense spectrum of H_N at the default N.
fn top_eigenvalues(k: f64) -> Outcome {
    let results: Vec<_> = Tag::ALL
        .par_iter()
        .map(|&t| -> elliptic_hankel::error::Result<Vec<(usize, f64)>> {
            let n = default_truncation(k);
            let spec = ClosedFormSpectrum::new(t, k)?;
            let dense = dense_symmetric_eigen(&build_hankel(t, k, n)?.to_mat(), 8)?;
            dense.values.iter().enumerate().map(|(i, &v)| Ok((spec.m_start() + i, rel(v, spec.eigenvalue(spec.m_start() + i)?)))).collect()
        })
        .collect();
    let mut o = Outcome::new(1e-8);
    for (t, r) in Tag::ALL.iter().zip(results) {
        match r {
            Ok(errs) => errs.iter().for_each(|&(m, e)| o.record(e, || format!("tag={t} k={k} m={m}"))),
            Err(e) => o.error(format!("tag={t}: {e}")),
        }
    }
    o
}

fn c3_eigenvectors() -> Vec<Outcome> {
    let mut res = Outcome::new(1e-6);
    let mut norms = Outcome::new(1e-6);
    for &k in &KS {
        let n = default_truncation(k);
        for &t in &BASE_TAGS {
            let mut run = || -> elliptic_hankel::error::Result<()> {
                let spec = ClosedFormSpectrum::new(t, k)?;
                let mat = build_hankel(t, k, n)?.to_mat();
                for m in t.m_start()..=5 {
                    let nu = spec.eigenvalue(m)?;
                    let psi = closed_eigvec(t, &spec.ctx, m, n)?.entries;
                    let hp = mat.matvec(&psi);
                    let r: f64 = hp.iter().zip(&psi).map(|(a, b)| (a - nu * b).powi(2)).sum::<f64>().sqrt();
                    let partial: f64 = psi.iter().map(|x| x * x).sum();
                    res.record(r / (nu * partial.sqrt()), || format!("tag={t} k={k} m={m}"));
                    norms.record(rel(partial, spec.norm_sq(m)?), || format!("tag={t} k={k} m={m}"));
                }
                Ok(())
            };
            if let Err(e) = run() {
                res.error(format!("tag={t} k={k}: {e}"));
            }
        }
    }
    vec![res, norms]
}

fn c4_trace() -> Vec<Outcome> {
    let mut o = Outcome::new(1e-9);
    for &k in &KS {
        for &t in &Tag::ALL {
            let gap = build_hankel(t, k, default_truncation(k)).and_then(|h| Ok((h.trace() - ClosedFormSpectrum::new(t, k)?.trace()?).abs()));
            match gap {
                Ok(g) => o.record(g, || format!("tag={t} k={k}")),
                Err(e) => o.error(format!("tag={t} k={k}: {e}")),
            }
        }
    }
    vec![o]
}

fn c5_jacobi() -> Vec<Outcome> {
    let mut pts = Outcome::new(1e-6);
    let mut dbl = Outcome::new(1e-6);
    for &k in &KS {
        let c = ctx(k);
        for f in Family::ALL {
            let t = representative(f);
            match jacobi_spectrum_doubled(t, k, 300, 5) {
                Ok((a, b)) => {
                    for i in 0..5 {
                        let m = f.weight_start() + i;
                        let lam = f.spectral_point(m, &c).map(|p| p.0).unwrap_or(f64::NAN);
                        // λ_0 = 0 for r: compare absolutely
                        let scale = if lam == 0.0 { 1.0 } else { lam };
                        pts.record(((a[i] - lam) / scale).abs(), || format!("family {} k={k} m={m}", f.letter()));
                        dbl.record(((a[i] - b[i]) / scale).abs(), || format!("family {} k={k} m={m}", f.letter()));
                    }
                }
                Err(e) => pts.error(format!("family {} k={k}: {e}", f.letter())),
            }
        }
    }
    vec![pts, dbl]
}

fn c6_recurrence() -> Vec<Outcome> {
    // h⁺ against the fixed-point oracle on the moment recurrences of every tag
    let mut plus = Outcome::new(1e-9);
    let len = 60;
    for &k in &KS {
        for &t in &Tag::ALL {
            let mut run = || -> elliptic_hankel::error::Result<()> {
                let p = t.recurrence(k)?;
                let oracle = minimal_solution_oracle(&p, len, None)?;
                let mut h = solution_plus_sequence(&p, len)?;
                normalize(&mut h);
                for n in 0..len {
                    plus.record(rel(h[n], oracle[n]), || format!("tag={t} k={k} n={n}"));
                }
                Ok(())
            };
            if let Err(e) = run() {
                plus.error(format!("tag={t} k={k}: {e}"));
            }
        }
    }

    // the basis solutions both grow, so their Wronskian cancels by a factor
    // that rises about tenfold per step in n; the draws stay at n <= 2
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut wr = Outcome::new(1e-9);
    let mut drawn = 0;
    while drawn < 20 {
        let k = rng.gen_range(0.3..0.8);
        let sigma = rng.gen_range(0.2..1.5);
        let xi: f64 = rng.gen_range(-0.45..1.0);
        let eta = rng.gen_range(1.1..2.6);
        let d = xi - eta;
        if (d - d.round()).abs() < 0.05 {
            continue;
        }
        let n = rng.gen_range(0..3usize);
        drawn += 1;
        let r = RecurrenceParams::new(k, sigma, xi, eta).and_then(|p| Ok(rel(wronskian_numeric(&p, n)?, wronskian_formula(&p, n)?)));
        match r {
            Ok(v) => wr.record(v, || format!("k={k:.3} σ={sigma:.3} ξ={xi:.3} η={eta:.3} n={n}")),
            Err(e) => wr.error(e),
        }
    }

    let mut quad = Outcome::new(1e-9);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let a = rng.gen_range(-1.5..1.5);
        let b = rng.gen_range(-1.5..1.5);
        let c = rng.gen_range(0.3..2.5);
        let z = rng.gen_range(0.05..0.6);
        match quadratic_identity_check(a, b, c, z) {
            Ok(v) => quad.record(v, || format!("a={a:.3} b={b:.3} c={c:.3} z={z:.3}")),
            Err(e) => quad.error(e),
        }
    }
    vec![plus, wr, quad]
}

fn c7_identities() -> Vec<Outcome> {
    let mut sums = Outcome::new(1e-8);
    let jobs: Vec<(Family, f64, f64)> =
        Family::ALL.iter().flat_map(|&f| KS.iter().flat_map(move |&k| [0.7, 2.3].into_iter().map(move |x| (f, k, x)))).collect();
    let results: Vec<_> = jobs.par_iter().map(|&(f, k, x)| f.moment_sum_identity(x, &ctx(k))).collect();
    for ((f, k, x), r) in jobs.iter().zip(results) {
        match r {
            Ok((s, i)) => sums.record((s - i).abs(), || format!("family {} k={k} x={x}", f.letter())),
            Err(e) => sums.error(format!("family {} k={k} x={x}: {e}", f.letter())),
        }
    }

    let mut gen = Outcome::new(1e-8);
    for &k in &KS {
        let c = ctx(k);
        for f in Family::ALL {
            for &(x, frac) in &[(0.5, 0.3), (2.0, 0.5), (3.0, 0.7)] {
                match f.generating_check(x, frac * c.big_k, 800, &c) {
                    Ok((s, cl)) => gen.record((s - cl).abs(), || format!("family {} k={k} x={x} u={frac}K", f.letter())),
                    Err(e) => gen.error(format!("family {} k={k}: {e}", f.letter())),
                }
            }
        }
    }
    vec![sums, gen]
}

fn c8_kernel() -> Vec<Outcome> {
    let mut four = Outcome::new(1e-11);
    let mut pyth = Outcome::new(1e-13);
    for &k in &[0.1, 0.3, 0.5, 0.7, 0.8, 0.9] {
        let c = ctx(k);
        for i in 0..=40 {
            let v = -PI + 2.0 * PI * i as f64 / 40.0;
            for s in FourierSeries::ALL {
                match fourier_eval(s, v, &c, None) {
                    Ok(fv) => four.record((fv.value - s.direct(v, &c)).abs(), || format!("{s:?} k={k} v={v:.3}")),
                    Err(e) => four.error(e),
                }
            }
            let u = 4.0 * c.big_k * i as f64 / 40.0 - 2.0 * c.big_k;
            let (sn, cn, dn) = c.sn_cn_dn(u);
            pyth.record((sn * sn + cn * cn - 1.0).abs(), || format!("sn²+cn² k={k} u={u:.3}"));
            pyth.record((dn * dn + k * k * sn * sn - 1.0).abs(), || format!("dn²+k²sn² k={k} u={u:.3}"));
        }
    }

    let mut mom = Outcome::new(1e-10);
    for &k in &[0.3, 0.5, 0.8, 0.95] {
        for n in 0..12 {
            let e_q = integrate(|t: f64| { let s = t.sin(); s.powi(2 * n as i32) * t.cos().powi(2) / (1.0 - k * k * s * s).sqrt() }, 0.0, PI / 2.0, 1e-300, 1e-14);
            let f_q = integrate(|t: f64| { let s = t.sin(); s.powi(2 * n as i32) * (1.0 - k * k * s * s).sqrt() }, 0.0, PI / 2.0, 1e-300, 1e-14);
            match (moment_e(n, k), e_q, moment_f(n, k), f_q) {
                (Ok(e), Ok(eq), Ok(f), Ok(fq)) => {
                    mom.record(rel(e, eq), || format!("E_{n} k={k}"));
                    mom.record(rel(f, fq), || format!("F_{n} k={k}"));
                }
                _ => mom.error(format!("moment evaluation failed at n={n} k={k}")),
            }
        }
    }
    vec![four, pyth, mom]
}

/// Gap |ratio − 1| at each n, with the requirement that it shrinks and ends below 2%.
fn trend(o: &mut Outcome, label: &str, gaps: &[(usize, f64)]) {
    let monotone = gaps.windows(2).all(|w| w[1].1 < w[0].1);
    let last = gaps.last().map_or(f64::NAN, |g| g.1);
    o.record(if monotone { last } else { f64::INFINITY }, || {
        let list: Vec<String> = gaps.iter().map(|(n, g)| format!("{n}:{g:.2e}")).collect();
        format!("{label} [{}]", list.join(" "))
    });
}

fn c9_asymptotics() -> Vec<Outcome> {
    let ns = [50usize, 100, 200, 300];
    let mut o = Outcome::new(0.02);
    for &k in &KS {
        let c = ctx(k);
        for f in Family::ALL {
            let x = 1.5;
            let gaps: Vec<(usize, f64)> = ns
                .iter()
                .map(|&n| (n, f.asymptotic_leading(n, x, &c).map_or(f64::INFINITY, |(e, l)| (e / l - 1.0).abs())))
                .collect();
            trend(&mut o, &format!("family {} k={k} x={x}", f.letter()), &gaps);
        }
        for &t in &BASE_TAGS {
            let Ok(p) = t.recurrence(k) else { continue };
            let cst = asymptotic_constant(&p);
            let gaps: Vec<(usize, f64)> = ns
                .iter()
                .map(|&n| {
                    let lead = cst * k.powi(n as i32) * (n as f64).powf(-p.omega());
                    (n, solution_plus(&p, n).map_or(f64::INFINITY, |h| (h / lead - 1.0).abs()))
                })
                .collect();
            trend(&mut o, &format!("h+ tag={t} k={k}"), &gaps);
        }
    }
    vec![o]
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        ("1 commutator residual, 11 tags x 3 k, N=128", c1_commutation),
        ("2 top-8 eigenvalues vs dense spectrum, k=0.8", || vec![top_eigenvalues(0.8)]),
        ("3 eigenvector residual | norm agreement, m<=5", c3_eigenvectors),
        ("4 trace identity", c4_trace),
        ("5 Jacobi spectral points N=300 | doubling", c5_jacobi),
        ("6 h+ vs oracle | Wronskian draws | quadratic draws", c6_recurrence),
        ("7 moment-sum identities | generating functions", c7_identities),
        ("8 Fourier vs AGM | Pythagorean | E_n,F_n vs quadrature", c8_kernel),
        ("9 asymptotic ratios within 2% and monotone", c9_asymptotics),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcomes = run();
        let pass = outcomes.iter().all(Outcome::pass);
        if !pass {
            failed += 1;
        }
        println!("{} criterion {name} ({:.1}s)", if pass { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
        for o in &outcomes {
            println!("     {}", o.summary());
        }
    }
    // the same comparison at a smaller modulus sits at the binary64 floor of
    // the dense solver for the smallest of the eight eigenvalues
    let info = top_eigenvalues(0.5);
    println!("INFO top-8 eigenvalues at k=0.5: {}", info.summary());
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
