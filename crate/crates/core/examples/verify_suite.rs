//! Full verification for every tag at several moduli, in parallel.

use elliptic_hankel::operators::Tag;
use elliptic_hankel::spectral::{verify, VerifyConfig};
use rayon::prelude::*;

fn main() {
    let pairs: Vec<(Tag, f64)> = Tag::ALL.iter().flat_map(|&t| [0.3, 0.5, 0.8].map(|k| (t, k))).collect();
    let cfg = VerifyConfig { m_max: 6, ..VerifyConfig::default() };
    let reports: Vec<_> = pairs.par_iter().map(|&(t, k)| verify(t, k, &cfg)).collect();
    for r in &reports {
        let worst = r.records.iter().map(|x| x.rel_err).fold(0.0, f64::max);
        let vec = r.records.iter().filter_map(|x| x.eigvec_residual).fold(0.0, f64::max);
        println!(
            "{:<4} k={} N={:<4} eig {worst:.1e}  eigvec {vec:.1e}  [H,J] {:.1e}  trace {:.1e}  {}",
            r.tag.as_str(),
            r.k,
            r.truncation,
            r.commutator_residual,
            r.trace_gap,
            if r.pass { "pass" } else { "FAIL" }
        );
        for f in &r.failures {
            println!("     {f}");
        }
    }
}
