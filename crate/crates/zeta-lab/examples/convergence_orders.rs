//! Measured decay of both truncation errors against N. The fitted slopes
//! follow the leading closed-form terms: sigma - 4 for the forward
//! expansion and -sigma - 3 for the reflected one.
//!
//! Run with: cargo run --release --example convergence_orders

use zeta_lab::expansions::{evaluate_pair, EpsilonMode};
use zeta_lab::zeta::zeta_ref;
use zeta_lab::{Complex, Float, NumericContext, StripPoint};

fn fit(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn main() {
    let ctx = NumericContext::new(40).unwrap();
    let wp = ctx.working_prec();
    for sigma in ["0.3", "0.5", "0.7"] {
        let s = StripPoint::parse(&format!("{sigma}+5i")).unwrap();
        let reference = zeta_ref(&s, &ctx.raised(20)).unwrap().value;
        let mut pts_p = Vec::new();
        let mut pts_d = Vec::new();
        for n in [1_000u64, 3_162, 10_000, 31_623, 100_000] {
            let pair = evaluate_pair(n, &s, EpsilonMode::MinusOne24, &ctx).unwrap();
            let dp = Float::with_val(wp, Complex::with_val(wp, &pair.zn_prime - &reference).abs_ref());
            let dd = Float::with_val(wp, Complex::with_val(wp, &pair.zn_dprime - &reference).abs_ref());
            pts_p.push(((n as f64).ln(), dp.to_f64().ln()));
            pts_d.push(((n as f64).ln(), dd.to_f64().ln()));
        }
        println!(
            "sigma = {sigma}: forward slope {:+.4} (leading term {:+.1}), reflected slope {:+.4} (leading term {:+.1})",
            fit(&pts_p),
            sigma.parse::<f64>().unwrap() - 4.0,
            fit(&pts_d),
            -sigma.parse::<f64>().unwrap() - 3.0
        );
    }
}
