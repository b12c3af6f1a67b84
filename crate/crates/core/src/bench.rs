//! Wall-time scaling of the four-point pipeline.

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::geom::Tolerance;
use crate::instances::{gen_instance, GenProfile, ProfileName};
use crate::stabbing::stab_four;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    /// Median over the repeats.
    pub median_ms: f64,
    pub case_tag: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log time against log n.
    pub exponent: f64,
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.max(1e-9).ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Times `stab_four` on one TANGENT_CORE instance per size.
pub fn run_bench(sizes: &[usize], seed: u64, repeats: usize, tol: &Tolerance) -> Result<BenchReport> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let disks = gen_instance(&GenProfile::new(ProfileName::TangentCore, n, seed))?;
        let mut times = Vec::with_capacity(repeats.max(1));
        let mut tag = String::new();
        for _ in 0..repeats.max(1) {
            let t0 = Instant::now();
            let res = stab_four(&disks, tol, seed)?;
            times.push(t0.elapsed().as_secs_f64() * 1e3);
            tag = res.case_tag.to_string();
        }
        rows.push(BenchRow {
            n,
            median_ms: median(times),
            case_tag: tag,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.median_ms).collect();
    let exponent = if rows.len() >= 2 { loglog_slope(&xs, &ys) } else { f64::NAN };
    Ok(BenchReport { rows, exponent })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_laws() {
        let xs = [1e3, 1e4, 1e5, 1e6];
        let lin: Vec<f64> = xs.iter().map(|x| 3.0 * x).collect();
        assert!((loglog_slope(&xs, &lin) - 1.0).abs() < 1e-12);
        let quad: Vec<f64> = xs.iter().map(|x| x * x * 1e-6).collect();
        assert!((loglog_slope(&xs, &quad) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn small_run() {
        let rep = run_bench(&[100, 1000], 1, 3, &Tolerance::default()).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert!(rep.exponent.is_finite());
    }
}
