//! Independent checks on inputs and outputs.

pub mod constants;
pub mod observations;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geom::{disks_intersect, point_in_disk, Disk, Point, Similarity, Tolerance};
use crate::min_stabber::MinStabResult;
use crate::rng::DetRng;

pub use constants::check_proof_constants;
pub use observations::{check_observation, sample_observation, ObsId, ObservationConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    DisjointPair,
    Unstabbed,
    MissedByDstar,
    SmallerDisk,
    ConstantMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
    /// How far the check was missed, in the units of the input.
    pub magnitude: f64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub checked: BTreeMap<String, u64>,
}

impl VerifyReport {
    pub fn new() -> Self {
        VerifyReport {
            ok: true,
            ..Default::default()
        }
    }

    pub fn count(&mut self, what: &str, k: u64) {
        *self.checked.entry(what.to_string()).or_default() += k;
    }

    pub fn push(&mut self, v: Violation) {
        self.ok = false;
        self.violations.push(v);
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.ok &= other.ok;
        self.violations.extend(other.violations);
        for (k, v) in other.checked {
            *self.checked.entry(k).or_default() += v;
        }
    }
}

/// Tolerance expressed in frame units, converted to input units for a frame map.
pub fn frame_tolerance(tol: &Tolerance, to_frame: &Similarity) -> Tolerance {
    tol.scaled(1.0 / to_frame.scale)
}

fn pair_violation(disks: &[Disk], i: usize, j: usize) -> Violation {
    let (a, b) = (&disks[i], &disks[j]);
    Violation {
        kind: ViolationKind::DisjointPair,
        indices: vec![i, j],
        magnitude: a.center.dist(b.center) - a.radius - b.radius,
        detail: String::new(),
    }
}

/// Every pair that fails to intersect. Quadratic; see [`verify_pairwise_sampled`].
pub fn verify_pairwise(disks: &[Disk], tol: &Tolerance) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let n = disks.len();
    for i in 0..n {
        for j in i + 1..n {
            if !disks_intersect(&disks[i], &disks[j], tol) {
                rep.push(pair_violation(disks, i, j));
            }
        }
    }
    rep.count("pairs", (n * n.saturating_sub(1) / 2) as u64);
    rep
}

/// Checks `samples` uniformly random pairs.
pub fn verify_pairwise_sampled(
    disks: &[Disk],
    tol: &Tolerance,
    samples: u64,
    seed: u64,
) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let n = disks.len();
    if n < 2 {
        return rep;
    }
    let mut rng = DetRng::new(seed);
    for _ in 0..samples {
        let i = rng.index(n);
        let mut j = rng.index(n - 1);
        if j >= i {
            j += 1;
        }
        if !disks_intersect(&disks[i], &disks[j], tol) {
            let (i, j) = (i.min(j), i.max(j));
            rep.push(pair_violation(disks, i, j));
        }
    }
    rep.count("pairs", samples);
    rep
}

/// Every disk that contains none of `points`.
pub fn verify_stabbing(disks: &[Disk], points: &[Point], tol: &Tolerance) -> VerifyReport {
    let mut rep = VerifyReport::new();
    for (i, d) in disks.iter().enumerate() {
        if !points.iter().any(|&p| point_in_disk(p, d, tol)) {
            let miss = points
                .iter()
                .map(|&p| d.gap_to(p))
                .fold(f64::INFINITY, f64::min);
            rep.push(Violation {
                kind: ViolationKind::Unstabbed,
                indices: vec![i],
                magnitude: miss,
                detail: String::new(),
            });
        }
    }
    rep.count("disks", disks.len() as u64);
    rep
}

/// Confirms that `ms.dstar` meets every disk and that `trials` slightly
/// shrunken disks around perturbed centers each miss some disk.
pub fn verify_minimality(
    disks: &[Disk],
    ms: &MinStabResult,
    trials: u64,
    seed: u64,
    tol: &Tolerance,
) -> VerifyReport {
    let mut rep = VerifyReport::new();
    let r = ms.dstar.radius;
    for (i, d) in disks.iter().enumerate() {
        let gap = d.gap_to(ms.dstar.center);
        if gap > r + tol.slack(r + d.radius) {
            rep.push(Violation {
                kind: ViolationKind::MissedByDstar,
                indices: vec![i],
                magnitude: gap - r,
                detail: String::new(),
            });
        }
    }
    rep.count("dstar_contact", disks.len() as u64);
    if r <= 0.0 {
        return rep;
    }
    let shrunk = r * (1.0 - 1e-4);
    let mut rng = DetRng::new(seed);
    for _ in 0..trials {
        let c = ms.dstar.center + rng.unit_vector() * (r * rng.log_uniform(1e-9, 1.0));
        let worst = disks
            .iter()
            .map(|d| d.gap_to(c))
            .fold(f64::NEG_INFINITY, f64::max);
        if worst <= shrunk {
            rep.push(Violation {
                kind: ViolationKind::SmallerDisk,
                indices: vec![],
                magnitude: shrunk - worst,
                detail: format!("center ({}, {})", c.x, c.y),
            });
        }
    }
    rep.count("shrunk_trials", trials);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_instance, GenProfile, ProfileName};
    use crate::min_stabber::smallest_intersecting_disk;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn pairwise_examples() {
        let rep = verify_pairwise(&[Disk::xyr(0.0, 0.0, 1.0), Disk::xyr(3.0, 0.0, 1.0)], &tol());
        assert!(!rep.ok);
        assert_eq!(rep.violations[0].indices, vec![0, 1]);
        assert!((rep.violations[0].magnitude - 1.0).abs() < 1e-15);
        let rep = verify_pairwise(&[Disk::xyr(0.0, 0.0, 1.0), Disk::xyr(2.0, 0.0, 1.0)], &tol());
        assert!(rep.ok);
        for name in [ProfileName::CommonPoint, ProfileName::TangentCore, ProfileName::MixedRadii] {
            for seed in 0..5 {
                let d = gen_instance(&GenProfile::new(name, 150, seed)).unwrap();
                assert!(verify_pairwise(&d, &tol()).ok);
                assert!(verify_pairwise_sampled(&d, &tol(), 1000, seed).ok);
            }
        }
    }

    #[test]
    fn sampled_finds_disjoint_pair() {
        let d = [Disk::xyr(0.0, 0.0, 1.0), Disk::xyr(3.0, 0.0, 1.0)];
        let rep = verify_pairwise_sampled(&d, &tol(), 10, 1);
        assert!(!rep.ok);
        assert_eq!(rep.violations[0].indices, vec![0, 1]);
    }

    #[test]
    fn stabbing_examples() {
        let o = [Point::ORIGIN];
        assert!(verify_stabbing(&[Disk::xyr(0.0, 0.0, 1.0)], &o, &tol()).ok);
        let rep = verify_stabbing(&[Disk::xyr(10.0, 0.0, 1.0)], &o, &tol());
        assert!(!rep.ok);
        assert_eq!(rep.violations[0].kind, ViolationKind::Unstabbed);
        assert_eq!(rep.violations[0].magnitude, 9.0);
    }

    #[test]
    fn minimality_examples() {
        let disks = [Disk::xyr(0.0, 0.0, 1.0), Disk::xyr(4.0, 0.0, 1.0)];
        let ms = smallest_intersecting_disk(&disks, &tol(), 0).unwrap();
        assert!(verify_minimality(&disks, &ms, 1000, 3, &tol()).ok);
        // Shrinking by 1e-3 misses a disk for centers moved along x.
        for dx in [-0.3, -0.01, 0.0, 0.01, 0.3] {
            let c = Point::new(2.0 + dx, 0.0);
            assert!(disks.iter().any(|d| d.gap_to(c) > 0.999));
        }
        let helly = [Disk::xyr(0.0, 0.0, 2.0), Disk::xyr(1.0, 0.0, 2.0)];
        let ms = smallest_intersecting_disk(&helly, &tol(), 0).unwrap();
        assert!(verify_minimality(&helly, &ms, 100, 0, &tol()).ok);
        let mut bad = ms.clone();
        bad.dstar = Disk::xyr(50.0, 0.0, 0.0);
        assert!(!verify_minimality(&helly, &bad, 0, 0, &tol()).ok);
    }

    #[test]
    fn minimality_on_random_instances() {
        let mut rng = DetRng::new(12);
        for _ in 0..50 {
            let n = 2 + rng.index(40);
            let disks: Vec<Disk> = (0..n)
                .map(|_| Disk::xyr(rng.range(-5.0, 5.0), rng.range(-5.0, 5.0), rng.range(0.0, 2.0)))
                .collect();
            let ms = smallest_intersecting_disk(&disks, &tol(), 0).unwrap();
            assert!(verify_minimality(&disks, &ms, 500, 1, &tol()).ok);
        }
    }

    #[test]
    fn a_too_small_dstar_is_caught() {
        let disks = [Disk::xyr(0.0, 0.0, 1.0), Disk::xyr(4.0, 0.0, 1.0)];
        let ms = MinStabResult {
            dstar: Disk::xyr(2.0, 0.0, 2.0),
            basis: vec![0, 1],
            optimal_value: 2.0,
        };
        // Radius 2 is feasible but not minimal: shrunken disks still meet both.
        let rep = verify_minimality(&disks, &ms, 200, 0, &tol());
        assert!(!rep.ok);
        assert!(rep.violations.iter().all(|v| v.kind == ViolationKind::SmallerDisk));
    }
}
