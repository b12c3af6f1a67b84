#![allow(dead_code)]

use diskstab::instances::{gen_instance, GenProfile, ProfileName};
use diskstab::{Disk, Point};

pub const CORPUS_PROFILES: [ProfileName; 3] =
    [ProfileName::CommonPoint, ProfileName::TangentCore, ProfileName::MixedRadii];
pub const CORPUS_SIZES: [usize; 4] = [3, 10, 100, 10_000];

pub fn instance(name: ProfileName, n: usize, seed: u64) -> Vec<Disk> {
    gen_instance(&GenProfile::new(name, n, seed)).expect("generator")
}

/// Minimum of a convex function of one variable by grid refinement.
fn refine_1d(mut lo: f64, mut hi: f64, cell: f64, f: &mut dyn FnMut(f64) -> f64) -> f64 {
    const K: usize = 20;
    loop {
        let h = (hi - lo) / K as f64;
        let (mut bi, mut bv) = (0, f64::INFINITY);
        for i in 0..=K {
            let v = f(lo + h * i as f64);
            if v < bv {
                bv = v;
                bi = i;
            }
        }
        if h <= cell {
            return bv;
        }
        let x = lo + h * bi as f64;
        lo = x - h;
        hi = x + h;
    }
}

/// `min_c max_i (|c - c_i| - r_i)`, found by nested grid refinement over a
/// box that contains every disk.
pub fn grid_oracle(disks: &[Disk]) -> f64 {
    let (mut lo, mut hi) = (Point::new(f64::MAX, f64::MAX), Point::new(f64::MIN, f64::MIN));
    for d in disks {
        lo = Point::new(lo.x.min(d.center.x - d.radius), lo.y.min(d.center.y - d.radius));
        hi = Point::new(hi.x.max(d.center.x + d.radius), hi.y.max(d.center.y + d.radius));
    }
    let f = |p: Point| disks.iter().map(|d| d.center.dist(p) - d.radius).fold(f64::MIN, f64::max);
    refine_1d(lo.x - 1.0, hi.x + 1.0, 1e-10, &mut |x| {
        refine_1d(lo.y - 1.0, hi.y + 1.0, 1e-11, &mut |y| f(Point::new(x, y)))
    })
}
