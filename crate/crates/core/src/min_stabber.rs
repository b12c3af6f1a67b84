//! Smallest disk intersecting every input disk.
//!
//! Minimizes `f(c) = max_i (|c - c_i| - r_i)` over the plane. The optimum is
//! fixed by at most three disks (the basis), and the problem is LP-type, so a
//! violation-driven randomized recursion over a shuffled order runs in
//! expected linear time. Small subproblems (at most four disks) are solved by
//! enumerating the closed-form candidates of every subset of size one to three.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Disk, Point, Tolerance};
use crate::rng::{mix_seed, DetRng};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinStabResult {
    /// The smallest intersecting disk; radius is clamped at zero.
    pub dstar: Disk,
    /// Input indices of the disks tangent to `dstar` that certify optimality.
    pub basis: Vec<usize>,
    /// `f(c*)` before clamping; non-positive when the disks share a point.
    pub optimal_value: f64,
}

impl MinStabResult {
    /// True when the center of `dstar` lies (within tolerance) in every disk.
    pub fn is_helly(&self, tol: &Tolerance) -> bool {
        self.optimal_value <= tol.eps_abs
    }
}

/// `max_i (|c - c_i| - r_i)`.
pub fn evaluate_objective(c: Point, disks: &[Disk]) -> Result<f64> {
    if disks.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(objective(c, disks.iter()))
}

fn objective<'a>(c: Point, disks: impl Iterator<Item = &'a Disk>) -> f64 {
    disks.map(|d| d.gap_to(c)).fold(f64::NEG_INFINITY, f64::max)
}

// Relative slack for violation tests; thousands of ulps at unit scale.
const VIOLATION_REL: f64 = 1e-12;
const TANGENCY_REL: f64 = 1e-7;
const MAX_DEPTH: usize = 512;

#[derive(Debug, Clone, Copy)]
struct Basis {
    members: [usize; 3],
    len: usize,
    center: Point,
    value: f64,
}

impl Basis {
    fn members(&self) -> &[usize] {
        &self.members[..self.len]
    }

    fn contains(&self, i: usize) -> bool {
        self.members().contains(&i)
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    members: [usize; 3],
    len: usize,
    center: Point,
}

struct Solver<'a> {
    disks: &'a [Disk],
    order: Vec<usize>,
    exhausted: bool,
}

impl<'a> Solver<'a> {
    #[inline]
    fn violates(&self, h: usize, b: &Basis) -> bool {
        let d = &self.disks[h];
        let dist = d.center.dist(b.center);
        let slack = VIOLATION_REL * (dist + d.radius + b.value.abs() + b.center.norm());
        dist - d.radius > b.value + slack
    }

    /// Basis of `prefix ∪ extras` given a basis `c` of a subset.
    fn msw(&mut self, prefix: usize, extras: &[usize], c: Basis, depth: usize) -> Basis {
        let mut b = c;
        let mut processed: Vec<usize> = Vec::new();
        let total = extras.len() + prefix;
        for pos in 0..total {
            let (h, from_prefix) = if pos < extras.len() {
                (extras[pos], false)
            } else {
                (self.order[pos - extras.len()], true)
            };
            if c.contains(h) {
                continue;
            }
            if !from_prefix {
                processed.push(h);
            }
            if b.contains(h) || !self.violates(h, &b) {
                continue;
            }
            let mut set = [0usize; 4];
            set[..b.len].copy_from_slice(b.members());
            set[b.len] = h;
            let next = solve_small(self.disks, &set[..=b.len]);
            if !(next.value > b.value) {
                // No strict progress: rounding noise, not a real violator.
                continue;
            }
            if depth >= MAX_DEPTH {
                self.exhausted = true;
                return next;
            }
            // Recurse on C ∪ {everything processed up to and including h}.
            let mut sub_extras: Vec<usize> = c.members().to_vec();
            let sub_prefix = if from_prefix {
                sub_extras.extend(extras.iter().copied());
                pos - extras.len() + 1
            } else {
                sub_extras.extend(processed.iter().copied());
                0
            };
            b = self.msw(sub_prefix, &sub_extras, next, depth + 1);
            if self.exhausted {
                return b;
            }
        }
        b
    }
}

/// Exact optimum over at most four disks, with a minimal certifying subset.
fn solve_small(disks: &[Disk], idx: &[usize]) -> Basis {
    debug_assert!(!idx.is_empty() && idx.len() <= 4);
    let mut sorted = [0usize; 4];
    sorted[..idx.len()].copy_from_slice(idx);
    let sorted = &mut sorted[..idx.len()];
    sorted.sort_unstable();

    let mut cands: Vec<Candidate> = Vec::with_capacity(16);
    let n = sorted.len();
    for &i in sorted.iter() {
        cands.push(Candidate {
            members: [i, 0, 0],
            len: 1,
            center: disks[i].center,
        });
    }
    for a in 0..n {
        for b in a + 1..n {
            let (i, j) = (sorted[a], sorted[b]);
            if let Some(c) = pair_center(&disks[i], &disks[j]) {
                cands.push(Candidate {
                    members: [i, j, 0],
                    len: 2,
                    center: c,
                });
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for k in b + 1..n {
                let tri = [sorted[a], sorted[b], sorted[k]];
                for c in apollonius([&disks[tri[0]], &disks[tri[1]], &disks[tri[2]]]) {
                    cands.push(Candidate {
                        members: tri,
                        len: 3,
                        center: c,
                    });
                }
            }
        }
    }

    let values: Vec<f64> = cands
        .iter()
        .map(|c| objective(c.center, sorted.iter().map(|&i| &disks[i])))
        .collect();
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = sorted
        .iter()
        .map(|&i| disks[i].center.norm() + disks[i].radius)
        .fold(1.0f64, f64::max);
    let tie = 1e-12 * (scale + best.abs());

    // Candidates are generated by size, then lexicographically by index.
    let mut chosen: Option<usize> = None;
    for (k, cand) in cands.iter().enumerate() {
        if values[k] <= best + tie && certifies(disks, cand, values[k], scale) {
            chosen = Some(k);
            break;
        }
    }
    let k = chosen.unwrap_or_else(|| {
        values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .expect("at least one candidate")
    });
    Basis {
        members: cands[k].members,
        len: cands[k].len,
        center: cands[k].center,
        value: values[k],
    }
}

/// Whether the candidate is tight on its members and optimal for them alone.
fn certifies(disks: &[Disk], cand: &Candidate, value: f64, scale: f64) -> bool {
    let members = &cand.members[..cand.len];
    let tight = 1e-9 * (scale + value.abs());
    if members
        .iter()
        .any(|&i| (disks[i].gap_to(cand.center) - value).abs() > tight)
    {
        return false;
    }
    match cand.len {
        1 | 2 => true,
        _ => {
            // 0 must lie in the convex hull of the three outward unit vectors,
            // i.e. no angular gap between them exceeds a half turn.
            let mut angles = [0.0f64; 3];
            for (k, &i) in members.iter().enumerate() {
                let v = cand.center - disks[i].center;
                if v.norm() <= tight {
                    return true;
                }
                angles[k] = v.angle();
            }
            angles.sort_by(f64::total_cmp);
            let gaps = [
                angles[1] - angles[0],
                angles[2] - angles[1],
                std::f64::consts::TAU - (angles[2] - angles[0]),
            ];
            gaps.iter().all(|&g| g <= std::f64::consts::PI + 1e-9)
        }
    }
}

/// Optimum of the two-disk problem when both disks are tight there.
fn pair_center(a: &Disk, b: &Disk) -> Option<Point> {
    let v = b.center - a.center;
    let d = v.norm();
    if d == 0.0 {
        return None;
    }
    let t = 0.5 * (d + a.radius - b.radius);
    if !(0.0..=d).contains(&t) {
        return None;
    }
    Some(a.center + v * (t / d))
}

/// Centers `c` with `|c - c_m| - r_m` equal for all three disks.
fn apollonius(d: [&Disk; 3]) -> Vec<Point> {
    let o = d[0].center;
    let r0 = d[0].radius;
    let pj = d[1].center - o;
    let pk = d[2].center - o;
    let det = 4.0 * pj.cross(pk);
    if det.abs() <= 1e-13 * 4.0 * pj.norm() * pk.norm() || det == 0.0 {
        return Vec::new();
    }
    let ej = pj.norm_sq() - d[1].radius * d[1].radius + r0 * r0;
    let ek = pk.norm_sq() - d[2].radius * d[2].radius + r0 * r0;
    let fj = -2.0 * (d[1].radius - r0);
    let fk = -2.0 * (d[2].radius - r0);
    // Solve [2pj; 2pk] c = e + f v by Cramer's rule.
    let solve = |uj: f64, uk: f64| -> Point {
        Point::new(
            (uj * 2.0 * pk.y - uk * 2.0 * pj.y) / det,
            (2.0 * pj.x * uk - 2.0 * pk.x * uj) / det,
        )
    };
    let a = solve(ej, ek);
    let b = solve(fj, fk);
    let qa = b.norm_sq() - 1.0;
    let qb = 2.0 * (a.dot(b) - r0);
    let qc = a.norm_sq() - r0 * r0;

    let mut roots: Vec<f64> = Vec::with_capacity(2);
    let scale = 1.0 + qb.abs() + qc.abs();
    if qa.abs() <= 1e-14 * scale {
        if qb != 0.0 {
            roots.push(-qc / qb);
        }
    } else {
        let mut disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            if disc > -1e-12 * qb * qb.max(1.0) {
                disc = 0.0;
            } else {
                return Vec::new();
            }
        }
        let q = -0.5 * (qb + qb.signum() * disc.sqrt());
        if q != 0.0 {
            roots.push(q / qa);
            roots.push(qc / q);
        } else {
            roots.push(-qb / (2.0 * qa));
        }
    }

    let rmin = d.iter().map(|x| x.radius).fold(f64::INFINITY, f64::min);
    roots
        .into_iter()
        .filter(|v| v.is_finite() && rmin + v >= -1e-9 * (1.0 + v.abs()))
        .map(|v| polish(d, o + a + b * v, v))
        .collect()
}

/// Newton steps on `|c - c_m| - r_m - v = 0`, m = 0..3; keeps the better point.
fn polish(d: [&Disk; 3], mut c: Point, mut v: f64) -> Point {
    let residual = |c: Point, v: f64| -> f64 {
        d.iter()
            .map(|x| (x.gap_to(c) - v).abs())
            .fold(0.0, f64::max)
    };
    let mut res = residual(c, v);
    for _ in 0..3 {
        let mut rows = [[0.0f64; 4]; 3];
        for (m, disk) in d.iter().enumerate() {
            let w = c - disk.center;
            let n = w.norm();
            if n == 0.0 {
                return c;
            }
            rows[m] = [w.x / n, w.y / n, -1.0, -(n - disk.radius - v)];
        }
        let Some(step) = solve3(rows) else { break };
        let c2 = c + Point::new(step[0], step[1]);
        let v2 = v + step[2];
        let res2 = residual(c2, v2);
        if res2 < res {
            c = c2;
            v = v2;
            res = res2;
        } else {
            break;
        }
    }
    c
}

fn solve3(mut m: [[f64; 4]; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in col..4 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

fn instance_diameter(disks: &[Disk]) -> f64 {
    let (mut lo, mut hi) = (
        Point::new(f64::INFINITY, f64::INFINITY),
        Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for d in disks {
        lo = Point::new(lo.x.min(d.center.x - d.radius), lo.y.min(d.center.y - d.radius));
        hi = Point::new(hi.x.max(d.center.x + d.radius), hi.y.max(d.center.y + d.radius));
    }
    (hi - lo).norm()
}

fn run_recursion(disks: &[Disk], seed: u64) -> Option<Basis> {
    let mut order: Vec<usize> = (0..disks.len()).collect();
    DetRng::new(seed).shuffle(&mut order);
    let first = order[0];
    let start = solve_small(disks, &[first]);
    let mut solver = Solver {
        disks,
        order,
        exhausted: false,
    };
    let n = disks.len();
    let b = solver.msw(n, &[], start, 0);
    (!solver.exhausted).then_some(b)
}

/// Deterministic active-set iteration: solve exactly on a working set, add the
/// worst violator, repeat. The working-set optimum increases monotonically
/// towards the global one.
fn run_fallback(disks: &[Disk]) -> Basis {
    let centroid = disks
        .iter()
        .fold(Point::ORIGIN, |acc, d| acc + d.center * (1.0 / disks.len() as f64));
    let worst = worst_index(disks, centroid);
    let mut working: Vec<usize> = vec![worst];
    let mut b = solve_small(disks, &working);
    for _ in 0..disks.len() + 1 {
        let h = worst_index(disks, b.center);
        let gap = disks[h].gap_to(b.center);
        let slack = VIOLATION_REL * (gap.abs() + disks[h].radius + b.center.norm() + 1.0);
        if gap <= b.value + slack || working.contains(&h) {
            break;
        }
        working.push(h);
        let mut solver = Solver {
            disks,
            order: working.clone(),
            exhausted: false,
        };
        let m = working.len();
        let start = solve_small(disks, &working[..1]);
        b = solver.msw(m, &[], start, 0);
    }
    b
}

fn worst_index(disks: &[Disk], c: Point) -> usize {
    let mut best = 0;
    let mut best_gap = f64::NEG_INFINITY;
    for (i, d) in disks.iter().enumerate() {
        let g = d.gap_to(c);
        if g > best_gap {
            best_gap = g;
            best = i;
        }
    }
    best
}

/// Checks tangency of every basis disk and feasibility of all disks.
fn certificate_holds(disks: &[Disk], b: &Basis) -> bool {
    let scale = 1.0 + b.value.abs();
    let tangent = b.members().iter().all(|&i| {
        let d = &disks[i];
        let dist = d.center.dist(b.center);
        (dist - (d.radius + b.value)).abs() <= TANGENCY_REL * (scale + d.radius)
    });
    if !tangent {
        return false;
    }
    disks.iter().all(|d| {
        let dist = d.center.dist(b.center);
        dist - d.radius
            <= b.value + 4.0 * VIOLATION_REL * (dist + d.radius + b.value.abs() + b.center.norm())
    })
}

fn solve_checked(disks: &[Disk], seed: u64) -> Basis {
    match run_recursion(disks, seed) {
        Some(b) if certificate_holds(disks, &b) => b,
        _ => run_fallback(disks),
    }
}

/// Smallest disk intersecting all `disks`, with a basis of up to three tangent disks.
pub fn smallest_intersecting_disk(
    disks: &[Disk],
    tol: &Tolerance,
    seed: u64,
) -> Result<MinStabResult> {
    if disks.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut b = solve_checked(disks, seed);

    if b.len < 3 && b.value > tol.eps_abs {
        // Optimum pinned by fewer than three tangencies: perturb the centers
        // and re-solve, then evaluate the perturbed center on the originals.
        let magnitude = 1e-9 * instance_diameter(disks);
        let mut rng = DetRng::new(mix_seed(seed, 0x5045_5254));
        let perturbed: Vec<Disk> = disks
            .iter()
            .map(|d| Disk::new(d.center + rng.unit_vector() * magnitude, d.radius))
            .collect();
        let pb = solve_checked(&perturbed, seed);
        if pb.len == 3 {
            b = Basis {
                value: objective(pb.center, disks.iter()),
                ..pb
            };
        }
    }

    let value = objective(b.center, disks.iter());
    let mut basis = b.members().to_vec();
    basis.sort_unstable();
    Ok(MinStabResult {
        dstar: Disk::new(b.center, value.max(0.0)),
        basis,
        optimal_value: value,
    })
}
