//! Normalized coordinate frames around `d*`.
//!
//! In every frame `d*` is the unit disk at the origin. The base frame also
//! places the first tangency point at `(0, -1)` and orders the other two so
//! that the largest angle of the tangent-line triangle sits between lines 2
//! and 3. The alternative frame instead rotates a chosen pivot disk onto the
//! positive x-axis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Disk, Line, Point, Similarity, Tolerance};
use crate::min_stabber::MinStabResult;

/// Angular ties closer than this (degrees) fall back to index order.
const ANGLE_TIE_DEG: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseFrame {
    pub to_frame: Similarity,
    /// Input indices of `d1, d2, d3`.
    pub tangent_disks: [usize; 3],
    pub tangency_points: [Point; 3],
    /// Tangent lines to `d*` at the tangency points; positive side holds `d_i`.
    pub tangent_lines: [Line; 3],
    /// Reflections of the tangent lines through the origin.
    pub reflected_lines: [Line; 3],
    /// Angle of the triangle between lines 1 and 3, in degrees.
    pub beta: f64,
    /// Angle between lines 1 and 2.
    pub gamma: f64,
    /// Angle at the intersection of lines 2 and 3.
    pub apex: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AltFrame {
    pub to_frame: Similarity,
    pub pivot_disk: usize,
}

/// Map taking `d*` to the unit disk at the origin, without rotation.
pub fn normalizing_map(ms: &MinStabResult) -> Result<Similarity> {
    let r = ms.dstar.radius;
    if !(r > 0.0) {
        return Err(Error::NotFramed);
    }
    let c = ms.dstar.center;
    Ok(Similarity {
        rotation: 0.0,
        scale: 1.0 / r,
        translation: c * (-1.0 / r),
        reflect: false,
    })
}

fn rotated_normalizing_map(ms: &MinStabResult, rotation: f64) -> Result<Similarity> {
    let base = normalizing_map(ms)?;
    Ok(base.then(&Similarity::rotation(rotation)))
}

fn lines_for(points: &[Point; 3]) -> ([Line; 3], [Line; 3]) {
    let tangent = points.map(|x| Line {
        normal: x,
        offset: 1.0,
    });
    let reflected = tangent.map(|l| l.reflect_through_origin());
    (tangent, reflected)
}

/// Counterclockwise angle from `a` to `b` in degrees, in `[0, 360)`.
fn ccw_gap_deg(a: Point, b: Point) -> f64 {
    let g = a.cross(b).atan2(a.dot(b)).to_degrees();
    if g < 0.0 {
        g + 360.0
    } else {
        g
    }
}

pub fn build_base_frame(disks: &[Disk], ms: &MinStabResult) -> Result<BaseFrame> {
    if ms.basis.len() != 3 {
        return Err(Error::DegenerateBasis {
            size: ms.basis.len(),
        });
    }
    for &i in &ms.basis {
        if i >= disks.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: disks.len(),
            });
        }
    }
    let norm = normalizing_map(ms)?;
    let dirs: Vec<Point> = ms
        .basis
        .iter()
        .map(|&i| norm.apply(disks[i].center).normalized())
        .collect::<Result<_>>()?;

    // For each basis disk, the gap between the other two (the arc not
    // containing it) is the supplement of the triangle angle opposite it.
    let mut best: Option<(usize, f64)> = None;
    for k in 0..3 {
        let (a, b) = (dirs[(k + 1) % 3], dirs[(k + 2) % 3]);
        let g = ccw_gap_deg(a, b).min(ccw_gap_deg(b, a));
        let replace = match best {
            None => true,
            Some((bk, bg)) => {
                g < bg - ANGLE_TIE_DEG
                    || (g <= bg + ANGLE_TIE_DEG && ms.basis[k] < ms.basis[bk])
            }
        };
        if replace {
            best = Some((k, g));
        }
    }
    let (k1, _) = best.expect("three candidates");
    let x1 = dirs[k1];
    let rotation = -std::f64::consts::FRAC_PI_2 - x1.angle();
    let to_frame = rotated_normalizing_map(ms, rotation)?;

    let others = [(k1 + 1) % 3, (k1 + 2) % 3];
    let from_x1 = |k: usize| ccw_gap_deg(x1, dirs[k]);
    // d3 is reached first when turning counterclockwise from x1.
    let (k3, k2) = if from_x1(others[0]) <= from_x1(others[1]) {
        (others[0], others[1])
    } else {
        (others[1], others[0])
    };

    let order = [k1, k2, k3];
    let points = order.map(|k| dirs[k].rotate(rotation));
    let points = [Point::new(0.0, -1.0), points[1], points[2]];
    let (tangent_lines, reflected_lines) = lines_for(&points);

    let g12 = ccw_gap_deg(points[1], points[0]);
    let g13 = ccw_gap_deg(points[0], points[2]);
    let g23 = ccw_gap_deg(points[2], points[1]);
    Ok(BaseFrame {
        to_frame,
        tangent_disks: order.map(|k| ms.basis[k]),
        tangency_points: points,
        tangent_lines,
        reflected_lines,
        beta: (180.0 - g13).max(0.0),
        gamma: (180.0 - g12).max(0.0),
        apex: (180.0 - g23).max(0.0),
    })
}

/// Mirrors the frame across its y-axis and swaps the roles of `d2` and `d3`.
pub fn reflect_base_frame(bf: &BaseFrame) -> BaseFrame {
    let mirror = |p: Point| Point::new(-p.x, p.y);
    let points = [
        mirror(bf.tangency_points[0]),
        mirror(bf.tangency_points[2]),
        mirror(bf.tangency_points[1]),
    ];
    let (tangent_lines, reflected_lines) = lines_for(&points);
    BaseFrame {
        to_frame: bf.to_frame.then(&Similarity::reflection()),
        tangent_disks: [bf.tangent_disks[0], bf.tangent_disks[2], bf.tangent_disks[1]],
        tangency_points: points,
        tangent_lines,
        reflected_lines,
        beta: bf.gamma,
        gamma: bf.beta,
        apex: bf.apex,
    }
}

/// Frame in which the center of `disks[pivot]` lies on the positive x-axis.
pub fn build_alt_frame(
    disks: &[Disk],
    ms: &MinStabResult,
    pivot: usize,
    tol: &Tolerance,
) -> Result<AltFrame> {
    let d = disks.get(pivot).ok_or(Error::IndexOutOfRange {
        index: pivot,
        len: disks.len(),
    })?;
    let norm = normalizing_map(ms)?;
    let nd = norm.apply_disk(d);
    let delta = nd.center.norm() - nd.radius;
    if delta <= tol.eps_abs {
        return Err(Error::PivotContainsCenter {
            index: pivot,
            delta,
        });
    }
    let to_frame = rotated_normalizing_map(ms, -nd.center.angle())?;
    Ok(AltFrame {
        to_frame,
        pivot_disk: pivot,
    })
}

/// `δ` values and radii of disks in frame units, with queries over `D⁻`.
#[derive(Debug, Clone, PartialEq)]
pub struct DMinus {
    pub deltas: Vec<f64>,
    pub radii: Vec<f64>,
    threshold: f64,
}

impl DMinus {
    /// From disks already expressed in a frame where `d*` is the unit disk at the origin.
    pub fn from_frame_disks(frame_disks: &[Disk], tol: &Tolerance) -> Self {
        DMinus {
            deltas: frame_disks
                .iter()
                .map(|d| d.center.norm() - d.radius)
                .collect(),
            radii: frame_disks.iter().map(|d| d.radius).collect(),
            threshold: tol.eps_abs,
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.deltas[i] > self.threshold
    }

    /// Indices of `D⁻_{≤k}`; pass `f64::INFINITY` for all of `D⁻`.
    pub fn within(&self, k: f64) -> impl Iterator<Item = usize> + '_ {
        (0..self.deltas.len()).filter(move |&i| self.contains(i) && self.radii[i] <= k)
    }

    /// Smallest radius over `D⁻` and its (lowest) index; `None` when `D⁻` is empty.
    pub fn r_min(&self) -> Option<(f64, usize)> {
        let mut best: Option<(f64, usize)> = None;
        for i in self.within(f64::INFINITY) {
            if best.map_or(true, |(r, _)| self.radii[i] < r) {
                best = Some((self.radii[i], i));
            }
        }
        best
    }

    /// Disk of `D⁻_{≤k}` with the largest `δ`, lowest index on ties.
    pub fn argmax_delta(&self, k: f64) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in self.within(k) {
            if best.map_or(true, |b| self.deltas[i] > self.deltas[b]) {
                best = Some(i);
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// Indices of `D⁻_{≤k}`.
    pub members: Vec<usize>,
    /// `δ` of every input disk, in frame units.
    pub deltas: Vec<f64>,
    pub r_min: Option<f64>,
    pub d_min: Option<usize>,
}

/// Classifies input disks relative to `d*`; all quantities in frame units.
pub fn classify_dminus(
    disks: &[Disk],
    ms: &MinStabResult,
    k: f64,
    tol: &Tolerance,
) -> Result<Classification> {
    let norm = normalizing_map(ms)?;
    let dm = DMinus::from_frame_disks(&norm.apply_disks(disks), tol);
    let members = dm.within(k).collect();
    let rm = dm.r_min();
    Ok(Classification {
        members,
        deltas: dm.deltas,
        r_min: rm.map(|(r, _)| r),
        d_min: rm.map(|(_, i)| i),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::min_stabber::smallest_intersecting_disk;
    use crate::rng::DetRng;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn symmetric() -> Vec<Disk> {
        [270.0f64, 30.0, 150.0]
            .iter()
            .map(|a| Disk::new(Point::from_angle(a.to_radians()) * 2.0, 1.0))
            .collect()
    }

    fn close(a: Point, b: Point, eps: f64) -> bool {
        (a - b).norm() <= eps
    }

    /// Recomputes every frame invariant from scratch.
    fn assert_frame_invariants(disks: &[Disk], bf: &BaseFrame) {
        let t = bf.to_frame;
        let fd = t.apply_disks(disks);
        let x = bf.tangency_points;
        assert!(close(x[0], Point::new(0.0, -1.0), 1e-9));
        for i in 0..3 {
            assert!((x[i].norm() - 1.0).abs() < 1e-9);
            let d = fd[bf.tangent_disks[i]];
            assert!(d.gap_to(x[i]).abs() < 1e-7 * (1.0 + d.radius), "x{} off d{}", i + 1, i + 1);
            let l = bf.tangent_lines[i];
            assert!(l.signed_distance(x[i]).abs() < 1e-12);
            assert!(l.signed_distance(d.center) > 0.0);
            assert!(l.signed_distance(Point::ORIGIN) < 0.0);
            let lr = bf.reflected_lines[i];
            assert!(lr.signed_distance(-x[i]).abs() < 1e-12);
        }
        assert!(bf.tangent_lines[1].slope() > 0.0);
        assert!(bf.tangent_lines[2].slope() < 0.0);
        assert!(bf.apex >= bf.beta.max(bf.gamma) - 1e-9);
        assert!((bf.apex + bf.beta + bf.gamma - 180.0).abs() < 1e-9);
        // Origin inside triangle x1 x2 x3.
        let s = |a: Point, b: Point| (b - a).cross(Point::ORIGIN - a);
        let (s1, s2, s3) = (s(x[0], x[1]), s(x[1], x[2]), s(x[2], x[0]));
        assert!((s1 >= -1e-9 && s2 >= -1e-9 && s3 >= -1e-9) || (s1 <= 1e-9 && s2 <= 1e-9 && s3 <= 1e-9));
        for d in &fd {
            assert!(d.gap_to(Point::ORIGIN) <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn symmetric_instance_gives_identity() {
        let disks = symmetric();
        let ms = smallest_intersecting_disk(&disks, &tol(), 0).unwrap();
        let bf = build_base_frame(&disks, &ms).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert_eq!(bf.tangent_disks, [0, 2, 1]);
        assert!(close(bf.tangency_points[1], Point::new(-h, 0.5), 1e-9));
        assert!(close(bf.tangency_points[2], Point::new(h, 0.5), 1e-9));
        assert!((bf.tangent_lines[1].slope() - 3f64.sqrt()).abs() < 1e-9);
        assert!((bf.tangent_lines[2].slope() + 3f64.sqrt()).abs() < 1e-9);
        for a in [bf.beta, bf.gamma, bf.apex] {
            assert!((a - 60.0).abs() < 1e-9);
        }
        let p = Point::new(0.3, -0.7);
        assert!(close(bf.to_frame.apply(p), p, 1e-9));
        assert_frame_invariants(&disks, &bf);
    }

    #[test]
    fn rotated_instance_undoes_rotation() {
        let disks = symmetric();
        let rot = Similarity::rotation(40f64.to_radians());
        let moved = rot.apply_disks(&disks);
        let ms0 = smallest_intersecting_disk(&disks, &tol(), 0).unwrap();
        let ms1 = smallest_intersecting_disk(&moved, &tol(), 0).unwrap();
        let a = build_base_frame(&disks, &ms0).unwrap();
        let b = build_base_frame(&moved, &ms1).unwrap();
        assert_eq!(a.tangent_disks, b.tangent_disks);
        for i in 0..3 {
            assert!(close(a.tangency_points[i], b.tangency_points[i], 1e-9));
        }
        let p = Point::new(1.5, 2.5);
        assert!(close(b.to_frame.apply(rot.apply(p)), a.to_frame.apply(p), 1e-9));
    }

    #[test]
    fn degenerate_basis_rejected() {
        let disks = [Disk::xyr(0.0, 0.0, 1.0), Disk::xyr(4.0, 0.0, 1.0)];
        let ms = MinStabResult {
            dstar: Disk::xyr(2.0, 0.0, 1.0),
            basis: vec![0, 1],
            optimal_value: 1.0,
        };
        assert_eq!(
            build_base_frame(&disks, &ms),
            Err(Error::DegenerateBasis { size: 2 })
        );
    }

    #[test]
    fn reflection_swaps_and_is_involution() {
        let disks = symmetric();
        let ms = smallest_intersecting_disk(&disks, &tol(), 0).unwrap();
        let bf = build_base_frame(&disks, &ms).unwrap();
        let r = reflect_base_frame(&bf);
        assert_eq!(r.tangent_disks, [0, 1, 2]);
        assert_frame_invariants(&disks, &r);
        let rr = reflect_base_frame(&r);
        assert_eq!(rr.tangent_disks, bf.tangent_disks);
        for i in 0..3 {
            assert!(close(rr.tangency_points[i], bf.tangency_points[i], 1e-9));
        }
        let p = Point::new(-3.0, 7.0);
        assert!(close(rr.to_frame.apply(p), bf.to_frame.apply(p), 1e-9));
    }

    fn unit_dstar() -> MinStabResult {
        MinStabResult {
            dstar: Disk::xyr(0.0, 0.0, 1.0),
            basis: vec![],
            optimal_value: 1.0,
        }
    }

    #[test]
    fn alt_frame_examples() {
        let ms = unit_dstar();
        let disks = [Disk::xyr(0.0, 3.0, 1.0), Disk::xyr(5.0, 0.0, 1.0), Disk::xyr(0.0, 0.5, 2.0)];
        let a = build_alt_frame(&disks, &ms, 0, &tol()).unwrap();
        assert!((a.to_frame.rotation + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(close(a.to_frame.apply(disks[0].center), Point::new(3.0, 0.0), 1e-12));
        let b = build_alt_frame(&disks, &ms, 1, &tol()).unwrap();
        assert_eq!(b.to_frame.rotation, 0.0);
        assert!(matches!(
            build_alt_frame(&disks, &ms, 2, &tol()),
            Err(Error::PivotContainsCenter { index: 2, .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let ms = unit_dstar();
        let disks = [
            Disk::xyr(3.0, 0.0, 2.0),
            Disk::xyr(0.0, 0.5, 2.0),
            Disk::xyr(0.0, 6.0, 2.5),
            Disk::xyr(0.0, -7.0, 3.0),
            Disk::xyr(20.0, 0.0, 7.0),
        ];
        let c = classify_dminus(&disks, &ms, 2.0, &tol()).unwrap();
        assert_eq!(c.deltas[0], 1.0);
        assert_eq!(c.deltas[1], -1.5);
        assert_eq!(c.members, vec![0]);
        assert_eq!(c.r_min, Some(2.0));
        let c = classify_dminus(&disks[2..], &ms, f64::INFINITY, &tol()).unwrap();
        assert_eq!(c.r_min, Some(2.5));
        assert_eq!(c.d_min, Some(0));
        let c = classify_dminus(&disks[1..2], &ms, 2.0, &tol()).unwrap();
        assert_eq!(c.r_min, None);
    }

    fn random_frame_instance(seed: u64) -> Option<(Vec<Disk>, MinStabResult)> {
        let mut rng = DetRng::new(seed);
        let n = 3 + rng.index(20);
        let disks: Vec<Disk> = (0..n)
            .map(|_| Disk::xyr(rng.range(-10.0, 10.0), rng.range(-10.0, 10.0), rng.range(0.1, 3.0)))
            .collect();
        let ms = smallest_intersecting_disk(&disks, &tol(), seed).ok()?;
        (ms.basis.len() == 3 && ms.optimal_value > 1e-6).then_some((disks, ms))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn random_frames_satisfy_invariants(seed in 0u64..1_000_000) {
            if let Some((disks, ms)) = random_frame_instance(seed) {
                let bf = build_base_frame(&disks, &ms).unwrap();
                assert_frame_invariants(&disks, &bf);
                assert_frame_invariants(&disks, &reflect_base_frame(&bf));
                for k in 0..3 {
                    let x = bf.tangency_points[k];
                    if k > 0 {
                        prop_assert!(x.y > -1e-9 && x.y < 1.0 + 1e-9);
                    }
                }
            }
        }

        #[test]
        fn frame_equivariance(seed in 0u64..1_000_000, rot in -3.0f64..3.0, s in 0.1f64..10.0,
                              tx in -50.0f64..50.0, ty in -50.0f64..50.0) {
            if let Some((disks, ms)) = random_frame_instance(seed) {
                let t = Similarity::new(rot, s, Point::new(tx, ty), false).unwrap();
                let moved = t.apply_disks(&disks);
                let ms2 = smallest_intersecting_disk(&moved, &tol(), seed).unwrap();
                let a = build_base_frame(&disks, &ms).unwrap();
                let b = build_base_frame(&moved, &ms2).unwrap();
                prop_assert_eq!(a.tangent_disks, b.tangent_disks);
                for i in 0..3 {
                    prop_assert!(close(a.tangency_points[i], b.tangency_points[i], 1e-6));
                }
            }
        }

        #[test]
        fn random_alt_frame_on_axis(seed in 0u64..1_000_000) {
            if let Some((disks, ms)) = random_frame_instance(seed) {
                let norm = normalizing_map(&ms).unwrap();
                let dm = DMinus::from_frame_disks(&norm.apply_disks(&disks), &tol());
                if let Some(p) = dm.argmax_delta(f64::INFINITY) {
                    let a = build_alt_frame(&disks, &ms, p, &tol()).unwrap();
                    let c = a.to_frame.apply(disks[p].center);
                    prop_assert!(c.x > 0.0);
                    prop_assert!(c.y.abs() <= 1e-9 * c.x.abs());
                }
            }
        }
    }
}
