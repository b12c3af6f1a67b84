//! Planar primitives: points, disks, oriented lines, similarity transforms,
//! and the tolerance-aware predicates the rest of the crate is built on.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute and relative slack used by every predicate.
///
/// The slack for a quantity of magnitude `m` is `max(eps_abs, eps_rel * m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS_ABS: f64 = 1e-9;
    pub const DEFAULT_EPS_REL: f64 = 1e-12;

    pub fn new(eps_abs: f64, eps_rel: f64) -> Result<Self> {
        if !(eps_abs > 0.0 && eps_abs.is_finite() && eps_rel > 0.0 && eps_rel.is_finite()) {
            return Err(Error::InvalidDisk(format!(
                "tolerances must be positive and finite (eps_abs = {eps_abs}, eps_rel = {eps_rel})"
            )));
        }
        Ok(Tolerance { eps_abs, eps_rel })
    }

    #[inline]
    pub fn slack(&self, magnitude: f64) -> f64 {
        self.eps_abs.max(self.eps_rel * magnitude.abs())
    }

    /// The same tolerance with `eps_abs` multiplied by `factor`, for moving
    /// between frame units and input units.
    pub fn scaled(&self, factor: f64) -> Tolerance {
        Tolerance {
            eps_abs: self.eps_abs * factor,
            eps_rel: self.eps_rel,
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_abs: Self::DEFAULT_EPS_ABS,
            eps_rel: Self::DEFAULT_EPS_REL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(Error::InvalidDisk(format!("non-finite coordinate ({x}, {y})")))
        }
    }

    /// Unit vector at `angle` radians from the positive x-axis.
    #[inline]
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn normalized(self) -> Result<Point> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Point::new(self.x / n, self.y / n))
    }

    /// Counterclockwise rotation by a quarter turn.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Closed disk. Radius zero is a point-disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    #[inline]
    pub const fn new(center: Point, radius: f64) -> Self {
        Disk { center, radius }
    }

    pub fn xyr(x: f64, y: f64, radius: f64) -> Self {
        Disk::new(Point::new(x, y), radius)
    }

    pub fn try_new(center: Point, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(Error::InvalidDisk("non-finite center or radius".into()));
        }
        if radius < 0.0 {
            return Err(Error::InvalidDisk(format!("negative radius {radius}")));
        }
        Ok(Disk { center, radius })
    }

    /// Signed gap between the boundary of the disk and `p`; negative inside.
    #[inline]
    pub fn gap_to(&self, p: Point) -> f64 {
        self.center.dist(p) - self.radius
    }
}

/// Oriented line `{p : a*x + b*y = c}` with unit normal `(a, b)`.
/// The positive side is `a*x + b*y > c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub normal: Point,
    pub offset: f64,
}

impl Line {
    pub fn new(normal: Point, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Line {
            normal: normal * (1.0 / n),
            offset: offset / n,
        })
    }

    /// Line through `p` whose positive side is in direction `normal`.
    pub fn through(p: Point, normal: Point) -> Result<Self> {
        let n = normal.normalized()?;
        Ok(Line {
            normal: n,
            offset: n.dot(p),
        })
    }

    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Direction along the line, a quarter turn counterclockwise from the normal.
    pub fn direction(&self) -> Point {
        self.normal.perp()
    }

    /// Slope `dy/dx`; infinite for vertical lines.
    pub fn slope(&self) -> f64 {
        let d = self.direction();
        if d.x == 0.0 {
            f64::INFINITY
        } else {
            d.y / d.x
        }
    }

    /// Point reflection through the origin, keeping the positive side mirrored.
    pub fn reflect_through_origin(&self) -> Line {
        Line {
            normal: -self.normal,
            offset: self.offset,
        }
    }

    /// Mirror image across the y-axis.
    pub fn reflect_y_axis(&self) -> Line {
        Line {
            normal: Point::new(-self.normal.x, self.normal.y),
            offset: self.offset,
        }
    }

    pub fn foot(&self, p: Point) -> Point {
        p - self.normal * self.signed_distance(p)
    }

    pub fn intersection(&self, other: &Line) -> Option<Point> {
        let det = self.normal.cross(other.normal);
        if det.abs() < 1e-15 {
            return None;
        }
        let x = (self.offset * other.normal.y - other.offset * self.normal.y) / det;
        let y = (self.normal.x * other.offset - other.normal.x * self.offset) / det;
        Some(Point::new(x, y))
    }

    pub fn is_normalized(&self) -> bool {
        (self.normal.norm() - 1.0).abs() <= 1e-12
    }
}

/// Plane similarity applied as reflect (across the y-axis) → rotate → scale → translate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    pub rotation: f64,
    pub scale: f64,
    pub translation: Point,
    pub reflect: bool,
}

impl Default for Similarity {
    fn default() -> Self {
        Similarity::identity()
    }
}

impl Similarity {
    pub const fn identity() -> Self {
        Similarity {
            rotation: 0.0,
            scale: 1.0,
            translation: Point::ORIGIN,
            reflect: false,
        }
    }

    pub fn new(rotation: f64, scale: f64, translation: Point, reflect: bool) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite() && rotation.is_finite() && translation.is_finite())
        {
            return Err(Error::InvalidDisk(format!(
                "similarity needs a positive finite scale (got {scale})"
            )));
        }
        Ok(Similarity {
            rotation,
            scale,
            translation,
            reflect,
        })
    }

    pub fn translation(t: Point) -> Self {
        Similarity {
            translation: t,
            ..Similarity::identity()
        }
    }

    pub fn rotation(angle: f64) -> Self {
        Similarity {
            rotation: angle,
            ..Similarity::identity()
        }
    }

    pub fn reflection() -> Self {
        Similarity {
            reflect: true,
            ..Similarity::identity()
        }
    }

    /// Precomputed linear part, for bulk application.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.rotation.sin_cos();
        let f = if self.reflect { -1.0 } else { 1.0 };
        [
            [self.scale * c * f, -self.scale * s],
            [self.scale * s * f, self.scale * c],
        ]
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        let q = if self.reflect { Point::new(-p.x, p.y) } else { p };
        q.rotate(self.rotation) * self.scale + self.translation
    }

    pub fn apply_disk(&self, d: &Disk) -> Disk {
        Disk::new(self.apply(d.center), d.radius * self.scale)
    }

    /// Maps every disk with a single trigonometric evaluation.
    pub fn apply_disks(&self, disks: &[Disk]) -> Vec<Disk> {
        let m = self.matrix();
        let t = self.translation;
        disks
            .iter()
            .map(|d| {
                let p = d.center;
                Disk::new(
                    Point::new(
                        m[0][0] * p.x + m[0][1] * p.y + t.x,
                        m[1][0] * p.x + m[1][1] * p.y + t.y,
                    ),
                    d.radius * self.scale,
                )
            })
            .collect()
    }

    pub fn apply_line(&self, l: &Line) -> Line {
        // A point on the line and the normal are mapped; orientation follows the normal.
        let p = l.normal * l.offset;
        let n = if self.reflect {
            Point::new(-l.normal.x, l.normal.y)
        } else {
            l.normal
        }
        .rotate(self.rotation);
        let q = self.apply(p);
        Line {
            normal: n,
            offset: n.dot(q),
        }
    }

    pub fn invert(&self) -> Similarity {
        let rotation = if self.reflect {
            self.rotation
        } else {
            -self.rotation
        };
        let mut inv = Similarity {
            rotation,
            scale: 1.0 / self.scale,
            translation: Point::ORIGIN,
            reflect: self.reflect,
        };
        inv.translation = -inv.apply(self.translation);
        inv
    }

    /// `self` followed by `next`: `(self.then(next)).apply(p) == next.apply(self.apply(p))`.
    pub fn then(&self, next: &Similarity) -> Similarity {
        let rot_self = if next.reflect {
            -self.rotation
        } else {
            self.rotation
        };
        Similarity {
            rotation: next.rotation + rot_self,
            scale: self.scale * next.scale,
            translation: next.apply(self.translation),
            reflect: self.reflect ^ next.reflect,
        }
    }
}

#[inline]
pub fn disks_intersect(d1: &Disk, d2: &Disk, tol: &Tolerance) -> bool {
    let reach = d1.radius + d2.radius;
    d1.center.dist(d2.center) <= reach + tol.slack(reach)
}

#[inline]
pub fn point_in_disk(p: Point, d: &Disk, tol: &Tolerance) -> bool {
    d.center.dist(p) <= d.radius + tol.slack(d.radius)
}

pub fn disk_intersects_line(d: &Disk, l: &Line, tol: &Tolerance) -> bool {
    l.signed_distance(d.center).abs() <= d.radius + tol.slack(d.radius)
}

/// Tangent line to `d` at boundary point `p`, oriented so the center lies on
/// the negative side at signed distance `-radius`.
pub fn tangent_line_at(d: &Disk, p: Point, tol: &Tolerance) -> Result<Line> {
    let off = d.gap_to(p);
    if off.abs() > tol.slack(d.radius) {
        return Err(Error::NotOnBoundary {
            x: p.x,
            y: p.y,
            offset: off,
        });
    }
    let n = (p - d.center).normalized()?;
    Ok(Line {
        normal: n,
        offset: n.dot(d.center) + d.radius,
    })
}
