//! Randomized property suites for the geometric lemmas the four-point
//! construction relies on.
//!
//! Each sampler builds a configuration in a local chart (reference line on
//! the x-axis, directed to the right, "above" meaning positive y), then
//! places it in the plane with a random rotation, scale and translation.
//! The checker maps back through the stored reference line, re-validates
//! every hypothesis and evaluates the conclusion.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Disk, Point, Similarity, Tolerance};
use crate::rng::{mix_seed, DetRng};

const MAX_REJECTIONS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ObsId {
    #[serde(rename = "OBS1")]
    Obs1,
    #[serde(rename = "OBS2_OUTSIDE_STRIP")]
    Obs2OutsideStrip,
    #[serde(rename = "OBS3_RADIUS")]
    Obs3Radius,
    #[serde(rename = "OBS4_B")]
    Obs4B,
    #[serde(rename = "OBS5_BIG")]
    Obs5Big,
    #[serde(rename = "COR6_SMALLER")]
    Cor6Smaller,
    #[serde(rename = "OBS7_5PLUS")]
    Obs7FivePlus,
    #[serde(rename = "OBS8_RAYS")]
    Obs8Rays,
}

impl ObsId {
    pub const ALL: [ObsId; 8] = [
        ObsId::Obs1,
        ObsId::Obs2OutsideStrip,
        ObsId::Obs3Radius,
        ObsId::Obs4B,
        ObsId::Obs5Big,
        ObsId::Cor6Smaller,
        ObsId::Obs7FivePlus,
        ObsId::Obs8Rays,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ObsId::Obs1 => "OBS1",
            ObsId::Obs2OutsideStrip => "OBS2_OUTSIDE_STRIP",
            ObsId::Obs3Radius => "OBS3_RADIUS",
            ObsId::Obs4B => "OBS4_B",
            ObsId::Obs5Big => "OBS5_BIG",
            ObsId::Cor6Smaller => "COR6_SMALLER",
            ObsId::Obs7FivePlus => "OBS7_5PLUS",
            ObsId::Obs8Rays => "OBS8_RAYS",
        }
    }
}

impl fmt::Display for ObsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObsId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        ObsId::ALL
            .into_iter()
            .find(|o| o.as_str() == norm)
            .ok_or_else(|| Error::InvalidProfile(format!("unknown observation {s:?}")))
    }
}

/// A sampled configuration. Unused slots are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservationConfig {
    pub obs_id: ObsId,
    /// Point on the directed reference line `l`.
    pub line_point: Point,
    /// Unit direction of `l`; "above" is to its left.
    pub line_dir: Point,
    pub a: Option<Point>,
    pub b: Option<Point>,
    pub p: Option<Point>,
    pub eta: Option<Disk>,
    pub eta_prime: Option<Disk>,
    pub delta: Option<Disk>,
    pub gamma: Option<Disk>,
    pub epsilon: Disk,
}

impl ObservationConfig {
    fn local(obs_id: ObsId, epsilon: Disk) -> Self {
        ObservationConfig {
            obs_id,
            line_point: Point::ORIGIN,
            line_dir: Point::new(1.0, 0.0),
            a: None,
            b: None,
            p: None,
            eta: None,
            eta_prime: None,
            delta: None,
            gamma: None,
            epsilon,
        }
    }

    fn map(&self, f: impl Fn(Point) -> Point, scale: f64) -> Self {
        let md = |d: Option<Disk>| d.map(|d| Disk::new(f(d.center), d.radius * scale));
        ObservationConfig {
            obs_id: self.obs_id,
            line_point: self.line_point,
            line_dir: self.line_dir,
            a: self.a.map(&f),
            b: self.b.map(&f),
            p: self.p.map(&f),
            eta: md(self.eta),
            eta_prime: md(self.eta_prime),
            delta: md(self.delta),
            gamma: md(self.gamma),
            epsilon: Disk::new(f(self.epsilon.center), self.epsilon.radius * scale),
        }
    }

    fn placed(&self, sim: &Similarity) -> Self {
        let mut out = self.map(|p| sim.apply(p), sim.scale);
        out.line_point = sim.apply(self.line_point);
        out.line_dir = self.line_dir.rotate(sim.rotation);
        out
    }

    /// Coordinates relative to the reference line.
    fn to_local(&self) -> Result<Self> {
        let u = self.line_dir.normalized()?;
        let o = self.line_point;
        let mut out = self.map(
            |p| {
                let d = p - o;
                Point::new(d.dot(u), d.dot(u.perp()))
            },
            1.0,
        );
        out.line_point = Point::ORIGIN;
        out.line_dir = Point::new(1.0, 0.0);
        Ok(out)
    }

    fn extent(&self) -> f64 {
        let mut m: f64 = 0.0;
        for p in [self.a, self.b, self.p].into_iter().flatten() {
            m = m.max(p.norm());
        }
        let disks = [self.eta, self.eta_prime, self.delta, self.gamma, Some(self.epsilon)];
        for d in disks.into_iter().flatten() {
            m = m.max(d.center.norm()).max(d.radius);
        }
        m
    }
}

fn slot<T>(v: Option<T>, id: ObsId, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::HypothesisViolation(format!("{id}: missing {name}")))
}

fn require(cond: bool, id: ObsId, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::HypothesisViolation(format!("{id}: {what}")))
    }
}

fn on_arc(theta: f64, from: f64, to: f64, slack: f64) -> bool {
    let span = (to - from).rem_euclid(TAU);
    let off = (theta - from).rem_euclid(TAU);
    off <= span + slack || off >= TAU - slack
}

fn seg_dist(c: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let t = ((c - a).dot(ab) / ab.norm_sq()).clamp(0.0, 1.0);
    c.dist(a + ab * t)
}

fn contains_a_or_b(e: &Disk, a: Point, b: Point, s: f64) -> bool {
    e.gap_to(a) <= s || e.gap_to(b) <= s
}

fn meets(d1: &Disk, d2: &Disk, s: f64) -> bool {
    d1.center.dist(d2.center) <= d1.radius + d2.radius + s
}

/// Horizontal extent of the intersection of two disks, each grown by `s`.
fn lens_x_range(d1: &Disk, d2: &Disk, s: f64) -> Option<(f64, f64)> {
    let d1 = &Disk::new(d1.center, d1.radius + s);
    let d2 = &Disk::new(d2.center, d2.radius + s);
    let dist = d1.center.dist(d2.center);
    if dist > d1.radius + d2.radius + s {
        return None;
    }
    let mut cand = Vec::with_capacity(6);
    for (d, o) in [(d1, d2), (d2, d1)] {
        for sx in [-1.0, 1.0] {
            let q = d.center + Point::new(sx * d.radius, 0.0);
            if o.gap_to(q) <= s {
                cand.push(q.x);
            }
        }
    }
    if dist > 0.0 && dist >= (d1.radius - d2.radius).abs() - s {
        let u = (d2.center - d1.center) * (1.0 / dist);
        let along = (dist * dist + d1.radius * d1.radius - d2.radius * d2.radius) / (2.0 * dist);
        let h = (d1.radius * d1.radius - along * along).max(0.0).sqrt();
        let foot = d1.center + u * along;
        for sg in [-1.0, 1.0] {
            cand.push((foot + u.perp() * (sg * h)).x);
        }
    }
    let lo = cand.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = cand.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Some((lo, hi))
}

/// Distance from `c` to the part of `d` inside the strip `x0 <= x <= x1`.
fn dist_to_disk_in_strip(c: Point, d: &Disk, x0: f64, x1: f64) -> Option<f64> {
    let near = if c.dist(d.center) <= d.radius {
        c
    } else {
        d.center + (c - d.center) * (d.radius / c.dist(d.center))
    };
    if near.x >= x0 && near.x <= x1 {
        return Some(c.dist(near));
    }
    let mut best: Option<f64> = None;
    for x in [x0, x1] {
        let dx = x - d.center.x;
        if dx.abs() <= d.radius {
            let h = (d.radius * d.radius - dx * dx).sqrt();
            let y = c.y.clamp(d.center.y - h, d.center.y + h);
            let v = c.dist(Point::new(x, y));
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    best
}

/// Disk through `a` and `b` centered on their bisector and externally tangent to `eta`.
fn bisector_tangent_disk(a: Point, b: Point, eta: &Disk) -> Option<Disk> {
    let m = (a + b) * 0.5;
    let h = a.dist(b) * 0.5;
    let up = (b - a).perp() * (1.0 / (2.0 * h));
    let f = |t: f64| (m + up * t).dist(eta.center) - h.hypot(t) - eta.radius;
    let mut lo = -1.0;
    while f(lo) >= 0.0 {
        lo *= 2.0;
        if lo < -1e12 {
            return None;
        }
    }
    let mut hi = 1.0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Some(Disk::new(m + up * t, h.hypot(t)))
}

/// Upper outer common tangent of two disks as `(unit normal, offset)`.
fn upper_common_tangent(d1: &Disk, d2: &Disk) -> Option<(Point, f64)> {
    let dvec = d1.center - d2.center;
    let len = dvec.norm();
    let cos = (d2.radius - d1.radius) / len;
    if !(len > 0.0 && cos.abs() < 1.0) {
        return None;
    }
    let base = dvec * (1.0 / len);
    let phi = cos.acos();
    let n = [base.rotate(phi), base.rotate(-phi)]
        .into_iter()
        .max_by(|u, v| u.y.total_cmp(&v.y))?;
    if n.y <= 0.0 {
        return None;
    }
    Some((n, n.dot(d1.center) + d1.radius))
}

/// Right-most intersection of a disk boundary with `{x : n.x = k}`.
fn right_crossing(d: &Disk, n: Point, k: f64) -> Option<Point> {
    let off = n.dot(d.center) - k;
    if off.abs() > d.radius {
        return None;
    }
    let foot = d.center - n * off;
    let h = (d.radius * d.radius - off * off).sqrt();
    let t = n.perp();
    let (p, q) = (foot + t * h, foot - t * h);
    Some(if p.x >= q.x { p } else { q })
}

struct BigSetting {
    eta: Disk,
    delta: Disk,
    top: f64,
    theta_q: f64,
    theta_r: f64,
}

impl BigSetting {
    fn new(eta: Disk, delta: Disk) -> Self {
        let top = eta.center.y + eta.radius;
        let rho = delta.radius;
        BigSetting {
            eta,
            delta,
            top,
            theta_q: (eta.center - delta.center).angle(),
            theta_r: ((top - delta.center.y) / rho).clamp(-1.0, 1.0).asin(),
        }
    }

    fn point_at(&self, theta: f64) -> Point {
        self.delta.center + Point::from_angle(theta) * self.delta.radius
    }
}

// ---------------------------------------------------------------- samplers

fn grow(rng: &mut DetRng) -> f64 {
    match rng.index(4) {
        0 => 1.0,
        1 => 1.0 + rng.log_uniform(1e-12, 1e-6),
        _ => 1.0 + rng.log_uniform(1e-6, 1.0),
    }
}

fn pos(rng: &mut DetRng, scale: f64) -> f64 {
    if rng.bernoulli(0.1) {
        0.0
    } else {
        scale * rng.log_uniform(1e-6, 10.0)
    }
}

fn sample_strip(id: ObsId, rng: &mut DetRng) -> Option<ObservationConfig> {
    let w = rng.log_uniform(0.1, 10.0);
    let (a, b) = (Point::ORIGIN, Point::new(w, 0.0));
    let r = w * rng.log_uniform(0.02, 20.0);
    let tangent = id != ObsId::Obs3Radius && rng.bernoulli(0.25);
    let eta = if tangent {
        Disk::xyr(rng.range(0.0, w), -r, r)
    } else {
        let gap = w * rng.log_uniform(1e-4, 2.0);
        Disk::xyr(rng.range(-r, w + r), -(r + gap), r)
    };
    let center = match id {
        ObsId::Obs2OutsideStrip => {
            let off = w * rng.log_uniform(1e-6, 5.0);
            let x = if rng.bernoulli(0.5) { -off } else { w + off };
            Point::new(x, w * rng.log_uniform(1e-4, 10.0))
        }
        ObsId::Obs3Radius => Point::new(rng.range(0.0, w), w * rng.log_uniform(1e-4, 10.0)),
        _ => Point::new(rng.range(-2.0 * w, 3.0 * w), w * rng.log_uniform(1e-4, 10.0)),
    };
    let mut cfg = ObservationConfig::local(id, Disk::new(center, 0.0));
    cfg.a = Some(a);
    cfg.b = Some(b);
    cfg.eta = Some(eta);
    if id == ObsId::Obs3Radius {
        let delta = bisector_tangent_disk(a, b, &eta)?;
        cfg.delta = Some(delta);
        let reach = delta.radius + eta.radius;
        let dx = center.x - eta.center.x;
        let exact = rng.bernoulli(0.2) && dx.abs() < reach;
        let (c, need) = if exact {
            let y = eta.center.y + (reach * reach - dx * dx).sqrt();
            (Point::new(center.x, y), delta.radius)
        } else {
            (center, delta.radius.max(center.dist(eta.center) - eta.radius))
        };
        if c.y <= 0.0 {
            return None;
        }
        cfg.epsilon = Disk::new(c, if exact { need } else { need * grow(rng) });
        return Some(cfg);
    }
    let need = if rng.bernoulli(0.5) {
        dist_to_disk_in_strip(center, &eta, 0.0, w)?
    } else {
        let lo = (eta.center.x - r).max(0.0);
        let hi = (eta.center.x + r).min(w);
        if lo > hi {
            return None;
        }
        let x = rng.range(lo, hi);
        let h = (r * r - (x - eta.center.x).powi(2)).max(0.0).sqrt();
        let y = eta.center.y + h - 2.0 * h * rng.uniform().powi(3);
        center.dist(Point::new(x, y))
    };
    cfg.epsilon = Disk::new(center, need * grow(rng));
    Some(cfg)
}

fn sample_obs4(rng: &mut DetRng) -> Option<ObservationConfig> {
    let w = rng.log_uniform(0.1, 10.0);
    let ya = w * rng.log_uniform(0.01, 10.0);
    let yb = w * rng.log_uniform(0.01, 10.0);
    if (ya - yb).abs() < 1e-6 * w {
        return None;
    }
    // yb((x)^2 + ya^2) = ya((x - w)^2 + yb^2)
    let qa = yb - ya;
    let qb = 2.0 * ya * w;
    let qc = yb * ya * ya - ya * (w * w + yb * yb);
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let q = -0.5 * (qb + qb.signum() * disc.sqrt());
    let roots = [q / qa, qc / q];
    let x = roots[rng.index(2)];
    if !x.is_finite() {
        return None;
    }
    let rd = (x * x + ya * ya) / (2.0 * ya);
    let delta = Disk::xyr(x, rd, rd);
    let cy = rd + pos(rng, w);
    let c = Point::new(rng.range(0.0, w), cy);
    let mut cfg = ObservationConfig::local(ObsId::Obs4B, Disk::new(c, cy * grow(rng)));
    cfg.a = Some(Point::new(0.0, ya));
    cfg.b = Some(Point::new(w, yb));
    cfg.delta = Some(delta);
    Some(cfg)
}

fn big_setting(rng: &mut DetRng) -> BigSetting {
    let r = rng.log_uniform(0.2, 5.0);
    let y = r * rng.range(1e-3, 1.0);
    let eta = Disk::xyr(0.0, y, r);
    let top = y + r;
    let rho = 0.5 * top * rng.log_uniform(1.0, 20.0);
    let px = -((rho + r).powi(2) - (rho - y).powi(2)).sqrt();
    BigSetting::new(eta, Disk::xyr(px, rho, rho))
}

fn arc_angle(rng: &mut DetRng, lo: f64, hi: f64) -> f64 {
    match rng.index(10) {
        0 => lo,
        1 => hi,
        _ => rng.range(lo, hi),
    }
}

fn sample_quadrant_eps(rng: &mut DetRng, a: Point, scale: f64, reach: &[Disk]) -> Disk {
    let c = Point::new(a.x - pos(rng, scale), a.y + pos(rng, scale));
    let need = reach
        .iter()
        .map(|d| c.dist(d.center) - d.radius)
        .fold(c.y, f64::max);
    Disk::new(c, need * grow(rng))
}

fn sample_big(id: ObsId, rng: &mut DetRng) -> Option<ObservationConfig> {
    let st = big_setting(rng);
    let left = st.eta.center.x - st.eta.radius;
    let a = if rng.bernoulli(0.1) && left < st.delta.center.x + st.delta.radius {
        // Boundary: a directly below or above the leftmost point of eta.
        let c = ((left - st.delta.center.x) / st.delta.radius).clamp(-1.0, 1.0);
        st.point_at(-c.acos())
    } else {
        st.point_at(arc_angle(rng, -FRAC_PI_2, st.theta_q))
    };
    if a.x > left || !on_arc((a - st.delta.center).angle(), -FRAC_PI_2, st.theta_q, 1e-12) {
        return None;
    }
    let mut cfg = ObservationConfig::local(id, Disk::new(Point::ORIGIN, 0.0));
    cfg.a = Some(a);
    cfg.eta = Some(st.eta);
    cfg.delta = Some(st.delta);
    let scale = st.eta.radius;
    match id {
        ObsId::Obs5Big => {
            cfg.b = Some(st.point_at(arc_angle(rng, st.theta_r, FRAC_PI_2)));
            cfg.epsilon = sample_quadrant_eps(rng, a, scale, &[st.eta]);
        }
        ObsId::Cor6Smaller => {
            cfg.b = Some(st.point_at(arc_angle(rng, st.theta_r, FRAC_PI_2)));
            let r2 = st.eta.radius * rng.range(0.01, 1.0);
            let c2 = rng.in_disk(st.eta.center, st.eta.radius - r2);
            let inner = Disk::new(c2, r2);
            cfg.eta_prime = Some(inner);
            cfg.epsilon = sample_quadrant_eps(rng, a, scale, &[inner]);
        }
        _ => {
            // gamma contains a: (a.x - x)^2 <= 2 a.y r - a.y^2 for center (x, r).
            let rg = rng.range((0.5 * a.y).max(1e-9 * st.top), 0.5 * st.top * 0.999);
            let half = (2.0 * a.y * rg - a.y * a.y).max(0.0).sqrt();
            let t = match rng.index(6) {
                0 => -1.0,
                1 => 1.0,
                _ => rng.range(-1.0, 1.0),
            };
            let xg = a.x + t * half;
            if !(rg < 0.5 * st.top && xg < left) {
                return None;
            }
            let gamma = Disk::xyr(xg, rg, rg);
            let (n, k) = upper_common_tangent(&st.eta, &gamma)?;
            let s = right_crossing(&st.delta, n, k)?;
            let theta_s = (s - st.delta.center).angle();
            if !(s.x > st.delta.center.x && theta_s >= st.theta_q && theta_s <= st.theta_r) {
                return None;
            }
            cfg.gamma = Some(gamma);
            cfg.b = Some(st.point_at(arc_angle(rng, theta_s, st.theta_r)));
            cfg.epsilon = sample_quadrant_eps(rng, a, scale, &[st.eta, gamma]);
        }
    }
    Some(cfg)
}

fn sample_rays(rng: &mut DetRng) -> ObservationConfig {
    let c = Point::new(-pos(rng, 1.0), pos(rng, 1.0));
    let need = if rng.bernoulli(0.5) {
        c.norm()
    } else {
        c.dist(Point::new(pos(rng, 1.0), -pos(rng, 1.0)))
    };
    let mut cfg = ObservationConfig::local(ObsId::Obs8Rays, Disk::new(c, need * grow(rng)));
    cfg.p = Some(Point::ORIGIN);
    cfg
}

fn sample_local(id: ObsId, rng: &mut DetRng) -> Option<ObservationConfig> {
    match id {
        ObsId::Obs1 | ObsId::Obs2OutsideStrip | ObsId::Obs3Radius => sample_strip(id, rng),
        ObsId::Obs4B => sample_obs4(rng),
        ObsId::Obs5Big | ObsId::Cor6Smaller | ObsId::Obs7FivePlus => sample_big(id, rng),
        ObsId::Obs8Rays => Some(sample_rays(rng)),
    }
}

/// Draws a configuration satisfying the hypotheses of `obs_id`.
pub fn sample_observation(obs_id: ObsId, seed: u64) -> Result<ObservationConfig> {
    let mut rng = DetRng::new(mix_seed(seed, obs_id as u64));
    for _ in 0..MAX_REJECTIONS {
        let Some(cfg) = sample_local(obs_id, &mut rng) else {
            continue;
        };
        let sim = Similarity::new(
            rng.range(0.0, TAU),
            rng.log_uniform(0.1, 10.0),
            rng.in_disk(Point::ORIGIN, 100.0),
            false,
        )?;
        return Ok(cfg.placed(&sim));
    }
    Err(Error::SamplerExhausted {
        attempts: MAX_REJECTIONS,
    })
}

// ---------------------------------------------------------------- checkers

fn check_strip(c: &ObservationConfig, s: f64) -> Result<bool> {
    let id = c.obs_id;
    let a = slot(c.a, id, "a")?;
    let b = slot(c.b, id, "b")?;
    let eta = slot(c.eta, id, "eta")?;
    let e = c.epsilon;
    require(a.y.abs() <= s && b.y.abs() <= s, id, "a and b lie on l")?;
    require(a.x < b.x, id, "a precedes b")?;
    require(eta.center.y < 0.0, id, "eta centered below l")?;
    let depth = -eta.center.y;
    let clear = eta.radius < depth + s;
    let touches_ab = (eta.radius - depth).abs() <= s
        && eta.center.x >= a.x - s
        && eta.center.x <= b.x + s;
    require(clear || touches_ab, id, "eta misses l or is tangent to ab")?;
    require(
        eta.center.x + eta.radius >= a.x - s && eta.center.x - eta.radius <= b.x + s,
        id,
        "eta meets the strip",
    )?;
    require(e.center.y > -s, id, "epsilon centered above l")?;
    let in_strip = e.center.x >= a.x - s && e.center.x <= b.x + s;
    match id {
        ObsId::Obs3Radius => {
            let d = slot(c.delta, id, "delta")?;
            require(
                d.gap_to(a).abs() <= s && d.gap_to(b).abs() <= s,
                id,
                "delta passes through a and b",
            )?;
            require(
                (d.center.dist(eta.center) - d.radius - eta.radius).abs() <= s,
                id,
                "delta tangent to eta",
            )?;
            require(in_strip, id, "epsilon centered in the strip")?;
            require(e.radius >= d.radius - s, id, "epsilon at least as large as delta")?;
            require(meets(&e, &eta, s), id, "epsilon meets eta")?;
            Ok(contains_a_or_b(&e, a, b, s))
        }
        _ => {
            if id == ObsId::Obs2OutsideStrip {
                require(
                    e.center.x <= a.x + s || e.center.x >= b.x - s,
                    id,
                    "epsilon centered outside the strip",
                )?;
            }
            let hits = lens_x_range(&e, &eta, s)
                .is_some_and(|(lo, hi)| hi >= a.x - s && lo <= b.x + s);
            require(hits, id, "epsilon meets eta inside the strip")?;
            Ok(match id {
                ObsId::Obs1 => seg_dist(e.center, a, b) <= e.radius + s,
                _ => contains_a_or_b(&e, a, b, s),
            })
        }
    }
}

fn check_obs4(c: &ObservationConfig, s: f64) -> Result<bool> {
    let id = c.obs_id;
    let a = slot(c.a, id, "a")?;
    let b = slot(c.b, id, "b")?;
    let d = slot(c.delta, id, "delta")?;
    let e = c.epsilon;
    require(a.y > 0.0 && b.y > 0.0, id, "a and b above l")?;
    require(a.x < b.x, id, "a left of b")?;
    require(
        d.gap_to(a).abs() <= s && d.gap_to(b).abs() <= s,
        id,
        "delta passes through a and b",
    )?;
    require(
        d.center.y > 0.0 && (d.center.y - d.radius).abs() <= s,
        id,
        "delta tangent to l from above",
    )?;
    require(
        e.center.x >= a.x - s && e.center.x <= b.x + s,
        id,
        "epsilon centered in the strip",
    )?;
    require(e.center.y >= d.center.y - s, id, "epsilon centered above delta")?;
    require(e.radius >= e.center.y.abs() - s, id, "epsilon meets l")?;
    Ok(contains_a_or_b(&e, a, b, s))
}

fn check_big(c: &ObservationConfig, s: f64) -> Result<bool> {
    let id = c.obs_id;
    let a = slot(c.a, id, "a")?;
    let b = slot(c.b, id, "b")?;
    let eta = slot(c.eta, id, "eta")?;
    let d = slot(c.delta, id, "delta")?;
    let e = c.epsilon;
    require(eta.center.y > 0.0, id, "eta centered above l")?;
    require(eta.radius >= eta.center.y - s, id, "eta meets l")?;
    require(
        d.center.y > 0.0 && (d.center.y - d.radius).abs() <= s,
        id,
        "delta tangent to l from above",
    )?;
    require(
        (d.center.dist(eta.center) - d.radius - eta.radius).abs() <= s && d.center.x < eta.center.x,
        id,
        "delta tangent to eta from the left",
    )?;
    let st = BigSetting::new(eta, d);
    require(2.0 * d.radius >= st.top - s, id, "delta meets l'")?;
    let ang = s / d.radius;
    let theta = |q: Point| (q - d.center).angle();
    require(
        d.gap_to(a).abs() <= s && on_arc(theta(a), -FRAC_PI_2, st.theta_q, ang),
        id,
        "a on the arc from p to q",
    )?;
    require(
        eta.center.x - eta.radius >= a.x - s,
        id,
        "eta right of the vertical through a",
    )?;
    require(
        e.center.x <= a.x + s && e.center.y >= a.y - s,
        id,
        "epsilon centered in the upper-left quadrant of a",
    )?;
    require(e.radius >= e.center.y.abs() - s, id, "epsilon meets l")?;
    match id {
        ObsId::Obs5Big | ObsId::Cor6Smaller => {
            require(
                d.gap_to(b).abs() <= s && on_arc(theta(b), st.theta_r, FRAC_PI_2, ang),
                id,
                "b on the arc from r to s",
            )?;
            let target = if id == ObsId::Cor6Smaller {
                let inner = slot(c.eta_prime, id, "eta_prime")?;
                require(
                    inner.center.dist(eta.center) + inner.radius <= eta.radius + s,
                    id,
                    "eta' inside eta",
                )?;
                inner
            } else {
                eta
            };
            require(meets(&e, &target, s), id, "epsilon meets eta")?;
        }
        _ => {
            let g = slot(c.gamma, id, "gamma")?;
            require(
                g.center.y > 0.0 && (g.center.y - g.radius).abs() <= s,
                id,
                "gamma tangent to l from above",
            )?;
            require(g.center.y + g.radius < st.top + s, id, "gamma misses l'")?;
            require(
                g.center.x < eta.center.x - eta.radius + s,
                id,
                "gamma centered left of eta",
            )?;
            require(g.gap_to(a) <= s, id, "a inside gamma")?;
            let (n, k) = upper_common_tangent(&eta, &g)
                .ok_or_else(|| Error::HypothesisViolation(format!("{id}: no common tangent")))?;
            let sp = right_crossing(&d, n, k).ok_or_else(|| {
                Error::HypothesisViolation(format!("{id}: tangent misses delta"))
            })?;
            require(
                on_arc(theta(sp), st.theta_q, st.theta_r, ang),
                id,
                "s on the arc from q to r",
            )?;
            require(
                d.gap_to(b).abs() <= s && on_arc(theta(b), theta(sp), st.theta_r, ang),
                id,
                "b on the arc from s to r",
            )?;
            require(meets(&e, &eta, s) && meets(&e, &g, s), id, "epsilon meets eta and gamma")?;
        }
    }
    Ok(contains_a_or_b(&e, a, b, s))
}

fn check_rays(c: &ObservationConfig, s: f64) -> Result<bool> {
    let id = c.obs_id;
    let p = slot(c.p, id, "p")?;
    let d = c.epsilon;
    require(
        d.center.x <= p.x + s && d.center.y >= p.y - s,
        id,
        "center in the upper-left quadrant of p",
    )?;
    let near = Point::new(d.center.x.max(p.x), d.center.y.min(p.y));
    require(
        d.gap_to(near) <= s,
        id,
        "disk meets the lower-right quadrant of p",
    )?;
    Ok(d.gap_to(p) <= s)
}

/// Re-validates the hypotheses of `cfg` and returns whether the conclusion
/// holds. A violated hypothesis is an error, not a counterexample.
pub fn check_observation(cfg: &ObservationConfig, tol: &Tolerance) -> Result<bool> {
    let local = cfg.to_local()?;
    let s = tol.slack(local.extent());
    match cfg.obs_id {
        ObsId::Obs1 | ObsId::Obs2OutsideStrip | ObsId::Obs3Radius => check_strip(&local, s),
        ObsId::Obs4B => check_obs4(&local, s),
        ObsId::Obs5Big | ObsId::Cor6Smaller | ObsId::Obs7FivePlus => check_big(&local, s),
        ObsId::Obs8Rays => check_rays(&local, s),
    }
}
