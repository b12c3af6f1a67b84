//! Four- and five-point stabbing of pairwise-intersecting disks.
//!
//! Both algorithms solve for `d*`, normalize it to the unit disk at the
//! origin, choose a fixed point set in that frame and map it back.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framing::{build_alt_frame, build_base_frame, reflect_base_frame, BaseFrame, DMinus};
use crate::geom::{Disk, Point, Similarity, Tolerance};
use crate::min_stabber::{smallest_intersecting_disk, MinStabResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseTag {
    Helly,
    Five,
    FourRminGe4,
    FourRminLe2A17,
    FourRminLe2Ypos,
    FourRminLe2Yneg,
    FourMidSub1,
    FourMidSub2,
    FourMidSub3,
    FourMidSub4,
}

impl CaseTag {
    pub const ALL: [CaseTag; 10] = [
        CaseTag::Helly,
        CaseTag::Five,
        CaseTag::FourRminGe4,
        CaseTag::FourRminLe2A17,
        CaseTag::FourRminLe2Ypos,
        CaseTag::FourRminLe2Yneg,
        CaseTag::FourMidSub1,
        CaseTag::FourMidSub2,
        CaseTag::FourMidSub3,
        CaseTag::FourMidSub4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Helly => "HELLY",
            CaseTag::Five => "FIVE",
            CaseTag::FourRminGe4 => "FOUR_RMIN_GE4",
            CaseTag::FourRminLe2A17 => "FOUR_RMIN_LE2_A17",
            CaseTag::FourRminLe2Ypos => "FOUR_RMIN_LE2_YPOS",
            CaseTag::FourRminLe2Yneg => "FOUR_RMIN_LE2_YNEG",
            CaseTag::FourMidSub1 => "FOUR_MID_SUB1",
            CaseTag::FourMidSub2 => "FOUR_MID_SUB2",
            CaseTag::FourMidSub3 => "FOUR_MID_SUB3",
            CaseTag::FourMidSub4 => "FOUR_MID_SUB4",
        }
    }

    pub fn parse(s: &str) -> Option<CaseTag> {
        CaseTag::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabResult {
    /// Stabbing points in input coordinates.
    pub points: Vec<Point>,
    pub case_tag: CaseTag,
    /// The same points in the frame they were chosen in.
    pub frame_points: Vec<Point>,
    /// Map from input coordinates to that frame.
    pub to_frame: Similarity,
}

pub fn five_point_set() -> [Point; 5] {
    [
        Point::new(0.0, 0.0),
        Point::new(2.0, 0.0),
        Point::new(-2.0, 0.0),
        Point::new(0.0, 2.0),
        Point::new(0.0, -2.0),
    ]
}

/// Frame points for each four-point case (`None` for the non-four tags).
pub fn four_point_set(tag: CaseTag) -> Option<[Point; 4]> {
    let p = Point::new;
    let pr = p(0.5 + 2.0 * 6f64.sqrt() / 5.0, 0.2);
    Some(match tag {
        CaseTag::FourRminGe4 => [p(0.0, 0.0), p(-4.0, 1.0), p(4.0, 1.0), p(0.0, -3.0)],
        CaseTag::FourRminLe2A17 => [p(-0.5, 0.0), p(0.0, -1.7), p(0.0, 1.7), p(1.5, 0.0)],
        CaseTag::FourRminLe2Ypos => [p(-0.5, 0.0), p(0.5, -2.5), p(-0.5, 1.83), pr],
        CaseTag::FourRminLe2Yneg => [
            p(-0.5, 0.0),
            p(0.5, 2.5),
            p(-0.5, -1.83),
            p(pr.x, -pr.y),
        ],
        CaseTag::FourMidSub1 => [p(0.0, 0.0), p(2.0, 0.0), p(0.4, 2.0), p(0.4, -2.0)],
        CaseTag::FourMidSub2 => [p(0.0, 0.0), p(2.0, 0.0), p(-0.15, 2.7), p(-0.15, -2.7)],
        CaseTag::FourMidSub3 => [p(0.0, 0.0), p(2.0, 0.0), p(-0.15, 1.75), p(-0.15, -1.75)],
        CaseTag::FourMidSub4 => [p(0.0, 0.0), p(2.5, 1.0), p(-2.5, 1.0), p(0.0, -1.52)],
        CaseTag::Helly | CaseTag::Five => return None,
    })
}

/// Convex angle in degrees, in `[0, 90]`, between segment `0c` and the x-axis.
pub fn compute_alpha(c: Point) -> Result<f64> {
    if c.x == 0.0 && c.y == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(c.y.abs().atan2(c.x.abs()).to_degrees())
}

/// Branch threshold for the angle test, in degrees.
pub const ALPHA_SPLIT_DEG: f64 = 17.0;
/// Angle slack for the threshold comparison, in degrees.
pub const ALPHA_EPS_DEG: f64 = 1e-9;

fn helly(ms: &MinStabResult) -> StabResult {
    let c = ms.dstar.center;
    StabResult {
        points: vec![c],
        case_tag: CaseTag::Helly,
        frame_points: vec![Point::ORIGIN],
        to_frame: Similarity::translation(-c),
    }
}

fn mapped(tag: CaseTag, to_frame: Similarity, frame_points: &[Point]) -> StabResult {
    let back = to_frame.invert();
    StabResult {
        points: frame_points.iter().map(|&p| back.apply(p)).collect(),
        case_tag: tag,
        frame_points: frame_points.to_vec(),
        to_frame,
    }
}

fn solve(disks: &[Disk], tol: &Tolerance, seed: u64) -> Result<MinStabResult> {
    smallest_intersecting_disk(disks, tol, seed)
}

/// Five points stabbing `disks`, which must be pairwise intersecting.
pub fn stab_five(disks: &[Disk], tol: &Tolerance, seed: u64) -> Result<StabResult> {
    let ms = solve(disks, tol, seed)?;
    if ms.is_helly(tol) {
        return Ok(helly(&ms));
    }
    let bf = build_base_frame(disks, &ms)?;
    Ok(mapped(CaseTag::Five, bf.to_frame, &five_point_set()))
}

/// What the four-point dispatch decided, in frame terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Dispatch {
    pub tag: CaseTag,
    pub to_frame: Similarity,
    /// Smallest radius over `D⁻` in frame units; `None` when `D⁻` is empty.
    pub r_min: Option<f64>,
    /// The disk that keyed the branch: the small disk for the `LE2` cases,
    /// the pivot for the first three middle subcases.
    pub key_disk: Option<usize>,
}

/// Runs the four-point case analysis on a non-Helly instance.
pub fn dispatch_four(
    disks: &[Disk],
    ms: &MinStabResult,
    tol: &Tolerance,
) -> Result<Dispatch> {
    let eps = tol.eps_abs;
    let bf: BaseFrame = build_base_frame(disks, ms)?;
    let frame_disks = bf.to_frame.apply_disks(disks);
    let dm = DMinus::from_frame_disks(&frame_disks, tol);
    let r_min = dm.r_min().map(|(r, _)| r);
    let base = |tag| Dispatch {
        tag,
        to_frame: bf.to_frame,
        r_min,
        key_disk: None,
    };

    let r = match r_min {
        None => return Ok(base(CaseTag::FourRminGe4)),
        Some(r) => r,
    };
    if r >= 4.0 - eps {
        return Ok(base(CaseTag::FourRminGe4));
    }

    if r <= 2.0 + eps {
        let d = dm
            .argmax_delta(2.0 + eps)
            .expect("r_min <= 2 implies a member of D-<=2");
        let mut frame = bf;
        let mut c = frame_disks[d].center;
        if c.x < 0.0 {
            frame = reflect_base_frame(&frame);
            c = Point::new(-c.x, c.y);
        }
        let alpha = compute_alpha(c)?;
        let tag = if alpha <= ALPHA_SPLIT_DEG + ALPHA_EPS_DEG {
            CaseTag::FourRminLe2A17
        } else if c.y > 0.0 {
            CaseTag::FourRminLe2Ypos
        } else {
            debug_assert!(c.y < 0.0);
            CaseTag::FourRminLe2Yneg
        };
        return Ok(Dispatch {
            tag,
            to_frame: frame.to_frame,
            r_min,
            key_disk: Some(d),
        });
    }

    let subcases = [
        (CaseTag::FourMidSub1, 5.0, 0.5),
        (CaseTag::FourMidSub2, 20.0, 0.5),
        (CaseTag::FourMidSub3, 5.0, 0.11),
    ];
    for (tag, k, min_delta) in subcases {
        if let Some(p) = dm.argmax_delta(k + eps) {
            if dm.deltas[p] >= min_delta - eps {
                let alt = build_alt_frame(disks, ms, p, tol)?;
                return Ok(Dispatch {
                    tag,
                    to_frame: alt.to_frame,
                    r_min,
                    key_disk: Some(p),
                });
            }
        }
    }
    Ok(base(CaseTag::FourMidSub4))
}

/// At most four points stabbing `disks`, which must be pairwise intersecting.
pub fn stab_four(disks: &[Disk], tol: &Tolerance, seed: u64) -> Result<StabResult> {
    let ms = solve(disks, tol, seed)?;
    if ms.is_helly(tol) {
        return Ok(helly(&ms));
    }
    let d = dispatch_four(disks, &ms, tol)?;
    let pts = four_point_set(d.tag).expect("four-point tag");
    Ok(mapped(d.tag, d.to_frame, &pts))
}
