//! Seeded generators of pairwise-intersecting disk families, and disk files.
//!
//! Every generated disk intersects a hidden core disk. Disks that contain the
//! core meet every other such disk, so only the remaining ("fringe") disks go
//! through rejection against the fringe disks accepted so far.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Disk, Point, Similarity, Tolerance};
use crate::numfmt::g17;
use crate::rng::{mix_seed, DetRng};
use crate::stabbing::{stab_five, stab_four, CaseTag};

/// Upper bound on candidate instances tried by the case-targeted profile.
pub const TARGET_ATTEMPTS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProfileName {
    CommonPoint,
    TangentCore,
    MixedRadii,
    CaseTargeted(CaseTag),
}

impl fmt::Display for ProfileName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileName::CommonPoint => f.write_str("COMMON_POINT"),
            ProfileName::TangentCore => f.write_str("TANGENT_CORE"),
            ProfileName::MixedRadii => f.write_str("MIXED_RADII"),
            ProfileName::CaseTargeted(t) => write!(f, "CASE_TARGETED({t})"),
        }
    }
}

impl std::str::FromStr for ProfileName {
    type Err = Error;

    /// Accepts `COMMON_POINT`, `TANGENT_CORE`, `MIXED_RADII` and
    /// `CASE_TARGETED(<tag>)` or `CASE_TARGETED:<tag>`, case-insensitively,
    /// with `-` accepted for `_`.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        match norm.as_str() {
            "COMMON_POINT" => return Ok(ProfileName::CommonPoint),
            "TANGENT_CORE" => return Ok(ProfileName::TangentCore),
            "MIXED_RADII" => return Ok(ProfileName::MixedRadii),
            _ => {}
        }
        let tag = norm
            .strip_prefix("CASE_TARGETED")
            .map(|rest| rest.trim_start_matches([':', '(']).trim_end_matches(')'))
            .and_then(CaseTag::parse)
            .ok_or_else(|| Error::InvalidProfile(s.to_string()))?;
        Ok(ProfileName::CaseTargeted(tag))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenProfile {
    pub name: ProfileName,
    pub n: usize,
    pub seed: u64,
    pub scale: f64,
}

impl GenProfile {
    pub fn new(name: ProfileName, n: usize, seed: u64) -> Self {
        GenProfile {
            name,
            n,
            seed,
            scale: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidProfile("n must be at least 1".into()));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidProfile(format!(
                "scale must be positive and finite (got {})",
                self.scale
            )));
        }
        Ok(())
    }
}

/// Radius law and placement of one class of fringe disks, in core units.
#[derive(Debug, Clone, Copy)]
struct FringeClass {
    r_lo: f64,
    r_hi: f64,
    /// Overlap with the core, as a fraction of `min(r, core)`: 0 is tangent.
    overlap_hi: f64,
}

#[derive(Debug, Clone)]
struct Recipe {
    core: f64,
    classes: Vec<(f64, FringeClass)>,
    /// Probability that a disk is drawn as a core-containing disk.
    containing: f64,
    /// Radius range of containing disks, in core units (at least 1).
    contain_hi: f64,
}

const MAX_FRINGE_TRIES: usize = 64;

fn fringe_disk(rng: &mut DetRng, core_c: Point, core: f64, class: &FringeClass) -> Disk {
    let r = core * rng.log_uniform(class.r_lo, class.r_hi);
    let s = rng.uniform() * class.overlap_hi * r.min(core);
    let dist = (core + r - s).max(0.0);
    Disk::new(core_c + rng.unit_vector() * dist, r)
}

fn containing_disk(rng: &mut DetRng, core_c: Point, core: f64, hi: f64) -> Disk {
    let r = core * rng.log_uniform(1.0 + 1e-6, hi.max(1.0 + 2e-6));
    let off = 0.999 * (r - core) * rng.uniform().sqrt();
    Disk::new(core_c + rng.unit_vector() * off, r)
}

fn pick_class<'a>(rng: &mut DetRng, classes: &'a [(f64, FringeClass)]) -> &'a FringeClass {
    let total: f64 = classes.iter().map(|c| c.0).sum();
    let mut u = rng.uniform() * total;
    for (w, c) in classes {
        if u < *w {
            return c;
        }
        u -= w;
    }
    &classes[classes.len() - 1].1
}

fn intersects(a: &Disk, b: &Disk) -> bool {
    a.center.dist(b.center) <= a.radius + b.radius
}

fn generate(rng: &mut DetRng, n: usize, scale: f64, recipe: &Recipe) -> Vec<Disk> {
    let core = recipe.core * scale;
    let core_c = Point::new(rng.range(-scale, scale), rng.range(-scale, scale));
    let mut out = Vec::with_capacity(n);
    let mut fringe: Vec<Disk> = Vec::new();
    while out.len() < n {
        if rng.bernoulli(recipe.containing) {
            out.push(containing_disk(rng, core_c, core, recipe.contain_hi));
            continue;
        }
        let mut accepted = None;
        for _ in 0..MAX_FRINGE_TRIES {
            let class = *pick_class(rng, &recipe.classes);
            let cand = fringe_disk(rng, core_c, core, &class);
            if fringe.iter().all(|f| intersects(f, &cand)) {
                accepted = Some(cand);
                break;
            }
        }
        let d = accepted.unwrap_or_else(|| containing_disk(rng, core_c, core, recipe.contain_hi));
        if accepted.is_some() {
            fringe.push(d);
        }
        out.push(d);
    }
    out
}

fn tangent_core_recipe(rng: &mut DetRng, n: usize) -> Recipe {
    Recipe {
        core: rng.range(0.05, 1.0),
        classes: vec![(
            1.0,
            FringeClass {
                r_lo: 0.2,
                r_hi: 20.0,
                overlap_hi: 0.25,
            },
        )],
        containing: 1.0 - (2000.0 / n as f64).min(1.0),
        contain_hi: 20.0,
    }
}

fn mixed_radii_recipe(rng: &mut DetRng, n: usize) -> Recipe {
    // Radii are drawn from [0.5, 50] in input units; the core is in the same units.
    let core = rng.log_uniform(0.5, 5.0);
    Recipe {
        core,
        classes: vec![(
            1.0,
            FringeClass {
                r_lo: 0.5 / core,
                r_hi: 50.0 / core,
                overlap_hi: 0.5,
            },
        )],
        containing: 1.0 - (1000.0 / n as f64).min(1.0),
        contain_hi: (50.0 / core).max(1.01),
    }
}

/// Layout of a framed candidate, biased towards a case. Radii and offsets
/// are relative to `d*`.
struct FrameSpec {
    /// Tangency angles of the three basis disks; random spread when `None`.
    angles: Option<[f64; 3]>,
    basis_r: [(f64, f64); 3],
    extra_r: (f64, f64),
    extra_delta: (f64, f64),
    /// Direction range for extra disk centers, in radians.
    extra_dir: (f64, f64),
}

fn frame_spec(rng: &mut DetRng, hint: CaseTag) -> FrameSpec {
    let lo = rng.log_uniform(0.3, 30.0);
    let any = (lo, rng.log_uniform(30.0, 300.0));
    let big = (20.0, 300.0);
    let spec = |basis_r, extra_r, extra_delta| FrameSpec {
        angles: None,
        basis_r: [basis_r; 3],
        extra_r,
        extra_delta,
        extra_dir: (0.0, std::f64::consts::TAU),
    };
    match hint {
        CaseTag::FourRminGe4 => spec(any, (4.0, 60.0), (-0.5, 1.0)),
        CaseTag::FourRminLe2Yneg if rng.bernoulli(0.5) => {
            // Huge disk tangent just past the top, key disk below-right.
            let x2 = 90f64 + rng.range(0.0, 15.0);
            let x3 = rng.range(0.5 * (x2 - 90.0) + 1.0, 60.0);
            FrameSpec {
                angles: Some([-90f64.to_radians(), x2.to_radians(), x3.to_radians()]),
                basis_r: [any, (50.0, 1000.0), any],
                extra_r: (1.0, 2.0),
                extra_delta: (0.0, 0.5),
                extra_dir: ((-35f64).to_radians(), (-17f64).to_radians()),
            }
        }
        CaseTag::FourRminLe2A17 | CaseTag::FourRminLe2Ypos | CaseTag::FourRminLe2Yneg => {
            spec(any, (0.2, 2.0), (0.0, 1.0))
        }
        CaseTag::FourMidSub1 => spec(any, (2.0, 5.0), (0.3, 1.0)),
        CaseTag::FourMidSub2 => spec(big, (2.0, 20.0), (0.0, 1.0)),
        CaseTag::FourMidSub3 => spec(big, (2.0, 5.0), (0.0, 0.5)),
        CaseTag::FourMidSub4 => spec(big, (2.0, 4.0), (0.0, 0.11)),
        CaseTag::Helly | CaseTag::Five => spec(any, (0.2, 60.0), (-1.0, 1.0)),
    }
}

fn spread_angles(rng: &mut DetRng) -> Option<[f64; 3]> {
    let mut gaps = [rng.uniform(), rng.uniform(), rng.uniform()].map(|u| 0.05 + u);
    let total: f64 = gaps.iter().sum();
    gaps.iter_mut().for_each(|g| *g *= std::f64::consts::TAU / total);
    if gaps.iter().any(|&g| g >= std::f64::consts::PI * 0.999) {
        return None;
    }
    let a0 = -std::f64::consts::FRAC_PI_2;
    Some([a0, a0 + gaps[0], a0 + gaps[0] + gaps[1]])
}

/// Candidate built around a unit `d*` at the origin: three disks tangent to
/// it at spread-out points, then extra disks meeting it, all pairwise
/// intersecting, finally moved by a random similarity.
fn framed_candidate(rng: &mut DetRng, n: usize, scale: f64, hint: CaseTag) -> Option<Vec<Disk>> {
    let spec = frame_spec(rng, hint);
    let angles = match spec.angles {
        Some(a) => a,
        None => spread_angles(rng)?,
    };
    let mut disks: Vec<Disk> = Vec::with_capacity(n);
    for (angle, rr) in angles.iter().zip(spec.basis_r).take(n.min(3)) {
        let r = rng.log_uniform(rr.0, rr.1);
        disks.push(Disk::new(Point::from_angle(*angle) * (1.0 + r), r));
    }
    let all_meet = |d: &Disk, disks: &[Disk]| disks.iter().all(|e| intersects(d, e));
    for i in 1..disks.len() {
        if !all_meet(&disks[i], &disks[..i]) {
            return None;
        }
    }
    while disks.len() < n {
        let mut placed = false;
        for _ in 0..MAX_FRINGE_TRIES {
            let r = rng.log_uniform(spec.extra_r.0, spec.extra_r.1);
            let delta = rng.range(spec.extra_delta.0, spec.extra_delta.1).max(-r);
            let dir = Point::from_angle(rng.range(spec.extra_dir.0, spec.extra_dir.1));
            let cand = Disk::new(dir * (r + delta), r);
            if all_meet(&cand, &disks) {
                disks.push(cand);
                placed = true;
                break;
            }
        }
        if !placed {
            // Contains d*, hence meets every disk that meets d*.
            let r = rng.log_uniform(1.5, 50.0);
            disks.push(Disk::new(rng.in_disk(Point::ORIGIN, 0.999 * (r - 1.0)), r));
        }
    }
    let t = Similarity::new(
        rng.range(0.0, std::f64::consts::TAU),
        scale * rng.log_uniform(0.1, 10.0),
        Point::new(rng.range(-scale, scale), rng.range(-scale, scale)) * 10.0,
        rng.bernoulli(0.5),
    )
    .ok()?;
    let mut out = t.apply_disks(&disks);
    rng.shuffle(&mut out);
    Some(out)
}

fn common_point(rng: &mut DetRng, n: usize, scale: f64) -> Vec<Disk> {
    let p = Point::new(rng.range(-scale, scale), rng.range(-scale, scale));
    (0..n)
        .map(|_| {
            let r = scale * rng.log_uniform(0.1, 10.0);
            let off = 0.999 * r * rng.uniform().sqrt();
            Disk::new(p + rng.unit_vector() * off, r)
        })
        .collect()
}

fn targeted(profile: &GenProfile, tag: CaseTag) -> Result<Vec<Disk>> {
    let tol = Tolerance::default();
    for attempt in 0..TARGET_ATTEMPTS {
        let mut rng = DetRng::new(mix_seed(profile.seed, attempt));
        let disks = match tag {
            CaseTag::Helly => common_point(&mut rng, profile.n, profile.scale),
            _ => match framed_candidate(&mut rng, profile.n, profile.scale, tag) {
                Some(d) => d,
                None => continue,
            },
        };
        let result = if tag == CaseTag::Five {
            stab_five(&disks, &tol, profile.seed)
        } else {
            stab_four(&disks, &tol, profile.seed)
        };
        if matches!(result, Ok(ref r) if r.case_tag == tag) {
            return Ok(disks);
        }
    }
    Err(Error::GenerationExhausted {
        attempts: TARGET_ATTEMPTS,
    })
}

/// Deterministic in the whole profile.
pub fn gen_instance(profile: &GenProfile) -> Result<Vec<Disk>> {
    profile.validate()?;
    let mut rng = DetRng::new(profile.seed);
    let (n, scale) = (profile.n, profile.scale);
    match profile.name {
        ProfileName::CommonPoint => Ok(common_point(&mut rng, n, scale)),
        ProfileName::TangentCore => {
            let recipe = tangent_core_recipe(&mut rng, n);
            Ok(generate(&mut rng, n, scale, &recipe))
        }
        ProfileName::MixedRadii => {
            let recipe = mixed_radii_recipe(&mut rng, n);
            Ok(generate(&mut rng, n, scale, &recipe))
        }
        ProfileName::CaseTargeted(tag) => targeted(profile, tag),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct DiskRecord {
    cx: f64,
    cy: f64,
    r: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DiskMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct DiskDocument {
    disks: Vec<DiskRecord>,
    #[serde(default)]
    meta: DiskMeta,
}

fn check_disk(line: usize, cx: f64, cy: f64, r: f64) -> Result<Disk> {
    if !(cx.is_finite() && cy.is_finite() && r.is_finite()) {
        return Err(Error::Parse {
            line,
            message: "non-finite value".into(),
        });
    }
    if r < 0.0 {
        return Err(Error::Parse {
            line,
            message: format!("negative radius {r}"),
        });
    }
    Ok(Disk::new(Point::new(cx, cy), r))
}

/// Parses either the line format (`cx cy r`, `#` comments) or the JSON document.
pub fn parse_disks(text: &str) -> Result<Vec<Disk>> {
    if text.trim_start().starts_with('{') {
        return parse_json(text).map(|(d, _)| d);
    }
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = s.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 fields `cx cy r`, found {}", fields.len()),
            });
        }
        let mut v = [0.0f64; 3];
        for (slot, f) in v.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| Error::Parse {
                line,
                message: format!("not a number: {f:?}"),
            })?;
        }
        out.push(check_disk(line, v[0], v[1], v[2])?);
    }
    Ok(out)
}

/// Parses the JSON document form, returning its metadata too.
pub fn parse_json(text: &str) -> Result<(Vec<Disk>, DiskMeta)> {
    let doc: DiskDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let disks = doc
        .disks
        .iter()
        .map(|d| check_disk(0, d.cx, d.cy, d.r))
        .collect::<Result<_>>()?;
    Ok((disks, doc.meta))
}

/// Line format, one disk per line at 17 significant digits.
pub fn format_disks(disks: &[Disk]) -> String {
    let mut s = String::with_capacity(disks.len() * 60);
    for d in disks {
        s.push_str(&g17(d.center.x));
        s.push(' ');
        s.push_str(&g17(d.center.y));
        s.push(' ');
        s.push_str(&g17(d.radius));
        s.push('\n');
    }
    s
}

pub fn format_json(disks: &[Disk], meta: &DiskMeta) -> String {
    let doc = DiskDocument {
        disks: disks
            .iter()
            .map(|d| DiskRecord {
                cx: d.center.x,
                cy: d.center.y,
                r: d.radius,
            })
            .collect(),
        meta: meta.clone(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn read_disks(path: impl AsRef<Path>) -> Result<Vec<Disk>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_disks(&text)
}

pub fn write_disks(path: impl AsRef<Path>, disks: &[Disk]) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_disks(disks)).map_err(|e| io_err(path, e))
}

pub fn write_disks_json(path: impl AsRef<Path>, disks: &[Disk], meta: &DiskMeta) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_json(disks, meta)).map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pairwise_ok(disks: &[Disk]) -> bool {
        let tol = Tolerance::default();
        (0..disks.len()).all(|i| {
            (i + 1..disks.len()).all(|j| crate::geom::disks_intersect(&disks[i], &disks[j], &tol))
        })
    }

    #[test]
    fn common_point_example() {
        let d = gen_instance(&GenProfile::new(ProfileName::CommonPoint, 5, 1)).unwrap();
        assert_eq!(d.len(), 5);
        assert!(pairwise_ok(&d));
        let r = stab_four(&d, &Tolerance::default(), 0).unwrap();
        assert_eq!(r.case_tag, CaseTag::Helly);
        assert_eq!(r.points.len(), 1);
    }

    #[test]
    fn tangent_core_example() {
        let d = gen_instance(&GenProfile::new(ProfileName::TangentCore, 200, 42)).unwrap();
        assert_eq!(d.len(), 200);
        assert!(pairwise_ok(&d));
    }

    #[test]
    fn mixed_radii_within_range() {
        for seed in 0..20 {
            let d = gen_instance(&GenProfile::new(ProfileName::MixedRadii, 300, seed)).unwrap();
            assert!(pairwise_ok(&d));
            assert!(d.iter().all(|x| x.radius >= 0.5 * (1.0 - 1e-12) && x.radius <= 50.0 * (1.0 + 1e-12)));
        }
    }

    #[test]
    fn targeted_rmin_ge4() {
        let p = GenProfile::new(ProfileName::CaseTargeted(CaseTag::FourRminGe4), 10, 0);
        let d = gen_instance(&p).unwrap();
        let r = stab_four(&d, &Tolerance::default(), 0).unwrap();
        assert_eq!(r.case_tag, CaseTag::FourRminGe4);
    }

    #[test]
    fn invalid_profiles() {
        let mut p = GenProfile::new(ProfileName::TangentCore, 0, 0);
        assert!(matches!(gen_instance(&p), Err(Error::InvalidProfile(_))));
        p.n = 3;
        p.scale = -1.0;
        assert!(matches!(gen_instance(&p), Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn profile_names_parse() {
        for s in ["COMMON_POINT", "tangent-core", "MIXED_RADII"] {
            assert!(s.parse::<ProfileName>().is_ok());
        }
        let p: ProfileName = "CASE_TARGETED(FOUR_MID_SUB4)".parse().unwrap();
        assert_eq!(p, ProfileName::CaseTargeted(CaseTag::FourMidSub4));
        assert_eq!(p.to_string(), "CASE_TARGETED(FOUR_MID_SUB4)");
        let q: ProfileName = "case_targeted:helly".parse().unwrap();
        assert_eq!(q, ProfileName::CaseTargeted(CaseTag::Helly));
        assert!("NOPE".parse::<ProfileName>().is_err());
    }

    #[test]
    fn parse_examples() {
        let d = parse_disks("0 0 1\n2 0 1\n").unwrap();
        assert_eq!(d, vec![Disk::xyr(0.0, 0.0, 1.0), Disk::xyr(2.0, 0.0, 1.0)]);
        assert_eq!(parse_disks("").unwrap(), vec![]);
        assert_eq!(
            parse_disks("0 0 -1"),
            Err(Error::Parse {
                line: 1,
                message: "negative radius -1".into()
            })
        );
        let d = parse_disks("# header\n\n  1.5 -2 3  \n").unwrap();
        assert_eq!(d, vec![Disk::xyr(1.5, -2.0, 3.0)]);
        assert!(matches!(parse_disks("1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_disks("1 2 3\n1 x 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_disks("1 2 nan\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn json_round_trip() {
        let disks = vec![Disk::xyr(0.1, -3.0, 2.5), Disk::xyr(1e-300, 7.0, 0.0)];
        let meta = DiskMeta {
            seed: Some(9),
            profile: Some("TANGENT_CORE".into()),
        };
        let text = format_json(&disks, &meta);
        let (back, m) = parse_json(&text).unwrap();
        assert_eq!(back, disks);
        assert_eq!(m, meta);
        assert_eq!(parse_disks(&text).unwrap(), disks);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.txt");
        let disks = gen_instance(&GenProfile::new(ProfileName::MixedRadii, 50, 3)).unwrap();
        write_disks(&path, &disks).unwrap();
        assert_eq!(read_disks(&path).unwrap(), disks);
        let jpath = dir.path().join("d.json");
        write_disks_json(&jpath, &disks, &DiskMeta::default()).unwrap();
        assert_eq!(read_disks(&jpath).unwrap(), disks);
        assert!(matches!(read_disks(dir.path().join("missing")), Err(Error::Io { .. })));
    }

    #[test]
    fn generation_is_deterministic() {
        for name in [ProfileName::CommonPoint, ProfileName::TangentCore, ProfileName::MixedRadii] {
            let p = GenProfile::new(name, 100, 77);
            let a = format_disks(&gen_instance(&p).unwrap());
            let b = format_disks(&gen_instance(&p).unwrap());
            assert_eq!(a, b);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn profiles_are_pairwise_intersecting(seed in any::<u64>(), n in 1usize..120, which in 0usize..3,
                                              scale in 0.01f64..100.0) {
            let name = [ProfileName::CommonPoint, ProfileName::TangentCore, ProfileName::MixedRadii][which];
            let p = GenProfile { name, n, seed, scale };
            let d = gen_instance(&p).unwrap();
            prop_assert_eq!(d.len(), n);
            prop_assert!(pairwise_ok(&d));
        }

        #[test]
        fn text_round_trip(v in proptest::collection::vec((-1e6f64..1e6, -1e6f64..1e6, 0.0f64..1e6), 0..20)) {
            let disks: Vec<Disk> = v.iter().map(|&(x, y, r)| Disk::xyr(x, y, r)).collect();
            prop_assert_eq!(parse_disks(&format_disks(&disks)).unwrap(), disks);
        }
    }
}
