//! Result formats shared by the command-line tool and the tests.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::numfmt::g17;
use crate::stabbing::{CaseTag, StabResult};

#[derive(Debug, Clone, PartialEq)]
pub struct StabOutput {
    pub points: Vec<Point>,
    pub case_tag: CaseTag,
    pub n: usize,
    pub elapsed_ms: f64,
}

impl StabOutput {
    pub fn new(res: &StabResult, n: usize, elapsed_ms: f64) -> Self {
        StabOutput {
            points: res.points.clone(),
            case_tag: res.case_tag,
            n,
            elapsed_ms,
        }
    }

    /// One-line JSON object; coordinates at 17 significant digits.
    pub fn to_structured(&self) -> String {
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|p| format!("{{\"x\":{},\"y\":{}}}", g17(p.x), g17(p.y)))
            .collect();
        format!(
            "{{\"points\":[{}],\"case_tag\":\"{}\",\"n\":{},\"elapsed_ms\":{}}}\n",
            pts.join(","),
            self.case_tag,
            self.n,
            g17(self.elapsed_ms)
        )
    }

    /// `#`-prefixed header lines, then one `x y` line per point.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# case_tag {}\n# n {}\n# elapsed_ms {}\n",
            self.case_tag,
            self.n,
            g17(self.elapsed_ms)
        );
        for p in &self.points {
            s.push_str(&format!("{} {}\n", g17(p.x), g17(p.y)));
        }
        s
    }
}

#[derive(Deserialize)]
struct XY {
    x: f64,
    y: f64,
}

#[derive(Deserialize)]
struct PointsDoc {
    points: Vec<XY>,
}

/// Reads points back from either output format.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    if text.trim_start().starts_with('{') {
        let doc: PointsDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        return Ok(doc.points.into_iter().map(|p| Point::new(p.x, p.y)).collect());
    }
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse {
            line: k + 1,
            message,
        };
        let f: Vec<&str> = s.split_whitespace().collect();
        if f.len() != 2 {
            return Err(bad(format!("expected 2 fields `x y`, found {}", f.len())));
        }
        let x: f64 = f[0].parse().map_err(|_| bad(format!("not a number: {:?}", f[0])))?;
        let y: f64 = f[1].parse().map_err(|_| bad(format!("not a number: {:?}", f[1])))?;
        out.push(Point::try_new(x, y).map_err(|e| bad(e.to_string()))?);
    }
    Ok(out)
}
