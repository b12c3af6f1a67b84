//! Standalone SVG 1.1 figures of disk families and stabbing points.

use std::fmt::Write as _;

use crate::geom::{Disk, Line, Point};

/// Shortest round-trip decimal, with `-0` printed as `0`.
fn num(x: f64) -> String {
    format!("{}", x + 0.0)
}

#[derive(Debug, Clone, Default)]
pub struct Figure {
    pub disks: Vec<Disk>,
    pub points: Vec<Point>,
    /// Drawn dashed.
    pub dstar: Option<Disk>,
    /// Drawn across the whole view.
    pub lines: Vec<Line>,
}

struct View {
    min_x: f64,
    min_y: f64,
    width: f64,
    height: f64,
}

impl View {
    fn fit(fig: &Figure) -> Option<View> {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |c: Point, r: f64| {
            lo = Point::new(lo.x.min(c.x - r), lo.y.min(c.y - r));
            hi = Point::new(hi.x.max(c.x + r), hi.y.max(c.y + r));
        };
        for d in fig.disks.iter().chain(fig.dstar.as_ref()) {
            grow(d.center, d.radius);
        }
        for &p in &fig.points {
            grow(p, 0.0);
        }
        if !(lo.x.is_finite() && hi.x.is_finite()) {
            return None;
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let margin = if span > 0.0 { 0.05 * span } else { 1.0 };
        // y is flipped: the view spans [-hi.y, -lo.y].
        Some(View {
            min_x: lo.x - margin,
            min_y: -hi.y - margin,
            width: hi.x - lo.x + 2.0 * margin,
            height: hi.y - lo.y + 2.0 * margin,
        })
    }

    fn size(&self) -> f64 {
        self.width.max(self.height)
    }

    /// Segment of `l` covering the view.
    fn clip(&self, l: &Line) -> (Point, Point) {
        let center = Point::new(self.min_x + 0.5 * self.width, -(self.min_y + 0.5 * self.height));
        let foot = l.foot(center);
        let reach = self.width.hypot(self.height);
        let d = l.direction();
        (foot - d * reach, foot + d * reach)
    }
}

fn circle(out: &mut String, c: Point, r: f64) {
    let _ = writeln!(
        out,
        r#"    <circle cx="{}" cy="{}" r="{}"/>"#,
        num(c.x),
        num(-c.y),
        num(r)
    );
}

/// Renders `fig` with the y axis pointing up.
pub fn render(fig: &Figure) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let Some(view) = View::fit(fig) else {
        out.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1 1\">\n</svg>\n",
        );
        return out;
    };
    let size = view.size();
    let stroke = num(size * 2e-3);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="800" height="{}">"#,
        num(view.min_x),
        num(view.min_y),
        num(view.width),
        num(view.height),
        num((800.0 * view.height / view.width).round())
    );
    let _ = writeln!(
        out,
        r#"  <g id="disks" fill="none" stroke="black" stroke-width="{stroke}">"#
    );
    for d in &fig.disks {
        circle(&mut out, d.center, d.radius);
    }
    out.push_str("  </g>\n");
    if let Some(d) = fig.dstar {
        let _ = writeln!(
            out,
            r#"  <g id="dstar" fill="none" stroke="blue" stroke-width="{stroke}" stroke-dasharray="{} {}">"#,
            num(size * 1e-2),
            num(size * 5e-3)
        );
        circle(&mut out, d.center, d.radius);
        out.push_str("  </g>\n");
    }
    if !fig.lines.is_empty() {
        let _ = writeln!(
            out,
            r#"  <g id="lines" stroke="gray" stroke-width="{stroke}">"#
        );
        for l in &fig.lines {
            let (a, b) = view.clip(l);
            let _ = writeln!(
                out,
                r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(a.x),
                num(-a.y),
                num(b.x),
                num(-b.y)
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("  <g id=\"points\" fill=\"red\" stroke=\"none\">\n");
    for &p in &fig.points {
        circle(&mut out, p, size * 6e-3);
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_figure() {
        let s = render(&Figure::default());
        assert!(s.contains(r#"viewBox="0 0 1 1""#));
        assert!(s.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn counts_and_flip() {
        let fig = Figure {
            disks: vec![
                Disk::xyr(0.0, 0.0, 1.0),
                Disk::xyr(2.0, 0.0, 1.0),
                Disk::xyr(1.0, 1.5, 1.0),
            ],
            points: vec![Point::new(1.0, 0.5); 4],
            dstar: Some(Disk::xyr(1.0, 0.5, 0.1)),
            lines: vec![Line::new(Point::new(0.0, 1.0), -1.0).unwrap()],
        };
        let s = render(&fig);
        let points = s.split("<g id=\"points\"").nth(1).unwrap();
        assert_eq!(points.matches("<circle").count(), 4);
        assert_eq!(s.matches("<circle").count(), 8);
        assert_eq!(s.matches("<line ").count(), 1);
        assert!(s.contains("stroke-dasharray"));
        assert!(s.contains(r#"cy="-1.5""#));
        assert!(!s.contains("\"-0\""));
        // Extent 4 by 3.5, margin 5% of 4.
        assert!(s.contains(r#"viewBox="-1.2 -2.7 4.4 3.9""#), "{s}");
    }

    #[test]
    fn single_point_gets_unit_margin() {
        let fig = Figure {
            points: vec![Point::new(3.0, 4.0)],
            ..Default::default()
        };
        assert!(render(&fig).contains(r#"viewBox="2 -5 2 2""#));
    }
}
