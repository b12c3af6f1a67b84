//! Numerical re-solution of the small equation systems behind the proof
//! constants, compared against their closed forms.

use serde::{Deserialize, Serialize};

use super::{VerifyReport, Violation, ViolationKind};

const MATCH_TOL: f64 = 1e-9;

/// One re-solved system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantCheck {
    pub name: String,
    pub unknowns: Vec<String>,
    pub solved: Vec<f64>,
    pub closed_form: Vec<f64>,
    /// Stated inequalities on the solution, with whether each holds.
    pub bounds: Vec<(String, bool)>,
    pub residual: f64,
}

impl ConstantCheck {
    pub fn max_error(&self) -> f64 {
        self.solved
            .iter()
            .zip(&self.closed_form)
            .map(|(s, c)| (s - c).abs())
            .fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.max_error() <= MATCH_TOL && self.bounds.iter().all(|b| b.1)
    }
}

fn gauss(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - s) / m[row][row];
    }
    Some(x)
}

/// Newton's method with a central-difference Jacobian.
pub fn newton(f: &dyn Fn(&[f64]) -> Vec<f64>, start: &[f64]) -> Vec<f64> {
    let n = start.len();
    let mut x = start.to_vec();
    for _ in 0..200 {
        let fx = f(&x);
        let mut jac = vec![vec![0.0; n]; n];
        for j in 0..n {
            let h = 1e-7 * (1.0 + x[j].abs());
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let (fp, fm) = (f(&xp), f(&xm));
            for i in 0..n {
                jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let Some(step) = gauss(jac, fx.iter().map(|v| -v).collect()) else {
            break;
        };
        let mut size = 0.0f64;
        for (xi, si) in x.iter_mut().zip(&step) {
            *xi += si;
            size = size.max(si.abs() / (1.0 + xi.abs()));
        }
        if size < 1e-16 {
            break;
        }
    }
    x
}

fn residual(f: &dyn Fn(&[f64]) -> Vec<f64>, x: &[f64]) -> f64 {
    f(x).iter().map(|v| v.abs()).fold(0.0, f64::max)
}

struct System {
    name: &'static str,
    unknowns: &'static [&'static str],
    equations: Box<dyn Fn(&[f64]) -> Vec<f64>>,
    start: Vec<f64>,
    closed_form: Vec<f64>,
    bounds: Vec<(&'static str, Box<dyn Fn(&[f64]) -> bool>)>,
}

fn systems() -> Vec<System> {
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let pr = 0.5 + 2.0 * s6 / 5.0;
    let k = 46169.0 + 8000.0 * s6;
    vec![
        System {
            name: "five-point d' (tangent to d*, through (-2,0) and (0,2))",
            unknowns: &["x", "r"],
            equations: Box::new(|v: &[f64]| {
                let (x, r) = (v[0], v[1]);
                vec![x * x + (x - 2.0).powi(2) - r * r, 2.0 * x * x - (r + 1.0).powi(2)]
            }),
            start: vec![3.0, 3.0],
            closed_form: vec![1.5 + 3.0 / (2.0 * s2), 0.5 + 3.0 / s2],
            bounds: vec![("x > 2", Box::new(|v: &[f64]| v[0] > 2.0))],
        },
        System {
            name: "five-point d'' (tangent to line 1, through (-2,0), center on y = -x - 2)",
            unknowns: &["a", "b", "r"],
            equations: Box::new(|v: &[f64]| {
                let (a, b, r) = (v[0], v[1], v[2]);
                vec![b + a + 2.0, (a + 2.0).powi(2) + b * b - r * r, b + 1.0 - r]
            }),
            start: vec![-4.0, 2.0, 3.0],
            closed_form: vec![-3.0 - s2, 1.0 + s2, 2.0 + s2],
            bounds: vec![],
        },
        System {
            name: "angle <= 17: d^{l+} through (-0.5,0), (0,1.7), tangent to line 1",
            unknowns: &["a", "b", "r"],
            equations: Box::new(|v: &[f64]| {
                let (a, b, r) = (v[0], v[1], v[2]);
                vec![
                    r - b - 1.0,
                    (a + 0.5).powi(2) + b * b - r * r,
                    a * a + (b - 1.7).powi(2) - r * r,
                ]
            }),
            start: vec![-2.5, 1.5, 2.5],
            closed_form: vec![
                -27.0 / 34.0 - 3.0 * (471.0f64 / 5.0).sqrt() / 17.0,
                2919.0 / 2890.0 + 3.0 * 2355f64.sqrt() / 289.0,
                2919.0 / 2890.0 + 3.0 * 2355f64.sqrt() / 289.0 + 1.0,
            ],
            bounds: vec![],
        },
        System {
            name: "angle <= 17: d^{r+} through (1.5,0), (0,1.7), tangent to line 1",
            unknowns: &["a", "b", "r"],
            equations: Box::new(|v: &[f64]| {
                let (a, b, r) = (v[0], v[1], v[2]);
                vec![
                    r - b - 1.0,
                    (a - 1.5).powi(2) + b * b - r * r,
                    a * a + (b - 1.7).powi(2) - r * r,
                ]
            }),
            start: vec![4.5, 4.0, 5.0],
            closed_form: vec![
                81.0 / 34.0 + 3.0 * (771.0f64 / 5.0).sqrt() / 17.0,
                6619.0 / 2890.0 + 9.0 * 3855f64.sqrt() / 289.0,
                6619.0 / 2890.0 + 9.0 * 3855f64.sqrt() / 289.0 + 1.0,
            ],
            bounds: vec![],
        },
        System {
            name: "angle > 17: d^{l+} through (-0.5,0), (-0.5,1.83), tangent to line 1",
            unknowns: &["a", "b", "r"],
            equations: Box::new(|v: &[f64]| {
                let (a, b, r) = (v[0], v[1], v[2]);
                vec![
                    r - b - 1.0,
                    (a + 0.5).powi(2) + b * b - r * r,
                    (a + 0.5).powi(2) + (b - 1.83).powi(2) - r * r,
                ]
            }),
            start: vec![-2.0, 1.0, 2.0],
            closed_form: vec![-0.5 - 283f64.sqrt() / 10.0, 183.0 / 200.0, 183.0 / 200.0 + 1.0],
            bounds: vec![],
        },
        System {
            name: "angle > 17: d^{l-} through (-0.5,0), (0.5,-2.5), tangent to reflected line 1",
            unknowns: &["a", "b", "r"],
            equations: Box::new(|v: &[f64]| {
                let (a, b, r) = (v[0], v[1], v[2]);
                vec![
                    r - (1.0 - b),
                    (a + 0.5).powi(2) + b * b - r * r,
                    (a - 0.5).powi(2) + (b + 2.5).powi(2) - r * r,
                ]
            }),
            start: vec![-3.0, -2.5, 3.5],
            closed_form: vec![
                -0.9 - (203.0f64 / 2.0).sqrt() / 5.0,
                -1.61 - 406f64.sqrt() / 25.0,
                1.0 + 1.61 + 406f64.sqrt() / 25.0,
            ],
            bounds: vec![],
        },
        System {
            name: "angle > 17: d^{r+} through p^r, (-0.5,1.83), tangent to line 1",
            unknowns: &["a", "b", "r"],
            equations: Box::new(move |v: &[f64]| {
                let (a, b, r) = (v[0], v[1], v[2]);
                vec![
                    r - b - 1.0,
                    (a - pr).powi(2) + (b - 0.2).powi(2) - r * r,
                    (a + 0.5).powi(2) + (b - 1.83).powi(2) - r * r,
                ]
            }),
            start: vec![6.0, 7.5, 8.5],
            closed_form: vec![
                (10075.0 + 5660.0 * s6 + (8490.0 * k).sqrt()) / 8150.0,
                (13292307.0
                    + 3224000.0 * s6
                    + 960.0 * (1415.0 * k).sqrt()
                    + 400.0 * (8490.0 * k).sqrt())
                    / 5313800.0,
                (13292307.0
                    + 3224000.0 * s6
                    + 960.0 * (1415.0 * k).sqrt()
                    + 400.0 * (8490.0 * k).sqrt())
                    / 5313800.0
                    + 1.0,
            ],
            bounds: vec![
                ("a > 5.836", Box::new(|v: &[f64]| v[0] > 5.836)),
                ("b < 7.51", Box::new(|v: &[f64]| v[1] < 7.51)),
            ],
        },
        System {
            name: "angle > 17: d^{r-} through p^r, (0.5,-2.5), tangent to reflected line 1",
            unknowns: &["a", "b", "r"],
            equations: Box::new(move |v: &[f64]| {
                let (a, b, r) = (v[0], v[1], v[2]);
                vec![
                    r - (1.0 - b),
                    (a - pr).powi(2) + (b - 0.2).powi(2) - r * r,
                    (a - 0.5).powi(2) + (b + 2.5).powi(2) - r * r,
                ]
            }),
            start: vec![3.5, -2.0, 3.0],
            closed_form: vec![
                (27.0 + 28.0 * s6 + 2.0 * 2310f64.sqrt()) / 54.0,
                -1393.0 / 972.0 - 8.0 * 385f64.sqrt() / 243.0,
                1.0 + 1393.0 / 972.0 + 8.0 * 385f64.sqrt() / 243.0,
            ],
            bounds: vec![
                ("a > 3.52", Box::new(|v: &[f64]| v[0] > 3.52)),
                ("b > -2.08", Box::new(|v: &[f64]| v[1] > -2.08)),
            ],
        },
    ]
}

/// Solves every listed system and reports each solution.
pub fn solve_proof_constants() -> Vec<ConstantCheck> {
    systems()
        .into_iter()
        .map(|s| {
            let solved = newton(s.equations.as_ref(), &s.start);
            ConstantCheck {
                name: s.name.to_string(),
                unknowns: s.unknowns.iter().map(|u| u.to_string()).collect(),
                residual: residual(s.equations.as_ref(), &solved),
                bounds: s
                    .bounds
                    .iter()
                    .map(|(label, pred)| (label.to_string(), pred(&solved)))
                    .collect(),
                solved,
                closed_form: s.closed_form,
            }
        })
        .collect()
}

/// Re-solves the systems and reports any mismatch above 1e-9 or failed bound.
pub fn check_proof_constants() -> VerifyReport {
    let mut rep = VerifyReport::new();
    for (i, c) in solve_proof_constants().into_iter().enumerate() {
        rep.count("systems", 1);
        if c.max_error() > MATCH_TOL {
            rep.push(Violation {
                kind: ViolationKind::ConstantMismatch,
                indices: vec![i],
                magnitude: c.max_error(),
                detail: c.name.clone(),
            });
        }
        for (label, ok) in &c.bounds {
            rep.count("bounds", 1);
            if !ok {
                rep.push(Violation {
                    kind: ViolationKind::ConstantMismatch,
                    indices: vec![i],
                    magnitude: 0.0,
                    detail: format!("{}: {label}", c.name),
                });
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_constants_match() {
        let rep = check_proof_constants();
        assert!(rep.ok, "{:?}", rep.violations);
        assert_eq!(rep.checked["systems"], 8);
    }

    #[test]
    fn five_point_constants() {
        let c = solve_proof_constants();
        let s2 = 2f64.sqrt();
        assert!((c[0].solved[0] - (1.5 + 3.0 / (2.0 * s2))).abs() < 1e-9);
        assert!((c[0].solved[1] - (0.5 + 3.0 / s2)).abs() < 1e-9);
        assert!((c[1].solved[2] - (2.0 + s2)).abs() < 1e-9);
        assert!((c[1].solved[0] + 3.0 + s2).abs() < 1e-9);
        assert!((c[1].solved[1] - 1.0 - s2).abs() < 1e-9);
    }

    #[test]
    fn reflected_line_bounds() {
        let c = solve_proof_constants();
        let rminus = &c[7];
        assert!(rminus.solved[0] > 3.52 && rminus.solved[1] > -2.08);
        let rplus = &c[6];
        assert!((rplus.solved[0] - 5.83662).abs() < 1e-5);
        assert!((rplus.solved[1] - 7.50912).abs() < 1e-5);
        for x in &c {
            assert!(x.residual < 1e-12, "{}: {}", x.name, x.residual);
        }
    }

    #[test]
    fn reproducible_bit_for_bit() {
        let a = solve_proof_constants();
        let b = solve_proof_constants();
        for (x, y) in a.iter().zip(&b) {
            for (u, v) in x.solved.iter().zip(&y.solved) {
                assert_eq!(u.to_bits(), v.to_bits());
            }
        }
    }

    #[test]
    fn newton_simple_root() {
        let r = newton(&|v: &[f64]| vec![v[0] * v[0] - 2.0], &[1.0]);
        assert!((r[0] - 2f64.sqrt()).abs() < 1e-15);
    }
}
