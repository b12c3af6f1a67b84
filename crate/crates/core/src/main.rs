use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use diskstab::bench::run_bench;
use diskstab::framing::build_base_frame;
use diskstab::instances::{format_disks, format_json, gen_instance, read_disks, DiskMeta, GenProfile, ProfileName};
use diskstab::numfmt::g17;
use diskstab::report::{parse_points, StabOutput};
use diskstab::stabbing::{stab_five, stab_four, StabResult};
use diskstab::svg::{render, Figure};
use diskstab::verifier::{
    check_proof_constants, constants::solve_proof_constants, frame_tolerance, verify_minimality,
    verify_pairwise, verify_pairwise_sampled, verify_stabbing, VerifyReport,
};
use diskstab::{smallest_intersecting_disk, Disk, Error, Similarity, Tolerance};

const EXIT_INPUT: u8 = 1;
const EXIT_SOLVER: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Stab pairwise-intersecting disks with four or five points.
#[derive(Parser, Debug)]
#[command(name = "diskstab", version)]
struct Cli {
    /// Absolute tolerance, in frame units where a frame applies.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS_ABS)]
    eps_abs: f64,
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS_REL)]
    eps_rel: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a stabbing set for a disk file.
    Stab {
        input: PathBuf,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(4..=5))]
        points: u8,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Check the result against the input before exiting.
        #[arg(long)]
        self_verify: bool,
        /// Report elapsed_ms as 0 so repeated runs are byte-identical.
        #[arg(long)]
        deterministic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a disk file is pairwise intersecting and that a stabbing set works.
    Verify {
        input: PathBuf,
        /// Points to check, in either output format; computed when absent.
        #[arg(long)]
        stab_points: Option<PathBuf>,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(4..=5))]
        points: u8,
        /// Check this many random pairs instead of all pairs.
        #[arg(long)]
        sample_pairs: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        minimality_trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate a disk family.
    Gen {
        /// COMMON_POINT, TANGENT_CORE, MIXED_RADII or CASE_TARGETED(TAG).
        #[arg(long)]
        profile: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Write the JSON document form.
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw disks, d* and a stabbing set as SVG.
    Render {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(4..=5))]
        points: u8,
        /// Overlay these points instead of computing them.
        #[arg(long)]
        stab_points: Option<PathBuf>,
        /// Draw the tangent lines of the frame.
        #[arg(long)]
        tangent_lines: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the four-point pipeline over growing inputs.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [1_000usize, 10_000, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-solve the constants behind the construction and compare to closed forms.
    CheckConstants {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::Io { .. }
            | Error::InvalidDisk(_)
            | Error::InvalidProfile(_)
            | Error::EmptyInput => EXIT_INPUT,
            _ => EXIT_SOLVER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn emit(output: Option<&Path>, text: &str) -> CmdResult {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| input_failure(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| input_failure(format!("stdout: {e}")))
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn stab(disks: &[Disk], points: u8, tol: &Tolerance, seed: u64) -> Result<StabResult, Error> {
    if points == 5 {
        stab_five(disks, tol, seed)
    } else {
        stab_four(disks, tol, seed)
    }
}

/// Frame-unit tolerance for checking points against `disks`.
fn point_tolerance(disks: &[Disk], tol: &Tolerance, seed: u64) -> Result<Tolerance, Error> {
    let ms = smallest_intersecting_disk(disks, tol, seed)?;
    if ms.dstar.radius > tol.eps_abs {
        Ok(tol.scaled(ms.dstar.radius))
    } else {
        Ok(*tol)
    }
}

fn report_text(rep: &VerifyReport) -> String {
    let mut s = format!("ok {}\n", rep.ok);
    for (k, v) in &rep.checked {
        s.push_str(&format!("checked {k} {v}\n"));
    }
    for v in &rep.violations {
        s.push_str(&format!(
            "violation {:?} {:?} {}{}\n",
            v.kind,
            v.indices,
            g17(v.magnitude),
            if v.detail.is_empty() { String::new() } else { format!(" {}", v.detail) }
        ));
    }
    s
}

fn finish_report(rep: &VerifyReport, format: Format) -> CmdResult {
    let text = match format {
        Format::Text => report_text(rep),
        Format::Structured => to_json(rep),
    };
    emit(None, &text)?;
    if rep.ok {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!("{} violation(s)", rep.violations.len()),
        })
    }
}

fn run(cli: Cli) -> CmdResult {
    let tol = Tolerance::new(cli.eps_abs, cli.eps_rel)?;
    match cli.command {
        Command::Stab {
            input,
            points,
            format,
            self_verify,
            deterministic,
            seed,
            output,
        } => {
            let disks = read_disks(&input)?;
            let t0 = Instant::now();
            let res = stab(&disks, points, &tol, seed)?;
            let ms = if deterministic { 0.0 } else { t0.elapsed().as_secs_f64() * 1e3 };
            let out = StabOutput::new(&res, disks.len(), ms);
            let text = match format {
                Format::Text => out.to_text(),
                Format::Structured => out.to_structured(),
            };
            emit(output.as_deref(), &text)?;
            if self_verify {
                let rep = verify_stabbing(&disks, &res.points, &frame_tolerance(&tol, &res.to_frame));
                if !rep.ok {
                    return Err(Failure {
                        code: EXIT_VERIFY,
                        message: format!("{} disk(s) not stabbed", rep.violations.len()),
                    });
                }
            }
            Ok(())
        }
        Command::Verify {
            input,
            stab_points,
            points,
            sample_pairs,
            minimality_trials,
            seed,
            format,
        } => {
            let disks = read_disks(&input)?;
            let mut rep = match sample_pairs {
                Some(k) => verify_pairwise_sampled(&disks, &tol, k, seed),
                None => verify_pairwise(&disks, &tol),
            };
            // A stabbing set is only guaranteed for pairwise-intersecting input.
            if !disks.is_empty() && rep.ok {
                let (pts, ptol) = match stab_points {
                    Some(p) => {
                        let text = fs::read_to_string(&p).map_err(|e| {
                            Failure::from(Error::Io {
                                path: p.display().to_string(),
                                message: e.to_string(),
                            })
                        })?;
                        (parse_points(&text)?, point_tolerance(&disks, &tol, seed)?)
                    }
                    None => {
                        let res = stab(&disks, points, &tol, seed)?;
                        (res.points.clone(), frame_tolerance(&tol, &res.to_frame))
                    }
                };
                rep.merge(verify_stabbing(&disks, &pts, &ptol));
                let ms = smallest_intersecting_disk(&disks, &tol, seed)?;
                rep.merge(verify_minimality(&disks, &ms, minimality_trials, seed, &tol));
            }
            finish_report(&rep, format)
        }
        Command::Gen {
            profile,
            n,
            seed,
            scale,
            json,
            output,
        } => {
            let name: ProfileName = profile.parse()?;
            let mut prof = GenProfile::new(name, n, seed);
            prof.scale = scale;
            let disks = gen_instance(&prof)?;
            let text = if json {
                let meta = DiskMeta {
                    seed: Some(seed),
                    profile: Some(name.to_string()),
                };
                format_json(&disks, &meta)
            } else {
                format!("# {name} n={n} seed={seed}\n{}", format_disks(&disks))
            };
            emit(output.as_deref(), &text)
        }
        Command::Render {
            input,
            output,
            points,
            stab_points,
            tangent_lines,
            seed,
        } => {
            let disks = read_disks(&input)?;
            let mut fig = Figure {
                disks: disks.clone(),
                ..Default::default()
            };
            if !disks.is_empty() {
                let ms = smallest_intersecting_disk(&disks, &tol, seed)?;
                fig.dstar = Some(ms.dstar);
                fig.points = match stab_points {
                    Some(p) => {
                        let text = fs::read_to_string(&p)
                            .map_err(|e| input_failure(format!("{}: {e}", p.display())))?;
                        parse_points(&text)?
                    }
                    None => stab(&disks, points, &tol, seed)?.points,
                };
                if tangent_lines && !ms.is_helly(&tol) {
                    if let Ok(bf) = build_base_frame(&disks, &ms) {
                        let back: Similarity = bf.to_frame.invert();
                        fig.lines = bf.tangent_lines.iter().map(|l| back.apply_line(l)).collect();
                    }
                }
            }
            emit(output.as_deref(), &render(&fig))
        }
        Command::Bench {
            sizes,
            repeats,
            seed,
            format,
        } => {
            let rep = run_bench(&sizes, seed, repeats, &tol)?;
            let text = match format {
                Format::Structured => to_json(&rep),
                Format::Text => {
                    let mut s = String::from("n median_ms case_tag\n");
                    for r in &rep.rows {
                        s.push_str(&format!("{} {:.3} {}\n", r.n, r.median_ms, r.case_tag));
                    }
                    s.push_str(&format!("exponent {:.3}\n", rep.exponent));
                    s
                }
            };
            emit(None, &text)
        }
        Command::CheckConstants { format } => {
            let rep = check_proof_constants();
            let text = match format {
                Format::Structured => to_json(&solve_proof_constants()),
                Format::Text => {
                    let mut s = String::new();
                    for c in solve_proof_constants() {
                        s.push_str(&format!("{}\n", c.name));
                        for ((u, v), w) in c.unknowns.iter().zip(&c.solved).zip(&c.closed_form) {
                            s.push_str(&format!("  {u} = {} (closed form {})\n", g17(*v), g17(*w)));
                        }
                        for (label, ok) in &c.bounds {
                            s.push_str(&format!("  {label}: {}\n", if *ok { "holds" } else { "FAILS" }));
                        }
                        s.push_str(&format!("  max error {:.3e}\n", c.max_error()));
                    }
                    s.push_str(&format!("ok {}\n", rep.ok));
                    s
                }
            };
            emit(None, &text)?;
            if rep.ok {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_VERIFY,
                    message: "constant mismatch".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
