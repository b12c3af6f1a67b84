//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{grid_oracle, instance, CORPUS_PROFILES, CORPUS_SIZES};
use diskstab::bench::run_bench;
use diskstab::instances::{GenProfile, ProfileName};
use diskstab::report::StabOutput;
use diskstab::stabbing::{five_point_set, stab_five, stab_four, CaseTag};
use diskstab::verifier::{
    check_observation, check_proof_constants, frame_tolerance, sample_observation, verify_stabbing, ObsId,
};
use diskstab::{smallest_intersecting_disk, Tolerance};

const SEEDS: u64 = 250;
const EPS_ABS: f64 = 1e-9;
const ORACLE_TOL: f64 = 1e-6;
const OBS_SAMPLES: u64 = 100_000;
const MAX_EXPONENT: f64 = 1.25;

fn tol() -> Tolerance {
    Tolerance::new(EPS_ABS, Tolerance::DEFAULT_EPS_REL).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn corpus() -> impl Iterator<Item = (ProfileName, usize, u64)> {
    CORPUS_PROFILES.into_iter().flat_map(|p| {
        CORPUS_SIZES.into_iter().flat_map(move |n| (0..SEEDS).map(move |s| (p, n, s)))
    })
}

fn four_point_corpus() -> Outcome {
    let tol = tol();
    let (mut runs, mut bad) = (0, Vec::new());
    let mut spent = Duration::ZERO;
    for (p, n, s) in corpus() {
        let disks = instance(p, n, s);
        let t0 = Instant::now();
        let ok = match stab_four(&disks, &tol, s) {
            Ok(r) => r.points.len() <= 4 && verify_stabbing(&disks, &r.points, &frame_tolerance(&tol, &r.to_frame)).ok,
            Err(_) => false,
        };
        spent += t0.elapsed();
        runs += 1;
        if !ok {
            bad.push(format!("{p}/{n}/{s}"));
        }
    }
    let fast = spent < Duration::from_secs(120);
    Outcome {
        pass: bad.is_empty() && fast,
        detail: format!("{runs} runs, {} failed {:?}, stab+verify {:.1}s (limit 120s)", bad.len(), &bad[..bad.len().min(5)], spent.as_secs_f64()),
    }
}

fn five_point_corpus() -> Outcome {
    let tol = tol();
    let frame = five_point_set();
    let (mut runs, mut non_helly, mut bad) = (0, 0, Vec::new());
    for (p, n, s) in corpus() {
        let disks = instance(p, n, s);
        let ok = match stab_five(&disks, &tol, s) {
            Ok(r) => {
                let exact = r.case_tag == CaseTag::Helly || {
                    non_helly += 1;
                    r.frame_points == frame
                };
                exact
                    && r.points.len() <= 5
                    && verify_stabbing(&disks, &r.points, &frame_tolerance(&tol, &r.to_frame)).ok
            }
            Err(_) => false,
        };
        runs += 1;
        if !ok {
            bad.push(format!("{p}/{n}/{s}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{runs} runs ({non_helly} non-Helly), {} failed {:?}", bad.len(), &bad[..bad.len().min(5)]),
    }
}

fn targeted_coverage() -> Outcome {
    const N: usize = 10;
    let tol = tol();
    let mut missing = Vec::new();
    for tag in CaseTag::ALL {
        let verified = (0..5u64).any(|seed| {
            let Ok(disks) = diskstab::instances::gen_instance(&GenProfile::new(ProfileName::CaseTargeted(tag), N, seed)) else {
                return false;
            };
            let res = if tag == CaseTag::Five { stab_five(&disks, &tol, seed) } else { stab_four(&disks, &tol, seed) };
            res.is_ok_and(|r| {
                r.case_tag == tag && verify_stabbing(&disks, &r.points, &frame_tolerance(&tol, &r.to_frame)).ok
            })
        });
        if !verified {
            missing.push(tag.as_str());
        }
    }
    Outcome {
        pass: missing.is_empty(),
        detail: format!("{} tags at n={N}, missing {:?}", CaseTag::ALL.len(), missing),
    }
}

fn solver_vs_oracle() -> Outcome {
    let tol = tol();
    let t0 = Instant::now();
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    for k in 0..100u64 {
        let p = CORPUS_PROFILES[(k % 3) as usize];
        let n = 1 + (k as usize * 7) % 50;
        let disks = instance(p, n, 1000 + k);
        match smallest_intersecting_disk(&disks, &tol, k) {
            Ok(r) => worst = worst.max((r.optimal_value - grid_oracle(&disks)).abs()),
            Err(_) => errors += 1,
        }
    }
    let spent = t0.elapsed().as_secs_f64();
    Outcome {
        pass: errors == 0 && worst <= ORACLE_TOL && spent < 60.0,
        detail: format!("100 instances n<=50, max |diff| {worst:.2e} (limit {ORACLE_TOL:e}), {errors} errors, {spent:.1}s (limit 60s)"),
    }
}

fn observations() -> Outcome {
    let tol = tol();
    let t0 = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for id in ObsId::ALL {
        let (mut cex, mut err) = (0u64, 0u64);
        for seed in 0..OBS_SAMPLES {
            match sample_observation(id, seed).and_then(|c| check_observation(&c, &tol)) {
                Ok(true) => {}
                Ok(false) => cex += 1,
                Err(_) => err += 1,
            }
        }
        pass &= cex == 0 && err == 0;
        lines.push(format!("{id}:{cex}/{err}"));
    }
    let spent = t0.elapsed().as_secs_f64();
    Outcome {
        pass: pass && spent < 300.0,
        detail: format!(
            "{OBS_SAMPLES} samples each, counterexamples/errors {}, {spent:.1}s (limit 300s)",
            lines.join(" ")
        ),
    }
}

fn constants() -> Outcome {
    let rep = check_proof_constants();
    Outcome {
        pass: rep.ok,
        detail: format!("{:?}, {} violations", rep.checked, rep.violations.len()),
    }
}

fn scaling() -> Outcome {
    let rep = run_bench(&[1_000, 10_000, 100_000, 1_000_000], 0, 3, &tol());
    match rep {
        Ok(rep) => {
            let last = rep.rows.last().map_or(f64::INFINITY, |r| r.median_ms);
            let times: Vec<String> = rep.rows.iter().map(|r| format!("{}:{:.2}ms", r.n, r.median_ms)).collect();
            Outcome {
                pass: rep.exponent <= MAX_EXPONENT && last < 10_000.0,
                detail: format!("exponent {:.3} (limit {MAX_EXPONENT}), {}", rep.exponent, times.join(" ")),
            }
        }
        Err(e) => Outcome { pass: false, detail: e.to_string() },
    }
}

fn structured_corpus() -> String {
    let tol = tol();
    let mut out = String::new();
    for (p, n, s) in corpus() {
        let disks = instance(p, n, s);
        match stab_four(&disks, &tol, s) {
            Ok(r) => out.push_str(&StabOutput::new(&r, n, 0.0).to_structured()),
            Err(e) => out.push_str(&format!("error {e}\n")),
        }
    }
    out
}

fn determinism() -> Outcome {
    let (a, b) = (structured_corpus(), structured_corpus());
    Outcome {
        pass: a == b,
        detail: format!("{} bytes per run, identical: {}", a.len(), a == b),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 four-point corpus", four_point_corpus),
        ("2 five-point corpus", five_point_corpus),
        ("3 targeted coverage", targeted_coverage),
        ("4 solver vs grid oracle", solver_vs_oracle),
        ("5 observation suites", observations),
        ("6 proof constants", constants),
        ("7 linear scaling", scaling),
        ("8 deterministic output", determinism),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let o = run();
        all &= o.pass;
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
