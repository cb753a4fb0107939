//! One function per subcommand.

use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use lm_shotgun::analysis::{
    self, check_face_count, check_four_tuples, check_neighbourhood_sizes, check_pair_tail,
    collision_search, evaluate_count_bound, phase_experiment, verify_witness, FaceCountConfig,
    FourTupleConfig, NeighbourhoodSizeConfig, PairTailConfig, PhaseConfig, SearchMode,
};
use lm_shotgun::reconstruct::{
    extract_collection, extract_collection_unscrambled, reconstruct, verify_exact,
    NeighbourhoodCollection,
};
use lm_shotgun::sampler::{sample_lm, LmParams};
use lm_shotgun::Complex;
use serde::Serialize;

use crate::args::*;
use crate::report::{emit, write_atomic, ExperimentReport, RecordGroup};
use crate::Status;

pub fn execute(cli: &Cli) -> Result<Status> {
    let start = Instant::now();
    let timed = |mut r: ExperimentReport| {
        if cli.timings {
            r.wall_clock_ms = Some(start.elapsed().as_millis() as u64);
        }
        r
    };
    match &cli.command {
        Command::Sample(a) => sample(a),
        Command::Extract(a) => extract(a),
        Command::Reconstruct(a) => reconstruct_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Iso(a) => iso(a),
        Command::Canon(a) => canon(a),
        Command::Lemmas(a) => lemmas(a, timed),
        Command::Countbound(a) => countbound(a),
        Command::Phase(a) => phase(a, timed),
        Command::Collide(a) => collide(a),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_complex(path: &Path) -> Result<Complex> {
    Complex::from_text(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn sample(a: &SampleArgs) -> Result<Status> {
    let seed = a.seed.expect("validated");
    let params = match (a.density.alpha, a.density.p) {
        (Some(alpha), _) => LmParams::with_alpha(a.n, a.d, alpha, seed)?,
        (_, Some(p)) => LmParams::with_p(a.n, a.d, p, seed)?,
        _ => unreachable!("validated"),
    };
    emit(a.out.as_deref(), &sample_lm(&params).to_text())?;
    Ok(Status::Ok)
}

fn extract(a: &ExtractArgs) -> Result<Status> {
    let x = read_complex(&a.input)?;
    let coll = match a.seed {
        Some(seed) if !a.unscrambled => extract_collection(&x, seed),
        _ => extract_collection_unscrambled(&x),
    };
    emit(a.out.as_deref(), &(coll.to_json() + "\n"))?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct ReconstructionOutput<'a> {
    format_version: u32,
    clean: bool,
    faces: usize,
    report: &'a lm_shotgun::reconstruct::AmbiguityReport,
}

fn reconstruct_cmd(a: &ReconstructArgs) -> Result<Status> {
    let coll = NeighbourhoodCollection::from_json(&read(&a.input)?)
        .with_context(|| format!("in {}", a.input.display()))?;
    let (y, report) = reconstruct(&coll)?;
    emit(a.out.as_deref(), &y.to_text())?;
    eprintln!(
        "reconstructed {} faces; {}",
        y.face_count(),
        if report.is_clean() {
            "every degree matches its neighbourhood".to_string()
        } else {
            format!(
                "{} centers have extra faces",
                report.degree_mismatches.len()
            )
        }
    );
    if let Some(path) = &a.report {
        let out = ReconstructionOutput {
            format_version: lm_shotgun::FORMAT_VERSION,
            clean: report.is_clean(),
            faces: y.face_count(),
            report: &report,
        };
        write_atomic(
            path,
            (serde_json::to_string_pretty(&out)? + "\n").as_bytes(),
        )?;
    }
    Ok(Status::Ok)
}

fn verify(a: &VerifyArgs) -> Result<Status> {
    let x = read_complex(&a.expected)?;
    let y = read_complex(&a.actual)?;
    if verify_exact(&x, &y)? {
        println!("identical: {} faces", x.face_count());
        return Ok(Status::Ok);
    }
    let missing = x.faces().difference(y.faces()).count();
    let extra = y.faces().difference(x.faces()).count();
    println!("different: {missing} faces missing, {extra} extra");
    Ok(Status::ThresholdFailed)
}

fn iso(a: &IsoArgs) -> Result<Status> {
    let x = read_complex(&a.first)?;
    let y = read_complex(&a.second)?;
    if analysis::collide::complex_form(&x) == analysis::collide::complex_form(&y) {
        println!("isomorphic");
        Ok(Status::Ok)
    } else {
        println!("not isomorphic");
        Ok(Status::NotIsomorphic)
    }
}

fn canon(a: &CanonArgs) -> Result<Status> {
    let x = read_complex(&a.file)?;
    println!("{}", analysis::collide::complex_form(&x).to_hex());
    Ok(Status::Ok)
}

fn group(label: impl Into<String>, records: &[analysis::TrialRecord]) -> RecordGroup {
    RecordGroup {
        label: label.into(),
        records: records.to_vec(),
    }
}

fn lemmas(a: &LemmasArgs, timed: impl Fn(ExperimentReport) -> ExperimentReport) -> Result<Status> {
    let seed = a.seed.expect("validated");
    let name = "lemmas";
    let (mut report, passed) = match a.which {
        Check::PairTail => {
            let c = a.c.unwrap_or(2.0 * a.alpha - 1.0 + 0.1);
            let r = check_pair_tail(&PairTailConfig::new(a.n, a.d, a.alpha, c, a.trials, seed))?;
            (
                ExperimentReport::new(name, a, &r, vec![group("pairs", &r.records)]),
                r.passed(),
            )
        }
        Check::FourTuple => {
            let r = check_four_tuples(&FourTupleConfig::new(a.n, a.d, a.alpha, a.trials, seed))?;
            let groups = r
                .cases
                .iter()
                .map(|c| {
                    group(
                        serde_json::to_value(c.case)
                            .ok()
                            .and_then(|v| v.as_str().map(String::from))
                            .unwrap_or_default(),
                        &c.records,
                    )
                })
                .collect();
            (ExperimentReport::new(name, a, &r, groups), r.passed())
        }
        Check::NeighbourhoodSize => {
            let mut cfg =
                NeighbourhoodSizeConfig::new(a.n, a.d, a.alpha, a.epsilon, a.trials, seed);
            if let Some(c) = a.c {
                cfg.c = c;
            }
            let r = check_neighbourhood_sizes(&cfg)?;
            (
                ExperimentReport::new(name, a, &r, vec![group("samples", &r.records)]),
                r.passed(),
            )
        }
        Check::FaceCount => {
            let r = check_face_count(&FaceCountConfig::new(
                a.n, a.d, a.alpha, a.epsilon, a.trials, seed,
            ))?;
            (
                ExperimentReport::new(name, a, &r, vec![group("samples", &r.records)]),
                r.passed(),
            )
        }
    };
    report.passed = Some(passed);
    let report = timed(report);
    emit(a.out.as_deref(), &report.to_json())?;
    eprintln!(
        "{}",
        if passed {
            "check passed"
        } else {
            "check failed"
        }
    );
    Ok(if passed {
        Status::Ok
    } else {
        Status::ThresholdFailed
    })
}

fn countbound(a: &CountboundArgs) -> Result<Status> {
    let rows = evaluate_count_bound(&a.n_grid, a.d, a.alpha, a.epsilon, a.c)?;
    let mut out = String::from(
        "n,d,alpha,epsilon,c,p,q,t,log10_collections,log10_min_binomial,log10_ratio,log10_ratio_factorial,log10_ratio_closed_form\n",
    );
    for r in &rows {
        let fields = [
            r.n,
            r.d as f64,
            r.alpha,
            r.epsilon,
            r.c,
            r.p,
            r.q,
            r.t,
            r.log10_collections,
            r.log10_min_binomial,
            r.log10_ratio,
            r.log10_ratio_factorial,
            r.log10_ratio_closed_form,
        ];
        let line: Vec<String> = fields.iter().map(f64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    emit(a.out.as_deref(), &out)?;
    Ok(Status::Ok)
}

fn phase(a: &PhaseArgs, timed: impl Fn(ExperimentReport) -> ExperimentReport) -> Result<Status> {
    let cfg = PhaseConfig {
        n_grid: a.n_grid.clone(),
        alpha_grid: a.alpha_grid.clone(),
        d: a.d,
        trials: a.trials,
        seed: a.seed.expect("validated"),
    };
    let r = phase_experiment(&cfg)?;
    emit(a.out.as_deref(), &r.to_csv())?;
    if let Some(path) = &a.report {
        let groups = r
            .cells
            .iter()
            .map(|c| group(format!("n={},alpha={}", c.n, c.alpha), &c.records))
            .collect();
        let report = timed(ExperimentReport::new("phase", a, &r, groups));
        write_atomic(path, report.to_json().as_bytes())?;
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct CollideOutput<'a> {
    format_version: u32,
    config: &'a CollideArgs,
    witness: Option<analysis::WitnessCheck>,
}

fn collide(a: &CollideArgs) -> Result<Status> {
    let mode = match a.mode {
        Mode::Exhaustive => SearchMode::Exhaustive,
        Mode::Constructed => SearchMode::Constructed,
    };
    let found = collision_search(a.n, a.d, mode)?;
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let (check, status) = match &found {
        Some(w) => {
            write_atomic(&a.out.join("x.txt"), w.x.to_text().as_bytes())?;
            write_atomic(&a.out.join("y.txt"), w.y.to_text().as_bytes())?;
            let check = verify_witness(&w.x, &w.y)?;
            let status = if check.is_witness() {
                Status::Ok
            } else {
                Status::ThresholdFailed
            };
            println!(
                "{}: {} centers checked",
                if check.is_witness() {
                    "witness verified"
                } else {
                    "candidate pair failed verification"
                },
                check.centers_checked
            );
            (Some(check), status)
        }
        None => {
            println!("no witness found");
            (None, Status::Ok)
        }
    };
    let out = CollideOutput {
        format_version: lm_shotgun::FORMAT_VERSION,
        config: a,
        witness: check,
    };
    write_atomic(
        &a.out.join("check.json"),
        (serde_json::to_string_pretty(&out)? + "\n").as_bytes(),
    )?;
    Ok(status)
}
