//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the output; exits non-zero when
//! any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lm_shotgun::analysis::stats::ln_binomial;
use lm_shotgun::analysis::{
    check_face_count, check_four_tuples, check_neighbourhood_sizes, check_pair_tail,
    collision_search, evaluate_count_bound, phase_experiment, prescribed_c, verify_witness,
    FaceCountConfig, FourTupleConfig, NeighbourhoodSizeConfig, PairTailConfig, PhaseConfig,
    SearchMode, TupleCase,
};
use lm_shotgun::reconstruct::{extract_collection, reconstruct};
use lm_shotgun::sampler::{degree_law_check, enumerate_complexes, sample_lm, LmParams};
use lm_shotgun::simplex::binomial;
use lm_shotgun::{canonical_form, is_isomorphic, ops, simplex, Complex, Simplex};

const SEED: u64 = 20_240_611;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn phase_cell(n: u32, d: usize, alpha: f64, trials: usize) -> lm_shotgun::analysis::PhaseCell {
    let cfg = PhaseConfig {
        n_grid: vec![n],
        alpha_grid: vec![alpha],
        d,
        trials,
        seed: SEED,
    };
    phase_experiment(&cfg)
        .expect("valid phase config")
        .cells
        .remove(0)
}

fn exact_reconstruction_d1() -> Outcome {
    let cell = phase_cell(200, 1, 0.25, 50);
    outcome(
        cell.successes >= 48,
        format!(
            "{}/50 exact with clean reports (need >= 48)",
            cell.successes
        ),
    )
}

fn exact_reconstruction_d2() -> Outcome {
    let cell = phase_cell(40, 2, 0.25, 20);
    outcome(
        cell.successes >= 18,
        format!(
            "{}/20 exact with clean reports (need >= 18); mean shared fingerprints {:.1}, mean empty-fingerprint centers {:.1}",
            cell.successes, cell.mean_collision_groups, cell.mean_empty_fingerprint_centers
        ),
    )
}

fn cycle_witness() -> Outcome {
    let start = Instant::now();
    let w = collision_search(8, 1, SearchMode::Constructed)
        .expect("construction succeeds")
        .expect("constructed mode yields a pair");
    let two_c4: BTreeSet<Simplex> = [
        (1, 2),
        (2, 3),
        (3, 4),
        (1, 4),
        (5, 6),
        (6, 7),
        (7, 8),
        (5, 8),
    ]
    .into_iter()
    .map(|(a, b)| simplex![a, b])
    .collect();
    let c8: BTreeSet<Simplex> = (1..=8u32).map(|i| simplex![i, i % 8 + 1]).collect();
    let check = verify_witness(&w.x, &w.y).expect("same parameters");
    let elapsed = start.elapsed().as_secs_f64();
    let shapes = *w.x.faces() == two_c4 && *w.y.faces() == c8;
    outcome(
        shapes && check.centers_checked == 8 && check.is_witness() && elapsed < 1.0,
        format!(
            "C4+C4 vs C8: {} centers, {} mismatched, complexes isomorphic = {}, {:.3}s",
            check.centers_checked,
            check.mismatched_centers.len(),
            check.complexes_isomorphic,
            elapsed
        ),
    )
}

fn degradation_large_alpha() -> Outcome {
    let cell = phase_cell(200, 1, 0.9, 50);
    let failures = cell.trials - cell.successes;
    outcome(
        cell.rate <= 0.5 && cell.ambiguous == failures && failures > 0,
        format!(
            "rate {:.2} (need <= 0.5); {} of {} failed trials have non-empty ambiguity reports",
            cell.rate, cell.ambiguous, failures
        ),
    )
}

fn degree_law() -> Outcome {
    let params = LmParams::with_p(100, 2, 0.3, SEED).unwrap();
    let law = degree_law_check(&params, 1000).unwrap();
    let se = (law.expected_variance / 1000.0).sqrt();
    let mean_ok = (law.mean - 29.4).abs() <= 3.0 * se;
    let var_ok = (law.variance - 20.58).abs() <= 0.1 * 20.58;
    outcome(
        mean_ok && var_ok,
        format!(
            "mean {:.3} vs 29.4 (3 se = {:.3}), variance {:.3} vs 20.58 (10% = 2.058)",
            law.mean,
            3.0 * se,
            law.variance
        ),
    )
}

fn neighbour_count_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut instances, mut pair_instances, mut violations) = (0, 0, 0);
    while instances < 10_000 {
        let d = rng.random_range(1..=3usize);
        let n = rng.random_range(d as u32 + 2..=d as u32 + 8);
        let p = rng.random_range(0.05..0.9);
        let x = sample_lm(&LmParams::with_p(n, d, p, rng.random()).unwrap());
        let ridges: Vec<Simplex> = x.ridges().collect();
        for _ in 0..10 {
            let sigma = &ridges[rng.random_range(0..ridges.len())];
            let nb = ops::neighbours(&x, sigma).unwrap();
            let deg = ops::degree(&x, sigma).unwrap();
            if nb.len() != d * deg
                || nb != common::neighbours_by_definition(&x, sigma)
                || deg != common::degree_by_definition(&x, sigma)
            {
                violations += 1;
            }
            if let Some(tau) = nb.iter().nth(rng.random_range(0..nb.len().max(1))) {
                let st = ops::neighbour_pair_stats(&x, sigma, tau).unwrap();
                if st.s_prime != d - 1 || st.w != st.s_prime + st.s_dprime {
                    violations += 1;
                }
                pair_instances += 1;
            }
            instances += 1;
        }
    }
    outcome(
        violations == 0,
        format!("{instances} simplex and {pair_instances} pair instances over d in 1..=3, {violations} violations"),
    )
}

fn pair_tail() -> Outcome {
    let alpha = 0.3;
    let c = 2.0 * alpha - 1.0 + 0.1;
    let r = check_pair_tail(&PairTailConfig::new(200, 2, alpha, c, 10_000, SEED)).unwrap();
    outcome(
        r.passed() && r.conditioned >= 10_000,
        format!(
            "{} pairs; mean W-(d-1) {:.4} vs {:.4} (rel err {:.4}); tail freq {:.4} vs 10 x {:.4}",
            r.conditioned,
            r.moments.mean,
            r.moments.reference_mean,
            r.moments.relative_error,
            r.frequency,
            r.bound
        ),
    )
}

fn four_tuple_cases() -> Outcome {
    let d2 = check_four_tuples(&FourTupleConfig::new(300, 2, 0.3, 10_000, SEED)).unwrap();
    let d3 = check_four_tuples(&FourTupleConfig::new(300, 3, 0.3, 10_000, SEED + 1)).unwrap();
    let aligned = d2.case(TupleCase::Aligned).unwrap().moments.unwrap();
    let off1 = d2.case(TupleCase::OffsetOne).unwrap().violations
        + d3.case(TupleCase::OffsetOne).unwrap().violations;
    let off2 = d3.case(TupleCase::OffsetTwo).unwrap();
    outcome(
        off1 == 0 && off2.violations == 0 && aligned.relative_error <= 0.05,
        format!(
            "|S|<=1 violations {off1} (20000 tuples), |S|=0 violations {} ({} tuples); aligned mean {:.4} vs {:.4} (rel err {:.4})",
            off2.violations, off2.trials, aligned.mean, aligned.reference_mean, aligned.relative_error
        ),
    )
}

fn neighbourhood_and_count_frequencies() -> Outcome {
    let sizes =
        check_neighbourhood_sizes(&NeighbourhoodSizeConfig::new(500, 1, 0.75, 0.1, 200, SEED))
            .unwrap();
    let count = check_face_count(&FaceCountConfig::new(500, 1, 0.75, 0.1, 1000, SEED)).unwrap();
    outcome(
        sizes.frequency >= 0.99 && count.frequency >= 0.99,
        format!(
            "membership {:.3} (need 0.99; n q = {:.2}, per-center degree failure rate {:.4}, c = {}); face count in I {:.3} (need 0.99)",
            sizes.frequency,
            sizes.degree_threshold,
            sizes.degree_failure_rate,
            sizes.config.c,
            count.frequency
        ),
    )
}

fn counting_bound() -> Outcome {
    let grid = [1e3, 1e4, 1e5, 1e6];
    let mut ok = true;
    let mut parts = Vec::new();
    for d in [1, 2] {
        let rows = evaluate_count_bound(&grid, d, 0.75, 0.1, Some(prescribed_c(0.75))).unwrap();
        let values: Vec<f64> = rows.iter().map(|r| r.log10_ratio).collect();
        ok &= values.windows(2).all(|w| w[1] < w[0]) && *values.last().unwrap() < 0.0;
        parts.push(format!(
            "d={d}: [{}]",
            values
                .iter()
                .map(|v| format!("{v:.4e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    let mut worst: f64 = 0.0;
    for a in 0..=30u64 {
        for b in 0..=a {
            let exact = binomial(a, b) as f64;
            worst = worst.max(((ln_binomial(a as f64, b as f64).exp() - exact) / exact).abs());
        }
    }
    ok &= worst < 1e-10;
    outcome(
        ok,
        format!(
            "log10 ratios {}; worst relative error of C(a,b), a<=30: {worst:.2e}",
            parts.join("; ")
        ),
    )
}

fn isomorphism_oracle() -> Outcome {
    let graphs: Vec<Vec<Simplex>> = enumerate_complexes(4, 1)
        .unwrap()
        .map(|x| {
            x.faces()
                .iter()
                .cloned()
                .chain((1..=4).map(|v| simplex![v]))
                .collect()
        })
        .collect();
    let forms: BTreeSet<Vec<u8>> = graphs
        .iter()
        .map(|g| canonical_form(g, &[]).bytes().to_vec())
        .collect();
    let mut brute_classes: Vec<usize> = Vec::new();
    let mut reps: Vec<&Vec<Simplex>> = Vec::new();
    for g in &graphs {
        match reps.iter().position(|r| common::brute_isomorphic(r, g)) {
            Some(i) => brute_classes.push(i),
            None => {
                brute_classes.push(reps.len());
                reps.push(g);
            }
        }
    }
    let by_form: HashMap<Vec<u8>, usize> = graphs
        .iter()
        .zip(&brute_classes)
        .map(|(g, &c)| (canonical_form(g, &[]).bytes().to_vec(), c))
        .collect();
    let partitions_agree = graphs
        .iter()
        .zip(&brute_classes)
        .all(|(g, &c)| by_form[canonical_form(g, &[]).bytes()] == c)
        && by_form.len() == reps.len();

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut agree, mut positives) = (0, 0);
    for _ in 0..10_000 {
        let d = rng.random_range(1..=2usize);
        let p = rng.random_range(0.2..0.8);
        let a = sample_lm(&LmParams::with_p(6, d, p, rng.random()).unwrap());
        let fa: Vec<Simplex> = a.faces().iter().cloned().collect();
        let fb: Vec<Simplex> = if rng.random_bool(0.5) {
            let mut perm: Vec<u32> = (1..=6).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
            let mut g: Vec<Simplex> = fa.iter().map(|s| s.map(|v| perm[v as usize - 1])).collect();
            if rng.random_bool(0.3) && !g.is_empty() {
                // Move one face to a random other position.
                let idx = rng.random_range(0..g.len());
                let fresh = sample_lm(&LmParams::with_p(6, d, 0.5, rng.random()).unwrap());
                if let Some(f) = fresh.faces().iter().find(|f| !g.contains(f)) {
                    g[idx] = f.clone();
                }
            }
            g
        } else {
            let b = sample_lm(&LmParams::with_p(6, d, p, rng.random()).unwrap());
            b.faces().iter().cloned().collect()
        };
        let fast = is_isomorphic(&fa, &fb);
        let slow = common::brute_isomorphic(&fa, &fb);
        agree += usize::from(fast == slow);
        positives += usize::from(slow);
    }
    outcome(
        forms.len() == 11 && reps.len() == 11 && partitions_agree && agree == 10_000,
        format!(
            "{} canonical classes, {} brute-force classes, partitions agree = {partitions_agree}; random 6-vertex pairs {agree}/10000 agree ({positives} isomorphic)",
            forms.len(),
            reps.len()
        ),
    )
}

fn brute_force_reconstruction() -> Outcome {
    let mut complexes: Vec<Complex> = enumerate_complexes(5, 1).unwrap().collect();
    complexes.extend(enumerate_complexes(4, 2).unwrap());
    let (mut exact, mut flagged, mut omitted, mut bad) = (0, 0, 0, 0);
    for (i, x) in complexes.iter().enumerate() {
        let coll = extract_collection(x, SEED ^ i as u64);
        let (y, report) = reconstruct(&coll).unwrap();
        let is_exact = y == *x;
        if !x.faces().is_subset(y.faces()) {
            omitted += 1;
        }
        if is_exact {
            exact += 1;
        } else if !report.is_clean() {
            flagged += 1;
        } else {
            bad += 1;
        }
    }
    outcome(
        omitted == 0 && bad == 0 && complexes.len() == 1024 + 16,
        format!(
            "{} complexes: {exact} exact, {flagged} flagged ambiguous, {bad} inexact without flag, {omitted} with an omitted true face",
            complexes.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "exact reconstruction, d=1, n=200, alpha=0.25",
            exact_reconstruction_d1,
        ),
        (
            "exact reconstruction, d=2, n=40, alpha=0.25",
            exact_reconstruction_d2,
        ),
        (
            "constructed non-reconstructable pair, d=1, n=8",
            cycle_witness,
        ),
        (
            "degradation at alpha=0.9, d=1, n=200",
            degradation_large_alpha,
        ),
        ("degree law, d=2, n=100, p=0.3", degree_law),
        ("neighbour count identities", neighbour_count_identities),
        (
            "common-neighbour law and tail, d=2, n=200, alpha=0.3",
            pair_tail,
        ),
        ("four-tuple cases", four_tuple_cases),
        (
            "neighbourhood sizes and face count, d=1, n=500, alpha=0.75",
            neighbourhood_and_count_frequencies,
        ),
        ("counting bound, alpha=0.75, d in {1,2}", counting_bound),
        ("isomorphism oracle equivalence", isomorphism_oracle),
        (
            "brute-force reconstruction oracle",
            brute_force_reconstruction,
        ),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|k| k != i + 1) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} [{:>2}] {name}: {} ({:.1}s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.passed);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
