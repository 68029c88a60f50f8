//! Acceptance suite: one PASS/FAIL line per criterion, each checked at its
//! stated tolerance and runtime budget. Runs as a plain binary so the report
//! is always printed; exits non-zero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use percepthash::attacks::{apply_attack, default_grid, multiplicative_noise, psnr, AttackKind, AttackSpec, SeededRng};
use percepthash::bench::{default_thresholds, inter_test, intra_test, render_markdown, roc, BenchReport, Corpus};
use percepthash::hashes::Algorithm;
use percepthash::raster::{dct2, idct2, FloatPlane, RasterImage};
use percepthash::similarity::correlation_values;

const CORPUS_SIZE: usize = 10;
const CORPUS_SEED: u64 = 42;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within_budget(mut outcome: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    if elapsed > budget {
        outcome.pass = false;
        outcome.detail += &format!("; exceeded {budget:?}");
    }
    outcome
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn desk_corpus() -> Corpus {
    Corpus::synthetic(CORPUS_SIZE, CORPUS_SEED)
}

/// Textbook sample Pearson coefficient from raw sums.
fn pearson_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (sx, sy) = (x.iter().sum::<f64>(), y.iter().sum::<f64>());
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let (sxx, syy) = (
        x.iter().map(|a| a * a).sum::<f64>(),
        y.iter().map(|b| b * b).sum::<f64>(),
    );
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

fn std_dev(x: &[f64]) -> f64 {
    let m = mean(x);
    (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / x.len() as f64).sqrt()
}

fn correlation_oracle() -> Outcome {
    let mut rng = SeededRng::new(1);
    let lengths = [32, 63, 80, 256];
    let (mut worst_oracle, mut worst_affine, mut max_abs) = (0.0f64, 0.0f64, 0.0f64);
    let mut asymmetric = 0;
    let mut compared = 0;
    for i in 0..1000 {
        let l = lengths[i % lengths.len()];
        let binary = l == 63 && i % 8 == 1;
        let draw = |rng: &mut SeededRng| -> Vec<f64> {
            (0..l)
                .map(|_| {
                    if binary {
                        (rng.next_f64() < 0.5) as u8 as f64
                    } else {
                        200.0 * rng.next_f64() - 100.0
                    }
                })
                .collect()
        };
        let a = draw(&mut rng);
        let mut b = draw(&mut rng);
        if i % 3 == 0 {
            // correlated pairs exercise scores near +-1
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            for (bv, av) in b.iter_mut().zip(&a) {
                *bv = sign * av + 0.1 * *bv;
            }
        }
        let s = correlation_values(&a, &b).unwrap();
        if s != correlation_values(&b, &a).unwrap() {
            asymmetric += 1;
        }
        max_abs = max_abs.max(s.abs());
        if std_dev(&a) > 1e-6 && std_dev(&b) > 1e-6 {
            compared += 1;
            worst_oracle = worst_oracle.max((s - pearson_oracle(&a, &b)).abs());
        }
        let (scale, shift) = (0.1 + 10.0 * rng.next_f64(), 50.0 * rng.next_f64() - 25.0);
        let a2: Vec<f64> = a.iter().map(|v| scale * v + shift).collect();
        worst_affine = worst_affine.max((correlation_values(&a2, &b).unwrap() - s).abs());
    }
    check(
        worst_oracle <= 1e-9 && asymmetric == 0 && max_abs <= 1.0 + 1e-12 && worst_affine <= 1e-6,
        format!(
            "oracle max err {worst_oracle:.1e} over {compared} pairs, asymmetric {asymmetric}, max |S| {max_abs:.15}, affine max err {worst_affine:.1e}"
        ),
    )
}

fn random_plane(w: usize, h: usize, rng: &mut SeededRng) -> FloatPlane {
    FloatPlane::new(w, h, (0..w * h).map(|_| 510.0 * rng.next_f64() - 255.0).collect()).unwrap()
}

/// Direct double sum over the orthonormal DCT-II definition.
fn naive_dct2(p: &FloatPlane) -> Vec<f64> {
    let (w, h) = (p.width(), p.height());
    let alpha = |k: usize, n: usize| {
        if k == 0 {
            (1.0 / n as f64).sqrt()
        } else {
            (2.0 / n as f64).sqrt()
        }
    };
    let mut out = vec![0.0; w * h];
    for v in 0..h {
        for u in 0..w {
            let mut acc = 0.0;
            for y in 0..h {
                for x in 0..w {
                    acc += p.get(x, y)
                        * (std::f64::consts::PI * (2 * x + 1) as f64 * u as f64 / (2 * w) as f64).cos()
                        * (std::f64::consts::PI * (2 * y + 1) as f64 * v as f64 / (2 * h) as f64).cos();
                }
            }
            out[v * w + u] = alpha(u, w) * alpha(v, h) * acc;
        }
    }
    out
}

fn dct_oracle() -> Outcome {
    let mut rng = SeededRng::new(2);
    let (mut worst_naive, mut worst_parseval, mut worst_inverse) = (0.0f64, 0.0f64, 0.0f64);
    for h in 1..=16 {
        for w in 1..=16 {
            let p = random_plane(w, h, &mut rng);
            let fast = dct2(&p);
            let naive = naive_dct2(&p);
            for (a, b) in fast.values().iter().zip(&naive) {
                worst_naive = worst_naive.max((a - b).abs());
            }
            let e_in: f64 = p.values().iter().map(|v| v * v).sum();
            let e_out: f64 = fast.values().iter().map(|v| v * v).sum();
            worst_parseval = worst_parseval.max((e_in - e_out).abs() / e_in);
        }
    }
    for n in [1, 2, 3, 5, 8, 17, 32, 63, 64] {
        let p = random_plane(n, n, &mut rng);
        let back = idct2(&dct2(&p));
        for (a, b) in p.values().iter().zip(back.values()) {
            worst_inverse = worst_inverse.max((a - b).abs());
        }
    }
    check(
        worst_naive <= 1e-9 && worst_parseval <= 1e-9 && worst_inverse <= 1e-9,
        format!("naive max err {worst_naive:.1e}, Parseval rel err {worst_parseval:.1e}, inverse max err {worst_inverse:.1e}"),
    )
}

fn ring_rotation(corpus: &Corpus) -> Outcome {
    let (mut worst_s, mut worst_diff) = (1.0f64, 0.0f64);
    for (_, img) in &corpus.images {
        let h0 = Algorithm::Ring.hash(img);
        let h1 = Algorithm::Ring.hash(&img.rotate90());
        worst_s = worst_s.min(correlation_values(h0.values(), h1.values()).unwrap());
        for (a, b) in h0.values().iter().zip(h1.values()) {
            worst_diff = worst_diff.max((a - b).abs());
        }
    }
    check(
        worst_s >= 0.999 && worst_diff <= 1e-9,
        format!(
            "min S {worst_s:.12}, max component diff {worst_diff:.1e} over {} images",
            corpus.images.len()
        ),
    )
}

fn op_mean(report: &BenchReport, op: AttackKind, alg: Algorithm) -> f64 {
    report.aggregate(op, alg).expect("operation present").mean
}

fn jpeg_high_quality_mean(report: &BenchReport, alg: Algorithm) -> f64 {
    let scores: Vec<f64> = report
        .records
        .iter()
        .filter(|r| r.algorithm == alg && r.operation == AttackKind::Jpeg)
        .filter(|r| {
            r.attack
                .trim_start_matches("jpeg:")
                .parse::<u8>()
                .is_ok_and(|q| q >= 50)
        })
        .map(|r| r.score)
        .collect();
    assert_eq!(scores.len(), 6 * CORPUS_SIZE);
    mean(&scores)
}

fn table_directions(report: &BenchReport) -> Vec<(String, Outcome)> {
    let phash = Algorithm::Phash;
    let gamma = op_mean(report, AttackKind::Gamma, phash);
    let gauss = op_mean(report, AttackKind::Gaussian3x3, phash);
    let jpeg = jpeg_high_quality_mean(report, phash);
    let phash_rot = op_mean(report, AttackKind::Rotation, phash);
    let ring_rot = op_mean(report, AttackKind::Rotation, Algorithm::Ring);

    let mut photometric = Vec::new();
    let mut pass_d = true;
    for alg in Algorithm::ALL {
        let rows = [AttackKind::Brightness, AttackKind::Contrast, AttackKind::Gamma].map(|op| op_mean(report, op, alg));
        let low = rows.iter().copied().fold(f64::INFINITY, f64::min);
        pass_d &= low >= 0.85;
        photometric.push(format!(
            "{alg} b/c/g {:.4}/{:.4}/{:.4} (pooled {:.4})",
            rows[0],
            rows[1],
            rows[2],
            mean(&rows)
        ));
    }

    vec![
        (
            "4a phash gamma, gaussian, jpeg q>=50 mean S >= 0.95".into(),
            check(
                gamma >= 0.95 && gauss >= 0.95 && jpeg >= 0.95,
                format!("gamma {gamma:.4}, gaussian {gauss:.4}, jpeg {jpeg:.4}"),
            ),
        ),
        (
            "4b phash rotation mean S <= 0.6".into(),
            check(phash_rot <= 0.6, format!("{phash_rot:.4}")),
        ),
        (
            "4c ring rotation exceeds phash rotation by >= 0.3".into(),
            check(
                ring_rot - phash_rot >= 0.3,
                format!(
                    "ring {ring_rot:.4} - phash {phash_rot:.4} = {:.4}",
                    ring_rot - phash_rot
                ),
            ),
        ),
        (
            "4d every algorithm: brightness, contrast, gamma mean S >= 0.85".into(),
            check(pass_d, photometric.join("; ")),
        ),
    ]
}

fn noise_statistics() -> Outcome {
    let (w, h) = (512, 512);
    let n = (w * h) as f64;
    let flat = RasterImage::filled(w, h, 1, 128).unwrap();
    let mut worst_z = 0.0f64;
    for density in [0.005, 0.01] {
        let sigma = (n * density * (1.0 - density)).sqrt();
        for seed in 0..20 {
            let out = apply_attack(&flat, &AttackSpec::SaltPepper { density }, seed).unwrap();
            // mid-gray input: every replaced pixel changes
            let replaced = out.pixels().iter().filter(|&&p| p != 128).count() as f64;
            worst_z = worst_z.max((replaced - n * density).abs() / sigma);
        }
    }
    let mut worst_mean_z = 0.0f64;
    let count = 100_000;
    for (i, variance) in [0.001, 0.01, 0.1].into_iter().enumerate() {
        for seed in 0..20u64 {
            let noise = multiplicative_noise(count, variance, seed * 3 + i as u64);
            worst_mean_z = worst_mean_z.max(mean(&noise).abs() / (variance / count as f64).sqrt());
        }
    }
    check(
        worst_z <= 3.0 && worst_mean_z <= 3.0,
        format!("salt-pepper worst |z| {worst_z:.2}, multiplicative mean worst |z| {worst_mean_z:.2}"),
    )
}

fn jpeg_sanity(corpus: &Corpus) -> Outcome {
    let mut min_q100 = f64::INFINITY;
    let mut non_monotone = Vec::new();
    for (id, img) in &corpus.images {
        let curve: Vec<f64> = [100u8, 80, 50, 30]
            .into_iter()
            .map(|quality| psnr(img, &apply_attack(img, &AttackSpec::Jpeg { quality }, 0).unwrap()))
            .collect();
        min_q100 = min_q100.min(curve[0]);
        if curve.windows(2).any(|p| p[1] > p[0]) {
            non_monotone.push(id.clone());
        }
    }
    check(
        min_q100 >= 45.0 && non_monotone.is_empty(),
        format!("min PSNR at q=100 {min_q100:.2} dB, non-monotone images {non_monotone:?}"),
    )
}

fn discrimination(corpus: &Corpus, intra: &BenchReport) -> Outcome {
    let inter = inter_test(corpus, &Algorithm::ALL).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for alg in Algorithm::ALL {
        let same = intra.scores(alg, &[AttackKind::Rotation]);
        let diff = inter.scores(alg);
        let gap = mean(&same) - mean(&diff);
        let points = roc(&intra.scores(alg, &[]), &diff, &default_thresholds()).unwrap();
        let monotone = points.windows(2).all(|w| {
            w[1].true_positive_rate <= w[0].true_positive_rate && w[1].false_positive_rate <= w[0].false_positive_rate
        });
        let required = matches!(alg, Algorithm::Phash | Algorithm::Ring);
        pass &= monotone && (!required || gap >= 0.3);
        parts.push(format!(
            "{alg} gap {gap:.4}{}",
            if monotone { "" } else { " roc NOT monotone" }
        ));
    }
    check(pass, parts.join("; "))
}

fn run_bench(dir: &Path, tag: &str) -> (Vec<u8>, Vec<u8>) {
    let csv = dir.join(format!("{tag}.csv"));
    let md = dir.join(format!("{tag}.md"));
    let status = Command::new(env!("CARGO_BIN_EXE_percepthash"))
        .args(["bench", "--synthetic", "10", "--seed", "42", "--out-csv"])
        .arg(&csv)
        .arg("--out-md")
        .arg(&md)
        .output()
        .expect("run percepthash");
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    (std::fs::read(csv).unwrap(), std::fs::read(md).unwrap())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let first = run_bench(dir.path(), "a");
    let second = run_bench(dir.path(), "b");
    check(
        first == second && !first.0.is_empty(),
        format!(
            "csv {} bytes, markdown {} bytes, identical: {}",
            first.0.len(),
            first.1.len(),
            first == second
        ),
    )
}

type Results = Vec<(String, Outcome)>;

fn timed(results: &mut Results, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let mut outcome = match budget {
        Some(b) => within_budget(outcome, elapsed, b),
        None => outcome,
    };
    outcome.detail += &format!(" [{:.2}s]", elapsed.as_secs_f64());
    results.push((name.to_string(), outcome));
}

fn main() -> ExitCode {
    let mut results = Results::new();
    timed(
        &mut results,
        "1 correlation oracle, symmetry, bounds, affine invariance",
        Some(Duration::from_secs(1)),
        correlation_oracle,
    );
    timed(
        &mut results,
        "2 dct2 vs naive transform, Parseval, inverse",
        Some(Duration::from_secs(5)),
        dct_oracle,
    );

    let corpus = desk_corpus();
    timed(
        &mut results,
        "3 ring hash invariant under 90 degree rotation",
        Some(Duration::from_secs(10)),
        || ring_rotation(&corpus),
    );

    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let report = pool
        .install(|| intra_test(&corpus, &Algorithm::ALL, &default_grid(), CORPUS_SEED))
        .unwrap();
    let intra_elapsed = start.elapsed();
    println!(
        "intra-test over {} records, single thread, {:.2}s",
        report.records.len(),
        intra_elapsed.as_secs_f64()
    );
    print!("{}", render_markdown(&report));
    for (name, outcome) in table_directions(&report) {
        let mut outcome = within_budget(outcome, intra_elapsed, Duration::from_secs(120));
        outcome.detail += &format!(" [{:.2}s]", intra_elapsed.as_secs_f64());
        results.push((name, outcome));
    }

    timed(
        &mut results,
        "5 salt-pepper mask and multiplicative noise statistics",
        None,
        noise_statistics,
    );
    timed(
        &mut results,
        "6 jpeg PSNR at q=100 and monotone in quality",
        None,
        || jpeg_sanity(&corpus),
    );
    timed(
        &mut results,
        "7 intra minus inter gap >= 0.3 for phash and ring, roc monotone",
        None,
        || discrimination(&corpus, &report),
    );
    timed(
        &mut results,
        "8 bench --synthetic 10 --seed 42 is byte-identical across runs",
        None,
        determinism,
    );

    let mut failed = 0;
    for (name, outcome) in &results {
        println!(
            "{} {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
        failed += usize::from(!outcome.pass);
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
