//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every verdict is printed. Criterion 10
//! takes about twenty minutes on one core and runs only when
//! `TAILSURF_SLOW=1`; otherwise it prints SKIP. Criterion numbers given as
//! arguments (`cargo test --test acceptance -- 1 5`) restrict the run. The
//! process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use tailsurf::codes::{
    cycle_code, y_code_structure, y_distance, y_logical_count, Layout, LogicalClass, PauliOperator,
    StabilizerCode,
};
use tailsurf::decoders::{cycle_decode, cycle_failure_bound, CycleDecoder, Decoder, ExactYDecoder};
use tailsurf::gf2::{BitMatrix, BitVec};
use tailsurf::noise::{hashing_bound, trial_rng, BiasedNoiseModel};
use tailsurf::sim::{
    build_decoder, estimate_failure_rate, fit_decay, fit_threshold, write_csv, DecoderKind,
    RateRow, ThresholdPoint,
};

// criterion 1
const FORMULA_MAX: usize = 12;
const NULLSPACE_MAX: usize = 6;
// criterion 2
const STRUCTURE_CASES: [(usize, usize); 4] = [(4, 4), (3, 4), (8, 12), (6, 9)];
// criterion 3: bias and published hashing bound in percent
const HASHING_TABLE: [(f64, f64); 8] = [
    (0.5, 18.9),
    (1.0, 19.4),
    (3.0, 22.2),
    (10.0, 27.8),
    (30.0, 33.5),
    (100.0, 39.0),
    (300.0, 42.8),
    (1000.0, 45.6),
];
const HASHING_TOL_PP: f64 = 0.1;
// criterion 4
const CYCLE_M: usize = 20;
const CYCLE_P: f64 = 0.25;
const CYCLE_TRIALS: u64 = 100_000;
const SMALL_CYCLE_M: usize = 4;
const SMALL_CYCLE_P: f64 = 0.1;
// criterion 5
const ORACLE_PS: [f64; 3] = [0.05, 0.1, 0.15];
const ORACLE_CHI: usize = 64;
const ORACLE_SYNDROMES: u64 = 1000;
const ORACLE_REL_TOL: f64 = 1e-10;
// criterion 6
const CHI_ONE_DISTANCES: [usize; 2] = [5, 7];
const CHI_ONE_PS: [f64; 3] = [0.1, 0.3, 0.45];
const CHI_ONE_SAMPLES: u64 = 10_000;
// criterion 7
const PURE_Y_DISTANCES: [usize; 3] = [5, 9, 13];
const PURE_Y_PS: [f64; 5] = [0.42, 0.44, 0.46, 0.48, 0.50];
const PURE_Y_TRIALS: u64 = 10_000;
const PURE_Y_TARGET: f64 = 0.50;
const PURE_Y_TOL: f64 = 0.02;
// criterion 8
const DECAY_DISTANCES: [usize; 4] = [3, 5, 7, 9];
const DECAY_P: f64 = 0.30;
const DECAY_TRIALS: u64 = 1_000_000;
const DECAY_MIN_R2: f64 = 0.98;
// criterion 9
const ADVANTAGE_D: usize = 9;
const ADVANTAGE_P: f64 = 0.30;
const ADVANTAGE_TRIALS: u64 = 30_000;
const ADVANTAGE_MIN_SIGMA: f64 = 5.0;
// criterion 10
const FINITE_BIAS_DISTANCES: [usize; 3] = [5, 7, 9];
const FINITE_BIAS_ETA: f64 = 0.5;
const FINITE_BIAS_PS: [f64; 5] = [0.17, 0.18, 0.19, 0.20, 0.21];
const FINITE_BIAS_CHI: usize = 16;
const FINITE_BIAS_TRIALS: u64 = 5_000;
const FINITE_BIAS_TARGET: f64 = 0.188;
const FINITE_BIAS_TOL: f64 = 0.015;

const SEED: u64 = 20_190_101;
const SLOW_ENV: &str = "TAILSURF_SLOW";

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

/// Outcome of a Monte Carlo criterion plus the CSV it produced.
struct Run {
    verdict: Verdict,
    csv: Vec<u8>,
}

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn rate_csv(rows: &[RateRow]) -> Vec<u8> {
    let mut buf = Vec::new();
    let meta = vec![("seed".to_string(), SEED.to_string())];
    write_csv(&mut buf, &meta, rows).expect("in-memory write");
    buf
}

fn rate_row(
    code: &StabilizerCode,
    model: &BiasedNoiseModel,
    kind: DecoderKind,
    chi: Option<usize>,
) -> RateRow {
    let dec = build_decoder(kind, code, model, chi).expect("valid decoder");
    rate_row_with(code, dec.as_ref(), model, kind, chi, PURE_Y_TRIALS)
}

fn rate_row_with(
    code: &StabilizerCode,
    dec: &dyn Decoder,
    model: &BiasedNoiseModel,
    kind: DecoderKind,
    chi: Option<usize>,
    trials: u64,
) -> RateRow {
    let est = estimate_failure_rate(code, dec, model, trials, SEED).expect("estimate");
    assert_eq!(
        est.tally.decoder_errors,
        0,
        "decoder errors on {}",
        code.id()
    );
    RateRow::new(code, model, kind, chi, SEED, &est)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Minimum weight of a nontrivial Y-type logical, the number of nontrivial
/// Y-type logicals, and the number of Y-type stabilizers, by enumerating the
/// kernel of the Y check matrix.
fn y_logicals_by_nullspace(code: &StabilizerCode) -> (usize, u64, u64) {
    let basis = code.y_check_matrix().nullspace_basis();
    assert!(basis.len() <= 24, "kernel too large to enumerate");
    let (mut min_weight, mut logicals, mut stabilizers) = (usize::MAX, 0u64, 1u64);
    let mut y = BitVec::zeros(code.n());
    // Gray-code walk over the kernel
    for i in 1u64..(1u64 << basis.len()) {
        y.xor_assign(&basis[i.trailing_zeros() as usize]);
        if code.logical_class(&PauliOperator::y_type(y.clone())) == LogicalClass::I {
            stabilizers += 1;
        } else {
            logicals += 1;
            min_weight = min_weight.min(y.count_ones());
        }
    }
    (min_weight, logicals, stabilizers)
}

fn criterion_1() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for j in 2..=FORMULA_MAX {
        for k in 2..=FORMULA_MAX {
            let g = gcd(j, k);
            let want = ((2 * g - 1) * j * k / (g * g), 1u64 << (g - 1));
            let got = (
                y_distance(j, k, Layout::Standard).unwrap(),
                y_logical_count(j, k, Layout::Standard).unwrap(),
            );
            checked += 1;
            if got != want {
                bad.push(format!("standard {j}x{k}: {got:?} vs {want:?}"));
            }
            if j <= NULLSPACE_MAX && k <= NULLSPACE_MAX {
                let code = StabilizerCode::standard(j, k).unwrap();
                let brute = y_logicals_by_nullspace(&code);
                if brute != (want.0, want.1, want.1) {
                    bad.push(format!("standard {j}x{k} nullspace: {brute:?} vs {want:?}"));
                }
            }
            if j % 2 == 1 && k % 2 == 1 && j >= 3 && k >= 3 {
                let want = (j * k, 1u64);
                let got = (
                    y_distance(j, k, Layout::Rotated).unwrap(),
                    y_logical_count(j, k, Layout::Rotated).unwrap(),
                );
                checked += 1;
                if got != want {
                    bad.push(format!("rotated {j}x{k}: {got:?} vs {want:?}"));
                }
                if j <= NULLSPACE_MAX && k <= NULLSPACE_MAX {
                    let code = StabilizerCode::rotated(j, k).unwrap();
                    let brute = y_logicals_by_nullspace(&code);
                    if brute != (want.0, want.1, want.1) {
                        bad.push(format!("rotated {j}x{k} nullspace: {brute:?} vs {want:?}"));
                    }
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{checked} codes checked, mismatches: {bad:?}"),
    )
}

fn criterion_2() -> Verdict {
    let mut bad = Vec::new();
    for (j, k) in STRUCTURE_CASES {
        let s = y_code_structure(j, k).unwrap();
        let (g, t) = (s.g, s.t);
        let want: BTreeMap<usize, usize> = [
            (t, 1),
            (2 * t, 2 * (g - 1)),
            (4 * t, g * (g + 1) / 2 + 1 - 2 * g),
        ]
        .into_iter()
        .filter(|&(_, c)| c > 0)
        .fold(BTreeMap::new(), |mut m, (len, c)| {
            *m.entry(len).or_insert(0) += c;
            m
        });
        let got: BTreeMap<usize, usize> = s.block_multiset().into_iter().collect();
        if got != want {
            bad.push(format!("{j}x{k}: blocks {got:?} vs {want:?}"));
        }
        let rows: Vec<BitVec> = s
            .extended_diagonals
            .iter()
            .map(|d| d.x_bits().clone())
            .collect();
        let rank = BitMatrix::from_rows(s.extended_diagonals[0].n(), &rows).rank();
        if rank != g {
            bad.push(format!(
                "{j}x{k}: diagonal span dimension {rank} vs g = {g}"
            ));
        }
    }
    verdict(
        bad.is_empty(),
        format!("cases {STRUCTURE_CASES:?}, mismatches: {bad:?}"),
    )
}

fn criterion_3() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut detail = String::new();
    for (eta, pct) in HASHING_TABLE {
        let got = 100.0 * hashing_bound(eta).unwrap();
        worst = worst.max((got - pct).abs());
        let _ = write!(detail, "{eta}:{got:.3}% ");
    }
    verdict(
        worst <= HASHING_TOL_PP,
        format!(
            "{}max deviation {worst:.3} pp (tolerance {HASHING_TOL_PP} pp)",
            detail
        ),
    )
}

fn criterion_4() -> Run {
    let decoder = CycleDecoder::new(CYCLE_M).unwrap();
    let code = decoder.code();
    let mut misses = 0u64;
    for trial in 0..CYCLE_TRIALS {
        let mut rng = trial_rng(SEED, trial);
        let e = BitVec::from_bools(
            &(0..code.n_bits())
                .map(|_| rng.gen_bool(CYCLE_P))
                .collect::<Vec<_>>(),
        );
        let got = decoder.decode(&code.syndrome(&e)).unwrap();
        if got != e {
            misses += 1;
        }
    }
    let rate = misses as f64 / CYCLE_TRIALS as f64;
    let bound = cycle_failure_bound(CYCLE_M, CYCLE_P).unwrap();

    // K_4: every error pattern, grouped by syndrome
    let small = cycle_code(SMALL_CYCLE_M).unwrap();
    let nb = small.n_bits();
    let mut by_syndrome: BTreeMap<Vec<bool>, Vec<BitVec>> = BTreeMap::new();
    for mask in 0u32..(1 << nb) {
        let e = BitVec::from_indices(nb, (0..nb).filter(|&b| mask >> b & 1 == 1));
        by_syndrome
            .entry(small.syndrome(&e).to_bools())
            .or_default()
            .push(e);
    }
    let log_p = |e: &BitVec| {
        let w = e.count_ones() as f64;
        w * SMALL_CYCLE_P.ln() + (nb as f64 - w) * (1.0 - SMALL_CYCLE_P).ln()
    };
    let (mut tie_free, mut agree, mut disagree) = (0, 0, 0);
    let mut lines = String::new();
    for (s, errors) in &by_syndrome {
        let s_vec = BitVec::from_bools(s);
        let mut fired = vec![0usize; nb];
        for (t, &(a, b, c)) in small.triangles().iter().enumerate() {
            if s[t] {
                for (u, v) in [(a, b), (b, c), (a, c)] {
                    fired[small.edge_index(u, v)] += 1;
                }
            }
        }
        let vote_tie = fired.iter().any(|&f| 2 * f == SMALL_CYCLE_M - 2);
        let best = errors.iter().map(log_p).fold(f64::NEG_INFINITY, f64::max);
        let maximizers: Vec<&BitVec> = errors.iter().filter(|e| log_p(e) >= best - 1e-12).collect();
        let decoded = cycle_decode(SMALL_CYCLE_M, &s_vec).unwrap();
        let ok = maximizers.len() == 1 && &decoded == maximizers[0];
        let _ = writeln!(
            lines,
            "{},{},{},{}",
            s.iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>(),
            vote_tie,
            maximizers.len(),
            ok
        );
        if vote_tie || maximizers.len() != 1 {
            continue;
        }
        tie_free += 1;
        if ok {
            agree += 1;
        } else {
            disagree += 1;
        }
    }
    let csv = format!("m,p,trials,misses,rate,bound\n{CYCLE_M},{CYCLE_P},{CYCLE_TRIALS},{misses},{rate:?},{bound:?}\nsyndrome,vote_tie,ml_maximizers,agree\n{lines}");
    Run {
        verdict: verdict(
            rate <= bound && disagree == 0 && tie_free > 0,
            format!(
                "K_{CYCLE_M} p={CYCLE_P}: rate {rate:.4} <= bound {bound:.4} ({misses}/{CYCLE_TRIALS}); \
                 K_{SMALL_CYCLE_M}: {agree}/{tie_free} tie-free syndromes agree with ML ({} syndromes total)",
                by_syndrome.len()
            ),
        ),
        csv: csv.into_bytes(),
    }
}

fn criterion_5() -> Run {
    let code = StabilizerCode::rotated(3, 3).unwrap();
    let mut worst: f64 = 0.0;
    let mut csv = String::from("p,sample,class,mps_log_prob,brute_log_prob\n");
    for p in ORACLE_PS {
        let model = BiasedNoiseModel::depolarizing(p).unwrap();
        let mps = build_decoder(DecoderKind::Mps, &code, &model, Some(ORACLE_CHI)).unwrap();
        let brute = build_decoder(DecoderKind::BruteForce, &code, &model, None).unwrap();
        for i in 0..ORACLE_SYNDROMES {
            let e = model.sample_error(code.n(), &mut trial_rng(SEED, i));
            let s = code.syndrome(&e).unwrap();
            let a = mps.decode(&s).unwrap();
            let b = brute.decode(&s).unwrap();
            // class c relative to a's reference is class c * shift relative to b's
            let shift = code.logical_class(&a.reference.mul(&b.reference));
            for class in LogicalClass::ALL {
                let la = a
                    .coset_scores
                    .iter()
                    .find(|c| c.class == class)
                    .unwrap()
                    .log_prob;
                let lb = b
                    .coset_scores
                    .iter()
                    .find(|c| c.class == class.mul(shift))
                    .unwrap()
                    .log_prob;
                worst = worst.max((la - lb).exp_m1().abs());
                let _ = writeln!(csv, "{p},{i},{class:?},{la:?},{lb:?}");
            }
        }
    }
    Run {
        verdict: verdict(
            worst <= ORACLE_REL_TOL,
            format!(
                "{} syndromes x {} p: max relative coset error {worst:.2e} (tolerance {ORACLE_REL_TOL:.0e})",
                ORACLE_SYNDROMES,
                ORACLE_PS.len()
            ),
        ),
        csv: csv.into_bytes(),
    }
}

fn criterion_6() -> Run {
    let mut mismatches = 0u64;
    let mut total = 0u64;
    let mut csv = String::from("d,p,samples,mismatches\n");
    for d in CHI_ONE_DISTANCES {
        let code = StabilizerCode::rotated(d, d).unwrap();
        for p in CHI_ONE_PS {
            let model = BiasedNoiseModel::pure_y(p).unwrap();
            let mps = build_decoder(DecoderKind::Mps, &code, &model, Some(1)).unwrap();
            let exact = ExactYDecoder::new(&code, &model).unwrap();
            let mut here = 0u64;
            for i in 0..CHI_ONE_SAMPLES {
                let e = model.sample_error(code.n(), &mut trial_rng(SEED, i));
                let s = code.syndrome(&e).unwrap();
                let a = mps.decode(&s).unwrap().recovery;
                let b = exact.decode(&s).unwrap().recovery;
                if code.logical_class(&a.mul(&b)) != LogicalClass::I {
                    here += 1;
                }
            }
            let _ = writeln!(csv, "{d},{p},{CHI_ONE_SAMPLES},{here}");
            mismatches += here;
            total += CHI_ONE_SAMPLES;
        }
    }
    Run {
        verdict: verdict(
            mismatches == 0,
            format!("{mismatches} verdict mismatches in {total} syndromes"),
        ),
        csv: csv.into_bytes(),
    }
}

fn threshold_points(rows: &[RateRow]) -> Vec<ThresholdPoint> {
    rows.iter()
        .map(|r| ThresholdPoint {
            distance: r.j,
            p: r.p,
            rate: r.rate,
            stderr: r.stderr,
            trials: r.trials,
        })
        .collect()
}

fn criterion_7() -> Run {
    let mut rows = Vec::new();
    for d in PURE_Y_DISTANCES {
        let code = StabilizerCode::rotated(d, d).unwrap();
        for p in PURE_Y_PS {
            let model = BiasedNoiseModel::pure_y(p).unwrap();
            rows.push(rate_row(&code, &model, DecoderKind::ExactY, None));
        }
    }
    let csv = rate_csv(&rows);
    let verdict = match fit_threshold(&threshold_points(&rows), 1.0, 0.46) {
        Ok(f) => verdict(
            (f.p_c - PURE_Y_TARGET).abs() <= PURE_Y_TOL,
            format!(
                "p_c = {:.4} +/- {:.4}, nu = {:.3} (target {PURE_Y_TARGET} +/- {PURE_Y_TOL})",
                f.p_c, f.p_c_stderr, f.nu
            ),
        ),
        Err(e) => Verdict::Fail(format!("fit failed: {e}")),
    };
    Run { verdict, csv }
}

fn criterion_8() -> Run {
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for d in DECAY_DISTANCES {
        let code = StabilizerCode::rotated(d, d).unwrap();
        let model = BiasedNoiseModel::pure_y(DECAY_P).unwrap();
        let dec = ExactYDecoder::new(&code, &model).unwrap();
        let row = rate_row_with(&code, &dec, &model, DecoderKind::ExactY, None, DECAY_TRIALS);
        points.push((y_distance(d, d, Layout::Rotated).unwrap() as f64, row.rate));
        rows.push(row);
    }
    let csv = rate_csv(&rows);
    let verdict = if points.iter().any(|&(_, f)| f == 0.0) {
        Verdict::Fail(format!(
            "zero observed failures at some distance: {points:?}"
        ))
    } else {
        match fit_decay(&points) {
            Ok(f) => verdict(
                f.r_squared >= DECAY_MIN_R2,
                format!(
                    "log f = {:.4} d_Y + {:.3}, R^2 = {:.5} (minimum {DECAY_MIN_R2}); rates {:?}",
                    f.slope,
                    f.intercept,
                    f.r_squared,
                    points.iter().map(|p| p.1).collect::<Vec<_>>()
                ),
            ),
            Err(e) => Verdict::Fail(format!("fit failed: {e}")),
        }
    };
    Run { verdict, csv }
}

fn criterion_9() -> Run {
    let model = BiasedNoiseModel::pure_y(ADVANTAGE_P).unwrap();
    let rotated = StabilizerCode::rotated(ADVANTAGE_D, ADVANTAGE_D).unwrap();
    let square = StabilizerCode::standard(ADVANTAGE_D, ADVANTAGE_D).unwrap();
    let r = rate_row_with(
        &rotated,
        &ExactYDecoder::new(&rotated, &model).unwrap(),
        &model,
        DecoderKind::ExactY,
        None,
        ADVANTAGE_TRIALS,
    );
    let s = rate_row_with(
        &square,
        &ExactYDecoder::new(&square, &model).unwrap(),
        &model,
        DecoderKind::ExactY,
        None,
        ADVANTAGE_TRIALS,
    );
    let sigma = (r.stderr.powi(2) + s.stderr.powi(2)).sqrt();
    let z = if sigma > 0.0 {
        (s.rate - r.rate) / sigma
    } else {
        0.0
    };
    let csv = rate_csv(&[r.clone(), s.clone()]);
    Run {
        verdict: verdict(
            r.rate < s.rate && z >= ADVANTAGE_MIN_SIGMA,
            format!(
                "f_rotated = {:.5} +/- {:.5}, f_square = {:.5} +/- {:.5}, separation {z:.1} sigma (minimum {ADVANTAGE_MIN_SIGMA})",
                r.rate, r.stderr, s.rate, s.stderr
            ),
        ),
        csv,
    }
}

fn slow_enabled() -> bool {
    std::env::var(SLOW_ENV).is_ok_and(|v| v == "1")
}

fn criterion_10() -> Run {
    if !slow_enabled() {
        return Run {
            verdict: Verdict::Skip(format!("slow suite; set {SLOW_ENV}=1 to run")),
            csv: Vec::new(),
        };
    }
    let mut rows = Vec::new();
    for d in FINITE_BIAS_DISTANCES {
        let code = StabilizerCode::rotated(d, d).unwrap();
        for p in FINITE_BIAS_PS {
            let model = BiasedNoiseModel::new(p, FINITE_BIAS_ETA).unwrap();
            let dec =
                build_decoder(DecoderKind::Mps, &code, &model, Some(FINITE_BIAS_CHI)).unwrap();
            rows.push(rate_row_with(
                &code,
                dec.as_ref(),
                &model,
                DecoderKind::Mps,
                Some(FINITE_BIAS_CHI),
                FINITE_BIAS_TRIALS,
            ));
        }
    }
    let csv = rate_csv(&rows);
    let verdict = match fit_threshold(&threshold_points(&rows), 1.0, FINITE_BIAS_TARGET) {
        Ok(f) => verdict(
            (f.p_c - FINITE_BIAS_TARGET).abs() <= FINITE_BIAS_TOL,
            format!(
                "p_c = {:.4} +/- {:.4}, nu = {:.3} (target {FINITE_BIAS_TARGET} +/- {FINITE_BIAS_TOL})",
                f.p_c, f.p_c_stderr, f.nu
            ),
        ),
        Err(e) => Verdict::Fail(format!("fit failed: {e}")),
    };
    Run { verdict, csv }
}

fn report(out: &mut impl std::io::Write, n: u32, name: &str, v: &Verdict, secs: f64) -> bool {
    let (tag, detail, ok) = match v {
        Verdict::Pass(d) => ("PASS", d, true),
        Verdict::Fail(d) => ("FAIL", d, false),
        Verdict::Skip(d) => ("SKIP", d, true),
    };
    writeln!(
        out,
        "criterion {n:>2} [{name}]: {tag} ({secs:.1}s) {detail}"
    )
    .unwrap();
    out.flush().unwrap();
    ok
}

fn main() {
    // `cargo test -- --list` and similar harness probes
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let only: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let wanted = |n: u32| only.is_empty() || only.contains(&n);
    let mut out = std::io::stdout();
    let mut all_ok = true;
    let timed = |f: &dyn Fn() -> Verdict| {
        let t = Instant::now();
        let v = f();
        (v, t.elapsed().as_secs_f64())
    };
    for (n, name, f) in [
        (
            1,
            "Y-distance and Y-logical count formulas",
            criterion_1 as fn() -> Verdict,
        ),
        (2, "repetition block structure", criterion_2),
        (3, "hashing bound", criterion_3),
    ] {
        if !wanted(n) {
            continue;
        }
        let (v, s) = timed(&f);
        all_ok &= report(&mut out, n, name, &v, s);
    }
    type Entry = (u32, &'static str, fn() -> Run);
    let monte_carlo: [Entry; 7] = [
        (4, "cycle decoder", criterion_4),
        (5, "MPS vs brute-force coset probabilities", criterion_5),
        (6, "chi = 1 exactness under pure Y", criterion_6),
        (7, "pure-Y threshold", criterion_7),
        (8, "exponential decay in d_Y", criterion_8),
        (9, "rotated vs square advantage", criterion_9),
        (10, "finite-bias threshold", criterion_10),
    ];
    let monte_carlo: Vec<_> = monte_carlo
        .into_iter()
        .filter(|&(n, _, _)| wanted(n))
        .collect();
    let mut first = Vec::new();
    for &(n, name, f) in &monte_carlo {
        let t = Instant::now();
        let run = f();
        all_ok &= report(&mut out, n, name, &run.verdict, t.elapsed().as_secs_f64());
        first.push(run.csv);
    }
    if !wanted(11) {
        if !all_ok {
            std::process::exit(1);
        }
        return;
    }
    let t = Instant::now();
    let differing: Vec<u32> = monte_carlo
        .iter()
        .zip(&first)
        .filter(|((_, _, f), csv)| f().csv != **csv)
        .map(|((n, _, _), _)| *n)
        .collect();
    let compared: Vec<u32> = monte_carlo
        .iter()
        .map(|&(n, _, _)| n)
        .filter(|&n| n != 10 || slow_enabled())
        .collect();
    let v = verdict(
        differing.is_empty(),
        format!("reran criteria {compared:?} with identical seeds; differing CSV: {differing:?}"),
    );
    all_ok &= report(&mut out, 11, "determinism", &v, t.elapsed().as_secs_f64());
    if !all_ok {
        std::process::exit(1);
    }
}
