//! Monte Carlo failure rates, convergence in χ, decay fits and threshold
//! estimation by finite-size scaling.
//!
//! Trial `t` of a run with master seed `s` draws its error from
//! `trial_rng(s, t)`, so any subset of trials can be replayed and results do
//! not depend on how trials are scheduled across threads.

use std::fmt;
use std::hash::Hasher;
use std::io::Write;
use std::str::FromStr;

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use faer::linalg::solvers::SolveLstsq;
use faer::Mat;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{LogicalClass, PauliOperator, StabilizerCode};
use crate::decoders::{
    is_success, BruteForceDecoder, ConcatenatedDecoder, Decoder, ExactYDecoder, MpsDecoder,
};
use crate::noise::{eta_serde, format_eta, trial_rng, BiasedNoiseModel};
use crate::{Error, Result};

/// Decoder selectable from configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    ExactY,
    Concatenated,
    Mps,
    BruteForce,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 4] = [
        DecoderKind::ExactY,
        DecoderKind::Concatenated,
        DecoderKind::Mps,
        DecoderKind::BruteForce,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DecoderKind::ExactY => "exact-y",
            DecoderKind::Concatenated => "concatenated",
            DecoderKind::Mps => "mps",
            DecoderKind::BruteForce => "brute-force",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecoderKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown decoder {s:?} (expected exact-y, concatenated, mps or brute-force)"
                ))
            })
    }
}

/// Builds a decoder for `code` under `model`; `chi` is required by, and only
/// accepted for, the MPS decoder.
pub fn build_decoder(
    kind: DecoderKind,
    code: &StabilizerCode,
    model: &BiasedNoiseModel,
    chi: Option<usize>,
) -> Result<Box<dyn Decoder>> {
    if chi.is_some() && kind != DecoderKind::Mps {
        return Err(Error::InvalidArgument(format!(
            "chi only applies to the mps decoder (got decoder {kind})"
        )));
    }
    Ok(match kind {
        DecoderKind::ExactY => Box::new(ExactYDecoder::new(code, model)?),
        DecoderKind::Concatenated => Box::new(ConcatenatedDecoder::new(code)?),
        DecoderKind::BruteForce => Box::new(BruteForceDecoder::new(code, model)?),
        DecoderKind::Mps => {
            let chi =
                chi.ok_or_else(|| Error::InvalidArgument("the mps decoder needs chi".into()))?;
            Box::new(MpsDecoder::new(code, model, chi)?)
        }
    })
}

/// Outcome of one simulated trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub code: String,
    pub p: f64,
    #[serde(with = "eta_serde")]
    pub eta: f64,
    pub decoder: String,
    pub chi: Option<usize>,
    pub trial: u64,
    pub seed: u64,
    /// FNV-1a hash of the sampled error written as a Pauli string.
    pub error_digest: String,
    /// Decoded class relative to the decoder's reference.
    pub verdict: Option<LogicalClass>,
    /// Class of the sampled error relative to the same reference.
    pub actual: Option<LogicalClass>,
    pub success: Option<bool>,
    pub decoder_error: Option<String>,
}

fn digest(e: &PauliOperator) -> String {
    let mut h = fnv::FnvHasher::default();
    h.write(e.to_string().as_bytes());
    format!("{:016x}", h.finish())
}

/// Runs trial `trial` of the stream `seed`.
pub fn run_trial(
    code: &StabilizerCode,
    decoder: &dyn Decoder,
    model: &BiasedNoiseModel,
    seed: u64,
    trial: u64,
    chi: Option<usize>,
) -> TrialRecord {
    let e = model.sample_error(code.n(), &mut trial_rng(seed, trial));
    let mut rec = TrialRecord {
        code: code.id(),
        p: model.p(),
        eta: model.eta(),
        decoder: decoder.name(),
        chi,
        trial,
        seed,
        error_digest: digest(&e),
        verdict: None,
        actual: None,
        success: None,
        decoder_error: None,
    };
    match code.syndrome(&e).and_then(|s| decoder.decode(&s)) {
        Ok(out) => {
            rec.verdict = Some(out.verdict);
            rec.actual = Some(code.logical_class(&e.mul(&out.reference)));
            rec.success = Some(is_success(code, &out.recovery, &e));
        }
        Err(err) => rec.decoder_error = Some(err.to_string()),
    }
    rec
}

/// Records of trials `0..trials`, in trial order.
pub fn run_trials(
    code: &StabilizerCode,
    decoder: &dyn Decoder,
    model: &BiasedNoiseModel,
    trials: u64,
    seed: u64,
    chi: Option<usize>,
) -> Vec<TrialRecord> {
    (0..trials)
        .into_par_iter()
        .map(|t| run_trial(code, decoder, model, seed, t, chi))
        .collect()
}

/// Trial counts; `merge` is associative and commutative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub trials: u64,
    pub failures: u64,
    pub decoder_errors: u64,
}

impl Tally {
    pub fn merge(self, other: Tally) -> Tally {
        Tally {
            trials: self.trials + other.trials,
            failures: self.failures + other.failures,
            decoder_errors: self.decoder_errors + other.decoder_errors,
        }
    }

    fn one(success: Option<bool>) -> Tally {
        Tally {
            trials: 1,
            failures: u64::from(success == Some(false)),
            decoder_errors: u64::from(success.is_none()),
        }
    }

    /// Trials that produced a recovery.
    pub fn decoded(&self) -> u64 {
        self.trials - self.decoder_errors
    }

    pub fn estimate(&self) -> FailureEstimate {
        let n = self.decoded();
        let (rate, stderr) = if n == 0 {
            (f64::NAN, f64::NAN)
        } else {
            let f = self.failures as f64 / n as f64;
            (f, (f * (1.0 - f) / n as f64).sqrt())
        };
        FailureEstimate {
            tally: *self,
            rate,
            stderr,
        }
    }
}

/// Failure rate over the trials that decoded, with binomial standard error.
/// Decoder errors are excluded from the rate and reported in the tally.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureEstimate {
    pub tally: Tally,
    pub rate: f64,
    pub stderr: f64,
}

pub fn estimate_failure_rate(
    code: &StabilizerCode,
    decoder: &dyn Decoder,
    model: &BiasedNoiseModel,
    trials: u64,
    seed: u64,
) -> Result<FailureEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let tally = (0..trials)
        .into_par_iter()
        .map(|t| {
            let e = model.sample_error(code.n(), &mut trial_rng(seed, t));
            Tally::one(decode_success(code, decoder, &e))
        })
        .reduce(Tally::default, Tally::merge);
    Ok(tally.estimate())
}

fn decode_success(code: &StabilizerCode, decoder: &dyn Decoder, e: &PauliOperator) -> Option<bool> {
    let out = code.syndrome(e).and_then(|s| decoder.decode(&s)).ok()?;
    Some(is_success(code, &out.recovery, e))
}

/// One row of a χ-convergence study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub chi: usize,
    pub estimate: FailureEstimate,
    /// `f_χ − f_χmax`.
    pub shifted: f64,
    /// `|f_χ − f_χmax|` is below half the standard error at `χmax`.
    pub converged: bool,
}

/// MPS failure rates at several χ on identical sampled errors.
pub fn convergence_study(
    code: &StabilizerCode,
    model: &BiasedNoiseModel,
    chis: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<ConvergenceRow>> {
    if chis.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two chi values".into(),
        ));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let decoders = chis
        .iter()
        .map(|&chi| MpsDecoder::new(code, model, chi))
        .collect::<Result<Vec<_>>>()?;
    let tallies = (0..trials)
        .into_par_iter()
        .map(|t| {
            let e = model.sample_error(code.n(), &mut trial_rng(seed, t));
            decoders
                .iter()
                .map(|d| Tally::one(decode_success(code, d, &e)))
                .collect::<Vec<_>>()
        })
        .reduce(
            || vec![Tally::default(); chis.len()],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
        );
    let max_at = (0..chis.len())
        .max_by_key(|&i| (chis[i], std::cmp::Reverse(i)))
        .expect("nonempty");
    let reference = tallies[max_at].estimate();
    Ok(chis
        .iter()
        .zip(&tallies)
        .map(|(&chi, t)| {
            let estimate = t.estimate();
            let shifted = estimate.rate - reference.rate;
            ConvergenceRow {
                chi,
                estimate,
                shifted,
                converged: shifted.abs() < 0.5 * reference.stderr || shifted == 0.0,
            }
        })
        .collect())
}

/// One CSV row of a failure-rate sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub layout: String,
    pub j: usize,
    pub k: usize,
    #[serde(with = "eta_serde")]
    pub eta: f64,
    pub p: f64,
    pub decoder: String,
    pub chi: Option<usize>,
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl RateRow {
    pub fn new(
        code: &StabilizerCode,
        model: &BiasedNoiseModel,
        decoder: DecoderKind,
        chi: Option<usize>,
        seed: u64,
        est: &FailureEstimate,
    ) -> Self {
        RateRow {
            layout: code.layout().to_string(),
            j: code.j(),
            k: code.k(),
            eta: model.eta(),
            p: model.p(),
            decoder: decoder.to_string(),
            chi,
            trials: est.tally.trials,
            failures: est.tally.failures,
            rate: est.rate,
            stderr: est.stderr,
            seed,
        }
    }
}

/// Writes `# key: value` metadata lines, then the rows as CSV with a header.
pub fn write_csv<W: Write>(
    mut w: W,
    metadata: &[(String, String)],
    rows: &[RateRow],
) -> Result<()> {
    for (k, v) in metadata {
        writeln!(w, "# {k}: {v}").map_err(io_error)?;
    }
    let mut cw = csv::Writer::from_writer(w);
    if rows.is_empty() {
        cw.write_record(RATE_COLUMNS).map_err(csv_error)?;
    }
    for r in rows {
        cw.serialize(r).map_err(csv_error)?;
    }
    cw.flush().map_err(io_error)?;
    Ok(())
}

/// Reads rows written by [`write_csv`], skipping metadata lines.
pub fn read_csv(text: &str) -> Result<Vec<RateRow>> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    csv::Reader::from_reader(body.as_bytes())
        .deserialize()
        .map(|r| r.map_err(csv_error))
        .collect()
}

pub const RATE_COLUMNS: [&str; 12] = [
    "layout", "j", "k", "eta", "p", "decoder", "chi", "trials", "failures", "rate", "stderr",
    "seed",
];

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("CSV: {e}"))
}

/// Formats η the way CSV output does.
pub fn eta_label(eta: f64) -> String {
    format_eta(eta)
}

/// Least-squares line through `(d_Y, ln f)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn fit_decay(points: &[(f64, f64)]) -> Result<DecayFit> {
    if points.len() < 2 {
        return Err(Error::Fit("need at least two points".into()));
    }
    if points.iter().any(|&(_, f)| !(f > 0.0 && f.is_finite())) {
        return Err(Error::Fit("failure rates must be positive".into()));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all distances are equal".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(DecayFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

/// Measured failure rate of one code distance at one physical error rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPoint {
    pub distance: usize,
    pub p: f64,
    pub rate: f64,
    pub stderr: f64,
    pub trials: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JackknifeEntry {
    pub left_out: usize,
    pub p_c: f64,
    pub nu: f64,
}

/// Fit of `f ≈ A + Bx + Cx²` with `x = (p − p_c) d^(1/ν)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdFit {
    pub p_c: f64,
    pub p_c_stderr: f64,
    pub nu: f64,
    pub nu_stderr: f64,
    /// `[A, B, C]`.
    pub coefficients: [f64; 3],
    /// Weighted sum of squared residuals.
    pub residual: f64,
    pub jackknife: Vec<JackknifeEntry>,
    /// Smallest and largest `p` in the data.
    pub window: (f64, f64),
}

/// Wilson-interval half-width at one standard deviation.
pub fn wilson_half_width(rate: f64, trials: u64) -> f64 {
    let n = trials as f64;
    (rate * (1.0 - rate) / n + 1.0 / (4.0 * n * n)).sqrt() / (1.0 + 1.0 / n)
}

fn effective_stderr(pt: &ThresholdPoint) -> f64 {
    if (pt.rate == 0.0 || pt.rate == 1.0) && pt.trials > 0 {
        pt.stderr.max(wilson_half_width(pt.rate, pt.trials))
    } else {
        pt.stderr
    }
}

struct ScalingCost<'a> {
    data: &'a [ThresholdPoint],
    weights: Vec<f64>,
}

impl ScalingCost<'_> {
    /// Coefficients and weighted residual for fixed `(p_c, ν)`.
    fn solve(&self, pc: f64, nu: f64) -> Result<([f64; 3], f64)> {
        if !(nu > 0.0 && nu.is_finite() && pc.is_finite()) {
            return Err(Error::Fit("parameters out of range".into()));
        }
        let m = self.data.len();
        let sw: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        let xs: Vec<f64> = self
            .data
            .iter()
            .map(|pt| (pt.p - pc) * (pt.distance as f64).powf(1.0 / nu))
            .collect();
        let a = Mat::from_fn(m, 3, |i, c| sw[i] * xs[i].powi(c as i32));
        let b = Mat::from_fn(m, 1, |i, _| sw[i] * self.data[i].rate);
        let qr = a.col_piv_qr();
        let r = qr.R();
        let (r0, r2) = (r[(0, 0)].abs(), r[(2, 2)].abs());
        if r2.is_nan() || r2 <= 1e-12 * r0 {
            return Err(Error::Fit("singular design matrix".into()));
        }
        let sol = qr.solve_lstsq(&b);
        let coef = [sol[(0, 0)], sol[(1, 0)], sol[(2, 0)]];
        let res = (0..m)
            .map(|i| {
                let model = coef[0] + coef[1] * xs[i] + coef[2] * xs[i] * xs[i];
                self.weights[i] * (self.data[i].rate - model).powi(2)
            })
            .sum();
        Ok((coef, res))
    }
}

impl CostFunction for ScalingCost<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, x: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        Ok(self.solve(x[0], x[1]).map(|r| r.1).unwrap_or(f64::INFINITY))
    }
}

fn distances_of(data: &[ThresholdPoint]) -> Vec<usize> {
    let mut d: Vec<usize> = data.iter().map(|p| p.distance).collect();
    d.sort_unstable();
    d.dedup();
    d
}

/// Minimizes the weighted residual over `(p_c, ν)` without precondition
/// checks beyond having data.
fn fit_core(data: &[ThresholdPoint], nu_init: f64, pc_init: f64) -> Result<ThresholdFit> {
    let weights = data
        .iter()
        .map(|pt| {
            let s = effective_stderr(pt);
            if s > 0.0 && s.is_finite() {
                Ok(1.0 / (s * s))
            } else {
                Err(Error::Fit(format!(
                    "point d={} p={} has no usable standard error",
                    pt.distance, pt.p
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let cost = ScalingCost { data, weights };
    let pmin = data.iter().map(|p| p.p).fold(f64::INFINITY, f64::min);
    let pmax = data.iter().map(|p| p.p).fold(f64::NEG_INFINITY, f64::max);
    let span = (pmax - pmin).max(1e-6);

    // coarse grid, then simplex refinement restarted from the best point
    let mut best = (
        pc_init,
        nu_init,
        cost.cost(&vec![pc_init, nu_init]).unwrap_or(f64::INFINITY),
    );
    for a in 0..=40 {
        let pc = pmin - 0.25 * span + 1.5 * span * a as f64 / 40.0;
        for b in 0..=30 {
            let nu = 0.2 * 25f64.powf(b as f64 / 30.0);
            let c = cost.cost(&vec![pc, nu]).unwrap_or(f64::INFINITY);
            if c < best.2 {
                best = (pc, nu, c);
            }
        }
    }
    if !best.2.is_finite() {
        return Err(Error::Fit("singular fit for every (p_c, nu) tried".into()));
    }
    let mut step = (0.05 * span, 0.1 * best.1);
    for _ in 0..4 {
        let simplex = vec![
            vec![best.0, best.1],
            vec![best.0 + step.0, best.1],
            vec![best.0, best.1 + step.1],
        ];
        let solver = NelderMead::new(simplex)
            .with_sd_tolerance(1e-15)
            .map_err(|e| Error::Fit(e.to_string()))?;
        let res = Executor::new(
            ScalingCost {
                data,
                weights: cost.weights.clone(),
            },
            solver,
        )
        .configure(|s| s.max_iters(4000))
        .run()
        .map_err(|e| Error::Fit(e.to_string()))?;
        let x = res
            .state
            .best_param
            .clone()
            .unwrap_or_else(|| vec![best.0, best.1]);
        let c = res.state.best_cost;
        if c <= best.2 {
            best = (x[0], x[1], c);
        }
        step = (step.0 * 0.1, step.1 * 0.1);
    }
    let (coefficients, residual) = cost.solve(best.0, best.1)?;
    Ok(ThresholdFit {
        p_c: best.0,
        p_c_stderr: f64::NAN,
        nu: best.1,
        nu_stderr: f64::NAN,
        coefficients,
        residual,
        jackknife: Vec::new(),
        window: (pmin, pmax),
    })
}

/// Whether the smallest and largest distances cross inside the window:
/// not significantly ordered the same way at both ends, and ordered the
/// subthreshold way (larger code better) at the low end or the other way
/// at the high end.
fn check_bracketing(data: &[ThresholdPoint], ds: &[usize]) -> Result<()> {
    let (dmin, dmax) = (ds[0], ds[ds.len() - 1]);
    let at = |d: usize, p: f64| data.iter().find(|pt| pt.distance == d && pt.p == p);
    let mut common: Vec<f64> = data
        .iter()
        .filter(|pt| pt.distance == dmin && at(dmax, pt.p).is_some())
        .map(|pt| pt.p)
        .collect();
    common.sort_by(f64::total_cmp);
    if common.len() < 2 {
        return Err(Error::Fit(
            "smallest and largest distance share fewer than two p values".into(),
        ));
    }
    let z = |p: f64| {
        let (a, b) = (at(dmin, p).expect("common"), at(dmax, p).expect("common"));
        let s = (effective_stderr(a).powi(2) + effective_stderr(b).powi(2)).sqrt();
        let diff = b.rate - a.rate;
        if s > 0.0 {
            diff / s
        } else {
            diff.signum() * f64::INFINITY
        }
    };
    let (lo, hi) = (z(common[0]), z(common[common.len() - 1]));
    if lo < 2.0 && hi > -2.0 && (lo <= -2.0 || hi >= 2.0) {
        Ok(())
    } else {
        Err(Error::Fit(format!(
            "data do not bracket the crossing (z at low p {lo:.2}, at high p {hi:.2})"
        )))
    }
}

/// Finite-size-scaling fit with jackknife errors over distances.
pub fn fit_threshold(data: &[ThresholdPoint], nu_init: f64, pc_init: f64) -> Result<ThresholdFit> {
    if data
        .iter()
        .any(|pt| !(pt.p.is_finite() && pt.rate.is_finite() && pt.stderr >= 0.0))
    {
        return Err(Error::Fit("non-finite data".into()));
    }
    let ds = distances_of(data);
    if ds.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 distances (got {})",
            ds.len()
        )));
    }
    for &d in &ds {
        let count = data.iter().filter(|pt| pt.distance == d).count();
        if count < 3 {
            return Err(Error::Fit(format!(
                "distance {d} has {count} p values (need at least 3)"
            )));
        }
    }
    check_bracketing(data, &ds)?;
    let mut fit = fit_core(data, nu_init, pc_init)?;
    for &d in &ds {
        let rest: Vec<ThresholdPoint> =
            data.iter().copied().filter(|pt| pt.distance != d).collect();
        let sub = fit_core(&rest, fit.nu, fit.p_c)?;
        fit.jackknife.push(JackknifeEntry {
            left_out: d,
            p_c: sub.p_c,
            nu: sub.nu,
        });
    }
    let spread = |vals: Vec<f64>| {
        let n = vals.len() as f64;
        let mean = vals.iter().sum::<f64>() / n;
        ((n - 1.0) / n * vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>()).sqrt()
    };
    fit.p_c_stderr = spread(fit.jackknife.iter().map(|j| j.p_c).collect());
    fit.nu_stderr = spread(fit.jackknife.iter().map(|j| j.nu).collect());
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::ExactYDecoder;

    #[test]
    fn zero_noise_never_fails() {
        let code = StabilizerCode::rotated(3, 3).unwrap();
        let m = BiasedNoiseModel::depolarizing(0.0).unwrap();
        let d = build_decoder(DecoderKind::Mps, &code, &m, Some(4)).unwrap();
        let est = estimate_failure_rate(&code, d.as_ref(), &m, 50, 1).unwrap();
        assert_eq!(est.rate, 0.0);
        assert_eq!(est.tally.failures, 0);
        assert!(estimate_failure_rate(&code, d.as_ref(), &m, 0, 1).is_err());
    }

    #[test]
    fn decoder_errors_are_counted_apart() {
        // exact-Y cannot decode X/Z errors
        let code = StabilizerCode::standard(3, 3).unwrap();
        let m = BiasedNoiseModel::new(0.3, 1.0).unwrap();
        let pure = BiasedNoiseModel::pure_y(0.3).unwrap();
        let d = ExactYDecoder::new(&code, &pure).unwrap();
        let est = estimate_failure_rate(&code, &d, &m, 200, 4).unwrap();
        assert!(est.tally.decoder_errors > 0);
        assert_eq!(est.tally.trials, 200);
        assert!(est.tally.failures <= est.tally.decoded());
    }

    #[test]
    fn records_agree_with_tally() {
        let code = StabilizerCode::rotated(3, 3).unwrap();
        let m = BiasedNoiseModel::new(0.2, 3.0).unwrap();
        let d = build_decoder(DecoderKind::BruteForce, &code, &m, None).unwrap();
        let recs = run_trials(&code, d.as_ref(), &m, 300, 8, None);
        let est = estimate_failure_rate(&code, d.as_ref(), &m, 300, 8).unwrap();
        let fails = recs.iter().filter(|r| r.success == Some(false)).count() as u64;
        assert_eq!(fails, est.tally.failures);
        for r in &recs {
            assert_eq!(r.success, Some(r.verdict == r.actual));
        }
        assert_eq!(recs, run_trials(&code, d.as_ref(), &m, 300, 8, None));
    }

    #[test]
    fn tally_merge_is_commutative_and_associative() {
        let t = |a, b, c| Tally {
            trials: a,
            failures: b,
            decoder_errors: c,
        };
        let (x, y, z) = (t(3, 1, 0), t(5, 2, 1), t(7, 0, 2));
        assert_eq!(x.merge(y), y.merge(x));
        assert_eq!(x.merge(y).merge(z), x.merge(y.merge(z)));
    }

    #[test]
    fn decoder_kind_round_trip() {
        for k in DecoderKind::ALL {
            assert_eq!(k.to_string().parse::<DecoderKind>().unwrap(), k);
        }
        assert!("mwpm".parse::<DecoderKind>().is_err());
        let code = StabilizerCode::rotated(3, 3).unwrap();
        let m = BiasedNoiseModel::depolarizing(0.1).unwrap();
        assert!(build_decoder(DecoderKind::Mps, &code, &m, None).is_err());
        assert!(build_decoder(DecoderKind::BruteForce, &code, &m, Some(4)).is_err());
    }

    #[test]
    fn convergence_shift_is_zero_at_max_chi() {
        let code = StabilizerCode::rotated(3, 3).unwrap();
        let m = BiasedNoiseModel::depolarizing(0.12).unwrap();
        let rows = convergence_study(&code, &m, &[4, 8], 200, 2).unwrap();
        assert_eq!(rows[1].shifted, 0.0);
        assert!(rows[1].converged);
        let bf = BruteForceDecoder::new(&code, &m).unwrap();
        let want = estimate_failure_rate(&code, &bf, &m, 200, 2).unwrap();
        for r in &rows {
            assert_eq!(r.estimate.tally.failures, want.tally.failures);
        }
        assert!(convergence_study(&code, &m, &[4], 10, 2).is_err());
    }

    #[test]
    fn csv_round_trip_and_header_only() {
        let code = StabilizerCode::rotated(3, 3).unwrap();
        let m = BiasedNoiseModel::pure_y(0.1).unwrap();
        let est = Tally {
            trials: 10,
            failures: 1,
            decoder_errors: 0,
        }
        .estimate();
        let row = RateRow::new(&code, &m, DecoderKind::ExactY, None, 7, &est);
        let mut buf = Vec::new();
        write_csv(
            &mut buf,
            &[("seed".into(), "7".into())],
            std::slice::from_ref(&row),
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "# seed: 7\nlayout,j,k,eta,p,decoder,chi,trials,failures,rate,stderr,seed\n"
        ));
        assert!(text.contains("rotated,3,3,inf,0.1,exact-y,,10,1,0.1,"));
        assert_eq!(read_csv(&text).unwrap(), vec![row]);
        let mut buf = Vec::new();
        write_csv(&mut buf, &[], &[]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            RATE_COLUMNS.join(",") + "\n"
        );
    }

    #[test]
    fn decay_fit_on_exact_exponential() {
        let pts: Vec<(f64, f64)> = [3.0f64, 5.0, 7.0]
            .iter()
            .map(|&d| (d, 0.5 * (-0.7 * d).exp()))
            .collect();
        let f = fit_decay(&pts).unwrap();
        assert!((f.slope + 0.7).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(fit_decay(&[(1.0, 0.0), (2.0, 0.1)]).is_err());
    }

    fn synthetic(pc: f64, nu: f64, coef: [f64; 3]) -> Vec<ThresholdPoint> {
        let mut v = Vec::new();
        for d in [5usize, 7, 9, 11] {
            for i in 0..7 {
                let p = 0.16 + 0.01 * i as f64;
                let x = (p - pc) * (d as f64).powf(1.0 / nu);
                v.push(ThresholdPoint {
                    distance: d,
                    p,
                    rate: coef[0] + coef[1] * x + coef[2] * x * x,
                    stderr: 0.01,
                    trials: 1000,
                });
            }
        }
        v
    }

    #[test]
    fn threshold_fit_recovers_synthetic_parameters() {
        let (pc, nu, coef) = (0.189, 1.3, [0.2, 0.9, 0.6]);
        let fit = fit_threshold(&synthetic(pc, nu, coef), 1.0, 0.18).unwrap();
        assert!(((fit.p_c - pc) / pc).abs() < 1e-6, "{fit:?}");
        assert!(((fit.nu - nu) / nu).abs() < 1e-6, "{fit:?}");
        for (a, b) in fit.coefficients.iter().zip(coef) {
            assert!(((a - b) / b).abs() < 1e-6, "{fit:?}");
        }
        assert_eq!(fit.jackknife.len(), 4);
        assert!(fit.p_c_stderr < 1e-6);
    }

    #[test]
    fn threshold_fit_rejects_bad_input() {
        let data = synthetic(0.189, 1.3, [0.2, 0.9, 0.6]);
        let two: Vec<_> = data.iter().copied().filter(|p| p.distance <= 7).collect();
        assert!(matches!(fit_threshold(&two, 1.0, 0.18), Err(Error::Fit(_))));
        // every point below the crossing
        let below = synthetic(0.5, 1.3, [0.2, 0.9, 0.6]);
        assert!(matches!(
            fit_threshold(&below, 1.0, 0.18),
            Err(Error::Fit(_))
        ));
        let sparse: Vec<_> = data.iter().copied().filter(|p| p.p < 0.175).collect();
        assert!(matches!(
            fit_threshold(&sparse, 1.0, 0.18),
            Err(Error::Fit(_))
        ));
    }

    #[test]
    fn wilson_floor_applies_to_extreme_rates() {
        let pt = ThresholdPoint {
            distance: 5,
            p: 0.1,
            rate: 0.0,
            stderr: 0.0,
            trials: 100,
        };
        let s = effective_stderr(&pt);
        assert!(s > 0.0 && s < 0.01);
    }
}
