//! Biased single-qubit Pauli channel, error sampling, and the hashing bound.
//!
//! Per-trial randomness comes from ChaCha8 streams: the master seed keys the
//! generator and the trial index selects the stream, so any trial can be
//! regenerated on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{Pauli, PauliOperator};
use crate::gf2::BitVec;
use crate::{Error, Result};

/// Independent Pauli noise with total rate `p` and bias
/// `eta = p_Y / (p_X + p_Z)`, `p_X = p_Z`. `eta = +inf` is pure Y noise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasedNoiseModel {
    p: f64,
    #[serde(with = "eta_serde")]
    eta: f64,
}

impl BiasedNoiseModel {
    pub fn new(p: f64, eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidArgument(format!(
                "p must lie in [0, 1] (got {p})"
            )));
        }
        if eta.is_nan() || eta <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "eta must be positive (got {eta})"
            )));
        }
        Ok(BiasedNoiseModel { p, eta })
    }

    pub fn pure_y(p: f64) -> Result<Self> {
        Self::new(p, f64::INFINITY)
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(p, 0.5)
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn is_pure_y(&self) -> bool {
        self.eta.is_infinite()
    }

    /// `(p_I, p_X, p_Y, p_Z)`.
    pub fn probs(&self) -> [f64; 4] {
        let (px, py) = if self.eta.is_infinite() {
            (0.0, self.p)
        } else {
            (
                self.p / (2.0 * (1.0 + self.eta)),
                self.p * self.eta / (1.0 + self.eta),
            )
        };
        [1.0 - self.p, px, py, px]
    }

    pub fn prob(&self, pauli: Pauli) -> f64 {
        self.probs()[pauli.index()]
    }

    /// Natural logs of [`Self::probs`]; zero probabilities map to `-inf`.
    pub fn log_probs(&self) -> [f64; 4] {
        self.probs().map(f64::ln)
    }

    /// One Pauli per qubit, i.i.d. from the channel.
    pub fn sample_error<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> PauliOperator {
        let [_, px, py, _] = self.probs();
        let (t_x, t_y, t_z) = (px, px + py, self.p);
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for q in 0..n {
            let u: f64 = rng.gen();
            if u < t_x {
                x.set(q, true);
            } else if u < t_y {
                x.set(q, true);
                z.set(q, true);
            } else if u < t_z {
                z.set(q, true);
            }
        }
        PauliOperator::from_bits(x, z).expect("equal lengths")
    }

    /// Human-readable bias: a number or `inf`.
    pub fn eta_label(&self) -> String {
        format_eta(self.eta)
    }
}

/// Per-trial generator: ChaCha8 keyed by `seed`, stream `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Convenience wrapper over [`BiasedNoiseModel::sample_error`].
pub fn sample_error<R: Rng + ?Sized>(
    model: &BiasedNoiseModel,
    n: usize,
    rng: &mut R,
) -> PauliOperator {
    model.sample_error(n, rng)
}

pub fn format_eta(eta: f64) -> String {
    if eta.is_infinite() {
        "inf".to_string()
    } else {
        format!("{eta}")
    }
}

pub fn parse_eta(s: &str) -> Result<f64> {
    let t = s.trim();
    let eta = if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
        f64::INFINITY
    } else {
        t.parse::<f64>()
            .map_err(|_| Error::InvalidArgument(format!("bad eta {s:?}")))?
    };
    if eta.is_nan() || eta <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "eta must be positive (got {s})"
        )));
    }
    Ok(eta)
}

/// Serializes eta as a number, or the string `"inf"` for pure Y noise.
pub mod eta_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(eta: &f64, s: S) -> Result<S::Ok, S::Error> {
        if eta.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*eta)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(x),
            Raw::Str(s) => super::parse_eta(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// Shannon entropy in bits of the channel `(1-p, p_X, p_Y, p_Z)`.
pub fn channel_entropy(p: f64, eta: f64) -> f64 {
    let m = BiasedNoiseModel { p, eta };
    m.probs()
        .iter()
        .filter(|&&q| q > 0.0)
        .map(|&q| -q * q.log2())
        .sum()
}

/// Error rate at which the channel entropy reaches one bit.
///
/// Bisection to absolute tolerance 1e-6 on `[0, 1/2]`, where the entropy is
/// increasing in `p` for every bias and already at least one bit at `p = 1/2`.
pub fn hashing_bound(eta: f64) -> Result<f64> {
    if eta.is_nan() || eta <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "eta must be positive (got {eta})"
        )));
    }
    if eta.is_infinite() {
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if channel_entropy(mid, eta) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
