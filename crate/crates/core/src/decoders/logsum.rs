//! Log-domain probability accumulation.

use serde::{Deserialize, Serialize};

/// Accumulation mode for sums of exponentials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// Plain double-precision summation.
    #[default]
    Double,
    /// Neumaier-compensated summation, for long sums of tiny terms.
    Compensated,
}

/// `ln Σ exp(v_i)`; `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(values: &[f64], precision: Precision) -> f64 {
    let mut acc = LogAccumulator::new(precision);
    for &v in values {
        acc.add(v);
    }
    acc.value()
}

/// Streaming `ln Σ exp(v_i)` that rescales when a larger term arrives.
#[derive(Clone, Debug)]
pub struct LogAccumulator {
    precision: Precision,
    max: f64,
    sum: f64,
    comp: f64,
}

impl LogAccumulator {
    pub fn new(precision: Precision) -> Self {
        LogAccumulator {
            precision,
            max: f64::NEG_INFINITY,
            sum: 0.0,
            comp: 0.0,
        }
    }

    pub fn add(&mut self, v: f64) {
        if v == f64::NEG_INFINITY {
            return;
        }
        if v > self.max {
            let scale = (self.max - v).exp();
            self.sum *= scale;
            self.comp *= scale;
            self.max = v;
        }
        self.push((v - self.max).exp());
    }

    fn push(&mut self, x: f64) {
        match self.precision {
            Precision::Double => self.sum += x,
            Precision::Compensated => {
                let t = self.sum + x;
                if self.sum.abs() >= x.abs() {
                    self.comp += (self.sum - t) + x;
                } else {
                    self.comp += (x - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + (self.sum + self.comp).ln()
        }
    }
}
