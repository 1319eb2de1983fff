use serde::{Deserialize, Serialize};

use crate::asymptotics::{Growth, LOG_LOG_N, LOG_N};
use crate::error::{Error, Result};

/// Temperature sequence `T_n`, `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CoolingSchedule {
    /// `t0 * n^-a`.
    Power { t0: f64, a: f64 },
    /// `t0 / (n * log(n + e)^c)`.
    PowerLog { t0: f64, c: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoolingValidity {
    /// `sum_n T_n log n < inf`.
    Valid,
    Invalid,
}

impl CoolingSchedule {
    pub fn power(t0: f64, a: f64) -> Result<Self> {
        let s = CoolingSchedule::Power { t0, a };
        s.validate()?;
        Ok(s)
    }

    pub fn power_log(t0: f64, c: f64) -> Result<Self> {
        let s = CoolingSchedule::PowerLog { t0, c };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let (t0, rate, name) = match *self {
            CoolingSchedule::Power { t0, a } => (t0, a, "a"),
            CoolingSchedule::PowerLog { t0, c } => (t0, c, "c"),
        };
        if !(t0.is_finite() && t0 > 0.0) {
            return Err(Error::InvalidParameter(format!("t0 must be positive and finite, got {t0}")));
        }
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {rate}")));
        }
        Ok(())
    }

    pub fn temperature(&self, n: f64) -> f64 {
        match *self {
            CoolingSchedule::Power { t0, a } => t0 * n.powf(-a),
            CoolingSchedule::PowerLog { t0, c } => t0 / (n * (n + std::f64::consts::E).ln().powf(c)),
        }
    }

    pub fn temperature_at(&self, n: u64) -> f64 {
        self.temperature(n as f64)
    }

    /// `log(T_n log n)` up to `o(1)`.
    pub(crate) fn summand_log_growth(&self) -> Growth {
        match *self {
            CoolingSchedule::Power { t0, a } => Growth::constant(t0.ln()).plus_term(LOG_N, -a).plus_term(LOG_LOG_N, 1.0),
            CoolingSchedule::PowerLog { t0, c } => {
                Growth::constant(t0.ln()).plus_term(LOG_N, -1.0).plus_term(LOG_LOG_N, 1.0 - c)
            }
        }
    }

    /// Whether `sum_n T_n log n` converges, decided from the closed form.
    pub fn check(&self) -> CoolingValidity {
        if self.summand_log_growth().exp_series_diverges() {
            CoolingValidity::Invalid
        } else {
            CoolingValidity::Valid
        }
    }

    /// `sum_{k <= n} T_k log k` at each of the ascending `checkpoints`.
    pub fn partial_sums(&self, checkpoints: &[u64]) -> Vec<(u64, f64)> {
        let mut out = Vec::with_capacity(checkpoints.len());
        let (mut acc, mut k) = (0.0, 1u64);
        for &n in checkpoints {
            while k <= n {
                acc += self.temperature_at(k) * (k as f64).ln();
                k += 1;
            }
            out.push((n, acc));
        }
        out
    }
}

pub fn check_cooling(schedule: &CoolingSchedule) -> CoolingValidity {
    schedule.check()
}

impl std::fmt::Display for CoolingSchedule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoolingSchedule::Power { t0, a } => write!(f, "power(t0={t0}, a={a})"),
            CoolingSchedule::PowerLog { t0, c } => write!(f, "power-log(t0={t0}, c={c})"),
        }
    }
}
