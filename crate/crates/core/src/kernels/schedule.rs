use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scales never drop below this value.
pub const SIGMA_FLOOR: f64 = 1e-12;

/// A non-increasing, strictly positive scale sequence `sigma_n`, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScaleSchedule {
    /// `sigma0 * n^-beta`.
    Power { sigma0: f64, beta: f64 },
    /// `sigma0 * n^-beta * log(n + e)^gamma`.
    PowerLog { sigma0: f64, beta: f64, gamma: f64 },
    /// `sigma0 * exp(-rate * n^(1/root))`.
    ExpPower { sigma0: f64, rate: f64, root: u32 },
    /// Explicit values for `n = 1, 2, ...`; the last value repeats.
    Tabulated { values: Vec<f64> },
}

impl ScaleSchedule {
    pub fn constant(sigma0: f64) -> Result<Self> {
        Self::power(sigma0, 0.0)
    }

    pub fn power(sigma0: f64, beta: f64) -> Result<Self> {
        let s = ScaleSchedule::Power { sigma0, beta };
        s.validate()?;
        Ok(s)
    }

    pub fn power_log(sigma0: f64, beta: f64, gamma: f64) -> Result<Self> {
        let s = ScaleSchedule::PowerLog { sigma0, beta, gamma };
        s.validate()?;
        Ok(s)
    }

    pub fn exp_power(sigma0: f64, rate: f64, root: u32) -> Result<Self> {
        let s = ScaleSchedule::ExpPower { sigma0, rate, root };
        s.validate()?;
        Ok(s)
    }

    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        let s = ScaleSchedule::Tabulated { values };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        let positive = |name: &str, v: f64| -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                bad(format!("{name} must be positive and finite, got {v}"))
            }
        };
        match *self {
            ScaleSchedule::Power { sigma0, beta } => {
                positive("sigma0", sigma0)?;
                if !(beta.is_finite() && beta >= 0.0) {
                    return bad(format!("beta must be non-negative, got {beta}"));
                }
            }
            ScaleSchedule::PowerLog { sigma0, beta, gamma } => {
                positive("sigma0", sigma0)?;
                if !(beta.is_finite() && beta >= 0.0 && gamma.is_finite()) {
                    return bad(format!("invalid power-log exponents beta={beta}, gamma={gamma}"));
                }
                // d/dn log sigma = -beta/n + gamma/((n+e) log(n+e)) <= 0 for all n >= 1
                // iff gamma <= beta * min_n (1 + e/n) log(n+e), and that minimum exceeds 3.
                if gamma > 3.0 * beta {
                    return bad(format!("power-log schedule with gamma={gamma} > 3*beta is not non-increasing"));
                }
            }
            ScaleSchedule::ExpPower { sigma0, rate, root } => {
                positive("sigma0", sigma0)?;
                positive("rate", rate)?;
                if root == 0 {
                    return bad("exp-power root must be at least 1".into());
                }
            }
            ScaleSchedule::Tabulated { ref values } => {
                if values.is_empty() {
                    return bad("tabulated schedule needs at least one value".into());
                }
                for &v in values {
                    positive("tabulated scale", v)?;
                }
                if values.windows(2).any(|w| w[1] > w[0]) {
                    return bad("tabulated schedule must be non-increasing".into());
                }
            }
        }
        Ok(())
    }

    pub fn is_parametric(&self) -> bool {
        !matches!(self, ScaleSchedule::Tabulated { .. })
    }

    /// The family formula without the floor.
    pub fn raw_at(&self, n: u64) -> f64 {
        let nf = n.max(1) as f64;
        match *self {
            ScaleSchedule::Power { sigma0, beta } => sigma0 * nf.powf(-beta),
            ScaleSchedule::PowerLog { sigma0, beta, gamma } => {
                sigma0 * nf.powf(-beta) * (nf + std::f64::consts::E).ln().powf(gamma)
            }
            ScaleSchedule::ExpPower { sigma0, rate, root } => sigma0 * (-rate * nf.powf(1.0 / root as f64)).exp(),
            ScaleSchedule::Tabulated { ref values } => values[(n.max(1) as usize - 1).min(values.len() - 1)],
        }
    }

    /// `sigma_n`, clamped at [`SIGMA_FLOOR`].
    pub fn sigma_at(&self, n: u64) -> f64 {
        self.raw_at(n).max(SIGMA_FLOOR)
    }

    /// First `n <= horizon` at which the floor binds, if any.
    pub fn floor_binds_from(&self, horizon: u64) -> Option<u64> {
        if horizon == 0 || self.raw_at(horizon) >= SIGMA_FLOOR {
            return None;
        }
        // raw_at is non-increasing: bisect for the first index below the floor.
        let (mut lo, mut hi) = (0u64, horizon);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.raw_at(mid) < SIGMA_FLOOR {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_values() {
        assert_eq!(ScaleSchedule::constant(1.0).unwrap().sigma_at(1_000_000), 1.0);
        assert_eq!(ScaleSchedule::power(1.0, 0.5).unwrap().sigma_at(4), 0.5);
        let e = ScaleSchedule::exp_power(1.0, 1.0, 1).unwrap().sigma_at(4);
        assert!((e - 0.018_315_638_888_734_18).abs() < 1e-15);
        let pl = ScaleSchedule::power_log(2.0, 1.0, 1.0).unwrap().sigma_at(10);
        assert!((pl - 0.2 * (10.0 + std::f64::consts::E).ln()).abs() < 1e-15);
    }

    #[test]
    fn floor_and_its_onset() {
        let s = ScaleSchedule::power(1.0, 2.0).unwrap();
        assert_eq!(s.sigma_at(10_000_000), SIGMA_FLOOR);
        // n^-2 < 1e-12  <=>  n > 1e6
        assert_eq!(s.floor_binds_from(10_000_000), Some(1_000_001));
        assert_eq!(s.floor_binds_from(1_000_000), None);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(ScaleSchedule::power(0.0, 1.0).is_err());
        assert!(ScaleSchedule::power(1.0, -0.1).is_err());
        assert!(ScaleSchedule::power_log(1.0, 0.5, 1.5).is_ok());
        assert!(ScaleSchedule::power_log(1.0, 0.5, 2.0).is_err());
        assert!(ScaleSchedule::power_log(1.0, 0.5, 1.4).is_ok());
        assert!(ScaleSchedule::power_log(1.0, 0.1, 1.0).is_err());
        assert!(ScaleSchedule::exp_power(1.0, 0.0, 1).is_err());
        assert!(ScaleSchedule::tabulated(vec![1.0, 2.0]).is_err());
        assert!(ScaleSchedule::tabulated(vec![]).is_err());
    }

    #[test]
    fn power_log_with_maximal_gamma_is_non_increasing() {
        let s = ScaleSchedule::power_log(1.0, 1.0, 3.0).unwrap();
        for n in 1..100_000u64 {
            assert!(s.raw_at(n + 1) <= s.raw_at(n), "n={n}");
        }
    }

    #[test]
    fn tabulated_repeats_last_value() {
        let s = ScaleSchedule::tabulated(vec![1.0, 0.5]).unwrap();
        assert_eq!([s.sigma_at(1), s.sigma_at(2), s.sigma_at(9)], [1.0, 0.5, 0.5]);
    }

    #[test]
    fn serde_uses_family_tags() {
        let s: ScaleSchedule = serde_json::from_str(r#"{"family":"power-log","sigma0":1,"beta":1,"gamma":0.5}"#).unwrap();
        assert_eq!(s, ScaleSchedule::PowerLog { sigma0: 1.0, beta: 1.0, gamma: 0.5 });
    }
}
