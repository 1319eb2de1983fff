//! Time-varying product kernels on `[0,1]^d`, sampled by inverse Rosenblatt transform.

pub mod asa;
mod conditions;
mod schedule;
pub mod student;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{next_boundary, RetainedDigits};

pub use conditions::{check_conditions, CheckOptions, ConditionId, ConditionReport, ConditionsReport, Mode, Verdict};
pub use schedule::{ScaleSchedule, SIGMA_FLOOR};
pub use student::Dof;
pub use crate::asymptotics::Limit;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum KernelFamily {
    StudentT { dof: Dof },
    Asa,
}

impl KernelFamily {
    pub const CAUCHY: KernelFamily = KernelFamily::StudentT { dof: Dof::Finite(1) };

    pub fn inv_cdf(self, x: f64, sigma: f64, u: f64) -> f64 {
        match self {
            KernelFamily::StudentT { dof } => student::inv_cdf(x, dof, sigma, u),
            KernelFamily::Asa => asa::inv_cdf(x, sigma, u),
        }
    }

    pub fn cdf(self, y: f64, x: f64, sigma: f64) -> f64 {
        match self {
            KernelFamily::StudentT { dof } => student::cdf(y, x, dof, sigma),
            KernelFamily::Asa => asa::cdf(y, x, sigma),
        }
    }

    pub fn density(self, y: f64, x: f64, sigma: f64) -> f64 {
        match self {
            KernelFamily::StudentT { dof } => student::density(y, x, dof, sigma),
            KernelFamily::Asa => asa::density(y, x, sigma),
        }
    }

    pub fn lower_bound(self, sigma: f64) -> f64 {
        match self {
            KernelFamily::StudentT { dof } => student::lower_bound(dof, sigma),
            KernelFamily::Asa => asa::lower_bound(sigma),
        }
    }

    pub fn normalizer_floor(self, sigma: f64) -> f64 {
        match self {
            KernelFamily::StudentT { dof } => student::normalizer_floor(dof, sigma),
            KernelFamily::Asa => asa::normalizer_floor(sigma),
        }
    }

    pub fn separated_upper_bound(self, sigma: f64, delta0: f64, p_floor: f64) -> f64 {
        match self {
            KernelFamily::StudentT { dof } => student::separated_upper_bound(dof, sigma, delta0, p_floor),
            KernelFamily::Asa => asa::separated_upper_bound(sigma, delta0, p_floor),
        }
    }

    /// Explicit Lipschitz constant of the CDF between separated balls, where one is known.
    pub fn lipschitz(self, sigma: f64, p_floor: f64) -> Option<f64> {
        match self {
            KernelFamily::StudentT { dof } if dof.is_cauchy() => Some(student::cauchy_lipschitz(sigma, p_floor)),
            KernelFamily::StudentT { .. } => None,
            KernelFamily::Asa => Some(asa::lipschitz(sigma, p_floor)),
        }
    }
}

impl std::fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelFamily::StudentT { dof } if dof.is_cauchy() => f.write_str("cauchy"),
            KernelFamily::StudentT { dof } => write!(f, "student-t(nu={dof})"),
            KernelFamily::Asa => f.write_str("asa"),
        }
    }
}

/// When the kernel may change.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adaptation {
    EveryStep,
    /// Constant on each block `(k_{R,m-1}, k_{R,m}]` of the driver's boundary grid.
    Blocks { base: u32, dim: usize, retained: RetainedDigits, t: u32 },
}

/// Kernel index in force at step `n >= 1`.
///
/// In block mode this is the right endpoint of the block containing `n`, the
/// smallest boundary `>= n`. With `R = inf` the boundaries are the powers of `b`.
pub fn effective_index(n: u64, adaptation: &Adaptation) -> u64 {
    match *adaptation {
        Adaptation::EveryStep => n,
        _ if n <= 1 => 1,
        Adaptation::Blocks { base, dim, retained, t } => next_boundary(n - 1, base, dim, retained, t),
    }
}

/// A product kernel: one scale schedule per coordinate, a shared family, and
/// an adaptation rule.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    family: KernelFamily,
    schedules: Vec<ScaleSchedule>,
    adaptation: Adaptation,
}

impl KernelSpec {
    pub fn new(family: KernelFamily, schedules: Vec<ScaleSchedule>, adaptation: Adaptation) -> Result<Self> {
        if schedules.is_empty() {
            return Err(Error::InvalidParameter("kernel needs at least one coordinate".into()));
        }
        if let KernelFamily::StudentT { dof: Dof::Finite(0) } = family {
            return Err(Error::InvalidParameter("degrees of freedom must be at least 1".into()));
        }
        for s in &schedules {
            s.validate()?;
        }
        if let Adaptation::Blocks { base, dim, .. } = adaptation {
            if base < 2 {
                return Err(Error::InvalidParameter(format!("block base {base} < 2")));
            }
            if dim != schedules.len() {
                return Err(Error::InvalidParameter(format!(
                    "block rule is for dimension {dim}, kernel has {}",
                    schedules.len()
                )));
            }
        }
        Ok(KernelSpec { family, schedules, adaptation })
    }

    /// The same schedule on every coordinate.
    pub fn isotropic(family: KernelFamily, schedule: ScaleSchedule, dim: usize, adaptation: Adaptation) -> Result<Self> {
        Self::new(family, vec![schedule; dim], adaptation)
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn schedules(&self) -> &[ScaleSchedule] {
        &self.schedules
    }

    pub fn adaptation(&self) -> &Adaptation {
        &self.adaptation
    }

    pub fn dim(&self) -> usize {
        self.schedules.len()
    }

    pub fn effective_index(&self, n: u64) -> u64 {
        effective_index(n, &self.adaptation)
    }

    /// `sigma_{k,i}` at the raw kernel index `k` (no block rule applied).
    pub fn sigma_at_index(&self, k: u64, i: usize) -> f64 {
        self.schedules[i].sigma_at(k)
    }

    /// Smallest coordinate scale at the raw kernel index `k`.
    pub fn sigma_min_at_index(&self, k: u64) -> f64 {
        (0..self.dim()).map(|i| self.sigma_at_index(k, i)).fold(f64::INFINITY, f64::min)
    }

    /// Smallest coordinate scale in force at step `n`.
    pub fn sigma_min(&self, n: u64) -> f64 {
        self.sigma_min_at_index(self.effective_index(n))
    }

    /// Proposal for the current point `x` from uniforms `u`, at step `n`.
    pub fn inv_rosenblatt_into(&self, n: u64, x: &[f64], u: &[f64], out: &mut [f64]) {
        let k = self.effective_index(n);
        for (i, ((o, &xi), &ui)) in out.iter_mut().zip(x).zip(u).enumerate() {
            *o = self.family.inv_cdf(xi, self.sigma_at_index(k, i), ui);
        }
    }

    pub fn inv_rosenblatt(&self, n: u64, x: &[f64], u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.inv_rosenblatt_into(n, x, u, &mut out);
        out
    }

    /// Coordinate-wise CDF of `y` given `x`, at step `n`.
    pub fn rosenblatt(&self, n: u64, x: &[f64], y: &[f64]) -> Vec<f64> {
        let k = self.effective_index(n);
        (0..self.dim()).map(|i| self.family.cdf(y[i], x[i], self.sigma_at_index(k, i))).collect()
    }

    /// Product density of `y` given `x`, at step `n`.
    pub fn density(&self, n: u64, x: &[f64], y: &[f64]) -> f64 {
        let k = self.effective_index(n);
        (0..self.dim()).map(|i| self.family.density(y[i], x[i], self.sigma_at_index(k, i))).product()
    }

    /// Lower bound on every coordinate's conditional density at the raw index `k`.
    pub fn tilde_k_lower_at_index(&self, k: u64) -> f64 {
        (0..self.dim())
            .map(|i| self.family.lower_bound(self.sigma_at_index(k, i)))
            .fold(f64::INFINITY, f64::min)
    }

    /// Lower bound on every coordinate's conditional density at step `n`.
    pub fn tilde_k_lower(&self, n: u64) -> f64 {
        self.tilde_k_lower_at_index(self.effective_index(n))
    }

    /// Smallest untruncated mass of `[0,1]` over centres and coordinates, at the initial scales.
    pub fn normalizer_floor(&self) -> f64 {
        (0..self.dim())
            .map(|i| self.family.normalizer_floor(self.sigma_at_index(1, i)))
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest per-coordinate Lipschitz constant at step `n`, given the normalizer floor.
    pub fn lipschitz(&self, n: u64, p_floor: f64) -> Option<f64> {
        let k = self.effective_index(n);
        (0..self.dim())
            .map(|i| self.family.lipschitz(self.sigma_at_index(k, i), p_floor))
            .try_fold(0.0f64, |acc, c| c.map(|c| acc.max(c)))
    }

    /// Largest per-coordinate density bound at distance `delta0` from the centre, at the raw index `k`.
    pub fn separated_upper_bound_at_index(&self, k: u64, delta0: f64, p_floor: f64) -> f64 {
        (0..self.dim())
            .map(|i| self.family.separated_upper_bound(self.sigma_at_index(k, i), delta0, p_floor))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::krm_boundaries;

    fn blocks(r: u32) -> Adaptation {
        Adaptation::Blocks { base: 2, dim: 1, retained: RetainedDigits::Finite(r), t: 0 }
    }

    #[test]
    fn effective_index_examples() {
        assert_eq!(effective_index(7, &blocks(0)), 7);
        assert_eq!(effective_index(3, &blocks(1)), 4);
        assert_eq!(effective_index(9, &Adaptation::EveryStep), 9);
        for b in [1u64, 2, 4, 6, 8] {
            assert_eq!(effective_index(b, &blocks(1)), b);
        }
        let inf = Adaptation::Blocks { base: 2, dim: 1, retained: RetainedDigits::All, t: 0 };
        assert_eq!((1..=9).map(|n| effective_index(n, &inf)).collect::<Vec<_>>(), vec![1, 2, 4, 4, 8, 8, 8, 8, 16]);
    }

    #[test]
    fn effective_index_is_constant_on_blocks() {
        for (b, d, r, t) in [(2u32, 1usize, 1u32, 0u32), (2, 2, 1, 1), (3, 1, 2, 0), (2, 3, 2, 2)] {
            let a = Adaptation::Blocks { base: b, dim: d, retained: RetainedDigits::Finite(r), t };
            let bounds = krm_boundaries(b, d, RetainedDigits::Finite(r), t, 5000);
            for w in bounds.windows(2) {
                for n in w[0] + 1..=w[1] {
                    assert_eq!(effective_index(n, &a), w[1]);
                }
            }
        }
    }

    #[test]
    fn symmetric_centre_maps_to_itself() {
        let s = ScaleSchedule::power(1.0, 0.5).unwrap();
        let k = KernelSpec::isotropic(KernelFamily::CAUCHY, s, 2, Adaptation::EveryStep).unwrap();
        assert_eq!(k.inv_rosenblatt(5, &[0.5, 0.5], &[0.5, 0.5]), vec![0.5, 0.5]);
    }

    #[test]
    fn product_structure() {
        let s = ScaleSchedule::power(0.5, 0.5).unwrap();
        for family in [KernelFamily::CAUCHY, KernelFamily::Asa, KernelFamily::StudentT { dof: Dof::Infinite }] {
            let k2 = KernelSpec::isotropic(family, s.clone(), 2, Adaptation::EveryStep).unwrap();
            let k1 = KernelSpec::isotropic(family, s.clone(), 1, Adaptation::EveryStep).unwrap();
            let (x, y) = ([0.2, 0.9], [0.6, 0.1]);
            let prod = k1.density(3, &x[..1], &y[..1]) * k1.density(3, &x[1..], &y[1..]);
            assert!((k2.density(3, &x, &y) - prod).abs() < 1e-14);
            let a = k2.inv_rosenblatt(3, &x, &[0.3, 0.8]);
            let b = k2.inv_rosenblatt(3, &x, &[0.3, 0.1]);
            assert_eq!(a[0], b[0]);
            assert!(a[1] > b[1]);
        }
    }

    #[test]
    fn rejects_mismatched_configs() {
        let s = ScaleSchedule::constant(1.0).unwrap();
        assert!(KernelSpec::new(KernelFamily::Asa, vec![], Adaptation::EveryStep).is_err());
        assert!(KernelSpec::isotropic(KernelFamily::Asa, s.clone(), 2, blocks(1)).is_err());
        assert!(KernelSpec::isotropic(KernelFamily::StudentT { dof: Dof::Finite(0) }, s, 1, blocks(1)).is_err());
    }

    #[test]
    fn family_serde() {
        let f: KernelFamily = serde_json::from_str(r#"{"family":"student-t","dof":"inf"}"#).unwrap();
        assert_eq!(f, KernelFamily::StudentT { dof: Dof::Infinite });
        let f: KernelFamily = serde_json::from_str(r#"{"family":"asa"}"#).unwrap();
        assert_eq!(f, KernelFamily::Asa);
        assert!(serde_json::from_str::<KernelFamily>(r#"{"family":"student-t","dof":0}"#).is_err());
    }
}
