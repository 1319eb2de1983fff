//! Self-checks exposed through the `verify` subcommand.

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::annealer::{check_cooling, CoolingSchedule, CoolingValidity};
use crate::error::{Error, Result};
use crate::kernels::{
    check_conditions, Adaptation, CheckOptions, ConditionId, Dof, KernelFamily, KernelSpec, Mode, ScaleSchedule,
    Verdict,
};
use crate::sequences::{accept_floor_check, verify_net, DigitTable, NetParams, RetainedDigits};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Nets,
    Kernels,
    Conditions,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nets" => Ok(Suite::Nets),
            "kernels" => Ok(Suite::Kernels),
            "conditions" => Ok(Suite::Conditions),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite {other:?}; expected nets, kernels or conditions"
            ))),
        }
    }
}

/// One named check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), passed, detail: detail.into() });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Net property of the shipped table for `s = 1..=max_s` and `m = t..=max_m`,
/// on the first two blocks of `2^m` points, plus the acceptance-coordinate
/// lower bound over `floor_horizon` indices.
pub fn verify_nets(max_s: usize, max_m: u32, floor_horizon: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for s in 1..=max_s {
        let table = DigitTable::sobol_dims(s)?;
        let t = table.declared_t();
        for m in t..=max_m {
            let size = 1u64 << m;
            for block in 0..2u64 {
                let pts = (block * size..(block + 1) * size).map(|n| table.ts_point(n)).collect::<Result<Vec<_>>>()?;
                let verdict = verify_net(&pts, &NetParams::new(2, t, m, s)?)?;
                let detail = if verdict.is_pass() { String::new() } else { format!("{verdict:?}") };
                report.push(format!("net s={s} t={t} m={m} block={block}"), verdict.is_pass(), detail);
            }
        }
    }
    let out = accept_floor_check(2, RetainedDigits::All, floor_horizon, 1.0, 0);
    report.push(
        format!("acceptance-lower-bound R=inf horizon={floor_horizon}"),
        out.passed,
        format!("violations={}", out.violations),
    );
    Ok(report)
}

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

const FAMILIES: [KernelFamily; 4] = [
    KernelFamily::CAUCHY,
    KernelFamily::Asa,
    KernelFamily::StudentT { dof: Dof::Finite(3) },
    KernelFamily::StudentT { dof: Dof::Infinite },
];

fn round_trip_tolerance(family: KernelFamily) -> f64 {
    match family {
        KernelFamily::StudentT { dof } if !dof.is_cauchy() => 1e-8,
        _ => 1e-9,
    }
}

/// Round trip, lower bound, monotonicity and Lipschitz checks of the proposal kernels.
pub fn verify_kernels(grid: usize, lipschitz_samples: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let nodes = |k: usize| k as f64 / (grid - 1) as f64;
    for family in FAMILIES {
        for sigma in [1e-3, 1e-1, 1.0] {
            let mut worst: f64 = 0.0;
            let mut monotone = true;
            for i in 0..grid {
                let x = nodes(i);
                let mut prev = f64::NEG_INFINITY;
                for j in 0..grid {
                    let u = nodes(j);
                    let y = family.inv_cdf(x, sigma, u);
                    worst = worst.max((family.cdf(y, x, sigma) - u).abs());
                    monotone &= y >= prev;
                    prev = y;
                }
            }
            let tol = round_trip_tolerance(family);
            report.push(format!("round-trip {family} sigma={sigma:e}"), worst <= tol, format!("max_err={worst:.3e} tol={tol:e}"));
            report.push(format!("monotone-inverse {family} sigma={sigma:e}"), monotone, "");
        }
    }

    let schedule = ScaleSchedule::power(1.0, 0.5)?;
    for family in FAMILIES {
        let kernel = KernelSpec::isotropic(family, schedule.clone(), 1, Adaptation::EveryStep)?;
        for n in [1u64, 10, 1_000] {
            let bound = kernel.tilde_k_lower(n);
            let mut min = f64::INFINITY;
            for i in 0..grid {
                for j in 0..grid {
                    min = min.min(kernel.density(n, &[nodes(i)], &[nodes(j)]));
                }
            }
            report.push(
                format!("density-lower-bound {family} n={n}"),
                min >= bound - 1e-9,
                format!("grid_min={min:.6e} bound={bound:.6e}"),
            );
        }
    }

    let (delta0, delta) = (0.2, 0.05);
    for family in [KernelFamily::CAUCHY, KernelFamily::Asa] {
        let kernel = KernelSpec::isotropic(family, schedule.clone(), 1, Adaptation::EveryStep)?;
        let p_floor = kernel.normalizer_floor();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1u64, 10, 1_000] {
            let c_n = kernel.lipschitz(n, p_floor).expect("explicit constant");
            let violations = lipschitz_violations(&kernel, n, delta0, delta, delta * c_n, lipschitz_samples, &mut rng);
            report.push(
                format!("lipschitz {family} n={n}"),
                violations == 0,
                format!("violations={violations}/{lipschitz_samples} C_n={c_n:.6e}"),
            );
        }
    }
    Ok(report)
}

/// Samples centres `x~`, `x'` whose `2 delta0`-balls do not overlap, points
/// `x`, `y` within `delta` of them, and counts `|F(x,y) - F(x~,x')| > bound`.
pub fn lipschitz_violations(
    kernel: &KernelSpec,
    n: u64,
    delta0: f64,
    delta: f64,
    bound: f64,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> usize {
    let gap = 4.0 * delta0;
    let mut violations = 0;
    for _ in 0..samples {
        let lo = unit(rng) * (1.0 - gap);
        let hi = lo + gap + unit(rng) * (1.0 - gap - lo);
        let (xt, xp) = if rng.next_u32() & 1 == 0 { (lo, hi) } else { (hi, lo) };
        let jitter = |c: f64, r: &mut ChaCha8Rng| (c + delta * (2.0 * unit(r) - 1.0)).clamp(0.0, 1.0);
        let x = jitter(xt, rng);
        let y = jitter(xp, rng);
        let a = kernel.rosenblatt(n, &[x], &[y])[0];
        let b = kernel.rosenblatt(n, &[xt], &[xp])[0];
        if (a - b).abs() > bound {
            violations += 1;
        }
    }
    violations
}

/// A kernel/cooling pair with the verdict the checker must return.
struct Case {
    name: &'static str,
    family: KernelFamily,
    schedule: ScaleSchedule,
    mode: Mode,
    id: ConditionId,
    expected: Verdict,
}

fn catalogue() -> Result<Vec<Case>> {
    Ok(vec![
        Case {
            name: "cauchy d=1 sigma=n^-1",
            family: KernelFamily::CAUCHY,
            schedule: ScaleSchedule::power(1.0, 1.0)?,
            mode: Mode::Thm2,
            id: ConditionId::CondRate1,
            expected: Verdict::Pass,
        },
        Case {
            name: "cauchy d=1 sigma=n^-2",
            family: KernelFamily::CAUCHY,
            schedule: ScaleSchedule::power(1.0, 2.0)?,
            mode: Mode::Thm2,
            id: ConditionId::CondRate1,
            expected: Verdict::Fail,
        },
        Case {
            name: "asa d=1 sigma=exp(-n)",
            family: KernelFamily::Asa,
            schedule: ScaleSchedule::exp_power(1.0, 1.0, 1)?,
            mode: Mode::Thm2,
            id: ConditionId::CondRateAsa,
            expected: Verdict::Pass,
        },
        Case {
            name: "cauchy d=1 sigma=n^-1/2",
            family: KernelFamily::CAUCHY,
            schedule: ScaleSchedule::power(1.0, 0.5)?,
            mode: Mode::Thm1,
            id: ConditionId::Thm1Divergence,
            expected: Verdict::Pass,
        },
    ])
}

/// Checker verdicts on a fixed catalogue plus the cooling rule on a grid.
pub fn verify_conditions_catalogue() -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let cooling = CoolingSchedule::power(1.0, 2.0)?;
    for case in catalogue()? {
        let kernel = KernelSpec::isotropic(case.family, case.schedule.clone(), 1, Adaptation::EveryStep)?;
        let r = check_conditions(&kernel, &cooling, &CheckOptions { mode: case.mode, ..CheckOptions::default() });
        let got = r.get(case.id).map(|c| c.verdict);
        report.push(
            format!("{} {} {}", case.id.as_str(), case.mode, case.name),
            got == Some(case.expected),
            format!("expected={} got={}", case.expected.as_str(), got.map_or("missing", |v| v.as_str())),
        );
    }
    for (schedule, valid) in [
        (CoolingSchedule::power(1.0, 2.0)?, true),
        (CoolingSchedule::power(1.0, 1.0)?, false),
        (CoolingSchedule::power_log(1.0, 3.0)?, true),
        (CoolingSchedule::power_log(1.0, 2.0)?, false),
    ] {
        let got = check_cooling(&schedule) == CoolingValidity::Valid;
        report.push(
            format!("cooling {schedule}"),
            got == valid,
            format!("expected={} got={}", validity(valid), validity(got)),
        );
    }
    Ok(report)
}

fn validity(v: bool) -> &'static str {
    if v {
        "valid"
    } else {
        "invalid"
    }
}

/// Every condition the checker evaluates for one configuration; passes iff all do.
pub fn verify_conditions_for(kernel: &KernelSpec, cooling: &CoolingSchedule, opts: &CheckOptions) -> VerifyReport {
    let r = check_conditions(kernel, cooling, opts);
    let mut report = VerifyReport::default();
    for c in &r.conditions {
        let mut detail = format!("verdict={}", c.verdict.as_str());
        if let Some(l) = c.limit {
            detail.push_str(&format!(" limit={}", l.label()));
        }
        if let Some(note) = &c.note {
            detail.push_str(&format!(" note={note:?}"));
        }
        report.push(format!("{} {}", c.id.as_str(), r.mode), c.verdict == Verdict::Pass, detail);
    }
    for note in &r.notes {
        report.push("note", true, note.clone());
    }
    report
}

/// Mode matching the driver's retained digits.
pub fn mode_for(retained: RetainedDigits) -> Mode {
    match retained {
        RetainedDigits::Finite(0) => Mode::Thm1,
        RetainedDigits::Finite(_) => Mode::Thm2,
        RetainedDigits::All => Mode::Thm3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse() {
        assert_eq!("nets".parse::<Suite>().unwrap(), Suite::Nets);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_net_suite_passes() {
        let r = verify_nets(2, 5, 1_000).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.lines.len() > 5);
    }

    #[test]
    fn condition_catalogue_passes() {
        let r = verify_conditions_catalogue().unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn failing_configuration_is_reported() {
        let k = KernelSpec::isotropic(KernelFamily::CAUCHY, ScaleSchedule::power(1.0, 2.0).unwrap(), 1, Adaptation::EveryStep)
            .unwrap();
        let cool = CoolingSchedule::power(1.0, 2.0).unwrap();
        let r = verify_conditions_for(&k, &cool, &CheckOptions { mode: Mode::Thm2, ..CheckOptions::default() });
        assert!(!r.passed());
        assert!(r.to_string().contains("FAIL condRate1"), "{r}");
    }

    #[test]
    fn small_kernel_suite_passes() {
        let r = verify_kernels(21, 100).unwrap();
        assert!(r.passed(), "{r}");
    }
}
