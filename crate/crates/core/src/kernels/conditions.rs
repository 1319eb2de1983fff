//! Analytic checks of the kernel and cooling hypotheses behind the convergence results.
//!
//! Each check builds the log of its test sequence as a [`Growth`] from the
//! schedule's closed form and reads off the limit. Witness values at
//! `n = 10, 100, ...` are attached for inspection but never decide a verdict.

use std::cmp::Ordering;
use std::fmt;

use super::{Dof, KernelFamily, KernelSpec, ScaleSchedule, SIGMA_FLOOR};
use crate::annealer::{CoolingSchedule, CoolingValidity};
use crate::asymptotics::{Growth, Limit, Scale, LOG_LOG_N, LOG_N};
use crate::error::{Error, Result};

/// Which convergence result the configuration is meant to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Convergence under a diverging kernel lower bound.
    Thm1,
    /// Finite `R`: `n^{-1/d} / K~_n = O(1)`.
    Thm2,
    /// `R = inf`, `d = 1`: `o(1)` rates and the separated upper bound.
    Thm3,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "thm1" => Ok(Mode::Thm1),
            "thm2" => Ok(Mode::Thm2),
            "thm3" => Ok(Mode::Thm3),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}; expected thm1, thm2 or thm3"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Thm1 => "thm1",
            Mode::Thm2 => "thm2",
            Mode::Thm3 => "thm3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionId {
    Thm1LowerBound,
    Thm1Divergence,
    C5,
    C5Prime,
    C6,
    CondRate1,
    CondRateAsa,
    Cooling,
}

impl ConditionId {
    pub fn as_str(self) -> &'static str {
        match self {
            ConditionId::Thm1LowerBound => "Thm1-lower-bound",
            ConditionId::Thm1Divergence => "Thm1-divergence",
            ConditionId::C5 => "C5(K4)",
            ConditionId::C5Prime => "C5'(K4b)",
            ConditionId::C6 => "C6(K5)",
            ConditionId::CondRate1 => "condRate1",
            ConditionId::CondRateAsa => "condRateASA",
            ConditionId::Cooling => "cooling",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The algebra holds but the implication is only conjectured for this family.
    ConjecturedOnly,
    /// Non-parametric schedule: only sampled evidence is available.
    Undecidable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ConjecturedOnly => "CONJECTURED",
            Verdict::Undecidable => "UNDECIDABLE",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub id: ConditionId,
    pub verdict: Verdict,
    /// Limit of the test sequence, when it was decided analytically.
    pub limit: Option<Limit>,
    /// `(n, value)` samples of the test sequence (partial sums for series conditions).
    pub witnesses: Vec<(u64, f64)>,
    pub note: Option<String>,
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.verdict.as_str(), self.id)?;
        if let Some(l) = self.limit {
            write!(f, " [{}]", l.label())?;
        }
        let w: Vec<String> = self.witnesses.iter().map(|(n, v)| format!("n={n}:{v:.6e}")).collect();
        if !w.is_empty() {
            write!(f, " {}", w.join(" "))?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionsReport {
    pub mode: Mode,
    pub conditions: Vec<ConditionReport>,
    pub notes: Vec<String>,
}

impl ConditionsReport {
    /// No condition failed outright.
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn get(&self, id: ConditionId) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionReport> {
        self.conditions.iter().filter(|c| c.verdict == Verdict::Fail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    pub mode: Mode,
    /// Largest `n` sampled for witnesses.
    pub horizon: u64,
    /// Separation used by the upper-bound condition.
    pub delta0: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { mode: Mode::Thm1, horizon: 1_000_000, delta0: 0.2 }
    }
}

/// `-log sigma_n` up to `o(1)`.
fn neg_log_sigma(s: &ScaleSchedule) -> Option<Growth> {
    Some(match *s {
        ScaleSchedule::Power { sigma0, beta } => Growth::constant(-sigma0.ln()).plus_term(LOG_N, beta),
        ScaleSchedule::PowerLog { sigma0, beta, gamma } => {
            Growth::constant(-sigma0.ln()).plus_term(LOG_N, beta).plus_term(LOG_LOG_N, -gamma)
        }
        ScaleSchedule::ExpPower { sigma0, rate, root } => {
            Growth::constant(-sigma0.ln()).plus_term(Scale::Pow(1.0 / root as f64), rate)
        }
        ScaleSchedule::Tabulated { .. } => return None,
    })
}

/// `sigma_n^-2` up to lower-order factors.
fn inv_sigma_sq(s: &ScaleSchedule) -> Growth {
    let k = match *s {
        ScaleSchedule::Power { sigma0, .. }
        | ScaleSchedule::PowerLog { sigma0, .. }
        | ScaleSchedule::ExpPower { sigma0, .. } => sigma0.powi(-2),
        ScaleSchedule::Tabulated { .. } => unreachable!("tabulated schedules are undecidable"),
    };
    match *s {
        ScaleSchedule::Power { beta, .. } if beta > 0.0 => Growth::term(Scale::Pow(2.0 * beta), k),
        ScaleSchedule::PowerLog { beta, .. } if beta > 0.0 => Growth::term(Scale::Pow(2.0 * beta), k),
        ScaleSchedule::PowerLog { gamma, .. } if gamma < 0.0 => Growth::term(Scale::LogPow(-2.0 * gamma), k),
        ScaleSchedule::ExpPower { root, .. } => Growth::term(Scale::ExpPow(1.0 / root as f64), k),
        _ => Growth::constant(k),
    }
}

/// The coordinate with the smallest scale, asymptotically.
struct Dominant<'a> {
    schedule: &'a ScaleSchedule,
    psi: Growth,
    vanishes: bool,
    all_vanish: bool,
}

fn dominant(kernel: &KernelSpec) -> Option<Dominant<'_>> {
    let mut best: Option<(&ScaleSchedule, Growth)> = None;
    let mut all_vanish = true;
    for s in kernel.schedules() {
        let psi = neg_log_sigma(s)?;
        all_vanish &= psi.diverges_up();
        if best.as_ref().is_none_or(|(_, b)| psi.compare(b) == Ordering::Greater) {
            best = Some((s, psi));
        }
    }
    let (schedule, psi) = best?;
    let vanishes = psi.diverges_up();
    Some(Dominant { schedule, psi, vanishes, all_vanish })
}

/// `log(1 / K~_n)`, or `log(1 / Kbar_n)` with `kappa = delta0^2`; constants dropped.
fn log_inverse_bound(family: KernelFamily, dom: &Dominant<'_>, kappa: f64) -> Growth {
    if !dom.vanishes {
        return Growth::constant(0.0);
    }
    match family {
        KernelFamily::StudentT { dof: Dof::Finite(nu) } => dom.psi.clone().scaled(nu as f64),
        KernelFamily::StudentT { dof: Dof::Infinite } => {
            dom.psi.clone().scaled(-1.0).plus(&inv_sigma_sq(dom.schedule).scaled(0.5 * kappa))
        }
        KernelFamily::Asa => dom.psi.log(),
    }
}

fn decades(horizon: u64) -> Vec<u64> {
    std::iter::successors(Some(10u64), |&n| n.checked_mul(10)).take_while(|&n| n <= horizon).collect()
}

fn rate_label(family: KernelFamily) -> ConditionId {
    match family {
        KernelFamily::StudentT { .. } => ConditionId::CondRate1,
        KernelFamily::Asa => ConditionId::CondRateAsa,
    }
}

/// Family-specific rate test value at step `n`.
fn rate_witness(kernel: &KernelSpec, n: u64) -> f64 {
    let d = kernel.dim() as f64;
    let sigma = kernel.sigma_min(n);
    let scale = (n as f64).powf(-1.0 / d);
    match kernel.family() {
        KernelFamily::StudentT { dof: Dof::Finite(nu) } => {
            let nu = nu as f64;
            scale * sigma * (0.5 * (nu + 1.0) * (1.0 / (nu * sigma * sigma)).ln_1p()).exp()
        }
        KernelFamily::StudentT { dof: Dof::Infinite } => scale * sigma * (0.5 / (sigma * sigma)).exp(),
        KernelFamily::Asa => scale * (1.0 / sigma).ln(),
    }
}

/// Checks the kernel and cooling hypotheses required by `opts.mode`.
pub fn check_conditions(kernel: &KernelSpec, cooling: &CoolingSchedule, opts: &CheckOptions) -> ConditionsReport {
    let family = kernel.family();
    let d = kernel.dim();
    let df = d as f64;
    let points = decades(opts.horizon);
    let dom = dominant(kernel);
    let mut notes = Vec::new();

    for (i, s) in kernel.schedules().iter().enumerate() {
        if let Some(n) = s.floor_binds_from(opts.horizon) {
            notes.push(format!("coordinate {i}: scale floor {SIGMA_FLOOR:e} binds from n = {n}"));
        }
    }
    if opts.mode == Mode::Thm3 && d > 1 {
        notes.push(format!("the deterministic-sequence result assumes d = 1, kernel has d = {d}"));
    }

    let ratio_growth = |inv: Growth| Growth::term(LOG_N, -1.0 / df).plus(&inv);
    let ratio_witnesses = |bound: &dyn Fn(u64) -> f64| -> Vec<(u64, f64)> {
        points.iter().map(|&n| (n, (n as f64).powf(-1.0 / df) / bound(n))).collect()
    };
    let decided = |id, pass: bool, limit, witnesses, note: Option<String>| ConditionReport {
        id,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        limit,
        witnesses,
        note,
    };
    let undecidable = |id, witnesses| ConditionReport {
        id,
        verdict: Verdict::Undecidable,
        limit: None,
        witnesses,
        note: Some("non-parametric schedule; sampled evidence only".into()),
    };

    let mut out = Vec::new();
    let wanted: &[ConditionId] = match opts.mode {
        Mode::Thm1 => &[ConditionId::Thm1LowerBound, ConditionId::Thm1Divergence],
        Mode::Thm2 => &[ConditionId::C5],
        Mode::Thm3 => &[ConditionId::C5Prime, ConditionId::C6],
    };

    for &id in wanted {
        let report = match id {
            ConditionId::Thm1LowerBound => {
                let w: Vec<_> = points.iter().map(|&n| (n, kernel.tilde_k_lower(n).powi(d as i32))).collect();
                let underflow = w.iter().any(|&(_, v)| v == 0.0);
                // every family has a strictly positive density on [0,1]^2 for sigma > 0
                decided(id, true, None, w, underflow.then(|| "positive, but underflows in double precision".into()))
            }
            ConditionId::Thm1Divergence => {
                let mut w = Vec::with_capacity(points.len());
                let (mut acc, mut k) = (0.0, 1u64);
                for &n in &points {
                    while k <= n {
                        acc += kernel.tilde_k_lower(k).powi(d as i32);
                        k += 1;
                    }
                    w.push((n, acc));
                }
                match &dom {
                    None => undecidable(id, w),
                    Some(dom) => {
                        let g = log_inverse_bound(family, dom, 1.0).scaled(-df);
                        decided(id, g.exp_series_diverges(), None, w, None)
                    }
                }
            }
            ConditionId::C5 | ConditionId::C5Prime => {
                let w = ratio_witnesses(&|n| kernel.tilde_k_lower(n));
                match &dom {
                    None => undecidable(id, w),
                    Some(dom) => {
                        let lim = ratio_growth(log_inverse_bound(family, dom, 1.0)).limit_of_exp();
                        let pass = if id == ConditionId::C5 { lim.is_bounded() } else { lim == Limit::Vanishing };
                        decided(id, pass, Some(lim), w, None)
                    }
                }
            }
            ConditionId::C6 => {
                let p_floor = kernel.normalizer_floor();
                let w = ratio_witnesses(&|n| {
                    kernel.separated_upper_bound_at_index(kernel.effective_index(n), opts.delta0, p_floor)
                });
                match &dom {
                    None => undecidable(id, w),
                    Some(dom) => {
                        let kappa = opts.delta0 * opts.delta0;
                        let lim = ratio_growth(log_inverse_bound(family, dom, kappa)).limit_of_exp();
                        decided(id, lim == Limit::Vanishing, Some(lim), w, None)
                    }
                }
            }
            _ => unreachable!(),
        };
        out.push(report);
    }

    // family rate condition
    let id = rate_label(family);
    let w: Vec<_> = points.iter().map(|&n| (n, rate_witness(kernel, n))).collect();
    out.push(match &dom {
        None => undecidable(id, w),
        Some(dom) => {
            let inv = match family {
                KernelFamily::Asa if dom.vanishes => dom.psi.log(),
                KernelFamily::Asa => Growth::constant(0.0),
                _ => log_inverse_bound(family, dom, 1.0),
            };
            let lim = ratio_growth(inv).limit_of_exp();
            let algebra = match opts.mode {
                Mode::Thm3 => lim == Limit::Vanishing,
                _ => lim.is_bounded(),
            };
            let student_higher = matches!(family, KernelFamily::StudentT { dof } if !dof.is_cauchy());
            let (verdict, note) = if !algebra {
                (Verdict::Fail, None)
            } else if opts.mode != Mode::Thm1 && !dom.all_vanish {
                (Verdict::Fail, Some("every coordinate scale must tend to zero".to_string()))
            } else if opts.mode != Mode::Thm1 && student_higher {
                (Verdict::ConjecturedOnly, Some("shown for the Cauchy kernel only".to_string()))
            } else {
                (Verdict::Pass, None)
            };
            ConditionReport { id, verdict, limit: Some(lim), witnesses: w, note }
        }
    });

    // cooling
    let valid = cooling.check() == CoolingValidity::Valid;
    let w = cooling.partial_sums(&points);
    out.push(ConditionReport {
        id: ConditionId::Cooling,
        verdict: if valid { Verdict::Pass } else { Verdict::Fail },
        limit: None,
        witnesses: w,
        note: (!valid).then(|| format!("sum of T_n log n diverges for {cooling}")),
    });

    ConditionsReport { mode: opts.mode, conditions: out, notes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::Adaptation;

    fn kernel(family: KernelFamily, s: ScaleSchedule, d: usize) -> KernelSpec {
        KernelSpec::isotropic(family, s, d, Adaptation::EveryStep).unwrap()
    }

    fn cool() -> CoolingSchedule {
        CoolingSchedule::power(1.0, 2.0).unwrap()
    }

    fn opts(mode: Mode) -> CheckOptions {
        CheckOptions { mode, horizon: 100_000, ..Default::default() }
    }

    fn verdict(k: &KernelSpec, mode: Mode, id: ConditionId) -> Verdict {
        check_conditions(k, &cool(), &opts(mode)).get(id).unwrap().verdict
    }

    #[test]
    fn cauchy_rate_examples() {
        // sigma_n = 1/n: n^-1 (sigma + 1/sigma) = n^-2 + 1, bounded
        let k = kernel(KernelFamily::CAUCHY, ScaleSchedule::power(1.0, 1.0).unwrap(), 1);
        let r = check_conditions(&k, &cool(), &opts(Mode::Thm1));
        let c = r.get(ConditionId::CondRate1).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        for &(n, v) in &c.witnesses {
            let n = n as f64;
            assert!((v - (n.powi(-2) + 1.0)).abs() < 1e-12 * v, "n={n}");
        }
        // sigma_n = n^-2: n^-3 + n, unbounded
        let k = kernel(KernelFamily::CAUCHY, ScaleSchedule::power(1.0, 2.0).unwrap(), 1);
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::CondRate1), Verdict::Fail);
    }

    #[test]
    fn asa_exponential_scale_cancels() {
        let k = kernel(KernelFamily::Asa, ScaleSchedule::exp_power(1.0, 1.0, 1).unwrap(), 1);
        let r = check_conditions(&k, &cool(), &CheckOptions { horizon: 10, ..opts(Mode::Thm2) });
        let c = r.get(ConditionId::CondRateAsa).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert_eq!(c.limit, Some(Limit::Bounded));
        assert!((c.witnesses[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cauchy_rates_by_dimension() {
        // n^{-1/d} / sigma_n with sigma = n^-beta: bounded iff beta <= 1/d, vanishing iff beta < 1/d
        for d in [1usize, 2, 3] {
            for beta in [0.1, 0.25, 1.0 / 3.0, 0.5, 1.0, 1.5] {
                let k = kernel(KernelFamily::CAUCHY, ScaleSchedule::power(1.0, beta).unwrap(), d);
                let inv_d = 1.0 / d as f64;
                let r2 = check_conditions(&k, &cool(), &opts(Mode::Thm2));
                assert_eq!(r2.get(ConditionId::C5).unwrap().verdict == Verdict::Pass, beta <= inv_d + 1e-12, "d={d} beta={beta}");
                let r3 = check_conditions(&k, &cool(), &opts(Mode::Thm3));
                assert_eq!(r3.get(ConditionId::C5Prime).unwrap().verdict == Verdict::Pass, beta < inv_d - 1e-12);
                assert_eq!(r3.get(ConditionId::C6).unwrap().verdict == Verdict::Pass, beta < inv_d - 1e-12);
            }
        }
    }

    #[test]
    fn lower_bound_series() {
        // Cauchy, d = 1: K~_n ~ sigma_n, so the series diverges iff beta <= 1
        for (beta, div) in [(0.5, true), (1.0, true), (1.2, false)] {
            let k = kernel(KernelFamily::CAUCHY, ScaleSchedule::power(1.0, beta).unwrap(), 1);
            assert_eq!(verdict(&k, Mode::Thm1, ConditionId::Thm1Divergence) == Verdict::Pass, div, "beta={beta}");
        }
        // d = 2: K~_n^2 ~ n^{-2 beta}
        let k = kernel(KernelFamily::CAUCHY, ScaleSchedule::power(1.0, 0.5).unwrap(), 2);
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::Thm1Divergence), Verdict::Pass);
        let k = kernel(KernelFamily::CAUCHY, ScaleSchedule::power(1.0, 0.6).unwrap(), 2);
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::Thm1Divergence), Verdict::Fail);
        // ASA: K~_n ~ 1/(2 log(1/sigma)); with sigma = exp(-n) the series is harmonic
        let k = kernel(KernelFamily::Asa, ScaleSchedule::exp_power(1.0, 1.0, 1).unwrap(), 1);
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::Thm1Divergence), Verdict::Pass);
        let k = kernel(KernelFamily::Asa, ScaleSchedule::exp_power(1.0, 1.0, 1).unwrap(), 2);
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::Thm1Divergence), Verdict::Fail);
    }

    #[test]
    fn gaussian_needs_logarithmic_scales() {
        let g = KernelFamily::StudentT { dof: Dof::Infinite };
        let k = kernel(g, ScaleSchedule::power(1.0, 0.1).unwrap(), 1);
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::CondRate1), Verdict::Fail);
        // sigma^2 = c / log n: exp(1/(2 sigma^2)) = n^{1/(2c)}, bounded against n^-1 iff c >= 1/2
        let k = kernel(g, ScaleSchedule::power_log(1.0, 0.0, -0.5).unwrap(), 1);
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::CondRate1), Verdict::Pass);
        let k = kernel(g, ScaleSchedule::power_log(0.5, 0.0, -0.5).unwrap(), 1);
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::CondRate1), Verdict::Fail);
        assert_eq!(verdict(&k, Mode::Thm2, ConditionId::CondRate1), Verdict::Fail);
        let k = kernel(g, ScaleSchedule::power_log(2.0, 0.0, -0.5).unwrap(), 1);
        assert_eq!(verdict(&k, Mode::Thm2, ConditionId::CondRate1), Verdict::ConjecturedOnly);
    }

    #[test]
    fn constant_scale_passes_iid_mode_only() {
        let k = kernel(KernelFamily::CAUCHY, ScaleSchedule::constant(0.3).unwrap(), 2);
        let r = check_conditions(&k, &cool(), &opts(Mode::Thm1));
        assert!(r.passed(), "{:?}", r);
        let r = check_conditions(&k, &cool(), &opts(Mode::Thm2));
        assert_eq!(r.get(ConditionId::C5).unwrap().verdict, Verdict::Pass);
        assert_eq!(r.get(ConditionId::CondRate1).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn tabulated_is_undecidable() {
        let k = kernel(KernelFamily::Asa, ScaleSchedule::tabulated(vec![1.0, 0.5, 0.25]).unwrap(), 1);
        let r = check_conditions(&k, &cool(), &opts(Mode::Thm2));
        assert_eq!(r.get(ConditionId::C5).unwrap().verdict, Verdict::Undecidable);
        assert_eq!(r.get(ConditionId::Cooling).unwrap().verdict, Verdict::Pass);
        assert!(r.passed());
    }

    #[test]
    fn cooling_and_floor_are_reported() {
        let k = kernel(KernelFamily::CAUCHY, ScaleSchedule::power(1.0, 3.0).unwrap(), 1);
        let bad = CoolingSchedule::power_log(1.0, 2.0).unwrap();
        let r = check_conditions(&k, &bad, &opts(Mode::Thm1));
        assert_eq!(r.get(ConditionId::Cooling).unwrap().verdict, Verdict::Fail);
        assert!(r.notes.iter().any(|n| n.contains("binds from n = 10001")), "{:?}", r.notes);
    }

    #[test]
    fn mixed_coordinates_use_the_smallest_scale() {
        let k = KernelSpec::new(
            KernelFamily::CAUCHY,
            vec![ScaleSchedule::constant(1.0).unwrap(), ScaleSchedule::power(1.0, 2.0).unwrap()],
            Adaptation::EveryStep,
        )
        .unwrap();
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::CondRate1), Verdict::Fail);
        let k = KernelSpec::new(
            KernelFamily::CAUCHY,
            vec![ScaleSchedule::constant(1.0).unwrap(), ScaleSchedule::power(1.0, 0.5).unwrap()],
            Adaptation::EveryStep,
        )
        .unwrap();
        assert_eq!(verdict(&k, Mode::Thm1, ConditionId::CondRate1), Verdict::Pass);
        // one coordinate keeps a constant scale
        assert_eq!(verdict(&k, Mode::Thm2, ConditionId::CondRate1), Verdict::Fail);
    }
}
