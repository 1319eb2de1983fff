//! The annealing chain: propose by inverse Rosenblatt transform, accept by the
//! Metropolis rule, keep the running maximum.

mod cooling;

pub use cooling::{check_cooling, CoolingSchedule, CoolingValidity};

use crate::error::{Error, Result};
use crate::kernels::{check_conditions, Adaptation, CheckOptions, KernelSpec, Mode, Verdict};
use crate::objectives::Evaluate;
use crate::sequences::{DriverPoint, RetainedDigits, SequenceDriver};

/// `exp((phi_y - phi_x) / t) ∧ 1`.
pub fn accept_prob(phi_y: f64, phi_x: f64, t: f64) -> Result<f64> {
    if !(phi_y.is_finite() && phi_x.is_finite()) {
        return Err(Error::Objective(format!("non-finite objective values {phi_y}, {phi_x}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("temperature must be positive, got {t}")));
    }
    if phi_y >= phi_x {
        return Ok(1.0);
    }
    Ok(((phi_y - phi_x) / t).exp())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainState {
    pub n: u64,
    pub x: Vec<f64>,
    pub value: f64,
    pub best_value: f64,
    pub best_x: Vec<f64>,
    pub accept_count: u64,
}

impl ChainState {
    fn start(x0: &[f64], value: f64) -> Self {
        ChainState { n: 0, x: x0.to_vec(), value, best_value: value, best_x: x0.to_vec(), accept_count: 0 }
    }
}

/// Everything that happened at one step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub n: u64,
    pub proposal: Vec<f64>,
    pub proposal_value: f64,
    pub accept_prob: f64,
    /// The acceptance coordinate `u_{d+1}`.
    pub accept_u: f64,
    pub accepted: bool,
    pub temperature: f64,
    pub kernel_index: u64,
    /// Smallest coordinate scale of the kernel used.
    pub sigma_eff: f64,
    /// State after the step.
    pub x: Vec<f64>,
    pub value: f64,
    pub best_value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainTrace {
    pub initial: ChainState,
    pub records: Vec<StepRecord>,
    pub last: ChainState,
    /// Hypotheses of the convergence results that this configuration does not meet.
    pub warnings: Vec<String>,
}

/// Kernel, cooling and objective of one chain, shared read-only between replications.
pub struct Annealer<'a, E: Evaluate + ?Sized> {
    kernel: &'a KernelSpec,
    cooling: &'a CoolingSchedule,
    objective: &'a E,
}

impl<'a, E: Evaluate + ?Sized> Annealer<'a, E> {
    pub fn new(kernel: &'a KernelSpec, cooling: &'a CoolingSchedule, objective: &'a E) -> Result<Self> {
        cooling.validate()?;
        Ok(Annealer { kernel, cooling, objective })
    }

    pub fn kernel(&self) -> &KernelSpec {
        self.kernel
    }

    pub fn cooling(&self) -> &CoolingSchedule {
        self.cooling
    }

    pub fn init(&self, x0: &[f64]) -> Result<ChainState> {
        if x0.len() != self.kernel.dim() {
            return Err(Error::InvalidInput(format!(
                "start point has {} coordinates, kernel has {}",
                x0.len(),
                self.kernel.dim()
            )));
        }
        if x0.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidInput(format!("start point {x0:?} is outside [0,1]^d")));
        }
        let value = self.objective.evaluate(x0)?;
        Ok(ChainState::start(x0, value))
    }

    /// Advances `state` by one step on the driver point `u`.
    pub fn step(&self, state: &mut ChainState, u: &DriverPoint) -> Result<StepRecord> {
        let n = state.n + 1;
        let kernel_index = self.kernel.effective_index(n);
        let proposal = self.kernel.inv_rosenblatt(n, &state.x, &u.proposal);
        let proposal_value = self.objective.evaluate(&proposal)?;
        let temperature = self.cooling.temperature_at(n);
        let a = accept_prob(proposal_value, state.value, temperature)?;
        let accepted = u.accept <= a;
        state.n = n;
        if accepted {
            state.x.copy_from_slice(&proposal);
            state.value = proposal_value;
            state.accept_count += 1;
            if proposal_value > state.best_value {
                state.best_value = proposal_value;
                state.best_x.copy_from_slice(&proposal);
            }
        }
        Ok(StepRecord {
            n,
            proposal,
            proposal_value,
            accept_prob: a,
            accept_u: u.accept,
            accepted,
            temperature,
            kernel_index,
            sigma_eff: self.kernel.sigma_min_at_index(kernel_index),
            x: state.x.clone(),
            value: state.value,
            best_value: state.best_value,
        })
    }

    /// Runs `steps` steps from `state`, reading driver points `state.n + 1, ...`.
    pub fn advance_with<F>(&self, state: &mut ChainState, steps: u64, driver: &mut SequenceDriver, mut observe: F) -> Result<()>
    where
        F: FnMut(&StepRecord, &ChainState),
    {
        if driver.config().dim != self.kernel.dim() {
            return Err(Error::InvalidParameter(format!(
                "driver dimension {} does not match kernel dimension {}",
                driver.config().dim,
                self.kernel.dim()
            )));
        }
        let mut u = DriverPoint::zeros(self.kernel.dim());
        for _ in 0..steps {
            driver.point_at(state.n + 1, &mut u)?;
            let rec = self.step(state, &u)?;
            observe(&rec, state);
        }
        Ok(())
    }

    /// Runs `steps` steps from `x0`, passing every record to `observe`.
    pub fn run_with<F>(&self, x0: &[f64], steps: u64, driver: &mut SequenceDriver, observe: F) -> Result<ChainState>
    where
        F: FnMut(&StepRecord, &ChainState),
    {
        let mut state = self.init(x0)?;
        self.advance_with(&mut state, steps, driver, observe)?;
        Ok(state)
    }

    pub fn run(&self, x0: &[f64], steps: u64, driver: &mut SequenceDriver) -> Result<ChainTrace> {
        let warnings = hypothesis_warnings(self.kernel, self.cooling, driver.config().retained);
        let initial = self.init(x0)?;
        let mut state = initial.clone();
        let mut records = Vec::with_capacity(steps.min(1 << 20) as usize);
        self.advance_with(&mut state, steps, driver, |r, _| records.push(r.clone()))?;
        Ok(ChainTrace { initial, records, last: state, warnings })
    }
}

/// Convergence hypotheses that the configuration fails to meet, as messages.
///
/// `R = 0` is checked against the i.i.d. result, finite `R > 0` against the
/// `(t,s)_R` result and `R = inf` against the deterministic one.
pub fn hypothesis_warnings(kernel: &KernelSpec, cooling: &CoolingSchedule, retained: RetainedDigits) -> Vec<String> {
    let mut out = Vec::new();
    let mode = match retained {
        RetainedDigits::Finite(0) => Mode::Thm1,
        RetainedDigits::Finite(_) => Mode::Thm2,
        RetainedDigits::All => Mode::Thm3,
    };
    let report = check_conditions(kernel, cooling, &CheckOptions { mode, ..CheckOptions::default() });
    for c in &report.conditions {
        match c.verdict {
            Verdict::Pass => {}
            v => {
                let note = c.note.as_deref().map(|n| format!(": {n}")).unwrap_or_default();
                out.push(format!("{} {} under {}{}", c.id.as_str(), v.as_str(), report.mode, note));
            }
        }
    }
    out.extend(report.notes.iter().cloned());
    if retained != RetainedDigits::Finite(0) {
        match *kernel.adaptation() {
            Adaptation::EveryStep => {
                out.push(format!("R = {retained} with a kernel that changes every step; block adaptation is assumed"))
            }
            Adaptation::Blocks { retained: r, .. } if r != retained => {
                out.push(format!("kernel blocks are laid out for R = {r}, driver uses R = {retained}"))
            }
            Adaptation::Blocks { .. } => {}
        }
    }
    out
}
