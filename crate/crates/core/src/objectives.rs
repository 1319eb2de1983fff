//! Benchmark objectives on `[0,1]^d` with known maxima.
//!
//! Every registered objective attains its maximum `0` at the centre of the cube.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Which continuity hypothesis an objective satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assumption {
    /// Continuous on a ball around the maximizer only.
    LocalContinuity,
    /// Continuous everywhere, with level sets of bounded Minkowski content.
    GlobalContinuity,
}

impl Assumption {
    pub fn label(self) -> &'static str {
        match self {
            Assumption::LocalContinuity => "Thm1-local",
            Assumption::GlobalContinuity => "D1-global",
        }
    }
}

/// A value to be maximized.
pub trait Evaluate: Sync {
    fn evaluate(&self, x: &[f64]) -> Result<f64>;
}

impl<F> Evaluate for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let v = self(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Objective(format!("non-finite value {v} at {x:?}")))
        }
    }
}

/// A registered objective of fixed dimension.
#[derive(Clone, Debug)]
pub struct Objective {
    name: &'static str,
    dim: usize,
    assumption: Assumption,
    f: fn(&[f64]) -> f64,
}

impl Objective {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn assumption(&self) -> Assumption {
        self.assumption
    }

    /// Known supremum.
    pub fn max_value(&self) -> f64 {
        0.0
    }

    /// A known maximizer.
    pub fn argmax(&self) -> Vec<f64> {
        vec![0.5; self.dim]
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::Objective(format!("{} expects {} coordinates, got {}", self.name, self.dim, x.len())));
        }
        if let Some(v) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Objective(format!("{} queried off [0,1]: coordinate {v}", self.name)));
        }
        Ok((self.f)(x))
    }
}

impl Evaluate for Objective {
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.eval(x)
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (d={}, {})", self.name, self.dim, self.assumption.label())
    }
}

fn sphere(x: &[f64]) -> f64 {
    -x.iter().map(|v| (v - 0.5) * (v - 0.5)).sum::<f64>()
}

fn multicos(x: &[f64]) -> f64 {
    -x.iter()
        .map(|v| {
            let z = v - 0.5;
            z * z - 0.1 * (6.0 * PI * z).cos() + 0.1
        })
        .sum::<f64>()
}

const STEP_RADIUS: f64 = 0.1;

/// `-|x - c|_inf` on the ball of radius 0.1 about the centre, and a
/// piecewise-constant penalty below `-0.2` elsewhere.
fn step_near_max(x: &[f64]) -> f64 {
    let r = x.iter().map(|v| (v - 0.5).abs()).fold(0.0, f64::max);
    if r <= STEP_RADIUS {
        return -r;
    }
    let stripes = (5.0 * x.iter().sum::<f64>()).floor() as i64;
    let h = 0.1 * (stripes.rem_euclid(2) as f64) + if x[0] > 0.75 { 0.05 } else { 0.0 };
    -0.2 - h
}

struct Entry {
    name: &'static str,
    assumption: Assumption,
    f: fn(&[f64]) -> f64,
    summary: &'static str,
}

const REGISTRY: [Entry; 3] = [
    Entry {
        name: "sphere",
        assumption: Assumption::GlobalContinuity,
        f: sphere,
        summary: "-sum (x_i - 1/2)^2",
    },
    Entry {
        name: "multicos",
        assumption: Assumption::GlobalContinuity,
        f: multicos,
        summary: "-sum [(x_i - 1/2)^2 - 0.1 cos(6 pi (x_i - 1/2)) + 0.1]",
    },
    Entry {
        name: "step-near-max",
        assumption: Assumption::LocalContinuity,
        f: step_near_max,
        summary: "-|x - 1/2|_inf near the centre, discontinuous steps below -0.2 elsewhere",
    },
];

/// Registry listing entry.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectiveInfo {
    pub name: &'static str,
    pub assumption: Assumption,
    pub max_value: f64,
    pub summary: &'static str,
}

pub fn list_objectives() -> Vec<ObjectiveInfo> {
    REGISTRY
        .iter()
        .map(|e| ObjectiveInfo { name: e.name, assumption: e.assumption, max_value: 0.0, summary: e.summary })
        .collect()
}

/// The registered objective `name` in dimension `dim`.
pub fn lookup(name: &str, dim: usize) -> Result<Objective> {
    if dim == 0 {
        return Err(Error::InvalidParameter("objective dimension must be at least 1".into()));
    }
    REGISTRY
        .iter()
        .find(|e| e.name == name)
        .map(|e| Objective { name: e.name, dim, assumption: e.assumption, f: e.f })
        .ok_or_else(|| {
            let known: Vec<_> = REGISTRY.iter().map(|e| e.name).collect();
            Error::InvalidParameter(format!("unknown objective {name:?}; known: {}", known.join(", ")))
        })
}
