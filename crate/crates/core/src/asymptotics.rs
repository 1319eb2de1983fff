//! Leading-order growth of positive sequences built from the parametric schedules.
//!
//! A [`Growth`] is a finite sum `sum_k c_k * s_k(n) + c_0` over the scales
//!
//! ```text
//! exp(n^s)  >>  n^s  >>  (log n)^p  >>  log log n  >>  log log log n  >> ...
//! ```
//!
//! It represents either a sequence directly (e.g. `-log sigma_n`) or the
//! logarithm of one. Only the sign of the leading coefficient and, for series,
//! the coefficient of `log n` matter, so `o(1)` remainders are dropped.

use std::cmp::Ordering;

const ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Scale {
    /// `exp(c n^s)` for some `c > 0`; the inner constant never matters.
    ExpPow(f64),
    /// `n^s`, `s > 0`.
    Pow(f64),
    /// `(log n)^p`, `p > 0`.
    LogPow(f64),
    /// `log^{(j)} n`, the `j`-fold iterated logarithm, `j >= 2`.
    IterLog(u32),
}

impl Scale {
    fn key(self) -> (u8, f64) {
        match self {
            Scale::ExpPow(s) => (3, s),
            Scale::Pow(s) => (2, s),
            Scale::LogPow(p) => (1, p),
            Scale::IterLog(j) => (0, -(j as f64)),
        }
    }

    /// Dominance order: `Greater` means `self` grows faster.
    fn dominance(self, other: Scale) -> Ordering {
        let (a, b) = (self.key(), other.key());
        a.0.cmp(&b.0).then(a.1.total_cmp(&b.1))
    }

    fn same(self, other: Scale) -> bool {
        self.dominance(other) == Ordering::Equal
    }

    /// The scale seen through the substitution `m = log n`, for scales below `log n`.
    fn after_log_substitution(self) -> Scale {
        match self {
            Scale::LogPow(p) => Scale::Pow(p),
            Scale::IterLog(2) => Scale::LogPow(1.0),
            Scale::IterLog(j) => Scale::IterLog(j - 1),
            other => unreachable!("{other:?} does not survive the substitution"),
        }
    }
}

pub(crate) const LOG_N: Scale = Scale::LogPow(1.0);
pub(crate) const LOG_LOG_N: Scale = Scale::IterLog(2);

/// Limit of `exp(E_n)` for a log-growth `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Vanishing,
    Bounded,
    Unbounded,
}

impl Limit {
    pub fn is_bounded(self) -> bool {
        self != Limit::Unbounded
    }

    pub fn label(self) -> &'static str {
        match self {
            Limit::Vanishing => "o(1)",
            Limit::Bounded => "O(1), not o(1)",
            Limit::Unbounded => "unbounded",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct Growth {
    terms: Vec<(Scale, f64)>,
    pub constant: f64,
}

impl Growth {
    pub fn constant(c: f64) -> Self {
        Growth { terms: Vec::new(), constant: c }
    }

    pub fn term(scale: Scale, coef: f64) -> Self {
        Growth::constant(0.0).plus_term(scale, coef)
    }

    pub fn plus_term(mut self, scale: Scale, coef: f64) -> Self {
        match self.terms.iter_mut().find(|(s, _)| s.same(scale)) {
            Some((_, c)) => *c += coef,
            None => self.terms.push((scale, coef)),
        }
        self
    }

    pub fn plus(mut self, other: &Growth) -> Self {
        for &(s, c) in &other.terms {
            self = self.plus_term(s, c);
        }
        self.constant += other.constant;
        self
    }

    pub fn scaled(mut self, k: f64) -> Self {
        self.terms.iter_mut().for_each(|(_, c)| *c *= k);
        self.constant *= k;
        self
    }

    /// Terms with non-negligible coefficients, fastest first.
    fn significant(&self) -> Vec<(Scale, f64)> {
        let mut t: Vec<_> = self.terms.iter().copied().filter(|&(_, c)| c.abs() > ZERO_TOL).collect();
        t.sort_by(|a, b| b.0.dominance(a.0));
        t
    }

    pub fn leading(&self) -> Option<(Scale, f64)> {
        self.significant().first().copied()
    }

    /// Whether the sequence itself tends to `+inf`.
    pub fn diverges_up(&self) -> bool {
        matches!(self.leading(), Some((_, c)) if c > 0.0)
    }

    /// Limit of `exp(self)`.
    pub fn limit_of_exp(&self) -> Limit {
        match self.leading() {
            None => Limit::Bounded,
            Some((_, c)) if c > 0.0 => Limit::Unbounded,
            Some(_) => Limit::Vanishing,
        }
    }

    /// Whether `sum_n exp(self_n)` diverges.
    ///
    /// Compares against `-log n`; on an exact tie the remaining terms are
    /// re-examined after substituting `m = log n` (Cauchy condensation).
    pub fn exp_series_diverges(&self) -> bool {
        let sig = self.significant();
        if let Some(&(_, c)) = sig.iter().find(|(s, _)| s.dominance(LOG_N) == Ordering::Greater) {
            return c > 0.0;
        }
        let c_log = sig.iter().find(|(s, _)| s.same(LOG_N)).map_or(0.0, |&(_, c)| c);
        if c_log > -1.0 + ZERO_TOL {
            return true;
        }
        if c_log < -1.0 - ZERO_TOL {
            return false;
        }
        let lower = sig
            .iter()
            .filter(|(s, _)| s.dominance(LOG_N) == Ordering::Less)
            .fold(Growth::constant(0.0), |g, &(s, c)| g.plus_term(s.after_log_substitution(), c));
        lower.exp_series_diverges()
    }

    /// `log(self_n) + o(1)` for a sequence tending to `+inf`, or for a positive constant.
    pub fn log(&self) -> Growth {
        match self.leading() {
            None => {
                assert!(self.constant > 0.0, "log of a non-positive constant");
                Growth::constant(self.constant.ln())
            }
            Some((scale, c)) => {
                assert!(c > 0.0, "log of a sequence that does not diverge upwards");
                let out = match scale {
                    Scale::ExpPow(s) => Growth::term(Scale::Pow(s), 1.0),
                    Scale::Pow(s) => Growth::term(LOG_N, s),
                    Scale::LogPow(p) => Growth::term(LOG_LOG_N, p),
                    Scale::IterLog(j) => Growth::term(Scale::IterLog(j + 1), 1.0),
                };
                // the inner constant of ExpPow is not tracked; it only matters below Pow(s)
                Growth { constant: if matches!(scale, Scale::ExpPow(_)) { 0.0 } else { c.ln() }, ..out }
            }
        }
    }

    /// Asymptotic comparison of two sequences, constants breaking ties.
    pub fn compare(&self, other: &Growth) -> Ordering {
        let diff = self.clone().plus(&other.clone().scaled(-1.0));
        match diff.leading() {
            Some((_, c)) if c > 0.0 => Ordering::Greater,
            Some(_) => Ordering::Less,
            None => diff.constant.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }
}
