use super::driver::truncate_coord;
use super::{digit_count, radical_inverse, NoiseSource, RetainedDigits};

/// Result of checking the acceptance-coordinate lower bound over a horizon.
#[derive(Clone, Debug, PartialEq)]
pub struct AcceptFloorOutcome {
    pub passed: bool,
    pub horizon: u64,
    pub violations: u64,
    pub first_violation: Option<u64>,
    /// Last violating index; the bound holds for every index after it.
    pub burn_in: u64,
}

/// Checks the lower bound on the acceptance coordinate `U_R^n`.
///
/// With `R = inf` the deterministic bound `u^n >= b^{-k_n}` must hold for every
/// `1 <= n <= horizon`. With finite `R` the random points must satisfy
/// `U^n >= n^{-(1+alpha)}` past a burn-in; the check fails if a violation
/// occurs in the second half of the horizon.
pub fn accept_floor_check(b: u32, r: RetainedDigits, horizon: u64, alpha: f64, seed: u64) -> AcceptFloorOutcome {
    assert!(alpha > 0.0, "alpha must be positive");
    let mut noise = NoiseSource::new(seed);
    let mut violations = 0;
    let mut first = None;
    let mut last = 0;
    for n in 1..=horizon {
        let u_inf = radical_inverse(n, b);
        let (u, bound) = match r {
            RetainedDigits::All => (u_inf, (b as f64).powi(-(digit_count(n, b) as i32))),
            RetainedDigits::Finite(r) => {
                let u = truncate_coord(u_inf, r, b, noise.value(n, 0));
                (u, (n as f64).powf(-(1.0 + alpha)))
            }
        };
        if u < bound {
            violations += 1;
            first.get_or_insert(n);
            last = n;
        }
    }
    let passed = match r {
        RetainedDigits::All => violations == 0,
        RetainedDigits::Finite(_) => last <= horizon / 2,
    };
    AcceptFloorOutcome { passed, horizon, violations, first_violation: first, burn_in: last }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_bound_holds() {
        let out = accept_floor_check(2, RetainedDigits::All, 100_000, 0.5, 0);
        assert!(out.passed);
        assert_eq!(out.violations, 0);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert_eq!(radical_inverse(1, 2), 0.5);
        for b in [3u32, 5] {
            assert!(accept_floor_check(b, RetainedDigits::All, 20_000, 0.5, 0).passed);
        }
    }

    #[test]
    fn random_levels_pass_after_burn_in() {
        for r in [0u32, 1, 4] {
            let out = accept_floor_check(2, RetainedDigits::Finite(r), 100_000, 0.5, 17);
            assert!(out.passed, "R={r}: {out:?}");
        }
    }
}
