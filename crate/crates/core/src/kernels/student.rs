//! Student-t location-scale kernel truncated to `[0,1]`, one coordinate at a time.

use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

use serde::{Deserialize, Serialize};
use statrs::function::{beta::beta_reg, erf::erfc, gamma::ln_gamma};

use crate::quadrature::integrate_with_breaks;

const INV_TOL: f64 = 1e-12;
const INV_MAX_ITER: u32 = 200;

/// Degrees of freedom; `Infinite` is the Gaussian limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dof {
    Finite(u32),
    Infinite,
}

impl Dof {
    pub fn is_cauchy(self) -> bool {
        self == Dof::Finite(1)
    }
}

impl std::fmt::Display for Dof {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dof::Finite(nu) => write!(f, "{nu}"),
            Dof::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Dof {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dof::Finite(nu) => s.serialize_u32(*nu),
            Dof::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Dof {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(0) => Err(serde::de::Error::custom("degrees of freedom must be at least 1")),
            Raw::Int(nu) => Ok(Dof::Finite(nu)),
            Raw::Text(t) if t == "inf" => Ok(Dof::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected an integer or \"inf\", got {t:?}"))),
        }
    }
}

/// Peak of the standard density, `Gamma((nu+1)/2) / (Gamma(nu/2) sqrt(nu pi))`.
pub fn peak_constant(dof: Dof) -> f64 {
    match dof {
        Dof::Finite(1) => FRAC_1_PI,
        Dof::Finite(nu) => {
            let nu = nu as f64;
            (ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(0.5 * nu) - 0.5 * (nu * PI).ln()).exp()
        }
        Dof::Infinite => 1.0 / (2.0 * PI).sqrt(),
    }
}

/// `(1 + z^2/nu)^(-(nu+1)/2)`, or `exp(-z^2/2)` in the Gaussian limit.
fn shape(z: f64, dof: Dof) -> f64 {
    match dof {
        Dof::Finite(nu) => {
            let nu = nu as f64;
            (-0.5 * (nu + 1.0) * (z * z / nu).ln_1p()).exp()
        }
        Dof::Infinite => (-0.5 * z * z).exp(),
    }
}

/// Standard (unit-scale, untruncated) density.
pub fn std_pdf(z: f64, dof: Dof) -> f64 {
    peak_constant(dof) * shape(z, dof)
}

/// Standard upper tail `P(Z > z)`.
pub fn std_sf(z: f64, dof: Dof) -> f64 {
    match dof {
        Dof::Finite(1) => {
            if z > 0.0 {
                (1.0 / z).atan() * FRAC_1_PI
            } else {
                0.5 - z.atan() * FRAC_1_PI
            }
        }
        Dof::Finite(nu) => {
            let nu = nu as f64;
            let z2 = z * z;
            // near the centre the complementary argument keeps its precision
            let tail = if z2 < nu {
                0.5 - 0.5 * beta_reg(0.5, 0.5 * nu, z2 / (nu + z2))
            } else {
                0.5 * beta_reg(0.5 * nu, 0.5, nu / (nu + z2))
            };
            if z >= 0.0 {
                tail
            } else {
                1.0 - tail
            }
        }
        Dof::Infinite => 0.5 * erfc(z / SQRT_2),
    }
}

/// `P(lo < Z < hi)` for the standard distribution, computed from the tail
/// nearest the interval so that narrow far-out intervals keep their precision.
pub fn std_prob(lo: f64, hi: f64, dof: Dof) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    if lo >= 0.0 {
        (std_sf(lo, dof) - std_sf(hi, dof)).max(0.0)
    } else if hi <= 0.0 {
        (std_sf(-hi, dof) - std_sf(-lo, dof)).max(0.0)
    } else {
        1.0 - std_sf(-lo, dof) - std_sf(hi, dof)
    }
}

/// Mass of `[0,1]` under the untruncated kernel centred at `x`.
pub fn normalizer(x: f64, dof: Dof, sigma: f64) -> f64 {
    std_prob(-x / sigma, (1.0 - x) / sigma, dof)
}

/// Truncated density of `y` given the centre `x`.
pub fn density(y: f64, x: f64, dof: Dof, sigma: f64) -> f64 {
    if !(0.0..=1.0).contains(&y) {
        return 0.0;
    }
    std_pdf((y - x) / sigma, dof) / (sigma * normalizer(x, dof, sigma))
}

/// Truncated CDF of `y` given the centre `x`.
pub fn cdf(y: f64, x: f64, dof: Dof, sigma: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return 1.0;
    }
    let lo = -x / sigma;
    (std_prob(lo, (y - x) / sigma, dof) / normalizer(x, dof, sigma)).clamp(0.0, 1.0)
}

/// Inverse of [`cdf`] in `y`.
///
/// Closed form for the Cauchy case; bisection on the numeric CDF otherwise.
pub fn inv_cdf(x: f64, dof: Dof, sigma: f64, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let (lo, hi) = (-x / sigma, (1.0 - x) / sigma);
    if dof.is_cauchy() {
        let (a, b) = (lo.atan(), hi.atan());
        return (x + sigma * (a + u * (b - a)).tan()).clamp(0.0, 1.0);
    }
    let z_norm = std_prob(lo, hi, dof);
    let (mut a, mut b) = (lo, hi);
    let mut z = 0.5 * (a + b);
    for _ in 0..INV_MAX_ITER {
        z = 0.5 * (a + b);
        let f = std_prob(lo, z, dof) / z_norm - u;
        if f.abs() <= INV_TOL {
            break;
        }
        if f < 0.0 {
            a = z;
        } else {
            b = z;
        }
        if b - a <= f64::EPSILON * z.abs().max(1.0) {
            break;
        }
    }
    (x + sigma * z).clamp(0.0, 1.0)
}

/// Lower bound on the truncated density over `[0,1]^2`,
/// `c_nu / sigma * (1 + 1/(nu sigma^2))^(-(nu+1)/2)`.
pub fn lower_bound(dof: Dof, sigma: f64) -> f64 {
    peak_constant(dof) * shape(1.0 / sigma, dof) / sigma
}

/// Upper bound on the truncated density at distance at least `delta0` from
/// the centre, given the normalizer floor `p_floor`.
pub fn separated_upper_bound(dof: Dof, sigma: f64, delta0: f64, p_floor: f64) -> f64 {
    peak_constant(dof) * shape(delta0 / sigma, dof) / (p_floor * sigma)
}

/// Lipschitz constant of the Cauchy CDF between separated balls, `8 / (P pi sigma)`.
pub fn cauchy_lipschitz(sigma: f64, p_floor: f64) -> f64 {
    8.0 / (p_floor * PI * sigma)
}

/// `min_x` of the untruncated mass of `[0,1]`, by quadrature of the density.
pub fn normalizer_floor(dof: Dof, sigma: f64) -> f64 {
    let f = |x: f64| integrate_with_breaks(|y| std_pdf((y - x) / sigma, dof) / sigma, 0.0, 1.0, &[x], 1e-10);
    // the mass is symmetric about 1/2 and smallest at the edges
    (0..=50).map(|k| f(k as f64 / 100.0)).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOFS: [Dof; 4] = [Dof::Finite(1), Dof::Finite(3), Dof::Finite(7), Dof::Infinite];

    #[test]
    fn cauchy_examples() {
        let c = Dof::Finite(1);
        assert!((density(0.0, 0.0, c, 1.0) - 4.0 / PI).abs() < 1e-14);
        assert!((density(0.0, 0.5, c, 1.0) - density(1.0, 0.5, c, 1.0)).abs() < 1e-15);
        assert_eq!(inv_cdf(0.5, c, 0.3, 0.5), 0.5);
        assert!((inv_cdf(0.0, c, 1.0, 0.5) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert_eq!(inv_cdf(0.0, c, 1.0, 1.0), 1.0);
        assert_eq!(inv_cdf(0.7, c, 1.0, 0.0), 0.0);
    }

    #[test]
    fn peak_constants() {
        assert_eq!(peak_constant(Dof::Finite(1)), FRAC_1_PI);
        // nu = 2: 1 / (2 sqrt 2)
        assert!((peak_constant(Dof::Finite(2)) - 1.0 / (2.0 * SQRT_2)).abs() < 1e-14);
        // nu = 3: 2 / (pi sqrt 3)
        assert!((peak_constant(Dof::Finite(3)) - 2.0 / (PI * 3f64.sqrt())).abs() < 1e-14);
        assert!((peak_constant(Dof::Finite(100_000)) - peak_constant(Dof::Infinite)).abs() < 1e-5);
    }

    // P(Z > z) = int_z^a f + int_0^{1/a} f(1/s) / s^2 ds, with a > max(z, 0)
    fn sf_by_quadrature(z: f64, dof: Dof) -> f64 {
        let a = z.max(0.0) + 1.0;
        integrate_with_breaks(|t| std_pdf(t, dof), z, a, &[0.0], 1e-14)
            + integrate_with_breaks(|s| std_pdf(1.0 / s, dof) / (s * s), 0.0, 1.0 / a, &[], 1e-14)
    }

    #[test]
    fn tails_match_quadrature() {
        for dof in DOFS {
            for z in [-3.0, -0.4, 0.0, 0.4, 2.5] {
                let q = sf_by_quadrature(z, dof);
                assert!((std_sf(z, dof) - q).abs() < 1e-10, "dof={dof} z={z}: {} vs {q}", std_sf(z, dof));
            }
        }
    }

    #[test]
    fn far_tail_probability_keeps_precision() {
        let g = Dof::Infinite;
        let p = std_prob(30.0, 31.0, g);
        assert!(p > 0.0 && p < 1e-190);
        assert!((std_prob(-31.0, -30.0, g) - p).abs() <= 1e-12 * p);
    }

    #[test]
    fn densities_integrate_to_one() {
        for dof in DOFS {
            for sigma in [1e-3, 1e-1, 1.0] {
                for x in [0.0, 0.3, 0.5, 1.0] {
                    let m = integrate_with_breaks(|y| density(y, x, dof, sigma), 0.0, 1.0, &[x], 1e-11);
                    assert!((m - 1.0).abs() < 1e-8, "dof={dof} sigma={sigma} x={x}: {m}");
                }
            }
        }
    }

    #[test]
    fn cdf_round_trips() {
        for dof in DOFS {
            let tol = if dof.is_cauchy() { 1e-9 } else { 1e-8 };
            for sigma in [1e-3, 1e-1, 1.0] {
                for i in 0..=20 {
                    for j in 0..=20 {
                        let (x, u) = (i as f64 / 20.0, j as f64 / 20.0);
                        let y = inv_cdf(x, dof, sigma, u);
                        let e = (cdf(y, x, dof, sigma) - u).abs();
                        assert!(e <= tol, "dof={dof} sigma={sigma} x={x} u={u} y={y} err={e}");
                    }
                }
            }
        }
    }

    #[test]
    fn lower_bound_holds_on_grid() {
        for dof in DOFS {
            for sigma in [0.05, 0.3, 1.0] {
                let lb = lower_bound(dof, sigma);
                for i in 0..=20 {
                    for j in 0..=20 {
                        let (x, y) = (i as f64 / 20.0, j as f64 / 20.0);
                        assert!(density(y, x, dof, sigma) >= lb - 1e-12);
                    }
                }
            }
        }
        assert!((lower_bound(Dof::Finite(1), 1.0) - 0.5 / PI).abs() < 1e-15);
    }

    #[test]
    fn normalizer_floor_is_the_edge_mass() {
        for dof in DOFS {
            for sigma in [0.1, 1.0] {
                let edge = normalizer(0.0, dof, sigma);
                assert!((normalizer_floor(dof, sigma) - edge).abs() < 1e-9, "dof={dof} sigma={sigma}");
            }
        }
        // Cauchy, sigma = 1, x = 0: atan(1)/pi
        assert!((normalizer_floor(Dof::Finite(1), 1.0) - 0.25).abs() < 1e-10);
    }
}
