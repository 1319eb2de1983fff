//! Ingber's ASA kernel on `[0,1]`: density proportional to `1/(|y-x| + sigma)`.

use crate::quadrature::integrate_with_breaks;

fn log_span(sigma: f64) -> f64 {
    (1.0 / sigma).ln_1p()
}

/// Untruncated CDF `1/2 + sgn(y-x)/2 * log(1 + |y-x|/sigma) / log(1 + 1/sigma)`.
pub fn raw_cdf(y: f64, x: f64, sigma: f64) -> f64 {
    let dy = y - x;
    let sgn = if dy > 0.0 {
        1.0
    } else if dy < 0.0 {
        -1.0
    } else {
        0.0
    };
    0.5 + 0.5 * sgn * (dy.abs() / sigma).ln_1p() / log_span(sigma)
}

/// Untruncated density `1 / (2 (|y-x| + sigma) log(1 + 1/sigma))`.
pub fn raw_density(y: f64, x: f64, sigma: f64) -> f64 {
    1.0 / (2.0 * ((y - x).abs() + sigma) * log_span(sigma))
}

/// Mass of `[0,1]` under the untruncated kernel centred at `x`.
pub fn normalizer(x: f64, sigma: f64) -> f64 {
    raw_cdf(1.0, x, sigma) - raw_cdf(0.0, x, sigma)
}

/// Inverse of [`raw_cdf`] about the centre: `sgn(v - 1/2) sigma ((1 + 1/sigma)^|2v-1| - 1)`.
pub fn offset_map(v: f64, sigma: f64) -> f64 {
    let w = 2.0 * v - 1.0;
    let mag = sigma * (w.abs() * log_span(sigma)).exp_m1();
    if w > 0.0 {
        mag
    } else if w < 0.0 {
        -mag
    } else {
        0.0
    }
}

pub fn density(y: f64, x: f64, sigma: f64) -> f64 {
    if !(0.0..=1.0).contains(&y) {
        return 0.0;
    }
    raw_density(y, x, sigma) / normalizer(x, sigma)
}

pub fn cdf(y: f64, x: f64, sigma: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    if y >= 1.0 {
        return 1.0;
    }
    ((raw_cdf(y, x, sigma) - raw_cdf(0.0, x, sigma)) / normalizer(x, sigma)).clamp(0.0, 1.0)
}

/// `x + G(F(x, 0) + u N(x))`, clamped to `[0,1]`.
pub fn inv_cdf(x: f64, sigma: f64, u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let f0 = raw_cdf(0.0, x, sigma);
    (x + offset_map(f0 + u * normalizer(x, sigma), sigma)).clamp(0.0, 1.0)
}

/// Lower bound on the truncated density, `1 / (2 (1 + sigma) log(1 + 1/sigma))`.
pub fn lower_bound(sigma: f64) -> f64 {
    1.0 / (2.0 * (1.0 + sigma) * log_span(sigma))
}

/// Upper bound on the truncated density at distance at least `delta0` from the centre.
pub fn separated_upper_bound(sigma: f64, delta0: f64, p_floor: f64) -> f64 {
    1.0 / (p_floor * 2.0 * (delta0 + sigma) * log_span(sigma))
}

/// Lipschitz constant of the CDF between separated balls, `4 / (sigma log(1 + 1/sigma) P)`.
pub fn lipschitz(sigma: f64, p_floor: f64) -> f64 {
    4.0 / (sigma * log_span(sigma) * p_floor)
}

/// `min_x` of the untruncated mass of `[0,1]`, by quadrature of the density.
pub fn normalizer_floor(sigma: f64) -> f64 {
    let f = |x: f64| integrate_with_breaks(|y| raw_density(y, x, sigma), 0.0, 1.0, &[x], 1e-10);
    (0..=50).map(|k| f(k as f64 / 100.0)).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn closed_form_examples() {
        assert_eq!(offset_map(0.5, 0.3), 0.0);
        assert_eq!(inv_cdf(0.0, 0.2, 1.0), 1.0);
        assert!((offset_map(1.0, 0.2) - 1.0).abs() < 1e-15);
        assert!((normalizer(0.0, 1.0) - 0.5).abs() < 1e-15);
        assert!((raw_density(0.0, 0.0, 1.0) - 1.0 / (2.0 * LN_2)).abs() < 1e-15);
        assert!((density(0.0, 0.0, 1.0) - 1.0 / LN_2).abs() < 1e-15);
        assert!((lower_bound(1.0) - 1.0 / (4.0 * LN_2)).abs() < 1e-15);
        assert!((raw_density(0.7, 0.5, 0.1) - raw_density(0.3, 0.5, 0.1)).abs() < 1e-14);
    }

    #[test]
    fn offset_map_inverts_the_raw_cdf() {
        for sigma in [1e-3, 0.1, 1.0] {
            for k in 1..100 {
                let v = k as f64 / 100.0;
                let y = 0.5 + offset_map(v, sigma);
                if (0.0..=1.0).contains(&y) {
                    assert!((raw_cdf(y, 0.5, sigma) - v).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn extreme_uniforms_reach_the_interval_ends() {
        for sigma in [1e-3, 0.1, 1.0] {
            for x in [0.0, 0.25, 0.9, 1.0] {
                assert_eq!(inv_cdf(x, sigma, 0.0), 0.0);
                assert_eq!(inv_cdf(x, sigma, 1.0), 1.0);
                assert!(inv_cdf(x, sigma, 1e-15) < 1e-9);
                assert!(inv_cdf(x, sigma, 1.0 - 1e-15) > 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn densities_integrate_to_one() {
        for sigma in [1e-3, 1e-1, 1.0] {
            for x in [0.0, 0.3, 0.5, 1.0] {
                let m = integrate_with_breaks(|y| density(y, x, sigma), 0.0, 1.0, &[x], 1e-11);
                assert!((m - 1.0).abs() < 1e-8, "sigma={sigma} x={x}: {m}");
            }
        }
    }

    #[test]
    fn cdf_round_trips() {
        for sigma in [1e-3, 1e-1, 1.0] {
            for i in 0..=20 {
                for j in 0..=20 {
                    let (x, u) = (i as f64 / 20.0, j as f64 / 20.0);
                    let y = inv_cdf(x, sigma, u);
                    assert!((cdf(y, x, sigma) - u).abs() <= 1e-9, "sigma={sigma} x={x} u={u}");
                }
            }
        }
    }

    #[test]
    fn normalizer_floor_is_half_at_most() {
        for sigma in [1e-3, 0.1, 1.0] {
            let p = normalizer_floor(sigma);
            assert!((p - normalizer(0.0, sigma)).abs() < 1e-9);
            assert!(p >= 0.5 - 1e-12);
        }
    }
}
