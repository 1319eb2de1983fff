/// Van der Corput radical inverse of `n` in base `b`: the digits of `n` mirrored
/// about the radix point.
///
/// Exact for base 2. Otherwise the mirrored digits form an integer numerator
/// over `b^k`, divided once, so the result is correctly rounded whenever `b^k`
/// fits in 64 bits.
pub fn radical_inverse(n: u64, b: u32) -> f64 {
    assert!(b >= 2, "base must be at least 2");
    if b == 2 && n >> 53 == 0 {
        // exact: reverse the bits and scale.
        return (n.reverse_bits() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    }
    radical_tail(n, b)
}

fn radical_tail(n: u64, b: u32) -> f64 {
    let bb = b as u64;
    let (mut num, mut den, mut m) = (0u64, 1u64, n);
    while m > 0 {
        match den.checked_mul(bb).and_then(|d| Some((num.checked_mul(bb)?.checked_add(m % bb)?, d))) {
            Some((nn, dd)) => (num, den) = (nn, dd),
            None => return radical_accumulate(n, b),
        }
        m /= bb;
    }
    num as f64 / den as f64
}

fn radical_accumulate(mut n: u64, b: u32) -> f64 {
    let b = b as u64;
    let inv = 1.0 / b as f64;
    let mut scale = inv;
    let mut out = 0.0;
    while n > 0 {
        out += (n % b) as f64 * scale;
        n /= b;
        scale *= inv;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent oracle: render n in base b, reverse the digit string.
    fn digit_reversal(n: u64, b: u32) -> f64 {
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % b as u64) as u32);
            m /= b as u64;
        }
        digits
            .iter()
            .enumerate()
            .map(|(k, &a)| a as f64 * (b as f64).powi(-(k as i32 + 1)))
            .sum()
    }

    #[test]
    fn spec_values() {
        assert_eq!(radical_inverse(0, 2), 0.0);
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(6, 2), 0.375);
    }

    #[test]
    fn matches_digit_reversal() {
        for b in [2u32, 3, 5, 7] {
            for n in 0..2000u64 {
                let got = radical_inverse(n, b);
                let want = digit_reversal(n, b);
                assert!((got - want).abs() < 1e-14, "b={b} n={n}: {got} vs {want}");
                assert!((0.0..1.0).contains(&got));
                assert_eq!(got == 0.0, n == 0);
            }
        }
    }

    #[test]
    fn base2_large_indices() {
        let n = (1u64 << 53) + 3;
        let want = digit_reversal(n, 2);
        assert!((radical_inverse(n, 2) - want).abs() < 1e-15);
    }
}
