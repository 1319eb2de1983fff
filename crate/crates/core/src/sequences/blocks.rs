use super::RetainedDigits;

/// `(k_n, r_n)` for an index `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockIndices {
    /// `b^{k_n - 1} <= n < b^{k_n}`.
    pub k_n: u32,
    /// `(r_n - 1) b^{dR+t} <= n < r_n b^{dR+t}`; `None` when `R = inf`.
    pub r_n: Option<u64>,
}

/// Number of base-`b` digits of `n`, i.e. the `k` with `b^{k-1} <= n < b^k`.
pub fn digit_count(n: u64, b: u32) -> u32 {
    assert!(b >= 2, "base must be at least 2");
    let mut k = 0;
    let mut m = n;
    while m > 0 {
        m /= b as u64;
        k += 1;
    }
    k
}

/// `b^{dR+t}`, or `None` when it exceeds `u128` or `R = inf`.
fn block_len(b: u32, d: usize, r: RetainedDigits, t: u32) -> Option<u128> {
    let r = r.finite()?;
    let exp = (d as u64).checked_mul(r as u64)?.checked_add(t as u64)?;
    (b as u128).checked_pow(u32::try_from(exp).ok()?)
}

pub fn block_indices(n: u64, b: u32, d: usize, r: RetainedDigits, t: u32) -> BlockIndices {
    assert!(n >= 1, "block indices are defined for n >= 1");
    let k_n = digit_count(n, b);
    let r_n = match (r, block_len(b, d, r, t)) {
        (RetainedDigits::All, _) => None,
        (_, Some(len)) => Some((n as u128 / len + 1) as u64),
        // the block is longer than any representable index
        (_, None) => Some(1),
    };
    BlockIndices { k_n, r_n }
}

/// `b^{k_n} ∧ r_n b^{dR+t}` as `u128`; with `R = inf` the second term is infinite.
fn candidate(n: u128, b: u32, len: Option<u128>) -> u128 {
    let mut pow = 1u128;
    while pow <= n {
        pow = pow.saturating_mul(b as u128);
    }
    match len {
        Some(len) => pow.min((n / len + 1).saturating_mul(len)),
        None => pow,
    }
}

/// Smallest boundary `k_{R,m}` strictly greater than `c`.
///
/// The candidate `n -> b^{k_n} ∧ r_n b^{dR+t}` is non-decreasing and exceeds
/// `n`, so the answer is the candidate at the smallest `n` whose two terms both
/// exceed `c`.
pub fn next_boundary(c: u64, b: u32, d: usize, r: RetainedDigits, t: u32) -> u64 {
    let c = c as u128;
    let len = block_len(b, d, r, t);
    // b^{k_n} > c  <=>  n >= b^{k_c - 1}
    let mut first_pow = 1u128;
    while first_pow.saturating_mul(b as u128) <= c {
        first_pow *= b as u128;
    }
    let from_pow = if c == 0 { 1 } else { first_pow };
    // r_n b^{dR+t} > c  <=>  n >= floor(c / len) * len
    let from_block = len.map_or(1, |len| (c / len) * len);
    let n = from_pow.max(from_block).max(1);
    u64::try_from(candidate(n, b, len)).unwrap_or(u64::MAX)
}

/// All `k_{R,m} <= limit` in ascending order, starting with `k_{R,0} = 1`.
///
/// With `R = inf` the block term is infinite and the boundaries are the powers of `b`.
pub fn krm_boundaries(b: u32, d: usize, r: RetainedDigits, t: u32, limit: u64) -> Vec<u64> {
    assert!(b >= 2, "base must be at least 2");
    let mut out = vec![1u64];
    loop {
        let last = *out.last().expect("non-empty");
        let next = next_boundary(last, b, d, r, t);
        if next > limit || next == last {
            break;
        }
        out.push(next);
    }
    out
}
