use crate::error::{Error, Result};

/// Parameters of a `(t,m,s)`-net in base `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NetParams {
    pub b: u32,
    pub t: u32,
    pub m: u32,
    pub s: usize,
}

impl NetParams {
    pub fn new(b: u32, t: u32, m: u32, s: usize) -> Result<Self> {
        if b < 2 {
            return Err(Error::InvalidParameter(format!("base {b} < 2")));
        }
        if t > m {
            return Err(Error::InvalidParameter(format!("t = {t} exceeds m = {m}")));
        }
        if s == 0 {
            return Err(Error::InvalidParameter("dimension s must be at least 1".into()));
        }
        let p = NetParams { b, t, m, s };
        p.points()?;
        Ok(p)
    }

    /// `b^m`.
    pub fn points(&self) -> Result<usize> {
        (self.b as usize)
            .checked_pow(self.m)
            .ok_or_else(|| Error::InvalidParameter(format!("{}^{} points overflow", self.b, self.m)))
    }
}

/// An elementary box that holds the wrong number of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolatingBox {
    /// Per-coordinate resolution `d_j`: the box side is `b^{-d_j}`.
    pub shape: Vec<u32>,
    /// Per-coordinate box offset `a_j`.
    pub corner: Vec<u64>,
    pub count: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetVerdict {
    Pass,
    Fail(ViolatingBox),
}

impl NetVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, NetVerdict::Pass)
    }
}

/// All `(d_1, ..., d_s)` with non-negative entries summing to `total`,
/// in lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=left {
            prefix.push(first);
            rec(left - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Checks that every `b`-ary box of volume `b^{t-m}` holds exactly `b^t` points,
/// enumerating every shape `d_1 + ... + d_s = m - t`. Box membership is decided
/// on integer digits; in base 2 this is exact.
pub fn verify_net<P: AsRef<[f64]>>(points: &[P], params: &NetParams) -> Result<NetVerdict> {
    let n_points = params.points()?;
    if points.len() != n_points {
        return Err(Error::InvalidInput(format!(
            "a ({},{},{})-net in base {} has {n_points} points, got {}",
            params.t,
            params.m,
            params.s,
            params.b,
            points.len()
        )));
    }
    let depth = params.m - params.t;
    let b = params.b as u64;
    let resolution = b
        .checked_pow(depth)
        .filter(|&r| r <= 1u64 << 53)
        .ok_or_else(|| Error::InvalidParameter(format!("box resolution {}^{depth} too fine", params.b)))?;

    // digits[i * s + j] = floor(x_ij * b^depth); coarser boxes come from integer division.
    // For non-binary bases the points themselves carry rounding error, so a
    // scaled coordinate within a few ulps below an integer counts as that integer.
    let slack = if params.b.is_power_of_two() { 0.0 } else { 8.0 * f64::EPSILON * resolution as f64 };
    let mut digits = Vec::with_capacity(n_points * params.s);
    for (i, p) in points.iter().enumerate() {
        let p = p.as_ref();
        if p.len() != params.s {
            return Err(Error::InvalidInput(format!("point {i} has {} coordinates, expected {}", p.len(), params.s)));
        }
        for &x in p {
            if !(0.0..1.0).contains(&x) {
                return Err(Error::InvalidInput(format!("point {i} has coordinate {x} outside [0,1)")));
            }
            digits.push(((x * resolution as f64 + slack).floor() as u64).min(resolution - 1));
        }
    }

    let expected = (params.b as usize).pow(params.t);
    let n_boxes = resolution as usize;
    let mut counts = vec![0usize; n_boxes];
    let divisors: Vec<u64> = (0..=depth).map(|d| b.pow(depth - d)).collect();
    for shape in compositions(depth, params.s) {
        counts.iter_mut().for_each(|c| *c = 0);
        for row in digits.chunks_exact(params.s) {
            // mixed-radix box index; total radix is b^depth.
            let mut idx = 0u64;
            for (&q, &dj) in row.iter().zip(&shape) {
                idx = idx * b.pow(dj) + q / divisors[dj as usize];
            }
            counts[idx as usize] += 1;
        }
        if let Some(pos) = counts.iter().position(|&c| c != expected) {
            let mut corner = vec![0u64; params.s];
            let mut rem = pos as u64;
            for j in (0..params.s).rev() {
                let radix = b.pow(shape[j]);
                corner[j] = rem % radix;
                rem /= radix;
            }
            return Ok(NetVerdict::Fail(ViolatingBox { shape, corner, count: counts[pos], expected }));
        }
    }
    Ok(NetVerdict::Pass)
}

/// Smallest `t` for which `points` form a `(t,m,s)`-net.
pub fn exact_t<P: AsRef<[f64]>>(points: &[P], b: u32, m: u32, s: usize) -> Result<u32> {
    for t in 0..=m {
        if verify_net(points, &NetParams::new(b, t, m, s)?)?.is_pass() {
            return Ok(t);
        }
    }
    unreachable!("every point set of size b^m is a (m,m,s)-net")
}
