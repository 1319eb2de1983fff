use std::path::Path;

use crate::error::{Error, Result};

/// Bits of precision carried by every coordinate; also the index capacity.
pub const DIGIT_BITS: u32 = 53;

const SHIPPED: &str = include_str!("../../data/sobol_directions.txt");

/// Direction numbers of one base-2 digital coordinate.
///
/// `v[k]` holds the `k+1`-th column of the generating matrix, left-aligned in a
/// 53-bit integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionNumbers {
    /// Degree of the primitive polynomial (1 for the identity coordinate).
    pub degree: u32,
    /// Interior polynomial coefficients, most significant first.
    pub coefficients: u32,
    /// Initial direction integers `m_1..m_degree`.
    pub initial: Vec<u64>,
    v: Vec<u64>,
}

impl DirectionNumbers {
    /// The identity coordinate: van der Corput in base 2.
    pub fn identity() -> Self {
        let v = (0..DIGIT_BITS).map(|k| 1u64 << (DIGIT_BITS - 1 - k)).collect();
        DirectionNumbers { degree: 1, coefficients: 0, initial: vec![1], v }
    }

    /// Builds the full column set from a primitive polynomial of degree `degree`
    /// with interior coefficients `coefficients` and initial integers `initial`.
    pub fn new(degree: u32, coefficients: u32, initial: Vec<u64>) -> Result<Self> {
        let s = degree as usize;
        if s == 0 || s > DIGIT_BITS as usize {
            return Err(Error::InvalidParameter(format!("polynomial degree {degree} out of range")));
        }
        if initial.len() != s {
            return Err(Error::InvalidParameter(format!(
                "expected {s} initial direction integers, got {}",
                initial.len()
            )));
        }
        if degree > 1 && coefficients >> (degree - 1) != 0 {
            return Err(Error::InvalidParameter(format!(
                "coefficient word {coefficients} has more than {} bits",
                degree - 1
            )));
        }
        for (k, &m) in initial.iter().enumerate() {
            if m % 2 == 0 || m >= 1u64 << (k + 1) {
                return Err(Error::InvalidParameter(format!(
                    "m_{} = {m} must be odd and below 2^{}",
                    k + 1,
                    k + 1
                )));
            }
        }
        let bits = DIGIT_BITS as usize;
        let mut v = vec![0u64; bits];
        for k in 0..s.min(bits) {
            v[k] = initial[k] << (bits - 1 - k);
        }
        for k in s..bits {
            let mut x = v[k - s] ^ (v[k - s] >> s);
            for j in 1..s {
                if (coefficients >> (s - 1 - j)) & 1 == 1 {
                    x ^= v[k - j];
                }
            }
            v[k] = x;
        }
        Ok(DirectionNumbers { degree, coefficients, initial, v })
    }

    /// The 53-bit integer numerator of coordinate `n`.
    fn digits(&self, mut n: u64) -> u64 {
        let mut acc = 0u64;
        let mut k = 0;
        while n != 0 {
            if n & 1 == 1 {
                acc ^= self.v[k];
            }
            n >>= 1;
            k += 1;
        }
        acc
    }
}

/// Generating data for a base-2 digital `(t,s)`-sequence.
///
/// Points are produced in natural (not Gray-code) order so that the first
/// coordinate of the shipped table is the van der Corput sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitTable {
    dims: Vec<DirectionNumbers>,
}

impl DigitTable {
    pub fn new(dims: Vec<DirectionNumbers>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidParameter("digit table needs at least one dimension".into()));
        }
        Ok(DigitTable { dims })
    }

    /// The shipped table: identity coordinate followed by 20 Sobol' coordinates.
    pub fn sobol() -> Self {
        Self::parse(SHIPPED).expect("shipped direction numbers are well formed")
    }

    /// The first `s` coordinates of [`DigitTable::sobol`].
    pub fn sobol_dims(s: usize) -> Result<Self> {
        Self::sobol().select(0..s)
    }

    /// Parses a direction-number file. Each data line holds the dimension index,
    /// the polynomial degree, the interior coefficient word, then the initial
    /// direction integers. Lines starting with a non-digit are headers or
    /// comments. The identity coordinate is implicit and always comes first.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dims = vec![DirectionNumbers::identity()];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || !line.starts_with(|c: char| c.is_ascii_digit()) {
                continue;
            }
            let fail = |reason: String| Error::TableFormat { line: lineno + 1, reason };
            let fields = line
                .split_whitespace()
                .map(|f| f.parse::<u64>().map_err(|e| fail(format!("{f:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if fields.len() < 4 {
                return Err(fail("need dimension, degree, coefficients and direction integers".into()));
            }
            let expected_dim = dims.len() as u64 + 1;
            if fields[0] != expected_dim {
                return Err(fail(format!("expected dimension {expected_dim}, found {}", fields[0])));
            }
            let degree = u32::try_from(fields[1]).map_err(|_| fail("degree too large".into()))?;
            let coeffs = u32::try_from(fields[2]).map_err(|_| fail("coefficient word too large".into()))?;
            let dn = DirectionNumbers::new(degree, coeffs, fields[3..].to_vec())
                .map_err(|e| fail(e.to_string()))?;
            dims.push(dn);
        }
        DigitTable::new(dims)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// A table made of a contiguous range of this table's coordinates.
    pub fn select(&self, range: std::ops::Range<usize>) -> Result<Self> {
        if range.start >= range.end || range.end > self.dims.len() {
            return Err(Error::InvalidParameter(format!(
                "coordinate range {range:?} not available in a {}-dimensional table",
                self.dims.len()
            )));
        }
        DigitTable::new(self.dims[range].to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn coordinates(&self) -> &[DirectionNumbers] {
        &self.dims
    }

    /// Quality parameter implied by the polynomial degrees, `sum(deg - 1)`.
    pub fn declared_t(&self) -> u32 {
        self.dims.iter().map(|d| d.degree - 1).sum()
    }

    /// The `n`-th point of the deterministic sequence, written into `out`.
    pub fn point_into(&self, n: u64, out: &mut [f64]) -> Result<()> {
        if n >> DIGIT_BITS != 0 {
            return Err(Error::DigitOverflow { index: n, bits: DIGIT_BITS });
        }
        debug_assert_eq!(out.len(), self.dims.len());
        let scale = 1.0 / (1u64 << DIGIT_BITS) as f64;
        for (o, dn) in out.iter_mut().zip(&self.dims) {
            *o = dn.digits(n) as f64 * scale;
        }
        Ok(())
    }

    /// The `n`-th point of the deterministic sequence.
    pub fn ts_point(&self, n: u64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dims.len()];
        self.point_into(n, &mut out)?;
        Ok(out)
    }
}
