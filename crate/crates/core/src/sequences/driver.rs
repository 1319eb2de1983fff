use super::{DigitTable, NoiseSource, RetainedDigits, DIGIT_BITS};
use crate::error::{Error, Result};
use crate::sequences::radical_inverse;

/// Keeps the first `R` base-`b` digits of each coordinate of `u_inf` and
/// replaces the remainder by `b^{-R} * noise`, writing into `out`.
///
/// `R = 0` returns the noise and `R = inf` returns `u_inf` untouched.
pub fn truncate_randomize(u_inf: &[f64], r: RetainedDigits, b: u32, noise: &[f64], out: &mut [f64]) {
    assert_eq!(u_inf.len(), out.len());
    match r {
        RetainedDigits::All => out.copy_from_slice(u_inf),
        RetainedDigits::Finite(0) => {
            assert_eq!(noise.len(), out.len());
            out.copy_from_slice(noise);
        }
        RetainedDigits::Finite(r) => {
            assert_eq!(noise.len(), out.len());
            for ((o, &u), &w) in out.iter_mut().zip(u_inf).zip(noise) {
                *o = truncate_coord(u, r, b, w);
            }
        }
    }
}

pub(crate) fn truncate_coord(u: f64, r: u32, b: u32, w: f64) -> f64 {
    if r == 0 {
        return w;
    }
    let scale = (b as f64).powi(r as i32);
    let prefix = (u * scale).floor() / scale;
    let ceiling = prefix + 1.0 / scale;
    let v = prefix + w / scale;
    // rounding must not push the value into the next digit cell
    if v >= ceiling {
        ceiling.next_down()
    } else {
        v
    }
}

/// A driver point `u in [0,1)^{d+1}`: `d` proposal coordinates and one
/// acceptance coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct DriverPoint {
    pub proposal: Vec<f64>,
    pub accept: f64,
}

impl DriverPoint {
    pub fn zeros(d: usize) -> Self {
        DriverPoint { proposal: vec![0.0; d], accept: 0.0 }
    }
}

/// Parameters of a `(t,d)_R` driver in base `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DriverConfig {
    pub base: u32,
    pub dim: usize,
    /// Quality parameter used for block bookkeeping; must not undercut the
    /// table's declared value.
    pub t: u32,
    pub retained: RetainedDigits,
    /// Ignored when `retained` is `All`.
    pub seed: u64,
}

impl DriverConfig {
    /// Base-2 configuration over the shipped table, with its declared `t`.
    pub fn new(dim: usize, retained: RetainedDigits, seed: u64) -> Result<Self> {
        let table = SequenceDriver::proposal_table(dim)?;
        Ok(DriverConfig { base: 2, dim, t: table.declared_t(), retained, seed })
    }
}

/// Stateful generator of driver points for indices `1, 2, 3, ...`.
///
/// Proposal coordinates come from coordinates `2..=d+1` of the shipped digit
/// table and the acceptance coordinate from the van der Corput sequence, so
/// the deterministic part is a permuted `(d+1)`-dimensional digital sequence.
#[derive(Clone, Debug)]
pub struct SequenceDriver {
    config: DriverConfig,
    table: DigitTable,
    noise: NoiseSource,
    next_index: u64,
    scratch_inf: Vec<f64>,
    scratch_noise: Vec<f64>,
}

impl SequenceDriver {
    /// Digit table for the proposal coordinates of a `dim`-dimensional driver.
    pub fn proposal_table(dim: usize) -> Result<DigitTable> {
        let full = DigitTable::sobol();
        if dim == 0 || dim >= full.dim() {
            return Err(Error::InvalidParameter(format!(
                "driver dimension must be in 1..={}, got {dim}",
                full.dim() - 1
            )));
        }
        full.select(1..dim + 1)
    }

    pub fn new(config: DriverConfig) -> Result<Self> {
        let table = Self::proposal_table(config.dim)?;
        Self::with_table(config, table)
    }

    /// Driver over a caller-supplied proposal table (one coordinate per state dimension).
    pub fn with_table(config: DriverConfig, table: DigitTable) -> Result<Self> {
        if config.base != 2 {
            return Err(Error::InvalidParameter(format!(
                "digital tables are base 2; base {} is not supported",
                config.base
            )));
        }
        if table.dim() != config.dim {
            return Err(Error::InvalidParameter(format!(
                "table has {} coordinates, driver dimension is {}",
                table.dim(),
                config.dim
            )));
        }
        if config.t < table.declared_t() {
            return Err(Error::InvalidParameter(format!(
                "configured t = {} is below the table's declared t = {}",
                config.t,
                table.declared_t()
            )));
        }
        if let RetainedDigits::Finite(r) = config.retained {
            if r > DIGIT_BITS {
                return Err(Error::InvalidParameter(format!(
                    "R = {r} exceeds the {DIGIT_BITS}-digit expansion; use \"inf\""
                )));
            }
        }
        let d = config.dim;
        Ok(SequenceDriver {
            config,
            table,
            noise: NoiseSource::new(config.seed),
            next_index: 1,
            scratch_inf: vec![0.0; d + 1],
            scratch_noise: vec![0.0; d + 1],
        })
    }

    pub fn config(&self) -> &DriverConfig {
        &self.config
    }

    pub fn table(&self) -> &DigitTable {
        &self.table
    }

    /// Index of the point the next call to [`SequenceDriver::next_point`] returns.
    pub fn index(&self) -> u64 {
        self.next_index
    }

    /// The deterministic point `u_inf^n` (proposal coordinates, then acceptance).
    pub fn deterministic_point(&self, n: u64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.config.dim + 1];
        self.table.point_into(n, &mut out[..self.config.dim])?;
        out[self.config.dim] = radical_inverse(n, 2);
        Ok(out)
    }

    /// The point with index `n`, independent of the driver's position.
    pub fn point_at(&mut self, n: u64, out: &mut DriverPoint) -> Result<()> {
        let d = self.config.dim;
        self.table.point_into(n, &mut self.scratch_inf[..d])?;
        self.scratch_inf[d] = radical_inverse(n, 2);
        let r = self.config.retained;
        if !r.is_deterministic() {
            self.noise.fill(n, &mut self.scratch_noise);
        }
        out.proposal.resize(d, 0.0);
        truncate_randomize(&self.scratch_inf[..d], r, 2, &self.scratch_noise[..d], &mut out.proposal);
        let mut acc = [0.0];
        truncate_randomize(&self.scratch_inf[d..], r, 2, &self.scratch_noise[d..], &mut acc);
        out.accept = acc[0];
        Ok(())
    }

    pub fn next_into(&mut self, out: &mut DriverPoint) -> Result<()> {
        self.point_at(self.next_index, out)?;
        self.next_index += 1;
        Ok(())
    }

    pub fn next_point(&mut self) -> Result<DriverPoint> {
        let mut p = DriverPoint::zeros(self.config.dim);
        self.next_into(&mut p)?;
        Ok(p)
    }

    /// Raw noise keyed by `(seed, n, i)`, `i` ranging over `0..=d`.
    pub fn noise(&mut self, n: u64) -> Vec<f64> {
        let mut out = vec![0.0; self.config.dim + 1];
        self.noise.fill(n, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_examples() {
        let mut out = [0.0];
        truncate_randomize(&[0.375], RetainedDigits::Finite(0), 2, &[0.3], &mut out);
        assert_eq!(out[0], 0.3);
        truncate_randomize(&[0.375], RetainedDigits::Finite(1), 2, &[0.3], &mut out);
        assert!((out[0] - 0.15).abs() < 1e-15);
        truncate_randomize(&[0.375], RetainedDigits::Finite(2), 2, &[0.3], &mut out);
        assert!((out[0] - 0.325).abs() < 1e-15);
        truncate_randomize(&[0.375], RetainedDigits::All, 2, &[0.3], &mut out);
        assert_eq!(out[0], 0.375);
    }

    #[test]
    fn truncation_never_leaves_the_digit_cell() {
        let w = 1.0f64.next_down();
        for r in [1u32, 20, 52, 53] {
            let u = 1.0f64.next_down();
            let v = truncate_coord(u, r, 2, w);
            assert!(v < 1.0);
            let s = 2f64.powi(r as i32);
            assert_eq!((v * s).floor(), (u * s).floor(), "r={r}");
        }
    }

    #[test]
    fn deterministic_drivers_agree() {
        let cfg = DriverConfig::new(3, RetainedDigits::All, 1).unwrap();
        let mut a = SequenceDriver::new(cfg).unwrap();
        let mut b = SequenceDriver::new(DriverConfig { seed: 99, ..cfg }).unwrap();
        for _ in 0..500 {
            assert_eq!(a.next_point().unwrap(), b.next_point().unwrap());
        }
    }

    #[test]
    fn r_zero_is_the_noise_stream() {
        let cfg = DriverConfig::new(2, RetainedDigits::Finite(0), 5).unwrap();
        let mut drv = SequenceDriver::new(cfg).unwrap();
        let mut probe = SequenceDriver::new(cfg).unwrap();
        for n in 1..200 {
            let p = drv.next_point().unwrap();
            let w = probe.noise(n);
            assert_eq!(p.proposal, w[..2]);
            assert_eq!(p.accept, w[2]);
        }
    }

    #[test]
    fn r_one_keeps_the_half_interval() {
        let cfg = DriverConfig::new(2, RetainedDigits::Finite(1), 11).unwrap();
        let mut drv = SequenceDriver::new(cfg).unwrap();
        for n in 1..2000 {
            let u_inf = drv.deterministic_point(n).unwrap();
            let p = drv.next_point().unwrap();
            let coords = p.proposal.iter().chain(std::iter::once(&p.accept));
            for (&x, &y) in coords.zip(&u_inf) {
                assert_eq!((x * 2.0).floor(), (y * 2.0).floor());
            }
        }
    }

    #[test]
    fn starts_at_index_one() {
        let cfg = DriverConfig::new(1, RetainedDigits::All, 0).unwrap();
        let mut drv = SequenceDriver::new(cfg).unwrap();
        assert_eq!(drv.index(), 1);
        let p = drv.next_point().unwrap();
        assert_eq!(p.accept, 0.5);
        assert_eq!(drv.index(), 2);
        // proposal and acceptance coordinates come from different generators
        let mut same = 0;
        for _ in 0..64 {
            let p = drv.next_point().unwrap();
            same += usize::from(p.proposal[0] == p.accept);
        }
        assert!(same < 64);
    }

    #[test]
    fn rejects_bad_configs() {
        let ok = DriverConfig::new(2, RetainedDigits::Finite(3), 0).unwrap();
        assert!(SequenceDriver::new(DriverConfig { base: 3, ..ok }).is_err());
        assert!(SequenceDriver::new(DriverConfig { retained: RetainedDigits::Finite(54), ..ok }).is_err());
        assert!(DriverConfig::new(0, RetainedDigits::All, 0).is_err());
        assert!(DriverConfig::new(21, RetainedDigits::All, 0).is_err());
        let low_t = DriverConfig { dim: 3, t: 0, ..ok };
        assert!(SequenceDriver::new(low_t).is_err());
    }

    #[test]
    fn overflow_surfaces_as_error() {
        let cfg = DriverConfig::new(1, RetainedDigits::All, 0).unwrap();
        let mut drv = SequenceDriver::new(cfg).unwrap();
        let mut p = DriverPoint::zeros(1);
        assert!(matches!(drv.point_at(1 << 53, &mut p), Err(Error::DigitOverflow { .. })));
    }
}
