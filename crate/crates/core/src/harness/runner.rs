use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;

use super::config::ExperimentConfig;
use crate::annealer::{hypothesis_warnings, Annealer, ChainState, CoolingSchedule, StepRecord};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::objectives::Objective;
use crate::sequences::{DriverConfig, SequenceDriver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Concurrent replications; `0` lets the thread pool decide.
    pub workers: usize,
    /// Keep every `stride`-th row of the trace (checkpoints and the last row are always kept).
    pub stride: u64,
}

impl RunOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        RunOptions { out_dir: out_dir.into(), workers: 0, stride: 1 }
    }
}

/// State of one replication at a checkpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckpointStat {
    pub n: u64,
    pub best_value: f64,
    pub accept_count: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplicationResult {
    pub replication: u32,
    pub seed: u64,
    pub checkpoints: Vec<CheckpointStat>,
    pub last: ChainState,
}

/// Quantiles of the gap to the optimum across replications at one checkpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckpointSummary {
    pub n: u64,
    pub gap_min: f64,
    pub gap_q25: f64,
    pub gap_median: f64,
    pub gap_q75: f64,
    pub gap_max: f64,
    pub acceptance_rate: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub replications: Vec<ReplicationResult>,
    pub summary: Vec<CheckpointSummary>,
    pub warnings: Vec<String>,
    pub csv_paths: Vec<PathBuf>,
    pub wall_seconds: f64,
}

/// Nearest-rank quantile: the `ceil(p N)`-th smallest value.
pub fn nearest_rank(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let rank = (p * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A validated experiment, ready to run replications.
pub struct Experiment {
    config: ExperimentConfig,
    objective: Objective,
    kernel: KernelSpec,
    cooling: CoolingSchedule,
    driver: DriverConfig,
    x0: Vec<f64>,
    checkpoints: Vec<u64>,
}

impl Experiment {
    pub fn new(config: &ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let config = config.effective()?;
        let t = config.t.expect("effective config has t");
        let driver = DriverConfig { base: config.base, dim: config.dim, t, retained: config.retained, seed: config.seed };
        Ok(Experiment {
            objective: config.objective()?,
            kernel: config.kernel_spec()?,
            cooling: config.cooling,
            driver,
            x0: config.x0.clone().expect("effective config has x0"),
            checkpoints: config.checkpoint_list(),
            config,
        })
    }

    /// The config with defaults filled in.
    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn warnings(&self) -> Vec<String> {
        hypothesis_warnings(&self.kernel, &self.cooling, self.config.retained)
    }

    pub fn csv_header(&self) -> String {
        let mut h = String::from("n");
        for i in 1..=self.config.dim {
            write!(h, ",x_{i}").unwrap();
        }
        h.push_str(",value,best_value,accepted,A_n,T_n,sigma_eff,kernel_index\n");
        h
    }

    /// Runs replication `r` with seed `seed + r`, writing its trace into `csv`.
    pub fn run_replication(&self, r: u32, stride: u64, csv: &mut String) -> Result<ReplicationResult> {
        let seed = self.config.seed.wrapping_add(r as u64);
        let mut driver = SequenceDriver::new(DriverConfig { seed, ..self.driver })?;
        let annealer = Annealer::new(&self.kernel, &self.cooling, &self.objective)?;
        let n_total = self.config.iterations;
        let stride = stride.max(1);

        csv.push_str(&self.csv_header());
        let state = annealer.init(&self.x0)?;
        csv.push('0');
        for v in &state.x {
            write!(csv, ",{}", fmt_float(*v)).unwrap();
        }
        writeln!(csv, ",{},{},,,,,", fmt_float(state.value), fmt_float(state.best_value)).unwrap();

        let mut stats = Vec::with_capacity(self.checkpoints.len());
        let mut next_cp = self.checkpoints.iter().copied().peekable();
        let mut state = state;
        annealer.advance_with(&mut state, n_total, &mut driver, |rec: &StepRecord, st: &ChainState| {
            let is_cp = next_cp.peek() == Some(&rec.n);
            if is_cp {
                next_cp.next();
                stats.push(CheckpointStat { n: rec.n, best_value: st.best_value, accept_count: st.accept_count });
            }
            if is_cp || rec.n % stride == 0 || rec.n == n_total {
                write_row(csv, rec);
            }
        })?;
        Ok(ReplicationResult { replication: r, seed, checkpoints: stats, last: state })
    }

    pub fn summarize(&self, results: &[ReplicationResult]) -> Vec<CheckpointSummary> {
        let best = self.objective.max_value();
        self.checkpoints
            .iter()
            .enumerate()
            .map(|(j, &n)| {
                let mut gaps: Vec<f64> = results.iter().map(|r| best - r.checkpoints[j].best_value).collect();
                gaps.sort_by(f64::total_cmp);
                let mut rates: Vec<f64> =
                    results.iter().map(|r| r.checkpoints[j].accept_count as f64 / n as f64).collect();
                rates.sort_by(f64::total_cmp);
                CheckpointSummary {
                    n,
                    gap_min: gaps[0],
                    gap_q25: nearest_rank(&gaps, 0.25),
                    gap_median: nearest_rank(&gaps, 0.5),
                    gap_q75: nearest_rank(&gaps, 0.75),
                    gap_max: gaps[gaps.len() - 1],
                    acceptance_rate: nearest_rank(&rates, 0.5),
                }
            })
            .collect()
    }

    /// Key-value summary text.
    pub fn summary_text(&self, summary: &[CheckpointSummary], warnings: &[String]) -> String {
        let c = &self.config;
        let mut s = String::new();
        writeln!(s, "objective = {}", c.objective).unwrap();
        writeln!(s, "dim = {}", c.dim).unwrap();
        writeln!(s, "kernel = {}", self.kernel.family()).unwrap();
        writeln!(s, "retained = {}", c.retained).unwrap();
        writeln!(s, "cooling = {}", c.cooling).unwrap();
        writeln!(s, "iterations = {}", c.iterations).unwrap();
        writeln!(s, "replications = {}", c.replications).unwrap();
        writeln!(s, "seed = {}", c.seed).unwrap();
        writeln!(s, "max_value = {}", fmt_float(self.objective.max_value())).unwrap();
        writeln!(s, "quantile_rule = nearest-rank").unwrap();
        for w in warnings {
            writeln!(s, "warning = {w}").unwrap();
        }
        for cp in summary {
            let p = format!("checkpoint.{}", cp.n);
            for (k, v) in [
                ("gap_min", cp.gap_min),
                ("gap_q25", cp.gap_q25),
                ("gap_median", cp.gap_median),
                ("gap_q75", cp.gap_q75),
                ("gap_max", cp.gap_max),
                ("acceptance_rate_median", cp.acceptance_rate),
            ] {
                writeln!(s, "{p}.{k} = {}", fmt_float(v)).unwrap();
            }
        }
        s
    }

    /// Runs all replications in memory, without writing files.
    pub fn run_in_memory(&self, workers: usize) -> Result<Vec<ReplicationResult>> {
        let pool = build_pool(workers)?;
        pool.install(|| {
            (0..self.config.replications)
                .into_par_iter()
                .map(|r| {
                    let mut sink = String::new();
                    self.run_replication(r, u64::MAX, &mut sink)
                })
                .collect()
        })
    }

    /// Runs every replication and writes `config.json`, `rep_XXXX.csv` and `summary.txt` into the output directory.
    pub fn run(&self, opts: &RunOptions) -> Result<RunReport> {
        let start = Instant::now();
        let dir = &opts.out_dir;
        fs::create_dir_all(dir)?;
        fs::write(dir.join("config.json"), self.config.to_json())?;
        let warnings = self.warnings();
        let pool = build_pool(opts.workers)?;
        let reps = self.config.replications;

        // Workers hand finished traces to a single writer.
        let (tx, rx) = mpsc::sync_channel::<(u32, String)>(pool.current_num_threads().max(1));
        let (results, written) = std::thread::scope(|scope| {
            let writer = scope.spawn(move || -> Result<Vec<PathBuf>> {
                let mut paths = vec![PathBuf::new(); reps as usize];
                for (r, csv) in rx {
                    let p = csv_path(dir, r);
                    fs::write(&p, csv)?;
                    paths[r as usize] = p;
                }
                Ok(paths)
            });
            let results: Result<Vec<ReplicationResult>> = pool.install(|| {
                (0..reps)
                    .into_par_iter()
                    .map_with(tx, |tx, r| {
                        let mut csv = String::new();
                        let res = self.run_replication(r, opts.stride, &mut csv)?;
                        tx.send((r, csv)).map_err(|_| Error::Io(std::io::Error::other("trace writer stopped")))?;
                        Ok(res)
                    })
                    .collect()
            });
            (results, writer.join().expect("trace writer panicked"))
        });
        let results = results?;
        let csv_paths = written?;
        let summary = self.summarize(&results);
        fs::write(dir.join("summary.txt"), self.summary_text(&summary, &warnings))?;
        Ok(RunReport {
            replications: results,
            summary,
            warnings,
            csv_paths,
            wall_seconds: start.elapsed().as_secs_f64(),
        })
    }
}

pub fn csv_path(dir: &Path, r: u32) -> PathBuf {
    dir.join(format!("rep_{r:04}.csv"))
}

fn write_row(csv: &mut String, rec: &StepRecord) {
    write!(csv, "{}", rec.n).unwrap();
    for v in &rec.x {
        write!(csv, ",{}", fmt_float(*v)).unwrap();
    }
    writeln!(
        csv,
        ",{},{},{},{},{},{},{}",
        fmt_float(rec.value),
        fmt_float(rec.best_value),
        rec.accepted as u8,
        fmt_float(rec.accept_prob),
        fmt_float(rec.temperature),
        fmt_float(rec.sigma_eff),
        rec.kernel_index
    )
    .unwrap();
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_rank_rule() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(nearest_rank(&v, 0.5), 3.0);
        assert_eq!(nearest_rank(&v, 0.25), 2.0);
        assert_eq!(nearest_rank(&v, 0.0), 1.0);
        assert_eq!(nearest_rank(&v, 1.0), 5.0);
        assert_eq!(nearest_rank(&[1.0, 2.0, 3.0, 4.0], 0.5), 2.0);
    }

    fn experiment(iterations: u64, retained: &str, reps: u32) -> Experiment {
        let text = format!(
            r#"{{"objective": "multicos", "dim": 2, "kernel": {{"family": "student-t", "dof": 1}},
                "schedule": {{"family": "power", "sigma0": 1.0, "beta": 0.5}}, "retained": {retained},
                "cooling": {{"family": "power", "t0": 0.1, "a": 2.0}}, "iterations": {iterations},
                "replications": {reps}, "checkpoints": [10, 100]}}"#
        );
        Experiment::new(&ExperimentConfig::from_json(&text).unwrap()).unwrap()
    }

    #[test]
    fn trace_rows_and_columns() {
        let e = experiment(100, "3", 1);
        let mut csv = String::new();
        let res = e.run_replication(0, 1, &mut csv).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,x_1,x_2,value,best_value,accepted,A_n,T_n,sigma_eff,kernel_index");
        assert_eq!(lines.len(), 102);
        assert!(lines[1].starts_with("0,5.0000000000000000e-1,"));
        assert!(lines[1].ends_with(",,,,,"));
        assert_eq!(lines[101].split(',').count(), 10);
        assert_eq!(res.checkpoints.iter().map(|c| c.n).collect::<Vec<_>>(), vec![10, 100]);
    }

    #[test]
    fn stride_keeps_checkpoints_and_the_last_row() {
        let e = experiment(95, "3", 1);
        let mut csv = String::new();
        e.run_replication(0, 40, &mut csv).unwrap();
        let ns: Vec<&str> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(ns, vec!["0", "10", "40", "80", "95"]);
    }

    #[test]
    fn replications_use_their_own_seeds() {
        let e = experiment(200, "2", 2);
        let (mut a, mut b) = (String::new(), String::new());
        let ra = e.run_replication(0, 1, &mut a).unwrap();
        let rb = e.run_replication(1, 1, &mut b).unwrap();
        assert_eq!((ra.seed, rb.seed), (0, 1));
        assert_ne!(a, b);
        let mut again = String::new();
        e.run_replication(0, 1, &mut again).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn summary_matches_the_replications() {
        let e = experiment(100, "0", 3);
        let res = e.run_in_memory(2).unwrap();
        let s = e.summarize(&res);
        let mut gaps: Vec<f64> = res.iter().map(|r| -r.checkpoints[1].best_value).collect();
        gaps.sort_by(f64::total_cmp);
        assert_eq!(s[1].gap_median, gaps[1]);
        assert!(s.iter().all(|c| c.gap_min <= c.gap_median && c.gap_median <= c.gap_max));
    }
}
