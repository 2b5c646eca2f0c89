//! Monte Carlo over flat-Dirichlet sources.
//!
//! Every sample owns an RNG stream keyed by `(seed, n, index)`, so a report
//! depends only on its configuration and not on scheduling or thread count.
//! Samples are normalized unit-mean exponentials; the circle-point sampler
//! is not provided.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coding::huffman;
use crate::error::{Error, Result};
use crate::families::{classify_n4, N4Class};
use crate::kraft::{leaf_condition, subset_certificate, Method, Status, SUBSET_GUARD};
use crate::model::{Source, DEFAULT_EPSILON};

/// Header of the CSV report.
pub const CSV_HEADER: &str = "n,samples,flagged,fraction,method,seed";

const MAX_N: usize = 1 << 16;
const MAX_SAMPLES: u64 = 1 << 48;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub samples_per_n: u64,
    pub seed: u64,
    pub method: Method,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

impl ExperimentConfig {
    pub fn new(n_min: usize, n_max: usize, samples_per_n: u64, seed: u64, method: Method) -> Self {
        ExperimentConfig {
            n_min,
            n_max,
            samples_per_n,
            seed,
            method,
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n_min < 1 || self.n_min > self.n_max {
            return bad(format!(
                "need 1 <= n_min <= n_max, got {}..{}",
                self.n_min, self.n_max
            ));
        }
        if self.n_max >= MAX_N {
            return bad(format!("n_max must be below {MAX_N}"));
        }
        if self.samples_per_n < 1 || self.samples_per_n > MAX_SAMPLES {
            return bad(format!(
                "samples must be between 1 and 2^48, got {}",
                self.samples_per_n
            ));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad(format!(
                "epsilon must be finite and nonnegative, got {}",
                self.epsilon
            ));
        }
        match self.method {
            Method::LeafCondition => Ok(()),
            Method::SubsetExact if self.n_max <= SUBSET_GUARD => Ok(()),
            Method::SubsetExact => bad(format!("subset method needs n_max <= {SUBSET_GUARD}")),
            Method::Hexahedron if self.n_min == 4 && self.n_max == 4 => Ok(()),
            Method::Hexahedron => bad("hexahedron method needs n = 4".into()),
            m => bad(format!("method {m} is not available for experiments")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRow {
    pub n: usize,
    pub samples: u64,
    pub flagged: u64,
    pub fraction: f64,
    /// Wall-clock time spent on this `n`.
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: ExperimentConfig,
    pub rows: Vec<SimulationRow>,
}

impl SimulationReport {
    pub fn row(&self, n: usize) -> Option<&SimulationRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// The report with every timing zeroed (what a CSV round trip keeps).
    pub fn without_timings(&self) -> SimulationReport {
        let mut out = self.clone();
        for r in &mut out.rows {
            r.elapsed_seconds = 0.0;
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER.split(','))?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.samples.to_string(),
                r.flagged.to_string(),
                format!("{:.6}", r.fraction),
                self.config.method.to_string(),
                self.config.seed.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("CSV output is ASCII"))
    }

    /// Parses a CSV report. Fractions are recomputed from the counts and
    /// timings are zero.
    pub fn from_csv(text: &str) -> Result<SimulationReport> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if header.join(",") != CSV_HEADER {
            return Err(Error::Parse {
                what: "report header",
                input: header.join(","),
            });
        }
        let mut rows = Vec::new();
        let mut method = None;
        let mut seed = None;
        for record in reader.records() {
            let record = record?;
            let field = |i: usize, what: &'static str| -> Result<&str> {
                record.get(i).ok_or(Error::Parse {
                    what,
                    input: format!("{record:?}"),
                })
            };
            let num = |i: usize, what: &'static str| -> Result<u64> {
                let s = field(i, what)?;
                s.parse().map_err(|_| Error::Parse {
                    what,
                    input: s.to_string(),
                })
            };
            let n = num(0, "n")? as usize;
            let samples = num(1, "samples")?;
            let flagged = num(2, "flagged")?;
            method = Some(field(4, "method")?.parse::<Method>()?);
            seed = Some(num(5, "seed")?);
            rows.push(SimulationRow {
                n,
                samples,
                flagged,
                fraction: flagged as f64 / samples as f64,
                elapsed_seconds: 0.0,
            });
        }
        let (Some(method), Some(seed)) = (method, seed) else {
            return Err(Error::Parse {
                what: "report",
                input: "no rows".into(),
            });
        };
        let config = ExperimentConfig {
            n_min: rows.iter().map(|r| r.n).min().unwrap_or(1),
            n_max: rows.iter().map(|r| r.n).max().unwrap_or(1),
            samples_per_n: rows[0].samples,
            seed,
            method,
            epsilon: DEFAULT_EPSILON,
        };
        Ok(SimulationReport { config, rows })
    }
}

/// The RNG for sample `index` at alphabet size `n`.
pub fn sample_rng(seed: u64, n: usize, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 48) | index);
    rng
}

/// A flat-Dirichlet source: `n` unit-mean exponentials `-ln(1 - u)`,
/// normalized.
pub fn sample_dirichlet<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Source<f64> {
    sample_dirichlet_with_epsilon(n, rng, DEFAULT_EPSILON)
}

fn sample_dirichlet_with_epsilon<R: Rng + ?Sized>(n: usize, rng: &mut R, eps: f64) -> Source<f64> {
    assert!(n >= 1, "a source needs at least one symbol");
    let mut draws: Vec<f64> = (0..n)
        .map(|_| loop {
            let u: f64 = rng.random();
            let e = -(1.0 - u).ln();
            if e > 0.0 {
                break e;
            }
        })
        .collect();
    let total: f64 = draws.iter().sum();
    for d in &mut draws {
        *d /= total;
    }
    Source::with_epsilon(draws, eps).expect("normalized exponentials form a source")
}

fn flags(cfg: &ExperimentConfig, n: usize, index: u64) -> bool {
    let mut rng = sample_rng(cfg.seed, n, index);
    let source = sample_dirichlet_with_epsilon(n, &mut rng, cfg.epsilon);
    match cfg.method {
        Method::LeafCondition => {
            leaf_condition(&source, &huffman(&source)).status == Status::NotOptimal
        }
        Method::SubsetExact => {
            let profile = huffman(&source).profile();
            subset_certificate(&source, &profile)
                .map(|v| v.status == Status::NotOptimal)
                .unwrap_or(false)
        }
        Method::Hexahedron => {
            let mut sorted = source.probabilities().to_vec();
            sorted.sort_by(|a, b| b.total_cmp(a));
            let sorted = Source::with_epsilon(sorted, cfg.epsilon).expect("still a source");
            classify_n4(&sorted)
                .map(|c| c == N4Class::NotOptimal)
                .unwrap_or(false)
        }
        _ => unreachable!("rejected by validation"),
    }
}

/// Runs the experiment for every `n` in the configured range.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.n_max - cfg.n_min + 1);
    for n in cfg.n_min..=cfg.n_max {
        let start = Instant::now();
        let flagged: u64 = (0..cfg.samples_per_n)
            .into_par_iter()
            .map(|i| u64::from(flags(cfg, n, i)))
            .sum();
        rows.push(SimulationRow {
            n,
            samples: cfg.samples_per_n,
            flagged,
            fraction: flagged as f64 / cfg.samples_per_n as f64,
            elapsed_seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(SimulationReport {
        config: cfg.clone(),
        rows,
    })
}

/// Writes JSON when `path` ends in `.json` and CSV otherwise.
pub fn write_report(report: &SimulationReport, path: &Path) -> Result<()> {
    let text = if is_json(path) {
        serde_json::to_string_pretty(report)? + "\n"
    } else {
        report.to_csv()?
    };
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<SimulationReport> {
    let text = fs::read_to_string(path)?;
    if is_json(path) {
        Ok(serde_json::from_str(&text)?)
    } else {
        SimulationReport::from_csv(&text)
    }
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n_min: usize, n_max: usize, samples: u64, method: Method) -> ExperimentConfig {
        ExperimentConfig::new(n_min, n_max, samples, 7, method)
    }

    #[test]
    fn dirichlet_basics() {
        let mut rng = sample_rng(1, 1, 0);
        assert_eq!(sample_dirichlet(1, &mut rng).probabilities(), &[1.0]);
        let a = sample_dirichlet(5, &mut sample_rng(9, 5, 3));
        let b = sample_dirichlet(5, &mut sample_rng(9, 5, 3));
        assert_eq!(a, b);
        let c = sample_dirichlet(5, &mut sample_rng(9, 5, 4));
        assert_ne!(a, c);
    }

    #[test]
    fn dirichlet_marginal_means() {
        let draws = 100_000u64;
        let mut sums = [0.0f64; 5];
        for i in 0..draws {
            let s = sample_dirichlet(5, &mut sample_rng(11, 5, i));
            for (acc, p) in sums.iter_mut().zip(s.probabilities()) {
                *acc += p;
            }
        }
        for s in sums {
            assert!((s / draws as f64 - 0.2).abs() < 0.01);
        }
    }

    #[test]
    fn config_validation() {
        assert!(cfg(3, 2, 10, Method::LeafCondition).validate().is_err());
        assert!(cfg(0, 2, 10, Method::LeafCondition).validate().is_err());
        assert!(cfg(2, 2, 0, Method::LeafCondition).validate().is_err());
        assert!(cfg(2, 17, 10, Method::SubsetExact).validate().is_err());
        assert!(cfg(2, 16, 10, Method::SubsetExact).validate().is_ok());
        assert!(cfg(4, 5, 10, Method::Hexahedron).validate().is_err());
        assert!(cfg(4, 4, 10, Method::BruteForce).validate().is_err());
        assert!(matches!(
            run_experiment(&cfg(5, 4, 10, Method::LeafCondition)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn size_three_is_never_flagged() {
        let r = run_experiment(&cfg(1, 3, 2000, Method::LeafCondition)).unwrap();
        assert!(r.rows.iter().all(|row| row.flagged == 0));
        let r = run_experiment(&cfg(3, 3, 500, Method::SubsetExact)).unwrap();
        assert_eq!(r.rows[0].flagged, 0);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let c = cfg(4, 8, 3000, Method::LeafCondition);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_experiment(&c).unwrap());
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_experiment(&c).unwrap());
        assert_eq!(one.without_timings(), many.without_timings());
    }

    #[test]
    fn leaf_never_exceeds_subset() {
        for n in 4..=8 {
            let leaf = run_experiment(&cfg(n, n, 2000, Method::LeafCondition)).unwrap();
            let subset = run_experiment(&cfg(n, n, 2000, Method::SubsetExact)).unwrap();
            assert!(leaf.rows[0].flagged <= subset.rows[0].flagged, "n = {n}");
        }
    }

    #[test]
    fn csv_shape_and_round_trip() {
        let r = run_experiment(&cfg(3, 4, 100, Method::LeafCondition)).unwrap();
        let text = r.to_csv().unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("3,100,0,0.000000,leaf,7"));
        assert_eq!(
            SimulationReport::from_csv(&text).unwrap(),
            r.without_timings()
        );
    }

    #[test]
    fn file_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let r = run_experiment(&cfg(4, 4, 200, Method::Hexahedron)).unwrap();
        let json = dir.path().join("r.json");
        write_report(&r, &json).unwrap();
        assert_eq!(read_report(&json).unwrap(), r);
        let csv_path = dir.path().join("r.csv");
        write_report(&r, &csv_path).unwrap();
        assert_eq!(read_report(&csv_path).unwrap(), r.without_timings());
        let text = fs::read_to_string(&csv_path).unwrap();
        assert_eq!(text.lines().count(), 2);
    }
}
