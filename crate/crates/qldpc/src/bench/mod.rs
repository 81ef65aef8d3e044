//! Latency benchmark: fixed-iteration decoding of batches of CSS
//! syndromes, timed end to end and kernel only.

mod stats;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use stats::LatencyStats;

use crate::code::CssCode;
use crate::decoder::{CssDecoder, CssOutcome, DecoderConfig, WorkerPool};
use crate::gf2::Gf2Vector;
use crate::noise::{extract_syndromes, NoiseKind, NoiseModel};
use crate::{Error, Result};

/// The real-time latency budget, in microseconds.
pub const REAL_TIME_BUDGET_US: f64 = 63.0;

/// Column order of the benchmark CSV.
pub const CSV_COLUMNS: [&str; 19] = [
    "code", "n", "k", "d", "mode", "alpha", "imax", "early_term", "batch", "threads", "trials", "min_us", "mean_us",
    "median_us", "p99_us", "max_us", "conv_rate", "kernel_frac", "under_63us",
];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub decoder: DecoderConfig,
    /// Syndromes per decode call.
    pub batch: usize,
    /// Untimed batches run first.
    pub warmup: usize,
    /// Timed batches.
    pub measure: usize,
    pub threads: usize,
    /// Noise that generates the benchmark syndromes.
    pub noise: NoiseModel,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            decoder: DecoderConfig::latency_protocol(),
            batch: 1,
            warmup: 100,
            measure: 1000,
            threads: 1,
            noise: NoiseModel {
                kind: NoiseKind::IndependentXz,
                p: 0.01,
                seed: 0,
            },
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        self.decoder.validate()?;
        self.noise.validate()?;
        if self.batch == 0 {
            return Err(Error::Config("batch must be at least 1".into()));
        }
        if self.measure == 0 {
            return Err(Error::Config("measure must be at least 1".into()));
        }
        if self.threads == 0 {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }
}

/// One row of the benchmark table. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub mode: String,
    pub alpha: f64,
    pub imax: usize,
    pub early_term: bool,
    pub batch: usize,
    pub threads: usize,
    /// Timed decodes: `measure × batch`.
    pub trials: usize,
    pub min_us: f64,
    pub mean_us: f64,
    pub median_us: f64,
    pub p99_us: f64,
    pub max_us: f64,
    pub conv_rate: f64,
    /// Share of the end-to-end time spent inside the decode call.
    pub kernel_frac: f64,
    /// `mean_us` below the real-time budget.
    pub under_63us: bool,
}

impl BenchRecord {
    /// Checks the ordering of the latency statistics.
    pub fn validate(&self) -> Result<()> {
        let ordered = self.min_us <= self.median_us && self.median_us <= self.p99_us && self.p99_us <= self.max_us;
        if !ordered || !(self.min_us <= self.mean_us && self.mean_us <= self.max_us) {
            return Err(Error::Config(format!(
                "latency statistics out of order in row for {}",
                self.code
            )));
        }
        if self.under_63us != (self.mean_us < REAL_TIME_BUDGET_US) {
            return Err(Error::Config(format!("under_63us flag inconsistent for {}", self.code)));
        }
        if !(0.0..=1.0).contains(&self.conv_rate) || !(0.0..=1.0).contains(&self.kernel_frac) {
            return Err(Error::Config(format!("rate outside [0, 1] for {}", self.code)));
        }
        Ok(())
    }
}

/// Result of [`run_bench`]: the table row and every timed decode's output.
#[derive(Clone, Debug)]
pub struct BenchRun {
    pub record: BenchRecord,
    pub outcomes: Vec<CssOutcome>,
}

/// Short description of the machine, for reports.
pub fn host_descriptor() -> String {
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!("{}-{} ({cpus} cpus)", std::env::consts::OS, std::env::consts::ARCH)
}

/// Times `warmup + measure` decode calls of `batch` syndrome pairs each.
///
/// One timed call covers copying the syndromes into the decoder's input,
/// decoding, and copying the estimates out; the decode alone is timed too.
/// Latency per decode is the call time divided by the batch size.
pub fn run_bench(code: &CssCode, config: &BenchConfig) -> Result<BenchRun> {
    config.validate()?;
    let decoder = CssDecoder::new(code, config.decoder.clone())?;
    let pool = WorkerPool::new(config.threads)?;

    let inputs: Vec<(Gf2Vector, Gf2Vector)> = (0..(config.batch * config.measure) as u64)
        .map(|t| {
            let (e_x, e_z) = config.noise.sample_trial(code.n(), t);
            extract_syndromes(code, &e_x, &e_z)
        })
        .collect::<Result<_>>()?;

    let mut input = Vec::with_capacity(config.batch);
    let mut output: Vec<(Gf2Vector, Gf2Vector)> = Vec::with_capacity(config.batch);
    let mut per_decode = Vec::with_capacity(config.measure);
    let mut total = Duration::ZERO;
    let mut kernel = Duration::ZERO;
    let mut outcomes = Vec::with_capacity(inputs.len());

    for i in 0..config.warmup + config.measure {
        let chunk = &inputs[(i % config.measure) * config.batch..][..config.batch];
        let start = Instant::now();
        input.clear();
        input.extend_from_slice(chunk);
        let kernel_start = Instant::now();
        let result = pool.install(|| decoder.decode_batch(&input))?;
        let kernel_time = kernel_start.elapsed();
        output.clear();
        output.extend(result.iter().map(|o| (o.x.e_hat.clone(), o.z.e_hat.clone())));
        let elapsed = start.elapsed();
        if i >= config.warmup {
            per_decode.push(elapsed.as_secs_f64() * 1e6 / config.batch as f64);
            total += elapsed;
            kernel += kernel_time;
            outcomes.extend(result);
        }
    }

    let stats = LatencyStats::from_samples(&per_decode).expect("measure > 0");
    let converged = outcomes.iter().filter(|o| o.x.converged && o.z.converged).count();
    let params = code.params();
    let record = BenchRecord {
        code: code.name().to_string(),
        n: params.n,
        k: params.k,
        d: params.d,
        mode: config.decoder.arithmetic.to_string(),
        alpha: config.decoder.alpha,
        imax: config.decoder.max_iterations,
        early_term: config.decoder.early_termination,
        batch: config.batch,
        threads: config.threads,
        trials: outcomes.len(),
        min_us: stats.min,
        mean_us: stats.mean,
        median_us: stats.median,
        p99_us: stats.p99,
        max_us: stats.max,
        conv_rate: converged as f64 / outcomes.len() as f64,
        kernel_frac: if total.is_zero() {
            1.0
        } else {
            (kernel.as_secs_f64() / total.as_secs_f64()).min(1.0)
        },
        under_63us: stats.mean < REAL_TIME_BUDGET_US,
    };
    Ok(BenchRun { record, outcomes })
}
