//! Syndrome-based scaled min-sum decoding.
//!
//! A [`MinSumDecoder`] is bound to one Tanner graph and one
//! [`DecoderConfig`]. It maps a syndrome `s` to an estimate `ê` with
//! `H · ê = s` whenever it converges, using the flooding schedule: every
//! check node updates, then every variable node, then the hard decision and
//! the syndrome test.
//!
//! ```
//! use qldpc::code::builtin;
//! use qldpc::decoder::{DecoderConfig, MinSumDecoder};
//! use qldpc::Gf2Vector;
//!
//! let code = builtin::code("bb72")?;
//! let graph = code.x_error_graph();
//! let decoder = MinSumDecoder::new(graph, DecoderConfig::default())?;
//! let e = Gf2Vector::unit(72, 5);
//! let out = decoder.decode(&graph.syndrome(&e)?)?;
//! assert!(out.converged);
//! assert_eq!(out.e_hat, e);
//! # Ok::<(), qldpc::Error>(())
//! ```

mod arith;
mod config;
mod engine;
mod nodes;

use rayon::prelude::*;

pub use arith::{FLOAT_DEGREE_ONE_MAGNITUDE, FLOAT_LIMIT};
pub use config::{Arithmetic, DecoderConfig, Prior};
pub use engine::NodeExecution;
pub use nodes::{check_node_update, posterior_and_decision, syndrome_sign, variable_node_update};

use arith::{FloatArith, IntArith, MessageArith};
use engine::{Buffers, Engine, RawOutcome};

use crate::code::{CssCode, TannerGraph};
use crate::gf2::Gf2Vector;
use crate::{Error, Result};

/// Result of decoding one syndrome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub e_hat: Gf2Vector,
    /// `H · ê == s` held when decoding stopped.
    pub converged: bool,
    /// Iterations actually run, between 1 and the configured maximum.
    pub iterations_used: usize,
    /// `H · ê ⊕ s`; zero exactly when `converged`.
    pub final_syndrome_residual: Gf2Vector,
}

impl DecodeOutcome {
    fn from_raw(raw: RawOutcome) -> Self {
        Self {
            converged: raw.block_converged.iter().all(|&c| c),
            iterations_used: raw.block_iterations.iter().copied().max().unwrap_or(0),
            e_hat: raw.e_hat,
            final_syndrome_residual: raw.residual,
        }
    }
}

enum Kernel {
    Float { arith: FloatArith, gamma: Vec<f32> },
    Int8 { arith: IntArith<i8>, gamma: Vec<i8> },
    Int16 { arith: IntArith<i16>, gamma: Vec<i16> },
}

/// Reusable working memory of a decoder. One per thread.
#[derive(Clone, Debug)]
pub struct DecoderState(StateBuffers);

#[derive(Clone, Debug)]
enum StateBuffers {
    Float(Buffers<f32>),
    Int8(Buffers<i8>),
    Int16(Buffers<i16>),
}

macro_rules! with_buffers {
    ($state:expr, $b:ident => $body:expr) => {
        match $state {
            StateBuffers::Float($b) => $body,
            StateBuffers::Int8($b) => $body,
            StateBuffers::Int16($b) => $body,
        }
    };
}

impl DecoderState {
    /// Number of iterations run by the last decode.
    pub fn iteration(&self) -> usize {
        with_buffers!(&self.0, b => b.iteration)
    }

    /// Last hard decisions, one per variable.
    pub fn decisions(&self) -> &[bool] {
        with_buffers!(&self.0, b => &b.decision)
    }

    /// Last posteriors `Q`, as stored (integer modes: scaled units).
    pub fn posteriors(&self) -> Vec<f64> {
        match &self.0 {
            StateBuffers::Float(b) => b.posterior.iter().map(|&v| FloatArith::raw(v)).collect(),
            StateBuffers::Int8(b) => b.posterior.iter().map(|&v| IntArith::<i8>::raw(v)).collect(),
            StateBuffers::Int16(b) => b.posterior.iter().map(|&v| IntArith::<i16>::raw(v)).collect(),
        }
    }

    /// Last check-to-variable messages `r`, in edge order.
    pub fn check_messages(&self) -> Vec<f64> {
        match &self.0 {
            StateBuffers::Float(b) => b.r.iter().map(|&v| FloatArith::raw(v)).collect(),
            StateBuffers::Int8(b) => b.r.iter().map(|&v| IntArith::<i8>::raw(v)).collect(),
            StateBuffers::Int16(b) => b.r.iter().map(|&v| IntArith::<i16>::raw(v)).collect(),
        }
    }

    /// Last variable-to-check messages `q`, in edge order.
    pub fn variable_messages(&self, graph: &TannerGraph) -> Vec<f64> {
        let slots = graph.var_slot_table();
        let pick = |raw: Vec<f64>| slots.iter().map(|&s| raw[s]).collect();
        match &self.0 {
            StateBuffers::Float(b) => pick(b.q_var.iter().map(|&v| FloatArith::raw(v)).collect()),
            StateBuffers::Int8(b) => pick(b.q_var.iter().map(|&v| IntArith::<i8>::raw(v)).collect()),
            StateBuffers::Int16(b) => pick(b.q_var.iter().map(|&v| IntArith::<i16>::raw(v)).collect()),
        }
    }
}

/// A fixed-size pool of decoding threads.
pub struct WorkerPool {
    pool: rayon::ThreadPool,
}

impl WorkerPool {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
        Ok(Self { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Runs `f` inside the pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }
}

/// Scaled min-sum decoder over one Tanner graph.
pub struct MinSumDecoder<'g> {
    graph: &'g TannerGraph,
    config: DecoderConfig,
    kernel: Kernel,
    execution: NodeExecution,
}

fn quantize_prior<A: MessageArith>(arith: &A, gamma: &[f64], integer: bool) -> Result<Vec<A::Msg>> {
    gamma
        .iter()
        .enumerate()
        .map(|(n, &g)| {
            let q = arith.quantize(g);
            if integer && g != 0.0 && A::raw(q) == 0.0 {
                return Err(Error::Config(format!(
                    "prior γ[{n}] = {g} rounds to zero at this quant_scale"
                )));
            }
            Ok(q)
        })
        .collect()
}

impl<'g> MinSumDecoder<'g> {
    pub fn new(graph: &'g TannerGraph, config: DecoderConfig) -> Result<Self> {
        config.validate()?;
        let n = graph.num_vars();
        let gamma = match &config.prior {
            config::Prior::Uniform => vec![1.0; n],
            config::Prior::PerVariable(g) => {
                if g.len() != n {
                    return Err(Error::DimensionMismatch {
                        context: "prior length",
                        expected: n,
                        actual: g.len(),
                    });
                }
                g.clone()
            }
        };
        let scale = config.effective_quant_scale();
        let kernel = match config.arithmetic {
            Arithmetic::Float => {
                let arith = FloatArith::new(config.alpha);
                let gamma = quantize_prior(&arith, &gamma, false)?;
                Kernel::Float { arith, gamma }
            }
            Arithmetic::Int8 => {
                let arith = IntArith::<i8>::new(config.alpha, scale.unwrap_or(8.0));
                let gamma = quantize_prior(&arith, &gamma, true)?;
                Kernel::Int8 { arith, gamma }
            }
            Arithmetic::Int16 => {
                let arith = IntArith::<i16>::new(config.alpha, scale.unwrap_or(256.0));
                let gamma = quantize_prior(&arith, &gamma, true)?;
                Kernel::Int16 { arith, gamma }
            }
        };
        Ok(Self {
            graph,
            config,
            kernel,
            execution: NodeExecution::Sequential,
        })
    }

    /// Selects how nodes within one pass are scheduled. Results do not
    /// depend on this choice.
    pub fn with_node_execution(mut self, execution: NodeExecution) -> Self {
        self.execution = execution;
        self
    }

    pub fn graph(&self) -> &'g TannerGraph {
        self.graph
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.config
    }

    /// Fresh working memory sized for this decoder.
    pub fn new_state(&self) -> DecoderState {
        DecoderState(match self.kernel {
            Kernel::Float { .. } => StateBuffers::Float(Buffers::for_graph(self.graph)),
            Kernel::Int8 { .. } => StateBuffers::Int8(Buffers::for_graph(self.graph)),
            Kernel::Int16 { .. } => StateBuffers::Int16(Buffers::for_graph(self.graph)),
        })
    }

    fn check_len(&self, s: &Gf2Vector) -> Result<()> {
        if s.len() != self.graph.num_checks() {
            return Err(Error::DimensionMismatch {
                context: "syndrome length",
                expected: self.graph.num_checks(),
                actual: s.len(),
            });
        }
        Ok(())
    }

    pub fn decode(&self, s: &Gf2Vector) -> Result<DecodeOutcome> {
        let mut state = self.new_state();
        self.decode_with(s, &mut state)
    }

    /// Decodes reusing `state`, which afterwards holds the final messages.
    pub fn decode_with(&self, s: &Gf2Vector, state: &mut DecoderState) -> Result<DecodeOutcome> {
        self.check_len(s)?;
        Ok(DecodeOutcome::from_raw(self.run(s, state)))
    }

    fn run(&self, s: &Gf2Vector, state: &mut DecoderState) -> RawOutcome {
        macro_rules! go {
            ($variant:ident, $arith:expr, $gamma:expr) => {{
                if !matches!(state.0, StateBuffers::$variant(_)) {
                    *state = self.new_state();
                }
                let StateBuffers::$variant(buf) = &mut state.0 else {
                    unreachable!()
                };
                Engine {
                    graph: self.graph,
                    arith: $arith,
                    gamma: $gamma,
                    max_iterations: self.config.max_iterations,
                    early_termination: self.config.early_termination,
                    execution: self.execution,
                }
                .run(s, buf)
            }};
        }
        match &self.kernel {
            Kernel::Float { arith, gamma } => go!(Float, arith, gamma),
            Kernel::Int8 { arith, gamma } => go!(Int8, arith, gamma),
            Kernel::Int16 { arith, gamma } => go!(Int16, arith, gamma),
        }
    }

    fn run_batch(&self, syndromes: &[Gf2Vector]) -> Result<Vec<RawOutcome>> {
        for s in syndromes {
            self.check_len(s)?;
        }
        Ok(syndromes
            .par_iter()
            .map_init(|| self.new_state(), |state, s| self.run(s, state))
            .collect())
    }

    /// Decodes independent syndromes in parallel on the global thread pool.
    /// Output order matches input order and does not depend on scheduling.
    pub fn decode_batch(&self, syndromes: &[Gf2Vector]) -> Result<Vec<DecodeOutcome>> {
        Ok(self.run_batch(syndromes)?.into_iter().map(DecodeOutcome::from_raw).collect())
    }

    /// [`decode_batch`](Self::decode_batch) on a dedicated pool.
    pub fn decode_batch_in(&self, pool: &WorkerPool, syndromes: &[Gf2Vector]) -> Result<Vec<DecodeOutcome>> {
        pool.install(|| self.decode_batch(syndromes))
    }
}

/// Decodes one syndrome on `graph`.
pub fn decode(graph: &TannerGraph, s: &Gf2Vector, config: &DecoderConfig) -> Result<DecodeOutcome> {
    MinSumDecoder::new(graph, config.clone())?.decode(s)
}

/// Decodes many syndromes on `graph`, in parallel.
pub fn decode_batch(graph: &TannerGraph, syndromes: &[Gf2Vector], config: &DecoderConfig) -> Result<Vec<DecodeOutcome>> {
    MinSumDecoder::new(graph, config.clone())?.decode_batch(syndromes)
}

/// Estimates of both error species of a CSS code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssOutcome {
    /// Decoded from `s_X` against `H_Z`.
    pub x: DecodeOutcome,
    /// Decoded from `s_Z` against `H_X`.
    pub z: DecodeOutcome,
}

/// Decodes X and Z syndromes of a CSS code together on the graph of
/// `diag(H_Z, H_X)`. Each half stops on its own, so the result equals two
/// separate decodes with the same configuration.
pub struct CssDecoder<'c> {
    inner: MinSumDecoder<'c>,
    n: usize,
    x_checks: usize,
}

impl<'c> CssDecoder<'c> {
    /// A per-variable prior of length `n` is applied to both halves.
    pub fn new(code: &'c CssCode, mut config: DecoderConfig) -> Result<Self> {
        let n = code.n();
        if let Prior::PerVariable(g) = &config.prior {
            if g.len() == n {
                config.prior = Prior::PerVariable(g.iter().chain(g).copied().collect());
            }
        }
        Ok(Self {
            inner: MinSumDecoder::new(code.combined_graph(), config)?,
            n,
            x_checks: code.hz().rows(),
        })
    }

    pub fn with_node_execution(mut self, execution: NodeExecution) -> Self {
        self.inner = self.inner.with_node_execution(execution);
        self
    }

    pub fn new_state(&self) -> DecoderState {
        self.inner.new_state()
    }

    fn combine(&self, s_x: &Gf2Vector, s_z: &Gf2Vector) -> Result<Gf2Vector> {
        let z_checks = self.inner.graph.num_checks() - self.x_checks;
        if s_x.len() != self.x_checks {
            return Err(Error::DimensionMismatch {
                context: "X syndrome length",
                expected: self.x_checks,
                actual: s_x.len(),
            });
        }
        if s_z.len() != z_checks {
            return Err(Error::DimensionMismatch {
                context: "Z syndrome length",
                expected: z_checks,
                actual: s_z.len(),
            });
        }
        Ok(s_x.concat(s_z))
    }

    fn split(&self, raw: RawOutcome) -> CssOutcome {
        let (n, mx) = (self.n, self.x_checks);
        let m = raw.residual.len();
        let half = |b: usize, vars: (usize, usize), checks: (usize, usize)| DecodeOutcome {
            e_hat: raw.e_hat.slice(vars.0, vars.1),
            converged: raw.block_converged[b],
            iterations_used: raw.block_iterations[b],
            final_syndrome_residual: raw.residual.slice(checks.0, checks.1),
        };
        CssOutcome {
            x: half(0, (0, n), (0, mx)),
            z: half(1, (n, 2 * n), (mx, m)),
        }
    }

    pub fn decode(&self, s_x: &Gf2Vector, s_z: &Gf2Vector) -> Result<CssOutcome> {
        let mut state = self.new_state();
        self.decode_with(s_x, s_z, &mut state)
    }

    pub fn decode_with(&self, s_x: &Gf2Vector, s_z: &Gf2Vector, state: &mut DecoderState) -> Result<CssOutcome> {
        let s = self.combine(s_x, s_z)?;
        Ok(self.split(self.inner.run(&s, state)))
    }

    /// Decodes `(s_X, s_Z)` pairs in parallel on the current pool.
    pub fn decode_batch(&self, pairs: &[(Gf2Vector, Gf2Vector)]) -> Result<Vec<CssOutcome>> {
        let combined = pairs
            .iter()
            .map(|(x, z)| self.combine(x, z))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.inner.run_batch(&combined)?.into_iter().map(|r| self.split(r)).collect())
    }
}

/// Decodes both species of one CSS error.
pub fn decode_css(code: &CssCode, s_x: &Gf2Vector, s_z: &Gf2Vector, config: &DecoderConfig) -> Result<CssOutcome> {
    CssDecoder::new(code, config.clone())?.decode(s_x, s_z)
}
