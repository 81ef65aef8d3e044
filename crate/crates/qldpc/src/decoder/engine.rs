//! Flooding-schedule driver.
//!
//! One iteration runs two passes with a barrier in between, followed by the
//! syndrome test:
//!
//! 1. checks: sign parity and two minima of the incoming `q`, then the
//!    outgoing `r`,
//! 2. variables: outgoing `q` from `γ` and the incoming `r`, then the
//!    posterior and hard decision.
//!
//! Each pass only reads what the other one wrote, so node order within a
//! pass is irrelevant and the result is the same whether the nodes run
//! sequentially or spread over worker threads.

use std::ops::Range;

use rayon::prelude::*;

use super::arith::MessageArith;
use super::nodes::{check_node, variable_node};
use crate::code::TannerGraph;
use crate::gf2::Gf2Vector;

/// Nodes per parallel work item.
const NODE_CHUNK: usize = 64;

/// Per-decode working memory.
#[derive(Clone, Debug, Default)]
pub(crate) struct Buffers<M> {
    /// Variable-to-check messages, variable-major slot order.
    pub q_var: Vec<M>,
    /// Check-to-variable messages, edge (check-major) order.
    pub r: Vec<M>,
    pub posterior: Vec<M>,
    pub decision: Vec<bool>,
    pub syndrome: Vec<bool>,
    pub iteration: usize,
}

impl<M: Copy + Default> Buffers<M> {
    pub fn for_graph(graph: &TannerGraph) -> Self {
        let mut b = Self::default();
        b.resize(graph);
        b
    }

    fn resize(&mut self, graph: &TannerGraph) {
        self.q_var.resize(graph.num_edges(), M::default());
        self.r.resize(graph.num_edges(), M::default());
        self.posterior.resize(graph.num_vars(), M::default());
        self.decision.resize(graph.num_vars(), false);
        self.syndrome.resize(graph.num_checks(), false);
    }
}

/// Result of one decode, per graph block.
#[derive(Clone, Debug)]
pub(crate) struct RawOutcome {
    pub e_hat: Gf2Vector,
    pub residual: Gf2Vector,
    pub block_converged: Vec<bool>,
    pub block_iterations: Vec<usize>,
}

/// How the nodes inside one pass are executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NodeExecution {
    #[default]
    Sequential,
    /// Split each pass's nodes over the current rayon pool.
    Parallel,
}

pub(crate) struct Engine<'a, A: MessageArith> {
    pub graph: &'a TannerGraph,
    pub arith: &'a A,
    pub gamma: &'a [A::Msg],
    pub max_iterations: usize,
    pub early_termination: bool,
    pub execution: NodeExecution,
}

/// Splits `buf` into consecutive pieces ending at each of `ends` (offsets
/// relative to the start of `buf`).
fn split_at_ends<'b, T>(mut buf: &'b mut [T], ends: &[usize]) -> Vec<&'b mut [T]> {
    let mut out = Vec::with_capacity(ends.len());
    let mut taken = 0;
    for &end in ends {
        let (head, tail) = buf.split_at_mut(end - taken);
        out.push(head);
        buf = tail;
        taken = end;
    }
    out
}

fn node_chunks(ranges: &[Range<usize>]) -> Vec<Range<usize>> {
    ranges
        .iter()
        .flat_map(|r| {
            (r.start..r.end)
                .step_by(NODE_CHUNK)
                .map(move |s| s..(s + NODE_CHUNK).min(r.end))
        })
        .collect()
}

impl<A: MessageArith> Engine<'_, A> {
    pub fn run(&self, syndrome: &Gf2Vector, buf: &mut Buffers<A::Msg>) -> RawOutcome {
        let g = self.graph;
        buf.resize(g);
        for (m, s) in buf.syndrome.iter_mut().enumerate() {
            *s = syndrome.get(m);
        }
        // q^(0) = γ on every edge
        for n in 0..g.num_vars() {
            let slots = g.var_slots(n);
            buf.q_var[slots].fill(self.gamma[n]);
        }
        buf.decision.fill(false);

        let blocks = g.blocks();
        let mut active = vec![true; blocks.len()];
        let mut converged = vec![false; blocks.len()];
        let mut iterations = vec![0; blocks.len()];
        let mut k = 0;
        loop {
            k += 1;
            let check_ranges: Vec<_> = blocks
                .iter()
                .zip(&active)
                .filter(|(_, &a)| a)
                .map(|(b, _)| b.checks.clone())
                .collect();
            let var_ranges: Vec<_> = blocks
                .iter()
                .zip(&active)
                .filter(|(_, &a)| a)
                .map(|(b, _)| b.vars.clone())
                .collect();
            self.iterate(&check_ranges, &var_ranges, buf);

            if self.early_termination {
                for (b, block) in blocks.iter().enumerate() {
                    if active[b] && self.block_satisfied(block.checks.clone(), buf) {
                        active[b] = false;
                        converged[b] = true;
                        iterations[b] = k;
                    }
                }
            }
            if k >= self.max_iterations || !active.iter().any(|&a| a) {
                break;
            }
        }
        for (b, block) in blocks.iter().enumerate() {
            if active[b] {
                converged[b] = self.block_satisfied(block.checks.clone(), buf);
                iterations[b] = k;
            }
        }
        buf.iteration = k;

        let e_hat = Gf2Vector::from_bools(&buf.decision);
        let mut residual = Gf2Vector::zeros(g.num_checks());
        for m in 0..g.num_checks() {
            if self.check_violated(m, buf) {
                residual.set(m, true);
            }
        }
        RawOutcome {
            e_hat,
            residual,
            block_converged: converged,
            block_iterations: iterations,
        }
    }

    fn check_violated(&self, m: usize, buf: &Buffers<A::Msg>) -> bool {
        let parity = self
            .graph
            .check_neighbors(m)
            .iter()
            .fold(false, |p, &n| p ^ buf.decision[n]);
        parity != buf.syndrome[m]
    }

    fn block_satisfied(&self, checks: Range<usize>, buf: &Buffers<A::Msg>) -> bool {
        checks.into_iter().all(|m| !self.check_violated(m, buf))
    }

    fn iterate(&self, checks: &[Range<usize>], vars: &[Range<usize>], buf: &mut Buffers<A::Msg>) {
        match self.execution {
            NodeExecution::Sequential => {
                for range in checks.iter().filter(|r| !r.is_empty()) {
                    let edges = self.graph.check_edges(range.start).start..self.graph.check_edges(range.end - 1).end;
                    self.check_pass(range.clone(), &buf.q_var, &buf.syndrome, &mut buf.r[edges]);
                }
                for range in vars.iter().filter(|r| !r.is_empty()) {
                    let slots = self.graph.var_slots(range.start).start..self.graph.var_slots(range.end - 1).end;
                    self.variable_pass(
                        range.clone(),
                        &buf.r,
                        &mut buf.q_var[slots],
                        &mut buf.posterior[range.clone()],
                        &mut buf.decision[range.clone()],
                    );
                }
            }
            NodeExecution::Parallel => self.iterate_parallel(checks, vars, buf),
        }
    }

    fn iterate_parallel(&self, checks: &[Range<usize>], vars: &[Range<usize>], buf: &mut Buffers<A::Msg>) {
        let g = self.graph;
        let check_chunks = node_chunks(checks);
        let var_chunks = node_chunks(vars);
        {
            let ends: Vec<usize> = check_chunks
                .iter()
                .flat_map(|c| [g.check_edges(c.start).start, g.check_edges(c.end - 1).end])
                .collect();
            let pieces = split_at_ends(&mut buf.r, &ends);
            let q_var = &buf.q_var;
            let syndrome = &buf.syndrome;
            pieces
                .into_par_iter()
                .skip(1)
                .step_by(2)
                .zip(check_chunks.par_iter())
                .for_each(|(out, range)| self.check_pass(range.clone(), q_var, syndrome, out));
        }
        {
            let slot_ends: Vec<usize> = var_chunks
                .iter()
                .flat_map(|c| [g.var_slots(c.start).start, g.var_slots(c.end - 1).end])
                .collect();
            let var_ends: Vec<usize> = var_chunks.iter().flat_map(|c| [c.start, c.end]).collect();
            let q = split_at_ends(&mut buf.q_var, &slot_ends);
            let post = split_at_ends(&mut buf.posterior, &var_ends);
            let dec = split_at_ends(&mut buf.decision, &var_ends);
            let r = &buf.r;
            q.into_par_iter()
                .zip(post)
                .zip(dec)
                .skip(1)
                .step_by(2)
                .zip(var_chunks.par_iter())
                .for_each(|(((q, p), d), range)| self.variable_pass(range.clone(), r, q, p, d));
        }
    }

    fn check_pass(&self, checks: Range<usize>, q_var: &[A::Msg], syndrome: &[bool], out: &mut [A::Msg]) {
        let ptr = &self.graph.check_ptr_table()[checks.start..=checks.end];
        let mut slots = &self.graph.var_slot_table()[ptr[0]..ptr[ptr.len() - 1]];
        let mut out = out;
        for (w, &s) in ptr.windows(2).zip(&syndrome[checks]) {
            let d = w[1] - w[0];
            let (sl, sl_rest) = slots.split_at(d);
            let (o, o_rest) = std::mem::take(&mut out).split_at_mut(d);
            check_node(self.arith, q_var, sl, s, o);
            slots = sl_rest;
            out = o_rest;
        }
    }

    fn variable_pass(
        &self,
        vars: Range<usize>,
        r: &[A::Msg],
        q_out: &mut [A::Msg],
        posterior: &mut [A::Msg],
        decision: &mut [bool],
    ) {
        let ptr = &self.graph.var_ptr_table()[vars.start..=vars.end];
        let mut edges = &self.graph.var_edge_table()[ptr[0]..ptr[ptr.len() - 1]];
        let mut out = q_out;
        let nodes = ptr.windows(2).zip(&self.gamma[vars]).zip(posterior.iter_mut().zip(decision));
        for ((w, &gamma), (post, dec)) in nodes {
            let d = w[1] - w[0];
            let (e, e_rest) = edges.split_at(d);
            let (o, o_rest) = std::mem::take(&mut out).split_at_mut(d);
            (*post, *dec) = variable_node::<A>(gamma, r, e, o);
            edges = e_rest;
            out = o_rest;
        }
    }
}
