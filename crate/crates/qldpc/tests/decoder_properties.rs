use proptest::prelude::*;
use qldpc::code::builtin;
use qldpc::decoder::{decode_batch, Arithmetic, CssDecoder, NodeExecution, Prior, WorkerPool};
use qldpc::noise::{NoiseKind, NoiseModel};
use qldpc::{DecoderConfig, Gf2Vector, MinSumDecoder, SparseGf2Matrix, TannerGraph};

fn config(arithmetic: Arithmetic, early: bool) -> DecoderConfig {
    DecoderConfig::default().with_arithmetic(arithmetic).with_early_termination(early)
}

fn arithmetic() -> impl Strategy<Value = Arithmetic> {
    prop::sample::select(Arithmetic::ALL.to_vec())
}

/// Sparse errors so that a fair share of the syndromes are decodable.
fn sampled_syndromes(graph: &TannerGraph, count: usize, p: f64, seed: u64) -> Vec<Gf2Vector> {
    let model = NoiseModel::new(NoiseKind::IndependentXz, p, seed).unwrap();
    (0..count as u64)
        .map(|t| graph.syndrome(&model.sample_trial(graph.num_vars(), t).0).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn converged_outcomes_reproduce_the_syndrome(
        bits in prop::collection::vec(any::<bool>(), 36),
        arith in arithmetic(),
        early in any::<bool>(),
    ) {
        let code = builtin::code("bb72").unwrap();
        let graph = code.x_error_graph();
        let s = Gf2Vector::from_bools(&bits);
        let out = MinSumDecoder::new(graph, config(arith, early)).unwrap().decode(&s).unwrap();
        let residual = graph.syndrome(&out.e_hat).unwrap();
        let diff: Vec<bool> = residual.iter().zip(s.iter()).map(|(a, b)| a ^ b).collect();
        prop_assert_eq!(out.final_syndrome_residual.clone(), Gf2Vector::from_bools(&diff));
        prop_assert_eq!(out.converged, out.final_syndrome_residual.is_zero());
        prop_assert!((1..=10).contains(&out.iterations_used));
        if !early {
            prop_assert_eq!(out.iterations_used, 10);
        }
    }

    #[test]
    fn weight_one_errors_are_corrected(q in 0usize..72, arith in arithmetic()) {
        let code = builtin::code("bb72").unwrap();
        let graph = code.x_error_graph();
        let e = Gf2Vector::unit(72, q);
        let out = MinSumDecoder::new(graph, config(arith, true)).unwrap().decode(&graph.syndrome(&e).unwrap()).unwrap();
        prop_assert!(out.converged);
        prop_assert_eq!(out.e_hat, e);
    }

    #[test]
    fn random_matrices_never_break_soundness(
        rows in prop::collection::vec(prop::collection::vec(0u8..=1, 12), 1..8),
        bits in prop::collection::vec(any::<bool>(), 8),
        arith in arithmetic(),
    ) {
        let h = SparseGf2Matrix::from_dense(&rows).unwrap();
        let graph = TannerGraph::new(&h).unwrap();
        let s = Gf2Vector::from_bools(&bits[..h.rows()]);
        let out = MinSumDecoder::new(&graph, config(arith, true)).unwrap().decode(&s).unwrap();
        if out.converged {
            prop_assert_eq!(h.mul_vec(&out.e_hat).unwrap(), s);
        }
    }
}

#[test]
fn batch_results_do_not_depend_on_worker_count() {
    let code = builtin::code("bb144").unwrap();
    let graph = code.x_error_graph();
    let syndromes = sampled_syndromes(graph, 48, 0.02, 11);
    for arith in Arithmetic::ALL {
        let decoder = MinSumDecoder::new(graph, config(arith, true)).unwrap();
        let one = decoder.decode_batch_in(&WorkerPool::new(1).unwrap(), &syndromes).unwrap();
        let four = decoder.decode_batch_in(&WorkerPool::new(4).unwrap(), &syndromes).unwrap();
        assert_eq!(one, four);
        let sequential: Vec<_> = syndromes.iter().map(|s| decoder.decode(s).unwrap()).collect();
        assert_eq!(one, sequential);
        assert!(one.iter().filter(|o| o.converged).count() > 24, "{arith}");
    }
}

#[test]
fn node_parallelism_does_not_change_results() {
    let code = builtin::code("bb288").unwrap();
    let graph = code.combined_graph();
    let syndromes = sampled_syndromes(graph, 16, 0.03, 5);
    let pool = WorkerPool::new(3).unwrap();
    for arith in Arithmetic::ALL {
        let base = MinSumDecoder::new(graph, config(arith, false)).unwrap();
        let par = MinSumDecoder::new(graph, config(arith, false))
            .unwrap()
            .with_node_execution(NodeExecution::Parallel);
        for s in &syndromes {
            let mut st_a = base.new_state();
            let mut st_b = par.new_state();
            let a = base.decode_with(s, &mut st_a).unwrap();
            let b = pool.install(|| par.decode_with(s, &mut st_b).unwrap());
            assert_eq!(a, b);
            assert_eq!(st_a.check_messages(), st_b.check_messages());
            assert_eq!(st_a.posteriors(), st_b.posteriors());
        }
    }
}

#[test]
fn empty_batch_gives_empty_output() {
    let code = builtin::code("bb72").unwrap();
    assert!(decode_batch(code.x_error_graph(), &[], &DecoderConfig::default()).unwrap().is_empty());
    let css = CssDecoder::new(&code, DecoderConfig::default()).unwrap();
    assert!(css.decode_batch(&[]).unwrap().is_empty());
}

#[test]
fn batch_rejects_wrong_lengths() {
    let code = builtin::code("bb72").unwrap();
    let good = Gf2Vector::zeros(36);
    let bad = Gf2Vector::zeros(35);
    assert!(decode_batch(code.x_error_graph(), &[good, bad], &DecoderConfig::default()).is_err());
}

#[test]
fn informative_prior_matches_uniform_scaling() {
    // γ = 4 scales every float message by a power of two, which is exact,
    // and the min-sum rules commute with positive scaling
    let code = builtin::code("bb72").unwrap();
    let graph = code.x_error_graph();
    let uniform = MinSumDecoder::new(graph, DecoderConfig::default()).unwrap();
    let scaled = MinSumDecoder::new(graph, DecoderConfig::default().with_prior(Prior::PerVariable(vec![4.0; 72]))).unwrap();
    for s in sampled_syndromes(graph, 40, 0.03, 2) {
        let (a, b) = (uniform.decode(&s).unwrap(), scaled.decode(&s).unwrap());
        assert_eq!(a.e_hat, b.e_hat);
        assert_eq!(a.converged, b.converged);
    }
}
