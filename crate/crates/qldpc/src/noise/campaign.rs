use rayon::prelude::*;
use serde::Serialize;

use super::classify::{Classification, ResidualClassifier};
use super::{extract_syndromes, NoiseModel};
use crate::code::CssCode;
use crate::decoder::{CssDecoder, DecoderConfig};
use crate::gf2::Gf2Vector;
use crate::Result;

/// One sampled error, its decoding and the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialResult {
    pub trial: u64,
    pub e_x: Gf2Vector,
    pub e_z: Gf2Vector,
    pub s_x: Gf2Vector,
    pub s_z: Gf2Vector,
    pub e_hat_x: Gf2Vector,
    pub e_hat_z: Gf2Vector,
    pub converged_x: bool,
    pub converged_z: bool,
    pub iterations_x: usize,
    pub iterations_z: usize,
    pub classification: Classification,
    /// Verdict for the same error left uncorrected (`ê = 0`).
    pub baseline: Classification,
}

/// Aggregates of a campaign.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub code: String,
    pub model: NoiseModel,
    pub trials: u64,
    pub exact: u64,
    pub stabilizer: u64,
    pub logical_x: u64,
    pub logical_z: u64,
    pub logical_both: u64,
    pub non_converged: u64,
    /// Converged trials that ended in a logical error, over all trials.
    pub logical_rate: f64,
    /// Trials that were not corrected (logical or non-converged), over all
    /// trials.
    pub failure_rate: f64,
    pub convergence_rate: f64,
    /// Mean over trials of the larger of the two species' iteration counts.
    pub mean_iterations: f64,
    /// Failure rate of the no-decoder baseline on the same errors.
    pub baseline_failure_rate: f64,
    #[serde(skip)]
    pub records: Vec<TrialResult>,
}

/// Samples `trials` errors from `model`, decodes both species of each with
/// `config` and classifies the residuals. Trials run in parallel on the
/// current rayon pool; trial `t` always uses stream `t` of the model's
/// seed, so the outcome does not depend on scheduling.
pub fn run_campaign(code: &CssCode, model: &NoiseModel, trials: u64, config: &DecoderConfig) -> Result<CampaignSummary> {
    model.validate()?;
    let decoder = CssDecoder::new(code, config.clone())?;
    let classifier = ResidualClassifier::new(code);
    let zero = Gf2Vector::zeros(code.n());
    let records = (0..trials)
        .into_par_iter()
        .map_init(
            || decoder.new_state(),
            |state, trial| -> Result<TrialResult> {
                let (e_x, e_z) = model.sample_trial(code.n(), trial);
                let (s_x, s_z) = extract_syndromes(code, &e_x, &e_z)?;
                let out = decoder.decode_with(&s_x, &s_z, state)?;
                let classification = if out.x.converged && out.z.converged {
                    classifier.classify(&e_x, &out.x.e_hat, &e_z, &out.z.e_hat)
                } else {
                    Classification::NonConverged
                };
                let baseline = classifier.classify(&e_x, &zero, &e_z, &zero);
                Ok(TrialResult {
                    trial,
                    e_x,
                    e_z,
                    s_x,
                    s_z,
                    e_hat_x: out.x.e_hat,
                    e_hat_z: out.z.e_hat,
                    converged_x: out.x.converged,
                    converged_z: out.z.converged,
                    iterations_x: out.x.iterations_used,
                    iterations_z: out.z.iterations_used,
                    classification,
                    baseline,
                })
            },
        )
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(code.name(), model, records))
}

fn summarize(code: &str, model: &NoiseModel, records: Vec<TrialResult>) -> CampaignSummary {
    let count = |c: Classification| records.iter().filter(|r| r.classification == c).count() as u64;
    let trials = records.len() as u64;
    let rate = |k: u64| if trials == 0 { 0.0 } else { k as f64 / trials as f64 };
    let (exact, stabilizer) = (count(Classification::Exact), count(Classification::Stabilizer));
    let (logical_x, logical_z, logical_both) = (
        count(Classification::LogicalX),
        count(Classification::LogicalZ),
        count(Classification::LogicalBoth),
    );
    let non_converged = count(Classification::NonConverged);
    let baseline_failures = records.iter().filter(|r| !r.baseline.is_success()).count() as u64;
    let iterations: usize = records.iter().map(|r| r.iterations_x.max(r.iterations_z)).sum();
    CampaignSummary {
        code: code.to_string(),
        model: *model,
        trials,
        exact,
        stabilizer,
        logical_x,
        logical_z,
        logical_both,
        non_converged,
        logical_rate: rate(logical_x + logical_z + logical_both),
        failure_rate: rate(trials - exact - stabilizer),
        convergence_rate: rate(trials - non_converged),
        mean_iterations: if trials == 0 { 0.0 } else { iterations as f64 / trials as f64 },
        baseline_failure_rate: rate(baseline_failures),
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::builtin;
    use crate::noise::NoiseKind;

    #[test]
    fn noiseless_campaign_is_all_exact() {
        let code = builtin::code("bb72").unwrap();
        let model = NoiseModel::new(NoiseKind::Depolarizing, 0.0, 3).unwrap();
        let s = run_campaign(&code, &model, 50, &DecoderConfig::default()).unwrap();
        assert_eq!(s.exact, 50);
        assert_eq!((s.logical_rate, s.failure_rate, s.baseline_failure_rate), (0.0, 0.0, 0.0));
        assert_eq!(s.convergence_rate, 1.0);
    }

    #[test]
    fn seeded_campaign_reproduces() {
        let code = builtin::code("bb72").unwrap();
        let model = NoiseModel::new(NoiseKind::IndependentXz, 0.03, 11).unwrap();
        let a = run_campaign(&code, &model, 200, &DecoderConfig::default()).unwrap();
        let b = crate::decoder::WorkerPool::new(1)
            .unwrap()
            .install(|| run_campaign(&code, &model, 200, &DecoderConfig::default()).unwrap());
        assert_eq!(a, b);
        for r in &a.records {
            if r.converged_x {
                assert_eq!(code.x_syndrome(&r.e_hat_x).unwrap(), r.s_x);
            }
        }
    }
}
