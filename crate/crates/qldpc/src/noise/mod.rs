//! Pauli noise, syndrome extraction and Monte Carlo decoding campaigns.

mod campaign;
mod classify;
mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use campaign::{run_campaign, CampaignSummary, TrialResult};
pub use classify::{classify_residual, Classification, ResidualClassifier};
pub use oracle::brute_force_coset_leader;

use crate::code::CssCode;
use crate::gf2::Gf2Vector;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    /// X and Z flips, each independently with probability `p`.
    IndependentXz,
    /// With probability `p`, one of X, Y, Z uniformly; Y sets both bits.
    Depolarizing,
}

impl std::str::FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "independent-xz" | "xz" => Ok(NoiseKind::IndependentXz),
            "depolarizing" | "depol" => Ok(NoiseKind::Depolarizing),
            other => Err(Error::Noise(format!(
                "unknown noise kind {other:?} (expected independent-xz or depolarizing)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub p: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, p: f64, seed: u64) -> Result<Self> {
        let model = Self { kind, p, seed };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Noise(format!("p = {} is outside [0, 1]", self.p)));
        }
        Ok(())
    }

    /// Generator for trial `trial`: the model seed selects the key, the
    /// trial index the stream, so trials can be drawn in any order.
    pub fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }

    /// The error of trial `trial` on `n` qubits.
    pub fn sample_trial(&self, n: usize, trial: u64) -> (Gf2Vector, Gf2Vector) {
        sample_error(self, n, &mut self.trial_rng(trial))
    }
}

/// Draws `(e_X, e_Z)` on `n` qubits.
pub fn sample_error<R: Rng + ?Sized>(model: &NoiseModel, n: usize, rng: &mut R) -> (Gf2Vector, Gf2Vector) {
    let mut e_x = Gf2Vector::zeros(n);
    let mut e_z = Gf2Vector::zeros(n);
    for q in 0..n {
        match model.kind {
            NoiseKind::IndependentXz => {
                e_x.set(q, rng.random_bool(model.p));
                e_z.set(q, rng.random_bool(model.p));
            }
            NoiseKind::Depolarizing => {
                if rng.random_bool(model.p) {
                    match rng.random_range(0..3u8) {
                        0 => e_x.set(q, true),
                        1 => {
                            e_x.set(q, true);
                            e_z.set(q, true);
                        }
                        _ => e_z.set(q, true),
                    }
                }
            }
        }
    }
    (e_x, e_z)
}

/// `(s_X, s_Z) = (H_Z · e_X, H_X · e_Z)`.
pub fn extract_syndromes(code: &CssCode, e_x: &Gf2Vector, e_z: &Gf2Vector) -> Result<(Gf2Vector, Gf2Vector)> {
    Ok((code.x_syndrome(e_x)?, code.z_syndrome(e_z)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::builtin;

    #[test]
    fn p_zero_and_one() {
        for kind in [NoiseKind::IndependentXz, NoiseKind::Depolarizing] {
            let (x, z) = NoiseModel::new(kind, 0.0, 1).unwrap().sample_trial(100, 0);
            assert!(x.is_zero() && z.is_zero());
        }
        let (x, z) = NoiseModel::new(NoiseKind::IndependentXz, 1.0, 1).unwrap().sample_trial(50, 0);
        assert_eq!((x.weight(), z.weight()), (50, 50));
        let (x, z) = NoiseModel::new(NoiseKind::Depolarizing, 1.0, 1).unwrap().sample_trial(3000, 0);
        for q in 0..3000 {
            assert!(x.get(q) || z.get(q));
        }
        // each bit is set by two of the three Paulis
        for w in [x.weight(), z.weight()] {
            let rate = w as f64 / 3000.0;
            assert!((rate - 2.0 / 3.0).abs() < 3.0 * (2.0f64 / 9.0 / 3000.0).sqrt());
        }
    }

    #[test]
    fn invalid_rate() {
        assert!(NoiseModel::new(NoiseKind::IndependentXz, 1.5, 0).is_err());
        assert!(NoiseModel::new(NoiseKind::IndependentXz, f64::NAN, 0).is_err());
        assert!("bitflip".parse::<NoiseKind>().is_err());
    }

    #[test]
    fn marginal_rate_within_three_sigma() {
        let p = 0.05;
        let model = NoiseModel::new(NoiseKind::IndependentXz, p, 7).unwrap();
        let samples = 100_000usize;
        let (mut nx, mut nz) = (0, 0);
        for t in 0..(samples / 100) as u64 {
            let (x, z) = model.sample_trial(100, t);
            nx += x.weight();
            nz += z.weight();
        }
        let sigma = (p * (1.0 - p) / samples as f64).sqrt();
        for count in [nx, nz] {
            assert!((count as f64 / samples as f64 - p).abs() < 3.0 * sigma);
        }
        // depolarizing: each bit has marginal 2p/3
        let model = NoiseModel::new(NoiseKind::Depolarizing, 0.3, 7).unwrap();
        let mut n = 0;
        for t in 0..1000 {
            n += model.sample_trial(100, t).0.weight();
        }
        let m = 0.2;
        assert!((n as f64 / samples as f64 - m).abs() < 3.0 * (m * (1.0 - m) / samples as f64).sqrt());
    }

    #[test]
    fn trials_are_reproducible_and_distinct() {
        let model = NoiseModel::new(NoiseKind::IndependentXz, 0.2, 42).unwrap();
        assert_eq!(model.sample_trial(64, 9), model.sample_trial(64, 9));
        assert_ne!(model.sample_trial(64, 9), model.sample_trial(64, 10));
    }

    #[test]
    fn syndromes_of_unit_errors_are_columns() {
        let code = builtin::code("bb72").unwrap();
        for q in [0, 17, 71] {
            let e = Gf2Vector::unit(72, q);
            let (sx, sz) = extract_syndromes(&code, &e, &e).unwrap();
            assert_eq!(sx, code.hz().col_vector(q));
            assert_eq!(sz, code.hx().col_vector(q));
        }
        let z = Gf2Vector::zeros(72);
        let (sx, sz) = extract_syndromes(&code, &z, &z).unwrap();
        assert!(sx.is_zero() && sz.is_zero());
    }
}
