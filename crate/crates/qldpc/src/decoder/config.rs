use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Number representation of the decoder messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Float,
    Int8,
    Int16,
}

impl Arithmetic {
    pub const ALL: [Arithmetic; 3] = [Arithmetic::Float, Arithmetic::Int8, Arithmetic::Int16];

    /// Default value-to-integer scale: the unit prior maps to 8 in `int8`
    /// and 256 in `int16`.
    pub fn default_quant_scale(self) -> Option<f64> {
        match self {
            Arithmetic::Float => None,
            Arithmetic::Int8 => Some(8.0),
            Arithmetic::Int16 => Some(256.0),
        }
    }

    pub fn is_integer(self) -> bool {
        !matches!(self, Arithmetic::Float)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Arithmetic::Float => "float",
            Arithmetic::Int8 => "int8",
            Arithmetic::Int16 => "int16",
        }
    }
}

impl fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Arithmetic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" | "f32" => Ok(Arithmetic::Float),
            "int8" | "i8" => Ok(Arithmetic::Int8),
            "int16" | "i16" => Ok(Arithmetic::Int16),
            other => Err(Error::Config(format!(
                "unknown arithmetic {other:?} (expected float, int8 or int16)"
            ))),
        }
    }
}

/// Per-variable prior γ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prior {
    /// γ_n = 1 for every variable.
    Uniform,
    /// Explicit γ_n, one per variable.
    PerVariable(Vec<f64>),
}

impl Prior {
    /// `log((1 − p) / p)` on every one of `n` variables: the log-likelihood
    /// ratio of an independent bit-flip channel with rate `p`.
    pub fn from_error_rate(p: f64, n: usize) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Config(format!("error rate {p} must lie strictly between 0 and 1")));
        }
        Ok(Prior::PerVariable(vec![((1.0 - p) / p).ln(); n]))
    }
}

/// Settings of one min-sum decoder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    /// Check-node scaling factor, in (0, 1].
    pub alpha: f64,
    /// Stop as soon as the estimate reproduces the syndrome.
    pub early_termination: bool,
    pub prior: Prior,
    pub arithmetic: Arithmetic,
    /// Overrides [`Arithmetic::default_quant_scale`] in integer modes.
    pub quant_scale: Option<f64>,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: 10,
            alpha: 0.8,
            early_termination: true,
            prior: Prior::Uniform,
            arithmetic: Arithmetic::Float,
            quant_scale: None,
        }
    }
}

impl DecoderConfig {
    /// The latency benchmark setting: ten float iterations, always run to
    /// completion.
    pub fn latency_protocol() -> Self {
        Self {
            early_termination: false,
            ..Self::default()
        }
    }

    pub fn with_arithmetic(mut self, arithmetic: Arithmetic) -> Self {
        self.arithmetic = arithmetic;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_early_termination(mut self, early_termination: bool) -> Self {
        self.early_termination = early_termination;
        self
    }

    pub fn with_prior(mut self, prior: Prior) -> Self {
        self.prior = prior;
        self
    }

    /// Scale in effect for integer modes.
    pub fn effective_quant_scale(&self) -> Option<f64> {
        if self.arithmetic.is_integer() {
            self.quant_scale.or(self.arithmetic.default_quant_scale())
        } else {
            None
        }
    }

    /// Checks the ranges that do not depend on the graph.
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::Config(format!("alpha = {} is outside (0, 1]", self.alpha)));
        }
        if let Some(scale) = self.effective_quant_scale() {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(Error::Config(format!("quant_scale = {scale} must be positive and finite")));
            }
        }
        if let Prior::PerVariable(gamma) = &self.prior {
            if let Some(bad) = gamma.iter().find(|g| !g.is_finite()) {
                return Err(Error::Config(format!("prior value {bad} is not finite")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = DecoderConfig::default();
        assert_eq!((c.max_iterations, c.alpha, c.arithmetic), (10, 0.8, Arithmetic::Float));
        assert!(c.early_termination);
        assert!(!DecoderConfig::latency_protocol().early_termination);
        assert_eq!(DecoderConfig::default().with_arithmetic(Arithmetic::Int8).effective_quant_scale(), Some(8.0));
        assert_eq!(DecoderConfig::default().with_arithmetic(Arithmetic::Int16).effective_quant_scale(), Some(256.0));
    }

    #[test]
    fn validation() {
        assert!(DecoderConfig::default().with_max_iterations(0).validate().is_err());
        assert!(DecoderConfig::default().with_alpha(0.0).validate().is_err());
        assert!(DecoderConfig::default().with_alpha(1.2).validate().is_err());
        assert!(DecoderConfig::default().with_alpha(1.0).validate().is_ok());
        let mut c = DecoderConfig::default().with_arithmetic(Arithmetic::Int8);
        c.quant_scale = Some(-1.0);
        assert!(c.validate().is_err());
        assert!(DecoderConfig::default()
            .with_prior(Prior::PerVariable(vec![f64::NAN]))
            .validate()
            .is_err());
    }

    #[test]
    fn arithmetic_names() {
        for a in Arithmetic::ALL {
            assert_eq!(a.as_str().parse::<Arithmetic>().unwrap(), a);
        }
        assert!("int4".parse::<Arithmetic>().is_err());
    }

    #[test]
    fn channel_prior() {
        let Prior::PerVariable(g) = Prior::from_error_rate(0.01, 3).unwrap() else {
            panic!()
        };
        assert!((g[0] - 99f64.ln()).abs() < 1e-12);
        assert!(Prior::from_error_rate(0.0, 3).is_err());
    }
}
