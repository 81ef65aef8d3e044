use serde::{Deserialize, Serialize};

use crate::code::CssCode;
use crate::gf2::{Gf2Vector, RowSpace};

/// Effect of a decoding residual on the encoded state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// Both estimates equal the true errors.
    Exact,
    /// Residuals differ from zero only by stabilizers.
    Stabilizer,
    LogicalX,
    LogicalZ,
    LogicalBoth,
    /// At least one species did not reproduce its syndrome.
    NonConverged,
}

impl Classification {
    pub fn is_success(self) -> bool {
        matches!(self, Classification::Exact | Classification::Stabilizer)
    }

    pub fn is_logical(self) -> bool {
        matches!(
            self,
            Classification::LogicalX | Classification::LogicalZ | Classification::LogicalBoth
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Exact => "exact",
            Classification::Stabilizer => "stabilizer",
            Classification::LogicalX => "logical-x",
            Classification::LogicalZ => "logical-z",
            Classification::LogicalBoth => "logical-both",
            Classification::NonConverged => "non-converged",
        }
    }
}

/// Row spaces of `H_X` and `H_Z`, prepared once per code.
#[derive(Clone, Debug)]
pub struct ResidualClassifier {
    x_stabilizers: RowSpace,
    z_stabilizers: RowSpace,
}

impl ResidualClassifier {
    pub fn new(code: &CssCode) -> Self {
        Self {
            x_stabilizers: code.hx().row_space(),
            z_stabilizers: code.hz().row_space(),
        }
    }

    /// X residuals are harmless inside the row space of `H_X`, Z residuals
    /// inside that of `H_Z`.
    pub fn classify(&self, e_x: &Gf2Vector, e_hat_x: &Gf2Vector, e_z: &Gf2Vector, e_hat_z: &Gf2Vector) -> Classification {
        let r_x = e_x ^ e_hat_x;
        let r_z = e_z ^ e_hat_z;
        if r_x.is_zero() && r_z.is_zero() {
            return Classification::Exact;
        }
        let bad_x = !self.x_stabilizers.contains(&r_x);
        let bad_z = !self.z_stabilizers.contains(&r_z);
        match (bad_x, bad_z) {
            (false, false) => Classification::Stabilizer,
            (true, false) => Classification::LogicalX,
            (false, true) => Classification::LogicalZ,
            (true, true) => Classification::LogicalBoth,
        }
    }
}

/// One-off form of [`ResidualClassifier::classify`].
pub fn classify_residual(
    code: &CssCode,
    e_x: &Gf2Vector,
    e_hat_x: &Gf2Vector,
    e_z: &Gf2Vector,
    e_hat_z: &Gf2Vector,
) -> Classification {
    ResidualClassifier::new(code).classify(e_x, e_hat_x, e_z, e_hat_z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::builtin;

    #[test]
    fn exact_and_stabilizer() {
        let code = builtin::code("bb72").unwrap();
        let e = Gf2Vector::from_support(72, &[1, 30, 64]).unwrap();
        let z = Gf2Vector::zeros(72);
        assert_eq!(classify_residual(&code, &e, &e, &z, &z), Classification::Exact);
        let shifted = &e ^ &code.hx().row_vector(4);
        assert_eq!(classify_residual(&code, &e, &shifted, &z, &z), Classification::Stabilizer);
        let shifted_z = &z ^ &code.hz().row_vector(0);
        assert_eq!(classify_residual(&code, &e, &shifted, &z, &shifted_z), Classification::Stabilizer);
    }

    #[test]
    fn logical_residuals() {
        let code = builtin::code("bb72").unwrap();
        let c = ResidualClassifier::new(&code);
        let x_stab = code.hx().row_space();
        // a kernel vector of H_Z outside the row space of H_X is a logical X
        let logical_x = code
            .hz()
            .to_dense()
            .kernel_basis()
            .into_iter()
            .find(|v| !x_stab.contains(v))
            .expect("k > 0");
        assert!(code.x_syndrome(&logical_x).unwrap().is_zero());
        let z_stab = code.hz().row_space();
        let logical_z = code
            .hx()
            .to_dense()
            .kernel_basis()
            .into_iter()
            .find(|v| !z_stab.contains(v))
            .unwrap();
        let zero = Gf2Vector::zeros(72);
        assert_eq!(c.classify(&zero, &logical_x, &zero, &zero), Classification::LogicalX);
        assert_eq!(c.classify(&zero, &zero, &logical_z, &zero), Classification::LogicalZ);
        assert_eq!(c.classify(&logical_x, &zero, &zero, &logical_z), Classification::LogicalBoth);
    }
}
