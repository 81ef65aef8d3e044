//! Bivariate bicycle codes.
//!
//! With `x = S_l ⊗ I_m` and `y = I_l ⊗ S_m` (`S_k` the cyclic shift of size
//! `k`), a code is fixed by two polynomials `A = Σ x^i y^j` and `B`. Then
//! `H_X = [A | B]` and `H_Z = [B^T | A^T]` on `n = 2·l·m` qubits. Since `x`
//! and `y` commute, `AB = BA` and the pair is a valid CSS code.

use serde::{Deserialize, Serialize};

use super::css::{Construction, CssCode};
use crate::gf2::SparseGf2Matrix;
use crate::{Error, Result};

/// Construction parameters of a bivariate bicycle code. Terms are
/// `(x exponent, y exponent)` pairs, reduced modulo `l` and `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BbCodeSpec {
    pub l: usize,
    pub m: usize,
    pub a_terms: Vec<(usize, usize)>,
    pub b_terms: Vec<(usize, usize)>,
}

impl BbCodeSpec {
    /// Reduces exponents and rejects empty or repeated term lists.
    pub fn new(l: usize, m: usize, a_terms: &[(usize, usize)], b_terms: &[(usize, usize)]) -> Result<Self> {
        if l == 0 || m == 0 {
            return Err(Error::InvalidSpec(format!("l and m must be positive (got l={l}, m={m})")));
        }
        let reduce = |terms: &[(usize, usize)], which: &str| -> Result<Vec<(usize, usize)>> {
            if terms.is_empty() {
                return Err(Error::InvalidSpec(format!("{which} has no terms")));
            }
            let reduced: Vec<_> = terms.iter().map(|&(i, j)| (i % l, j % m)).collect();
            for (idx, t) in reduced.iter().enumerate() {
                if reduced[..idx].contains(t) {
                    return Err(Error::InvalidSpec(format!(
                        "{which} repeats the monomial x^{} y^{} (after reduction mod {l}, {m})",
                        t.0, t.1
                    )));
                }
            }
            Ok(reduced)
        };
        Ok(Self {
            l,
            m,
            a_terms: reduce(a_terms, "polynomial A")?,
            b_terms: reduce(b_terms, "polynomial B")?,
        })
    }

    /// Re-applies the constructor checks, for specs deserialized directly.
    pub fn normalized(&self) -> Result<Self> {
        Self::new(self.l, self.m, &self.a_terms, &self.b_terms)
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.l * self.m
    }

    /// The `lm × lm` matrix of `Σ x^i y^j` over `terms`.
    fn polynomial_matrix(&self, terms: &[(usize, usize)]) -> SparseGf2Matrix {
        let (l, m) = (self.l, self.m);
        let size = l * m;
        let supports = (0..size)
            .map(|row| {
                let (i, j) = (row / m, row % m);
                terms
                    .iter()
                    .map(|&(a, b)| ((i + a) % l) * m + (j + b) % m)
                    .collect()
            })
            .collect();
        SparseGf2Matrix::from_row_supports(size, size, supports).expect("distinct monomials give distinct columns")
    }

    pub fn a_matrix(&self) -> SparseGf2Matrix {
        self.polynomial_matrix(&self.a_terms)
    }

    pub fn b_matrix(&self) -> SparseGf2Matrix {
        self.polynomial_matrix(&self.b_terms)
    }
}

/// Builds the code and verifies it. `k` is always computed from ranks.
pub fn build_bb_code(name: impl Into<String>, spec: &BbCodeSpec, distance: Option<usize>) -> Result<CssCode> {
    let spec = spec.normalized()?;
    let a = spec.a_matrix();
    let b = spec.b_matrix();
    let hx = a.hstack(&b)?;
    let hz = b.transpose().hstack(&a.transpose())?;
    CssCode::new(name, hx, hz, distance, Construction::BivariateBicycle(spec)).map_err(|e| match e {
        Error::CodeInvariant { invariant, detail } => {
            Error::InvalidSpec(format!("constructed matrices violate {invariant}: {detail}"))
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_terms_give_i_i() {
        let spec = BbCodeSpec::new(3, 2, &[(0, 0)], &[(0, 0)]).unwrap();
        let code = build_bb_code("ii", &spec, None).unwrap();
        let i = SparseGf2Matrix::identity(6);
        let ii = i.hstack(&i).unwrap();
        assert_eq!(code.hx(), &ii);
        assert_eq!(code.hz(), &ii);
        assert_eq!(code.params().k, 0);
    }

    #[test]
    fn exponents_are_reduced() {
        let spec = BbCodeSpec::new(6, 6, &[(9, 0), (0, 7)], &[(0, 0)]).unwrap();
        assert_eq!(spec.a_terms, vec![(3, 0), (0, 1)]);
    }

    #[test]
    fn invalid_specs() {
        assert!(BbCodeSpec::new(0, 6, &[(0, 0)], &[(0, 0)]).is_err());
        assert!(BbCodeSpec::new(6, 6, &[], &[(0, 0)]).is_err());
        assert!(BbCodeSpec::new(6, 6, &[(1, 0), (7, 0)], &[(0, 0)]).is_err());
    }

    #[test]
    fn shift_matrices_commute() {
        let spec = BbCodeSpec::new(5, 4, &[(1, 0), (0, 3), (2, 2)], &[(0, 1), (4, 0)]).unwrap();
        let code = build_bb_code("t", &spec, None).unwrap();
        assert!(code.hx().rows_orthogonal_to(code.hz()).unwrap());
        assert_eq!(code.n(), 40);
    }

    #[test]
    fn bb72_parameters() {
        let spec = BbCodeSpec::new(6, 6, &[(3, 0), (0, 1), (0, 2)], &[(0, 3), (1, 0), (2, 0)]).unwrap();
        let code = build_bb_code("bb72", &spec, Some(6)).unwrap();
        assert_eq!((code.n(), code.params().k), (72, 12));
        // weight-6 checks, weight-3 columns in each of H_X and H_Z
        assert!(code.hx().row_supports().all(|r| r.len() == 6));
        assert!(code.hz().col_supports().all(|c| c.len() == 3));
    }
}
