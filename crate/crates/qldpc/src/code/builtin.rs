//! Built-in codes: the bivariate bicycle benchmark family and the six-bit
//! toy code.

use super::bb::{build_bb_code, BbCodeSpec};
use super::css::{CodeParams, CssCode};
use crate::gf2::SparseGf2Matrix;
use crate::{Error, Result};

/// The 3×6 example code: every check has degree 4, every variable degree 2,
/// and row 3 is the sum of rows 1 and 2.
pub fn toy_code() -> SparseGf2Matrix {
    SparseGf2Matrix::from_dense(&[
        [1, 0, 1, 1, 0, 1],
        [1, 1, 0, 1, 1, 0],
        [0, 1, 1, 0, 1, 1],
    ])
    .expect("toy code is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Availability {
    /// Construction verified: commuting, and `k` matches the name.
    Verified,
    /// Verified, standing in for a listed code that could not be confirmed.
    Substitute { replaces: &'static str },
    /// Listed but not shipped.
    Disabled { reason: &'static str },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: CodeParams,
    pub l: usize,
    pub m: usize,
    pub a_terms: &'static [(usize, usize)],
    pub b_terms: &'static [(usize, usize)],
    pub availability: Availability,
}

impl CatalogEntry {
    pub fn is_enabled(&self) -> bool {
        !matches!(self.availability, Availability::Disabled { .. })
    }

    pub fn spec(&self) -> Result<BbCodeSpec> {
        BbCodeSpec::new(self.l, self.m, self.a_terms, self.b_terms)
    }
}

const A_STD: &[(usize, usize)] = &[(3, 0), (0, 1), (0, 2)];
const B_STD: &[(usize, usize)] = &[(0, 3), (1, 0), (2, 0)];

const fn params(n: usize, k: usize, d: usize) -> CodeParams {
    CodeParams { n, k, d: Some(d) }
}

/// Benchmark codes, smallest first.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "bb72",
            params: params(72, 12, 6),
            l: 6,
            m: 6,
            a_terms: A_STD,
            b_terms: B_STD,
            availability: Availability::Verified,
        },
        CatalogEntry {
            name: "bb108",
            params: params(108, 8, 10),
            l: 9,
            m: 6,
            a_terms: A_STD,
            b_terms: B_STD,
            availability: Availability::Verified,
        },
        CatalogEntry {
            name: "bb144",
            params: params(144, 12, 12),
            l: 12,
            m: 6,
            a_terms: A_STD,
            b_terms: B_STD,
            availability: Availability::Verified,
        },
        CatalogEntry {
            name: "bb288",
            params: params(288, 12, 18),
            l: 12,
            m: 12,
            a_terms: &[(3, 0), (0, 2), (0, 7)],
            b_terms: B_STD,
            availability: Availability::Verified,
        },
        // Distance is an upper bound for this one.
        CatalogEntry {
            name: "bb756",
            params: params(756, 16, 34),
            l: 21,
            m: 18,
            a_terms: &[(3, 0), (0, 10), (0, 17)],
            b_terms: &[(0, 5), (3, 0), (19, 0)],
            availability: Availability::Substitute {
                replaces: "[[784, 24, 24]]",
            },
        },
        CatalogEntry {
            name: "bb784",
            params: params(784, 24, 24),
            l: 0,
            m: 0,
            a_terms: &[],
            b_terms: &[],
            availability: Availability::Disabled {
                reason: "no confirmed bivariate bicycle construction parameters; bb756 is shipped instead",
            },
        },
    ]
}

/// Names of the shipped codes, smallest first.
pub fn names() -> Vec<&'static str> {
    catalog().into_iter().filter(CatalogEntry::is_enabled).map(|e| e.name).collect()
}

/// Builds a shipped code by name and checks it against its declared `k`.
pub fn code(name: &str) -> Result<CssCode> {
    let entry = catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Descriptor(format!("unknown built-in code {name:?} (known: {})", names().join(", "))))?;
    if let Availability::Disabled { reason } = entry.availability {
        return Err(Error::Descriptor(format!("built-in code {name} is disabled: {reason}")));
    }
    let code = build_bb_code(entry.name, &entry.spec()?, entry.params.d)?;
    if code.params().n != entry.params.n || code.params().k != entry.params.k {
        return Err(Error::CodeInvariant {
            invariant: "declared k == n - rank(H_X) - rank(H_Z)",
            detail: format!("{name}: declared {}, computed {}", entry.params, code.params()),
        });
    }
    Ok(code)
}

/// All shipped codes.
pub fn all() -> Result<Vec<CssCode>> {
    names().into_iter().map(code).collect()
}
