use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::bb::BbCodeSpec;
use super::graph::TannerGraph;
use crate::gf2::{Gf2Vector, SparseGf2Matrix};
use crate::{Error, Result};

/// `[[n, k, d]]` parameters. The distance is metadata only and is never
/// checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    #[serde(default)]
    pub d: Option<usize>,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, d: Option<usize>) -> Result<Self> {
        if k > n {
            return Err(Error::CodeInvariant {
                invariant: "n >= k",
                detail: format!("k = {k} exceeds n = {n}"),
            });
        }
        if d == Some(0) {
            return Err(Error::CodeInvariant {
                invariant: "d >= 1",
                detail: "declared distance is 0".into(),
            });
        }
        Ok(Self { n, k, d })
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "[[{}, {}, {}]]", self.n, self.k, d),
            None => write!(f, "[[{}, {}, ?]]", self.n, self.k),
        }
    }
}

/// How a code was obtained; kept so it can be written back out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    BivariateBicycle(BbCodeSpec),
    Matrices,
}

/// A CSS code given by its X- and Z-stabilizer parity-check matrices.
///
/// X errors are detected by the Z stabilizers (`s_X = H_Z · e_X^T`) and Z
/// errors by the X stabilizers (`s_Z = H_X · e_Z^T`). The graph accessors
/// are named after the error species they decode so the pairing cannot be
/// crossed by accident.
#[derive(Clone, Debug)]
pub struct CssCode {
    name: String,
    hx: SparseGf2Matrix,
    hz: SparseGf2Matrix,
    params: CodeParams,
    construction: Construction,
    x_error_graph: Arc<TannerGraph>,
    z_error_graph: Arc<TannerGraph>,
    combined_graph: Arc<TannerGraph>,
}

impl CssCode {
    /// Validates the pair `(H_X, H_Z)` and computes `k` from ranks.
    pub fn new(
        name: impl Into<String>,
        hx: SparseGf2Matrix,
        hz: SparseGf2Matrix,
        distance: Option<usize>,
        construction: Construction,
    ) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::CodeInvariant {
                invariant: "H_X.cols == H_Z.cols",
                detail: format!("H_X has {} columns, H_Z has {}", hx.cols(), hz.cols()),
            });
        }
        if let Some((a, b)) = hx.first_non_orthogonal_pair(&hz)? {
            return Err(Error::CodeInvariant {
                invariant: "commutativity H_X·H_Z^T = 0",
                detail: format!("row {a} of H_X and row {b} of H_Z overlap in an odd number of qubits"),
            });
        }
        let n = hx.cols();
        let k = n - hx.rank() - hz.rank();
        let params = CodeParams::new(n, k, distance)?;
        let x_error_graph = Arc::new(TannerGraph::new(&hz)?);
        let z_error_graph = Arc::new(TannerGraph::new(&hx)?);
        let combined_graph = Arc::new(TannerGraph::block_diagonal(&[&hz, &hx])?);
        Ok(Self {
            name: name.into(),
            hx,
            hz,
            params,
            construction,
            x_error_graph,
            z_error_graph,
            combined_graph,
        })
    }

    /// Like [`CssCode::new`], but cross-checks declared parameters against
    /// the computed ones.
    pub fn with_declared(
        name: impl Into<String>,
        hx: SparseGf2Matrix,
        hz: SparseGf2Matrix,
        declared: CodeParams,
        construction: Construction,
    ) -> Result<Self> {
        let code = Self::new(name, hx, hz, declared.d, construction)?;
        if declared.n != code.params.n {
            return Err(Error::CodeInvariant {
                invariant: "declared n",
                detail: format!("declared n = {}, matrices have {} columns", declared.n, code.params.n),
            });
        }
        if declared.k != code.params.k {
            return Err(Error::CodeInvariant {
                invariant: "declared k == n - rank(H_X) - rank(H_Z)",
                detail: format!("declared k = {}, computed k = {}", declared.k, code.params.k),
            });
        }
        Ok(code)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    /// Number of physical (data) qubits.
    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn hx(&self) -> &SparseGf2Matrix {
        &self.hx
    }

    pub fn hz(&self) -> &SparseGf2Matrix {
        &self.hz
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Graph of `H_Z`, against which X errors are decoded.
    pub fn x_error_graph(&self) -> &Arc<TannerGraph> {
        &self.x_error_graph
    }

    /// Graph of `H_X`, against which Z errors are decoded.
    pub fn z_error_graph(&self) -> &Arc<TannerGraph> {
        &self.z_error_graph
    }

    /// Graph of `diag(H_Z, H_X)`: decodes `s_X ++ s_Z` into `ê_X ++ ê_Z` in
    /// one pass. Its two blocks are, in order, the X-error and Z-error parts.
    pub fn combined_graph(&self) -> &Arc<TannerGraph> {
        &self.combined_graph
    }

    /// `s_X = H_Z · e_X^T`.
    pub fn x_syndrome(&self, e_x: &Gf2Vector) -> Result<Gf2Vector> {
        self.hz.mul_vec(e_x)
    }

    /// `s_Z = H_X · e_Z^T`.
    pub fn z_syndrome(&self, e_z: &Gf2Vector) -> Result<Gf2Vector> {
        self.hx.mul_vec(e_z)
    }

    /// Re-runs every structural check on the stored matrices.
    pub fn validate(&self) -> Result<()> {
        self.hx.validate()?;
        self.hz.validate()?;
        let again = Self::new(
            self.name.clone(),
            self.hx.clone(),
            self.hz.clone(),
            self.params.d,
            self.construction.clone(),
        )?;
        if again.params != self.params {
            return Err(Error::CodeInvariant {
                invariant: "k == n - rank(H_X) - rank(H_Z)",
                detail: format!("stored {} but recomputed {}", self.params, again.params),
            });
        }
        Ok(())
    }
}
