//! JSON code descriptors.
//!
//! ```json
//! { "name": "bb72",
//!   "params": { "n": 72, "k": 12, "d": 6 },
//!   "construction": { "bb": { "l": 6, "m": 6,
//!                             "a_terms": [[3, 0], [0, 1], [0, 2]],
//!                             "b_terms": [[0, 3], [1, 0], [2, 0]] } } }
//! ```
//!
//! or with `"construction": { "alist_x": ..., "alist_z": ... }`, where each
//! value is either an inline alist (anything containing a newline) or a path,
//! resolved against the descriptor's directory when relative.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::alist::{load_alist, save_alist};
use super::bb::{build_bb_code, BbCodeSpec};
use super::css::{CodeParams, Construction, CssCode};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescriptor {
    pub name: String,
    pub params: CodeParams,
    pub construction: ConstructionDescriptor,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConstructionDescriptor {
    Bb { bb: BbCodeSpec },
    Alist { alist_x: String, alist_z: String },
}

fn resolve_alist(value: &str, base_dir: Option<&Path>, which: &str) -> Result<String> {
    if value.contains('\n') {
        return Ok(value.to_owned());
    }
    let path = Path::new(value);
    let path = match base_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    };
    std::fs::read_to_string(&path)
        .map_err(|e| Error::Descriptor(format!("cannot read {which} from {}: {e}", path.display())))
}

impl CodeDescriptor {
    pub fn build(&self, base_dir: Option<&Path>) -> Result<CssCode> {
        match &self.construction {
            ConstructionDescriptor::Bb { bb } => {
                let code = build_bb_code(self.name.clone(), bb, self.params.d)?;
                check_declared(&code, &self.params)?;
                Ok(code)
            }
            ConstructionDescriptor::Alist { alist_x, alist_z } => {
                let hx = load_alist(&resolve_alist(alist_x, base_dir, "alist_x")?)?;
                let hz = load_alist(&resolve_alist(alist_z, base_dir, "alist_z")?)?;
                CssCode::with_declared(self.name.clone(), hx, hz, self.params, Construction::Matrices)
            }
        }
    }

    /// Describes `code`, inlining the matrices unless it has a compact
    /// construction.
    pub fn from_code(code: &CssCode) -> Self {
        let construction = match code.construction() {
            Construction::BivariateBicycle(spec) => ConstructionDescriptor::Bb { bb: spec.clone() },
            Construction::Matrices => ConstructionDescriptor::Alist {
                alist_x: save_alist(code.hx()),
                alist_z: save_alist(code.hz()),
            },
        };
        Self {
            name: code.name().to_owned(),
            params: code.params(),
            construction,
        }
    }
}

fn check_declared(code: &CssCode, declared: &CodeParams) -> Result<()> {
    let actual = code.params();
    if declared.n != actual.n {
        return Err(Error::CodeInvariant {
            invariant: "declared n",
            detail: format!("declared n = {}, construction gives {}", declared.n, actual.n),
        });
    }
    if declared.k != actual.k {
        return Err(Error::CodeInvariant {
            invariant: "declared k == n - rank(H_X) - rank(H_Z)",
            detail: format!("declared k = {}, computed k = {}", declared.k, actual.k),
        });
    }
    Ok(())
}

/// Parses and builds a descriptor. Relative alist paths resolve against
/// `base_dir`.
pub fn load_css_json(text: &str, base_dir: Option<&Path>) -> Result<CssCode> {
    let desc: CodeDescriptor = serde_json::from_str(text)?;
    desc.build(base_dir)
}

pub fn load_css_json_file(path: &Path) -> Result<CssCode> {
    let text = std::fs::read_to_string(path)?;
    load_css_json(&text, path.parent())
}

pub fn save_css_json(code: &CssCode) -> String {
    serde_json::to_string_pretty(&CodeDescriptor::from_code(code)).expect("descriptor serializes")
}
