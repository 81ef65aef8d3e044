//! CSS codes, their Tanner graphs, and the file formats they travel in.

mod alist;
mod bb;
pub mod builtin;
mod css;
mod descriptor;
mod graph;

pub use alist::{load_alist, save_alist};
pub use bb::{build_bb_code, BbCodeSpec};
pub use builtin::toy_code;
pub use css::{CodeParams, Construction, CssCode};
pub use descriptor::{
    load_css_json, load_css_json_file, save_css_json, CodeDescriptor, ConstructionDescriptor,
};
pub use graph::{GraphBlock, TannerGraph};

/// Builds the Tanner graph of `h`.
pub fn build_tanner_graph(h: &crate::gf2::SparseGf2Matrix) -> crate::Result<TannerGraph> {
    TannerGraph::new(h)
}
