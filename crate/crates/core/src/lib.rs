//! Edge detection and blob extraction from penalty-based pseudo-Boolean
//! polynomials of image patches.
//!
//! Each patch of a quantized image is read as a cost matrix and reduced to
//! a canonical polynomial ([`pbp::reduce`]). Homogeneous patches cancel to a
//! constant; patches straddling a contrast boundary keep high-degree terms.
//! Thresholding the degree separates edges from blobs, and equal reduced
//! polynomials group neighboring blob patches.

pub mod error;
pub mod imaging;
pub mod patcher;
pub mod pbp;
pub mod pipeline;
pub mod segmenter;

pub use error::{Error, ErrorKind, Result};
pub use imaging::{GrayImage, QuantizedImage};
pub use patcher::{PatchGrid, PatchSpec, Rect};
pub use pbp::{CostMatrix, Polynomial, Term};
pub use pipeline::{run, PipelineConfig, PipelineOutput};
pub use segmenter::{GroupingMode, PatchClass, RefineMode, SegmentationResult};
