//! Browser demo. The plain functions do the work and are tested natively;
//! the `#[wasm_bindgen]` wrappers only convert errors and buffers.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use pbpseg::imaging::{luminance, render_masks, MaskImage};
use pbpseg::pbp::{column_pack, ReductionTrace};
use pbpseg::segmenter::classify_patch;
use pbpseg::{CostMatrix, GrayImage, GroupingMode, PatchSpec, PipelineConfig, RefineMode};

/// Every intermediate artifact of one reduction, 1-based where rows are named.
#[derive(Debug, Serialize)]
pub struct ReductionReport {
    pub cost: Vec<Vec<u64>>,
    pub permutation: Vec<Vec<u32>>,
    pub sorted: Vec<Vec<u64>>,
    pub delta: Vec<Vec<u64>>,
    pub terms: Vec<Vec<String>>,
    pub polynomial: String,
    pub degree_normal: usize,
    pub degree_transposed: usize,
    pub packed: Vec<Vec<String>>,
}

/// Parses rows separated by `;` or newlines, cells by `,` or whitespace.
pub fn parse_matrix(text: &str) -> Result<CostMatrix, String> {
    let rows: Vec<Vec<u64>> = text
        .split([';', '\n'])
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|v| !v.is_empty())
                .map(|v| v.parse::<u64>().map_err(|_| format!("not a number: {v:?}")))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    CostMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

pub fn reduction_report(c: &CostMatrix) -> ReductionReport {
    let trace = ReductionTrace::new(c);
    // threshold 1 is always valid; only the degrees are used here
    let class = classify_patch(c, 1).expect("threshold 1 is valid");
    let sorted = (0..c.rows()).map(|i| trace.sorted.row(i).to_vec()).collect();
    let terms = (0..c.rows())
        .map(|k| (0..c.cols()).map(|j| trace.terms.get(k, j).to_string()).collect())
        .collect();
    ReductionReport {
        cost: (0..c.rows()).map(|i| c.row(i).to_vec()).collect(),
        permutation: trace.permutation.to_one_based_rows(),
        sorted,
        delta: trace.delta.to_rows(),
        terms,
        polynomial: trace.polynomial.to_text(),
        degree_normal: class.degree_normal,
        degree_transposed: class.degree_transposed,
        packed: column_pack(&trace.polynomial).to_grid(c.rows()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DemoParams {
    pub patch: usize,
    pub bin_width: u32,
    pub gaussian: usize,
    pub threshold: usize,
    pub refine: bool,
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Segmentation {
    mask: Vec<u8>,
    overlay: Vec<u8>,
    degrees: Vec<u8>,
    grid_rows: usize,
    grid_cols: usize,
    edge_percent: f64,
    groups: usize,
}

#[wasm_bindgen]
impl Segmentation {
    /// Mask as RGBA, at input resolution.
    pub fn mask(&self) -> Vec<u8> {
        self.mask.clone()
    }

    pub fn overlay(&self) -> Vec<u8> {
        self.overlay.clone()
    }

    /// Effective degree per patch in raster order.
    pub fn degrees(&self) -> Vec<u8> {
        self.degrees.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn grid_rows(&self) -> usize {
        self.grid_rows
    }

    #[wasm_bindgen(getter)]
    pub fn grid_cols(&self) -> usize {
        self.grid_cols
    }

    #[wasm_bindgen(getter)]
    pub fn edge_percent(&self) -> f64 {
        self.edge_percent
    }

    #[wasm_bindgen(getter)]
    pub fn groups(&self) -> usize {
        self.groups
    }
}

/// Runs the sequential pipeline on an RGBA canvas buffer (alpha ignored).
pub fn segment_pixels(rgba: &[u8], width: usize, height: usize, p: DemoParams) -> Result<Segmentation, String> {
    if rgba.len() != width * height * 4 {
        return Err(format!("expected {} RGBA bytes, got {}", width * height * 4, rgba.len()));
    }
    let gray = rgba.chunks_exact(4).map(|px| luminance(px[0], px[1], px[2])).collect();
    let img = GrayImage::new(width, height, gray).map_err(|e| e.to_string())?;
    let cfg = PipelineConfig {
        gaussian: p.gaussian,
        bin_width: p.bin_width,
        patch: PatchSpec::new(p.patch, p.patch).map_err(|e| e.to_string())?,
        threshold: p.threshold,
        grouping: GroupingMode::ModuloConstant,
        refine: if p.refine { RefineMode::FavorEdge } else { RefineMode::None },
        workers: 1,
        ..PipelineConfig::default()
    };
    let out = pbpseg::run(&img, &cfg).map_err(|e| e.to_string())?;
    let res = &out.result;
    let (mask, overlay) = render_masks(&MaskImage::from_result(res), &res.grid, &img).map_err(|e| e.to_string())?;
    Ok(Segmentation {
        mask: mask.to_rgba(),
        overlay: overlay.to_rgba(),
        degrees: res.records.iter().map(|r| r.effective_degree.min(255) as u8).collect(),
        grid_rows: res.grid.rows(),
        grid_cols: res.grid.cols(),
        edge_percent: res.edge_percent(),
        groups: res.group_count(),
    })
}

/// Dark square, disc and triangle on a light background, as RGBA.
pub fn primitives(width: usize, height: usize) -> Vec<u8> {
    let (w, h) = (width as f64, height as f64);
    let mut out = Vec::with_capacity(width * height * 4);
    for y in 0..height {
        for x in 0..width {
            let (fx, fy) = (x as f64 + 0.5, y as f64 + 0.5);
            let square = fx > 0.1 * w && fx < 0.4 * w && fy > 0.1 * h && fy < 0.4 * h;
            let (dx, dy) = (fx - 0.7 * w, fy - 0.3 * h);
            let disc = dx * dx + dy * dy < (0.17 * w.min(h)).powi(2);
            // apex at the top, base along 0.9h
            let t = (fy - 0.55 * h) / (0.35 * h);
            let triangle = (0.0..=1.0).contains(&t) && (fx - 0.5 * w).abs() < t * 0.3 * w;
            let v = if square {
                30
            } else if disc {
                90
            } else if triangle {
                150
            } else {
                230
            };
            out.extend([v, v, v, 255]);
        }
    }
    out
}

#[wasm_bindgen(js_name = reduceMatrix)]
pub fn reduce_matrix(text: &str) -> Result<String, JsError> {
    let c = parse_matrix(text).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&reduction_report(&c)).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = segmentImage)]
#[allow(clippy::too_many_arguments)]
pub fn segment_image(
    rgba: &[u8],
    width: usize,
    height: usize,
    patch: usize,
    bin_width: u32,
    gaussian: usize,
    threshold: usize,
    refine: bool,
) -> Result<Segmentation, JsError> {
    let params = DemoParams {
        patch,
        bin_width,
        gaussian,
        threshold,
        refine,
    };
    segment_pixels(rgba, width, height, params).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = primitivesImage)]
pub fn primitives_image(width: usize, height: usize) -> Vec<u8> {
    primitives(width, height)
}
