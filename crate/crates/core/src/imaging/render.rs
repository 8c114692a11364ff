use super::GrayImage;
use crate::error::{Error, Result};
use crate::patcher::PatchGrid;
use crate::segmenter::{PatchClass, SegmentationResult};

pub const BLOB_COLOR: [u8; 3] = [0, 0, 255];
pub const EDGE_COLOR: [u8; 3] = [255, 255, 255];

/// Interleaved 8-bit RGB raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

impl RgbImage {
    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    /// RGBA copy with opaque alpha, for canvas output.
    pub fn to_rgba(&self) -> Vec<u8> {
        self.data
            .chunks_exact(3)
            .flat_map(|p| [p[0], p[1], p[2], 255])
            .collect()
    }
}

/// Per-patch classes (and blob group ids) in grid units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskImage {
    pub grid_rows: usize,
    pub grid_cols: usize,
    pub cells: Vec<PatchClass>,
    pub groups: Vec<Option<u32>>,
}

impl MaskImage {
    pub fn uniform(grid_rows: usize, grid_cols: usize, class: PatchClass) -> Self {
        MaskImage {
            grid_rows,
            grid_cols,
            cells: vec![class; grid_rows * grid_cols],
            groups: vec![None; grid_rows * grid_cols],
        }
    }

    pub fn from_result(result: &SegmentationResult) -> Self {
        MaskImage {
            grid_rows: result.grid.rows(),
            grid_cols: result.grid.cols(),
            cells: result.records.iter().map(|r| r.class).collect(),
            groups: result.records.iter().map(|r| r.group).collect(),
        }
    }

    pub fn set(&mut self, row: usize, col: usize, class: PatchClass) {
        self.cells[row * self.grid_cols + col] = class;
    }
}

/// Paints blob patches blue and edge patches white at full resolution, and
/// blends that mask 50/50 over the base image.
pub fn render_masks(mask: &MaskImage, grid: &PatchGrid, base: &GrayImage) -> Result<(RgbImage, RgbImage)> {
    if mask.grid_rows != grid.rows() || mask.grid_cols != grid.cols() || mask.cells.len() != grid.len() {
        return Err(Error::consistency(format!(
            "mask is {}x{} but grid is {}x{}",
            mask.grid_rows,
            mask.grid_cols,
            grid.rows(),
            grid.cols()
        )));
    }
    if base.width() != grid.width() || base.height() != grid.height() {
        return Err(Error::consistency(format!(
            "base image is {}x{} but grid covers {}x{}",
            base.width(),
            base.height(),
            grid.width(),
            grid.height()
        )));
    }
    let (w, h) = (base.width(), base.height());
    let mut painted = vec![0u8; w * h * 3];
    for (rect, class) in grid.rects().iter().zip(&mask.cells) {
        let color = match class {
            PatchClass::Blob => BLOB_COLOR,
            PatchClass::Edge => EDGE_COLOR,
        };
        for y in rect.y..rect.y + rect.h {
            for x in rect.x..rect.x + rect.w {
                let i = (y * w + x) * 3;
                painted[i..i + 3].copy_from_slice(&color);
            }
        }
    }
    let mut overlay = Vec::with_capacity(painted.len());
    for (c, &g) in painted.chunks_exact(3).zip(base.pixels()) {
        overlay.extend(c.iter().map(|&v| (v as u16 + g as u16).div_ceil(2) as u8));
    }
    Ok((
        RgbImage {
            width: w,
            height: h,
            data: painted,
        },
        RgbImage {
            width: w,
            height: h,
            data: overlay,
        },
    ))
}
