//! The full image → segmentation pipeline shared by the CLI and the demo.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::imaging::{gaussian_blur, quantize, render_masks, GrayImage, MaskImage, QuantizedImage, RgbImage};
use crate::patcher::{plan_grid, PatchSpec};
use crate::segmenter::{refine, segment, GroupingMode, RefineMode, SegmentOptions, SegmentationResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Odd Gaussian kernel size; 0 skips smoothing.
    pub gaussian: usize,
    pub bin_width: u32,
    pub patch: PatchSpec,
    pub threshold: usize,
    pub grouping: GroupingMode,
    pub refine: RefineMode,
    pub refine_k: usize,
    /// Classification workers; 0 picks automatically.
    pub workers: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            gaussian: 0,
            bin_width: 40,
            patch: PatchSpec { height: 4, width: 4 },
            threshold: 1,
            grouping: GroupingMode::ModuloConstant,
            refine: RefineMode::None,
            refine_k: 3,
            workers: 0,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.gaussian != 0 && self.gaussian.is_multiple_of(2) {
            return Err(Error::param(format!("gaussian kernel must be odd or 0, got {}", self.gaussian)));
        }
        if !(1..=255).contains(&self.bin_width) {
            return Err(Error::param(format!("bin width must be in 1..=255, got {}", self.bin_width)));
        }
        if self.threshold == 0 {
            return Err(Error::param("threshold must be at least 1"));
        }
        if !(1..=4).contains(&self.refine_k) {
            return Err(Error::param(format!("refine-k must be in 1..=4, got {}", self.refine_k)));
        }
        PatchSpec::new(self.patch.height, self.patch.width)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct StageTimings {
    pub blur: Duration,
    pub quantize: Duration,
    pub classify: Duration,
    pub refine: Duration,
}

impl StageTimings {
    pub fn total(&self) -> Duration {
        self.blur + self.quantize + self.classify + self.refine
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub quantized: QuantizedImage,
    pub result: SegmentationResult,
    pub timings: StageTimings,
}

impl PipelineOutput {
    /// Mask and overlay rasters at the input resolution.
    pub fn render(&self, base: &GrayImage) -> Result<(RgbImage, RgbImage)> {
        render_masks(&MaskImage::from_result(&self.result), &self.result.grid, base)
    }
}

/// `Instant::now` panics on wasm32-unknown-unknown, where stages report zero.
struct Stopwatch(#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))] std::time::Instant);

impl Stopwatch {
    fn start() -> Self {
        Stopwatch(
            #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
            std::time::Instant::now(),
        )
    }

    fn elapsed(&self) -> Duration {
        #[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
        return self.0.elapsed();
        #[cfg(all(target_arch = "wasm32", target_os = "unknown"))]
        Duration::ZERO
    }
}

/// blur → quantize → grid → classify/group → refine.
pub fn run(img: &GrayImage, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    cfg.validate()?;
    let mut timings = StageTimings::default();

    let t = Stopwatch::start();
    let smoothed = if cfg.gaussian > 0 {
        Some(gaussian_blur(img, cfg.gaussian)?)
    } else {
        None
    };
    timings.blur = t.elapsed();

    let t = Stopwatch::start();
    let quantized = quantize(smoothed.as_ref().unwrap_or(img), cfg.bin_width)?;
    timings.quantize = t.elapsed();

    let t = Stopwatch::start();
    let grid = plan_grid(img.width(), img.height(), cfg.patch)?;
    let mut result = segment(
        &quantized,
        &grid,
        SegmentOptions {
            threshold: cfg.threshold,
            grouping: cfg.grouping,
            workers: cfg.workers,
        },
    )?;
    timings.classify = t.elapsed();

    let t = Stopwatch::start();
    result = refine(&result, cfg.refine, cfg.refine_k)?;
    result.params.gaussian = cfg.gaussian;
    timings.refine = t.elapsed();

    Ok(PipelineOutput {
        quantized,
        result,
        timings,
    })
}
