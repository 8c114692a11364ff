//! Edge/blob classification of patches by reduced-polynomial degree,
//! equivalence grouping of blob patches, and neighborhood refinement.

mod group;
mod refine;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use group::group_blobs;
pub use refine::refine;

use crate::error::{Error, Result};
use crate::imaging::QuantizedImage;
use crate::patcher::{extract, PatchGrid, PatchSpec, Rect};
use crate::pbp::{reduce, CostMatrix, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatchClass {
    Blob,
    Edge,
}

/// How blob patches are merged into groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GroupingMode {
    /// Same polynomial, constant included, and 4-connected.
    StrictPolynomial,
    /// Same polynomial up to its constant, and 4-connected.
    #[default]
    ModuloConstant,
    /// Any 4-connected blob patches.
    Connectivity,
}

impl GroupingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupingMode::StrictPolynomial => "strict",
            GroupingMode::ModuloConstant => "modconst",
            GroupingMode::Connectivity => "connect",
        }
    }
}

impl FromStr for GroupingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(GroupingMode::StrictPolynomial),
            "modconst" => Ok(GroupingMode::ModuloConstant),
            "connect" => Ok(GroupingMode::Connectivity),
            _ => Err(Error::param(format!(
                "grouping must be strict, modconst or connect, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for GroupingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RefineMode {
    #[default]
    None,
    FavorEdge,
    FavorBlob,
}

impl RefineMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RefineMode::None => "none",
            RefineMode::FavorEdge => "favor-edge",
            RefineMode::FavorBlob => "favor-blob",
        }
    }
}

impl FromStr for RefineMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(RefineMode::None),
            "favor-edge" => Ok(RefineMode::FavorEdge),
            "favor-blob" => Ok(RefineMode::FavorBlob),
            _ => Err(Error::param(format!(
                "refine must be none, favor-edge or favor-blob, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for RefineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! serialize_as_str {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }
    )*};
}
serialize_as_str!(GroupingMode, RefineMode);

/// Outcome of classifying one cost matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub degree_normal: usize,
    pub degree_transposed: usize,
    pub effective_degree: usize,
    pub class: PatchClass,
    /// Reduced polynomial of the patch as extracted (not transposed).
    pub polynomial: Polynomial,
}

/// Edge when the larger of the normal and transposed degrees reaches `threshold`.
pub fn classify_patch(c: &CostMatrix, threshold: usize) -> Result<Classification> {
    if threshold == 0 {
        return Err(Error::param("threshold must be at least 1"));
    }
    let polynomial = reduce(c);
    let degree_normal = polynomial.degree();
    let degree_transposed = reduce(&c.transpose()).degree();
    let effective_degree = degree_normal.max(degree_transposed);
    let class = if effective_degree >= threshold {
        PatchClass::Edge
    } else {
        PatchClass::Blob
    };
    Ok(Classification {
        degree_normal,
        degree_transposed,
        effective_degree,
        class,
        polynomial,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatchRecord {
    pub row: usize,
    pub col: usize,
    #[serde(flatten)]
    pub rect: Rect,
    pub degree_normal: usize,
    pub degree_transposed: usize,
    pub effective_degree: usize,
    pub class: PatchClass,
    /// Set when refinement overrode the degree-threshold class.
    pub refined: bool,
    pub group: Option<u32>,
    #[serde(skip)]
    pub polynomial: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlobGroup {
    pub id: u32,
    pub size: usize,
    /// Row-major patch indices.
    pub members: Vec<usize>,
}

/// Parameters echoed into every result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub gaussian: usize,
    pub bin_width: u8,
    pub patch: PatchSpec,
    pub threshold: usize,
    pub grouping: GroupingMode,
    pub refine: RefineMode,
    pub refine_k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentationResult {
    pub params: Parameters,
    pub grid: PatchGrid,
    pub records: Vec<PatchRecord>,
    pub groups: Vec<BlobGroup>,
}

#[derive(Serialize)]
struct GridView {
    rows: usize,
    cols: usize,
    width: usize,
    height: usize,
}

#[derive(Serialize)]
struct SummaryView {
    patches: usize,
    edge_patches: usize,
    blob_patches: usize,
    groups: usize,
}

#[derive(Serialize)]
struct ResultView<'a> {
    parameters: &'a Parameters,
    grid: GridView,
    summary: SummaryView,
    patches: &'a [PatchRecord],
    groups: &'a [BlobGroup],
}

impl SegmentationResult {
    pub fn edge_count(&self) -> usize {
        self.records.iter().filter(|r| r.class == PatchClass::Edge).count()
    }

    pub fn edge_percent(&self) -> f64 {
        100.0 * self.edge_count() as f64 / self.records.len().max(1) as f64
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn record(&self, row: usize, col: usize) -> Option<&PatchRecord> {
        (row < self.grid.rows() && col < self.grid.cols()).then(|| &self.records[row * self.grid.cols() + col])
    }

    pub fn classes(&self) -> Vec<PatchClass> {
        self.records.iter().map(|r| r.class).collect()
    }

    /// Pretty JSON with a fixed field order; identical inputs give identical bytes.
    pub fn to_json(&self) -> String {
        let edge = self.edge_count();
        let view = ResultView {
            parameters: &self.params,
            grid: GridView {
                rows: self.grid.rows(),
                cols: self.grid.cols(),
                width: self.grid.width(),
                height: self.grid.height(),
            },
            summary: SummaryView {
                patches: self.records.len(),
                edge_patches: edge,
                blob_patches: self.records.len() - edge,
                groups: self.groups.len(),
            },
            patches: &self.records,
            groups: &self.groups,
        };
        let mut s = serde_json::to_string_pretty(&view).expect("result serializes");
        s.push('\n');
        s
    }
}

/// Options for [`segment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentOptions {
    pub threshold: usize,
    pub grouping: GroupingMode,
    /// Worker threads for classification; 0 picks automatically.
    pub workers: usize,
}

impl Default for SegmentOptions {
    fn default() -> Self {
        SegmentOptions {
            threshold: 1,
            grouping: GroupingMode::default(),
            workers: 0,
        }
    }
}

/// Classifies every patch of `grid` independently and in parallel.
/// Output order follows the grid, so results never depend on scheduling.
pub fn classify_grid(img: &QuantizedImage, grid: &PatchGrid, threshold: usize, workers: usize) -> Result<Vec<Classification>> {
    if grid.width() != img.width() || grid.height() != img.height() {
        return Err(Error::consistency(format!(
            "grid planned for {}x{} but image is {}x{}",
            grid.width(),
            grid.height(),
            img.width(),
            img.height()
        )));
    }
    if threshold == 0 {
        return Err(Error::param("threshold must be at least 1"));
    }
    let one = |rect: &Rect| extract(img, *rect).and_then(|c| classify_patch(&c, threshold));
    run_parallel(grid.rects(), workers, one)
}

#[cfg(feature = "parallel")]
fn run_parallel<T, R, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync,
{
    use rayon::prelude::*;
    if workers == 1 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::consistency(format!("cannot start worker pool: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<T, R, F>(items: &[T], _workers: usize, f: F) -> Result<Vec<R>>
where
    F: Fn(&T) -> Result<R>,
{
    items.iter().map(f).collect()
}

pub fn segment(img: &QuantizedImage, grid: &PatchGrid, opts: SegmentOptions) -> Result<SegmentationResult> {
    let classes = classify_grid(img, grid, opts.threshold, opts.workers)?;
    let cols = grid.cols();
    let mut records: Vec<PatchRecord> = classes
        .into_iter()
        .zip(grid.rects())
        .enumerate()
        .map(|(i, (c, &rect))| PatchRecord {
            row: i / cols,
            col: i % cols,
            rect,
            degree_normal: c.degree_normal,
            degree_transposed: c.degree_transposed,
            effective_degree: c.effective_degree,
            class: c.class,
            refined: false,
            group: None,
            polynomial: c.polynomial,
        })
        .collect();
    let groups = group_blobs(&mut records, grid.rows(), cols, opts.grouping);
    Ok(SegmentationResult {
        params: Parameters {
            gaussian: 0,
            bin_width: img.bin_width(),
            patch: grid.spec(),
            threshold: opts.threshold,
            grouping: opts.grouping,
            refine: RefineMode::None,
            refine_k: 0,
        },
        grid: grid.clone(),
        records,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::{quantize, GrayImage};
    use crate::patcher::plan_grid;

    fn m(rows: &[[u64; 4]]) -> CostMatrix {
        CostMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn constant_patch_is_blob() {
        let c = CostMatrix::new(4, 4, vec![99; 16]).unwrap();
        for p in 1..4 {
            let r = classify_patch(&c, p).unwrap();
            assert_eq!((r.effective_degree, r.class), (0, PatchClass::Blob));
        }
        assert!(classify_patch(&c, 0).is_err());
    }

    #[test]
    fn high_order_patch_is_edge() {
        let c = m(&[[254, 254, 6, 17], [254, 254, 6, 17], [254, 254, 6, 17], [254, 254, 6, 123]]);
        let r = classify_patch(&c, 2).unwrap();
        assert_eq!(r.degree_normal, 3);
        assert_eq!(r.class, PatchClass::Edge);
    }

    #[test]
    fn transposed_degree_catches_row_structure() {
        // constant columns: normal degree 0, but rows differ
        let c = m(&[[254, 254, 19, 84]; 4]);
        let r = classify_patch(&c, 1).unwrap();
        assert_eq!(r.degree_normal, 0);
        assert_eq!(r.degree_transposed, 2);
        assert_eq!(r.class, PatchClass::Edge);
    }

    #[test]
    fn uniform_image_is_one_blob_group() {
        let q = quantize(&GrayImage::filled(32, 24, 128).unwrap(), 40).unwrap();
        let grid = plan_grid(32, 24, PatchSpec::new(4, 4).unwrap()).unwrap();
        let res = segment(&q, &grid, SegmentOptions::default()).unwrap();
        assert_eq!(res.edge_count(), 0);
        assert_eq!(res.group_count(), 1);
        assert_eq!(res.groups[0].size, grid.len());
    }

    #[test]
    fn checkerboard_patches_are_identical() {
        let img = GrayImage::from_fn(32, 32, |x, y| if (x + y) % 2 == 0 { 0 } else { 255 }).unwrap();
        let q = quantize(&img, 40).unwrap();
        let grid = plan_grid(32, 32, PatchSpec::new(4, 4).unwrap()).unwrap();
        for threshold in 1..=3 {
            let res = segment(
                &q,
                &grid,
                SegmentOptions {
                    threshold,
                    grouping: GroupingMode::StrictPolynomial,
                    workers: 1,
                },
            )
            .unwrap();
            let first = &res.records[0];
            assert!(res.records.iter().all(|r| r.class == first.class && r.polynomial == first.polynomial));
            if first.class == PatchClass::Blob {
                assert_eq!(res.group_count(), 1);
            }
        }
    }

    #[test]
    fn grid_mismatch_is_consistency_error() {
        let q = quantize(&GrayImage::filled(16, 16, 0).unwrap(), 1).unwrap();
        let grid = plan_grid(20, 16, PatchSpec::new(4, 4).unwrap()).unwrap();
        let err = segment(&q, &grid, SegmentOptions::default()).unwrap_err();
        assert_eq!(err.kind(), crate::ErrorKind::Consistency);
    }

    #[test]
    fn mode_names_roundtrip() {
        for g in [GroupingMode::StrictPolynomial, GroupingMode::ModuloConstant, GroupingMode::Connectivity] {
            assert_eq!(g.as_str().parse::<GroupingMode>().unwrap(), g);
        }
        for r in [RefineMode::None, RefineMode::FavorEdge, RefineMode::FavorBlob] {
            assert_eq!(r.as_str().parse::<RefineMode>().unwrap(), r);
        }
        assert!("fuzzy".parse::<GroupingMode>().is_err());
    }
}
