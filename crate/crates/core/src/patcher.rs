//! Non-overlapping patch tiling and cost-matrix extraction.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::imaging::QuantizedImage;
use crate::pbp::CostMatrix;

pub const MIN_PATCH: usize = 2;
pub const MAX_PATCH: usize = 64;

/// Nominal patch height and width in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatchSpec {
    pub height: usize,
    pub width: usize,
}

impl PatchSpec {
    pub fn new(height: usize, width: usize) -> Result<Self> {
        for (name, v) in [("height", height), ("width", width)] {
            if !(MIN_PATCH..=MAX_PATCH).contains(&v) {
                return Err(Error::param(format!(
                    "patch {name} must be in {MIN_PATCH}..={MAX_PATCH}, got {v}"
                )));
            }
        }
        Ok(PatchSpec { height, width })
    }

    pub fn transpose(self) -> Self {
        PatchSpec {
            height: self.width,
            width: self.height,
        }
    }
}

impl FromStr for PatchSpec {
    type Err = Error;

    /// Parses `HxW`, e.g. `4x4` or `6x8`.
    fn from_str(s: &str) -> Result<Self> {
        let (h, w) = s
            .trim()
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::param(format!("patch spec {s:?} is not HxW")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::param(format!("patch spec {s:?} is not HxW")))
        };
        PatchSpec::new(parse(h)?, parse(w)?)
    }
}

impl fmt::Display for PatchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.height, self.width)
    }
}

impl Serialize for PatchSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Pixel rectangle of one patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

impl Rect {
    pub fn area(&self) -> usize {
        self.w * self.h
    }
}

/// Exact tiling of an image into patch rectangles, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchGrid {
    width: usize,
    height: usize,
    spec: PatchSpec,
    row_spans: Vec<(usize, usize)>,
    col_spans: Vec<(usize, usize)>,
    rects: Vec<Rect>,
}

impl PatchGrid {
    pub fn rows(&self) -> usize {
        self.row_spans.len()
    }

    pub fn cols(&self) -> usize {
        self.col_spans.len()
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn spec(&self) -> PatchSpec {
        self.spec
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn rect(&self, row: usize, col: usize) -> Option<Rect> {
        if row < self.rows() && col < self.cols() {
            Some(self.rects[row * self.cols() + col])
        } else {
            None
        }
    }
}

/// Splits `extent` into spans of `size`, folding a 1-pixel remainder into
/// the last full span.
fn spans(extent: usize, size: usize) -> Vec<(usize, usize)> {
    let full = extent / size;
    let rem = extent % size;
    let mut out: Vec<(usize, usize)> = (0..full).map(|i| (i * size, size)).collect();
    match rem {
        0 => {}
        1 => out.last_mut().expect("extent >= size").1 += 1,
        _ => out.push((full * size, rem)),
    }
    out
}

pub fn plan_grid(width: usize, height: usize, spec: PatchSpec) -> Result<PatchGrid> {
    if width < spec.width || height < spec.height {
        return Err(Error::param(format!(
            "image {width}x{height} is smaller than one {spec} patch"
        )));
    }
    let row_spans = spans(height, spec.height);
    let col_spans = spans(width, spec.width);
    let mut rects = Vec::with_capacity(row_spans.len() * col_spans.len());
    for &(y, h) in &row_spans {
        for &(x, w) in &col_spans {
            rects.push(Rect { x, y, w, h });
        }
    }
    Ok(PatchGrid {
        width,
        height,
        spec,
        row_spans,
        col_spans,
        rects,
    })
}

/// Copies the pixels under `rect` into a cost matrix (rows = rect height).
pub fn extract(img: &QuantizedImage, rect: Rect) -> Result<CostMatrix> {
    if rect.w == 0 || rect.h == 0 || rect.x + rect.w > img.width() || rect.y + rect.h > img.height() {
        return Err(Error::consistency(format!(
            "patch {rect:?} outside {}x{} image",
            img.width(),
            img.height()
        )));
    }
    let mut cells = Vec::with_capacity(rect.area());
    for y in rect.y..rect.y + rect.h {
        let row = &img.pixels()[y * img.width() + rect.x..y * img.width() + rect.x + rect.w];
        cells.extend(row.iter().map(|&p| p as u64));
    }
    CostMatrix::new(rect.h, rect.w, cells)
}

pub fn transpose(c: &CostMatrix) -> CostMatrix {
    c.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::{quantize, GrayImage};

    fn coverage_ok(grid: &PatchGrid) -> bool {
        let mut hits = vec![0u8; grid.width() * grid.height()];
        for r in grid.rects() {
            for y in r.y..r.y + r.h {
                for x in r.x..r.x + r.w {
                    hits[y * grid.width() + x] += 1;
                }
            }
        }
        hits.iter().all(|&h| h == 1)
    }

    #[test]
    fn parses_spec() {
        assert_eq!("4x4".parse::<PatchSpec>().unwrap(), PatchSpec::new(4, 4).unwrap());
        assert_eq!("6X8".parse::<PatchSpec>().unwrap().to_string(), "6x8");
        for bad in ["4", "1x4", "4x65", "axb", ""] {
            assert!(bad.parse::<PatchSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_division() {
        let g = plan_grid(200, 200, PatchSpec::new(4, 4).unwrap()).unwrap();
        assert_eq!((g.rows(), g.cols()), (50, 50));
        assert!(g.rects().iter().all(|r| (r.w, r.h) == (4, 4)));
        assert!(coverage_ok(&g));
    }

    #[test]
    fn remainder_strip() {
        let g = plan_grid(200, 200, PatchSpec::new(6, 6).unwrap()).unwrap();
        assert_eq!((g.rows(), g.cols()), (34, 34));
        assert_eq!(g.rect(33, 0).unwrap().h, 2);
        assert_eq!(g.rect(0, 33).unwrap().w, 2);
        assert_eq!(g.rect(32, 32).unwrap(), Rect { x: 192, y: 192, w: 6, h: 6 });
        assert!(coverage_ok(&g));
    }

    #[test]
    fn one_pixel_remainder_merges() {
        let g = plan_grid(9, 9, PatchSpec::new(4, 4).unwrap()).unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 2));
        assert_eq!(g.rect(0, 0).unwrap(), Rect { x: 0, y: 0, w: 4, h: 4 });
        assert_eq!(g.rect(1, 1).unwrap(), Rect { x: 4, y: 4, w: 5, h: 5 });
        assert!(coverage_ok(&g));
        assert!(plan_grid(3, 9, PatchSpec::new(4, 4).unwrap()).is_err());
    }

    #[test]
    fn extract_copies_pixels() {
        let img = GrayImage::from_fn(7, 5, |x, y| (x * 10 + y) as u8).unwrap();
        let q = quantize(&img, 1).unwrap();
        let c = extract(&q, Rect { x: 5, y: 3, w: 2, h: 2 }).unwrap();
        assert_eq!(c.cells(), &[53, 63, 54, 64]);
        assert!(extract(&q, Rect { x: 6, y: 0, w: 2, h: 2 }).is_err());

        let one = quantize(&GrayImage::filled(1, 1, 9).unwrap(), 1).unwrap();
        let c = extract(&one, Rect { x: 0, y: 0, w: 1, h: 1 }).unwrap();
        assert_eq!((c.rows(), c.cols(), c.cells()), (1, 1, &[9u64][..]));
    }

    #[test]
    fn extract_constant_region() {
        let q = quantize(&GrayImage::filled(8, 8, 99).unwrap(), 1).unwrap();
        let c = extract(&q, Rect { x: 4, y: 0, w: 4, h: 4 }).unwrap();
        assert_eq!(c, CostMatrix::new(4, 4, vec![99; 16]).unwrap());
    }
}
