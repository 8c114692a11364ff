use super::{group_blobs, PatchClass, RefineMode, SegmentationResult};
use crate::error::{Error, Result};

/// One synchronous voting pass over the class grid.
///
/// `FavorEdge` turns a blob into an edge when at least `k` of its four
/// neighbors are edges; `FavorBlob` is the mirror image. Votes are counted
/// on the grid as it was before the pass. Groups are recomputed afterwards.
pub fn refine(result: &SegmentationResult, mode: RefineMode, k: usize) -> Result<SegmentationResult> {
    if !(1..=4).contains(&k) {
        return Err(Error::param(format!("refine neighbor count must be in 1..=4, got {k}")));
    }
    let mut out = result.clone();
    out.params.refine = mode;
    out.params.refine_k = k;
    let (from, to) = match mode {
        RefineMode::None => return Ok(out),
        RefineMode::FavorEdge => (PatchClass::Blob, PatchClass::Edge),
        RefineMode::FavorBlob => (PatchClass::Edge, PatchClass::Blob),
    };

    let (rows, cols) = (result.grid.rows(), result.grid.cols());
    let before = result.classes();
    for (i, rec) in out.records.iter_mut().enumerate() {
        if before[i] != from {
            continue;
        }
        let (r, c) = (i / cols, i % cols);
        let votes = [
            (r > 0).then(|| i - cols),
            (r + 1 < rows).then(|| i + cols),
            (c > 0).then(|| i - 1),
            (c + 1 < cols).then(|| i + 1),
        ]
        .into_iter()
        .flatten()
        .filter(|&j| before[j] == to)
        .count();
        if votes >= k {
            rec.class = to;
            rec.refined = !rec.refined;
        }
    }
    out.groups = group_blobs(&mut out.records, rows, cols, out.params.grouping);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::{quantize, GrayImage};
    use crate::patcher::{plan_grid, PatchSpec};
    use crate::segmenter::{segment, SegmentOptions};

    fn base(classes: &[&str]) -> SegmentationResult {
        let rows = classes.len();
        let cols = classes[0].len();
        let img = GrayImage::filled(cols * 4, rows * 4, 0).unwrap();
        let q = quantize(&img, 1).unwrap();
        let grid = plan_grid(cols * 4, rows * 4, PatchSpec::new(4, 4).unwrap()).unwrap();
        let mut res = segment(&q, &grid, SegmentOptions::default()).unwrap();
        for (r, line) in classes.iter().enumerate() {
            for (c, ch) in line.chars().enumerate() {
                res.records[r * cols + c].class = if ch == 'E' { PatchClass::Edge } else { PatchClass::Blob };
            }
        }
        res.groups = group_blobs(&mut res.records, rows, cols, res.params.grouping);
        res
    }

    fn classes(res: &SegmentationResult) -> Vec<String> {
        res.records
            .chunks(res.grid.cols())
            .map(|row| {
                row.iter()
                    .map(|r| if r.class == PatchClass::Edge { 'E' } else { 'B' })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn none_is_identity() {
        let res = base(&["BEB", "EBE", "BEB"]);
        let out = refine(&res, RefineMode::None, 2).unwrap();
        assert_eq!(out.records, res.records);
        assert_eq!(out.params.refine, RefineMode::None);
    }

    #[test]
    fn surrounded_blob_flips_to_edge() {
        let res = base(&["BEB", "EBE", "BEB"]);
        let out = refine(&res, RefineMode::FavorEdge, 3).unwrap();
        assert_eq!(classes(&out), ["BEB", "EEE", "BEB"]);
        assert!(out.records[4].refined);
        // four corner blobs remain, each isolated
        assert_eq!(out.group_count(), 4);
    }

    #[test]
    fn no_cascading_within_a_pass() {
        // with k=1 only the direct neighbors of the original edge flip
        let res = base(&["BBBB", "BEBB", "BBBB"]);
        let out = refine(&res, RefineMode::FavorEdge, 1).unwrap();
        assert_eq!(classes(&out), ["BEBB", "EEEB", "BEBB"]);
    }

    #[test]
    fn all_blob_grid_unchanged() {
        let res = base(&["BBB", "BBB"]);
        for k in 1..=4 {
            assert_eq!(refine(&res, RefineMode::FavorEdge, k).unwrap().records, res.records);
        }
    }

    #[test]
    fn favor_blob_mirrors() {
        let res = base(&["EBE", "BEB", "EBE"]);
        let out = refine(&res, RefineMode::FavorBlob, 4).unwrap();
        assert_eq!(classes(&out), ["EBE", "BBB", "EBE"]);
        assert_eq!(out.group_count(), 1);
    }

    #[test]
    fn k_out_of_range() {
        let res = base(&["BB"]);
        assert!(refine(&res, RefineMode::FavorEdge, 0).is_err());
        assert!(refine(&res, RefineMode::FavorEdge, 5).is_err());
    }
}
