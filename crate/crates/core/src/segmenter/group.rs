use std::collections::VecDeque;

use super::{BlobGroup, GroupingMode, PatchClass, PatchRecord};
use crate::pbp::EquivalenceKey;

/// Labels 4-connected runs of blob patches, optionally requiring equal
/// equivalence keys between neighbors. Ids follow the raster order of each
/// group's first patch. Edge patches get `None`.
pub fn group_blobs(records: &mut [PatchRecord], rows: usize, cols: usize, mode: GroupingMode) -> Vec<BlobGroup> {
    assert_eq!(records.len(), rows * cols, "records must cover the grid");
    let keys: Vec<Option<EquivalenceKey>> = records
        .iter()
        .map(|r| match (r.class, mode) {
            (PatchClass::Edge, _) | (_, GroupingMode::Connectivity) => None,
            (PatchClass::Blob, GroupingMode::StrictPolynomial) => Some(r.polynomial.equivalence_key(true)),
            (PatchClass::Blob, GroupingMode::ModuloConstant) => Some(r.polynomial.equivalence_key(false)),
        })
        .collect();
    let joins = |a: usize, b: usize| {
        records[a].class == PatchClass::Blob && records[b].class == PatchClass::Blob && keys[a] == keys[b]
    };

    let mut label: Vec<Option<u32>> = vec![None; records.len()];
    let mut groups = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..records.len() {
        if records[start].class != PatchClass::Blob || label[start].is_some() {
            continue;
        }
        let id = groups.len() as u32;
        let mut members = vec![start];
        label[start] = Some(id);
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            let (r, c) = (i / cols, i % cols);
            let neighbors = [
                (r > 0).then(|| i - cols),
                (r + 1 < rows).then(|| i + cols),
                (c > 0).then(|| i - 1),
                (c + 1 < cols).then(|| i + 1),
            ];
            for j in neighbors.into_iter().flatten() {
                if label[j].is_none() && joins(i, j) {
                    label[j] = Some(id);
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        groups.push(BlobGroup {
            id,
            size: members.len(),
            members,
        });
    }
    for (rec, l) in records.iter_mut().zip(label) {
        rec.group = l;
    }
    groups
}
