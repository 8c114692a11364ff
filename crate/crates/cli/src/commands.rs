use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use pbpseg::imaging::{encode_png_rgb, gaussian_blur, load_image, quantize, write_atomic};
use pbpseg::patcher::{extract, plan_grid};
use pbpseg::pbp::{column_pack, ReductionTrace};
use pbpseg::segmenter::classify_patch;
use pbpseg::{CostMatrix, Error, PatchSpec, PipelineConfig};

use crate::args::{parse_coord, Settings};

/// An error tagged with the pipeline stage that raised it.
#[derive(Debug)]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

pub type CmdResult<T> = Result<T, StageError>;

pub trait Tag<T> {
    fn at(self, stage: &'static str) -> CmdResult<T>;
}

impl<T> Tag<T> for Result<T, Error> {
    fn at(self, stage: &'static str) -> CmdResult<T> {
        self.map_err(|error| StageError { stage, error })
    }
}

#[derive(Debug, Clone)]
pub struct Summary {
    pub patches: usize,
    pub edge_percent: f64,
    pub groups: usize,
    pub wall_ms: f64,
}

impl Summary {
    pub fn line(&self) -> String {
        format!(
            "patches={} edge={:.2}% groups={} time={:.1}ms",
            self.patches, self.edge_percent, self.groups, self.wall_ms
        )
    }
}

/// Removes every file it tracks unless disarmed.
struct Cleanup(Vec<PathBuf>);

impl Drop for Cleanup {
    fn drop(&mut self) {
        for p in &self.0 {
            let _ = fs::remove_file(p);
        }
    }
}

pub fn segment(input: &Path, settings: &Settings) -> CmdResult<Summary> {
    let start = Instant::now();
    let cfg = settings.pipeline().at("config")?;
    let out = settings.out_dir();
    segment_into(input, &cfg, &out, start)
}

fn segment_into(input: &Path, cfg: &PipelineConfig, out: &Path, start: Instant) -> CmdResult<Summary> {
    let img = load_image(input).at("load")?;
    let output = pbpseg::run(&img, cfg).at("segment")?;
    let (mask, overlay) = output.render(&img).at("render")?;
    let files = [
        ("mask.png", encode_png_rgb(&mask).at("render")?),
        ("overlay.png", encode_png_rgb(&overlay).at("render")?),
        ("result.json", output.result.to_json().into_bytes()),
    ];

    fs::create_dir_all(out)
        .map_err(|source| Error::Write {
            path: out.to_path_buf(),
            source,
        })
        .at("write")?;
    let mut cleanup = Cleanup(Vec::new());
    for (name, bytes) in &files {
        let path = out.join(name);
        cleanup.0.push(path.clone());
        write_atomic(&path, bytes).at("write")?;
    }
    cleanup.0.clear();

    let res = &output.result;
    Ok(Summary {
        patches: res.records.len(),
        edge_percent: res.edge_percent(),
        groups: res.group_count(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn parse_matrix(s: &str) -> Result<CostMatrix, Error> {
    let rows = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parameter(format!("bad matrix entry {v:?}")))
                })
                .collect::<Result<Vec<u64>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    CostMatrix::from_rows(&rows).map_err(|e| match e {
        Error::Dimension { .. } => Error::Parameter(format!("matrix rows differ in length: {e}")),
        e => e,
    })
}

pub fn inspect(input: Option<&Path>, at: &str, matrix: Option<&str>, settings: &Settings) -> CmdResult<String> {
    let cfg = settings.pipeline().at("config")?;
    let mut report = String::new();
    let cost = match (input, matrix) {
        (_, Some(m)) => {
            let c = parse_matrix(m).at("config")?;
            writeln!(report, "literal {}x{} matrix", c.rows(), c.cols()).unwrap();
            c
        }
        (Some(input), None) => {
            let (row, col) = parse_coord(at).at("config")?;
            let mut img = load_image(input).at("load")?;
            if cfg.gaussian > 0 {
                img = gaussian_blur(&img, cfg.gaussian).at("blur")?;
            }
            let q = quantize(&img, cfg.bin_width).at("quantize")?;
            let grid = plan_grid(q.width(), q.height(), cfg.patch).at("grid")?;
            let rect = grid
                .rect(row, col)
                .ok_or_else(|| {
                    Error::Parameter(format!(
                        "patch ({row}, {col}) outside {}x{} grid",
                        grid.rows(),
                        grid.cols()
                    ))
                })
                .at("config")?;
            writeln!(
                report,
                "patch ({row}, {col}) at x={} y={} w={} h={} (bin {}, gaussian {})",
                rect.x, rect.y, rect.w, rect.h, cfg.bin_width, cfg.gaussian
            )
            .unwrap();
            extract(&q, rect).at("extract")?
        }
        (None, None) => {
            return Err(Error::Parameter("inspect needs an input image or --matrix".into())).at("config");
        }
    };

    let trace = ReductionTrace::new(&cost);
    let class = classify_patch(&cost, cfg.threshold).at("classify")?;
    let packing = column_pack(&trace.polynomial);
    let cols = cost.cols();
    let join = |v: Vec<u64>| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let delta_sums = (0..cols).map(|j| (0..cost.rows()).map(|k| trace.delta.get(k, j)).sum()).collect();
    let sorted_max = (0..cols).map(|j| trace.sorted.get(cost.rows() - 1, j)).collect();

    let w = &mut report;
    writeln!(w, "\ncost matrix C:\n{}", trace.cost).unwrap();
    writeln!(w, "permutation matrix (1-based rows):\n{}", trace.permutation).unwrap();
    writeln!(w, "sorted C:\n{}", trace.sorted).unwrap();
    writeln!(w, "delta C:\n{}", trace.delta).unwrap();
    writeln!(w, "terms:\n{}", trace.terms).unwrap();
    writeln!(w, "delta C column sums:    {}", join(delta_sums)).unwrap();
    writeln!(w, "sorted C column maxima: {}", join(sorted_max)).unwrap();
    writeln!(w, "polynomial: {}", trace.polynomial).unwrap();
    writeln!(w, "packed columns: {}", packing.width()).unwrap();
    for row in packing.to_grid(cost.rows()) {
        let cells: Vec<String> = row.iter().map(|c| format!("{:>14}", if c.is_empty() { "." } else { c })).collect();
        writeln!(w, "  {}", cells.join(" ")).unwrap();
    }
    writeln!(w, "degree (normal): {}", class.degree_normal).unwrap();
    writeln!(w, "degree (transposed): {}", class.degree_transposed).unwrap();
    writeln!(w, "effective degree: {}", class.effective_degree).unwrap();
    let name = match class.class {
        pbpseg::PatchClass::Blob => "blob",
        pbpseg::PatchClass::Edge => "edge",
    };
    writeln!(w, "class (p={}): {name}", cfg.threshold).unwrap();
    Ok(report)
}

pub const SWEEP_CAP: usize = 64;

/// Runs every combination of the patch/bin/gaussian/threshold lists into
/// its own subdirectory and writes `sweep.csv`. Returns the CSV text.
pub fn sweep(input: &Path, settings: &Settings) -> CmdResult<String> {
    let d = PipelineConfig::default();
    let patches = settings.list("patch", d.patch.to_string()).at("config")?;
    let bins = settings.list("bin", d.bin_width.to_string()).at("config")?;
    let gaussians = settings.list("gaussian", d.gaussian.to_string()).at("config")?;
    let thresholds = settings.list("threshold", d.threshold.to_string()).at("config")?;
    let total = patches.len() * bins.len() * gaussians.len() * thresholds.len();
    if total > SWEEP_CAP {
        return Err(Error::Parameter(format!("{total} combinations exceed the cap of {SWEEP_CAP}"))).at("config");
    }

    let out = settings.out_dir();
    let mut combos = Vec::with_capacity(total);
    for patch in &patches {
        for bin in &bins {
            for gaussian in &gaussians {
                for threshold in &thresholds {
                    let s = settings
                        .with("patch", patch)
                        .with("bin", bin)
                        .with("gaussian", gaussian)
                        .with("threshold", threshold);
                    let cfg = s.pipeline().at("config")?;
                    combos.push(cfg);
                }
            }
        }
    }

    let mut csv = String::from("patch,bin,gaussian,threshold,patches,edge_percent,groups,wall_ms\n");
    for cfg in &combos {
        let dir = out.join(combo_dir(cfg));
        let summary = segment_into(input, cfg, &dir, Instant::now())?;
        writeln!(
            csv,
            "{},{},{},{},{},{:.4},{},{:.3}",
            cfg.patch, cfg.bin_width, cfg.gaussian, cfg.threshold, summary.patches, summary.edge_percent, summary.groups,
            summary.wall_ms
        )
        .unwrap();
    }
    write_atomic(out.join("sweep.csv"), csv.as_bytes()).at("write")?;
    Ok(csv)
}

fn combo_dir(cfg: &PipelineConfig) -> String {
    let PatchSpec { height, width } = cfg.patch;
    format!("patch{height}x{width}_bin{}_g{}_p{}", cfg.bin_width, cfg.gaussian, cfg.threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_literal() {
        let c = parse_matrix("1, 2; 3, 4").unwrap();
        assert_eq!(c.cells(), &[1, 2, 3, 4]);
        assert!(matches!(parse_matrix("1,2;3"), Err(Error::Parameter(_))));
        assert!(matches!(parse_matrix("1,x"), Err(Error::Parameter(_))));
    }

    #[test]
    fn combo_names() {
        let cfg = PipelineConfig::default();
        assert_eq!(combo_dir(&cfg), "patch4x4_bin40_g0_p1");
    }
}
