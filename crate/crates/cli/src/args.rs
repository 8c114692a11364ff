use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use pbpseg::{Error, GroupingMode, PatchSpec, PipelineConfig, RefineMode};

#[derive(Debug, Parser)]
#[command(name = "pbpseg", version, about = "Edge/blob segmentation from reduced pseudo-Boolean polynomials of image patches")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Segment an image into edge and blob patches; writes mask.png, overlay.png and result.json.
    Segment {
        input: PathBuf,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Print every intermediate artifact of one patch's reduction.
    Inspect {
        /// Image to take the patch from (omit when using --matrix).
        input: Option<PathBuf>,
        /// Patch grid coordinate as ROW,COL.
        #[arg(long, value_name = "ROW,COL", default_value = "0,0")]
        at: String,
        /// Inspect a literal cost matrix instead, rows separated by ';', e.g. "1,2;3,4".
        #[arg(long, conflicts_with = "input")]
        matrix: Option<String>,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Run segment over every combination of comma-separated parameter lists.
    Sweep {
        input: PathBuf,
        #[command(flatten)]
        knobs: Knobs,
    },
}

/// Pipeline knobs. Each may also come from `--config FILE` (`key=value`
/// lines, same key names); flags win over the file.
#[derive(Debug, Args, Default)]
pub struct Knobs {
    /// Patch size HxW.
    #[arg(long)]
    pub patch: Option<String>,
    /// Pixel-set bin width.
    #[arg(long)]
    pub bin: Option<String>,
    /// Odd Gaussian kernel size; 0 disables smoothing.
    #[arg(long)]
    pub gaussian: Option<String>,
    /// Degree threshold p: edge when the effective degree is at least p.
    #[arg(long)]
    pub threshold: Option<String>,
    /// Neighborhood refinement: none, favor-edge or favor-blob.
    #[arg(long)]
    pub refine: Option<String>,
    /// Neighbor votes (1-4) needed to flip a patch during refinement.
    #[arg(long = "refine-k")]
    pub refine_k: Option<String>,
    /// Blob grouping: strict, modconst or connect.
    #[arg(long)]
    pub grouping: Option<String>,
    /// Classification worker threads; 0 = automatic.
    #[arg(long)]
    pub workers: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<String>,
    /// key=value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub const KEYS: [&str; 9] = [
    "patch", "bin", "gaussian", "threshold", "refine", "refine-k", "grouping", "workers", "out",
];

impl Knobs {
    /// File values overlaid by flag values.
    pub fn resolve(&self) -> Result<Settings, Error> {
        let mut map = match &self.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        let flags = [
            ("patch", &self.patch),
            ("bin", &self.bin),
            ("gaussian", &self.gaussian),
            ("threshold", &self.threshold),
            ("refine", &self.refine),
            ("refine-k", &self.refine_k),
            ("grouping", &self.grouping),
            ("workers", &self.workers),
            ("out", &self.out),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                map.insert(key.to_string(), v.clone());
            }
        }
        Ok(Settings(map))
    }
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Unreadable {
        path: path.to_path_buf(),
        source,
    })?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parameter(format!("{}:{}: expected key=value", path.display(), n + 1)))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(Error::Parameter(format!("{}:{}: unknown key {k:?}", path.display(), n + 1)));
        }
        map.insert(k.to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Merged raw settings, parsed on demand.
#[derive(Debug, Clone, Default)]
pub struct Settings(BTreeMap<String, String>);

fn parse_num(key: &str, v: &str) -> Result<usize, Error> {
    v.trim()
        .parse()
        .map_err(|_| Error::Parameter(format!("--{key} expects a non-negative integer, got {v:?}")))
}

impl Settings {
    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn out_dir(&self) -> PathBuf {
        PathBuf::from(self.get("out").unwrap_or("out"))
    }

    pub fn pipeline(&self) -> Result<PipelineConfig, Error> {
        let d = PipelineConfig::default();
        let num = |key: &str, default: usize| self.get(key).map_or(Ok(default), |v| parse_num(key, v));
        let cfg = PipelineConfig {
            gaussian: num("gaussian", d.gaussian)?,
            bin_width: u32::try_from(num("bin", d.bin_width as usize)?).unwrap_or(u32::MAX),
            patch: self.get("patch").map_or(Ok(d.patch), str::parse::<PatchSpec>)?,
            threshold: num("threshold", d.threshold)?,
            grouping: self.get("grouping").map_or(Ok(d.grouping), str::parse::<GroupingMode>)?,
            refine: self.get("refine").map_or(Ok(d.refine), str::parse::<RefineMode>)?,
            refine_k: num("refine-k", d.refine_k)?,
            workers: num("workers", d.workers)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Comma-separated values of `key`, or the single default.
    pub fn list(&self, key: &str, default: String) -> Result<Vec<String>, Error> {
        match self.get(key) {
            None => Ok(vec![default]),
            Some(v) => {
                let items: Vec<String> = v
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect();
                if items.is_empty() {
                    return Err(Error::Parameter(format!("--{key} list is empty")));
                }
                Ok(items)
            }
        }
    }

    pub fn with(&self, key: &str, value: &str) -> Settings {
        let mut map = self.0.clone();
        map.insert(key.to_string(), value.to_string());
        Settings(map)
    }
}

/// Parses `ROW,COL`.
pub fn parse_coord(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Parameter(format!("--at expects ROW,COL, got {s:?}"));
    let (r, c) = s.split_once(',').ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
}
