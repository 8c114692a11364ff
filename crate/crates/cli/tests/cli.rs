use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pbpseg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbpseg")).args(args).output().unwrap()
}

fn write_pgm(path: &Path, w: usize, h: usize, f: impl Fn(usize, usize) -> u8) {
    let mut bytes = format!("P5\n{w} {h}\n255\n").into_bytes();
    for y in 0..h {
        for x in 0..w {
            bytes.push(f(x, y));
        }
    }
    fs::write(path, bytes).unwrap();
}

fn square(dir: &Path) -> PathBuf {
    let p = dir.join("square.pgm");
    write_pgm(&p, 64, 64, |x, y| if (18..42).contains(&x) && (18..42).contains(&y) { 0 } else { 255 });
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn segment_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = square(dir.path());
    let out = dir.path().join("run");
    let o = pbpseg(&["segment", s(&input), "--patch", "4x4", "--bin", "40", "--gaussian", "0", "--threshold", "1", "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let line = stdout(&o);
    assert!(line.starts_with("patches=256 edge=9.38% groups=2 time="), "{line}");
    for f in ["mask.png", "overlay.png", "result.json"] {
        assert!(out.join(f).is_file(), "{f}");
    }
    let raw = fs::read_to_string(out.join("result.json")).unwrap();
    let json: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(json["summary"]["edge_patches"], 24);
    assert_eq!(json["parameters"]["patch"], "4x4");
    assert_eq!(json["parameters"]["grouping"], "modconst");
    let pos: Vec<usize> = ["\"parameters\"", "\"grid\"", "\"summary\"", "\"patches\"", "\"groups\""]
        .iter()
        .map(|k| raw.find(k).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
    let first = &json["patches"][0];
    assert_eq!(first["class"], "blob");
    assert_eq!(first["group"], 0);
    assert_eq!(json["patches"][4 * 16 + 4]["class"], "edge");
    assert!(json["patches"][4 * 16 + 4]["group"].is_null());
}

#[test]
fn segment_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("noise.pgm");
    write_pgm(&input, 50, 37, |x, y| ((x * 97 + y * 31 + x * y * 7) % 256) as u8);
    let run = |name: &str, workers: &str| {
        let out = dir.path().join(name);
        let o = pbpseg(&["segment", s(&input), "--workers", workers, "--gaussian", "3", "--out", s(&out)]);
        assert!(o.status.success());
        (fs::read(out.join("result.json")).unwrap(), fs::read(out.join("mask.png")).unwrap())
    };
    let a = run("a", "1");
    assert_eq!(a, run("b", "1"));
    assert_eq!(a, run("c", "3"));
}

#[test]
fn missing_input_is_io_error_without_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let o = pbpseg(&["segment", s(&dir.path().join("nope.png")), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[load]"));
    assert!(!out.exists());
}

#[test]
fn parameter_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = square(dir.path());
    for bad in [
        vec!["--patch", "1x4"],
        vec!["--bin", "0"],
        vec!["--gaussian", "4"],
        vec!["--threshold", "0"],
        vec!["--refine", "sideways"],
        vec!["--refine-k", "9"],
        vec!["--grouping", "fuzzy"],
        vec!["--patch", "4x4", "--unknown"],
    ] {
        let mut args = vec!["segment", s(&input)];
        args.extend(bad.iter());
        let out = dir.path().join("o");
        args.extend(["--out", s(&out)]);
        let o = pbpseg(&args);
        assert_eq!(o.status.code(), Some(3), "{bad:?}");
        assert!(!out.exists());
    }
    let small = dir.path().join("small.pgm");
    write_pgm(&small, 3, 3, |_, _| 0);
    assert_eq!(pbpseg(&["segment", s(&small), "--out", s(&dir.path().join("o"))]).status.code(), Some(3));
}

#[test]
fn uniform_image_has_no_edges() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("gray.pgm");
    write_pgm(&input, 40, 40, |_, _| 128);
    let o = pbpseg(&["segment", s(&input), "--out", s(&dir.path().join("o"))]);
    assert!(stdout(&o).starts_with("patches=100 edge=0.00% groups=1 "));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let input = square(dir.path());
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("from-file");
    fs::write(&cfg, format!("patch=8x8\nbin=40\nrefine=favor-edge\nrefine-k=1\nout={}\n", out.display())).unwrap();
    let o = pbpseg(&["segment", s(&input), "--config", s(&cfg), "--refine", "none"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_slice(&fs::read(out.join("result.json")).unwrap()).unwrap();
    assert_eq!(json["parameters"]["patch"], "8x8");
    assert_eq!(json["parameters"]["refine"], "none");
    assert_eq!(json["grid"]["rows"], 8);
}

#[test]
fn inspect_worked_patch() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("worked.pgm");
    let c = [[8u8, 8, 8, 5], [12, 7, 5, 7], [18, 2, 3, 1], [5, 18, 9, 8]];
    write_pgm(&input, 8, 4, |x, y| if x < 4 { c[y][x] } else { 99 });
    let o = pbpseg(&["inspect", s(&input), "--at", "0,0", "--bin", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("polynomial: 11 + 11*y3 + 3*y4 + 2*y1*y3 + 4*y2*y3 + 4*y1*y4 + 12*y1*y2*y3 + 6*y1*y2*y4"));
    assert!(text.contains("delta C column sums:    18 18 9 8"));
    assert!(text.contains("sorted C column maxima: 18 18 9 8"));
    assert!(text.contains("class (p=1): edge"));

    let o = pbpseg(&["inspect", s(&input), "--at", "0,1", "--bin", "1"]);
    let text = stdout(&o);
    assert!(text.contains("polynomial: 396\n"), "{text}");
    assert!(text.contains("effective degree: 0"));
    assert!(text.contains("class (p=1): blob"));

    let o = pbpseg(&["inspect", s(&input), "--at", "1,0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn inspect_literal_matrix_invariant() {
    let o = pbpseg(&["inspect", "--matrix", "3,9,1;7,2,2;5,5,8"]);
    let text = stdout(&o);
    let grab = |label: &str| -> String {
        text.lines().find(|l| l.starts_with(label)).unwrap()[label.len()..].trim().to_string()
    };
    assert_eq!(grab("delta C column sums:"), grab("sorted C column maxima:"));
    assert_eq!(pbpseg(&["inspect"]).status.code(), Some(3));
}

#[test]
fn sweep_patch_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("big.pgm");
    write_pgm(&input, 128, 128, |x, y| ((x / 5 * 40 + y / 7 * 23) % 256) as u8);
    let out = dir.path().join("sweep");
    let o = pbpseg(&["sweep", s(&input), "--patch", "4x4,8x8", "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0], rows[0][4]), ("4x4", "1024"));
    assert_eq!((rows[1][0], rows[1][4]), ("8x8", "256"));
    assert!(out.join("patch4x4_bin40_g0_p1/mask.png").is_file());
    assert!(out.join("patch8x8_bin40_g0_p1/result.json").is_file());
}

#[test]
fn sweep_single_combination_matches_segment() {
    let dir = tempfile::tempdir().unwrap();
    let input = square(dir.path());
    let sw = dir.path().join("sw");
    let seg = dir.path().join("seg");
    assert!(pbpseg(&["sweep", s(&input), "--patch", "6x6", "--out", s(&sw)]).status.success());
    assert!(pbpseg(&["segment", s(&input), "--patch", "6x6", "--out", s(&seg)]).status.success());
    for f in ["result.json", "mask.png", "overlay.png"] {
        assert_eq!(
            fs::read(sw.join("patch6x6_bin40_g0_p1").join(f)).unwrap(),
            fs::read(seg.join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn sweep_rejects_empty_and_oversized_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let input = square(dir.path());
    let out = dir.path().join("o");
    assert_eq!(pbpseg(&["sweep", s(&input), "--bin", ",", "--out", s(&out)]).status.code(), Some(3));
    let o = pbpseg(&[
        "sweep", s(&input), "--patch", "4x4,6x6,8x8", "--bin", "10,20,30", "--threshold", "1,2,3", "--gaussian", "0,3,5", "--out", s(&out),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}
