use pbpseg_demo::{parse_matrix, primitives, reduction_report, segment_pixels, DemoParams};

const WORKED: &str = "8,8,8,5; 12,7,5,7; 18,2,3,1; 5,18,9,8";

fn params() -> DemoParams {
    DemoParams {
        patch: 4,
        bin_width: 40,
        gaussian: 0,
        threshold: 1,
        refine: false,
    }
}

#[test]
fn worked_matrix_report() {
    let r = reduction_report(&parse_matrix(WORKED).unwrap());
    assert_eq!(r.permutation[0], vec![4, 3, 3, 3]);
    assert_eq!(r.sorted[3], vec![18, 18, 9, 8]);
    assert_eq!(r.delta[1], vec![3, 5, 2, 4]);
    assert_eq!(r.terms[3][1], "y1*y2*y3");
    assert_eq!(r.polynomial, "11 + 11*y3 + 3*y4 + 2*y1*y3 + 4*y2*y3 + 4*y1*y4 + 12*y1*y2*y3 + 6*y1*y2*y4");
    assert_eq!(r.degree_normal, 3);
    assert_eq!(r.packed[0].len(), 3);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["terms"][0][0], "1");
}

#[test]
fn matrix_text_forms() {
    let a = parse_matrix("1 2\n3 4\n").unwrap();
    assert_eq!(a, parse_matrix("1,2;3,4").unwrap());
    assert!(parse_matrix("1,2;3").is_err());
    assert!(parse_matrix("1,-2").is_err());
    assert!(parse_matrix("").is_err());
}

#[test]
fn segment_primitives() {
    let (w, h) = (96, 80);
    let rgba = primitives(w, h);
    assert_eq!(rgba.len(), w * h * 4);
    let s = segment_pixels(&rgba, w, h, params()).unwrap();
    assert_eq!((s.grid_rows(), s.grid_cols()), (20, 24));
    assert_eq!(s.mask().len(), rgba.len());
    assert_eq!(s.overlay().len(), rgba.len());
    assert_eq!(s.degrees().len(), 20 * 24);
    assert!(s.edge_percent() > 0.0 && s.edge_percent() < 50.0, "{}", s.edge_percent());
    // background plus one interior per shape at least
    assert!(s.groups() >= 2);
    // corner patch is background: blue in the mask
    assert_eq!(&s.mask()[..4], &[0, 0, 255, 255]);
}

#[test]
fn uniform_canvas() {
    let rgba: Vec<u8> = std::iter::repeat_n([120, 60, 200, 255], 32 * 32).flatten().collect();
    let s = segment_pixels(&rgba, 32, 32, params()).unwrap();
    assert_eq!(s.edge_percent(), 0.0);
    assert_eq!(s.groups(), 1);
    assert!(s.degrees().iter().all(|&d| d == 0));
}

#[test]
fn refine_never_reduces_edges() {
    let rgba = primitives(64, 64);
    let plain = segment_pixels(&rgba, 64, 64, params()).unwrap();
    let refined = segment_pixels(&rgba, 64, 64, DemoParams { refine: true, ..params() }).unwrap();
    assert!(refined.edge_percent() >= plain.edge_percent());
}

#[test]
fn bad_inputs() {
    assert!(segment_pixels(&[0; 10], 4, 4, params()).is_err());
    let rgba = primitives(16, 16);
    assert!(segment_pixels(&rgba, 16, 16, DemoParams { gaussian: 4, ..params() }).is_err());
    assert!(segment_pixels(&rgba, 16, 16, DemoParams { patch: 1, ..params() }).is_err());
}
