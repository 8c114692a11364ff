use super::GrayImage;
use crate::error::{Error, Result};

/// Normalized 1-D Gaussian taps for an odd `size`, with `sigma = size / 6`.
pub fn gaussian_kernel(size: usize) -> Result<Vec<f64>> {
    if size == 0 || size.is_multiple_of(2) {
        return Err(Error::param(format!("gaussian kernel size must be odd and positive, got {size}")));
    }
    if size == 1 {
        return Ok(vec![1.0]);
    }
    let sigma = size as f64 / 6.0;
    let radius = (size / 2) as isize;
    let mut taps: Vec<f64> = (-radius..=radius)
        .map(|x| (-((x * x) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= sum);
    Ok(taps)
}

/// Separable Gaussian smoothing with replicated borders.
///
/// Both passes accumulate in `f64`; the result is rounded half-up once.
pub fn gaussian_blur(img: &GrayImage, kernel_size: usize) -> Result<GrayImage> {
    let taps = gaussian_kernel(kernel_size)?;
    let (w, h) = (img.width(), img.height());
    if kernel_size > w.min(h) {
        return Err(Error::param(format!(
            "gaussian kernel {kernel_size} larger than image {w}x{h}"
        )));
    }
    if kernel_size == 1 {
        return Ok(img.clone());
    }
    let radius = (kernel_size / 2) as isize;
    let clamp = |v: isize, hi: usize| v.clamp(0, hi as isize - 1) as usize;

    let mut horiz = vec![0f64; w * h];
    for y in 0..h {
        let row = &img.pixels()[y * w..(y + 1) * w];
        for x in 0..w {
            horiz[y * w + x] = taps
                .iter()
                .enumerate()
                .map(|(i, t)| t * row[clamp(x as isize + i as isize - radius, w)] as f64)
                .sum();
        }
    }

    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let v: f64 = taps
                .iter()
                .enumerate()
                .map(|(i, t)| t * horiz[clamp(y as isize + i as isize - radius, h) * w + x])
                .sum();
            out.push((v + 0.5).floor().clamp(0.0, 255.0) as u8);
        }
    }
    GrayImage::new(w, h, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_shape() {
        assert!(gaussian_kernel(0).is_err());
        assert!(gaussian_kernel(4).is_err());
        assert_eq!(gaussian_kernel(1).unwrap(), vec![1.0]);
        let k = gaussian_kernel(7).unwrap();
        assert_eq!(k.len(), 7);
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(k[0], k[6]);
        assert!(k[3] > k[2] && k[2] > k[1]);
    }

    #[test]
    fn constant_image_is_fixed() {
        let img = GrayImage::filled(9, 7, 123).unwrap();
        for k in [1, 3, 5, 7] {
            assert_eq!(gaussian_blur(&img, k).unwrap(), img);
        }
    }

    #[test]
    fn identity_kernel() {
        let img = GrayImage::from_fn(5, 5, |x, y| (x * 40 + y * 7) as u8).unwrap();
        assert_eq!(gaussian_blur(&img, 1).unwrap(), img);
    }

    #[test]
    fn impulse_center_value() {
        // sigma = 0.5: side tap e^-2, center tap 1/(1 + 2e^-2); 2-D center is its square.
        let side = (-2.0f64).exp();
        let w0 = 1.0 / (1.0 + 2.0 * side);
        let expected = (255.0 * w0 * w0 + 0.5).floor() as u8;
        assert_eq!(expected, 158);
        let img = GrayImage::from_fn(5, 5, |x, y| if (x, y) == (2, 2) { 255 } else { 0 }).unwrap();
        let out = gaussian_blur(&img, 3).unwrap();
        assert_eq!(out.get(2, 2), expected);
        // corners of the 3x3 footprint get side*side*w0^2*255
        let corner = (255.0 * side * side * w0 * w0 + 0.5).floor() as u8;
        assert_eq!(out.get(1, 1), corner);
        assert_eq!(out.get(0, 0), 0);
    }

    #[test]
    fn rejects_oversized_kernel() {
        let img = GrayImage::filled(4, 8, 0).unwrap();
        assert!(gaussian_blur(&img, 5).is_err());
        assert!(gaussian_blur(&img, 2).is_err());
    }
}
