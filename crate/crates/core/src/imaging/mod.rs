//! Grayscale images, smoothing, pixel-set quantization and mask rendering.

mod blur;
#[cfg(feature = "io")]
mod io;
mod render;

pub use blur::{gaussian_blur, gaussian_kernel};
#[cfg(feature = "io")]
pub use io::{encode_png_rgb, load_image, save_png_rgb, write_atomic};
pub use render::{render_masks, MaskImage, RgbImage, BLOB_COLOR, EDGE_COLOR};

use crate::error::{Error, Result};

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::param(format!("image must be non-empty, got {width}x{height}")));
        }
        if pixels.len() != width * height {
            return Err(Error::Dimension {
                expected: width * height,
                actual: pixels.len(),
            });
        }
        Ok(GrayImage { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    /// Collapses interleaved RGB bytes to luminance.
    pub fn from_rgb(width: usize, height: usize, rgb: &[u8]) -> Result<Self> {
        if rgb.len() != width * height * 3 {
            return Err(Error::Dimension {
                expected: width * height * 3,
                actual: rgb.len(),
            });
        }
        let pixels = rgb.chunks_exact(3).map(|p| luminance(p[0], p[1], p[2])).collect();
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn transpose(&self) -> GrayImage {
        GrayImage::from_fn(self.height, self.width, |x, y| self.get(y, x)).expect("non-empty")
    }
}

/// `0.299 R + 0.587 G + 0.114 B`, rounded half-up, in exact integer arithmetic.
pub fn luminance(r: u8, g: u8, b: u8) -> u8 {
    let sum = 299 * r as u32 + 587 * g as u32 + 114 * b as u32;
    ((sum + 500) / 1000) as u8
}

/// An image whose pixels have been mapped to pixel-set labels
/// `floor(x / bin_width)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedImage {
    width: usize,
    height: usize,
    bin_width: u8,
    pixels: Vec<u8>,
}

impl QuantizedImage {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bin_width(&self) -> u8 {
        self.bin_width
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Largest label this bin width can produce.
    pub fn max_label(&self) -> u8 {
        255 / self.bin_width
    }

    /// Adds `offset` to every label. Used to probe shift invariance.
    pub fn shifted(&self, offset: u8) -> QuantizedImage {
        QuantizedImage {
            pixels: self.pixels.iter().map(|&p| p.saturating_add(offset)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> QuantizedImage {
        let mut pixels = Vec::with_capacity(self.pixels.len());
        for x in 0..self.width {
            for y in 0..self.height {
                pixels.push(self.get(x, y));
            }
        }
        QuantizedImage {
            width: self.height,
            height: self.width,
            bin_width: self.bin_width,
            pixels,
        }
    }
}

pub fn quantize(img: &GrayImage, bin_width: u32) -> Result<QuantizedImage> {
    if !(1..=255).contains(&bin_width) {
        return Err(Error::param(format!("bin width must be in 1..=255, got {bin_width}")));
    }
    let w = bin_width as u8;
    Ok(QuantizedImage {
        width: img.width,
        height: img.height,
        bin_width: w,
        pixels: img.pixels.iter().map(|&p| p / w).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luminance_weights() {
        assert_eq!(luminance(255, 255, 255), 255);
        assert_eq!(luminance(0, 0, 0), 0);
        // 0.299 * 255 = 76.245
        assert_eq!(luminance(255, 0, 0), 76);
        // 0.587 * 255 = 149.685
        assert_eq!(luminance(0, 255, 0), 150);
        // 0.114 * 255 = 29.07
        assert_eq!(luminance(0, 0, 255), 29);
    }

    #[test]
    fn quantize_examples() {
        let img = GrayImage::new(4, 1, vec![7, 0, 255, 250]).unwrap();
        assert_eq!(quantize(&img, 5).unwrap().pixels(), &[1, 0, 51, 50]);
        let q = quantize(&img, 40).unwrap();
        assert_eq!(q.pixels(), &[0, 0, 6, 6]);
        assert_eq!(q.max_label(), 6);
        assert_eq!(quantize(&img, 1).unwrap().pixels(), img.pixels());
        assert!(quantize(&img, 0).is_err());
        assert!(quantize(&img, 256).is_err());
    }

    #[test]
    fn quantize_monotone_over_all_values() {
        let img = GrayImage::from_fn(256, 1, |x, _| x as u8).unwrap();
        for w in 1..=255 {
            let q = quantize(&img, w).unwrap();
            assert!(q.pixels().windows(2).all(|p| p[0] <= p[1]));
            assert_eq!(*q.pixels().last().unwrap(), q.max_label());
            // labels pass through a width-1 quantization unchanged
            let relabeled = GrayImage::new(256, 1, q.pixels().to_vec()).unwrap();
            assert_eq!(quantize(&relabeled, 1).unwrap().pixels(), q.pixels());
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(GrayImage::new(0, 3, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(GrayImage::from_rgb(1, 1, &[1, 2]).is_err());
    }

    #[test]
    fn transpose_roundtrip() {
        let img = GrayImage::from_fn(3, 2, |x, y| (x * 10 + y) as u8).unwrap();
        let t = img.transpose();
        assert_eq!((t.width(), t.height()), (2, 3));
        assert_eq!(t.get(1, 2), img.get(2, 1));
        assert_eq!(t.transpose(), img);
    }
}
