use std::fs;
use std::io::{Cursor, Write};
use std::path::Path;

use image::codecs::png::PngEncoder;
use image::{ColorType, ExtendedColorType, ImageEncoder, ImageReader};

use super::{luminance, GrayImage, RgbImage};
use crate::error::{Error, Result};

/// Reads an 8-bit grayscale or RGB PNG/PGM, collapsing color to luminance.
/// An alpha channel, if present, is ignored.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| Error::Unreadable {
        path: path.to_path_buf(),
        source,
    })?;
    if let Some((w, h)) = header_dimensions(&bytes) {
        if w == 0 || h == 0 {
            return Err(Error::ZeroDimensions { path: path.to_path_buf() });
        }
    }
    let decode_err = |e: image::ImageError| Error::Decode {
        path: path.to_path_buf(),
        reason: e.to_string(),
    };
    let reader = ImageReader::new(Cursor::new(&bytes))
        .with_guessed_format()
        .map_err(|e| Error::Decode {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
    let (w, h) = reader.into_dimensions().map_err(decode_err)?;
    if w == 0 || h == 0 {
        return Err(Error::ZeroDimensions { path: path.to_path_buf() });
    }

    let img = ImageReader::new(Cursor::new(&bytes))
        .with_guessed_format()
        .expect("format already guessed")
        .decode()
        .map_err(decode_err)?;
    let (w, h) = (w as usize, h as usize);
    let gray = match img.color() {
        ColorType::L8 => img.into_luma8().into_raw(),
        ColorType::La8 => img.into_luma_alpha8().pixels().map(|p| p[0]).collect(),
        ColorType::Rgb8 => img.into_rgb8().pixels().map(|p| luminance(p[0], p[1], p[2])).collect(),
        ColorType::Rgba8 => img.into_rgba8().pixels().map(|p| luminance(p[0], p[1], p[2])).collect(),
        other => {
            return Err(Error::UnsupportedBitDepth {
                path: path.to_path_buf(),
                format: format!("{other:?}"),
            })
        }
    };
    GrayImage::new(w, h, gray)
}

/// Width and height straight from a PNG or PNM header, without decoding.
/// The decoders reject zero-sized images with generic errors.
fn header_dimensions(bytes: &[u8]) -> Option<(u32, u32)> {
    const PNG_SIG: &[u8] = b"\x89PNG\r\n\x1a\n";
    if bytes.starts_with(PNG_SIG) {
        let be = |at: usize| Some(u32::from_be_bytes(bytes.get(at..at + 4)?.try_into().ok()?));
        return Some((be(16)?, be(20)?));
    }
    if bytes.first() != Some(&b'P') {
        return None;
    }
    let mut fields = Vec::with_capacity(2);
    let mut rest = bytes.get(2..)?;
    while fields.len() < 2 {
        rest = rest.trim_ascii_start();
        if rest.first() == Some(&b'#') {
            let eol = rest.iter().position(|&b| b == b'\n')?;
            rest = &rest[eol..];
            continue;
        }
        let end = rest.iter().position(|b| !b.is_ascii_digit()).unwrap_or(rest.len());
        fields.push(std::str::from_utf8(&rest[..end]).ok()?.parse().ok()?);
        rest = &rest[end..];
    }
    Some((fields[0], fields[1]))
}

/// Writes `bytes` to a temporary file beside `path`, then renames it into place.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let write_err = |source| Error::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(write_err)?;
    tmp.write_all(bytes).map_err(write_err)?;
    tmp.as_file().sync_all().map_err(write_err)?;
    tmp.persist(path).map_err(|e| write_err(e.error))?;
    Ok(())
}

pub fn encode_png_rgb(img: &RgbImage) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    PngEncoder::new(&mut out)
        .write_image(&img.data, img.width as u32, img.height as u32, ExtendedColorType::Rgb8)
        .map_err(|e| Error::consistency(format!("png encoding failed: {e}")))?;
    Ok(out)
}

pub fn save_png_rgb(img: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path, &encode_png_rgb(img)?)
}
