use std::path::Path;

use image::{GrayImage as Luma8, ImageFormat, Luma};

use crate::error::{Error, Result};

/// Row-major grayscale image with intensities in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f64>,
}

impl GrayImage {
    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    pub fn inverted(&self) -> Self {
        Self {
            data: self.data.iter().map(|v| 1.0 - v).collect(),
            ..self.clone()
        }
    }

    fn to_luma8(&self) -> Luma8 {
        Luma8::from_fn(self.width as u32, self.height as u32, |x, y| {
            Luma([(self.get(x as usize, y as usize).clamp(0.0, 1.0) * 255.0).round() as u8])
        })
    }

    /// Writes 8-bit PNG, or binary PGM (P5) for a `.pgm` extension.
    pub fn save(&self, path: &Path) -> Result<()> {
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some("pgm") => ImageFormat::Pnm,
            _ => ImageFormat::Png,
        };
        if format == ImageFormat::Pnm {
            let mut bytes = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
            bytes.extend(self.to_luma8().into_raw());
            return std::fs::write(path, bytes).map_err(|e| Error::io(path, e));
        }
        self.to_luma8().save_with_format(path, format)?;
        Ok(())
    }

    /// PNG bytes, 8-bit gray.
    pub fn to_png(&self) -> Result<Vec<u8>> {
        encode_png(&self.to_luma8())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let img = image::open(path)?.to_luma8();
        let (w, h) = img.dimensions();
        Ok(Self {
            width: w as usize,
            height: h as usize,
            data: img.into_raw().into_iter().map(|v| f64::from(v) / 255.0).collect(),
        })
    }
}

/// Binary edge mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMap {
    pub width: usize,
    pub height: usize,
    pub mask: Vec<bool>,
}

impl EdgeMap {
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.mask[y * self.width + x]
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|m| **m).count()
    }

    /// Edge pixel coordinates.
    pub fn pixels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, m)| **m)
            .map(|(i, _)| (i % self.width, i / self.width))
    }

    fn to_luma8(&self) -> Luma8 {
        Luma8::from_fn(self.width as u32, self.height as u32, |x, y| {
            Luma([if self.get(x as usize, y as usize) { 255 } else { 0 }])
        })
    }

    /// PNG bytes, edges 255 on 0.
    pub fn to_png(&self) -> Result<Vec<u8>> {
        encode_png(&self.to_luma8())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_png()?).map_err(|e| Error::io(path, e))
    }
}

fn encode_png(img: &Luma8) -> Result<Vec<u8>> {
    let mut buf = std::io::Cursor::new(Vec::new());
    img.write_to(&mut buf, ImageFormat::Png)?;
    Ok(buf.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn png_and_pgm_round_trip_at_8_bits() {
        let dir = tempfile::tempdir().unwrap();
        let mut img = GrayImage::filled(5, 3, 1.0);
        img.set(2, 1, 0.0);
        img.set(4, 2, 128.0 / 255.0);
        for name in ["a.png", "a.pgm"] {
            let path = dir.path().join(name);
            img.save(&path).unwrap();
            let back = GrayImage::load(&path).unwrap();
            assert_eq!(back, img, "{name}");
        }
        let pgm = std::fs::read(dir.path().join("a.pgm")).unwrap();
        assert!(pgm.starts_with(b"P5\n5 3\n255\n"));
    }
}
