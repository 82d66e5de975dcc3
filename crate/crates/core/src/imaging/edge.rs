//! Blur, gradient, non-maximum suppression and hysteresis.

use super::{EdgeMap, GrayImage};
use crate::error::{Error, Result};

pub const DEFAULT_SIGMA: f64 = 1.4;
pub const DEFAULT_T_LOW: f64 = 0.05;
pub const DEFAULT_T_HIGH: f64 = 0.15;

/// Reflects an index into `0..n` (`-1 → 0`, `n → n-1`).
fn mirror(i: isize, n: usize) -> usize {
    let n = n as isize;
    let period = 2 * n;
    let mut i = i.rem_euclid(period);
    if i >= n {
        i = period - 1 - i;
    }
    i as usize
}

pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as isize;
    let k: Vec<f64> = (-radius..=radius)
        .map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    k.into_iter().map(|v| v / sum).collect()
}

/// Separable Gaussian blur with mirrored borders. `sigma <= 0` is a copy.
pub fn gaussian_blur(img: &GrayImage, sigma: f64) -> GrayImage {
    if !(sigma > 0.0) {
        return img.clone();
    }
    let k = gaussian_kernel(sigma);
    let r = (k.len() / 2) as isize;
    let (w, h) = (img.width, img.height);
    let mut tmp = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            tmp[y * w + x] = k
                .iter()
                .enumerate()
                .map(|(j, kv)| kv * img.data[y * w + mirror(x as isize + j as isize - r, w)])
                .sum();
        }
    }
    let mut out = GrayImage::filled(w, h, 0.0);
    for y in 0..h {
        for x in 0..w {
            out.data[y * w + x] = k
                .iter()
                .enumerate()
                .map(|(j, kv)| kv * tmp[mirror(y as isize + j as isize - r, h) * w + x])
                .sum();
        }
    }
    out
}

/// Sobel gradients divided by 8, so a unit step gives magnitude at most 0.5
/// per pixel of transition. Returns `(gx, gy)`.
pub fn sobel(img: &GrayImage) -> (Vec<f64>, Vec<f64>) {
    let (w, h) = (img.width, img.height);
    let at = |x: isize, y: isize| img.data[mirror(y, h) * w + mirror(x, w)];
    let mut gx = vec![0.0; w * h];
    let mut gy = vec![0.0; w * h];
    for y in 0..h as isize {
        for x in 0..w as isize {
            let i = y as usize * w + x as usize;
            gx[i] = ((at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1)))
                / 8.0;
            gy[i] = ((at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1)))
                / 8.0;
        }
    }
    (gx, gy)
}

/// Neighbor offset along the gradient, quantized to 0°, 45°, 90° or 135°.
fn direction(gx: f64, gy: f64) -> (isize, isize) {
    let mut a = gy.atan2(gx).to_degrees();
    if a < 0.0 {
        a += 180.0;
    }
    if !(22.5..157.5).contains(&a) {
        (1, 0)
    } else if a < 67.5 {
        (1, 1)
    } else if a < 112.5 {
        (0, 1)
    } else {
        (-1, 1)
    }
}

/// Gradient magnitudes thinned to local maxima along the quantized gradient
/// direction; suppressed pixels are 0. On a plateau of equal magnitudes the
/// pixel on the positive side wins.
pub fn non_max_suppression(mag: &[f64], gx: &[f64], gy: &[f64], w: usize, h: usize) -> Vec<f64> {
    let at = |x: isize, y: isize| {
        if x < 0 || y < 0 || x >= w as isize || y >= h as isize {
            0.0
        } else {
            mag[y as usize * w + x as usize]
        }
    };
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let m = mag[i];
            if m == 0.0 {
                continue;
            }
            let (dx, dy) = direction(gx[i], gy[i]);
            let (xi, yi) = (x as isize, y as isize);
            let prev = at(xi - dx, yi - dy);
            let next = at(xi + dx, yi + dy);
            if m > prev && m >= next {
                out[i] = m;
            }
        }
    }
    out
}

/// Keeps pixels `>= t_low` that are 8-connected to a pixel `>= t_high`.
pub fn hysteresis(nms: &[f64], w: usize, h: usize, t_low: f64, t_high: f64) -> Vec<bool> {
    let mut mask = vec![false; w * h];
    let mut stack: Vec<usize> = Vec::new();
    for (i, &m) in nms.iter().enumerate() {
        if m >= t_high && m > 0.0 {
            mask[i] = true;
            stack.push(i);
        }
    }
    while let Some(i) = stack.pop() {
        let (x, y) = ((i % w) as isize, (i / w) as isize);
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if !mask[j] && nms[j] >= t_low && nms[j] > 0.0 {
                    mask[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    mask
}

pub fn edge_map(img: &GrayImage, sigma: f64, t_low: f64, t_high: f64) -> Result<EdgeMap> {
    if !(t_low > 0.0 && t_low <= t_high) {
        return Err(Error::Argument(format!(
            "thresholds must satisfy 0 < t_low <= t_high, got {t_low}, {t_high}"
        )));
    }
    let (w, h) = (img.width, img.height);
    let blurred = gaussian_blur(img, sigma);
    let (gx, gy) = sobel(&blurred);
    let mag: Vec<f64> = gx.iter().zip(&gy).map(|(a, b)| a.hypot(*b)).collect();
    let nms = non_max_suppression(&mag, &gx, &gy, w, h);
    Ok(EdgeMap {
        width: w,
        height: h,
        mask: hysteresis(&nms, w, h, t_low, t_high),
    })
}
