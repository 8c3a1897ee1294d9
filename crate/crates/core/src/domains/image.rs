//! Small RGB images and the two visual descriptors: edge-pixel ratio and
//! Hasler-Süsstrunk colourfulness.

use rand::Rng;
use rand_distr::{Distribution, Normal};

#[derive(Debug, Clone, PartialEq)]
pub struct ToyImage {
    width: usize,
    height: usize,
    /// Row-major RGB triples with channels in `[0, 1]`.
    pixels: Vec<[f64; 3]>,
}

impl ToyImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[f64; 3]>) -> Self {
        assert!(width * height >= 2, "image needs at least two pixels");
        assert_eq!(pixels.len(), width * height, "pixel count mismatch");
        assert!(
            pixels.iter().flatten().all(|c| (0.0..=1.0).contains(c)),
            "channels must lie in [0, 1]"
        );
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn filled(width: usize, height: usize, rgb: [f64; 3]) -> Self {
        Self::new(width, height, vec![rgb; width * height])
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> [f64; 3]) -> Self {
        let pixels = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::new(width, height, pixels)
    }

    /// Rebuilds an image from `width * height * 3` interleaved channels.
    pub fn from_flat(width: usize, height: usize, flat: &[f64]) -> Self {
        assert_eq!(flat.len(), width * height * 3, "flat pixel array length");
        let pixels = flat.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[f64; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> [f64; 3] {
        self.pixels[y * self.width + x]
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.pixels.iter().flatten().copied().collect()
    }

    pub fn luminance(&self) -> Vec<f64> {
        self.pixels.iter().map(luma).collect()
    }

    pub fn mirrored_horizontally(&self) -> Self {
        Self::from_fn(self.width, self.height, |x, y| self.pixel(self.width - 1 - x, y))
    }

    pub fn mirrored_vertically(&self) -> Self {
        Self::from_fn(self.width, self.height, |x, y| self.pixel(x, self.height - 1 - y))
    }
}

pub fn luma(rgb: &[f64; 3]) -> f64 {
    0.299 * rgb[0] + 0.587 * rgb[1] + 0.114 * rgb[2]
}

/// Gradient magnitude of the luminance at every interior pixel, row-major
/// over the `(width - 2) x (height - 2)` interior. Sobel kernels are scaled
/// by 1/4 so a unit step edge has magnitude 1.
pub fn gradient_magnitudes(img: &ToyImage) -> Vec<f64> {
    let (w, h) = (img.width, img.height);
    assert!(w >= 3 && h >= 3, "gradient needs an image of at least 3x3");
    let lum = img.luminance();
    let at = |x: usize, y: usize| lum[y * w + x];
    let mut out = Vec::with_capacity((w - 2) * (h - 2));
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let gx = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1));
            let gy = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1));
            out.push((gx * gx + gy * gy).sqrt() / 4.0);
        }
    }
    out
}

pub const EDGE_THRESHOLD: f64 = 0.25;

/// Fraction of interior pixels whose gradient magnitude exceeds
/// `threshold`. Border pixels count in neither numerator nor denominator.
pub fn edge_complexity(img: &ToyImage, threshold: f64) -> f64 {
    let grads = gradient_magnitudes(img);
    grads.iter().filter(|&&g| g > threshold).count() as f64 / grads.len() as f64
}

/// Hasler-Süsstrunk colourfulness on 0..255 channels with population
/// statistics.
pub fn colourfulness(img: &ToyImage) -> f64 {
    let n = img.pixels.len() as f64;
    let (mut rg_sum, mut yb_sum) = (0.0, 0.0);
    let opponents: Vec<(f64, f64)> = img
        .pixels
        .iter()
        .map(|p| {
            let (r, g, b) = (255.0 * p[0], 255.0 * p[1], 255.0 * p[2]);
            let rg = r - g;
            let yb = 0.5 * (r + g) - b;
            rg_sum += rg;
            yb_sum += yb;
            (rg, yb)
        })
        .collect();
    let (rg_mean, yb_mean) = (rg_sum / n, yb_sum / n);
    let (mut rg_var, mut yb_var) = (0.0, 0.0);
    for (rg, yb) in &opponents {
        rg_var += (rg - rg_mean).powi(2);
        yb_var += (yb - yb_mean).powi(2);
    }
    let (rg_var, yb_var) = (rg_var / n, yb_var / n);
    (rg_var + yb_var).sqrt() + 0.3 * (rg_mean * rg_mean + yb_mean * yb_mean).sqrt()
}

/// 3x3 mean filter; at the border only in-bounds neighbours are averaged.
pub fn box_blur(img: &ToyImage) -> ToyImage {
    let (w, h) = (img.width as isize, img.height as isize);
    ToyImage::from_fn(img.width, img.height, |x, y| {
        let mut acc = [0.0; 3];
        let mut count = 0.0;
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if nx < 0 || ny < 0 || nx >= w || ny >= h {
                    continue;
                }
                let p = img.pixel(nx as usize, ny as usize);
                for c in 0..3 {
                    acc[c] += p[c];
                }
                count += 1.0;
            }
        }
        acc.map(|v| (v / count).clamp(0.0, 1.0))
    })
}

/// Adds independent Gaussian noise to every channel, clamped to `[0, 1]`.
/// Channels are visited in row-major pixel order, R before G before B.
pub fn add_noise<R: Rng + ?Sized>(img: &ToyImage, sigma: f64, rng: &mut R) -> ToyImage {
    if sigma == 0.0 {
        return img.clone();
    }
    let noise = Normal::new(0.0, sigma).expect("sigma must be non-negative and finite");
    let pixels = img
        .pixels
        .iter()
        .map(|p| p.map(|c| (c + noise.sample(rng)).clamp(0.0, 1.0)))
        .collect();
    ToyImage::new(img.width, img.height, pixels)
}
