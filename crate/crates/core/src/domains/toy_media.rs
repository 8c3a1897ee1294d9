//! Toy text-and-image domain: token texts classified by the fixed topic
//! model, small RGB images described by edge complexity and
//! colourfulness, and a coherence score comparing a projected image
//! statistic vector with the text's topic posterior.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::image::{
    add_noise, box_blur, colourfulness, edge_complexity, gradient_magnitudes, luma, ToyImage,
};
use super::text::{TopicModel, ToyText, MAX_LEN, MIN_LEN, TOPICS};
use super::{bin4, MutationBranch, TEXT, VISUAL};
use crate::solution::{Artefact, Domain, Solution};

pub const FEATURES: usize = 16;

/// Seed of the SplitMix64 stream that fills [`COHERENCE_MATRIX`].
pub const MATRIX_SEED: u64 = 0x4D45_4C49_5441_0001;

/// Fixed projection from image statistics to topic space. Entry `(i, j)`
/// is the `16 i + j`-th SplitMix64 output from [`MATRIX_SEED`], mapped to
/// `[-1, 1)` as `2 (x >> 11) / 2^53 - 1`.
pub const COHERENCE_MATRIX: [[f64; FEATURES]; TOPICS] = build_matrix(MATRIX_SEED);

const fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const fn build_matrix(seed: u64) -> [[f64; FEATURES]; TOPICS] {
    let mut state = seed;
    let mut m = [[0.0; FEATURES]; TOPICS];
    let mut i = 0;
    while i < TOPICS {
        let mut j = 0;
        while j < FEATURES {
            let x = splitmix64(&mut state) >> 11;
            m[i][j] = 2.0 * (x as f64 / (1u64 << 53) as f64) - 1.0;
            j += 1;
        }
        i += 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq)]
pub enum ToyPayload {
    Text(ToyText),
    Image(ToyImage),
}

impl ToyPayload {
    pub fn as_text(&self) -> &ToyText {
        match self {
            ToyPayload::Text(t) => t,
            ToyPayload::Image(_) => panic!("expected a text payload"),
        }
    }

    pub fn as_image(&self) -> &ToyImage {
        match self {
            ToyPayload::Image(i) => i,
            ToyPayload::Text(_) => panic!("expected an image payload"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToyMediaParams {
    pub width: usize,
    pub height: usize,
    /// Standard deviation of the per-channel noise before smoothing.
    pub image_noise: f64,
    pub full_mutation_rate: f64,
    pub edge_threshold: f64,
    pub complexity_thresholds: [f64; 3],
    pub colourfulness_thresholds: [f64; 3],
    pub topic_threshold: f64,
}

impl Default for ToyMediaParams {
    fn default() -> Self {
        Self {
            width: 32,
            height: 32,
            image_noise: 0.1,
            full_mutation_rate: 0.2,
            edge_threshold: 0.25,
            complexity_thresholds: [0.05, 0.15, 0.30],
            colourfulness_thresholds: [20.0, 40.0, 60.0],
            topic_threshold: 0.40,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ToyMedia {
    params: ToyMediaParams,
    model: TopicModel,
    axes: [usize; 2],
}

impl Default for ToyMedia {
    fn default() -> Self {
        Self::new(ToyMediaParams::default())
    }
}

/// Coherence with a flag raised when either embedding had zero norm and
/// the neutral value 0.5 was returned instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coherence {
    pub value: f64,
    pub neutral: bool,
}

impl ToyMedia {
    pub fn new(params: ToyMediaParams) -> Self {
        assert!(params.width >= 3 && params.height >= 3, "images must be at least 3x3");
        assert!(params.image_noise >= 0.0, "image noise must be non-negative");
        assert!(
            (0.0..=1.0).contains(&params.full_mutation_rate),
            "full mutation rate must be a probability"
        );
        Self {
            params,
            model: TopicModel,
            axes: [TOPICS, 16],
        }
    }

    pub fn params(&self) -> &ToyMediaParams {
        &self.params
    }

    pub fn model(&self) -> &TopicModel {
        &self.model
    }

    pub fn classify_text(&self, text: &ToyText) -> Option<usize> {
        self.model.classify(text.tokens(), self.params.topic_threshold)
    }

    pub fn image_bin(&self, img: &ToyImage) -> usize {
        let complexity = edge_complexity(img, self.params.edge_threshold);
        let colour = colourfulness(img);
        4 * bin4(complexity, self.params.complexity_thresholds)
            + bin4(colour, self.params.colourfulness_thresholds)
    }

    /// The sixteen image statistics fed to the coherence projection.
    pub fn image_features(&self, img: &ToyImage) -> [f64; FEATURES] {
        let (w, h) = (img.width(), img.height());
        let lum = img.luminance();
        let grads = gradient_magnitudes(img);
        let tau = self.params.edge_threshold;
        let (hw, hh) = (w / 2, h / 2);
        let quadrant = |x: usize, y: usize| usize::from(x >= hw) + 2 * usize::from(y >= hh);

        let mut lum_sum = [0.0; 4];
        let mut lum_count = [0.0; 4];
        for y in 0..h {
            for x in 0..w {
                let q = quadrant(x, y);
                lum_sum[q] += lum[y * w + x];
                lum_count[q] += 1.0;
            }
        }
        let mut edge_hits = [0.0; 4];
        let mut edge_count = [0.0; 4];
        for y in 1..h - 1 {
            for x in 1..w - 1 {
                let q = quadrant(x, y);
                edge_count[q] += 1.0;
                if grads[(y - 1) * (w - 2) + (x - 1)] > tau {
                    edge_hits[q] += 1.0;
                }
            }
        }

        let n = (w * h) as f64;
        let mut mean_rgb = [0.0; 3];
        for p in img.pixels() {
            for c in 0..3 {
                mean_rgb[c] += p[c] / n;
            }
        }
        let mean_lum = lum.iter().sum::<f64>() / n;
        let lum_sd = (lum.iter().map(|l| (l - mean_lum).powi(2)).sum::<f64>() / n).sqrt();
        let mut dx_sum = 0.0;
        for y in 0..h {
            for x in 0..w - 1 {
                dx_sum += (lum[y * w + x + 1] - lum[y * w + x]).abs();
            }
        }
        let mut dy_sum = 0.0;
        for y in 0..h - 1 {
            for x in 0..w {
                dy_sum += (lum[(y + 1) * w + x] - lum[y * w + x]).abs();
            }
        }

        let ratio = |a: f64, b: f64| if b > 0.0 { a / b } else { 0.0 };
        let mut f = [0.0; FEATURES];
        for q in 0..4 {
            f[q] = ratio(lum_sum[q], lum_count[q]);
            f[4 + q] = ratio(edge_hits[q], edge_count[q]);
        }
        f[8..11].copy_from_slice(&mean_rgb);
        f[11] = (colourfulness(img) / 300.0).min(1.0);
        f[12] = edge_hits.iter().sum::<f64>() / grads.len() as f64;
        f[13] = lum_sd;
        f[14] = dx_sum / ((w - 1) * h) as f64;
        f[15] = dy_sum / (w * (h - 1)) as f64;
        f
    }

    /// `(1 + cos(M e_img, e_txt)) / 2` where `e_txt` is the text's topic
    /// posterior and `e_img` the image statistics.
    pub fn coherence(&self, img: &ToyImage, text: &ToyText) -> Coherence {
        let e_txt = self.model.posterior(text.tokens());
        let e_img = self.image_features(img);
        let projected: [f64; TOPICS] = std::array::from_fn(|i| {
            COHERENCE_MATRIX[i]
                .iter()
                .zip(&e_img)
                .map(|(m, e)| m * e)
                .sum()
        });
        let dot: f64 = projected.iter().zip(&e_txt).map(|(a, b)| a * b).sum();
        let np = projected.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nt = e_txt.iter().map(|x| x * x).sum::<f64>().sqrt();
        if np == 0.0 || nt == 0.0 {
            return Coherence {
                value: 0.5,
                neutral: true,
            };
        }
        Coherence {
            value: ((1.0 + dot / (np * nt)) / 2.0).clamp(0.0, 1.0),
            neutral: false,
        }
    }

    pub fn generate_text<R: Rng + ?Sized>(&self, rng: &mut R) -> ToyText {
        let len = rng.gen_range(MIN_LEN..=MAX_LEN);
        let topic = rng.gen_range(0..TOPICS);
        self.model.sample_text(topic, len, rng)
    }

    /// A two-colour stripe or block pattern with random saturation,
    /// frequency and grain.
    pub fn generate_image<R: Rng + ?Sized>(&self, rng: &mut R) -> ToyImage {
        let (w, h) = (self.params.width, self.params.height);
        let saturation: f64 = rng.gen();
        let mut colour = || {
            let c: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
            let gray = luma(&c);
            c.map(|v| (gray + saturation * (v - gray)).clamp(0.0, 1.0))
        };
        let (a, b) = (colour(), colour());
        let frequency = rng.gen_range(1..=8usize);
        let layout = rng.gen_range(0..3u8);
        let grain = 0.3 * rng.gen::<f64>();
        let base = ToyImage::from_fn(w, h, |x, y| {
            let (u, v) = (x * frequency / w, y * frequency / h);
            let pick = match layout {
                0 => u % 2 == 0,
                1 => v % 2 == 0,
                _ => (u + v) % 2 == 0,
            };
            if pick {
                a
            } else {
                b
            }
        });
        let pixels = base
            .pixels()
            .iter()
            .map(|p| p.map(|c| (c + grain * (2.0 * rng.gen::<f64>() - 1.0)).clamp(0.0, 1.0)))
            .collect();
        ToyImage::new(w, h, pixels)
    }

    /// Keeps a prefix cut in the middle third and refills the rest from the
    /// text's most probable topic, or with the full-mutation probability
    /// draws a whole new text of random length from a random topic.
    pub fn mutate_text<R: Rng + ?Sized>(
        &self,
        parent: &ToyText,
        rng: &mut R,
    ) -> (ToyText, MutationBranch) {
        if rng.gen_bool(self.params.full_mutation_rate) {
            return (self.generate_text(rng), MutationBranch::Full);
        }
        let len = parent.len();
        let split = split_point(len, rng);
        let post = self.model.posterior(parent.tokens());
        let topic = super::text::argmax(&post);
        let mut tokens = parent.tokens()[..split].to_vec();
        tokens.extend((split..len).map(|_| self.model.sample_token(topic, rng)));
        (ToyText::new(tokens), MutationBranch::Partial)
    }

    /// Per-channel Gaussian noise followed by a 3x3 box blur.
    pub fn mutate_image<R: Rng + ?Sized>(&self, parent: &ToyImage, rng: &mut R) -> ToyImage {
        box_blur(&add_noise(parent, self.params.image_noise, rng))
    }
}

/// Uniform split index over the middle third, `len/3 ..= 2 len/3`.
pub fn split_point<R: Rng + ?Sized>(len: usize, rng: &mut R) -> usize {
    rng.gen_range(len / 3..=2 * len / 3)
}

impl Domain for ToyMedia {
    type Payload = ToyPayload;

    fn axis_sizes(&self) -> &[usize] {
        &self.axes
    }

    fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Artefact<ToyPayload>> {
        let text = self.generate_text(rng);
        let image = self.generate_image(rng);
        vec![
            Artefact::new(TEXT, ToyPayload::Text(text)),
            Artefact::new(VISUAL, ToyPayload::Image(image)),
        ]
    }

    fn vary<R: Rng + ?Sized>(
        &self,
        modality: usize,
        parent: &Solution<ToyPayload>,
        rng: &mut R,
    ) -> Option<Artefact<ToyPayload>> {
        let payload = match modality {
            TEXT => ToyPayload::Text(self.mutate_text(parent.artefact(TEXT).payload.as_text(), rng).0),
            VISUAL => ToyPayload::Image(self.mutate_image(parent.artefact(VISUAL).payload.as_image(), rng)),
            _ => panic!("toy-media domain has two modalities, got {modality}"),
        };
        Some(Artefact::new(modality, payload))
    }

    fn describe(&self, modality: usize, artefact: &Artefact<ToyPayload>) -> Option<usize> {
        match modality {
            TEXT => self.classify_text(artefact.payload.as_text()),
            VISUAL => Some(self.image_bin(artefact.payload.as_image())),
            _ => panic!("toy-media domain has two modalities, got {modality}"),
        }
    }

    fn cohere(&self, artefacts: &[Artefact<ToyPayload>]) -> f64 {
        self.coherence(artefacts[VISUAL].payload.as_image(), artefacts[TEXT].payload.as_text())
            .value
    }
}
