//! Deterministic synthetic bimodal domains. Modality 0 is the textual
//! artefact and modality 1 the visual one in both.

pub mod image;
pub mod text;
pub mod toy_media;
pub mod vector_pair;

pub use image::ToyImage;
pub use text::{TopicModel, ToyText};
pub use toy_media::{ToyMedia, ToyMediaParams, ToyPayload};
pub use vector_pair::{VectorArtefact, VectorPair, VectorPairParams};

pub const TEXT: usize = 0;
pub const VISUAL: usize = 1;

/// Which branch a two-branch mutation operator took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationBranch {
    Partial,
    Full,
}

/// Quantises `x` into four bins split at ascending thresholds; values on a
/// threshold fall into the upper bin.
pub fn bin4(x: f64, thresholds: [f64; 3]) -> usize {
    let [a, b, c] = thresholds;
    assert!(a < b && b < c, "bin thresholds must be strictly ascending");
    if x < a {
        0
    } else if x < b {
        1
    } else if x < c {
        2
    } else {
        3
    }
}
