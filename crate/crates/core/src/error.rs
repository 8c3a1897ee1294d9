use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QdError {
    #[error("the archive holds no elites")]
    NoElites,
    #[error("cluster count k = {k} must be in 1..={n}")]
    InvalidClusterCount { k: usize, n: usize },
    #[error("rank-sum test requires two non-empty samples")]
    EmptySample,
    #[error("distance is not symmetric for items {i} and {j}: {forward} vs {backward}")]
    AsymmetricDistance {
        i: usize,
        j: usize,
        forward: f64,
        backward: f64,
    },
}
