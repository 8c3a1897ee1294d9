//! Token-sequence text and a fixed 16-topic multinomial mixture used to
//! classify it.

use rand::Rng;

pub const VOCAB: usize = 64;
pub const TOPICS: usize = 16;
pub const MIN_LEN: usize = 8;
pub const MAX_LEN: usize = 64;
pub const CLASSIFY_THRESHOLD: f64 = 0.40;

/// Tokens preferred by each topic.
const PREFERRED: usize = 4;
const PREFERRED_PROB: f64 = 0.2;
const OTHER_PROB: f64 = 0.2 / (VOCAB - PREFERRED) as f64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToyText {
    tokens: Vec<u8>,
}

impl ToyText {
    pub fn new(tokens: Vec<u8>) -> Self {
        assert!(
            (MIN_LEN..=MAX_LEN).contains(&tokens.len()),
            "text length {} outside [{MIN_LEN}, {MAX_LEN}]",
            tokens.len()
        );
        assert!(
            tokens.iter().all(|&t| (t as usize) < VOCAB),
            "token id outside the vocabulary"
        );
        Self { tokens }
    }

    pub fn tokens(&self) -> &[u8] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Topic `k` puts 0.2 on each of tokens `4k..4k+4` and spreads the
/// remaining 0.2 evenly over the other 60 tokens. The topic prior is
/// uniform.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TopicModel;

impl TopicModel {
    pub fn prob(&self, topic: usize, token: u8) -> f64 {
        if Self::prefers(topic, token) {
            PREFERRED_PROB
        } else {
            OTHER_PROB
        }
    }

    fn prefers(topic: usize, token: u8) -> bool {
        token as usize / PREFERRED == topic
    }

    pub fn row(&self, topic: usize) -> [f64; VOCAB] {
        std::array::from_fn(|t| self.prob(topic, t as u8))
    }

    /// Posterior over topics for a non-empty token sequence.
    ///
    /// Log-likelihoods are built from preferred-token counts so texts that
    /// are symmetric between two topics tie exactly.
    pub fn posterior(&self, tokens: &[u8]) -> [f64; TOPICS] {
        assert!(!tokens.is_empty(), "posterior of an empty text");
        let mut preferred = [0usize; TOPICS];
        for &t in tokens {
            let k = t as usize / PREFERRED;
            if k < TOPICS {
                preferred[k] += 1;
            }
        }
        let n = tokens.len();
        let (lp, lo) = (PREFERRED_PROB.ln(), OTHER_PROB.ln());
        let log_lik: [f64; TOPICS] =
            std::array::from_fn(|k| preferred[k] as f64 * lp + (n - preferred[k]) as f64 * lo);
        let max = log_lik.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights = log_lik.map(|l| (l - max).exp());
        let total: f64 = weights.iter().sum();
        weights.map(|w| w / total)
    }

    /// The most probable topic if its posterior reaches `threshold` and no
    /// other topic ties it.
    pub fn classify(&self, tokens: &[u8], threshold: f64) -> Option<usize> {
        let post = self.posterior(tokens);
        let top = argmax(&post);
        let unique = post
            .iter()
            .enumerate()
            .all(|(k, &p)| k == top || p < post[top]);
        (unique && post[top] >= threshold).then_some(top)
    }

    pub fn sample_token<R: Rng + ?Sized>(&self, topic: usize, rng: &mut R) -> u8 {
        let preferred_mass = PREFERRED as f64 * PREFERRED_PROB;
        if rng.gen_bool(preferred_mass) {
            (topic * PREFERRED + rng.gen_range(0..PREFERRED)) as u8
        } else {
            let i = rng.gen_range(0..VOCAB - PREFERRED);
            let first = topic * PREFERRED;
            (if i < first { i } else { i + PREFERRED }) as u8
        }
    }

    pub fn sample_text<R: Rng + ?Sized>(&self, topic: usize, len: usize, rng: &mut R) -> ToyText {
        ToyText::new((0..len).map(|_| self.sample_token(topic, rng)).collect())
    }
}

/// Index of the largest value; the lowest index wins ties.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}
