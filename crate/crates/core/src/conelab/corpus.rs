//! Deterministic descriptor pairs over `{R² with L1} ∪ TREE` for reports.

use crate::sample::{SampleConfig, Sampler};
use crate::scalar::Rational;
use crate::treeprod::Descriptor;

/// Every coordinate and length of the corpus has a denominator dividing this.
pub const CORPUS_DENOMINATOR: u64 = 16;

pub fn descriptor_corpus(seed: u64, count: usize) -> Vec<(Descriptor<Rational>, Descriptor<Rational>)> {
    let mut sampler = Sampler::<Rational>::new(seed, SampleConfig::l1_tree());
    (0..count).map(|_| sampler.pair()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conelab::compile::scale_is_aligned;

    #[test]
    fn deterministic_and_aligned() {
        let a = descriptor_corpus(42, 30);
        assert_eq!(a.len(), 30);
        assert_eq!(a, descriptor_corpus(42, 30));
        assert_ne!(a, descriptor_corpus(43, 30));
        for (f, g) in &a {
            f.validate().unwrap();
            g.validate().unwrap();
            assert!(scale_is_aligned(f, CORPUS_DENOMINATOR) && scale_is_aligned(g, CORPUS_DENOMINATOR));
        }
    }
}
