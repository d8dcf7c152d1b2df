//! The canonical ring corpus every property check and acceptance run uses.
//!
//! Nineteen small rings chosen to exercise every code path: the residue
//! rings `ℤ/n` for `n ∈ {2,…,12, 30, 36}` (fields, local rings, products in
//! disguise, and a three-prime example), the four-element field, two
//! explicit products, the simple matrix ring `M₂(F₂)`, and two upper
//! triangular rings with nonzero radical. Each entry carries a stable
//! lookup key used by the command-line interface.

use crate::ring::{FiniteRing, RingError};

/// A corpus ring with its stable lookup key.
pub struct CorpusEntry {
    pub key: String,
    pub ring: FiniteRing,
}

/// The canonical corpus, in a fixed deterministic order.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    build_corpus().expect("corpus rings are valid by construction")
}

fn build_corpus() -> Result<Vec<CorpusEntry>, RingError> {
    let mut entries = Vec::new();
    for n in (2..=12).chain([30, 36]) {
        entries.push(CorpusEntry {
            key: format!("zmod{n}"),
            ring: FiniteRing::zmod(n)?,
        });
    }
    entries.push(CorpusEntry {
        key: "gf4".into(),
        ring: FiniteRing::gf4(),
    });
    let z2 = FiniteRing::zmod(2)?;
    let z3 = FiniteRing::zmod(3)?;
    entries.push(CorpusEntry {
        key: "z2xz2".into(),
        ring: FiniteRing::product(&z2, &z2)?,
    });
    entries.push(CorpusEntry {
        key: "z2xz3".into(),
        ring: FiniteRing::product(&z2, &z3)?,
    });
    entries.push(CorpusEntry {
        key: "m2f2".into(),
        ring: FiniteRing::matrix(&z2, 2)?,
    });
    entries.push(CorpusEntry {
        key: "t2z2".into(),
        ring: FiniteRing::upper_triangular(&z2, 2)?,
    });
    entries.push(CorpusEntry {
        key: "t2z3".into(),
        ring: FiniteRing::upper_triangular(&z3, 2)?,
    });
    Ok(entries)
}

/// Look a corpus ring up by key.
pub fn corpus_ring(key: &str) -> Option<FiniteRing> {
    standard_corpus()
        .into_iter()
        .find(|e| e.key == key)
        .map(|e| e.ring)
}

/// Just the commutative members, for checks that require commutativity.
pub fn commutative_corpus() -> Vec<CorpusEntry> {
    standard_corpus()
        .into_iter()
        .filter(|e| e.ring.is_commutative())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_corpus_has_nineteen_distinctly_keyed_rings() {
        let corpus = standard_corpus();
        assert_eq!(corpus.len(), 19);
        let mut keys: Vec<&str> = corpus.iter().map(|e| e.key.as_str()).collect();
        keys.dedup();
        assert_eq!(keys.len(), 19);
    }

    #[test]
    fn the_corpus_contains_the_six_element_residue_ring() {
        let ring = corpus_ring("zmod6").unwrap();
        assert_eq!(ring.order(), 6);
        assert!(ring.is_commutative());
    }

    #[test]
    fn the_corpus_contains_at_least_two_noncommutative_rings() {
        let noncomm = standard_corpus()
            .iter()
            .filter(|e| !e.ring.is_commutative())
            .count();
        assert!(noncomm >= 2);
    }

    #[test]
    fn every_corpus_ring_passes_the_full_axiom_check() {
        for entry in standard_corpus() {
            entry.ring.validate().unwrap_or_else(|e| {
                panic!("{} failed validation: {e}", entry.key);
            });
        }
    }

    #[test]
    fn unknown_keys_return_nothing() {
        assert!(corpus_ring("zmod1").is_none());
        assert!(corpus_ring("m3f2").is_none());
    }
}
