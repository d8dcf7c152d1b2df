//! Gluing two copies of a spectrum along the complement of its center, and
//! classifying the result: affine spaces have a center; the doubled space
//! does not, but is covered by two affine opens — 1-affine.
//!
//! Run with: `cargo run --example gluing_affinity`

use fscheme::ring::FiniteRing;
use fscheme::sheaf::{classify_affinity, compare_l_with_spec, glue_double, Affinity, FSpace};
use fscheme::spectrum::full_spectrum;

fn main() {
    let z6 = FiniteRing::zmod(6).unwrap();
    let spec = full_spectrum(&z6).unwrap();
    let space = FSpace::from_spectrum(&spec);

    // A genuine spectrum always has a center (the unit group) and is
    // therefore affine.
    assert_eq!(space.center(), Some(0));
    assert!(matches!(classify_affinity(&space).unwrap(), Affinity::Affine));
    println!("F(Z/6): center at point 0, classified {}", classify_affinity(&space).unwrap());

    // Glue two copies along everything except the center: the two center
    // copies survive as incomparable closed points, so no center remains.
    let doubled = glue_double(&spec).unwrap();
    println!(
        "doubled F(Z/6): {} points, copies {:?} / {:?}",
        doubled.space.len(),
        doubled.copies[0],
        doubled.copies[1]
    );
    assert_eq!(doubled.space.len(), 4);
    assert_eq!(doubled.space.center(), None);

    // Not affine — but each embedded copy is an affine open, and their
    // pairwise intersection decomposes into affine pieces: 1-affine.
    let verdict = classify_affinity(&doubled.space).unwrap();
    println!("doubled F(Z/6) classified {verdict}");
    assert!(matches!(verdict, Affinity::OneAffine));
    for copy in &doubled.copies {
        assert!(doubled.space.is_open(copy));
        assert!(doubled.space.subspace_center(copy).is_some());
    }
    println!("both copies are affine opens covering the doubled space");

    // Every corpus spectrum is affine; print a few classifications.
    for n in [4usize, 12, 30] {
        let ring = FiniteRing::zmod(n).unwrap();
        let sp = FSpace::from_spectrum(&full_spectrum(&ring).unwrap());
        println!("F(Z/{n}): {} points, {}", sp.len(), classify_affinity(&sp).unwrap());
        assert!(matches!(classify_affinity(&sp).unwrap(), Affinity::Affine));
    }

    // The local-stalk subspace L(F(A)) recovers the prime spectrum: same
    // count, same topology, isomorphic stalks.
    let z30 = FiniteRing::zmod(30).unwrap();
    let cmp = compare_l_with_spec(&z30).unwrap();
    assert!(cmp.holds());
    println!(
        "Z/30: {} primes <-> {} local points among {} total, topology and stalks agree",
        cmp.prime_count,
        cmp.local_count,
        full_spectrum(&z30).unwrap().len()
    );
}
