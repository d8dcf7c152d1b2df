//! Commutative rings of fractions, computed literally: saturate the
//! denominator set, form equivalence classes of pairs, and read off the
//! kernel of the canonical map.
//!
//! Run with: `cargo run --example fractions`

use std::collections::BTreeSet;

use fscheme::localization::{localize, prime_ideals, saturation};
use fscheme::ring::{Elem, FiniteRing};

fn main() {
    let z6 = FiniteRing::zmod(6).unwrap();

    // Inverting 2 in Z/6: the saturation pulls in every divisor of a
    // power of 2 times a unit, and 3 dies because 3 * 2 = 0.
    let seed: BTreeSet<Elem> = [Elem(2)].into();
    let sat = saturation(&z6, &seed);
    println!(
        "saturation of {{2}} in Z/6 = {:?}",
        sat.iter().map(|e| e.0).collect::<Vec<_>>()
    );
    assert_eq!(sat, [1, 2, 4, 5].map(Elem).into());

    let loc = localize(&z6, &seed).unwrap();
    println!("(Z/6)[1/2] has order {}", loc.fractions.order());
    assert_eq!(loc.fractions.order(), 3);
    for c in loc.fractions.elements() {
        let (a, s) = loc.rep(c);
        println!("  class {} = {}/{}", c.0, z6.name(a), z6.name(s));
    }
    // The kernel of a |-> a/1 is exactly the annihilator absorbed by the
    // denominators: {0, 3}.
    assert_eq!(loc.kernel(), [0, 3].map(Elem).into());
    println!(
        "kernel of the canonical map = {:?}",
        loc.kernel().iter().map(|e| e.0).collect::<Vec<_>>()
    );

    // Localizing at the complement of a prime always yields a local ring.
    let z30 = FiniteRing::zmod(30).unwrap();
    for p in prime_ideals(&z30) {
        let complement: BTreeSet<Elem> =
            z30.elements().filter(|a| !p.members.contains(a)).collect();
        let at_p = localize(&z30, &complement).unwrap();
        println!(
            "Z/30 at a prime of size {:>2}: fraction ring order {:>2}, local: {}",
            p.len(),
            at_p.fractions.order(),
            at_p.fractions.is_local_ring()
        );
        assert!(at_p.fractions.is_local_ring());
    }

    // The universal property at desk scale: any hom sending the seed to
    // units factors uniquely through the fraction ring. Reducing Z/6 to
    // Z/3 sends 2 to the unit 2, so it factors through (Z/6)[1/2].
    let z3 = FiniteRing::zmod(3).unwrap();
    let reduce = fscheme::ring::RingHom::new(
        z6.clone(),
        z3.clone(),
        (0..6).map(|a| a % 3).collect(),
    )
    .unwrap();
    let through = loc.induced_hom(&reduce).unwrap();
    for a in z6.elements() {
        assert_eq!(through.apply(loc.to_fractions.apply(a)), reduce.apply(a));
    }
    println!("Z/6 -> Z/3 factors through (Z/6)[1/2], as the universal property demands");
}
