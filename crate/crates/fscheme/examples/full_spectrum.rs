//! The full spectrum: every saturated invertibility locus of a ring, with
//! its specialization order, fundamental opens, and closed loci.
//!
//! Run with: `cargo run --example full_spectrum`

use std::collections::BTreeSet;

use fscheme::ideals::Ideal;
use fscheme::ring::{Elem, FiniteRing};
use fscheme::spectrum::{
    closed_subscheme_compare, enumerate_by_closure, enumerate_by_primes, enumerate_by_quotients,
    full_spectrum, z_locus,
};

fn main() {
    let z6 = FiniteRing::zmod(6).unwrap();
    let spec = full_spectrum(&z6).unwrap();

    // Three points: the units {1,5} (the center), and one for each prime.
    println!("F(Z/6) has {} points:", spec.len());
    for (i, p) in spec.points.iter().enumerate() {
        println!(
            "  point {i}: {{{}}}",
            p.members.iter().map(|e| z6.name(*e)).collect::<Vec<_>>().join(", ")
        );
    }
    assert_eq!(spec.len(), 3);
    assert_eq!(spec.center().members, [1, 5].map(Elem).into());

    // Specialization is containment: the center sits below both others,
    // which are incomparable — a "V".
    assert!(spec.leq(0, 1) && spec.leq(0, 2) && !spec.leq(1, 2) && !spec.leq(2, 1));
    println!("specialization order is a V with the unit group at the bottom");

    // Each point ships a witness: a quotient map under which the point is
    // exactly the preimage of the units.
    for (i, p) in spec.points.iter().enumerate() {
        let units_downstairs = p.witness.target.units();
        let pulled = p.witness.preimage(&units_downstairs);
        assert_eq!(pulled, p.members);
        println!("  point {i} witnessed by a quotient of order {}", p.witness.target.order());
    }

    // Three fully independent enumerations agree.
    let z30 = FiniteRing::zmod(30).unwrap();
    let a = enumerate_by_closure(&z30).unwrap();
    let b = enumerate_by_primes(&z30).unwrap();
    let c: BTreeSet<BTreeSet<Elem>> = enumerate_by_quotients(&z30)
        .unwrap()
        .into_iter()
        .map(|p| p.members)
        .collect();
    assert_eq!(a, b);
    assert_eq!(a, c);
    println!("Z/30: closure sweep, prime complements, and quotient witnesses all find {} points", a.len());
    assert_eq!(a.len(), 7); // one per nonempty subset of the three primes, plus units

    // Fundamental opens D(a): all points where a is invertible.
    let spec30 = full_spectrum(&z30).unwrap();
    let d2 = spec30.fundamental_open(Elem(2));
    println!("D(2) in F(Z/30) contains {} of {} points", d2.len(), spec30.len());
    assert_eq!(d2.len(), 3);

    // Closed loci: Z(I) is carried by the spectrum of the quotient, with
    // matching order and stalks; here I = (3) in Z/6.
    let ideal = Ideal::generated(&z6, &[Elem(3)].into());
    let locus = z_locus(&spec, &ideal).unwrap();
    println!("Z((3)) in F(Z/6) = points {:?}", locus.points);
    let cmp = closed_subscheme_compare(&z6, &ideal).unwrap();
    assert!(cmp.holds());
    println!(
        "F(Z/6 / (3)) matches Z((3)): bijective={}, order={}, stalks={}",
        cmp.bijective, cmp.order_isomorphic, cmp.stalks_isomorphic
    );

    // The one-point spectrum of a simple ring: only the units.
    let z2 = FiniteRing::zmod(2).unwrap();
    let m2 = FiniteRing::matrix(&z2, 2).unwrap();
    let spec_m2 = full_spectrum(&m2).unwrap();
    println!("F(M2(F2)) has {} point (the unit group GL2(F2))", spec_m2.len());
    assert_eq!(spec_m2.len(), 1);
    assert_eq!(spec_m2.center().members.len(), 6);
}
