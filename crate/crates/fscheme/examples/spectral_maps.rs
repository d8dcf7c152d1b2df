//! From ring homomorphisms to continuous maps of spectra: enumeration of
//! all homs between two rings, pullback of points, continuity and
//! functoriality, and the stalkwise picture.
//!
//! Run with: `cargo run --example spectral_maps`

use fscheme::morphism::{analyze_morphism, hom_search, pullback_point, spectral_map};
use fscheme::ring::{FiniteRing, RingHom};
use fscheme::spectrum::full_spectrum;

fn main() {
    let z12 = FiniteRing::zmod(12).unwrap();
    let z6 = FiniteRing::zmod(6).unwrap();

    // Every unital hom between two finite rings, found by additive
    // generator spans; between Z/12 and Z/6 there is exactly one.
    let homs = hom_search(&z12, &z6);
    println!("homs Z/12 -> Z/6: {}", homs.len());
    assert_eq!(homs.len(), 1);
    let phi = &homs[0];

    // Points pull back to points: the preimage of a saturated
    // invertibility locus is one again.
    let spec6 = full_spectrum(&z6).unwrap();
    for p in &spec6.points {
        let pulled = pullback_point(phi, &p.members);
        println!(
            "  {:?} pulls back to {:?}",
            p.members.iter().map(|e| e.0).collect::<Vec<_>>(),
            pulled.iter().map(|e| e.0).collect::<Vec<_>>()
        );
    }

    // The induced spectral map is continuous (preimages of fundamental
    // opens are fundamental opens) and monotone for specialization.
    let sm = spectral_map(phi).unwrap();
    assert!(sm.continuous && sm.monotone);
    println!("spectral map F(Z/6) -> F(Z/12): {:?}, continuous and monotone", sm.map);

    // Functoriality: composing ring maps composes spectral maps the other
    // way around. Chain Z/12 -> Z/6 -> Z/3 and compare point by point.
    let z3 = FiniteRing::zmod(3).unwrap();
    let psi = &hom_search(&z6, &z3)[0];
    let composed = RingHom::compose(phi, psi).unwrap();
    let sm_psi = spectral_map(psi).unwrap();
    let sm_comp = spectral_map(&composed).unwrap();
    for (i, &through) in sm_comp.map.iter().enumerate() {
        assert_eq!(through, sm.map[sm_psi.map[i]]);
    }
    println!("F(psi . phi) = F(phi) . F(psi) on every point");

    // The full analysis: stalk maps between localizations, all local, and
    // the original hom read back from global sections.
    let analysis = analyze_morphism(phi).unwrap();
    assert!(analysis.holds());
    println!(
        "stalk maps local: {}, global readback = phi: {}, local points map to local points: {}",
        analysis.stalk_maps_local, analysis.roundtrip, analysis.local_to_local
    );

    // A noncommutative source still has a spectral map; forgetting the
    // off-diagonal entry of an upper triangular matrix is a hom onto the
    // diagonal product, and its spectral map matches the three points.
    let z2 = FiniteRing::zmod(2).unwrap();
    let t2 = FiniteRing::upper_triangular(&z2, 2).unwrap();
    let diag = FiniteRing::product(&z2, &z2).unwrap();
    let forget = RingHom::new(
        t2.clone(),
        diag.clone(),
        (0..8).map(|i| 2 * (i & 1) + (i >> 2 & 1)).collect(),
    )
    .unwrap();
    let sm_nc = spectral_map(&forget).unwrap();
    println!(
        "T2(Z/2) <- Z/2 x Z/2 spectral map over {} -> {} points: {:?}",
        sm_nc.source_space.len(),
        sm_nc.target_space.len(),
        sm_nc.map
    );
    assert!(sm_nc.continuous && sm_nc.monotone);
}
