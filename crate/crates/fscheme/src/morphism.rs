//! Functoriality of the full spectrum: pulling points back along ring maps,
//! the induced continuous map of spaces, local maps on stalks, and recovery
//! of the original ring map from its spectrum-level data.
//!
//! The functor is contravariant. A point of the target's spectrum is a fully
//! invertible subset `T ⊆ B`, i.e. the unit preimage under some map out of
//! `B`; composing that witness with `φ: A → B` shows `φ⁻¹(T)` is again fully
//! invertible, so pulling back needs no search — only a membership test
//! against the already-enumerated source spectrum.
//!
//! For commutative rings the pullback extends to stalks: the universal
//! property of fractions induces `A_{φ⁻¹(T)} → B_T`, and these maps are
//! local because the denominator set upstairs is exactly the preimage of the
//! one downstairs. Reading the tuple of stalk maps back through global
//! sections recovers `φ` on the nose, which is checked literally here rather
//! than assumed.
//!
//! `hom_search` enumerates every unital ring map between two small rings by
//! choosing images of additive generators, letting the validating
//! constructor reject non-maps. It exists to make morphism-level claims
//! quantifiable over *all* maps, not just hand-picked ones.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ideals::IdealError;
use crate::localization::{localize, LocalizationError};
use crate::ring::{Elem, FiniteRing, RingError, RingHom};
use crate::spectrum::{full_spectrum, FullSpectrum, SpectrumError};

#[derive(Debug, Error)]
pub enum MorphismError {
    #[error("pulled-back set is not a point of the source spectrum")]
    PullbackMissing,
    #[error("point index out of range")]
    PointOutOfRange,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Pull a fully invertible subset of the target back along a ring map.
/// The result is always fully invertible: compose the subset's witnessing
/// map with `φ`.
pub fn pullback_point(phi: &RingHom, point: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    phi.preimage(point)
}

/// The spectrum-level map induced by a ring map, with its continuity and
/// monotonicity certificates. Contravariant: points of `F(target)` map to
/// points of `F(source)`.
pub struct SpectralMap {
    /// Spectrum of the ring map's target — the source space of this map.
    pub source_space: FullSpectrum,
    /// Spectrum of the ring map's source — the target space of this map.
    pub target_space: FullSpectrum,
    /// Point index in `source_space` ↦ point index in `target_space`.
    pub map: Vec<usize>,
    /// Preimages of fundamental opens are the expected fundamental opens.
    pub continuous: bool,
    /// The map respects specialization order.
    pub monotone: bool,
}

impl SpectralMap {
    pub fn apply(&self, point: usize) -> Result<usize, MorphismError> {
        self.map
            .get(point)
            .copied()
            .ok_or(MorphismError::PointOutOfRange)
    }
}

/// Compute the induced map `F(B) → F(A)` for `φ: A → B` and certify
/// continuity on the basis: the preimage of `D(a)` must be `D(φ(a))`.
pub fn spectral_map(phi: &RingHom) -> Result<SpectralMap, MorphismError> {
    let target_space = full_spectrum(&phi.source)?;
    let source_space = full_spectrum(&phi.target)?;
    let mut map = Vec::with_capacity(source_space.len());
    for p in &source_space.points {
        let pulled = pullback_point(phi, &p.members);
        let idx = target_space
            .point_index(&pulled)
            .ok_or(MorphismError::PullbackMissing)?;
        map.push(idx);
    }
    let mut continuous = true;
    for a in phi.source.elements() {
        let expected = source_space.fundamental_open(phi.apply(a));
        let preimage: BTreeSet<usize> = (0..source_space.len())
            .filter(|&t| target_space.fundamental_open(a).contains(&map[t]))
            .collect();
        if preimage != expected {
            continuous = false;
        }
    }
    let mut monotone = true;
    for i in 0..source_space.len() {
        for j in 0..source_space.len() {
            if source_space.leq(i, j) && !target_space.leq(map[i], map[j]) {
                monotone = false;
            }
        }
    }
    Ok(SpectralMap {
        source_space,
        target_space,
        map,
        continuous,
        monotone,
    })
}

/// Full analysis of a commutative-ring map at the level of spectra, stalks,
/// and global sections.
pub struct MorphismAnalysis {
    pub spectral: SpectralMap,
    /// For each point `T` of the target's spectrum: the induced map
    /// `A_{φ⁻¹(T)} → B_T`.
    pub stalk_maps: Vec<RingHom>,
    /// Every stalk map pulls units back exactly onto units.
    pub stalk_maps_local: bool,
    /// Reading the stalk maps back through global sections returns `φ`.
    pub roundtrip: bool,
    /// Points with local stalks map to points with local stalks.
    pub local_to_local: bool,
}

impl MorphismAnalysis {
    pub fn holds(&self) -> bool {
        self.spectral.continuous
            && self.spectral.monotone
            && self.stalk_maps_local
            && self.roundtrip
            && self.local_to_local
    }
}

/// Build the spectral map plus stalk maps for a map of commutative rings,
/// and verify localness and the global-sections roundtrip.
pub fn analyze_morphism(phi: &RingHom) -> Result<MorphismAnalysis, MorphismError> {
    phi.source.require_commutative()?;
    phi.target.require_commutative()?;
    let spectral = spectral_map(phi)?;
    let source_space = &spectral.source_space; // F(B)
    let target_space = &spectral.target_space; // F(A)

    let mut stalk_maps = Vec::with_capacity(source_space.len());
    let mut stalk_maps_local = true;
    for (t, point) in source_space.points.iter().enumerate() {
        let loc_t = localize(&phi.target, &point.members)?;
        let s = spectral.map[t];
        let loc_s = localize(&phi.source, &target_space.points[s].members)?;
        // A → B → B_T inverts φ⁻¹(T), so it factors through A_{φ⁻¹(T)}.
        let through = RingHom::compose(phi, &loc_t.to_fractions)?;
        let stalk = loc_s.induced_hom(&through)?;
        if !stalk.is_local() {
            stalk_maps_local = false;
        }
        stalk_maps.push(stalk);
    }

    // Roundtrip: an element a ∈ A determines, through the stalk maps, a
    // compatible tuple over F(B); that tuple must be the image of φ(a).
    let mut roundtrip = true;
    for a in phi.source.elements() {
        for (t, point) in source_space.points.iter().enumerate() {
            let loc_t = localize(&phi.target, &point.members)?;
            let s = spectral.map[t];
            let loc_s = localize(&phi.source, &target_space.points[s].members)?;
            let via_stalk = stalk_maps[t].apply(loc_s.to_fractions.apply(a));
            let direct = loc_t.to_fractions.apply(phi.apply(a));
            if via_stalk != direct {
                roundtrip = false;
            }
        }
        // The tuple (ι_T(φ(a)))_T is the global-sections image of φ(a);
        // injectivity of the global map makes the readback unique, so the
        // coordinate check above is the full roundtrip.
    }

    let local_of = |spec: &FullSpectrum, ring: &FiniteRing| -> Result<Vec<bool>, MorphismError> {
        let mut out = Vec::with_capacity(spec.len());
        for p in &spec.points {
            out.push(localize(ring, &p.members)?.fractions.is_local_ring());
        }
        Ok(out)
    };
    let source_local = local_of(source_space, &phi.target)?;
    let target_local = local_of(target_space, &phi.source)?;
    let local_to_local = (0..source_space.len())
        .all(|t| !source_local[t] || target_local[spectral.map[t]]);

    Ok(MorphismAnalysis {
        spectral,
        stalk_maps,
        stalk_maps_local,
        roundtrip,
        local_to_local,
    })
}

/// Additive generators of a ring with, for every element, one expression as
/// a combination of generator multiples — used to cut the hom search space.
struct AdditiveSpan {
    generators: Vec<Elem>,
    /// Per element: coefficient of each generator in one fixed expression.
    expressions: Vec<Vec<u32>>,
}

fn additive_span(ring: &FiniteRing) -> AdditiveSpan {
    let n = ring.order();
    let mut generators: Vec<Elem> = Vec::new();
    let mut expressions: Vec<Option<Vec<u32>>> = vec![None; n];
    expressions[ring.zero().0] = Some(Vec::new());
    loop {
        let Some(g) = (0..n).map(Elem).find(|e| expressions[e.0].is_none()) else {
            break;
        };
        generators.push(g);
        // Extend every known expression by multiples of the new generator.
        let known: Vec<(usize, Vec<u32>)> = expressions
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.clone().map(|expr| (i, expr)))
            .collect();
        for (base, expr) in known {
            let mut acc = Elem(base);
            let mut k = 1u32;
            loop {
                acc = ring.add(acc, g);
                if acc.0 == base {
                    break;
                }
                if expressions[acc.0].is_none() {
                    let mut extended = expr.clone();
                    extended.resize(generators.len(), 0);
                    extended[generators.len() - 1] = k;
                    expressions[acc.0] = Some(extended);
                }
                k += 1;
            }
        }
    }
    let expressions = expressions
        .into_iter()
        .map(|e| {
            let mut expr = e.expect("span reaches every element");
            expr.resize(generators.len(), 0);
            expr
        })
        .collect();
    AdditiveSpan {
        generators,
        expressions,
    }
}

/// Every unital ring map from `source` to `target`, found by exhausting
/// images of additive generators and validating each candidate.
pub fn hom_search(source: &FiniteRing, target: &FiniteRing) -> Vec<RingHom> {
    let span = additive_span(source);
    let k = span.generators.len();
    let mut found = Vec::new();
    let mut images = vec![Elem(0); k];
    search_homs(source, target, &span, 0, &mut images, &mut found);
    found
}

fn search_homs(
    source: &FiniteRing,
    target: &FiniteRing,
    span: &AdditiveSpan,
    depth: usize,
    images: &mut Vec<Elem>,
    found: &mut Vec<RingHom>,
) {
    if depth == span.generators.len() {
        let map: Vec<usize> = span
            .expressions
            .iter()
            .map(|expr| {
                let mut acc = target.zero();
                for (i, &coeff) in expr.iter().enumerate() {
                    acc = target.add(acc, target.int_mul(i64::from(coeff), images[i]));
                }
                acc.0
            })
            .collect();
        if let Ok(hom) = RingHom::new(source.clone(), target.clone(), map) {
            found.push(hom);
        }
        return;
    }
    // The image must respect the generator's additive order.
    let g = span.generators[depth];
    let order = {
        let mut acc = g;
        let mut k = 1i64;
        while acc != source.zero() {
            acc = source.add(acc, g);
            k += 1;
        }
        k
    };
    for y in target.elements() {
        if target.int_mul(order, y) == target.zero() {
            images[depth] = y;
            search_homs(source, target, span, depth + 1, images, found);
        }
    }
}

/// Brute-force oracle for `hom_search`: check every possible map. Only
/// feasible for very small rings; used to validate the generator-based
/// search.
pub fn hom_search_exhaustive(source: &FiniteRing, target: &FiniteRing) -> Vec<RingHom> {
    let n = source.order();
    let m = target.order();
    let mut found = Vec::new();
    let total = m.checked_pow(n as u32).expect("oracle only for tiny rings");
    for code in 0..total {
        let mut c = code;
        let map: Vec<usize> = (0..n)
            .map(|_| {
                let v = c % m;
                c /= m;
                v
            })
            .collect();
        if let Ok(hom) = RingHom::new(source.clone(), target.clone(), map) {
            found.push(hom);
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{self, Ideal};
    use crate::spectrum::z_locus;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn reduction(from: usize, to: usize) -> RingHom {
        let a = z(from);
        let b = z(to);
        let map = (0..from).map(|k| k % to).collect();
        RingHom::new(a, b, map).unwrap()
    }

    #[test]
    fn pullbacks_of_points_are_points() {
        let phi = reduction(12, 6);
        let spec_b = full_spectrum(&z(6)).unwrap();
        let spec_a = full_spectrum(&z(12)).unwrap();
        for p in &spec_b.points {
            let pulled = pullback_point(&phi, &p.members);
            assert!(spec_a.point_index(&pulled).is_some());
        }
    }

    #[test]
    fn spectral_maps_are_continuous_and_monotone_on_the_corpus() {
        let maps = vec![
            reduction(12, 6),
            reduction(12, 4),
            reduction(12, 3),
            reduction(6, 3),
            reduction(6, 2),
            RingHom::identity(&z(6)),
        ];
        for phi in maps {
            let sm = spectral_map(&phi).unwrap();
            assert!(sm.continuous, "{} → {}", phi.source.label(), phi.target.label());
            assert!(sm.monotone);
        }
    }

    #[test]
    fn a_noncommutative_quotient_has_a_spectral_map() {
        // T₂(F₂) → F₂ × F₂ by forgetting the strictly upper entry.
        let z2 = z(2);
        let tri = FiniteRing::upper_triangular(&z2, 2).unwrap();
        let prod = FiniteRing::product(&z2, &z2).unwrap();
        // Triangular encoding: index = a + 2b + 4d for [[a, b], [0, d]];
        // product encoding: index = 2a + d.
        let map = (0..8).map(|i| 2 * (i & 1) + (i >> 2 & 1)).collect();
        let phi = RingHom::new(tri, prod, map).unwrap();
        let sm = spectral_map(&phi).unwrap();
        assert_eq!(sm.source_space.len(), 3);
        assert_eq!(sm.target_space.len(), 3);
        assert!(sm.continuous && sm.monotone);
        // The two maximal points downstairs land on distinct maximal points.
        assert_ne!(sm.map[1], sm.map[2]);
    }

    #[test]
    fn stalk_maps_are_local_and_the_roundtrip_recovers_the_map() {
        let maps = vec![
            reduction(12, 6),
            reduction(12, 3),
            reduction(6, 3),
            reduction(6, 2),
            reduction(30, 6),
            RingHom::identity(&z(30)),
        ];
        for phi in maps {
            let analysis = analyze_morphism(&phi).unwrap();
            assert!(
                analysis.holds(),
                "{} → {}: local={} roundtrip={} l2l={}",
                phi.source.label(),
                phi.target.label(),
                analysis.stalk_maps_local,
                analysis.roundtrip,
                analysis.local_to_local
            );
        }
    }

    #[test]
    fn coarsening_the_denominator_set_is_not_a_local_map() {
        // A_U → A_S for U ⊂ S inverts more downstairs than upstairs: the
        // image of 2 becomes a unit even though 2 is not one upstairs.
        let z6 = z(6);
        let at_units = localize(&z6, &BTreeSet::new()).unwrap();
        let at_two = localize(&z6, &[Elem(2)].into_iter().collect()).unwrap();
        let coarse_to_fine = at_units.restriction_to(&at_two).unwrap();
        assert!(!coarse_to_fine.is_local());
    }

    #[test]
    fn the_functor_respects_identity_and_composition() {
        let id = RingHom::identity(&z(6));
        let sm = spectral_map(&id).unwrap();
        assert_eq!(sm.map, vec![0, 1, 2]);

        let phi = reduction(12, 6); // A → B
        let psi = reduction(6, 3); // B → C
        let composed = RingHom::compose(&phi, &psi).unwrap();
        let f_phi = spectral_map(&phi).unwrap();
        let f_psi = spectral_map(&psi).unwrap();
        let f_composed = spectral_map(&composed).unwrap();
        for t in 0..f_psi.source_space.len() {
            // F(ψ∘φ) = F(φ) ∘ F(ψ) point by point.
            assert_eq!(f_composed.map[t], f_phi.map[f_psi.map[t]]);
        }
    }

    #[test]
    fn generator_search_agrees_with_the_exhaustive_oracle_on_tiny_rings() {
        let rings = [z(2), z(3), z(4), FiniteRing::gf4()];
        for a in &rings {
            for b in &rings {
                let mut fast: Vec<Vec<usize>> = hom_search(a, b)
                    .into_iter()
                    .map(|h| h.map().to_vec())
                    .collect();
                let mut slow: Vec<Vec<usize>> = hom_search_exhaustive(a, b)
                    .into_iter()
                    .map(|h| h.map().to_vec())
                    .collect();
                fast.sort();
                slow.sort();
                assert_eq!(fast, slow, "{} → {}", a.label(), b.label());
            }
        }
    }

    #[test]
    fn hom_counts_between_small_rings_are_frozen() {
        let z2 = z(2);
        let z6 = z(6);
        let gf4 = FiniteRing::gf4();
        let z2z3 = FiniteRing::product(&z2, &z(3)).unwrap();
        let z2z2 = FiniteRing::product(&z2, &z2).unwrap();
        assert_eq!(hom_search(&z6, &z6).len(), 1); // only the identity
        assert_eq!(hom_search(&z6, &z2).len(), 1);
        assert_eq!(hom_search(&z2, &z6).len(), 0); // 1+1 would need image 0
        assert_eq!(hom_search(&z6, &z2z3).len(), 1); // the CRT isomorphism
        assert_eq!(hom_search(&gf4, &gf4).len(), 2); // identity and squaring
        assert_eq!(hom_search(&gf4, &z2).len(), 0);
        assert_eq!(hom_search(&z2z2, &z2).len(), 2); // the two projections
        assert_eq!(hom_search(&z2, &z2z2).len(), 1); // the diagonal
        assert_eq!(hom_search(&z(4), &z2).len(), 1);
        assert_eq!(hom_search(&z2, &z(4)).len(), 0);
    }

    #[test]
    fn quotient_spectral_images_are_vanishing_loci() {
        let cases = vec![
            (z(6), vec![Elem(3)]),
            (z(12), vec![Elem(4)]),
            (z(36), vec![Elem(6)]),
        ];
        for (ring, gens) in cases {
            let ideal = Ideal::generated(&ring, &gens.into_iter().collect());
            let (_, pi) = ideals::quotient(&ring, &ideal).unwrap();
            let sm = spectral_map(&pi).unwrap();
            let image: BTreeSet<usize> = sm.map.iter().copied().collect();
            let locus = z_locus(&sm.target_space, &ideal).unwrap();
            assert_eq!(image, locus.points, "{}", ring.label());
        }
    }

    #[test]
    fn every_hom_between_corpus_rings_pulls_points_back_to_points() {
        let rings = [z(4), z(6), FiniteRing::gf4(), FiniteRing::product(&z(2), &z(2)).unwrap()];
        for a in &rings {
            for b in &rings {
                for phi in hom_search(a, b) {
                    let sm = spectral_map(&phi).unwrap();
                    assert!(sm.continuous && sm.monotone);
                }
            }
        }
    }
}
