//! Commutative localization by exact fraction arithmetic.
//!
//! For a finite commutative ring `A` and a multiplicative set `S`, the
//! localization `S⁻¹A` is built literally: pairs `(a, s)` modulo the
//! equivalence `(a,s) ~ (b,t) ⟺ ∃u ∈ S: u(at − bs) = 0`, with the canonical
//! representative of each class being its lexicographically smallest pair.
//!
//! Finiteness collapses the theory in a way this module both exploits and
//! verifies: the canonical map `ι: A → S⁻¹A` is surjective with kernel
//! `K = {x : ∃s ∈ S, sx = 0}`, so `S⁻¹A ≅ A/K`. The fraction construction is
//! primary; the quotient route is kept as an independent oracle in the tests.
//!
//! Sets are always saturated first. The saturation of a seed `T` is the
//! smallest subset containing `T` that is multiplicatively closed and divisor
//! closed (`ab ∈ S ⟹ a, b ∈ S`); these closed sets, minus any containing 0,
//! are exactly the subsets that some ring map carries into the units of its
//! target — the points of the full spectrum.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ideals::{self, Ideal, IdealError};
use crate::ring::{Elem, FiniteRing, RingError, RingHom};

#[derive(Debug, Error)]
pub enum LocalizationError {
    #[error("the saturation of the set contains 0, so the localization collapses to the zero ring")]
    ZeroLocalization,
    #[error("element {0} of the multiplicative set is not inverted by the map")]
    NotInverted(usize),
    #[error("denominator {0} is not in the multiplicative set")]
    BadDenominator(usize),
    #[error("hom source does not match the localized ring")]
    SourceMismatch,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Closure of a seed under products (always includes 1).
pub fn multiplicative_closure(ring: &FiniteRing, seed: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    let mut m = seed.clone();
    m.insert(ring.one());
    loop {
        let mut next = m.clone();
        for &a in &m {
            for &b in &m {
                next.insert(ring.mul(a, b));
            }
        }
        if next.len() == m.len() {
            return m;
        }
        m = next;
    }
}

/// Smallest multiplicatively closed, divisor-closed superset of the seed
/// (commutative rings). Computed as `{x : Ax ∩ M ≠ ∅}` for `M` the
/// multiplicative closure — exactly the elements forced invertible once the
/// seed is. Contains every unit; contains 0 only when the localization at the
/// seed would collapse.
pub fn saturation(ring: &FiniteRing, seed: &BTreeSet<Elem>) -> BTreeSet<Elem> {
    let m = multiplicative_closure(ring, seed);
    ring.elements()
        .filter(|&x| ring.elements().any(|a| m.contains(&ring.mul(a, x))))
        .collect()
}

/// The commutative characterization of the sets carried into units by some
/// ring map: nonempty, omits 0, closed under products, and divisor closed.
pub fn is_fully_invertible(ring: &FiniteRing, set: &BTreeSet<Elem>) -> bool {
    if set.is_empty() || set.contains(&ring.zero()) {
        return false;
    }
    for &a in set {
        for &b in set {
            if !set.contains(&ring.mul(a, b)) {
                return false;
            }
        }
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if set.contains(&ring.mul(a, b)) && !(set.contains(&a) && set.contains(&b)) {
                return false;
            }
        }
    }
    true
}

/// A localization `S⁻¹A` of a finite commutative ring, with its canonical
/// map and a class table for every fraction `a/s`.
#[derive(Clone, PartialEq)]
pub struct Localization {
    /// The ring being localized.
    pub ring: FiniteRing,
    /// The saturated multiplicative set.
    pub set: BTreeSet<Elem>,
    /// The ring of fractions.
    pub fractions: FiniteRing,
    /// The canonical map `a ↦ a/1`.
    pub to_fractions: RingHom,
    /// Lexicographically smallest `(numerator, denominator)` per class.
    reps: Vec<(Elem, Elem)>,
    /// `class[a * order + s]` is the fraction class of `a/s` (unused slots
    /// hold `usize::MAX`).
    class: Vec<usize>,
}

/// Localize at the saturation of a seed set. Fails when every element is
/// forced invertible including 0 (the zero ring is outside this universe).
pub fn localize(ring: &FiniteRing, seed: &BTreeSet<Elem>) -> Result<Localization, LocalizationError> {
    ring.require_commutative()?;
    let set = saturation(ring, seed);
    if set.contains(&ring.zero()) {
        return Err(LocalizationError::ZeroLocalization);
    }
    let n = ring.order();
    let s_list: Vec<Elem> = set.iter().copied().collect();
    let equivalent = |a: Elem, s: Elem, b: Elem, t: Elem| {
        let diff = ring.sub(ring.mul(a, t), ring.mul(b, s));
        s_list.iter().any(|&u| ring.mul(u, diff) == ring.zero())
    };

    let mut class = vec![usize::MAX; n * n];
    let mut reps: Vec<(Elem, Elem)> = Vec::new();
    for a in 0..n {
        for &s in &s_list {
            let key = a * n + s.0;
            if class[key] != usize::MAX {
                continue;
            }
            let found = reps
                .iter()
                .position(|&(b, t)| equivalent(Elem(a), s, b, t));
            class[key] = found.unwrap_or_else(|| {
                reps.push((Elem(a), s));
                reps.len() - 1
            });
        }
    }

    let q = reps.len();
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &(a, s) in &reps {
        for &(b, t) in &reps {
            let st = ring.mul(s, t);
            let num = ring.add(ring.mul(a, t), ring.mul(b, s));
            add.push(class[num.0 * n + st.0]);
            mul.push(class[ring.mul(a, b).0 * n + st.0]);
        }
    }
    let one = ring.one();
    let names = reps
        .iter()
        .map(|&(a, s)| format!("{}/{}", ring.name(a), ring.name(s)))
        .collect();
    let set_csv: Vec<String> = set.iter().map(|e| e.0.to_string()).collect();
    let fractions = FiniteRing::from_parts(
        q,
        add,
        mul,
        class[ring.zero().0 * n + one.0],
        class[one.0 * n + one.0],
        format!("Loc({}, {{{}}})", ring.label(), set_csv.join(",")),
        names,
    )?;
    let map = (0..n).map(|a| class[a * n + one.0]).collect();
    let to_fractions = RingHom::new(ring.clone(), fractions.clone(), map)?;
    Ok(Localization {
        ring: ring.clone(),
        set,
        fractions,
        to_fractions,
        reps,
        class,
    })
}

impl Localization {
    /// The fraction class of `a/s`.
    pub fn class_of(&self, a: Elem, s: Elem) -> Result<Elem, LocalizationError> {
        if !self.set.contains(&s) {
            return Err(LocalizationError::BadDenominator(s.0));
        }
        Ok(Elem(self.class[a.0 * self.ring.order() + s.0]))
    }

    /// Canonical `(numerator, denominator)` representative of a class.
    pub fn rep(&self, c: Elem) -> (Elem, Elem) {
        self.reps[c.0]
    }

    /// Does `a/1` become a unit?
    pub fn inverts(&self, a: Elem) -> bool {
        self.fractions.is_unit(self.to_fractions.apply(a))
    }

    /// The kernel of the canonical map, `{x : ∃s ∈ S, sx = 0}`.
    pub fn kernel(&self) -> BTreeSet<Elem> {
        self.to_fractions.kernel()
    }

    /// The unique map `S⁻¹A → B` through which a map `φ: A → B` inverting
    /// `S` factors, computed as `a/s ↦ φ(a)φ(s)⁻¹`.
    pub fn induced_hom(&self, phi: &RingHom) -> Result<RingHom, LocalizationError> {
        if phi.source != self.ring {
            return Err(LocalizationError::SourceMismatch);
        }
        for &s in &self.set {
            if !phi.target.is_unit(phi.apply(s)) {
                return Err(LocalizationError::NotInverted(s.0));
            }
        }
        let map = self
            .reps
            .iter()
            .map(|&(a, s)| {
                let inv = phi.target.inverse(phi.apply(s)).expect("checked unit");
                phi.target.mul(phi.apply(a), inv).0
            })
            .collect();
        RingHom::new(self.fractions.clone(), phi.target.clone(), map).map_err(Into::into)
    }

    /// The canonical map `S⁻¹A → T⁻¹A` when `S ⊆ T` (inverting more).
    pub fn restriction_to(&self, finer: &Localization) -> Result<RingHom, LocalizationError> {
        self.induced_hom(&finer.to_fractions)
    }
}

/// The prime ideals, in canonical subset order (commutative rings).
pub fn prime_ideals(ring: &FiniteRing) -> Vec<Ideal> {
    ideals::ideals(ring)
        .into_iter()
        .filter(|i| i.is_prime(ring))
        .collect()
}

/// The primes disjoint from a multiplicative set — the prime spectrum of the
/// localization, read off inside the original ring.
pub fn primes_avoiding(ring: &FiniteRing, set: &BTreeSet<Elem>) -> Vec<Ideal> {
    prime_ideals(ring)
        .into_iter()
        .filter(|p| p.members.is_disjoint(set))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn set(items: &[usize]) -> BTreeSet<Elem> {
        items.iter().map(|&i| Elem(i)).collect()
    }

    #[test]
    fn multiplicative_closure_of_2_in_z6_is_1_2_4() {
        let m = multiplicative_closure(&z(6), &set(&[2]));
        assert_eq!(m, set(&[1, 2, 4]));
    }

    #[test]
    fn saturation_of_2_in_z6_adds_the_unit_multiples() {
        let s = saturation(&z(6), &set(&[1, 2]));
        assert_eq!(s, set(&[1, 2, 4, 5]));
    }

    #[test]
    fn saturation_of_the_empty_set_is_the_unit_group() {
        for ring in [z(4), z(6), z(12), FiniteRing::gf4()] {
            assert_eq!(saturation(&ring, &BTreeSet::new()), ring.units());
        }
    }

    #[test]
    fn fully_invertible_subsets_of_z6_are_exactly_three() {
        let z6 = z(6);
        let mut found = Vec::new();
        for mask in 0u32..64 {
            let subset: BTreeSet<Elem> =
                (0..6).filter(|i| mask >> i & 1 == 1).map(Elem).collect();
            if is_fully_invertible(&z6, &subset) {
                found.push(subset);
            }
        }
        found.sort_by(|a, b| crate::spectrum::bitmask_cmp(a, b));
        assert_eq!(found, vec![set(&[1, 5]), set(&[1, 3, 5]), set(&[1, 2, 4, 5])]);
    }

    #[test]
    fn localize_z6_inverting_2_gives_a_three_element_ring() {
        let z6 = z(6);
        let loc = localize(&z6, &set(&[2])).unwrap();
        assert_eq!(loc.set, set(&[1, 2, 4, 5]));
        assert_eq!(loc.fractions.order(), 3);
        assert_eq!(loc.kernel(), set(&[0, 3]));
        // Isomorphic to Z/3 via k·1 ↦ k·1.
        let z3 = z(3);
        let mut map = vec![usize::MAX; 3];
        for k in 0..3 {
            map[loc.fractions.int_embed(k).0] = z3.int_embed(k).0;
        }
        let iso = RingHom::new(loc.fractions.clone(), z3, map).unwrap();
        assert!(iso.is_bijective());
    }

    #[test]
    fn localizing_at_a_set_whose_closure_hits_zero_is_rejected() {
        // 2·3 = 0 in Z/6, so inverting both forces 0 invertible.
        assert!(matches!(
            localize(&z(6), &set(&[2, 3])),
            Err(LocalizationError::ZeroLocalization)
        ));
        assert!(matches!(
            localize(&z(4), &set(&[0])),
            Err(LocalizationError::ZeroLocalization)
        ));
    }

    #[test]
    fn localization_at_units_only_is_isomorphic_to_the_ring() {
        let z12 = z(12);
        let loc = localize(&z12, &BTreeSet::new()).unwrap();
        assert_eq!(loc.set, z12.units());
        assert!(loc.to_fractions.is_bijective());
    }

    #[test]
    fn fraction_ring_matches_the_annihilator_quotient_oracle() {
        // Independent route: S⁻¹A ≅ A/K for K = {x : ∃s ∈ S, sx = 0}.
        let cases = [
            (z(6), set(&[2])),
            (z(12), set(&[2])),
            (z(12), set(&[3])),
            (z(12), set(&[10])),
            (z(36), set(&[2])),
            (FiniteRing::product(&z(4), &z(3)).unwrap(), set(&[1])),
        ];
        for (ring, seed) in cases {
            let loc = localize(&ring, &seed).unwrap();
            let k: BTreeSet<Elem> = ring
                .elements()
                .filter(|&x| loc.set.iter().any(|&s| ring.mul(s, x) == ring.zero()))
                .collect();
            let ideal = Ideal::new(&ring, k).expect("annihilator is an ideal");
            let (quot, pi) = ideals::quotient(&ring, &ideal).unwrap();
            // The iso A/K → S⁻¹A is forced by π(x) ↦ x/1.
            let mut map = vec![usize::MAX; quot.order()];
            for x in ring.elements() {
                let q = pi.apply(x).0;
                let f = loc.to_fractions.apply(x).0;
                assert!(map[q] == usize::MAX || map[q] == f, "ill-defined on {}", ring.label());
                map[q] = f;
            }
            let iso = RingHom::new(quot, loc.fractions.clone(), map).unwrap();
            assert!(iso.is_bijective(), "not bijective for {}", ring.label());
        }
    }

    #[test]
    fn fraction_arithmetic_agrees_with_the_defining_formulas() {
        let z12 = z(12);
        let loc = localize(&z12, &set(&[2])).unwrap();
        for a in z12.elements() {
            for &s in &loc.set {
                for b in z12.elements() {
                    for &t in &loc.set {
                        let x = loc.class_of(a, s).unwrap();
                        let y = loc.class_of(b, t).unwrap();
                        let sum = loc
                            .class_of(z12.add(z12.mul(a, t), z12.mul(b, s)), z12.mul(s, t))
                            .unwrap();
                        let prod = loc.class_of(z12.mul(a, b), z12.mul(s, t)).unwrap();
                        assert_eq!(loc.fractions.add(x, y), sum);
                        assert_eq!(loc.fractions.mul(x, y), prod);
                    }
                }
            }
        }
    }

    #[test]
    fn induced_map_factors_uniquely_through_the_localization() {
        let z6 = z(6);
        let z3 = z(3);
        let phi = RingHom::new(z6.clone(), z3.clone(), vec![0, 1, 2, 0, 1, 2]).unwrap();
        let loc = localize(&z6, &set(&[2])).unwrap();
        let psi = loc.induced_hom(&phi).unwrap();
        for a in z6.elements() {
            assert_eq!(psi.apply(loc.to_fractions.apply(a)), phi.apply(a));
        }
        // Uniqueness by exhaustion: every map Q → Z/3 that is a ring hom and
        // factors φ equals ψ.
        let q = loc.fractions.order();
        let total = 3usize.pow(q as u32);
        let mut matches = 0;
        for code in 0..total {
            let map: Vec<usize> = (0..q).map(|i| code / 3usize.pow(i as u32) % 3).collect();
            let Ok(cand) = RingHom::new(loc.fractions.clone(), z3.clone(), map) else {
                continue;
            };
            if z6.elements().all(|a| cand.apply(loc.to_fractions.apply(a)) == phi.apply(a)) {
                matches += 1;
                assert_eq!(cand.map(), psi.map());
            }
        }
        assert_eq!(matches, 1);
    }

    #[test]
    fn induced_hom_rejects_maps_that_do_not_invert_the_set() {
        let z6 = z(6);
        let loc = localize(&z6, &set(&[2])).unwrap();
        let id = RingHom::identity(&z6);
        assert!(matches!(
            loc.induced_hom(&id),
            Err(LocalizationError::NotInverted(_))
        ));
    }

    #[test]
    fn restriction_between_localizations_commutes_with_the_canonical_maps() {
        let z12 = z(12);
        let coarse = localize(&z12, &BTreeSet::new()).unwrap(); // units only
        let fine = localize(&z12, &set(&[2])).unwrap();
        let rho = coarse.restriction_to(&fine).unwrap();
        for a in z12.elements() {
            assert_eq!(
                rho.apply(coarse.to_fractions.apply(a)),
                fine.to_fractions.apply(a)
            );
        }
    }

    #[test]
    fn primes_of_z6_are_generated_by_2_and_3() {
        let primes = prime_ideals(&z(6));
        let sets: Vec<Vec<usize>> = primes
            .iter()
            .map(|p| p.members.iter().map(|e| e.0).collect())
            .collect();
        assert_eq!(sets, vec![vec![0, 3], vec![0, 2, 4]]);
    }

    #[test]
    fn primes_of_local_and_simple_commutative_rings() {
        assert_eq!(prime_ideals(&z(4)).len(), 1);
        assert_eq!(prime_ideals(&FiniteRing::gf4()).len(), 1);
        assert_eq!(prime_ideals(&z(30)).len(), 3);
    }

    #[test]
    fn primes_of_the_localization_are_the_primes_avoiding_the_set() {
        let cases = [
            (z(6), set(&[2])),
            (z(12), set(&[2])),
            (z(12), set(&[])),
            (z(30), set(&[6])),
        ];
        for (ring, seed) in cases {
            let loc = localize(&ring, &seed).unwrap();
            let surviving = primes_avoiding(&ring, &loc.set);
            let inside = prime_ideals(&loc.fractions);
            assert_eq!(surviving.len(), inside.len(), "count for {}", ring.label());
            // The image of each surviving prime generates a prime of S⁻¹A.
            for p in &surviving {
                let image: BTreeSet<Elem> =
                    p.members.iter().map(|&x| loc.to_fractions.apply(x)).collect();
                let generated = Ideal::generated(&loc.fractions, &image);
                assert!(generated.is_prime(&loc.fractions));
            }
        }
    }

    fn proptest_rings() -> Vec<FiniteRing> {
        vec![z(4), z(6), z(9), z(12), FiniteRing::gf4()]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn saturation_is_an_idempotent_closure_containing_the_units(
            ring_idx in 0usize..5,
            mask in 0u64..4096,
        ) {
            let ring = proptest_rings().swap_remove(ring_idx);
            let seed: BTreeSet<Elem> = (0..ring.order())
                .filter(|i| mask >> i & 1 == 1)
                .map(Elem)
                .collect();
            let s = saturation(&ring, &seed);
            prop_assert!(seed.is_subset(&s));
            prop_assert!(ring.units().is_subset(&s));
            prop_assert_eq!(&saturation(&ring, &s), &s);
            // Multiplicatively closed and divisor closed, or collapsed to
            // everything when the closure hits 0.
            if !s.contains(&ring.zero()) {
                prop_assert!(is_fully_invertible(&ring, &s));
            } else {
                prop_assert_eq!(s.len(), ring.order());
            }
        }

        #[test]
        fn fraction_count_times_kernel_size_is_the_ring_order(
            ring_idx in 0usize..5,
            mask in 0u64..4096,
        ) {
            let ring = proptest_rings().swap_remove(ring_idx);
            let seed: BTreeSet<Elem> = (0..ring.order())
                .filter(|i| mask >> i & 1 == 1)
                .map(Elem)
                .collect();
            match localize(&ring, &seed) {
                Ok(loc) => {
                    prop_assert_eq!(
                        loc.fractions.order() * loc.kernel().len(),
                        ring.order()
                    );
                    prop_assert!(loc.set.iter().all(|&s| loc.inverts(s)));
                }
                Err(LocalizationError::ZeroLocalization) => {
                    prop_assert!(saturation(&ring, &seed).contains(&ring.zero()));
                }
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
