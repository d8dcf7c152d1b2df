//! Twisted Laurent algebras over a finite coefficient ring and the graded
//! correspondence between their homogeneous fully invertible subsets and the
//! σ-stable ones downstairs.
//!
//! The algebra `R₀[x^{±1}; σ]` is infinite, so its elements are carried as
//! finitely supported degree→coefficient maps inside a bounded degree
//! window (at most 8 on each side); products that would leave the window
//! are a reported error, never silent truncation. The defining law
//! `x·a = σ(a)·x` lives in the multiplication table; `twist_law_report`
//! certifies `xⁿ·a·x⁻ⁿ = σⁿ(a)` for every coefficient and every window
//! degree by actually multiplying, rather than by appeal to the definition.
//!
//! Homogeneous subsets are represented intensionally by their degree-zero
//! slice: the subset `⋃ₙ S₀·xⁿ` is determined by `S₀ ⊆ R₀`, and the whole
//! point of the correspondence is that such a subset is multiplicatively
//! closed exactly when `S₀` is σ-stable. Both directions are certified on
//! every spectrum point of the coefficient ring: stability is checked as a
//! set identity, closure is checked by multiplying out monomials across the
//! window, and violations come with a concrete witness monomial pair.
//!
//! Re-presenting the algebra by a different degree-one unit `u = c·x`
//! twists the automorphism by conjugation: `σ'(a) = c·σ(a)·c⁻¹`. The
//! crossed-product decomposition constructs σ′, validates it as an
//! automorphism, and verifies `u·a = σ′(a)·u` by multiplication.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ring::{Elem, FiniteRing, RingAut, RingError};
use crate::spectrum::{full_spectrum, SpectrumError};

/// Hard cap on the degree window of a twisted Laurent algebra.
pub const MAX_TWIST_WINDOW: i64 = 8;

#[derive(Debug, Error)]
pub enum GradedError {
    #[error("automorphism acts on a different ring")]
    AutomorphismMismatch,
    #[error("degree window {requested} exceeds the supported maximum {max}")]
    WindowTooWide { requested: i64, max: i64 },
    #[error("degree {degree} falls outside the window ±{window}")]
    DegreeOutOfWindow { degree: i64, window: i64 },
    #[error("element {0} is not a unit of the coefficient ring")]
    NotAUnit(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// A finitely supported element of the twisted Laurent algebra: degree to
/// nonzero coefficient.
pub type LaurentElem = BTreeMap<i64, Elem>;

/// The algebra `R₀[x^{±1}; σ]`, restricted to a symmetric degree window.
pub struct TwistedLaurentAlgebra {
    pub ring: FiniteRing,
    pub sigma: RingAut,
    pub window: i64,
}

impl TwistedLaurentAlgebra {
    pub fn new(ring: &FiniteRing, sigma: RingAut, window: i64) -> Result<Self, GradedError> {
        if sigma.ring() != ring {
            return Err(GradedError::AutomorphismMismatch);
        }
        if window < 1 || window > MAX_TWIST_WINDOW {
            return Err(GradedError::WindowTooWide {
                requested: window,
                max: MAX_TWIST_WINDOW,
            });
        }
        Ok(TwistedLaurentAlgebra {
            ring: ring.clone(),
            sigma,
            window,
        })
    }

    /// `σᵏ`, with negative powers through the inverse automorphism.
    pub fn sigma_pow(&self, k: i64, a: Elem) -> Elem {
        self.sigma.power(k, a)
    }

    pub fn constant(&self, a: Elem) -> LaurentElem {
        self.monomial(a, 0).expect("degree 0 is always in the window")
    }

    pub fn one(&self) -> LaurentElem {
        self.constant(self.ring.one())
    }

    pub fn x(&self) -> LaurentElem {
        self.monomial(self.ring.one(), 1).expect("window is at least 1")
    }

    pub fn monomial(&self, a: Elem, degree: i64) -> Result<LaurentElem, GradedError> {
        if degree.abs() > self.window {
            return Err(GradedError::DegreeOutOfWindow {
                degree,
                window: self.window,
            });
        }
        let mut out = LaurentElem::new();
        if a != self.ring.zero() {
            out.insert(degree, a);
        }
        Ok(out)
    }

    pub fn add(&self, u: &LaurentElem, v: &LaurentElem) -> LaurentElem {
        let mut out = u.clone();
        for (&d, &c) in v {
            let sum = self.ring.add(out.get(&d).copied().unwrap_or(self.ring.zero()), c);
            if sum == self.ring.zero() {
                out.remove(&d);
            } else {
                out.insert(d, sum);
            }
        }
        out
    }

    pub fn neg(&self, u: &LaurentElem) -> LaurentElem {
        u.iter().map(|(&d, &c)| (d, self.ring.neg(c))).collect()
    }

    pub fn sub(&self, u: &LaurentElem, v: &LaurentElem) -> LaurentElem {
        self.add(u, &self.neg(v))
    }

    /// Multiply with the twist: `(a·xᵐ)(b·xⁿ) = a·σᵐ(b)·x^{m+n}`.
    pub fn mul(&self, u: &LaurentElem, v: &LaurentElem) -> Result<LaurentElem, GradedError> {
        let mut out = LaurentElem::new();
        for (&m, &a) in u {
            for (&n, &b) in v {
                let degree = m + n;
                if degree.abs() > self.window {
                    return Err(GradedError::DegreeOutOfWindow {
                        degree,
                        window: self.window,
                    });
                }
                let coeff = self.ring.mul(a, self.sigma_pow(m, b));
                let sum = self
                    .ring
                    .add(out.get(&degree).copied().unwrap_or(self.ring.zero()), coeff);
                if sum == self.ring.zero() {
                    out.remove(&degree);
                } else {
                    out.insert(degree, sum);
                }
            }
        }
        Ok(out)
    }

    /// The degree of a homogeneous element (single monomial), if it is one.
    pub fn homogeneous_degree(&self, u: &LaurentElem) -> Option<i64> {
        match u.len() {
            1 => u.keys().next().copied(),
            _ => None,
        }
    }

    /// Inverse of the monomial `a·xᵈ`, when `a` is a unit:
    /// `σ⁻ᵈ(a⁻¹)·x⁻ᵈ`.
    pub fn invert_monomial(&self, a: Elem, degree: i64) -> Result<LaurentElem, GradedError> {
        let inv = self
            .ring
            .inverse(a)
            .ok_or(GradedError::NotAUnit(a.0))?;
        self.monomial(self.sigma_pow(-degree, inv), -degree)
    }

    /// Render an element for humans, lowest degree first.
    pub fn render(&self, u: &LaurentElem) -> String {
        if u.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = u
            .iter()
            .map(|(&d, &c)| match d {
                0 => format!("a{}", c.0),
                1 => format!("a{}*x", c.0),
                d => format!("a{}*x^{d}", c.0),
            })
            .collect();
        parts.join(" + ")
    }

    /// Certify the twist law `xⁿ·a·x⁻ⁿ = σⁿ(a)` for every coefficient and
    /// every `|n| ≤ window`, by multiplication.
    pub fn twist_law_report(&self) -> Result<TwistLawReport, GradedError> {
        let mut checked = 0;
        for n in -self.window..=self.window {
            let xn = self.monomial(self.ring.one(), n)?;
            let xneg = self.monomial(self.ring.one(), -n)?;
            for a in self.ring.elements() {
                let conjugated = self.mul(&self.mul(&xn, &self.constant(a))?, &xneg)?;
                let expected = self.constant(self.sigma_pow(n, a));
                if conjugated != expected {
                    return Ok(TwistLawReport {
                        window: self.window,
                        holds: false,
                        checked,
                    });
                }
                checked += 1;
            }
        }
        Ok(TwistLawReport {
            window: self.window,
            holds: true,
            checked,
        })
    }

    /// Re-present the algebra with the degree-one unit `u = c·x` as the new
    /// variable: the twist becomes `σ′(a) = c·σ(a)·c⁻¹`, verified by
    /// multiplying `u·a` against `σ′(a)·u`.
    pub fn crossed_product(&self, c: Elem) -> Result<CrossedProduct, GradedError> {
        let c_inv = self
            .ring
            .inverse(c)
            .ok_or(GradedError::NotAUnit(c.0))?;
        let map = self
            .ring
            .elements()
            .map(|a| {
                self.ring
                    .mul(self.ring.mul(c, self.sigma.apply(a)), c_inv)
                    .0
            })
            .collect();
        let sigma_prime = RingAut::new(&self.ring, map)?;
        let u = self.monomial(c, 1)?;
        let mut conjugation_verified = true;
        for a in self.ring.elements() {
            let lhs = self.mul(&u, &self.constant(a))?;
            let rhs = self.mul(&self.constant(sigma_prime.apply(a)), &u)?;
            if lhs != rhs {
                conjugation_verified = false;
            }
        }
        Ok(CrossedProduct {
            sigma_prime,
            conjugation_verified,
        })
    }
}

/// Outcome of the twist-law certification.
pub struct TwistLawReport {
    pub window: i64,
    pub holds: bool,
    pub checked: usize,
}

/// The crossed-product re-presentation by a new degree-one unit.
pub struct CrossedProduct {
    pub sigma_prime: RingAut,
    pub conjugation_verified: bool,
}

/// A homogeneous subset of the algebra, represented intensionally by its
/// degree-zero slice: the subset is `⋃ₙ base·xⁿ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousSubset {
    pub base: BTreeSet<Elem>,
    /// Whether `σ(base) = base`; equivalent to multiplicative closure of
    /// the homogeneous subset upstairs.
    pub sigma_stable: bool,
}

/// Lift a subset of the coefficient ring to the homogeneous subset it
/// determines, recording σ-stability.
pub fn correspond_up(alg: &TwistedLaurentAlgebra, base: &BTreeSet<Elem>) -> HomogeneousSubset {
    let image: BTreeSet<Elem> = base.iter().map(|&a| alg.sigma.apply(a)).collect();
    HomogeneousSubset {
        base: base.clone(),
        sigma_stable: image == *base,
    }
}

/// The degree-zero slice of a homogeneous subset.
pub fn correspond_down(subset: &HomogeneousSubset) -> BTreeSet<Elem> {
    subset.base.clone()
}

/// Search for a pair of monomials from the homogeneous subset whose product
/// leaves it: `(a·xᵐ)(b·xⁿ)` has coefficient `a·σᵐ(b)`, so a violation is a
/// triple with `a·σᵐ(b) ∉ base`. Returns `None` when the subset is closed
/// across the whole window.
pub fn multiplicative_violation(
    alg: &TwistedLaurentAlgebra,
    subset: &HomogeneousSubset,
) -> Option<(Elem, i64, Elem)> {
    for &a in &subset.base {
        for m in -alg.window..=alg.window {
            for &b in &subset.base {
                if !subset.base.contains(&alg.ring.mul(a, alg.sigma_pow(m, b))) {
                    return Some((a, m, b));
                }
            }
        }
    }
    None
}

/// One spectrum point of the coefficient ring, as seen by the graded
/// correspondence.
pub struct CorrespondencePoint {
    pub base: BTreeSet<Elem>,
    pub sigma_stable: bool,
    /// Round trip down∘up is the identity on this point.
    pub round_trip: bool,
    /// Multiplicative closure upstairs agrees with σ-stability.
    pub closure_matches_stability: bool,
}

/// Full correspondence report over the spectrum of the coefficient ring.
pub struct CorrespondenceReport {
    pub points: Vec<CorrespondencePoint>,
    pub stable_count: usize,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.points
            .iter()
            .all(|p| p.round_trip && p.closure_matches_stability)
    }
}

/// Run the graded correspondence over every point of `F(R₀)`: lift, slice
/// back down, and compare multiplicative closure upstairs with σ-stability
/// downstairs.
pub fn graded_correspondence(
    alg: &TwistedLaurentAlgebra,
) -> Result<CorrespondenceReport, GradedError> {
    let spec = full_spectrum(&alg.ring)?;
    let mut points = Vec::with_capacity(spec.len());
    let mut stable_count = 0;
    for p in &spec.points {
        let lifted = correspond_up(alg, &p.members);
        let closed = multiplicative_violation(alg, &lifted).is_none();
        if lifted.sigma_stable {
            stable_count += 1;
        }
        points.push(CorrespondencePoint {
            base: p.members.clone(),
            sigma_stable: lifted.sigma_stable,
            round_trip: correspond_down(&lifted) == p.members,
            closure_matches_stability: closed == lifted.sigma_stable,
        });
    }
    Ok(CorrespondenceReport {
        points,
        stable_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn swap_aut() -> (FiniteRing, RingAut) {
        let ring = FiniteRing::product(&z(2), &z(2)).unwrap();
        // Indices: 2a + b for the pair (a, b); the swap is 1 ↔ 2.
        let sigma = RingAut::new(&ring, vec![0, 2, 1, 3]).unwrap();
        (ring, sigma)
    }

    fn frobenius() -> (FiniteRing, RingAut) {
        let ring = FiniteRing::gf4();
        // Squaring: 0, 1 fixed; ω² = ω+1 and back.
        let sigma = RingAut::new(&ring, vec![0, 1, 3, 2]).unwrap();
        (ring, sigma)
    }

    fn algebras() -> Vec<TwistedLaurentAlgebra> {
        let z6 = z(6);
        let id = RingAut::identity(&z6);
        let (prod, swap) = swap_aut();
        let (gf4, frob) = frobenius();
        vec![
            TwistedLaurentAlgebra::new(&z6, id, 8).unwrap(),
            TwistedLaurentAlgebra::new(&prod, swap, 8).unwrap(),
            TwistedLaurentAlgebra::new(&gf4, frob, 8).unwrap(),
        ]
    }

    #[test]
    fn the_twist_law_holds_across_the_window() {
        for alg in algebras() {
            let report = alg.twist_law_report().unwrap();
            assert!(report.holds, "{}", alg.ring.label());
            assert_eq!(report.checked, (2 * 8 + 1) * alg.ring.order());
        }
    }

    #[test]
    fn moving_x_past_a_coefficient_applies_the_twist() {
        let (gf4, frob) = frobenius();
        let alg = TwistedLaurentAlgebra::new(&gf4, frob, 8).unwrap();
        // x·ω = ω²·x, with ω at index 2 and ω² = ω+1 at index 3.
        let lhs = alg.mul(&alg.x(), &alg.constant(Elem(2))).unwrap();
        let rhs = alg.monomial(Elem(3), 1).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(alg.render(&lhs), "a3*x");
    }

    #[test]
    fn monomial_products_associate() {
        for alg in algebras() {
            let order = alg.ring.order();
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        for (da, db, dc) in [(1i64, -1, 2), (-2, 1, 1), (0, 2, -2)] {
                            let u = alg.monomial(Elem(a), da).unwrap();
                            let v = alg.monomial(Elem(b), db).unwrap();
                            let w = alg.monomial(Elem(c), dc).unwrap();
                            let left = alg.mul(&alg.mul(&u, &v).unwrap(), &w).unwrap();
                            let right = alg.mul(&u, &alg.mul(&v, &w).unwrap()).unwrap();
                            assert_eq!(left, right);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distributivity_and_negation_hold_on_samples() {
        for alg in algebras() {
            let order = alg.ring.order();
            let sample: Vec<LaurentElem> = (0..order)
                .flat_map(|a| {
                    [-1i64, 0, 1]
                        .into_iter()
                        .map(move |d| (a, d))
                })
                .map(|(a, d)| alg.monomial(Elem(a), d).unwrap())
                .collect();
            for u in &sample {
                for v in &sample {
                    for w in &sample {
                        let lhs = alg.mul(u, &alg.add(v, w)).unwrap();
                        let rhs = alg.add(&alg.mul(u, v).unwrap(), &alg.mul(u, w).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
                assert!(alg.sub(u, u).is_empty());
            }
        }
    }

    #[test]
    fn monomial_inverses_cancel_on_both_sides() {
        for alg in algebras() {
            let units = alg.ring.units();
            for &c in &units {
                for d in [-2i64, -1, 0, 1, 2] {
                    let u = alg.monomial(c, d).unwrap();
                    let inv = alg.invert_monomial(c, d).unwrap();
                    assert_eq!(alg.mul(&u, &inv).unwrap(), alg.one());
                    assert_eq!(alg.mul(&inv, &u).unwrap(), alg.one());
                }
            }
        }
    }

    #[test]
    fn window_limits_are_enforced() {
        let z6 = z(6);
        let id = RingAut::identity(&z6);
        assert!(matches!(
            TwistedLaurentAlgebra::new(&z6, id.clone(), 9),
            Err(GradedError::WindowTooWide { requested: 9, max: 8 })
        ));
        let alg = TwistedLaurentAlgebra::new(&z6, id, 8).unwrap();
        assert!(matches!(
            alg.monomial(Elem(1), 9),
            Err(GradedError::DegreeOutOfWindow { degree: 9, .. })
        ));
        let x8 = alg.monomial(Elem(1), 8).unwrap();
        assert!(matches!(
            alg.mul(&x8, &alg.x()),
            Err(GradedError::DegreeOutOfWindow { degree: 9, .. })
        ));
    }

    #[test]
    fn sigma_powers_invert_cleanly() {
        for alg in algebras() {
            for a in alg.ring.elements() {
                assert_eq!(alg.sigma_pow(-1, alg.sigma_pow(1, a)), a);
                assert_eq!(alg.sigma_pow(-3, alg.sigma_pow(3, a)), a);
            }
        }
    }

    #[test]
    fn crossed_product_conjugates_the_automorphism() {
        for alg in algebras() {
            for &c in &alg.ring.units() {
                let crossed = alg.crossed_product(c).unwrap();
                assert!(crossed.conjugation_verified);
                // Commutative coefficients: conjugation changes nothing.
                assert_eq!(crossed.sigma_prime, alg.sigma);
            }
        }
        let z6 = z(6);
        let alg = TwistedLaurentAlgebra::new(&z6, RingAut::identity(&z6), 8).unwrap();
        assert!(matches!(
            alg.crossed_product(Elem(2)),
            Err(GradedError::NotAUnit(2))
        ));
    }

    #[test]
    fn correspondence_round_trips_and_matches_stability() {
        let expectations = [(0usize, 3usize, 3usize), (1, 3, 1), (2, 1, 1)];
        for (idx, alg) in algebras().iter().enumerate() {
            let report = graded_correspondence(alg).unwrap();
            assert!(report.holds(), "{}", alg.ring.label());
            let (_, expected_points, expected_stable) = expectations[idx];
            assert_eq!(report.points.len(), expected_points);
            assert_eq!(report.stable_count, expected_stable);
        }
    }

    #[test]
    fn unstable_points_come_with_a_checked_violation_witness() {
        let (prod, swap) = swap_aut();
        let alg = TwistedLaurentAlgebra::new(&prod, swap, 8).unwrap();
        let report = graded_correspondence(&alg).unwrap();
        let unstable: Vec<_> = report.points.iter().filter(|p| !p.sigma_stable).collect();
        assert_eq!(unstable.len(), 2);
        for p in unstable {
            let subset = correspond_up(&alg, &p.base);
            let (a, m, b) = multiplicative_violation(&alg, &subset).unwrap();
            let product = alg.ring.mul(a, alg.sigma_pow(m, b));
            assert!(!p.base.contains(&product));
            assert!(p.base.contains(&a) && p.base.contains(&b));
        }
    }

    #[test]
    fn identity_twist_keeps_every_point_stable_and_closed() {
        for n in [4usize, 6, 12, 30] {
            let ring = z(n);
            let alg = TwistedLaurentAlgebra::new(&ring, RingAut::identity(&ring), 4).unwrap();
            let report = graded_correspondence(&alg).unwrap();
            assert!(report.holds());
            assert_eq!(report.stable_count, report.points.len());
        }
    }
}
