//! The full spectrum of a finite ring: every subset that some homomorphism
//! to a nonzero ring carries into the units, topologized by specialization.
//!
//! Points are enumerated by three independent routes and cross-checked:
//!
//! * closure-driven search (commutative): grow the unit group by adjoining
//!   one element at a time and saturating, discarding anything whose
//!   saturation reaches 0;
//! * prime complements (commutative): intersect complements of nonempty
//!   families of prime ideals;
//! * quotient witnesses (any ring): take preimages of the unit groups of all
//!   proper quotients `A/I`.
//!
//! The third route is complete for finite rings: given any witnessing map
//! `φ: A → B`, its image is a finite subring of `B` in which every element
//! invertible in `B` is already invertible (powers of a unit cycle), so `φ`
//! can be replaced by the quotient `A → A/ker φ` without changing the
//! preimage of units. Every point therefore carries a concrete certificate
//! `(I, π)` with `S = π⁻¹(U(A/I))`.
//!
//! The topology is the Alexandrov topology of the containment order: open
//! sets are up-closed families of points, the fundamental open `D(a)` is the
//! principal up-set of the saturation of `a`, and the closure of a point is
//! its down-set. The unit group is the unique minimum — the center — so the
//! whole space is the only open neighborhood of the center and every open
//! cover of the space is forced to contain the space itself.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::ideals::{self, Ideal, IdealError};
use crate::localization::{self, localize, Localization, LocalizationError};
use crate::ring::{Elem, FiniteRing, RingError, RingHom};

/// Default cap on the point count for whole-lattice open-set enumeration.
pub const DEFAULT_OPEN_BOUND: usize = 20;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("not a point of this spectrum")]
    UnknownPoint,
    #[error("invalid fraction chain: {0}")]
    InvalidChain(String),
    #[error("open-set enumeration needs {points} points but the bound is {bound}")]
    TooManyPoints { points: usize, bound: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
}

/// Order finite element sets by their characteristic bitmask read from index
/// 0 upward: smaller sets first, ties by lexicographic membership. Used
/// everywhere a list of subsets must have one canonical order.
pub fn bitmask_cmp(a: &BTreeSet<Elem>, b: &BTreeSet<Elem>) -> Ordering {
    match a.len().cmp(&b.len()) {
        Ordering::Equal => a.iter().cmp(b.iter()),
        other => other,
    }
}

/// A point of the full spectrum: a subset carried into the units by some
/// homomorphism, together with the quotient certificate.
#[derive(Clone)]
pub struct SpectrumPoint {
    /// The fully invertible subset itself.
    pub members: BTreeSet<Elem>,
    /// Kernel of the witnessing quotient map.
    pub witness_ideal: BTreeSet<Elem>,
    /// Projection `π: A → A/I` with `members = π⁻¹(U(A/I))`.
    pub witness: RingHom,
}

/// The full spectrum: all points in canonical order with the containment
/// (specialization) relation.
#[derive(Clone)]
pub struct FullSpectrum {
    pub ring: FiniteRing,
    /// Sorted by `bitmask_cmp` on members; the center (unit group) is always
    /// index 0, being the unique smallest point.
    pub points: Vec<SpectrumPoint>,
    /// Whether the commutative engine (localization, sheaves) applies.
    pub commutative: bool,
}

/// Enumerate points by closure-driven search (commutative rings): saturate
/// the unit group, then repeatedly adjoin single elements and saturate,
/// keeping every result that avoids 0.
pub fn enumerate_by_closure(ring: &FiniteRing) -> Result<BTreeSet<BTreeSet<Elem>>, SpectrumError> {
    ring.require_commutative()?;
    let mut found: BTreeSet<BTreeSet<Elem>> = BTreeSet::new();
    let center = localization::saturation(ring, &BTreeSet::new());
    let mut queue = vec![center.clone()];
    found.insert(center);
    while let Some(current) = queue.pop() {
        for a in ring.elements() {
            if current.contains(&a) {
                continue;
            }
            let mut seed = current.clone();
            seed.insert(a);
            let bigger = localization::saturation(ring, &seed);
            if bigger.contains(&ring.zero()) {
                continue;
            }
            if found.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    Ok(found)
}

/// Enumerate points as intersections of prime complements over nonempty
/// families of primes (commutative rings).
pub fn enumerate_by_primes(ring: &FiniteRing) -> Result<BTreeSet<BTreeSet<Elem>>, SpectrumError> {
    ring.require_commutative()?;
    let primes = localization::prime_ideals(ring);
    let complements: Vec<BTreeSet<Elem>> = primes
        .iter()
        .map(|p| ring.elements().filter(|a| !p.contains(*a)).collect())
        .collect();
    let mut found = BTreeSet::new();
    for mask in 1u64..1 << complements.len() {
        let mut set: BTreeSet<Elem> = ring.elements().collect();
        for (i, complement) in complements.iter().enumerate() {
            if mask >> i & 1 == 1 {
                set = set.intersection(complement).copied().collect();
            }
        }
        found.insert(set);
    }
    Ok(found)
}

/// Enumerate points as unit preimages along all proper quotients. Complete
/// for finite rings (see the module docs); works without commutativity.
/// Each distinct point keeps the witness with the smallest kernel.
pub fn enumerate_by_quotients(ring: &FiniteRing) -> Result<Vec<SpectrumPoint>, SpectrumError> {
    let mut points: Vec<SpectrumPoint> = Vec::new();
    for ideal in ideals::ideals(ring) {
        if !ideal.is_proper(ring) {
            continue;
        }
        let (quot, pi) = ideals::quotient(ring, &ideal)?;
        let members = pi.preimage(&quot.units());
        if !points.iter().any(|p| p.members == members) {
            points.push(SpectrumPoint {
                members,
                witness_ideal: ideal.members.clone(),
                witness: pi,
            });
        }
    }
    points.sort_by(|a, b| bitmask_cmp(&a.members, &b.members));
    Ok(points)
}

/// Find a quotient certificate for a candidate subset, if it is a point.
pub fn fully_invertible_witness(
    ring: &FiniteRing,
    set: &BTreeSet<Elem>,
) -> Result<Option<(BTreeSet<Elem>, RingHom)>, SpectrumError> {
    for ideal in ideals::ideals(ring) {
        if !ideal.is_proper(ring) {
            continue;
        }
        let (quot, pi) = ideals::quotient(ring, &ideal)?;
        if &pi.preimage(&quot.units()) == set {
            return Ok(Some((ideal.members.clone(), pi)));
        }
    }
    Ok(None)
}

/// Build the full spectrum. Commutative rings go through the closure-driven
/// route with localization-kernel witnesses; the rest through quotient
/// enumeration. For noncommutative rings the points are the subset spectrum
/// (fully invertible subsets, not systems) and the downstream sheaf
/// machinery is unavailable.
pub fn full_spectrum(ring: &FiniteRing) -> Result<FullSpectrum, SpectrumError> {
    let commutative = ring.is_commutative();
    let points = if commutative {
        let mut sets: Vec<BTreeSet<Elem>> = enumerate_by_closure(ring)?.into_iter().collect();
        sets.sort_by(bitmask_cmp);
        let mut points = Vec::with_capacity(sets.len());
        for members in sets {
            let loc = localize(ring, &members)?;
            let kernel = Ideal::new(ring, loc.kernel())?;
            let (quot, pi) = ideals::quotient(ring, &kernel)?;
            debug_assert_eq!(pi.preimage(&quot.units()), members);
            points.push(SpectrumPoint {
                members,
                witness_ideal: kernel.members,
                witness: pi,
            });
        }
        points
    } else {
        enumerate_by_quotients(ring)?
    };
    Ok(FullSpectrum {
        ring: ring.clone(),
        points,
        commutative,
    })
}

impl FullSpectrum {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the unit group is always a point
    }

    /// The center: the unit group, the unique minimal point and the unique
    /// closed point.
    pub fn center(&self) -> &SpectrumPoint {
        &self.points[0]
    }

    pub fn point_index(&self, set: &BTreeSet<Elem>) -> Option<usize> {
        self.points.iter().position(|p| &p.members == set)
    }

    /// Specialization: `i ≤ j` when point `i`'s set is contained in `j`'s.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.points[i].members.is_subset(&self.points[j].members)
    }

    /// Principal open neighborhood of a point (its up-set).
    pub fn up_set(&self, i: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    /// Topological closure of a point: its down-set.
    pub fn closure_of_point(&self, i: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    /// Closure of an arbitrary point set: union of point closures.
    pub fn closure_of_set(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().flat_map(|&i| self.closure_of_point(i)).collect()
    }

    /// The fundamental open `D(a)`: all points containing `a`.
    pub fn fundamental_open(&self, a: Elem) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&i| self.points[i].members.contains(&a))
            .collect()
    }

    /// Is a point set open (up-closed)?
    pub fn is_open(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&i| self.up_set(i).iter().all(|j| set.contains(j)))
    }

    /// All open sets, in canonical order, provided the point count is within
    /// the bound. The subspace center flag of each open — whether it has a
    /// least point — is returned alongside.
    pub fn open_sets(&self, bound: usize) -> Result<Vec<(BTreeSet<usize>, bool)>, SpectrumError> {
        if self.len() > bound {
            return Err(SpectrumError::TooManyPoints {
                points: self.len(),
                bound,
            });
        }
        // Decide membership superset-first so that including a point can
        // require its whole up-set to be present already.
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&i, &j| bitmask_cmp(&self.points[j].members, &self.points[i].members));
        let mut opens = Vec::new();
        let mut current = BTreeSet::new();
        self.collect_opens(&order, 0, &mut current, &mut opens);
        opens.sort_by(|a, b| match a.len().cmp(&b.len()) {
            Ordering::Equal => a.iter().cmp(b.iter()),
            other => other,
        });
        Ok(opens
            .into_iter()
            .map(|open| {
                let has_center = self.subspace_center(&open).is_some();
                (open, has_center)
            })
            .collect())
    }

    fn collect_opens(
        &self,
        order: &[usize],
        idx: usize,
        current: &mut BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if idx == order.len() {
            out.push(current.clone());
            return;
        }
        let p = order[idx];
        self.collect_opens(order, idx + 1, current, out);
        if self.up_set(p).iter().all(|&q| q == p || current.contains(&q)) {
            current.insert(p);
            self.collect_opens(order, idx + 1, current, out);
            current.remove(&p);
        }
    }

    /// The center of a subspace: its least point, if any. A nonempty open
    /// subspace is an affine piece exactly when this exists.
    pub fn subspace_center(&self, set: &BTreeSet<usize>) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&i| set.iter().all(|&j| self.leq(i, j)))
    }
}

/// A fraction chain: `entries[0]` lives in the base ring and each later
/// entry lives in the localization of the previous stage at the saturation
/// of the entry before it. The tower of intermediate localizations is built
/// eagerly; a stage that collapses to the zero ring invalidates the chain
/// (there would be no home for the next entry).
#[derive(Clone)]
pub struct Fraction {
    pub base: FiniteRing,
    pub entries: Vec<Elem>,
    pub tower: Vec<Localization>,
}

impl Fraction {
    pub fn new(base: &FiniteRing, entries: &[usize]) -> Result<Self, SpectrumError> {
        if entries.is_empty() {
            return Err(SpectrumError::InvalidChain("empty chain".into()));
        }
        if entries.len() > 1 {
            base.require_commutative()?;
        }
        let mut tower: Vec<Localization> = Vec::new();
        let mut elems: Vec<Elem> = Vec::new();
        for (k, &idx) in entries.iter().enumerate() {
            let home = match tower.last() {
                None => base,
                Some(loc) => &loc.fractions,
            };
            home.check_elem(Elem(idx))?;
            elems.push(Elem(idx));
            if k + 1 < entries.len() {
                let seed = [Elem(idx)].into_iter().collect();
                let loc = localize(home, &seed).map_err(|e| {
                    SpectrumError::InvalidChain(format!("stage {k} has no nonzero localization: {e}"))
                })?;
                tower.push(loc);
            }
        }
        Ok(Fraction {
            base: base.clone(),
            entries: elems,
            tower,
        })
    }

    /// Is every entry invertible in the iterated localization at this point?
    /// Computed by chasing the entries through the induced maps into `A_S`.
    pub fn invertible_at(&self, spec: &FullSpectrum, point: usize) -> Result<bool, SpectrumError> {
        let members = &spec.points[point].members;
        if self.entries.len() == 1 {
            // Membership is exactly invertibility in the localized ring, and
            // needs no commutativity.
            return Ok(members.contains(&self.entries[0]));
        }
        let loc_s = localize(&spec.ring, members)?;
        let mut into_stalk = loc_s.to_fractions.clone();
        for (k, &entry) in self.entries.iter().enumerate() {
            if !loc_s.fractions.is_unit(into_stalk.apply(entry)) {
                return Ok(false);
            }
            if k + 1 < self.entries.len() {
                into_stalk = self.tower[k].induced_hom(&into_stalk)?;
            }
        }
        Ok(true)
    }

    /// The fundamental open `D(a₁,…,aₙ)` of the chain.
    pub fn fundamental_open(&self, spec: &FullSpectrum) -> Result<BTreeSet<usize>, SpectrumError> {
        let mut out = BTreeSet::new();
        for i in 0..spec.len() {
            if self.invertible_at(spec, i)? {
                out.insert(i);
            }
        }
        Ok(out)
    }
}

/// A closed locus `Z(I)` together with its topological closure, which the
/// ideal also characterizes: `Z(I)` collects the points whose localization
/// absorbs `I` into the radical, and its closure the points where `I`
/// generates a proper ideal.
#[derive(Clone)]
pub struct ClosedLocus {
    pub ideal: Ideal,
    pub points: BTreeSet<usize>,
    pub closure: BTreeSet<usize>,
}

/// Compute `Z(I)` and its closure on a commutative spectrum.
pub fn z_locus(spec: &FullSpectrum, ideal: &Ideal) -> Result<ClosedLocus, SpectrumError> {
    spec.ring.require_commutative()?;
    let mut points = BTreeSet::new();
    let mut closure = BTreeSet::new();
    for (i, point) in spec.points.iter().enumerate() {
        let loc = localize(&spec.ring, &point.members)?;
        let image: BTreeSet<Elem> = ideal
            .members
            .iter()
            .map(|&x| loc.to_fractions.apply(x))
            .collect();
        let generated = Ideal::generated(&loc.fractions, &image);
        if generated.is_proper(&loc.fractions) {
            closure.insert(i);
        }
        let radical = ideals::jacobson_radical(&loc.fractions);
        if generated.members.is_subset(&radical.members) {
            points.insert(i);
        }
    }
    Ok(ClosedLocus {
        ideal: ideal.clone(),
        points,
        closure,
    })
}

/// The comparison between the spectrum of a quotient and the closed locus of
/// its kernel: point bijection, order isomorphism, and stalk isomorphisms.
pub struct SubschemeComparison {
    pub locus: ClosedLocus,
    /// Point index in F(A/I) ↦ point index in F(A).
    pub point_map: Vec<usize>,
    pub bijective: bool,
    pub order_isomorphic: bool,
    pub stalks_isomorphic: bool,
}

impl SubschemeComparison {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_isomorphic && self.stalks_isomorphic
    }
}

/// Certify that `F(A/I)` maps onto `Z(I)` homeomorphically with isomorphic
/// stalks (commutative engine).
pub fn closed_subscheme_compare(
    ring: &FiniteRing,
    ideal: &Ideal,
) -> Result<SubschemeComparison, SpectrumError> {
    ring.require_commutative()?;
    let spec = full_spectrum(ring)?;
    let locus = z_locus(&spec, ideal)?;
    let (quot, pi) = ideals::quotient(ring, ideal)?;
    let quot_spec = full_spectrum(&quot)?;

    let mut point_map = Vec::with_capacity(quot_spec.len());
    let mut image = BTreeSet::new();
    for qp in &quot_spec.points {
        let preimage = pi.preimage(&qp.members);
        let idx = spec
            .point_index(&preimage)
            .ok_or(SpectrumError::UnknownPoint)?;
        point_map.push(idx);
        image.insert(idx);
    }
    let bijective = image.len() == quot_spec.len() && image == locus.points;

    let mut order_isomorphic = true;
    for i in 0..quot_spec.len() {
        for j in 0..quot_spec.len() {
            if quot_spec.leq(i, j) != spec.leq(point_map[i], point_map[j]) {
                order_isomorphic = false;
            }
        }
    }

    let mut stalks_isomorphic = true;
    for (qi, qp) in quot_spec.points.iter().enumerate() {
        let si = point_map[qi];
        let loc_s = localize(ring, &spec.points[si].members)?;
        let loc_q = localize(&quot, &qp.members)?;
        // A_S / (I·A_S)  ≅  (A/I)_{S'} via the map both squares force.
        let through_quot = RingHom::compose(&pi, &loc_q.to_fractions)?;
        let alpha = loc_s.induced_hom(&through_quot)?;
        let image: BTreeSet<Elem> = ideal
            .members
            .iter()
            .map(|&x| loc_s.to_fractions.apply(x))
            .collect();
        let generated = Ideal::generated(&loc_s.fractions, &image);
        let (stalk_quot, proj) = ideals::quotient(&loc_s.fractions, &generated)?;
        let mut map = vec![usize::MAX; stalk_quot.order()];
        let mut consistent = true;
        for x in loc_s.fractions.elements() {
            let q = proj.apply(x).0;
            let v = alpha.apply(x).0;
            if map[q] != usize::MAX && map[q] != v {
                consistent = false;
            }
            map[q] = v;
        }
        let iso = consistent
            .then(|| RingHom::new(stalk_quot, loc_q.fractions.clone(), map).ok())
            .flatten();
        if !iso.is_some_and(|h| h.is_bijective()) {
            stalks_isomorphic = false;
        }
    }

    Ok(SubschemeComparison {
        locus,
        point_map,
        bijective,
        order_isomorphic,
        stalks_isomorphic,
    })
}
