//! Ideals, radicals, quotients, and the classification predicates built on
//! them.
//!
//! All enumeration here is closure-driven: ideals are grown from generators by
//! saturating under addition and multiplication, and the lattice of ideals is
//! explored breadth-first from `(0)`. Nothing sweeps the power set.
//!
//! The quasi-nilpotence test reduces "every localization of `a` collapses" to
//! "`a` acts non-bijectively on every simple left module": an element that
//! acts bijectively on some nonzero module also acts bijectively on a simple
//! quotient of it, and conversely a simple module is itself a nonzero witness.
//! For finite rings both sides are exhaustively checkable, and the reduction
//! is cross-validated against plain nilpotence on the commutative corpus.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::module::{LeftModule, MElem};
use crate::ring::{Elem, FiniteRing, RingError, RingHom};

#[derive(Debug, Error)]
pub enum IdealError {
    #[error("set is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal is the whole ring; quotient would be the zero ring")]
    ImproperIdeal,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A two-sided ideal of a fixed finite ring, stored as its member set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ideal {
    pub members: BTreeSet<Elem>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<usize> = self.members.iter().map(|e| e.0).collect();
        write!(f, "Ideal{idx:?}")
    }
}

impl Ideal {
    /// Validate a member set as a two-sided ideal.
    pub fn new(ring: &FiniteRing, members: BTreeSet<Elem>) -> Result<Self, IdealError> {
        if !members.contains(&ring.zero()) {
            return Err(IdealError::NotAnIdeal("missing 0".into()));
        }
        for &a in &members {
            for &b in &members {
                if !members.contains(&ring.add(a, b)) {
                    return Err(IdealError::NotAnIdeal(format!(
                        "not closed under addition at ({},{})",
                        a.0, b.0
                    )));
                }
            }
            for r in ring.elements() {
                if !members.contains(&ring.mul(r, a)) || !members.contains(&ring.mul(a, r)) {
                    return Err(IdealError::NotAnIdeal(format!(
                        "not closed under multiplication at {}",
                        a.0
                    )));
                }
            }
        }
        Ok(Ideal { members })
    }

    /// The two-sided ideal generated by a set of elements.
    pub fn generated(ring: &FiniteRing, gens: &BTreeSet<Elem>) -> Self {
        let members = closure(ring, gens, Sided::Two);
        Ideal { members }
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Ideal {
            members: [ring.zero()].into_iter().collect(),
        }
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        Ideal {
            members: ring.elements().collect(),
        }
    }

    pub fn is_proper(&self, ring: &FiniteRing) -> bool {
        self.members.len() < ring.order()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // an ideal always contains 0
    }

    /// Proper primality test (commutative use): `ab ∈ P ⟹ a ∈ P or b ∈ P`.
    pub fn is_prime(&self, ring: &FiniteRing) -> bool {
        if !self.is_proper(ring) {
            return false;
        }
        for a in ring.elements() {
            if self.contains(a) {
                continue;
            }
            for b in ring.elements() {
                if !self.contains(b) && self.contains(ring.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Copy, Clone, PartialEq)]
enum Sided {
    Left,
    Two,
}

/// Saturate a generating set under addition and (left or two-sided)
/// multiplication by ring elements.
fn closure(ring: &FiniteRing, gens: &BTreeSet<Elem>, sided: Sided) -> BTreeSet<Elem> {
    let n = ring.order();
    let mut member = vec![false; n];
    member[ring.zero().0] = true;
    for &g in gens {
        member[g.0] = true;
    }
    loop {
        let mut changed = false;
        let current: Vec<usize> = (0..n).filter(|&i| member[i]).collect();
        for &x in &current {
            for &y in &current {
                let s = ring.add(Elem(x), Elem(y)).0;
                if !member[s] {
                    member[s] = true;
                    changed = true;
                }
            }
            for r in 0..n {
                let l = ring.mul(Elem(r), Elem(x)).0;
                if !member[l] {
                    member[l] = true;
                    changed = true;
                }
                if sided == Sided::Two {
                    let rr = ring.mul(Elem(x), Elem(r)).0;
                    if !member[rr] {
                        member[rr] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..n).filter(|&i| member[i]).map(Elem).collect()
}

/// All two-sided ideals, grown breadth-first from `(0)` and sorted by member
/// bitmask (so `(0)` comes first and the whole ring last).
pub fn ideals(ring: &FiniteRing) -> Vec<Ideal> {
    enumerate(ring, Sided::Two)
        .into_iter()
        .map(|members| Ideal { members })
        .collect()
}

/// All left ideals, as raw member sets.
pub fn left_ideals(ring: &FiniteRing) -> Vec<BTreeSet<Elem>> {
    enumerate(ring, Sided::Left)
}

fn enumerate(ring: &FiniteRing, sided: Sided) -> Vec<BTreeSet<Elem>> {
    let mut found: BTreeSet<BTreeSet<Elem>> = BTreeSet::new();
    let zero_ideal = closure(ring, &BTreeSet::new(), sided);
    let mut queue = vec![zero_ideal.clone()];
    found.insert(zero_ideal);
    while let Some(current) = queue.pop() {
        for a in ring.elements() {
            if current.contains(&a) {
                continue;
            }
            let mut gens = current.clone();
            gens.insert(a);
            let bigger = closure(ring, &gens, sided);
            if found.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let mut out: Vec<BTreeSet<Elem>> = found.into_iter().collect();
    out.sort_by(|a, b| crate::spectrum::bitmask_cmp(a, b));
    out
}

/// Maximal proper left ideals.
pub fn maximal_left_ideals(ring: &FiniteRing) -> Vec<BTreeSet<Elem>> {
    let all = left_ideals(ring);
    let proper: Vec<&BTreeSet<Elem>> =
        all.iter().filter(|i| i.len() < ring.order()).collect();
    proper
        .iter()
        .filter(|&&i| {
            !proper
                .iter()
                .any(|&other| other.len() > i.len() && i.is_subset(other))
        })
        .map(|&i| i.clone())
        .collect()
}

/// The Jacobson radical as the intersection of all maximal left ideals.
pub fn jacobson_radical(ring: &FiniteRing) -> Ideal {
    let maximals = maximal_left_ideals(ring);
    let mut members: BTreeSet<Elem> = ring.elements().collect();
    for m in &maximals {
        members = members.intersection(m).copied().collect();
    }
    Ideal { members }
}

/// The Jacobson radical by its unit characterization: the elements `x` whose
/// generated two-sided ideal satisfies `1 + I ⊆ U(A)`.
pub fn jacobson_radical_by_units(ring: &FiniteRing) -> Ideal {
    let units = ring.units();
    let members: BTreeSet<Elem> = ring
        .elements()
        .filter(|&x| {
            let gen: BTreeSet<Elem> = [x].into_iter().collect();
            Ideal::generated(ring, &gen)
                .members
                .iter()
                .all(|&i| units.contains(&ring.add(ring.one(), i)))
        })
        .collect();
    Ideal { members }
}

/// Quotient ring `A/I` with its projection, for a proper two-sided ideal.
pub fn quotient(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, RingHom), IdealError> {
    Ideal::new(ring, ideal.members.clone())?;
    if !ideal.is_proper(ring) {
        return Err(IdealError::ImproperIdeal);
    }
    let n = ring.order();
    let mut coset_rep = vec![usize::MAX; n];
    for x in 0..n {
        if coset_rep[x] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = ideal
            .members
            .iter()
            .map(|&i| ring.add(Elem(x), i).0)
            .collect();
        members.sort_unstable();
        let rep = members[0];
        for v in members {
            coset_rep[v] = rep;
        }
    }
    let mut reps: Vec<usize> = coset_rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let class_of = |x: usize| reps.binary_search(&coset_rep[x]).unwrap();
    let q = reps.len();
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &x in &reps {
        for &y in &reps {
            add.push(class_of(ring.add(Elem(x), Elem(y)).0));
            mul.push(class_of(ring.mul(Elem(x), Elem(y)).0));
        }
    }
    let names = reps
        .iter()
        .map(|&x| format!("[{}]", ring.name(Elem(x))))
        .collect();
    let quotient_ring = FiniteRing::from_parts(
        q,
        add,
        mul,
        class_of(ring.zero().0),
        class_of(ring.one().0),
        format!("{}/I{}", ring.label(), ideal.len()),
        names,
    )?;
    let map = (0..n).map(class_of).collect();
    let projection = RingHom::new(ring.clone(), quotient_ring.clone(), map)
        .map_err(IdealError::Ring)?;
    Ok((projection.target.clone(), projection))
}

/// The simple left modules `A/m`, one per maximal left ideal, deduplicated by
/// carrier equality only (isomorphic carriers from different ideals are kept).
pub fn simple_left_modules(ring: &FiniteRing) -> Vec<LeftModule> {
    let regular = LeftModule::regular(ring);
    let mut seen: BTreeSet<BTreeSet<MElem>> = BTreeSet::new();
    let mut out = Vec::new();
    for m in maximal_left_ideals(ring) {
        let carrier: BTreeSet<MElem> = m.iter().map(|e| MElem(e.0)).collect();
        if !seen.insert(carrier.clone()) {
            continue;
        }
        let (module, _) =
            LeftModule::quotient(&regular, &carrier).expect("maximal left ideal is a submodule");
        out.push(module);
    }
    out
}

/// Is every localization at `a` trivial? Equivalently (for finite rings):
/// does `a` act non-bijectively on every simple left module?
pub fn is_quasi_nilpotent(ring: &FiniteRing, a: Elem) -> bool {
    simple_left_modules(ring)
        .iter()
        .all(|m| !m.acts_bijectively(a))
}

/// Plain nilpotence, used as the commutative cross-check oracle.
pub fn is_nilpotent(ring: &FiniteRing, a: Elem) -> bool {
    let mut power = a;
    for _ in 0..ring.order() {
        if power == ring.zero() {
            return true;
        }
        power = ring.mul(power, a);
    }
    false
}

/// A ring localizes onto itself exactly when every element is a unit or
/// quasi-nilpotent.
pub fn is_self_localized(ring: &FiniteRing) -> bool {
    ring.elements()
        .all(|a| ring.is_unit(a) || is_quasi_nilpotent(ring, a))
}

/// Von Neumann regularity: every `a` has a quasi-inverse `x` with `axa = a`.
pub fn is_von_neumann_regular(ring: &FiniteRing) -> bool {
    ring.elements().all(|a| {
        ring.elements()
            .any(|x| ring.mul(ring.mul(a, x), a) == a)
    })
}

/// Only two two-sided ideals.
pub fn is_simple(ring: &FiniteRing) -> bool {
    ideals(ring).len() == 2
}

/// A ring is its own ring of quotients when every regular element (neither a
/// left nor a right zero divisor) is already a unit. For finite rings this is
/// automatic: a regular element acts bijectively by multiplication.
pub fn is_ring_of_quotients(ring: &FiniteRing) -> bool {
    ring.elements().all(|a| {
        let regular = ring.elements().all(|x| {
            (ring.mul(a, x) != ring.zero() || x == ring.zero())
                && (ring.mul(x, a) != ring.zero() || x == ring.zero())
        });
        !regular || ring.is_unit(a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    #[test]
    fn z6_has_exactly_four_ideals() {
        let z6 = z(6);
        let all = ideals(&z6);
        let sets: Vec<Vec<usize>> = all
            .iter()
            .map(|i| i.members.iter().map(|e| e.0).collect())
            .collect();
        // (0), (3), (2), (1) in bitmask order.
        assert_eq!(
            sets,
            vec![
                vec![0],
                vec![0, 3],
                vec![0, 2, 4],
                vec![0, 1, 2, 3, 4, 5]
            ]
        );
    }

    #[test]
    fn matrix_ring_over_gf2_is_simple() {
        let m = FiniteRing::matrix(&z(2), 2).unwrap();
        assert!(is_simple(&m));
        assert_eq!(ideals(&m).len(), 2);
    }

    #[test]
    fn jacobson_radical_of_z4_is_0_2_and_agrees_with_unit_characterization() {
        let z4 = z(4);
        let j = jacobson_radical(&z4);
        let got: Vec<usize> = j.members.iter().map(|e| e.0).collect();
        assert_eq!(got, vec![0, 2]);
        assert_eq!(j, jacobson_radical_by_units(&z4));
    }

    #[test]
    fn jacobson_radical_of_matrix_ring_is_zero() {
        let m = FiniteRing::matrix(&z(2), 2).unwrap();
        let j = jacobson_radical(&m);
        assert_eq!(j.len(), 1);
        assert_eq!(j, jacobson_radical_by_units(&m));
    }

    #[test]
    fn jacobson_radical_of_triangular_ring_is_the_strict_upper_part() {
        let t = FiniteRing::upper_triangular(&z(2), 2).unwrap();
        let j = jacobson_radical(&t);
        // Entries (e00, e01, e11) encode as e00 + 2*e01 + 4*e11; the strictly
        // upper triangular matrices are indices 0 and 2.
        let got: Vec<usize> = j.members.iter().map(|e| e.0).collect();
        assert_eq!(got, vec![0, 2]);
        assert_eq!(j, jacobson_radical_by_units(&t));
    }

    #[test]
    fn radical_characterizations_agree_on_mixed_rings() {
        for ring in [
            z(8),
            z(12),
            FiniteRing::gf4(),
            FiniteRing::upper_triangular(&z(3), 2).unwrap(),
            FiniteRing::product(&z(4), &z(2)).unwrap(),
        ] {
            assert_eq!(
                jacobson_radical(&ring),
                jacobson_radical_by_units(&ring),
                "disagreement on {}",
                ring.label()
            );
        }
    }

    #[test]
    fn quotient_z6_by_3_is_z3() {
        let z6 = z(6);
        let i = Ideal::generated(&z6, &[Elem(3)].into_iter().collect());
        let (q, pi) = quotient(&z6, &i).unwrap();
        assert_eq!(q.order(), 3);
        // Explicit isomorphism with Z/3.
        let z3 = z(3);
        let iso = RingHom::new(q, z3, vec![0, 1, 2]).unwrap();
        assert!(iso.is_bijective());
        assert_eq!(pi.kernel().len(), 2);
    }

    #[test]
    fn quotient_by_whole_ring_is_rejected() {
        let z6 = z(6);
        let whole = Ideal::whole(&z6);
        assert!(matches!(
            quotient(&z6, &whole),
            Err(IdealError::ImproperIdeal)
        ));
    }

    #[test]
    fn simple_modules_of_z6_have_sizes_2_and_3() {
        let mods = simple_left_modules(&z(6));
        let mut sizes: Vec<usize> = mods.iter().map(|m| m.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn simple_modules_of_matrix_ring_have_size_4() {
        let m = FiniteRing::matrix(&z(2), 2).unwrap();
        let mods = simple_left_modules(&m);
        assert!(!mods.is_empty());
        assert!(mods.iter().all(|s| s.size() == 4));
    }

    #[test]
    fn diag_1_0_is_quasi_nilpotent_but_not_nilpotent() {
        let z2 = z(2);
        let m = FiniteRing::matrix(&z2, 2).unwrap();
        let e = FiniteRing::matrix_elem(&z2, 2, &[1, 0, 0, 0]);
        assert!(is_quasi_nilpotent(&m, e));
        assert!(!is_nilpotent(&m, e)); // it is a nonzero idempotent
    }

    #[test]
    fn quasi_nilpotence_matches_nilpotence_on_commutative_rings() {
        for ring in [z(4), z(6), z(8), z(9), z(12), FiniteRing::gf4()] {
            for a in ring.elements() {
                assert_eq!(
                    is_quasi_nilpotent(&ring, a),
                    is_nilpotent(&ring, a),
                    "mismatch at {} in {}",
                    a.0,
                    ring.label()
                );
            }
        }
    }

    #[test]
    fn two_in_z6_is_not_quasi_nilpotent() {
        // It acts bijectively on the size-3 simple module.
        assert!(!is_quasi_nilpotent(&z(6), Elem(2)));
        assert!(is_quasi_nilpotent(&z(6), Elem(0)));
    }

    #[test]
    fn self_localized_classification() {
        assert!(is_self_localized(&z(4)));
        assert!(is_self_localized(&FiniteRing::matrix(&z(2), 2).unwrap()));
        assert!(!is_self_localized(&z(6)));
        assert!(!is_self_localized(
            &FiniteRing::upper_triangular(&z(2), 2).unwrap()
        ));
    }

    #[test]
    fn von_neumann_regular_classification() {
        assert!(is_von_neumann_regular(&FiniteRing::matrix(&z(2), 2).unwrap()));
        assert!(is_von_neumann_regular(&z(6))); // product of fields
        assert!(!is_von_neumann_regular(&z(4)));
    }

    #[test]
    fn self_localized_iff_simple_for_von_neumann_regular_rings() {
        let rings = [
            z(2),
            z(3),
            z(6),
            FiniteRing::gf4(),
            FiniteRing::matrix(&z(2), 2).unwrap(),
            FiniteRing::product(&z(2), &z(2)).unwrap(),
        ];
        for ring in rings {
            if is_von_neumann_regular(&ring) {
                assert_eq!(
                    is_self_localized(&ring),
                    is_simple(&ring),
                    "equivalence fails on {}",
                    ring.label()
                );
            }
        }
    }

    #[test]
    fn self_localized_rings_have_simple_semisimplification() {
        for ring in [
            z(4),
            z(8),
            z(9),
            FiniteRing::matrix(&z(2), 2).unwrap(),
            FiniteRing::gf4(),
        ] {
            if !is_self_localized(&ring) {
                continue;
            }
            let j = jacobson_radical(&ring);
            if j.is_proper(&ring) && j.len() > 1 {
                let (q, _) = quotient(&ring, &j).unwrap();
                assert!(is_simple(&q), "A/J not simple for {}", ring.label());
            } else if j.len() == 1 {
                assert!(is_simple(&ring) || ring.is_local_ring());
            }
        }
    }

    #[test]
    fn every_corpus_style_ring_is_a_ring_of_quotients() {
        for ring in [
            z(4),
            z(6),
            z(12),
            FiniteRing::matrix(&z(2), 2).unwrap(),
            FiniteRing::upper_triangular(&z(2), 2).unwrap(),
        ] {
            assert!(is_ring_of_quotients(&ring), "{} fails", ring.label());
        }
    }

    #[test]
    fn one_plus_radical_consists_of_units() {
        for ring in [z(4), z(8), z(12), FiniteRing::upper_triangular(&z(3), 2).unwrap()] {
            let j = jacobson_radical(&ring);
            let units = ring.units();
            for &x in &j.members {
                assert!(units.contains(&ring.add(ring.one(), x)));
            }
        }
    }
}
