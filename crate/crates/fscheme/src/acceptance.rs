//! The executable acceptance suite: ten named end-to-end checks over the
//! canonical corpus, each certifying one headline property of the library.
//!
//! Every criterion is a pure function returning a [`CriterionReport`] with
//! a pass flag and a human-readable detail line; failures carry the reason
//! instead of panicking, so the suite doubles as the payload of the
//! `corpus run` subcommand and of the integration test that prints one
//! verdict per line. The expected values baked in here were produced by
//! the independent oracles in the unit tests (brute-force subset sweeps,
//! quotient counting, exhaustive hom search) and are frozen as exact
//! numbers.

use std::collections::BTreeSet;
use std::error::Error;

use crate::corpus::{commutative_corpus, corpus_ring, standard_corpus};
use crate::graded::{graded_correspondence, TwistedLaurentAlgebra};
use crate::ideals::{
    ideals, is_nilpotent, is_quasi_nilpotent, is_self_localized, is_simple,
    is_von_neumann_regular, jacobson_radical, quotient,
};
use crate::localization::saturation;
use crate::morphism::hom_search;
use crate::rewrite::{reduce, Budget, Halt, LocalizationPresentation};
use crate::ring::{Elem, FiniteRing, RingAut};
use crate::sheaf::{
    classify_affinity, compare_l_with_spec, glue_double, structure_sheaf,
    verify_sheaf_condition, Affinity, FSpace,
};
use crate::spectrum::{
    closed_subscheme_compare, enumerate_by_closure, enumerate_by_primes, enumerate_by_quotients,
    full_spectrum,
};

/// Verdict for one acceptance criterion.
pub struct CriterionReport {
    pub number: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, Box<dyn Error>>;

fn fail(msg: String) -> Outcome {
    Err(msg.into())
}

fn finish(number: usize, name: &'static str, outcome: Outcome) -> CriterionReport {
    match outcome {
        Ok(detail) => CriterionReport {
            number,
            name,
            passed: true,
            detail,
        },
        Err(e) => CriterionReport {
            number,
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn set_of(indices: &[usize]) -> BTreeSet<Elem> {
    indices.iter().map(|&i| Elem(i)).collect()
}

/// 1. The full spectrum of ℤ/6: three explicit points forming a "V" with
/// the unit group at the bottom.
pub fn z6_spectrum() -> CriterionReport {
    finish(1, "z6-spectrum", (|| -> Outcome {
        let ring = FiniteRing::zmod(6)?;
        let spec = full_spectrum(&ring)?;
        let expected = [set_of(&[1, 5]), set_of(&[1, 3, 5]), set_of(&[1, 2, 4, 5])];
        if spec.len() != 3 {
            return fail(format!("expected 3 points, found {}", spec.len()));
        }
        for want in &expected {
            if spec.point_index(want).is_none() {
                return fail(format!("missing point {want:?}"));
            }
        }
        if spec.center().members != expected[0] {
            return fail(format!("center is {:?}", spec.center().members));
        }
        let c = spec.point_index(&expected[0]).unwrap();
        let p = spec.point_index(&expected[1]).unwrap();
        let q = spec.point_index(&expected[2]).unwrap();
        let v_shape = spec.leq(c, p)
            && spec.leq(c, q)
            && !spec.leq(p, q)
            && !spec.leq(q, p)
            && spec.closure_of_point(p) == BTreeSet::from([c, p]);
        if !v_shape {
            return fail("specialization order is not the expected V".into());
        }
        Ok("3 points over ℤ/6; center {1,5}; V-shaped specialization order".into())
    })())
}

/// 2. Three independent enumerations of fully invertible subsets agree on
/// every commutative corpus ring.
pub fn triple_agreement() -> CriterionReport {
    finish(2, "triple-agreement", (|| -> Outcome {
        let mut checked = 0;
        for entry in commutative_corpus() {
            let by_closure = enumerate_by_closure(&entry.ring)?;
            let by_primes = enumerate_by_primes(&entry.ring)?;
            let by_quotients: BTreeSet<BTreeSet<Elem>> = enumerate_by_quotients(&entry.ring)?
                .into_iter()
                .map(|p| p.members)
                .collect();
            if by_closure != by_primes || by_closure != by_quotients {
                return fail(format!("enumeration routes disagree on {}", entry.key));
            }
            checked += 1;
        }
        Ok(format!("3 enumeration routes agree on {checked} commutative rings"))
    })())
}

/// 3. Sheaf axioms, global sections, and stalks on every commutative
/// corpus spectrum.
pub fn sheaf_axioms() -> CriterionReport {
    finish(3, "sheaf-axioms", (|| -> Outcome {
        let mut checked = 0;
        for entry in commutative_corpus() {
            let spec = full_spectrum(&entry.ring)?;
            if spec.len() > 20 {
                continue;
            }
            let sheaf = structure_sheaf(&spec)?;
            let verdict = verify_sheaf_condition(&sheaf.opens, &sheaf);
            if !verdict.holds {
                return fail(format!(
                    "sheaf condition fails on {}: {}",
                    entry.key,
                    verdict.counterexample.unwrap_or_default()
                ));
            }
            if !sheaf.global_iso()?.is_bijective() {
                return fail(format!("Γ(F(A),O) ≇ A for {}", entry.key));
            }
            for i in 0..spec.len() {
                if !sheaf.stalk_iso(i)?.is_bijective() {
                    return fail(format!("stalk {i} of {} is not the localization", entry.key));
                }
            }
            checked += 1;
        }
        Ok(format!(
            "gluing, Γ≅A, and stalk≅localization verified on {checked} spectra"
        ))
    })())
}

/// 4. The local-stalk subspace recovers the prime spectrum; ℤ/30 has
/// exactly 3 local points among 7.
pub fn l_comparison() -> CriterionReport {
    finish(4, "l-comparison", (|| -> Outcome {
        let mut checked = 0;
        for entry in commutative_corpus() {
            let cmp = compare_l_with_spec(&entry.ring)?;
            if !cmp.holds() {
                return fail(format!("L(F(A)) does not match Spec on {}", entry.key));
            }
            if entry.key == "zmod30" {
                let total = full_spectrum(&entry.ring)?.len();
                if cmp.local_count != 3 || total != 7 {
                    return fail(format!(
                        "ℤ/30 expected 3 local of 7 points, found {} of {total}",
                        cmp.local_count
                    ));
                }
            }
            checked += 1;
        }
        Ok(format!(
            "L(F(A)) ≅ Spec(A) on {checked} rings; ℤ/30 has 3 local points of 7"
        ))
    })())
}

/// 5. Noncommutative classification of M₂(F₂) and T₂(ℤ/2).
pub fn noncommutative_classification() -> CriterionReport {
    finish(5, "noncommutative-classification", (|| -> Outcome {
        let m2 = corpus_ring("m2f2").ok_or("corpus is missing m2f2")?;
        if !is_simple(&m2) || !is_von_neumann_regular(&m2) || !is_self_localized(&m2) {
            return fail("M₂(F₂) should be simple, regular, and self-localized".into());
        }
        if full_spectrum(&m2)?.len() != 1 {
            return fail("M₂(F₂) should have a one-point full spectrum".into());
        }
        let z2 = FiniteRing::zmod(2)?;
        let e11 = FiniteRing::matrix_elem(&z2, 2, &[1, 0, 0, 0]);
        if !is_quasi_nilpotent(&m2, e11) || is_nilpotent(&m2, e11) {
            return fail("diag(1,0) should be quasi-nilpotent but not nilpotent".into());
        }
        let t2 = corpus_ring("t2z2").ok_or("corpus is missing t2z2")?;
        if is_self_localized(&t2) || jacobson_radical(&t2).len() <= 1 {
            return fail("T₂(ℤ/2) should have J ≠ 0 and not be self-localized".into());
        }
        Ok("M₂(F₂) simple/regular/self-localized, 1 point, quasi-nilpotent diag(1,0); T₂(ℤ/2) has J ≠ 0".into())
    })())
}

/// 6. Radical laws: quotient maps are local exactly into the radical,
/// local homs respect radicals, and the self-localized/simple equivalences.
pub fn radical_laws() -> CriterionReport {
    finish(6, "radical-laws", (|| -> Outcome {
        let mut quotients_checked = 0;
        for entry in standard_corpus() {
            let radical = jacobson_radical(&entry.ring);
            for ideal in ideals(&entry.ring) {
                if !ideal.is_proper(&entry.ring) {
                    continue;
                }
                let (_, pi) = quotient(&entry.ring, &ideal)?;
                let inside_radical = ideal.members.iter().all(|&m| radical.contains(m));
                if pi.is_local() != inside_radical {
                    return fail(format!(
                        "quotient by an ideal of {} is local ⟷ I ⊆ J(A) fails",
                        entry.key
                    ));
                }
                quotients_checked += 1;
            }
            if is_self_localized(&entry.ring) {
                let (quot, _) = quotient(&entry.ring, &jacobson_radical(&entry.ring))?;
                if !is_simple(&quot) {
                    return fail(format!("{} is self-localized but A/J is not simple", entry.key));
                }
            }
            if is_von_neumann_regular(&entry.ring)
                && is_self_localized(&entry.ring) != is_simple(&entry.ring)
            {
                return fail(format!(
                    "regular ring {} breaks self-localized ⟷ simple",
                    entry.key
                ));
            }
        }
        let small: Vec<_> = standard_corpus()
            .into_iter()
            .filter(|e| e.ring.order() <= 8)
            .collect();
        let mut local_homs = 0;
        for a in &small {
            let ja = jacobson_radical(&a.ring);
            for b in &small {
                let jb: BTreeSet<Elem> = jacobson_radical(&b.ring).members.clone();
                for map in hom_search(&a.ring, &b.ring) {
                    if !map.is_local() {
                        continue;
                    }
                    local_homs += 1;
                    let pulled = map.preimage(&jb);
                    let zero_only: BTreeSet<Elem> = [b.ring.zero()].into();
                    let kernel = map.preimage(&zero_only);
                    if !pulled.iter().all(|m| ja.contains(*m))
                        || !kernel.iter().all(|m| ja.contains(*m))
                    {
                        return fail(format!(
                            "a local hom {} → {} leaks outside the source radical",
                            a.key, b.key
                        ));
                    }
                }
            }
        }
        Ok(format!(
            "{quotients_checked} quotient maps and {local_homs} local homs respect the radical laws"
        ))
    })())
}

/// 7. Every proper ideal of a commutative corpus ring carves out a closed
/// locus isomorphic to the quotient's spectrum.
pub fn closed_loci() -> CriterionReport {
    finish(7, "closed-loci", (|| -> Outcome {
        let mut checked = 0;
        for entry in commutative_corpus() {
            for ideal in ideals(&entry.ring) {
                if !ideal.is_proper(&entry.ring) {
                    continue;
                }
                let cmp = closed_subscheme_compare(&entry.ring, &ideal)?;
                if !cmp.holds() {
                    return fail(format!(
                        "F(A/I) ↔ Z(I) fails on {} for an ideal of size {}",
                        entry.key,
                        ideal.len()
                    ));
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} closed loci match their quotient spectra"))
    })())
}

/// 8. Sandwich inverses reduce to 1 under the strict rules, and reduction
/// is consistent with honest fraction arithmetic on commutative rings.
pub fn rewriting_identities() -> CriterionReport {
    finish(8, "rewriting-identities", (|| -> Outcome {
        let budget = Budget::default();
        let mut sandwiches = 0;
        for entry in standard_corpus() {
            let ring = &entry.ring;
            for a in ring.elements() {
                for b in ring.elements() {
                    let s = ring.mul(ring.mul(a, b), a);
                    if s == ring.zero() {
                        continue;
                    }
                    let pres = LocalizationPresentation::new(ring, [s].into())?;
                    let right_poly =
                        pres.expression(&format!("a{} * a{} * a{} * x{}", a.0, b.0, a.0, s.0))?;
                    let left_poly =
                        pres.expression(&format!("x{} * a{} * a{} * a{}", s.0, a.0, b.0, a.0))?;
                    let right = reduce(&right_poly, &budget);
                    let left = reduce(&left_poly, &budget);
                    let ok = matches!(right.halt, Halt::Normal)
                        && matches!(left.halt, Halt::Normal)
                        && right.poly.is_one()
                        && left.poly.is_one();
                    if !ok {
                        return fail(format!(
                            "sandwich identity fails in {} at a={a}, b={b}",
                            entry.key
                        ));
                    }
                    sandwiches += 1;
                }
            }
        }
        let mut consistent = 0;
        for entry in commutative_corpus() {
            for s in entry.ring.elements() {
                // Nilpotent seeds collapse the fraction ring to zero, which
                // has no carrier here; consistency is only claimed where the
                // localization exists.
                if saturation(&entry.ring, &[s].into()).contains(&entry.ring.zero()) {
                    continue;
                }
                let pres = LocalizationPresentation::new(&entry.ring, [s].into())?;
                if !pres.commutative_consistency()?.holds() {
                    return fail(format!(
                        "reduction disagrees with fractions on {} inverting {s}",
                        entry.key
                    ));
                }
                consistent += 1;
            }
        }
        Ok(format!(
            "{sandwiches} sandwich identities reduce to 1; {consistent} presentations consistent with fractions"
        ))
    })())
}

/// 9. The graded correspondence round-trips on three coefficient rings and
/// the twist law holds across the full window.
pub fn graded_criterion() -> CriterionReport {
    finish(9, "graded-correspondence", (|| -> Outcome {
        let z6 = FiniteRing::zmod(6)?;
        let z2 = FiniteRing::zmod(2)?;
        let prod = FiniteRing::product(&z2, &z2)?;
        let swap = RingAut::new(&prod, vec![0, 2, 1, 3])?;
        let gf4 = FiniteRing::gf4();
        let frob = RingAut::new(&gf4, vec![0, 1, 3, 2])?;
        let algebras = [
            TwistedLaurentAlgebra::new(&z6, RingAut::identity(&z6), 8)?,
            TwistedLaurentAlgebra::new(&prod, swap, 8)?,
            TwistedLaurentAlgebra::new(&gf4, frob, 8)?,
        ];
        for alg in &algebras {
            let law = alg.twist_law_report()?;
            if !law.holds || law.checked != 17 * alg.ring.order() {
                return fail(format!("twist law fails over {}", alg.ring.label()));
            }
            let report = graded_correspondence(alg)?;
            if !report.holds() {
                return fail(format!(
                    "correspondence fails over {}",
                    alg.ring.label()
                ));
            }
        }
        Ok("round trip and twist law hold for ℤ/6 (id), ℤ/2×ℤ/2 (swap), F₄ (Frobenius)".into())
    })())
}

/// 10. Gluing two copies of F(ℤ/6) destroys the center and lands exactly
/// one step from affine; genuine spectra stay affine.
pub fn gluing() -> CriterionReport {
    finish(10, "gluing", (|| -> Outcome {
        let z6 = FiniteRing::zmod(6)?;
        let doubled = glue_double(&full_spectrum(&z6)?)?;
        if doubled.space.center().is_some() {
            return fail("doubled F(ℤ/6) should have no center".into());
        }
        match classify_affinity(&doubled.space)? {
            Affinity::OneAffine => {}
            other => return fail(format!("doubled F(ℤ/6) classified as {other}")),
        }
        let mut affine = 0;
        for entry in standard_corpus() {
            let space = FSpace::from_spectrum(&full_spectrum(&entry.ring)?);
            match classify_affinity(&space)? {
                Affinity::Affine => affine += 1,
                other => {
                    return fail(format!("F({}) classified as {other}", entry.key));
                }
            }
        }
        Ok(format!(
            "doubled F(ℤ/6) is 1-affine without center; {affine} corpus spectra are affine"
        ))
    })())
}

/// Run all ten criteria in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        z6_spectrum(),
        triple_agreement(),
        sheaf_axioms(),
        l_comparison(),
        noncommutative_classification(),
        radical_laws(),
        closed_loci(),
        rewriting_identities(),
        graded_criterion(),
        gluing(),
    ]
}
