//! Localization by rewriting: polynomials with formal inverse symbols,
//! the strict cancellation rules, budgets, inverse witnesses for
//! noncommutative rings, and the consistency check against honest
//! fraction arithmetic.
//!
//! Run with: `cargo run --example symbolic_inversion`

use fscheme::localization::localize;
use fscheme::rewrite::{reduce, redexes, Budget, FreePoly, Halt, LocalizationPresentation};
use fscheme::ring::{Elem, FiniteRing};

fn main() {
    let z6 = FiniteRing::zmod(6).unwrap();
    let pres = LocalizationPresentation::new(&z6, [Elem(2)].into()).unwrap();

    // Expressions parse into canonical sums of words; constants fold at
    // parse time (3 + 4 = 1 in Z/6), so only the x-word is left to rewrite.
    let poly = pres.expression("a2 * x2 + a3 + a4").unwrap();
    println!("a2 * x2 + a3 + a4 parses to: {poly}");

    // The strict rules cancel a-next-to-x only on an exact match:
    // a2*x2 -> 1, which then merges with the folded constant into a2.
    let budget = Budget::default();
    let reduced = reduce(&poly, &budget);
    println!("reduced in {} step(s) to: {}", reduced.steps, reduced.poly);
    assert!(matches!(reduced.halt, Halt::Normal));
    assert_eq!(reduced.poly.to_string(), "a2");

    // x2 * a4 is stuck: 4 is not literally 2, so no strict rule fires.
    let stuck = pres.expression("x2 * a4").unwrap();
    assert!(redexes(&stuck).is_empty());
    println!("x2 * a4 is already normal: factor-matching is deliberately not attempted");

    // Budgets make every reduction terminate visibly: a degree-13 word is
    // rejected before any work happens.
    let mut tall = FreePoly::one(&z6);
    let x2 = FreePoly::inverse_symbol(&z6, Elem(2)).unwrap();
    for _ in 0..13 {
        tall = tall.mul(&x2).unwrap();
    }
    let halted = reduce(&tall, &budget);
    assert!(matches!(halted.halt, Halt::DegreeBudget));
    println!("degree 13 exceeds the default budget of {}: halt = degree-budget", budget.max_degree);

    // Noncommutative inverse witnesses: in T2(Z/2) with e00 = diag(1,0)
    // declared invertible, e00 itself gets a two-sided witness through the
    // strict cancellation rule.
    let z2 = FiniteRing::zmod(2).unwrap();
    let t2 = FiniteRing::upper_triangular(&z2, 2).unwrap();
    let e00 = FiniteRing::upper_triangular_elem(&z2, &[1, 0, 0]);
    let pres_t2 = LocalizationPresentation::new(&t2, [e00].into()).unwrap();
    let witness = pres_t2.invertibility_witness(e00).unwrap();
    assert!(witness.is_some());
    let w = witness.unwrap();
    println!("in T2(Z/2) with e00 inverted, e00 has witnesses left={} right={}", w.left, w.right);

    // The strictly upper matrix e01 is a two-sided zero divisor killed by
    // the localization; no witness exists.
    let e01 = FiniteRing::upper_triangular_elem(&z2, &[0, 1, 0]);
    assert!(pres_t2.invertibility_witness(e01).unwrap().is_none());
    println!("e01 has no inverse witness: it dies in every localization inverting e00");

    // Commutative consistency: reduction is invariant under evaluation
    // into the honest fraction ring, homomorphic, and surjective.
    let report = pres.commutative_consistency().unwrap();
    assert!(report.holds());
    let loc = localize(&z6, &[Elem(2)].into()).unwrap();
    println!(
        "rewriting over Z/6 inverting 2 is consistent with the {}-element fraction ring",
        loc.fractions.order()
    );
    assert_eq!(report.fraction_ring_order, loc.fractions.order());
}
