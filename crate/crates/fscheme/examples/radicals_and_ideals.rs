//! Ideals, the Jacobson radical two independent ways, and the element
//! classification that separates "never invertible anywhere" from plain
//! nilpotence.
//!
//! Run with: `cargo run --example radicals_and_ideals`

use fscheme::ideals::{
    ideals, is_nilpotent, is_quasi_nilpotent, is_self_localized, is_simple,
    is_von_neumann_regular, jacobson_radical, jacobson_radical_by_units, quotient,
    simple_left_modules,
};
use fscheme::ring::FiniteRing;

fn main() {
    let z2 = FiniteRing::zmod(2).unwrap();
    let t2 = FiniteRing::upper_triangular(&z2, 2).unwrap();

    // Two characterizations of the radical — intersection of maximal left
    // ideals, and {x : 1 + AxA consists of units} — computed separately.
    let by_ideals = jacobson_radical(&t2);
    let by_units = jacobson_radical_by_units(&t2);
    assert_eq!(by_ideals.members, by_units.members);
    println!(
        "J(T2(Z/2)) has {} elements: {:?}",
        by_ideals.len(),
        by_ideals.members.iter().map(|e| t2.name(*e)).collect::<Vec<_>>()
    );
    assert_eq!(by_ideals.len(), 2); // zero and the strictly upper matrix

    // The quotient by the radical is semisimple; here it is Z/2 x Z/2.
    let (semi, _pi) = quotient(&t2, &by_ideals).unwrap();
    println!("T2(Z/2)/J has order {} and is commutative: {}", semi.order(), semi.is_commutative());
    assert_eq!(semi.order(), 4);

    // Quasi-nilpotent = the one-element localization collapses to zero =
    // the element acts non-bijectively on every simple module. In M2(F2)
    // the idempotent diag(1,0) is quasi-nilpotent but NOT nilpotent.
    let m2 = FiniteRing::matrix(&z2, 2).unwrap();
    let e11 = FiniteRing::matrix_elem(&z2, 2, &[1, 0, 0, 0]);
    assert!(is_quasi_nilpotent(&m2, e11));
    assert!(!is_nilpotent(&m2, e11));
    println!("diag(1,0) in M2(F2): quasi-nilpotent, not nilpotent (it is idempotent)");

    // In a commutative ring the two notions coincide.
    let z8 = FiniteRing::zmod(8).unwrap();
    for a in z8.elements() {
        assert_eq!(is_quasi_nilpotent(&z8, a), is_nilpotent(&z8, a));
    }
    println!("on Z/8 quasi-nilpotent coincides with nilpotent: {{0,2,4,6}}");

    // Simple left modules drive the quasi-nilpotence decision procedure.
    // M2(F2) has three maximal left ideals — one per line in the plane —
    // and each quotient is a copy of the column space F2^2.
    let simples = simple_left_modules(&m2);
    println!("M2(F2) has {} simple left modules, one per line of F2^2", simples.len());
    assert_eq!(simples.len(), 3);
    assert!(simples.iter().all(|s| s.size() == 4));

    // Classification flags for the two noncommutative corpus members.
    println!(
        "M2(F2): simple={} regular={} self-localized={}",
        is_simple(&m2),
        is_von_neumann_regular(&m2),
        is_self_localized(&m2)
    );
    assert!(is_simple(&m2) && is_von_neumann_regular(&m2) && is_self_localized(&m2));
    println!(
        "T2(Z/2): simple={} regular={} self-localized={}",
        is_simple(&t2),
        is_von_neumann_regular(&t2),
        is_self_localized(&t2)
    );
    assert!(!is_simple(&t2) && !is_von_neumann_regular(&t2) && !is_self_localized(&t2));

    // The full two-sided ideal lattice of Z/12 mirrors the divisors of 12.
    let z12 = FiniteRing::zmod(12).unwrap();
    let lattice = ideals(&z12);
    println!("Z/12 has {} two-sided ideals (one per divisor)", lattice.len());
    assert_eq!(lattice.len(), 6);
}
