//! Twisted Laurent algebras: skew multiplication, the certified twist law,
//! crossed-product re-presentation, and the correspondence between
//! homogeneous invertibility loci upstairs and σ-stable ones downstairs.
//!
//! Run with: `cargo run --example twisted_laurent`

use fscheme::graded::{
    correspond_up, graded_correspondence, multiplicative_violation, TwistedLaurentAlgebra,
};
use fscheme::ring::{Elem, FiniteRing, RingAut};

fn main() {
    // F4 with the Frobenius: squaring swaps the two primitive elements.
    let gf4 = FiniteRing::gf4();
    let frobenius = RingAut::new(&gf4, vec![0, 1, 3, 2]).unwrap();
    let alg = TwistedLaurentAlgebra::new(&gf4, frobenius, 8).unwrap();

    // Moving x past a coefficient applies the twist: x * w = w^2 * x.
    let omega = Elem(2);
    let moved = alg.mul(&alg.x(), &alg.constant(omega)).unwrap();
    println!("x * {} = {}", gf4.name(omega), alg.render(&moved));
    assert_eq!(moved, alg.monomial(Elem(3), 1).unwrap());

    // The defining law x^n a x^-n = sigma^n(a), certified by actual
    // multiplication for every coefficient and every |n| <= 8.
    let law = alg.twist_law_report().unwrap();
    assert!(law.holds);
    println!("twist law verified by {} multiplications", law.checked);

    // Monomials with unit coefficients are invertible; the inverse twists
    // the coefficient back.
    let u = alg.monomial(omega, 2).unwrap();
    let u_inv = alg.invert_monomial(omega, 2).unwrap();
    assert_eq!(alg.mul(&u, &u_inv).unwrap(), alg.one());
    assert_eq!(alg.mul(&u_inv, &u).unwrap(), alg.one());
    println!("({})^-1 = {}", alg.render(&u), alg.render(&u_inv));

    // Re-presenting with a different degree-one unit u = c*x conjugates
    // the automorphism; over a commutative coefficient ring nothing moves.
    let crossed = alg.crossed_product(omega).unwrap();
    assert!(crossed.conjugation_verified);
    assert_eq!(crossed.sigma_prime, alg.sigma);
    println!("crossed product at u = {}*x: sigma' = sigma (commutative coefficients)", gf4.name(omega));

    // The graded correspondence: homogeneous invertibility loci upstairs
    // are exactly the sigma-stable loci downstairs. With the swap on
    // Z/2 x Z/2, only the unit group survives.
    let z2 = FiniteRing::zmod(2).unwrap();
    let prod = FiniteRing::product(&z2, &z2).unwrap();
    let swap = RingAut::new(&prod, vec![0, 2, 1, 3]).unwrap();
    let alg_swap = TwistedLaurentAlgebra::new(&prod, swap, 8).unwrap();
    let report = graded_correspondence(&alg_swap).unwrap();
    assert!(report.holds());
    println!(
        "Z/2 x Z/2 with swap: {} spectrum points, {} sigma-stable",
        report.points.len(),
        report.stable_count
    );
    assert_eq!((report.points.len(), report.stable_count), (3, 1));

    // Unstable points come with an explicit violation: a product of two
    // homogeneous members whose coefficient escapes the degree-zero slice.
    for p in report.points.iter().filter(|p| !p.sigma_stable) {
        let subset = correspond_up(&alg_swap, &p.base);
        let (a, m, b) = multiplicative_violation(&alg_swap, &subset).unwrap();
        let product = prod.mul(a, alg_swap.sigma_pow(m, b));
        println!(
            "  point {:?}: ({} x^{m}) * ({}) lands at {} — outside the slice",
            p.base.iter().map(|e| e.0).collect::<Vec<_>>(),
            prod.name(a),
            prod.name(b),
            prod.name(product)
        );
        assert!(!p.base.contains(&product));
    }

    // With the identity twist every point is stable: the correspondence
    // is a bijection onto the whole spectrum downstairs.
    let z6 = FiniteRing::zmod(6).unwrap();
    let alg_id = TwistedLaurentAlgebra::new(&z6, RingAut::identity(&z6), 8).unwrap();
    let report_id = graded_correspondence(&alg_id).unwrap();
    assert_eq!(report_id.stable_count, report_id.points.len());
    println!(
        "Z/6 with identity twist: all {} points stable — correspondence is onto",
        report_id.points.len()
    );
}
