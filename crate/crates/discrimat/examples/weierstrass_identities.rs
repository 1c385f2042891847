//! The formal differential algebra of the Weierstrass function: normal
//! forms a + b*wp1 modulo wp1^2 = 4 wp^3 - g2 wp - g3, the derivative
//! ladder, and the five quadric relations that vanish identically.
//!
//! Run with: cargo run --example weierstrass_identities

use discrimat::wp::{pfaffian_relations, wp_derivative, WElement};

fn main() {
    println!("derivative ladder (normal forms):");
    for k in 0..=4 {
        let d = wp_derivative(k);
        println!("  wp^({k}) = {d}   [weight {:?}]", d.weight());
    }

    println!("\nthe square of wp' reduces by the cubic:");
    let sq = WElement::wp1().mul(&WElement::wp1());
    println!("  (wp')^2 = {sq}");

    println!("\nthe five quadric relations along the curve:");
    for (k, r) in pfaffian_relations().iter().enumerate() {
        println!(
            "  relation {}: reduces to zero: {}",
            k + 1,
            r.verify_identity()
        );
    }

    // the defining relation is a constant of the derivation
    let rel = WElement::wp1()
        .mul(&WElement::wp1())
        .sub(&WElement::wp().pow(3).scale(&discrimat::poly::rat(4, 1)))
        .add(&WElement::g2().mul(&WElement::wp()))
        .add(&WElement::g3());
    println!(
        "\n(wp')^2 - 4 wp^3 + g2 wp + g3 = {} and its derivative = {}",
        rel,
        rel.d_dz()
    );
}
