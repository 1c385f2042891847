//! Formal differential algebra of the Weierstrass function: normal forms
//! a + b·wp1 over Q[wp, g2, g3], reduced by wp1^2 = 4 wp^3 - g2 wp - g3,
//! with the derivation wp -> wp1, wp1 -> 6 wp^2 - (1/2) g2, g2, g3 -> 0.
//!
//! Identities proved here are exact polynomial statements in g2, g3; no
//! numerics enter this module.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::Result;
use crate::poly::{rat, MultiPoly, Rat, WeightSystem, WeightedDegree};
use crate::vars::VarTable;

/// The coefficient table [wp, g2, g3] shared by all elements.
pub fn w_table() -> Arc<VarTable> {
    static TABLE: OnceLock<Arc<VarTable>> = OnceLock::new();
    Arc::clone(TABLE.get_or_init(|| VarTable::new(["wp", "g2", "g3"]).expect("valid names")))
}

fn cubic() -> MultiPoly {
    // 4 wp^3 - g2 wp - g3
    MultiPoly::parse("4*wp^3 - g2*wp - g3", &w_table()).expect("fixed text")
}

fn wp2_normal_form() -> MultiPoly {
    // 6 wp^2 - 1/2 g2
    MultiPoly::parse("6*wp^2 - 1/2*g2", &w_table()).expect("fixed text")
}

/// Canonical element a(wp, g2, g3) + b(wp, g2, g3) * wp1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WElement {
    pub a: MultiPoly,
    pub b: MultiPoly,
}

impl WElement {
    pub fn new(a: MultiPoly, b: MultiPoly) -> Self {
        WElement { a, b }
    }

    pub fn zero() -> Self {
        let t = w_table();
        WElement::new(MultiPoly::zero(&t), MultiPoly::zero(&t))
    }

    pub fn one() -> Self {
        let t = w_table();
        WElement::new(MultiPoly::one(&t), MultiPoly::zero(&t))
    }

    pub fn constant(c: Rat) -> Self {
        let t = w_table();
        WElement::new(MultiPoly::constant(&t, c), MultiPoly::zero(&t))
    }

    pub fn wp() -> Self {
        let t = w_table();
        WElement::new(
            MultiPoly::var(&t, "wp").expect("wp"),
            MultiPoly::zero(&t),
        )
    }

    pub fn wp1() -> Self {
        let t = w_table();
        WElement::new(MultiPoly::zero(&t), MultiPoly::one(&t))
    }

    pub fn g2() -> Self {
        let t = w_table();
        WElement::new(MultiPoly::var(&t, "g2").expect("g2"), MultiPoly::zero(&t))
    }

    pub fn g3() -> Self {
        let t = w_table();
        WElement::new(MultiPoly::var(&t, "g3").expect("g3"), MultiPoly::zero(&t))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &WElement) -> WElement {
        WElement::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &WElement) -> WElement {
        WElement::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> WElement {
        WElement::new(self.a.neg_ref(), self.b.neg_ref())
    }

    pub fn scale(&self, c: &Rat) -> WElement {
        WElement::new(self.a.scale(c), self.b.scale(c))
    }

    /// Product with eager reduction of wp1^2 by the cubic relation.
    pub fn mul(&self, o: &WElement) -> WElement {
        let c = cubic();
        let a = &(&self.a * &o.a) + &(&(&self.b * &o.b) * &c);
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        WElement::new(a, b)
    }

    pub fn pow(&self, e: u32) -> WElement {
        let mut acc = WElement::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The derivation d/dz: wp -> wp1, wp1 -> 6 wp^2 - g2/2, g2, g3 -> 0,
    /// extended by Leibniz and reduced to normal form.
    pub fn d_dz(&self) -> WElement {
        let da = self.a.derivative("wp").expect("wp in table");
        let db = self.b.derivative("wp").expect("wp in table");
        let a = &(&db * &cubic()) + &(&self.b * &wp2_normal_form());
        WElement::new(a, da)
    }

    /// True iff the canonical form is (0, 0).
    pub fn verify_identity(&self) -> bool {
        self.is_zero()
    }

    /// Weighted degree under w(wp) = 2, w(g2) = 4, w(g3) = 6, counting the
    /// wp1 factor of the b-component with weight 3. `None` when the two
    /// components are inhomogeneous or of incompatible weights.
    pub fn weight(&self) -> Option<i64> {
        let w = WeightSystem::new([("wp", 2i64), ("g2", 4), ("g3", 6)]);
        let wa = self.a.weighted_degree(&w).ok()?;
        let wb = self.b.weighted_degree(&w).ok()?;
        match (wa, wb) {
            (WeightedDegree::AnyDegree, WeightedDegree::AnyDegree) => None,
            (WeightedDegree::Homogeneous(x), WeightedDegree::AnyDegree) => Some(x),
            (WeightedDegree::AnyDegree, WeightedDegree::Homogeneous(y)) => Some(y + 3),
            (WeightedDegree::Homogeneous(x), WeightedDegree::Homogeneous(y))
                if x == y + 3 =>
            {
                Some(x)
            }
            _ => None,
        }
    }
}

impl fmt::Display for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*wp1", self.a, self.b)
    }
}

/// The canonical form of the k-th derivative of the Weierstrass function;
/// k = 0 gives wp itself.
pub fn wp_derivative(k: u32) -> WElement {
    let mut e = WElement::wp();
    for _ in 0..k {
        e = e.d_dz();
    }
    e
}

/// Evaluate a polynomial into the algebra by substituting a WElement image
/// for every variable of its table.
pub fn poly_to_w(p: &MultiPoly, images: &BTreeMap<String, WElement>) -> Result<WElement> {
    let mut acc = WElement::zero();
    let arity = p.table().arity();
    let mut image_list = Vec::with_capacity(arity);
    for name in p.table().names() {
        image_list.push(images.get(name).cloned());
    }
    let mut powers: Vec<Vec<WElement>> = vec![vec![WElement::one()]; arity];
    for (m, c) in p.terms() {
        let mut term = WElement::constant(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let img = image_list[i].clone().ok_or_else(|| {
                crate::error::Error::MissingAssignment(p.table().name(i).to_string())
            })?;
            while powers[i].len() <= e as usize {
                let last = powers[i].last().unwrap().clone();
                powers[i].push(last.mul(&img));
            }
            term = term.mul(&powers[i][e as usize]);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The five relations satisfied along the Weierstrass parametrization
/// (each reduces to zero in the algebra):
///   (1/2) wp' wp''' - (2/3) wp''^2 + 2 g2 wp^2 + 6 g3 wp + (1/6) g2^2
///   wp' wp'' + (1/2) g2 wp' - (1/2) wp wp'''
///   (1/2) wp'^2 - (1/3) wp wp'' + (1/3) g2 wp + (1/2) g3
///   6 wp wp' - (1/2) wp'''
///   (1/2) wp'' - 3 wp^2 + (1/4) g2
pub fn pfaffian_relations() -> [WElement; 5] {
    let p = wp_derivative(0);
    let p1 = wp_derivative(1);
    let p2 = wp_derivative(2);
    let p3 = wp_derivative(3);
    let g2 = WElement::g2();
    let g3 = WElement::g3();
    let half = rat(1, 2);
    let r1 = p1
        .mul(&p3)
        .scale(&half)
        .sub(&p2.mul(&p2).scale(&rat(2, 3)))
        .add(&g2.mul(&p.mul(&p)).scale(&rat(2, 1)))
        .add(&g3.mul(&p).scale(&rat(6, 1)))
        .add(&g2.mul(&g2).scale(&rat(1, 6)));
    let r2 = p1
        .mul(&p2)
        .add(&g2.mul(&p1).scale(&half))
        .sub(&p.mul(&p3).scale(&half));
    let r3 = p1
        .mul(&p1)
        .scale(&half)
        .sub(&p.mul(&p2).scale(&rat(1, 3)))
        .add(&g2.mul(&p).scale(&rat(1, 3)))
        .add(&g3.scale(&half));
    let r4 = p.mul(&p1).scale(&rat(6, 1)).sub(&p3.scale(&half));
    let r5 = p2.scale(&half).sub(&p.mul(&p).scale(&rat(3, 1))).add(&g2.scale(&rat(1, 4)));
    [r1, r2, r3, r4, r5]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &w_table()).unwrap()
    }

    #[test]
    fn square_of_wp1_reduces() {
        let sq = WElement::wp1().mul(&WElement::wp1());
        assert_eq!(sq.a, parse("4*wp^3 - g2*wp - g3"));
        assert!(sq.b.is_zero());
    }

    #[test]
    fn unit_is_neutral() {
        let e = WElement::wp().add(&WElement::wp1());
        assert_eq!(e.mul(&WElement::one()), e);
    }

    #[test]
    fn cube_of_wp1() {
        let cube = WElement::wp1().pow(3);
        assert!(cube.a.is_zero());
        assert_eq!(cube.b, parse("4*wp^3 - g2*wp - g3"));
    }

    #[test]
    fn derivative_ladder() {
        assert_eq!(wp_derivative(0), WElement::wp());
        assert_eq!(wp_derivative(1), WElement::wp1());
        let p2 = wp_derivative(2);
        assert_eq!(p2.a, parse("6*wp^2 - 1/2*g2"));
        assert!(p2.b.is_zero());
        let p3 = wp_derivative(3);
        assert!(p3.a.is_zero());
        assert_eq!(p3.b, parse("12*wp"));
        let p4 = wp_derivative(4);
        assert_eq!(p4.a, parse("120*wp^3 - 18*g2*wp - 12*g3"));
        assert!(p4.b.is_zero());
    }

    #[test]
    fn leibniz_on_square() {
        // d(wp^2) = 2 wp wp'
        let sq = WElement::wp().mul(&WElement::wp());
        let d = sq.d_dz();
        assert!(d.a.is_zero());
        assert_eq!(d.b, parse("2*wp"));
    }

    #[test]
    fn defining_relation_is_constant() {
        // d(wp1^2 - 4 wp^3 + g2 wp + g3) = 0
        let rel = WElement::wp1()
            .mul(&WElement::wp1())
            .sub(&WElement::wp().pow(3).scale(&rat(4, 1)))
            .add(&WElement::g2().mul(&WElement::wp()))
            .add(&WElement::g3());
        assert!(rel.is_zero());
        // and the reduction respects the derivation: build it unreduced
        // via d(wp1)·wp1 + wp1·d(wp1) - 12 wp^2 wp' + g2 wp'
        let lhs = WElement::wp1()
            .d_dz()
            .mul(&WElement::wp1())
            .scale(&rat(2, 1))
            .sub(&WElement::wp().pow(2).mul(&WElement::wp1()).scale(&rat(12, 1)))
            .add(&WElement::g2().mul(&WElement::wp1()));
        assert!(lhs.is_zero());
    }

    #[test]
    fn five_relations_vanish() {
        for (k, r) in pfaffian_relations().iter().enumerate() {
            assert!(r.verify_identity(), "relation {} is nonzero: {r}", k + 1);
        }
    }

    #[test]
    fn non_identity_detected() {
        let e = WElement::wp1().sub(&WElement::wp());
        assert!(!e.verify_identity());
    }

    #[test]
    fn derivative_weights() {
        for k in 0..=6 {
            assert_eq!(wp_derivative(k).weight(), Some(k as i64 + 2), "k = {k}");
        }
    }

    #[test]
    fn display_form() {
        let e = WElement::wp().add(&WElement::wp1());
        assert_eq!(e.to_string(), "(wp) + (1)*wp1");
    }
}
