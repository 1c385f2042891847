//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are kept in a map keyed by graded-lexicographic monomial order, so
//! equal polynomials always have identical canonical form. All arithmetic is
//! exact; the only floating-point door is [`MultiPoly::evaluate`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::vars::{same_table, VarTable};

pub type Rat = BigRational;

/// Rational from an integer pair; panics on zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Default guard against runaway term growth in products and determinants.
pub const DEFAULT_TERM_BUDGET: usize = 5_000_000;

/// Exponent vector aligned with a `VarTable`. Ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity].into_boxed_slice())
    }

    pub fn of_var(arity: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; arity];
        e[idx] = exp;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference when `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out.into_boxed_slice()))
    }

    fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Graded reverse-lexicographic comparison, used only for printing.
    fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        let d = self.total_degree().cmp(&other.total_degree());
        if d != Ordering::Equal {
            return d;
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            match a.cmp(b) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer weights per variable, for weighted-homogeneity tests.
#[derive(Debug, Clone, Default)]
pub struct WeightSystem {
    weights: BTreeMap<String, i64>,
}

impl WeightSystem {
    pub fn new<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        WeightSystem {
            weights: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.weights.get(name).copied()
    }
}

/// Outcome of a weighted-degree query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightedDegree {
    /// The zero polynomial is homogeneous of every degree.
    AnyDegree,
    Homogeneous(i64),
    Inhomogeneous,
}

impl WeightedDegree {
    pub fn homogeneous_of(self, d: i64) -> bool {
        matches!(self, WeightedDegree::Homogeneous(x) if x == d) || self == WeightedDegree::AnyDegree
    }
}

/// Sparse multivariate polynomial over Q with a shared variable table.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        MultiPoly {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<VarTable>, c: Rat) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(table.arity()), c);
        }
        p
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Rat::one())
    }

    pub fn int(table: &Arc<VarTable>, n: i64) -> Self {
        Self::constant(table, rat_int(n))
    }

    pub fn var(table: &Arc<VarTable>, name: &str) -> Result<Self> {
        let idx = table.require(name)?;
        let mut p = Self::zero(table);
        p.terms
            .insert(Monomial::of_var(table.arity(), idx, 1), Rat::one());
        Ok(p)
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: Rat) -> Result<Self> {
        if m.exponents().len() != table.arity() {
            return Err(Error::DimensionMismatch(format!(
                "monomial arity {} vs table arity {}",
                m.exponents().len(),
                table.arity()
            )));
        }
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        Ok(p)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, var_idx: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var_idx])
            .max()
            .unwrap_or(0)
    }

    /// Leading term in graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    fn check_table(&self, other: &MultiPoly) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::VarMismatch(format!(
                "{} vs {}",
                self.table, other.table
            )))
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg_ref(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn try_mul_budget(&self, other: &MultiPoly, budget: usize) -> Result<MultiPoly> {
        self.check_table(other)?;
        let estimate = self.terms.len().saturating_mul(other.terms.len());
        if estimate > budget {
            return Err(Error::BudgetExceeded { estimate, budget });
        }
        let mut out = Self::zero(&self.table);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_mul_budget(other, DEFAULT_TERM_BUDGET)
    }

    pub fn pow(&self, e: u32, budget: usize) -> Result<MultiPoly> {
        let mut out = Self::one(&self.table);
        for _ in 0..e {
            out = out.try_mul_budget(self, budget)?;
        }
        Ok(out)
    }

    /// Exact formal partial derivative.
    pub fn derivative(&self, var: &str) -> Result<MultiPoly> {
        let idx = self.table.require(var)?;
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.exponents()[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[idx] = e - 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c * Rat::from_integer(BigInt::from(e)),
            );
        }
        Ok(out)
    }

    /// Gradient with respect to every variable of the table, in table order.
    pub fn gradient(&self) -> Vec<MultiPoly> {
        self.table
            .names()
            .iter()
            .map(|n| self.derivative(n).expect("table variable"))
            .collect()
    }

    /// Composition: substituted variables are replaced by polynomials over
    /// `target`; every other variable of the source table must exist in
    /// `target` and maps to itself by name.
    pub fn substitute(
        &self,
        target: &Arc<VarTable>,
        assign: &BTreeMap<String, MultiPoly>,
    ) -> Result<MultiPoly> {
        for (name, val) in assign {
            self.table.require(name)?;
            if !same_table(&val.table, target) {
                return Err(Error::VarMismatch(format!(
                    "assignment for `{name}` uses table {} instead of {}",
                    val.table, target
                )));
            }
        }
        // Images per source variable index, built lazily; identity images
        // need the variable present in the target table.
        let arity = self.table.arity();
        let mut images: Vec<Option<MultiPoly>> = vec![None; arity];
        let image = |i: usize, images: &mut Vec<Option<MultiPoly>>| -> Result<MultiPoly> {
            if images[i].is_none() {
                let name = self.table.name(i);
                let img = match assign.get(name) {
                    Some(p) => p.clone(),
                    None => MultiPoly::var(target, name)?,
                };
                images[i] = Some(img);
            }
            Ok(images[i].as_ref().unwrap().clone())
        };
        let mut out = MultiPoly::zero(target);
        // Power cache: powers[i][e] = image_i^e.
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); arity];
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if powers[i].is_empty() {
                    let img = image(i, &mut images)?;
                    powers[i].push(MultiPoly::one(target));
                    powers[i].push(img);
                }
                while powers[i].len() <= e as usize {
                    let img = images[i].as_ref().unwrap().clone();
                    let next = powers[i].last().unwrap().try_mul(&img)?;
                    powers[i].push(next);
                }
                acc = acc.try_mul(&powers[i][e as usize])?;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// Re-express over another table containing all occurring variables.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<MultiPoly> {
        self.substitute(target, &BTreeMap::new())
    }

    /// Single-divisor multivariate division: returns `Some(q)` with
    /// `self = q * f` when `f` divides exactly, `None` otherwise. For a
    /// single divisor the remainder is zero iff the division is exact, so
    /// the verdict does not depend on the monomial order.
    pub fn divide_exact(&self, f: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_table(f)?;
        if f.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let (flm, flc) = f.leading().unwrap();
        let flm = flm.clone();
        let flc = flc.clone();
        let mut r = self.clone();
        let mut q = MultiPoly::zero(&self.table);
        while let Some((rlm, rlc)) = r.leading() {
            let Some(d) = rlm.try_div(&flm) else {
                return Ok(None);
            };
            let coef = rlc / &flc;
            // r -= coef * x^d * f
            let rlm = rlm.clone();
            for (m, c) in &f.terms {
                r.add_term(m.mul(&d), -(&coef * c));
            }
            debug_assert!(!r.terms.contains_key(&rlm));
            q.add_term(d, coef);
        }
        Ok(Some(q))
    }

    /// The common weighted degree of all terms, when one exists.
    pub fn weighted_degree(&self, w: &WeightSystem) -> Result<WeightedDegree> {
        if self.is_zero() {
            return Ok(WeightedDegree::AnyDegree);
        }
        let mut var_weights = vec![0i64; self.table.arity()];
        let mut needed = vec![false; self.table.arity()];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    needed[i] = true;
                }
            }
        }
        for (i, need) in needed.iter().enumerate() {
            if *need {
                let name = self.table.name(i);
                var_weights[i] = w
                    .get(name)
                    .ok_or_else(|| Error::MissingWeight(name.to_string()))?;
            }
        }
        let mut common: Option<i64> = None;
        for m in self.terms.keys() {
            let d: i64 = m
                .exponents()
                .iter()
                .enumerate()
                .map(|(i, &e)| var_weights[i] * e as i64)
                .sum();
            match common {
                None => common = Some(d),
                Some(c) if c == d => {}
                Some(_) => return Ok(WeightedDegree::Inhomogeneous),
            }
        }
        Ok(WeightedDegree::Homogeneous(common.unwrap()))
    }

    /// Plain homogeneity (all weights 1).
    pub fn homogeneous_degree(&self) -> WeightedDegree {
        let w = WeightSystem::new(self.table.names().iter().map(|n| (n.clone(), 1i64)));
        self.weighted_degree(&w).expect("weights total")
    }

    /// Floating-point evaluation; exactness is NOT preserved here. Every
    /// variable of the table must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<String, Complex64>) -> Result<Complex64> {
        let arity = self.table.arity();
        let mut vals = Vec::with_capacity(arity);
        for n in self.table.names() {
            vals.push(
                *point
                    .get(n)
                    .ok_or_else(|| Error::MissingAssignment(n.clone()))?,
            );
        }
        let mut max_exp = vec![0u32; arity];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let powers: Vec<Vec<Complex64>> = (0..arity)
            .map(|i| {
                let mut v = Vec::with_capacity(max_exp[i] as usize + 1);
                v.push(Complex64::new(1.0, 0.0));
                for e in 1..=max_exp[i] as usize {
                    let last = v[e - 1];
                    v.push(last * vals[i]);
                }
                v
            })
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rat_to_f64(c), 0.0);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= powers[i][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Coefficient polynomial of `var^e` (the variable is divided out).
    pub fn coeff_of_power(&self, var_idx: usize, e: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.table);
        for (m, c) in &self.terms {
            if m.exponents()[var_idx] == e {
                let mut exps = m.exponents().to_vec();
                exps[var_idx] = 0;
                out.add_term(Monomial::from_exponents(exps), c.clone());
            }
        }
        out
    }

    /// Dense coefficient list in `var`: index k holds the coefficient of
    /// `var^k` as a polynomial free of `var`.
    pub fn univariate_coeffs(&self, var: &str) -> Result<Vec<MultiPoly>> {
        let idx = self.table.require(var)?;
        let deg = self.degree_in(idx);
        Ok((0..=deg).map(|e| self.coeff_of_power(idx, e)).collect())
    }
}

pub(crate) fn rat_to_f64(c: &Rat) -> f64 {
    c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

// ---------------------------------------------------------------------------
// Canonical printing. Terms are emitted by descending graded
// reverse-lexicographic order; parsing this output reproduces the polynomial.
// ---------------------------------------------------------------------------

fn fmt_rat_abs(c: &Rat) -> String {
    let n = c.numer().abs();
    let d = c.denom().clone();
    if d.is_one() {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.grevlex_cmp(a.0));
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 1 {
                    factors.push(self.table.name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.table.name(i), e));
                }
            }
            let abs = fmt_rat_abs(c);
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VarTable;

    fn xy() -> Arc<VarTable> {
        VarTable::new(["x", "y"]).unwrap()
    }

    #[test]
    fn cancellation() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let y = MultiPoly::var(&t, "y").unwrap();
        let sum = &(&x + &y) + &y.neg_ref();
        assert_eq!(sum, x);
    }

    #[test]
    fn difference_of_squares() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let y = MultiPoly::var(&t, "y").unwrap();
        let prod = &(&x - &y) * &(&x + &y);
        let expect = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expect);
    }

    #[test]
    fn zero_absorbs() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let z = MultiPoly::zero(&t);
        assert!((&z * &x).is_zero());
    }

    #[test]
    fn table_mismatch_rejected() {
        let t1 = xy();
        let t2 = VarTable::new(["x", "z"]).unwrap();
        let a = MultiPoly::var(&t1, "x").unwrap();
        let b = MultiPoly::var(&t2, "x").unwrap();
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn derivative_basics() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let y = MultiPoly::var(&t, "y").unwrap();
        // d/dx (x^2 y) = 2 x y
        let p = &(&x * &x) * &y;
        let d = p.derivative("x").unwrap();
        assert_eq!(d, (&x * &y).scale(&rat_int(2)));
        // gradient of xy = (y, x)
        let grad = (&x * &y).gradient();
        assert_eq!(grad, vec![y.clone(), x.clone()]);
        assert!(p.derivative("w").is_err());
    }

    #[test]
    fn divide_exact_basics() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let y = MultiPoly::var(&t, "y").unwrap();
        let g = &(&x * &x) - &(&y * &y);
        let f = &x - &y;
        let q = g.divide_exact(&f).unwrap().unwrap();
        assert_eq!(q, &x + &y);
        // (x^2 + 1) / x is not exact
        let g2 = &(&x * &x) + &MultiPoly::one(&t);
        assert!(g2.divide_exact(&x).unwrap().is_none());
        assert!(matches!(
            g2.divide_exact(&MultiPoly::zero(&t)),
            Err(Error::ZeroDivision)
        ));
    }

    #[test]
    fn weighted_degrees() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let y = MultiPoly::var(&t, "y").unwrap();
        let w = WeightSystem::new([("x", 1), ("y", 2)]);
        let p = &(&x * &x) * &y;
        assert_eq!(
            p.weighted_degree(&w).unwrap(),
            WeightedDegree::Homogeneous(4)
        );
        let q = &(&x * &x) + &y;
        // homogeneous for w, inhomogeneous for plain degree
        assert_eq!(
            q.weighted_degree(&w).unwrap(),
            WeightedDegree::Homogeneous(2)
        );
        assert_eq!(q.homogeneous_degree(), WeightedDegree::Inhomogeneous);
        assert_eq!(
            MultiPoly::zero(&t).weighted_degree(&w).unwrap(),
            WeightedDegree::AnyDegree
        );
    }

    #[test]
    fn substitute_dehomogenize() {
        // (s1^2 - 4 s2) with s1 -> -(r1+r2), s2 -> r1 r2 gives (r1-r2)^2
        let ts = VarTable::new(["s1", "s2"]).unwrap();
        let tr = VarTable::new(["r1", "r2"]).unwrap();
        let s1 = MultiPoly::var(&ts, "s1").unwrap();
        let s2 = MultiPoly::var(&ts, "s2").unwrap();
        let p = &(&s1 * &s1) - &s2.scale(&rat_int(4));
        let r1 = MultiPoly::var(&tr, "r1").unwrap();
        let r2 = MultiPoly::var(&tr, "r2").unwrap();
        let mut assign = BTreeMap::new();
        assign.insert("s1".to_string(), (&r1 + &r2).neg_ref());
        assign.insert("s2".to_string(), &r1 * &r2);
        let got = p.substitute(&tr, &assign).unwrap();
        let diff = &r1 - &r2;
        assert_eq!(got, &diff * &diff);
        // empty assignment is the identity
        let same = p.substitute(&ts, &BTreeMap::new()).unwrap();
        assert_eq!(same, p);
    }

    #[test]
    fn substitute_error_paths() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        // assigning a variable the polynomial's table does not know
        let mut assign = BTreeMap::new();
        assign.insert("w".to_string(), MultiPoly::one(&t));
        assert!(matches!(
            x.substitute(&t, &assign),
            Err(Error::UnknownVariable(_))
        ));
        // assignment value over the wrong table
        let t2 = VarTable::new(["z"]).unwrap();
        let mut assign = BTreeMap::new();
        assign.insert("x".to_string(), MultiPoly::one(&t2));
        assert!(matches!(x.substitute(&t, &assign), Err(Error::VarMismatch(_))));
        // an occurring variable missing from the target table
        assert!(matches!(
            x.substitute(&t2, &BTreeMap::new()),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn weighted_degree_missing_weight() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let w = WeightSystem::new([("y", 1i64)]);
        assert!(matches!(
            x.weighted_degree(&w),
            Err(Error::MissingWeight(_))
        ));
    }

    #[test]
    fn evaluate_points() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let p = &(&x * &x) - &MultiPoly::one(&t);
        let mut pt = BTreeMap::new();
        pt.insert("x".into(), Complex64::new(2.0, 0.0));
        pt.insert("y".into(), Complex64::new(0.0, 0.0));
        assert_eq!(p.evaluate(&pt).unwrap(), Complex64::new(3.0, 0.0));
        let y = MultiPoly::var(&t, "y").unwrap();
        let mut pt2 = BTreeMap::new();
        pt2.insert("x".into(), Complex64::new(0.0, 1.0));
        pt2.insert("y".into(), Complex64::new(0.0, 1.0));
        let v = (&x * &y).evaluate(&pt2).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let mut missing = BTreeMap::new();
        missing.insert("x".into(), Complex64::new(1.0, 0.0));
        assert!(p.evaluate(&missing).is_err());
    }

    #[test]
    fn budget_guard() {
        let t = xy();
        let x = MultiPoly::var(&t, "x").unwrap();
        let y = MultiPoly::var(&t, "y").unwrap();
        let p = &x + &y;
        assert!(matches!(
            p.try_mul_budget(&p, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
