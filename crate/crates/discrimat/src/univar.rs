//! Univariate helpers used as independent oracles: dense gcd over Q,
//! Sylvester resultants, and a Monte Carlo squarefreeness test.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{rat, MultiPoly, Rat};
use crate::vars::VarTable;

/// Dense univariate polynomial over Q; index = power, no trailing zeros.
pub type UniPoly = Vec<Rat>;

fn trim(p: &mut UniPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn uni_degree(p: &UniPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn uni_derivative(p: &UniPoly) -> UniPoly {
    let mut out: UniPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * rat(k as i64, 1))
        .collect();
    trim(&mut out);
    out
}

fn uni_monic(mut p: UniPoly) -> UniPoly {
    if let Some(lc) = p.last().cloned() {
        for c in p.iter_mut() {
            *c = &*c / &lc;
        }
    }
    p
}

fn uni_rem(mut a: UniPoly, b: &UniPoly) -> UniPoly {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while a.len() > db {
        let la = a.last().unwrap().clone();
        let shift = a.len() - 1 - db;
        let q = &la / &lb;
        for (k, c) in b.iter().enumerate() {
            let idx = k + shift;
            a[idx] = &a[idx] - &(&q * c);
        }
        trim(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

/// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r2 = uni_rem(r0, &r1);
        r0 = r1;
        r1 = r2;
    }
    uni_monic(r0)
}

/// Restriction of `f` to the affine line `x_i = p_i + d_i t`, as a dense
/// polynomial in `t`.
pub fn restrict_to_line(f: &MultiPoly, point: &[Rat], dir: &[Rat]) -> Result<UniPoly> {
    let t_table = VarTable::new(["t"])?;
    let t = MultiPoly::var(&t_table, "t")?;
    let mut assign = BTreeMap::new();
    for (i, name) in f.table().names().iter().enumerate() {
        let line = MultiPoly::constant(&t_table, point[i].clone())
            .try_add(&t.scale(&dir[i]))?;
        assign.insert(name.clone(), line);
    }
    let g = f.substitute(&t_table, &assign)?;
    let coeffs = g.univariate_coeffs("t")?;
    let mut out: UniPoly = coeffs
        .iter()
        .map(|c| c.constant_value().expect("restriction is univariate"))
        .collect();
    trim(&mut out);
    Ok(out)
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = rng.gen_range(-10_000i64..=10_000);
    let d = rng.gen_range(1i64..=10_000);
    rat(n, d)
}

/// Monte Carlo squarefreeness: restrict to `trials` random rational lines
/// and test gcd(g, g') there. `false` means a square factor was exhibited
/// along some line; `true` is correct with high probability.
pub fn probably_squarefree(f: &MultiPoly, trials: u32, seed: u64) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Domain("squarefreeness of the zero polynomial".into()));
    }
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arity = f.table().arity();
    for _ in 0..trials {
        let point: Vec<Rat> = (0..arity).map(|_| random_rat(&mut rng)).collect();
        let mut dir: Vec<Rat> = (0..arity).map(|_| random_rat(&mut rng)).collect();
        if dir.iter().all(Zero::is_zero) {
            dir[0] = Rat::one();
        }
        let g = restrict_to_line(f, &point, &dir)?;
        if g.len() <= 1 {
            // constant restriction carries no information along this line
            continue;
        }
        let gcd = uni_gcd(&g, &uni_derivative(&g));
        if uni_degree(&gcd).unwrap_or(0) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Determinant of the Sylvester matrix of `f` and `g` in `var`, with
/// coefficients treated as polynomials in the remaining variables. Degree 0
/// is allowed in one argument (the matrix degenerates to a scalar power).
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let table = Arc::clone(f.table());
    let fc = f.univariate_coeffs(var)?;
    let gc = g.univariate_coeffs(var)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("resultant of the zero polynomial".into()));
    }
    let df = fc.len() - 1;
    let dg = gc.len() - 1;
    if df == 0 && dg == 0 {
        return Err(Error::Domain(format!(
            "both arguments have degree 0 in `{var}`"
        )));
    }
    let n = df + dg;
    let mut m = PolyMatrix::zero(&table, n, n);
    for i in 0..dg {
        for (k, c) in fc.iter().rev().enumerate() {
            *m.get_mut(i, i + k) = c.clone();
        }
    }
    for i in 0..df {
        for (k, c) in gc.iter().rev().enumerate() {
            *m.get_mut(dg + i, i + k) = c.clone();
        }
    }
    m.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(t: &Arc<VarTable>, s: &str) -> MultiPoly {
        MultiPoly::parse(s, t).unwrap()
    }

    #[test]
    fn resultant_quadratic() {
        let t = VarTable::new(["x", "b", "c"]).unwrap();
        let f = parse(&t, "x^2 + b*x + c");
        let g = parse(&t, "2*x + b");
        let r = sylvester_resultant(&f, &g, "x").unwrap();
        assert_eq!(r, parse(&t, "4*c - b^2"));
    }

    #[test]
    fn resultant_with_constant() {
        let t = VarTable::new(["x"]).unwrap();
        let f = parse(&t, "x^3 - 2*x + 5");
        let one = MultiPoly::one(&t);
        assert_eq!(sylvester_resultant(&f, &one, "x").unwrap(), one);
        assert!(sylvester_resultant(&one, &one, "x").is_err());
    }

    #[test]
    fn resultant_discriminant_sign() {
        // (-1)^{n(n-1)/2} Res(f, f')/s0 = s1^2 - 4 s0 s2 for n = 2
        let t = VarTable::new(["x", "s0", "s1", "s2"]).unwrap();
        let f = parse(&t, "s0*x^2 + s1*x + s2");
        let fp = f.derivative("x").unwrap();
        let res = sylvester_resultant(&f, &fp, "x").unwrap();
        let s0 = parse(&t, "s0");
        let q = res.divide_exact(&s0).unwrap().unwrap();
        // n = 2: (-1)^1 * Res/s0
        assert_eq!(q.neg_ref(), parse(&t, "s1^2 - 4*s0*s2"));
    }

    #[test]
    fn gcd_known_factor() {
        // gcd(t^2 - 1, t^2 - 2t + 1) = t - 1
        let a: UniPoly = vec![rat(-1, 1), rat(0, 1), rat(1, 1)];
        let b: UniPoly = vec![rat(1, 1), rat(-2, 1), rat(1, 1)];
        let g = uni_gcd(&a, &b);
        assert_eq!(g, vec![rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn squarefree_judgements() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let square = parse(&t, "x^2*y");
        assert!(!probably_squarefree(&square, 8, 1).unwrap());
        let arrangement = parse(&t, "x*y*x + x*y*y"); // xy(x+y)
        assert!(probably_squarefree(&arrangement, 8, 1).unwrap());
        assert!(probably_squarefree(&MultiPoly::zero(&t), 8, 1).is_err());
    }
}
