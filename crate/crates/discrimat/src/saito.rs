//! Saito's criterion: certify that a square polynomial matrix is a
//! discriminant matrix for a divisor equation.
//!
//! A matrix A certifies f when det A = c·f for a nonzero rational c, every
//! column field of A is tangent to f = 0 (each entry of (grad f)·A is
//! divisible by f), and f is reduced. Reducedness is tested Monte Carlo and
//! reported separately; certificates carry that caveat.
//!
//! Everything is checked over the polynomial ring. A global polynomial
//! certificate implies the analytic (germ-level) one at every point of the
//! divisor; the converse direction (a divisor failing globally that is
//! still free somewhere locally) is outside what this module decides.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{MultiPoly, Rat};
use crate::univar::probably_squarefree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SquarefreeVerdict {
    True,
    False,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    FreeDivisorCertified,
    Failed,
    Inconclusive,
}

/// Structured verdict of a Saito-criterion check.
#[derive(Debug, Clone, Serialize)]
pub struct SaitoReport {
    pub det_matches: bool,
    /// The constant c with det A = c·f, when it exists (as `n/d` text).
    pub scalar: Option<String>,
    /// 0-based indices of columns where (grad f)·A is not divisible by f.
    pub divisibility_failures: Vec<usize>,
    pub squarefree_verdict: SquarefreeVerdict,
    pub overall: Overall,
    #[serde(skip)]
    pub scalar_value: Option<Rat>,
}

impl SaitoReport {
    pub fn certified(&self) -> bool {
        self.overall == Overall::FreeDivisorCertified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Check det A = c·f and the column-wise logarithmic (tangency) condition.
pub fn check_discriminant_matrix(
    f: &MultiPoly,
    a: &PolyMatrix,
    check_squarefree: bool,
    seed: u64,
) -> Result<SaitoReport> {
    if f.is_zero() {
        return Err(Error::Domain("zero divisor equation".into()));
    }
    let n = f.table().arity();
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, ring has {} variables",
            a.rows(),
            a.cols(),
            n
        )));
    }
    let det = a.determinant()?;
    let scalar_value: Option<Rat> = if det.is_zero() {
        Some(Rat::new(0.into(), 1.into()))
    } else {
        det.divide_exact(f)?.and_then(|q| q.constant_value())
    };
    let det_matches = scalar_value.is_some();

    let grad = f.gradient();
    let mut divisibility_failures = Vec::new();
    for j in 0..n {
        let mut dot = MultiPoly::zero(f.table());
        for (i, gi) in grad.iter().enumerate() {
            dot = dot.try_add(&gi.try_mul(a.get(i, j))?)?;
        }
        if dot.divide_exact(f)?.is_none() {
            divisibility_failures.push(j);
        }
    }

    let squarefree_verdict = if check_squarefree {
        if probably_squarefree(f, 8, seed)? {
            SquarefreeVerdict::True
        } else {
            SquarefreeVerdict::False
        }
    } else {
        SquarefreeVerdict::Skipped
    };

    let nonzero_scalar = scalar_value.as_ref().is_some_and(|c| *c != Rat::new(0.into(), 1.into()));
    let overall = if !det_matches
        || !nonzero_scalar
        || !divisibility_failures.is_empty()
        || squarefree_verdict == SquarefreeVerdict::False
    {
        Overall::Failed
    } else if squarefree_verdict == SquarefreeVerdict::Skipped {
        Overall::Inconclusive
    } else {
        Overall::FreeDivisorCertified
    };

    Ok(SaitoReport {
        det_matches,
        scalar: scalar_value.as_ref().map(ToString::to_string),
        divisibility_failures,
        squarefree_verdict,
        overall,
        scalar_value,
    })
}

/// True iff the vector field with coefficients `chi` is logarithmic for f,
/// i.e. chi(f) is exactly divisible by f.
pub fn check_logarithmic_field(f: &MultiPoly, chi: &[MultiPoly]) -> Result<bool> {
    let n = f.table().arity();
    if chi.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "field has {} coefficients, ring has {} variables",
            chi.len(),
            n
        )));
    }
    let mut dot = MultiPoly::zero(f.table());
    for (i, name) in f.table().names().iter().enumerate() {
        dot = dot.try_add(&chi[i].try_mul(&f.derivative(name)?)?)?;
    }
    Ok(dot.divide_exact(f)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VarTable;
    use std::sync::Arc;

    fn parse(t: &Arc<VarTable>, s: &str) -> MultiPoly {
        MultiPoly::parse(s, t).unwrap()
    }

    #[test]
    fn normal_crossing_certifies() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let f = parse(&t, "x*y");
        let a = PolyMatrix::new(
            2,
            2,
            vec![
                parse(&t, "x"),
                MultiPoly::zero(&t),
                MultiPoly::zero(&t),
                parse(&t, "y"),
            ],
        )
        .unwrap();
        let rep = check_discriminant_matrix(&f, &a, true, 0).unwrap();
        assert!(rep.certified());
        assert_eq!(rep.scalar.as_deref(), Some("1"));
        assert!(rep.divisibility_failures.is_empty());
    }

    #[test]
    fn smooth_divisor_one_variable() {
        let t = VarTable::new(["x"]).unwrap();
        let f = parse(&t, "x");
        let a = PolyMatrix::new(1, 1, vec![parse(&t, "x")]).unwrap();
        let rep = check_discriminant_matrix(&f, &a, true, 0).unwrap();
        assert!(rep.certified());
    }

    #[test]
    fn identity_matrix_fails() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let f = parse(&t, "x*y");
        let a = PolyMatrix::identity(&t, 2);
        let rep = check_discriminant_matrix(&f, &a, true, 0).unwrap();
        assert!(!rep.certified());
        assert!(!rep.det_matches);
        assert_eq!(rep.overall, Overall::Failed);
    }

    #[test]
    fn logarithmic_fields() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let f = parse(&t, "x*y");
        // Euler field always works for homogeneous f
        let euler = vec![parse(&t, "x"), parse(&t, "y")];
        assert!(check_logarithmic_field(&f, &euler).unwrap());
        let chi = vec![parse(&t, "x"), MultiPoly::zero(&t)];
        assert!(check_logarithmic_field(&f, &chi).unwrap());
        let bad = vec![MultiPoly::one(&t), MultiPoly::zero(&t)];
        assert!(!check_logarithmic_field(&f, &bad).unwrap());
        assert!(check_logarithmic_field(&f, &[]).is_err());
    }

    #[test]
    fn scalar_invariance_of_verdict() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let f = parse(&t, "x*y");
        let a = PolyMatrix::new(
            2,
            2,
            vec![
                parse(&t, "x"),
                MultiPoly::zero(&t),
                MultiPoly::zero(&t),
                parse(&t, "y"),
            ],
        )
        .unwrap();
        let r1 = check_discriminant_matrix(&f, &a, true, 3).unwrap();
        let r2 = check_discriminant_matrix(&f.scale(&crate::poly::rat(-7, 2)), &a, true, 3).unwrap();
        assert_eq!(r1.overall, r2.overall);
        assert_ne!(r1.scalar, r2.scalar);
    }

    #[test]
    fn zero_divisor_rejected() {
        let t = VarTable::new(["x"]).unwrap();
        let a = PolyMatrix::identity(&t, 1);
        assert!(check_discriminant_matrix(&MultiPoly::zero(&t), &a, false, 0).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let f = parse(&t, "x*y");
        let a = PolyMatrix::identity(&t, 3);
        assert!(check_discriminant_matrix(&f, &a, false, 0).is_err());
    }
}
