//! Matrices of polynomials: exact determinants and Pfaffians.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat, DEFAULT_TERM_BUDGET};
use crate::vars::{same_table, VarTable};

/// Rectangular matrix of polynomials sharing one variable table, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
    table: Arc<VarTable>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != rows * cols || entries.is_empty() && rows * cols != 0 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let table = match entries.first() {
            Some(e) => Arc::clone(e.table()),
            None => VarTable::new(Vec::<String>::new())?,
        };
        for e in &entries {
            if !same_table(e.table(), &table) {
                return Err(Error::VarMismatch(format!(
                    "matrix entries mix tables {} and {}",
                    table,
                    e.table()
                )));
            }
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
            table,
        })
    }

    pub fn from_fn<F>(table: &Arc<VarTable>, rows: usize, cols: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<MultiPoly>,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        if entries.is_empty() {
            return Ok(PolyMatrix {
                rows,
                cols,
                entries,
                table: Arc::clone(table),
            });
        }
        Self::new(rows, cols, entries)
    }

    pub fn zero(table: &Arc<VarTable>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(table); rows * cols],
            table: Arc::clone(table),
        }
    }

    pub fn identity(table: &Arc<VarTable>, n: usize) -> Self {
        let mut m = Self::zero(table, n, n);
        for i in 0..n {
            *m.get_mut(i, i) = MultiPoly::one(table);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut MultiPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            table: Arc::clone(&self.table),
        }
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.table, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(&self.table);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                *out.get_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(other.entries.iter()) {
            *a = a.try_add(b)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scale(c);
        }
        out
    }

    /// Multiply every entry by a polynomial.
    pub fn scale_poly(&self, p: &MultiPoly) -> Result<PolyMatrix> {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.try_mul(p)?;
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (0..i).all(|j| *self.get(i, j) == self.get(j, i).neg_ref())
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    /// Apply a substitution entrywise.
    pub fn substitute(
        &self,
        target: &Arc<VarTable>,
        assign: &std::collections::BTreeMap<String, MultiPoly>,
    ) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.substitute(target, assign))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            table: Arc::clone(target),
        })
    }

    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(keep_rows.len() * keep_cols.len());
        for &i in keep_rows {
            for &j in keep_cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: keep_rows.len(),
            cols: keep_cols.len(),
            entries,
            table: Arc::clone(&self.table),
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Exact determinant. Cofactor expansion for small sizes, fraction-free
    /// Bareiss elimination (exact divisions only) above that.
    pub fn determinant(&self) -> Result<MultiPoly> {
        self.determinant_budget(DEFAULT_TERM_BUDGET)
    }

    pub fn determinant_budget(&self, budget: usize) -> Result<MultiPoly> {
        let n = self.require_square()?;
        if n <= 4 {
            self.determinant_cofactor_budget(budget)
        } else {
            self.determinant_bareiss_budget(budget)
        }
    }

    pub fn determinant_cofactor(&self) -> Result<MultiPoly> {
        self.determinant_cofactor_budget(DEFAULT_TERM_BUDGET)
    }

    pub fn determinant_cofactor_budget(&self, budget: usize) -> Result<MultiPoly> {
        let n = self.require_square()?;
        fn rec(
            m: &PolyMatrix,
            rows: &[usize],
            cols: &[usize],
            budget: usize,
        ) -> Result<MultiPoly> {
            let table = &m.table;
            match rows.len() {
                0 => Ok(MultiPoly::one(table)),
                1 => Ok(m.get(rows[0], cols[0]).clone()),
                _ => {
                    let mut acc = MultiPoly::zero(table);
                    let sub_rows = &rows[1..];
                    for (k, &cj) in cols.iter().enumerate() {
                        let a = m.get(rows[0], cj);
                        if a.is_zero() {
                            continue;
                        }
                        let rest: Vec<usize> = cols
                            .iter()
                            .enumerate()
                            .filter(|&(t, _)| t != k)
                            .map(|(_, &c)| c)
                            .collect();
                        let minor = rec(m, sub_rows, &rest, budget)?;
                        let term = a.try_mul_budget(&minor, budget)?;
                        acc = if k % 2 == 0 {
                            acc.try_add(&term)?
                        } else {
                            acc.try_sub(&term)?
                        };
                    }
                    Ok(acc)
                }
            }
        }
        let idx: Vec<usize> = (0..n).collect();
        rec(self, &idx, &idx, budget)
    }

    pub fn determinant_bareiss(&self) -> Result<MultiPoly> {
        self.determinant_bareiss_budget(DEFAULT_TERM_BUDGET)
    }

    pub fn determinant_bareiss_budget(&self, budget: usize) -> Result<MultiPoly> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(MultiPoly::one(&self.table));
        }
        let mut m: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = MultiPoly::one(&self.table);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(MultiPoly::zero(&self.table));
                };
                m.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k]
                        .try_mul_budget(&m[i][j], budget)?
                        .try_sub(&m[i][k].try_mul_budget(&m[k][j], budget)?)?;
                    m[i][j] = num
                        .divide_exact(&prev)?
                        .expect("Bareiss division is exact by Sylvester's identity");
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign { det.neg_ref() } else { det })
    }
}

/// Square polynomial matrix with `a_ij = -a_ji` and zero diagonal, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPolyMatrix(PolyMatrix);

impl SkewPolyMatrix {
    pub fn new(m: PolyMatrix) -> Result<Self> {
        let n = m.require_square()?;
        for i in 0..n {
            if !m.get(i, i).is_zero() {
                return Err(Error::SkewViolation { row: i, col: i });
            }
            for j in 0..i {
                if *m.get(i, j) != m.get(j, i).neg_ref() {
                    return Err(Error::SkewViolation { row: i, col: j });
                }
            }
        }
        Ok(SkewPolyMatrix(m))
    }

    /// Build from the strict upper triangle, row by row.
    pub fn from_upper(table: &Arc<VarTable>, n: usize, upper: Vec<MultiPoly>) -> Result<Self> {
        if upper.len() != n * (n - 1) / 2 {
            return Err(Error::DimensionMismatch(format!(
                "skew {n}x{n} needs {} strict-upper entries, got {}",
                n * (n - 1) / 2,
                upper.len()
            )));
        }
        let mut m = PolyMatrix::zero(table, n, n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let e = it.next().unwrap();
                *m.get_mut(i, j) = e.clone();
                *m.get_mut(j, i) = e.neg_ref();
            }
        }
        SkewPolyMatrix::new(m)
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &PolyMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        self.0.get(i, j)
    }

    /// Exact Pfaffian by expansion along the first row. Odd sizes give 0,
    /// the empty matrix gives 1.
    pub fn pfaffian(&self) -> Result<MultiPoly> {
        self.pfaffian_budget(DEFAULT_TERM_BUDGET)
    }

    pub fn pfaffian_budget(&self, budget: usize) -> Result<MultiPoly> {
        let n = self.size();
        let table = self.0.table();
        if n % 2 == 1 {
            return Ok(MultiPoly::zero(table));
        }
        fn rec(m: &PolyMatrix, idx: &[usize], budget: usize) -> Result<MultiPoly> {
            let table = m.table();
            if idx.is_empty() {
                return Ok(MultiPoly::one(table));
            }
            let mut acc = MultiPoly::zero(table);
            let i0 = idx[0];
            for (t, &j) in idx.iter().enumerate().skip(1) {
                let a = m.get(i0, j);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(s, _)| s != 0 && s != t)
                    .map(|(_, &v)| v)
                    .collect();
                let sub = rec(m, &rest, budget)?;
                let term = a.try_mul_budget(&sub, budget)?;
                // sign (-1)^t for the pair (i0, idx[t])
                acc = if t % 2 == 1 {
                    acc.try_add(&term)?
                } else {
                    acc.try_sub(&term)?
                };
            }
            Ok(acc)
        }
        let idx: Vec<usize> = (0..n).collect();
        rec(&self.0, &idx, budget)
    }

    /// For a 5x5 skew matrix: the five Pfaffians of the 4x4 minors obtained
    /// by deleting row and column i, for i = 0..5 in order.
    pub fn principal_sub_pfaffians(&self) -> Result<Vec<MultiPoly>> {
        if self.size() != 5 {
            return Err(Error::DimensionMismatch(format!(
                "principal sub-Pfaffians need size 5, got {}",
                self.size()
            )));
        }
        (0..5)
            .map(|del| {
                let keep: Vec<usize> = (0..5).filter(|&k| k != del).collect();
                let sub = self.0.submatrix(&keep, &keep);
                SkewPolyMatrix::new(sub)?.pfaffian()
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// File format: {"vars": [...], "rows": [["poly", ...], ...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct MatrixFile {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl PolyMatrix {
    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            vars: self.table.names().to_vec(),
            rows: (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
                .collect(),
        }
    }

    pub fn from_file(file: &MatrixFile) -> Result<PolyMatrix> {
        let table = VarTable::new(file.vars.clone())?;
        let rows = file.rows.len();
        let cols = file.rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows * cols);
        for row in &file.rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged matrix rows".into()));
            }
            for s in row {
                entries.push(MultiPoly::parse(s, &table)?);
            }
        }
        PolyMatrix::new(rows, cols, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("matrix serialization")
    }

    pub fn from_json(src: &str) -> Result<PolyMatrix> {
        let file: MatrixFile = serde_json::from_str(src)?;
        Self::from_file(&file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn table(names: &[&str]) -> Arc<VarTable> {
        VarTable::new(names.iter().copied()).unwrap()
    }

    fn parse(t: &Arc<VarTable>, s: &str) -> MultiPoly {
        MultiPoly::parse(s, t).unwrap()
    }

    #[test]
    fn identity_determinant() {
        let t = table(&["x"]);
        let m = PolyMatrix::identity(&t, 3);
        assert_eq!(m.determinant().unwrap(), MultiPoly::one(&t));
    }

    #[test]
    fn diagonal_determinant() {
        let t = table(&["x", "y"]);
        let mut m = PolyMatrix::zero(&t, 2, 2);
        *m.get_mut(0, 0) = parse(&t, "x");
        *m.get_mut(1, 1) = parse(&t, "y");
        assert_eq!(m.determinant().unwrap(), parse(&t, "x*y"));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let t = table(&["x", "y", "z"]);
        let entries = [
            ["x", "y", "1", "z", "0"],
            ["y", "z", "x", "1", "2"],
            ["1", "x", "x", "y", "z"],
            ["0", "1", "y", "x", "y"],
            ["z", "2", "0", "y", "x"],
        ];
        let m = PolyMatrix::from_fn(&t, 5, 5, |i, j| Ok(parse(&t, entries[i][j]))).unwrap();
        let a = m.determinant_bareiss().unwrap();
        let b = m.determinant_cofactor().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn singular_matrix() {
        let t = table(&["x"]);
        let mut m = PolyMatrix::zero(&t, 3, 3);
        for j in 0..3 {
            *m.get_mut(0, j) = parse(&t, "x");
            *m.get_mut(1, j) = parse(&t, "x");
            *m.get_mut(2, j) = parse(&t, "1");
        }
        assert!(m.determinant_bareiss().unwrap().is_zero());
        assert!(m.determinant_cofactor().unwrap().is_zero());
    }

    #[test]
    fn pfaffian_2x2_and_odd() {
        let t = table(&["a"]);
        let a = parse(&t, "a");
        let s = SkewPolyMatrix::from_upper(&t, 2, vec![a.clone()]).unwrap();
        assert_eq!(s.pfaffian().unwrap(), a);
        let s3 =
            SkewPolyMatrix::from_upper(&t, 3, vec![a.clone(), a.clone(), a.clone()]).unwrap();
        assert!(s3.pfaffian().unwrap().is_zero());
    }

    #[test]
    fn pfaffian_4x4_generic() {
        let t = table(&["a12", "a13", "a14", "a23", "a24", "a34"]);
        let names = ["a12", "a13", "a14", "a23", "a24", "a34"];
        let upper: Vec<MultiPoly> = names.iter().map(|n| parse(&t, n)).collect();
        let s = SkewPolyMatrix::from_upper(&t, 4, upper).unwrap();
        let pf = s.pfaffian().unwrap();
        assert_eq!(pf, parse(&t, "a12*a34 - a13*a24 + a14*a23"));
        // pfaffian^2 = determinant
        let det = s.as_matrix().determinant().unwrap();
        assert_eq!(pf.try_mul(&pf).unwrap(), det);
    }

    #[test]
    fn sub_pfaffians_of_generic_pluecker() {
        let names: Vec<String> = (1..=5)
            .flat_map(|i| ((i + 1)..=5).map(move |j| format!("v{i}{j}")))
            .collect();
        let t = VarTable::new(names.clone()).unwrap();
        let upper: Vec<MultiPoly> = names.iter().map(|n| parse(&t, n)).collect();
        let s = SkewPolyMatrix::from_upper(&t, 5, upper).unwrap();
        let pfs = s.principal_sub_pfaffians().unwrap();
        // deleting index 5 (position 4) leaves rows/cols {1,2,3,4}
        assert_eq!(pfs[4], parse(&t, "v12*v34 - v13*v24 + v14*v23"));
        let z = SkewPolyMatrix::from_upper(&t, 5, vec![MultiPoly::zero(&t); 10]).unwrap();
        assert!(z
            .principal_sub_pfaffians()
            .unwrap()
            .iter()
            .all(MultiPoly::is_zero));
    }

    #[test]
    fn skew_invariant_enforced() {
        let t = table(&["a"]);
        let mut m = PolyMatrix::zero(&t, 2, 2);
        *m.get_mut(0, 1) = parse(&t, "a");
        *m.get_mut(1, 0) = parse(&t, "a");
        assert!(SkewPolyMatrix::new(m).is_err());
    }

    #[test]
    fn mul_and_transpose() {
        let t = table(&["r1", "r2"]);
        // M = [[-1,-1],[r2,r1]]; M M^T = [[2, -(r1+r2)], [-(r1+r2), r1^2+r2^2]]
        let m = PolyMatrix::new(
            2,
            2,
            vec![
                MultiPoly::int(&t, -1),
                MultiPoly::int(&t, -1),
                parse(&t, "r2"),
                parse(&t, "r1"),
            ],
        )
        .unwrap();
        let g = m.try_mul(&m.transpose()).unwrap();
        assert_eq!(*g.get(0, 0), MultiPoly::int(&t, 2));
        assert_eq!(*g.get(0, 1), parse(&t, "0 - r1 - r2"));
        assert_eq!(*g.get(1, 1), parse(&t, "r1^2 + r2^2"));
        assert!(g.is_symmetric());
        let id = PolyMatrix::identity(&t, 2);
        assert_eq!(m.try_mul(&id).unwrap(), m);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(
            MultiPoly::int(&t, 2).scale(&rat_int(1)),
            MultiPoly::int(&t, 2)
        );
    }

    #[test]
    fn shape_errors() {
        let t = table(&["x"]);
        let rect = PolyMatrix::zero(&t, 2, 3);
        assert!(matches!(rect.determinant(), Err(Error::NonSquare { .. })));
        assert!(rect.try_mul(&rect).is_err());
        let s = SkewPolyMatrix::from_upper(&t, 3, vec![MultiPoly::zero(&t); 3]).unwrap();
        assert!(s.principal_sub_pfaffians().is_err());
    }

    #[test]
    fn json_roundtrip() {
        let t = table(&["x", "y"]);
        let m = PolyMatrix::from_fn(&t, 2, 2, |i, j| {
            Ok(if i == j {
                parse(&t, "x*y - 1")
            } else {
                parse(&t, "3/2*y")
            })
        })
        .unwrap();
        let m2 = PolyMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(m, m2);
    }
}
