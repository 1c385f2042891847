//! Property tests for the symbolic kernel: canonical-form arithmetic, the
//! Leibniz rule, exact division against an independent linear-system
//! oracle, Pfaffian/determinant consistency, resultant multiplicativity,
//! and the Weierstrass-algebra derivation law.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;

use discrimat::bezout::{self, Convention};
use discrimat::matrix::{PolyMatrix, SkewPolyMatrix};
use discrimat::poly::{rat, Monomial, MultiPoly, Rat};
use discrimat::saito;
use discrimat::univar::sylvester_resultant;
use discrimat::vars::VarTable;
use discrimat::wp::{self, WElement};

fn xyz() -> Arc<VarTable> {
    VarTable::new(["x", "y", "z"]).unwrap()
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, 3), arb_rat()),
        0..=max_terms,
    )
    .prop_map(|terms| {
        let t = xyz();
        let mut p = MultiPoly::zero(&t);
        for (exps, c) in terms {
            let m = MultiPoly::monomial(&t, Monomial::from_exponents(exps), c).unwrap();
            p = p.try_add(&m).unwrap();
        }
        p
    })
}

// ---------------------------------------------------------------------------
// independent oracle for exact division: solvability of the linear system
// q * f = g in the unknown coefficients of q
// ---------------------------------------------------------------------------

fn monomials_up_to(table: &Arc<VarTable>, deg: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let d = deg as u32;
    for a in 0..=d {
        for b in 0..=(d - a) {
            for c in 0..=(d - a - b) {
                out.push(Monomial::from_exponents(vec![a, b, c]));
            }
        }
    }
    let _ = table;
    out
}

/// Gaussian elimination over Q: is `a x = b` consistent?
fn solvable(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> bool {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        b.swap(pivot_row, p);
        let inv = a[pivot_row][col].clone();
        for r in 0..rows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..cols {
                let delta = &factor * &a[pivot_row][c];
                a[r][c] = &a[r][c] - &delta;
            }
            let delta = &factor * &b[pivot_row];
            b[r] = &b[r] - &delta;
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // consistent iff no zero row has nonzero rhs
    for r in 0..rows {
        if a[r].iter().all(Zero::is_zero) && !b[r].is_zero() {
            return false;
        }
    }
    true
}

/// Brute-force divisibility: does any q with deg q <= deg g - deg f
/// satisfy q f = g?
fn divisible_by_linear_system(g: &MultiPoly, f: &MultiPoly) -> bool {
    if g.is_zero() {
        return true;
    }
    let (dg, df) = (g.total_degree().unwrap(), f.total_degree().unwrap());
    if dg < df {
        return false;
    }
    let candidates = monomials_up_to(g.table(), dg - df);
    // row per monomial that can appear in q*f or g
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, Rat)>> = Vec::new();
    for q_mono in &candidates {
        let shifted = f
            .terms()
            .map(|(m, c)| (m.mul(q_mono), c.clone()))
            .collect::<Vec<_>>();
        let mut col = Vec::new();
        for (m, c) in shifted {
            let next = row_index.len();
            let idx = *row_index.entry(m).or_insert(next);
            col.push((idx, c));
        }
        columns.push(col);
    }
    for (m, _) in g.terms() {
        let next = row_index.len();
        row_index.entry(m.clone()).or_insert(next);
    }
    let rows = row_index.len();
    let mut a = vec![vec![Rat::zero(); candidates.len()]; rows];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            a[*i][j] = &a[*i][j] + c;
        }
    }
    let mut b = vec![Rat::zero(); rows];
    for (m, c) in g.terms() {
        b[row_index[m]] = c.clone();
    }
    solvable(a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_cancellation(p in arb_poly(6, 3), q in arb_poly(6, 3)) {
        let sum = p.try_add(&q).unwrap();
        let back = sum.try_sub(&q).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), p.to_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn leibniz_rule(p in arb_poly(5, 3), q in arb_poly(5, 3)) {
        let prod = p.try_mul(&q).unwrap();
        let lhs = prod.derivative("y").unwrap();
        let rhs = p
            .derivative("y")
            .unwrap()
            .try_mul(&q)
            .unwrap()
            .try_add(&p.try_mul(&q.derivative("y").unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // exact products divide back to the quotient
    #[test]
    fn division_recovers_quotient(f in arb_poly(4, 2), q in arb_poly(4, 2)) {
        prop_assume!(!f.is_zero());
        let g = q.try_mul(&f).unwrap();
        let got = g.divide_exact(&f).unwrap().expect("product divides");
        prop_assert_eq!(got, q);
    }

    // the division verdict agrees with the linear-system oracle
    #[test]
    fn division_verdict_matches_oracle(g in arb_poly(4, 2), f in arb_poly(3, 1)) {
        prop_assume!(!f.is_zero());
        prop_assume!(g.total_degree().unwrap_or(0) <= 4);
        let verdict = g.divide_exact(&f).unwrap();
        if let Some(q) = &verdict {
            prop_assert_eq!(q.try_mul(&f).unwrap(), g.clone());
        }
        prop_assert_eq!(verdict.is_some(), divisible_by_linear_system(&g, &f));
    }
}

fn arb_unipoly(deg: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = MultiPoly> {
    (deg, prop::collection::vec(arb_rat(), 4), 1i64..=9).prop_map(|(d, coeffs, lead)| {
        let t = VarTable::new(["x"]).unwrap();
        let x = MultiPoly::var(&t, "x").unwrap();
        let mut p = x.pow(d as u32, usize::MAX).unwrap().scale(&rat(lead, 1));
        for (k, c) in coeffs.into_iter().take(d).enumerate() {
            p = p
                .try_add(&x.pow(k as u32, usize::MAX).unwrap().scale(&c))
                .unwrap();
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn resultant_multiplicative(
        f1 in arb_unipoly(1..=3),
        f2 in arb_unipoly(1..=3),
        g in arb_unipoly(1..=3),
    ) {
        let prod = f1.try_mul(&f2).unwrap();
        let lhs = sylvester_resultant(&prod, &g, "x").unwrap();
        let rhs = sylvester_resultant(&f1, &g, "x")
            .unwrap()
            .try_mul(&sylvester_resultant(&f2, &g, "x").unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn arb_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(arb_poly(2, 1), n * n).prop_map(move |entries| {
        let t = xyz();
        let entries = entries
            .into_iter()
            .map(|p| p.embed(&t).unwrap())
            .collect::<Vec<_>>();
        PolyMatrix::new(n, n, entries).unwrap()
    })
}

fn arb_skew(n: usize) -> impl Strategy<Value = SkewPolyMatrix> {
    prop::collection::vec(arb_poly(2, 1), n * (n - 1) / 2).prop_map(move |upper| {
        SkewPolyMatrix::from_upper(&xyz(), n, upper).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pfaffian_squares_to_determinant(s2 in arb_skew(2), s4 in arb_skew(4), s6 in arb_skew(6)) {
        for s in [&s2, &s4, &s6] {
            let pf = s.pfaffian().unwrap();
            let det = s.as_matrix().determinant().unwrap();
            prop_assert_eq!(pf.try_mul(&pf).unwrap(), det);
        }
    }

    #[test]
    fn determinant_transpose_and_repeated_row(m in arb_matrix(3)) {
        let d = m.determinant().unwrap();
        prop_assert_eq!(&d, &m.transpose().determinant().unwrap());
        // overwrite the last row with the first: determinant dies
        let mut degenerate = m.clone();
        for j in 0..3 {
            *degenerate.get_mut(2, j) = m.get(0, j).clone();
        }
        prop_assert!(degenerate.determinant().unwrap().is_zero());
    }

    #[test]
    fn bareiss_agrees_with_cofactor(m in arb_matrix(4), m5 in arb_matrix(5)) {
        prop_assert_eq!(
            m.determinant_bareiss().unwrap(),
            m.determinant_cofactor().unwrap()
        );
        prop_assert_eq!(
            m5.determinant_bareiss().unwrap(),
            m5.determinant_cofactor().unwrap()
        );
    }
}

fn arb_wpart() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=2u32, 3), arb_rat()), 0..=3).prop_map(
        |terms| {
            let t = wp::w_table();
            let mut p = MultiPoly::zero(&t);
            for (exps, c) in terms {
                p = p
                    .try_add(&MultiPoly::monomial(&t, Monomial::from_exponents(exps), c).unwrap())
                    .unwrap();
            }
            p
        },
    )
}

fn arb_welement() -> impl Strategy<Value = WElement> {
    (arb_wpart(), arb_wpart()).prop_map(|(a, b)| WElement::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn w_algebra_derivation_law(e1 in arb_welement(), e2 in arb_welement()) {
        let lhs = e1.mul(&e2).d_dz();
        let rhs = e1.d_dz().mul(&e2).add(&e1.mul(&e2.d_dz()));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }
}

// ---------------------------------------------------------------------------
// deterministic structural properties
// ---------------------------------------------------------------------------

#[test]
fn saito_verdict_is_permutation_invariant() {
    let t = VarTable::new(["s1", "s2", "s3"]).unwrap();
    let mut assign = BTreeMap::new();
    assign.insert("s0".to_string(), MultiPoly::one(&t));
    let bp1 = bezout::modified_bezout_matrix(3, Convention::XMinusY)
        .unwrap()
        .substitute(&t, &assign)
        .unwrap();
    let f = bp1.determinant().unwrap();
    let base = saito::check_discriminant_matrix(&f, &bp1, true, 9).unwrap();
    assert!(base.certified());
    for perm in [[1usize, 0, 2], [2, 1, 0], [1, 2, 0]] {
        let permuted = PolyMatrix::from_fn(&t, 3, 3, |i, j| Ok(bp1.get(i, perm[j]).clone())).unwrap();
        let rep = saito::check_discriminant_matrix(&f, &permuted, true, 9).unwrap();
        assert_eq!(rep.certified(), base.certified(), "perm {perm:?}");
    }
}

#[test]
fn certified_matrix_columns_are_logarithmic_fields() {
    let t = VarTable::new(["s1", "s2", "s3"]).unwrap();
    let mut assign = BTreeMap::new();
    assign.insert("s0".to_string(), MultiPoly::one(&t));
    let bp1 = bezout::modified_bezout_matrix(3, Convention::XMinusY)
        .unwrap()
        .substitute(&t, &assign)
        .unwrap();
    let f = bp1.determinant().unwrap();
    assert!(saito::check_discriminant_matrix(&f, &bp1, true, 3)
        .unwrap()
        .certified());
    for j in 0..3 {
        let chi: Vec<MultiPoly> = (0..3).map(|i| bp1.get(i, j).clone()).collect();
        assert!(
            saito::check_logarithmic_field(&f, &chi).unwrap(),
            "column {j} is not logarithmic"
        );
    }
}

#[test]
fn gram_matrix_is_positive_definite_at_real_roots() {
    let mut seeds = 0u64;
    for n in [3u32, 4] {
        let (_, g) = bezout::gram_matrix_from_roots(n).unwrap();
        let tr = bezout::r_table(n);
        for _ in 0..5 {
            seeds += 1;
            // distinct rational roots
            let roots: Vec<Rat> = (0..n)
                .map(|k| rat(seeds as i64 + 3 * k as i64 + 1, 2))
                .collect();
            let mut assign = BTreeMap::new();
            for (k, r) in roots.iter().enumerate() {
                assign.insert(
                    format!("r{}", k + 1),
                    MultiPoly::constant(&tr, r.clone()),
                );
            }
            let gv = g.substitute(&tr, &assign).unwrap();
            // exact leading principal minors must be strictly positive
            for size in 1..=n as usize {
                let keep: Vec<usize> = (0..size).collect();
                let minor = gv.submatrix(&keep, &keep).determinant().unwrap();
                let value = minor.constant_value().unwrap();
                assert!(
                    value > Rat::zero(),
                    "minor {size} not positive for n = {n}: {value}"
                );
            }
        }
    }
}

#[test]
fn probably_squarefree_on_discriminant() {
    // the cubic discriminant surface is reduced
    let t = VarTable::new(["s1", "s2", "s3"]).unwrap();
    let mut assign = BTreeMap::new();
    assign.insert("s0".to_string(), MultiPoly::one(&t));
    let bp1 = bezout::modified_bezout_matrix(3, Convention::XMinusY)
        .unwrap()
        .substitute(&t, &assign)
        .unwrap();
    let delta = bp1.determinant().unwrap();
    assert!(discrimat::univar::probably_squarefree(&delta, 8, 11).unwrap());
    // and its square is detected as non-squarefree
    let sq = delta.try_mul(&delta).unwrap();
    assert!(!discrimat::univar::probably_squarefree(&sq, 8, 11).unwrap());
}
