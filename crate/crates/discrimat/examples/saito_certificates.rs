//! Certify discriminant matrices: a matrix A certifies the divisor f = 0
//! when det A is a nonzero constant multiple of f, every column field is
//! tangent (each entry of (grad f)·A is divisible by f), and f is reduced.
//!
//! Run with: cargo run --example saito_certificates

use std::collections::BTreeMap;

use discrimat::bezout::{modified_bezout_matrix, Convention};
use discrimat::matrix::PolyMatrix;
use discrimat::saito::check_discriminant_matrix;
use discrimat::vars::VarTable;
use discrimat::MultiPoly;

fn main() -> discrimat::Result<()> {
    // the normal crossing divisor x y = 0 with its diagonal matrix
    let t = VarTable::new(["x", "y"])?;
    let f = MultiPoly::parse("x*y", &t)?;
    let diag = PolyMatrix::new(
        2,
        2,
        vec![
            MultiPoly::parse("x", &t)?,
            MultiPoly::zero(&t),
            MultiPoly::zero(&t),
            MultiPoly::parse("y", &t)?,
        ],
    )?;
    let rep = check_discriminant_matrix(&f, &diag, true, 0)?;
    println!("normal crossing x*y with diag(x, y):\n{}\n", rep.to_json());

    // the identity matrix certifies nothing
    let bad = check_discriminant_matrix(&f, &PolyMatrix::identity(&t, 2), true, 0)?;
    println!("same divisor with the identity matrix: overall = {:?}\n", bad.overall);

    // the discriminant of the monic cubic with its modified Bezout matrix
    let ts = VarTable::new(["s1", "s2", "s3"])?;
    let mut assign = BTreeMap::new();
    assign.insert("s0".to_string(), MultiPoly::one(&ts));
    let bp1 = modified_bezout_matrix(3, Convention::XMinusY)?.substitute(&ts, &assign)?;
    let delta = bp1.determinant()?;
    println!("cubic discriminant = {delta}");
    let rep = check_discriminant_matrix(&delta, &bp1, true, 42)?;
    println!("its Bezout matrix certifies it:\n{}", rep.to_json());
    Ok(())
}
