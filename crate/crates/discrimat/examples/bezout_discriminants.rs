//! Build the Bezout matrix B and the modified matrix B' of the universal
//! polynomial, then watch the identities that tie them to the classical
//! discriminant.
//!
//! Run with: cargo run --example bezout_discriminants

use discrimat::bezout::{
    bezout_matrix, modified_bezout_matrix, universal_polynomial, verify_section5, Convention,
};
use discrimat::MultiPoly;

fn main() -> discrimat::Result<()> {
    let conv = Convention::XMinusY;

    for n in 2..=4u32 {
        let up = universal_polynomial(n)?;
        println!("n = {n}: F(u, v) = {}", up.poly);

        let b = bezout_matrix(n, conv)?;
        let bp = modified_bezout_matrix(n, conv)?;
        println!("  B is {}x{}, B' is {}x{}", b.rows(), b.cols(), bp.rows(), bp.cols());
        if n == 2 {
            println!("  B = [{}]", b.get(0, 0));
            for i in 0..2 {
                println!(
                    "  B'[{i}] = [{}, {}]",
                    bp.get(i, 0),
                    bp.get(i, 1)
                );
            }
        }

        let det_b = b.determinant()?;
        let det_bp = bp.determinant()?;
        println!("  det B  = {det_b}");

        // the exact relation carries the constant n^(n-2); the constant 1
        // printed in the classical statement is correct only for n = 2
        let s0 = MultiPoly::var(bp.table(), "s0")?;
        let rhs = s0.try_mul(&s0)?.try_mul(&det_b)?;
        let q = rhs.divide_exact(&det_bp)?.and_then(|r| r.constant_value());
        println!(
            "  s0^2 det B / det B' = {} (n^(n-2) = {})",
            q.map_or("not proportional".into(), |v| v.to_string()),
            (n as i64).pow(n - 2)
        );

        let report = verify_section5(n, conv, 4, 7)?;
        print!("{}", report.summary());
        println!();
    }
    Ok(())
}
