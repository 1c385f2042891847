//! The three skew 5x5 matrices of the quintic elliptic cone: M (whose
//! sub-Pfaffians cut the cone), L (the dual parametrization), N (the
//! deformation directions), their coefficient maps, and the family L + tN.
//!
//! Run with: cargo run --example pfaffian_families

use discrimat::a4::{
    self, coefficient_map_of, curve_images_x, curve_images_y, exactness_checks, family_pfaffians,
    matrix_l, matrix_m, matrix_n,
};
use discrimat::wp::poly_to_w;

fn main() -> discrimat::Result<()> {
    let m = matrix_m();
    let l = matrix_l();
    let n = matrix_n();
    println!("M[1][2] = {}", m.get(0, 1));
    println!("L[1][2] = {}", l.get(0, 1));
    println!("N[4][5] = {}", n.get(3, 4));

    println!("\nsub-Pfaffians of M under (y0, y2..y5) -> (1, wp, wp', wp'', wp'''):");
    for (i, pf) in m.principal_sub_pfaffians()?.iter().enumerate() {
        let image = poly_to_w(pf, &curve_images_y())?;
        println!("  delete {}: {} terms -> {}", i + 1, pf.num_terms(), image);
    }

    println!("\nsub-Pfaffians of L under the dual parametrization:");
    for (i, pf) in l.principal_sub_pfaffians()?.iter().enumerate() {
        let image = poly_to_w(pf, &curve_images_x())?;
        println!("  delete {}: vanishes: {}", i + 1, image.is_zero());
    }

    println!("\ncoefficient maps and the splitting:");
    let mt = coefficient_map_of(&m, &["y0", "y2", "y3", "y4", "y5"])?;
    println!("  M-map is {}x{}", mt.rows(), mt.cols());
    print!("{}", exactness_checks()?.summary());
    println!("  measured splitting constant: {:?}", a4::splitting_constant()?);

    println!("\nfamily L + t N: five sub-Pfaffians, quadratic in (x, s):");
    for (i, pf) in family_pfaffians(true)?.iter().enumerate() {
        println!("  pfaffian {}: {} terms", i + 1, pf.num_terms());
    }
    Ok(())
}
