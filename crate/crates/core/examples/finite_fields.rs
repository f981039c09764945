//! Arithmetic in GF(p^k) and matrix orders over it.
//!
//! cargo run --example finite_fields

use stringc::ffmatrix::{FiniteField, Matrix};

fn main() -> stringc::Result<()> {
    let gf4 = FiniteField::new(2, 2, None)?;
    let x = gf4.from_coeffs(&[0, 1]);
    println!("GF(4) modulus {:?}", gf4.modulus());
    println!("x*x = {:?} (coefficients c0, c1)", gf4.coeffs(gf4.mul(x, x)));
    println!("x^-1 = {:?}", gf4.coeffs(gf4.inv(x)?));

    let gf9 = FiniteField::new(3, 2, None)?;
    println!("GF(9) modulus {:?}", gf9.modulus());
    let mult_orders: Vec<u32> = gf9
        .elements()
        .skip(1)
        .map(|a| {
            let mut k = 1;
            let mut p = a;
            while p != 1 {
                p = gf9.mul(p, a);
                k += 1;
            }
            k
        })
        .collect();
    println!("multiplicative orders in GF(9): {mult_orders:?}");

    let f3 = FiniteField::prime(3)?;
    let m = Matrix::from_rows(&f3, vec![vec![0, 1], vec![2, 2]])?;
    println!(
        "over GF(3): det {} order {:?}",
        m.determinant(&f3),
        m.order(&f3)
    );
    Ok(())
}
