//! Build the orthogonal representation of type [4,4,6] from a Gram matrix and
//! signed reflections, print its matrices, and verify it.
//!
//! cargo run --release --example reflection_rep

use stringc::constructions::reflection_rep;
use stringc::ffmatrix::{BilinearForm, FiniteField, Matrix};
use stringc::perm::ElementBudget;
use stringc::sggi::{verify, Engine, VerifyOptions};

fn main() -> stringc::Result<()> {
    let f3 = FiniteField::prime(3)?;
    let gram = Matrix::from_rows(
        &f3,
        vec![vec![1, 1, 0, 0], vec![1, 2, 1, 0], vec![0, 1, 1, 2], vec![0, 0, 2, 1]],
    )?;
    let form = BilinearForm::new(f3, gram)?;
    let basis: Vec<Vec<u32>> = (0..4).map(|i| (0..4).map(|j| u32::from(i == j)).collect()).collect();
    let rep = reflection_rep(&form, &basis, &[1, -1, 1, -1], ElementBudget::default())?;

    if let Engine::Matrix(m) = rep.engine() {
        for (i, g) in m.gens.iter().enumerate() {
            println!("rho{i} = {:?}  isometry: {}", g.rows(), form.is_isometry(g)?);
        }
    }
    println!("acting on {} nonzero vectors", rep.degree());
    let report = verify(&rep, &VerifyOptions::default())?;
    println!(
        "type {} order {} string C-group {}",
        report.schlafli,
        report.group_order.as_deref().unwrap_or("?"),
        report.is_string_c_group
    );
    Ok(())
}
