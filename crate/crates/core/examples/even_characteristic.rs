//! An orthogonal group over GF(4) supplied as a generator file. Every entry of its
//! type is 2^k+1 = 5.
//!
//! cargo run --release --example even_characteristic

use stringc::constructions::builtin_example;
use stringc::rankred::{odd_power_identity, reduce_iterate, Direction, ReduceOptions};
use stringc::sggi::{verify, VerifyOptions};

fn main() -> stringc::Result<()> {
    let rep = builtin_example("O4plus4")?;
    let report = verify(&rep, &VerifyOptions::default())?;
    println!(
        "O4plus4: degree {} type {} order {} string C-group {}",
        rep.degree(),
        report.schlafli,
        report.group_order.as_deref().unwrap_or("?"),
        report.is_string_c_group
    );
    println!("((r0 r2) r3)^|r2 r3| == r0: {:?}", odd_power_identity(&rep));
    let chain = reduce_iterate(&rep, 3, Direction::Left, true, &ReduceOptions::default())?;
    for step in &chain.steps {
        println!(
            "  -> {} guaranteed {} preserved {}",
            step.outcome.reduced_schlafli, step.outcome.guaranteed, step.outcome.group_preserved
        );
    }
    println!("stop: {}", chain.stop);
    Ok(())
}
