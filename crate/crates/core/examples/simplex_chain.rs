//! Iterated left reduction of the simplex representation of Sym(m), down to rank 3.
//!
//! cargo run --release --example simplex_chain -- 7

use stringc::constructions::simplex_rep;
use stringc::rankred::{reduce_iterate, Direction, ReduceOptions};

fn main() -> stringc::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let rep = simplex_rep(m)?;
    let chain = reduce_iterate(&rep, 3, Direction::Left, true, &ReduceOptions::default())?;
    println!("Sym({m}) ranks {:?}: {}", chain.ranks(), chain.stop);
    for step in &chain.steps {
        let o = &step.outcome;
        let verified = step.verification.as_ref().is_some_and(|v| v.is_string_c_group);
        println!(
            "  {} -> {}  order {}  guaranteed {}  verified {}",
            o.input_schlafli, o.reduced_schlafli, o.reduced_order, o.guaranteed, verified
        );
        for g in o.reduced.generators() {
            print!(" {g}");
        }
        println!();
    }
    Ok(())
}
