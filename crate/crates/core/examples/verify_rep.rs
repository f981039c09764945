//! Verify a representation file or built-in example with both methods.
//!
//! cargo run --release --example verify_rep -- [path-or-name]
//!
//! With no argument every bundled fixture is checked.

use std::time::Instant;

use stringc::cli::load;
use stringc::constructions::FIXTURES;
use stringc::perm::ElementBudget;
use stringc::sggi::{verify, Method, VerifyOptions};

fn main() -> stringc::Result<()> {
    let names: Vec<String> = match std::env::args().nth(1) {
        Some(arg) => vec![arg],
        None => FIXTURES.iter().map(|(n, _)| n.to_string()).collect(),
    };
    for name in names {
        let rep = load(&name, ElementBudget::default())?.into_rep();
        for method in [Method::Recursive, Method::Exhaustive] {
            let start = Instant::now();
            let report = verify(&rep, &VerifyOptions::with_method(method))?;
            println!(
                "{name:<12} {method:?}: type {} string C-group {} ({:.1?})",
                report.schlafli,
                report.is_string_c_group,
                start.elapsed()
            );
            if let Some(w) = report.failure_witness {
                println!("  witness: {w}");
            }
        }
    }
    Ok(())
}
