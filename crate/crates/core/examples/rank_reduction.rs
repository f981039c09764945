//! Single reduction steps and their flags on the bundled fixtures, in both directions.
//!
//! cargo run --release --example rank_reduction

use stringc::constructions::builtin_example;
use stringc::rankred::{guaranteed_run_length, odd_power_identity, reduce_once, Direction, ReduceOptions, RunVariant};
use stringc::sggi::{schlafli_type, verify, VerifyOptions};

fn main() -> stringc::Result<()> {
    for name in ["O4minus3", "O4plus4", "A11-rank6-1", "A11-rank6-2", "A11-rank6-3", "simplex6"] {
        let rep = builtin_example(name)?;
        let ty = schlafli_type(&rep)?;
        println!(
            "{name}: type {ty}, run length paper {:?} shifted {:?}, odd identity {:?}",
            guaranteed_run_length(&ty, RunVariant::Paper)?,
            guaranteed_run_length(&ty, RunVariant::Shifted)?,
            odd_power_identity(&rep)
        );
        for direction in [Direction::Left, Direction::Right] {
            let o = reduce_once(&rep, direction, &ReduceOptions::default())?;
            let verified = o.group_preserved && verify(&o.reduced, &VerifyOptions::default())?.is_string_c_group;
            println!(
                "  {direction:<5} -> {}  theorem {} odd {} preserved {} guaranteed {} orbits {} verified {}",
                o.reduced_schlafli,
                o.theorem_condition,
                o.odd_condition,
                o.group_preserved,
                o.guaranteed,
                o.reduced.group().orbits().len(),
                verified
            );
        }
    }
    Ok(())
}
