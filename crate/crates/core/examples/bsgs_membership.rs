//! Schreier–Sims on a few classical permutation groups, with membership
//! tests by sifting.
//!
//! cargo run --example bsgs_membership

use stringc::perm::{PermGroup, Permutation};

fn perm(degree: usize, cycles: &str) -> Permutation {
    Permutation::parse_cycles(degree, cycles).expect("valid cycle notation")
}

fn main() -> stringc::Result<()> {
    // PSL(2,7) acting on the 7 points of the Fano plane.
    let psl27 = PermGroup::new(7, vec![perm(7, "(1,2,3,4,5,6,7)"), perm(7, "(1,2)(3,6)")])?;
    let chain = psl27.bsgs();
    println!("PSL(2,7): order {} base {:?} basic orbits {:?}", psl27.order(), chain.base(), chain.orbit_lengths());
    for x in ["(1,2)", "(1,2)(3,6)", "(2,3)(4,7)", "(1,2,3)"] {
        println!("  contains {x:<16} {}", psl27.contains(&perm(7, x))?);
    }

    // Sym(12) from a transposition and a long cycle.
    let sym12 = PermGroup::new(12, vec![perm(12, "(1,2)"), perm(12, "(1,2,3,4,5,6,7,8,9,10,11,12)")])?;
    println!("Sym(12): order {}", sym12.order());

    let split = PermGroup::new(8, vec![perm(8, "(1,2)(5,6)"), perm(8, "(2,3)"), perm(8, "(6,7,8)")])?;
    println!("orbits of an intransitive group: {:?}", split.orbits());
    println!("transitive: {}", split.is_transitive());
    Ok(())
}
