//! Exhaustive search for string C-group representations of small dihedral groups.
//! Rank 2 always succeeds and rank 3 never does.
//!
//! cargo run --release --example dihedral_search

use stringc::perm::{ElementBudget, PermGroup, Permutation};
use stringc::sggi::search_reps;

fn dihedral(n: usize) -> stringc::Result<PermGroup> {
    let rotation: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    let flip: Vec<usize> = (1..=n).map(|i| (n + 1 - i) % n + 1).collect();
    PermGroup::new(n, vec![Permutation::from_images(&rotation)?, Permutation::from_images(&flip)?])
}

fn main() -> stringc::Result<()> {
    for n in [3, 4, 5, 6] {
        let g = dihedral(n)?;
        let rank2 = search_reps(&g, 2, ElementBudget::default())?;
        let rank3 = search_reps(&g, 3, ElementBudget::default())?;
        println!("D{} (order {}): rank 2 -> {}, rank 3 -> {}", 2 * n, g.order(), rank2.len(), rank3.len());
        if let Some(r) = rank2.first() {
            println!("  e.g. {} {}", r.generators()[0], r.generators()[1]);
        }
    }
    Ok(())
}
