//! CPR graphs: parse the rank-6 Alt(11) graphs, inspect components of label
//! subsets, and convert to permutations and back.
//!
//! cargo run --release --example cpr_graphs

use stringc::constructions::builtin_source;
use stringc::cpr::{cpr_emit, cpr_parse, cpr_to_rep, rep_to_cpr};
use stringc::sggi::{verify, VerifyOptions};

fn main() -> stringc::Result<()> {
    for name in ["A11-rank6-1", "A11-rank6-2", "A11-rank6-3"] {
        let graph = cpr_parse(builtin_source(name).expect("bundled"))?;
        println!("{name}: {} nodes, {} edges", graph.nodes(), graph.edges().len());
        for skip in [0, graph.rank() - 1] {
            let labels: Vec<usize> = (0..graph.rank()).filter(|&l| l != skip).collect();
            println!("  labels {labels:?}: components {:?}", graph.connectivity(&labels)?);
        }
        let rep = cpr_to_rep(&graph);
        let report = verify(&rep, &VerifyOptions::default())?;
        println!("  type {} order {}", report.schlafli, report.group_order.unwrap_or_default());
        assert_eq!(cpr_emit(&rep_to_cpr(&rep)?), cpr_emit(&graph.clone().with_label(name)));
    }
    Ok(())
}
