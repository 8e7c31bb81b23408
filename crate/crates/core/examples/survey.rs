//! Prints the type registry and branching matrix of one group.
//!
//! Usage: `cargo run --release --example survey -- gt 3 5 [--referee]`

use std::time::Instant;

use branchix::branching::{compute_branching, BranchingOptions};
use branchix::{Family, GroupSpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: Family = args.first().map_or("ut", String::as_str).parse().expect("family");
    let n: usize = args.get(1).map_or(Ok(3), |s| s.parse()).expect("n");
    let q: u32 = args.get(2).map_or(Ok(3), |s| s.parse()).expect("q");
    let spec = GroupSpec::new(family, n, q).expect("group");
    let start = Instant::now();
    let referee = args.iter().any(|a| a == "--referee");
    let opts = BranchingOptions {
        referee,
        alternates: if referee { usize::MAX } else { 2 },
        ..BranchingOptions::default()
    };
    let (reg, m) = compute_branching(&spec, &opts).expect("branching");
    println!("{} types in {:.2?}", reg.len(), start.elapsed());
    for t in &reg.types {
        println!(
            "type {:2}: order {:>10} classes {:>6} zclasses {:>6} depth {} abelian {} alternates {}",
            t.id,
            t.order,
            t.class_count,
            t.centralizer_class_count,
            t.depth,
            t.fingerprint.is_abelian,
            t.alternates.len()
        );
    }
    for row in &m.entries {
        println!("{}", row.iter().map(|v| format!("{v:>6}")).collect::<String>());
    }
}
