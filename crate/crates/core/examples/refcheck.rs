//! Prints the reference self-checks and symbolic commuting probabilities.

use branchix::reference::{cp_symbolic, reference_matrix, GROUPS};

fn main() {
    for (family, n) in GROUPS {
        let m = reference_matrix(family, n).expect("reference");
        println!("{family}_{n}");
        for c in m.self_check() {
            println!("  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
            for f in &c.failures {
                println!("      {f}");
            }
        }
        for k in 2..=5 {
            let c = cp_symbolic(family, n, k).expect("cp");
            println!("  cp_{k}: {}", if c.agrees { "agrees" } else { "DIFFERS" });
            if !c.agrees {
                println!("      derived ({}) / ({})", c.numerator, c.denominator);
            }
        }
    }
}
