//! Comparison of empirical branching matrices with the reference tables,
//! reconstruction of polynomial entries across primes, a brute-force
//! commuting-probability oracle, and checks of centralizer isomorphisms.

mod claims;
mod cp;
mod interpolate;
mod invariants;
mod matching;
mod oracle;
mod report;

pub use claims::{a3_forms, check_iso_claims, ClaimCheck, ClaimReport, Form};
pub use cp::{cp_audit, empirical_cp, CpAudit, CpPoint};
pub use interpolate::{interpolate_aligned, reference_degree, InterpolatedEntry, InterpolationResult};
pub use invariants::{
    abelian_diagonal_law, class_equation, column_sum_law, determinism, run_invariants, well_definedness,
    InvariantResult, BURNSIDE_LIMIT,
};
pub use matching::{match_matrices, match_or_partial, match_registry, Assignment, CellDiff, MatchResult, MatchStatus};
pub use oracle::{oracle_commuting_probability, oracle_guard, ORACLE_GUARD_LARGE_K, ORACLE_GUARD_SMALL_K};
pub use report::{build_report, verify_group, Timings, VerifyReport, REPORT_SCHEMA_VERSION};

use crate::branching::{compute_branching, BranchingOptions};
use crate::error::Result;
use crate::reference::reference_matrix;
use crate::trigroup::{Family, GroupSpec};

/// Groups and primes checked by a full verification run.
pub const ACCEPTANCE_GRID: [(Family, usize, &[u32]); 6] = [
    (Family::Gt, 2, &[3, 5, 7, 11, 13]),
    (Family::Gt, 3, &[3, 5, 7]),
    (Family::Gt, 4, &[3, 5]),
    (Family::Ut, 3, &[3, 5, 7, 11, 13]),
    (Family::Ut, 4, &[3, 5, 7, 11, 13]),
    (Family::Ut, 5, &[3]),
];

/// Computes the empirical matrix at each prime, aligns each with the
/// reference and interpolates every entry. Empirical types left unlabelled
/// at a prime contribute no samples there.
pub fn interpolate_matrix(
    family: Family,
    n: usize,
    primes: &[u32],
    degree_bound: usize,
    opts: &BranchingOptions,
) -> Result<InterpolationResult> {
    let needed = degree_bound + 1;
    if primes.len() < needed {
        return Err(crate::Error::InsufficientPoints {
            needed,
            got: primes.len(),
        });
    }
    let reference = reference_matrix(family, n)?;
    let mut data = Vec::with_capacity(primes.len());
    for &q in primes {
        let (reg, m) = compute_branching(&GroupSpec::new(family, n, q)?, opts)?;
        let r = match_registry(&reg, &reference)?;
        data.push((m, r));
    }
    let samples: Vec<_> = data.iter().map(|(m, r)| (m, r)).collect();
    interpolate_aligned(&reference, &samples, degree_bound)
}
