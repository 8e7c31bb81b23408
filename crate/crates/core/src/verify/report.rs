use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::branching::{compute_branching, BranchingOptions, TypeRegistry};
use crate::error::Result;
use crate::reference::reference_matrix;
use crate::trigroup::{Family, GroupSpec};

use super::invariants::{run_invariants, InvariantResult};
use super::matching::{match_registry, Assignment, CellDiff, MatchStatus};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timings {
    pub compute_ms: u64,
    pub match_ms: u64,
    pub invariants_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub group: String,
    pub family: Family,
    pub n: usize,
    pub q: u32,
    pub status: MatchStatus,
    pub empirical_types: usize,
    pub reference_types: usize,
    pub permutation: Vec<Assignment>,
    pub absent_types: Vec<String>,
    pub unreachable_types: Vec<String>,
    pub unmatched_empirical: Vec<usize>,
    pub unmatched_reference: Vec<String>,
    pub diffs: Vec<CellDiff>,
    pub timings: Timings,
    pub invariant_results: Vec<InvariantResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == MatchStatus::Matched && self.invariant_results.iter().all(|r| r.passed)
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = match self.status {
            MatchStatus::Matched => "MATCHED",
            MatchStatus::Mismatch => "MISMATCH",
            MatchStatus::Partial => "PARTIAL",
        };
        let _ = writeln!(
            s,
            "{} q={}: {status} ({} empirical types, {} reference types)",
            self.group, self.q, self.empirical_types, self.reference_types
        );
        let perm: Vec<String> = self
            .permutation
            .iter()
            .map(|a| format!("{}={}", a.type_id, a.label))
            .collect();
        let _ = writeln!(s, "  permutation: {}", perm.join(" "));
        if !self.absent_types.is_empty() {
            let _ = writeln!(s, "  zero class count: {}", self.absent_types.join(" "));
        }
        if !self.unreachable_types.is_empty() {
            let _ = writeln!(s, "  not present: {}", self.unreachable_types.join(" "));
        }
        if !self.unmatched_empirical.is_empty() {
            let ids: Vec<String> = self.unmatched_empirical.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "  unlabelled empirical types: {}", ids.join(" "));
        }
        if !self.unmatched_reference.is_empty() {
            let _ = writeln!(s, "  unmatched reference types: {}", self.unmatched_reference.join(" "));
        }
        if !self.diffs.is_empty() {
            let _ = writeln!(
                s,
                "  {} differing cells (row, column: expected, got):",
                self.diffs.len()
            );
            for d in &self.diffs {
                let _ = writeln!(s, "    ({}, {}): {}, {}", d.row, d.col, d.expected, d.got);
            }
        }
        let _ = writeln!(s, "  invariants:");
        for r in &self.invariant_results {
            let _ = writeln!(
                s,
                "    [{}] {} ({} checked)",
                if r.passed { "ok" } else { "FAIL" },
                r.name,
                r.checked
            );
            for f in &r.failures {
                let _ = writeln!(s, "      {f}");
            }
        }
        let t = &self.timings;
        let _ = writeln!(
            s,
            "  timings: compute {} ms, match {} ms, invariants {} ms",
            t.compute_ms, t.match_ms, t.invariants_ms
        );
        s
    }
}

/// Matches a computed registry against its reference and runs the invariant
/// suite. `compute_ms` is carried into the report as given.
pub fn build_report(registry: &TypeRegistry, compute_ms: u64, samples: usize, guard: u64) -> Result<VerifyReport> {
    let reference = reference_matrix(registry.family, registry.n)?;
    let t = Instant::now();
    let m = match_registry(registry, &reference)?;
    let match_ms = t.elapsed().as_millis() as u64;
    let t = Instant::now();
    let invariant_results = run_invariants(registry, samples, guard)?;
    let invariants_ms = t.elapsed().as_millis() as u64;
    Ok(VerifyReport {
        schema_version: REPORT_SCHEMA_VERSION,
        group: format!("{}_{}", registry.family.name().to_uppercase(), registry.n),
        family: registry.family,
        n: registry.n,
        q: registry.q,
        status: m.status,
        empirical_types: registry.len(),
        reference_types: reference.dim() - m.unreachable_types.len(),
        permutation: m.permutation,
        absent_types: m.absent_types,
        unreachable_types: m.unreachable_types,
        unmatched_empirical: m.unmatched_empirical,
        unmatched_reference: m.unmatched_reference,
        diffs: m.diffs,
        timings: Timings {
            compute_ms,
            match_ms,
            invariants_ms,
        },
        invariant_results,
    })
}

/// Computes, matches and checks one group.
pub fn verify_group(family: Family, n: usize, q: u32, opts: &BranchingOptions) -> Result<(TypeRegistry, VerifyReport)> {
    let spec = GroupSpec::new(family, n, q)?;
    let t = Instant::now();
    let (registry, _) = compute_branching(&spec, opts)?;
    let compute_ms = t.elapsed().as_millis() as u64;
    let report = build_report(&registry, compute_ms, opts.alternates.max(1), opts.guard)?;
    Ok((registry, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gt2_report_round_trips() {
        let (_, r) = verify_group(Family::Gt, 2, 5, &BranchingOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.group, "GT_2");
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<VerifyReport>(&json).unwrap(), r);
        assert!(r.to_text().starts_with("GT_2 q=5: MATCHED"));
    }

    #[test]
    fn unknown_report_fields_are_rejected() {
        let (_, r) = verify_group(Family::Ut, 3, 3, &BranchingOptions::default()).unwrap();
        let mut v = serde_json::to_value(&r).unwrap();
        v.as_object_mut().unwrap().insert("extra".into(), serde_json::json!(1));
        assert!(serde_json::from_value::<VerifyReport>(v).is_err());
    }
}
