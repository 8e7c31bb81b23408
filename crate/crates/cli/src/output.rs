//! JSON documents written by the CLI.

use branchix::branching::{BranchingMatrix, TypeRegistry, ENGINE_VERSION};
use branchix::verify::{InterpolationResult, InvariantResult, VerifyReport};
use branchix::Family;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const OUTPUT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeSummary {
    pub id: usize,
    pub order: u64,
    pub class_count: u64,
    pub depth: usize,
    /// Hex SHA-256 of the fingerprint bytes.
    pub fingerprint_digest: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantChecks {
    pub column_sums: bool,
    pub class_equation: bool,
    pub abelian_diagonal: bool,
}

impl InvariantChecks {
    pub fn all(&self) -> bool {
        self.column_sums && self.class_equation && self.abelian_diagonal
    }
}

/// Output of `compute`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputeOutput {
    pub schema_version: u32,
    pub engine_version: u32,
    pub family: Family,
    pub n: usize,
    pub q: u32,
    pub types: Vec<TypeSummary>,
    pub matrix: Vec<Vec<u64>>,
    pub invariant_checks: InvariantChecks,
}

impl ComputeOutput {
    pub fn new(registry: &TypeRegistry, matrix: &BranchingMatrix, invariants: &[InvariantResult]) -> ComputeOutput {
        let passed = |i: usize| invariants.get(i).is_some_and(|r| r.passed);
        ComputeOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            engine_version: ENGINE_VERSION,
            family: registry.family,
            n: registry.n,
            q: registry.q,
            types: registry
                .types
                .iter()
                .map(|t| TypeSummary {
                    id: t.id,
                    order: t.order,
                    class_count: t.class_count,
                    depth: t.depth,
                    fingerprint_digest: hex::encode(Sha256::digest(t.fingerprint.to_bytes())),
                })
                .collect(),
            matrix: matrix.entries.clone(),
            invariant_checks: InvariantChecks {
                column_sums: passed(0),
                class_equation: passed(1),
                abelian_diagonal: passed(2),
            },
        }
    }
}

/// Output of `verify --all`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridReport {
    pub schema_version: u32,
    pub passed: bool,
    pub reports: Vec<VerifyReport>,
    /// Grid points that could not be computed, with the reason.
    pub errors: Vec<GridError>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridError {
    pub group: String,
    pub q: u32,
    pub error: String,
}

/// Output of `interpolate --format json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolateOutput {
    pub schema_version: u32,
    pub interpolation: InterpolationResult,
}

impl InterpolateOutput {
    pub fn new(interpolation: InterpolationResult) -> InterpolateOutput {
        InterpolateOutput {
            schema_version: OUTPUT_SCHEMA_VERSION,
            interpolation,
        }
    }
}
