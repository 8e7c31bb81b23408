use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branching::{check_well_defined, compute_branching, BranchingOptions, TypeRegistry, WellDefinedReport};
use crate::error::{Error, Result};
use crate::trigroup::GroupSpec;

/// Centralizers up to this order also get their class count recomputed by
/// Burnside's lemma.
pub const BURNSIDE_LIMIT: u64 = 250_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl InvariantResult {
    fn new(name: &str, checked: usize, failures: Vec<String>) -> InvariantResult {
        InvariantResult {
            name: name.to_string(),
            passed: failures.is_empty(),
            checked,
            failures,
        }
    }
}

/// Column `j` sums to the number of conjugacy classes of `Z_j`.
pub fn column_sum_law(registry: &TypeRegistry) -> Result<InvariantResult> {
    let m = registry.matrix();
    let spec = Arc::new(registry.spec()?);
    let f = spec.field();
    let mut failures = Vec::new();
    for (j, t) in registry.types.iter().enumerate() {
        let sum = m.column_sum(j);
        if sum != t.centralizer_class_count {
            failures.push(format!(
                "type {j}: column sum {sum} vs {} classes",
                t.centralizer_class_count
            ));
        }
        if t.order <= BURNSIDE_LIMIT {
            let z = registry.centralizer(&spec, j);
            let alg = z.algebra().expect("registry centralizers are algebra groups");
            let fixed: u64 = alg.elements(f).par_iter().map(|x| alg.centralizer_order_of(x, f)).sum();
            if !fixed.is_multiple_of(t.order) || fixed / t.order != sum {
                failures.push(format!(
                    "type {j}: column sum {sum} vs Burnside count {fixed}/{}",
                    t.order
                ));
            }
        }
    }
    Ok(InvariantResult::new(
        "column sums count centralizer classes",
        registry.len(),
        failures,
    ))
}

/// Inside each centralizer the branch classes partition `Z_j`:
/// `sum_i B[i][j] * |Z_j| / |Z_i| = |Z_j|`.
pub fn class_equation(registry: &TypeRegistry) -> InvariantResult {
    let m = registry.matrix();
    let mut failures = Vec::new();
    for (j, t) in registry.types.iter().enumerate() {
        let zj = u128::from(t.order);
        let mut total = 0u128;
        for (i, s) in registry.types.iter().enumerate() {
            let zi = u128::from(s.order);
            let b = u128::from(m.get(i, j));
            if b == 0 {
                continue;
            }
            if zj % zi != 0 {
                failures.push(format!("type {j}: branch type {i} of order {zi} does not divide {zj}"));
            }
            total += b * (zj / zi);
        }
        if total != zj {
            failures.push(format!("type {j}: class sizes sum to {total}, centralizer order {zj}"));
        }
    }
    InvariantResult::new("class equation in every centralizer", registry.len(), failures)
}

/// The diagonal entry of type `j` is the order of the centre of `Z_j`; for
/// abelian `Z_j` that is `|Z_j|` and the column has no other entries.
pub fn abelian_diagonal_law(registry: &TypeRegistry) -> InvariantResult {
    let m = registry.matrix();
    let mut failures = Vec::new();
    for (j, t) in registry.types.iter().enumerate() {
        let fp = &t.fingerprint;
        if m.get(j, j) != fp.center_order {
            failures.push(format!(
                "type {j}: diagonal {} vs centre order {}",
                m.get(j, j),
                fp.center_order
            ));
        }
        if fp.is_abelian {
            if m.get(j, j) != t.order {
                failures.push(format!(
                    "type {j}: abelian diagonal {} vs order {}",
                    m.get(j, j),
                    t.order
                ));
            }
            let off: u64 = (0..registry.len()).filter(|&i| i != j).map(|i| m.get(i, j)).sum();
            if off != 0 {
                failures.push(format!("type {j}: abelian column has {off} off-diagonal branches"));
            }
        }
    }
    InvariantResult::new("diagonal equals centre order", registry.len(), failures)
}

/// Branch vectors recomputed from up to `samples` alternate representatives.
pub fn well_definedness(registry: &TypeRegistry, samples: usize, guard: u64) -> Result<InvariantResult> {
    let reports: Vec<WellDefinedReport> = (0..registry.len())
        .map(|t| check_well_defined(registry, t, samples, guard))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for r in &reports {
        match r {
            WellDefinedReport::Agree { .. } => checked += 1,
            WellDefinedReport::Diverge {
                type_id,
                tuple,
                expected,
                got,
            } => failures.push(format!(
                "type {type_id}: tuple {tuple:?} gives {got:?}, expected {expected:?}"
            )),
            WellDefinedReport::Skipped { .. } => {}
        }
    }
    Ok(InvariantResult::new(
        "branch vectors agree across representatives",
        checked,
        failures,
    ))
}

/// Recomputes the branching data on a one-thread pool and a `threads`-thread
/// pool and compares the serialized results byte for byte.
pub fn determinism(spec: &GroupSpec, opts: &BranchingOptions, threads: usize) -> Result<InvariantResult> {
    let run = |n: usize| -> Result<Vec<u8>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        let (reg, m) = pool.install(|| compute_branching(spec, opts))?;
        Ok(serde_json::to_vec(&(reg, m)).expect("registry serializes"))
    };
    let one = run(1)?;
    let many = run(threads.max(2))?;
    let failures = if one == many {
        Vec::new()
    } else {
        vec![format!("1 thread vs {} threads: outputs differ", threads.max(2))]
    };
    Ok(InvariantResult::new(
        "identical output for 1 and N threads",
        2,
        failures,
    ))
}

/// Column sums, class equation, diagonal law and well-definedness.
pub fn run_invariants(registry: &TypeRegistry, samples: usize, guard: u64) -> Result<Vec<InvariantResult>> {
    Ok(vec![
        column_sum_law(registry)?,
        class_equation(registry),
        abelian_diagonal_law(registry),
        well_definedness(registry, samples, guard)?,
    ])
}
