use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::branching::{BranchingMatrix, TypeRegistry};
use crate::error::{Error, Result};
use crate::reference::PolyBranchingMatrix;
use crate::trigroup::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatchStatus {
    Matched,
    Mismatch,
    Partial,
}

/// Empirical type `type_id` aligned with a reference label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assignment {
    pub type_id: usize,
    pub label: String,
}

/// One cell where the aligned matrices disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDiff {
    pub row: String,
    pub col: String,
    pub expected: u64,
    pub got: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchResult {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    pub status: MatchStatus,
    pub permutation: Vec<Assignment>,
    /// Reference labels whose class count vanishes at `q`.
    pub absent_types: Vec<String>,
    /// Reference labels not reachable from the central type at `q`; these
    /// take no part in the alignment.
    pub unreachable_types: Vec<String>,
    pub diffs: Vec<CellDiff>,
    /// Empirical types left without a label (only when PARTIAL).
    pub unmatched_empirical: Vec<usize>,
    /// Participating reference labels left without a type (only when PARTIAL).
    pub unmatched_reference: Vec<String>,
}

impl MatchResult {
    pub fn is_matched(&self) -> bool {
        self.status == MatchStatus::Matched
    }

    /// Label assigned to empirical type `t`.
    pub fn label_of(&self, t: usize) -> Option<&str> {
        self.permutation
            .iter()
            .find(|a| a.type_id == t)
            .map(|a| a.label.as_str())
    }

    /// Empirical type carrying reference label `label`.
    pub fn type_of(&self, label: &str) -> Option<usize> {
        self.permutation.iter().find(|a| a.label == label).map(|a| a.type_id)
    }
}

/// Per-type data used to prune candidate labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    order: u64,
    class_count: u64,
    column_sum: u64,
    diagonal: u64,
}

/// A square integer matrix plus centralizer orders, all at one `q`.
struct Side {
    entries: Vec<Vec<u64>>,
    orders: Vec<u64>,
}

impl Side {
    fn dim(&self) -> usize {
        self.orders.len()
    }

    fn signature(&self, t: usize) -> Signature {
        Signature {
            order: self.orders[t],
            class_count: self.entries[t][0],
            column_sum: self.entries.iter().map(|r| r[t]).sum(),
            diagonal: self.entries[t][t],
        }
    }
}

/// The participating part of the reference at `q`.
struct ReferenceAt {
    side: Side,
    labels: Vec<String>,
    absent: Vec<String>,
    unreachable: Vec<String>,
}

fn to_u64(v: &num_bigint::BigInt, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Precondition(format!("{what} = {v} is not a machine-size count")))
}

fn reference_at(reference: &PolyBranchingMatrix, q: u32) -> Result<ReferenceAt> {
    let q64 = u64::from(q);
    let present = reference.present_at(q64);
    let full = reference.eval(q64);
    let keep: Vec<usize> = (0..reference.dim()).filter(|&i| present[i]).collect();
    let mut entries = vec![vec![0u64; keep.len()]; keep.len()];
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            entries[a][b] = to_u64(&full[i][j], "reference entry")?;
        }
    }
    let orders = keep
        .iter()
        .map(|&i| to_u64(&reference.centralizer_order_poly[i].eval_u64(q64), "centralizer order"))
        .collect::<Result<Vec<_>>>()?;
    let absent = (0..reference.dim())
        .filter(|&i| reference.class_count_poly[i].eval_u64(q64).is_zero())
        .map(|i| reference.labels[i].clone())
        .collect();
    let unreachable = (0..reference.dim())
        .filter(|&i| !present[i])
        .map(|i| reference.labels[i].clone())
        .collect();
    Ok(ReferenceAt {
        side: Side { entries, orders },
        labels: keep.iter().map(|&i| reference.labels[i].clone()).collect(),
        absent,
        unreachable,
    })
}

/// Aligns an empirical branching matrix with the reference evaluated at the
/// matrix's `q`. `orders[t]` is the centralizer order of empirical type `t`.
///
/// Reference types unreachable at `q` are dropped first. An exact
/// permutation is searched by backtracking over candidates with equal
/// (centralizer order, class count, column sum, diagonal entry); if none
/// exists, the alignment with the fewest differing cells found by local
/// search is reported as MISMATCH.
pub fn match_matrices(
    empirical: &BranchingMatrix,
    orders: &[u64],
    reference: &PolyBranchingMatrix,
) -> Result<MatchResult> {
    let r = prepare(empirical, orders, reference)?;
    if r.side.dim() != empirical.dim() {
        return Err(Error::DimensionIncompatible {
            empirical: empirical.dim(),
            reference: r.side.dim(),
        });
    }
    align(empirical, orders, reference, r)
}

/// Like [`match_matrices`], but unequal type counts yield a PARTIAL result
/// with a best-effort injective alignment instead of an error.
pub fn match_or_partial(
    empirical: &BranchingMatrix,
    orders: &[u64],
    reference: &PolyBranchingMatrix,
) -> Result<MatchResult> {
    let r = prepare(empirical, orders, reference)?;
    align(empirical, orders, reference, r)
}

/// Convenience wrapper taking orders from a registry.
pub fn match_registry(registry: &TypeRegistry, reference: &PolyBranchingMatrix) -> Result<MatchResult> {
    let orders: Vec<u64> = registry.types.iter().map(|t| t.order).collect();
    match_or_partial(&registry.matrix(), &orders, reference)
}

fn prepare(empirical: &BranchingMatrix, orders: &[u64], reference: &PolyBranchingMatrix) -> Result<ReferenceAt> {
    if (empirical.family, empirical.n) != (reference.family, reference.n) {
        return Err(Error::Precondition(format!(
            "empirical {}_{} vs reference {}_{}",
            empirical.family, empirical.n, reference.family, reference.n
        )));
    }
    if orders.len() != empirical.dim() {
        return Err(Error::Precondition("one centralizer order per type is required".into()));
    }
    crate::ffield::PrimeField::new(empirical.q)?;
    reference_at(reference, empirical.q)
}

fn align(
    empirical: &BranchingMatrix,
    orders: &[u64],
    reference: &PolyBranchingMatrix,
    r: ReferenceAt,
) -> Result<MatchResult> {
    let emp = Side {
        entries: empirical.entries.clone(),
        orders: orders.to_vec(),
    };
    let (status, map) = if emp.dim() == r.side.dim() {
        match exact_search(&emp, &r.side) {
            Some(m) => (MatchStatus::Matched, m),
            None => (MatchStatus::Mismatch, min_diff_alignment(&emp, &r.side)),
        }
    } else {
        (MatchStatus::Partial, min_diff_alignment(&emp, &r.side))
    };

    let mut diffs = Vec::new();
    for a in 0..emp.dim() {
        let Some(ra) = map[a] else { continue };
        for b in 0..emp.dim() {
            let Some(rb) = map[b] else { continue };
            let (expected, got) = (r.side.entries[ra][rb], emp.entries[a][b]);
            if expected != got {
                diffs.push((ra, rb, expected, got));
            }
        }
    }
    diffs.sort_unstable();
    let status = if status == MatchStatus::Matched && !diffs.is_empty() {
        MatchStatus::Mismatch
    } else {
        status
    };

    let mut permutation: Vec<Assignment> = map
        .iter()
        .enumerate()
        .filter_map(|(t, m)| {
            m.map(|ri| Assignment {
                type_id: t,
                label: r.labels[ri].clone(),
            })
        })
        .collect();
    permutation.sort_by_key(|a| a.type_id);
    let used: Vec<bool> = (0..r.side.dim()).map(|ri| map.contains(&Some(ri))).collect();
    Ok(MatchResult {
        family: reference.family,
        n: reference.n,
        q: empirical.q,
        status,
        permutation,
        absent_types: r.absent,
        unreachable_types: r.unreachable,
        diffs: diffs
            .into_iter()
            .map(|(i, j, expected, got)| CellDiff {
                row: r.labels[i].clone(),
                col: r.labels[j].clone(),
                expected,
                got,
            })
            .collect(),
        unmatched_empirical: (0..emp.dim()).filter(|&t| map[t].is_none()).collect(),
        unmatched_reference: (0..r.side.dim())
            .filter(|&i| !used[i])
            .map(|i| r.labels[i].clone())
            .collect(),
    })
}

/// Exhaustive search for a bijection preserving every entry.
fn exact_search(emp: &Side, reference: &Side) -> Option<Vec<Option<usize>>> {
    let d = emp.dim();
    let ref_sigs: Vec<Signature> = (0..d).map(|i| reference.signature(i)).collect();
    let mut candidates: Vec<Vec<usize>> = (0..d)
        .map(|t| {
            let s = emp.signature(t);
            (0..d).filter(|&i| ref_sigs[i] == s).collect()
        })
        .collect();
    // The central type is the identity's centralizer on both sides.
    candidates[0].retain(|&i| i == 0);
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&t| (candidates[t].len(), t));

    let mut map = vec![None; d];
    let mut used = vec![false; d];
    if backtrack(0, &order, &candidates, emp, reference, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn backtrack(
    depth: usize,
    order: &[usize],
    candidates: &[Vec<usize>],
    emp: &Side,
    reference: &Side,
    map: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(&t) = order.get(depth) else { return true };
    for &c in &candidates[t] {
        if used[c] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&s| {
            let m = map[s].expect("assigned");
            emp.entries[t][s] == reference.entries[c][m] && emp.entries[s][t] == reference.entries[m][c]
        });
        if !consistent {
            continue;
        }
        map[t] = Some(c);
        used[c] = true;
        if backtrack(depth + 1, order, candidates, emp, reference, map, used) {
            return true;
        }
        map[t] = None;
        used[c] = false;
    }
    false
}

fn signature_distance(a: &Signature, b: &Signature) -> u64 {
    4 * u64::from(a.order != b.order)
        + 2 * u64::from(a.class_count != b.class_count)
        + u64::from(a.column_sum != b.column_sum)
        + u64::from(a.diagonal != b.diagonal)
}

fn diff_count(emp: &Side, reference: &Side, map: &[Option<usize>]) -> usize {
    let mut n = 0;
    for (a, ra) in map.iter().enumerate() {
        let Some(ra) = *ra else { continue };
        for (b, rb) in map.iter().enumerate() {
            let Some(rb) = *rb else { continue };
            n += usize::from(emp.entries[a][b] != reference.entries[ra][rb]);
        }
    }
    n
}

/// Deterministic injective alignment of the smaller side into the larger,
/// locally minimising the number of differing cells.
fn min_diff_alignment(emp: &Side, reference: &Side) -> Vec<Option<usize>> {
    let (de, dr) = (emp.dim(), reference.dim());
    let emp_sigs: Vec<Signature> = (0..de).map(|t| emp.signature(t)).collect();
    let ref_sigs: Vec<Signature> = (0..dr).map(|i| reference.signature(i)).collect();

    // Greedy start: closest signatures first, ties by index.
    let mut pairs: Vec<(u64, usize, usize)> = Vec::with_capacity(de * dr);
    for (t, s) in emp_sigs.iter().enumerate() {
        for (i, r) in ref_sigs.iter().enumerate() {
            let forced = if (t == 0) != (i == 0) { 100 } else { 0 };
            pairs.push((signature_distance(s, r) + forced, t, i));
        }
    }
    pairs.sort_unstable();
    let mut map = vec![None; de];
    let mut used = vec![false; dr];
    for (_, t, i) in pairs {
        if map[t].is_none() && !used[i] {
            map[t] = Some(i);
            used[i] = true;
        }
    }

    // Local search: swap targets of two types, or move a type to a free label.
    let mut best = diff_count(emp, reference, &map);
    loop {
        let mut improved = false;
        for a in 0..de {
            for b in (a + 1)..de {
                map.swap(a, b);
                let c = diff_count(emp, reference, &map);
                if c < best {
                    best = c;
                    improved = true;
                } else {
                    map.swap(a, b);
                }
            }
            for i in 0..dr {
                if used[i] {
                    continue;
                }
                let old = map[a];
                map[a] = Some(i);
                let c = diff_count(emp, reference, &map);
                if c < best {
                    best = c;
                    improved = true;
                    used[i] = true;
                    if let Some(o) = old {
                        used[o] = false;
                    }
                } else {
                    map[a] = old;
                }
            }
        }
        if !improved {
            break;
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::reference_matrix;

    fn gt2(q: u32, entries: Vec<Vec<u64>>) -> BranchingMatrix {
        BranchingMatrix {
            family: Family::Gt,
            n: 2,
            q,
            entries,
        }
    }

    #[test]
    fn permuted_gt2_matches() {
        let reference = reference_matrix(Family::Gt, 2).unwrap();
        // Reference order C, A1, R1 at q = 5: types swapped in the empirical order.
        let m = reference.eval(5);
        let e: Vec<Vec<u64>> = [0, 2, 1]
            .iter()
            .map(|&i| [0, 2, 1].iter().map(|&j| m[i][j].to_u64().unwrap()).collect())
            .collect();
        let orders: Vec<u64> = [0usize, 2, 1]
            .iter()
            .map(|&i| reference.centralizer_order_poly[i].eval_u64(5).to_u64().unwrap())
            .collect();
        let r = match_matrices(&gt2(5, e), &orders, &reference).unwrap();
        assert!(r.is_matched(), "{r:?}");
        assert_eq!(r.label_of(1), Some(reference.labels[2].as_str()));
        assert_eq!(r.label_of(2), Some(reference.labels[1].as_str()));
        assert!(r.diffs.is_empty());
    }

    #[test]
    fn corrupted_cell_is_localised() {
        let reference = reference_matrix(Family::Gt, 2).unwrap();
        let m = reference.eval(7);
        let mut e: Vec<Vec<u64>> = m
            .iter()
            .map(|r| r.iter().map(|v| v.to_u64().unwrap()).collect())
            .collect();
        let orders: Vec<u64> = reference
            .centralizer_order_poly
            .iter()
            .map(|p| p.eval_u64(7).to_u64().unwrap())
            .collect();
        e[2][0] += 1;
        let r = match_matrices(&gt2(7, e), &orders, &reference).unwrap();
        assert_eq!(r.status, MatchStatus::Mismatch);
        assert_eq!(r.diffs.len(), 1);
        let d = &r.diffs[0];
        assert_eq!((d.row.as_str(), d.col.as_str()), (reference.labels[2].as_str(), "C"));
        assert_eq!(d.got, d.expected + 1);
    }

    #[test]
    fn wrong_dimension_is_reported() {
        let reference = reference_matrix(Family::Gt, 2).unwrap();
        let e = vec![vec![2, 0], vec![4, 6]];
        let err = match_matrices(&gt2(3, e.clone()), &[12, 6], &reference).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionIncompatible {
                empirical: 2,
                reference: 3
            }
        );
        let p = match_or_partial(&gt2(3, e), &[12, 6], &reference).unwrap();
        assert_eq!(p.status, MatchStatus::Partial);
        assert_eq!(p.unmatched_reference.len(), 1);
        assert_eq!(p.permutation.len(), 2);
    }
}
