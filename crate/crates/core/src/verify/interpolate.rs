use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{integral, interpolate, IntPolynomial};
use crate::reference::PolyBranchingMatrix;
use crate::trigroup::Family;

use super::matching::MatchResult;

/// One reconstructed entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolatedEntry {
    pub row: String,
    pub col: String,
    /// `(q, value)` pairs the polynomial passes through.
    pub samples: Vec<(u32, u64)>,
    pub polynomial: IntPolynomial,
    pub reference: IntPolynomial,
    /// Equal to the reference and of degree at most the bound.
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolationResult {
    pub family: Family,
    pub n: usize,
    pub primes: Vec<u32>,
    pub degree_bound: usize,
    pub entries: Vec<InterpolatedEntry>,
}

impl InterpolationResult {
    pub fn matching(&self) -> usize {
        self.entries.iter().filter(|e| e.equal).count()
    }

    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equal)
    }
}

/// Largest degree among the reference entries.
pub fn reference_degree(reference: &PolyBranchingMatrix) -> usize {
    reference
        .entries
        .iter()
        .flatten()
        .filter_map(IntPolynomial::degree)
        .max()
        .unwrap_or(0)
}

/// Reconstructs every reference entry from empirical matrices at several
/// primes. `samples` pairs each empirical matrix with its alignment to the
/// reference; an entry is sampled at `q` only when both of its labels are
/// aligned there.
pub fn interpolate_aligned(
    reference: &PolyBranchingMatrix,
    samples: &[(&crate::branching::BranchingMatrix, &MatchResult)],
    degree_bound: usize,
) -> Result<InterpolationResult> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(Error::InsufficientPoints {
            needed,
            got: samples.len(),
        });
    }
    let primes: Vec<u32> = samples.iter().map(|(m, _)| m.q).collect();
    let mut distinct = primes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != primes.len() {
        return Err(Error::Precondition("sample primes must be distinct".into()));
    }
    let dim = reference.dim();
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let (row, col) = (&reference.labels[i], &reference.labels[j]);
            let pts: Vec<(u32, u64)> = samples
                .iter()
                .filter_map(|(m, r)| Some((m.q, m.get(r.type_of(row)?, r.type_of(col)?))))
                .collect();
            if pts.len() < needed {
                return Err(Error::InsufficientPoints { needed, got: pts.len() });
            }
            let coeffs = interpolate(
                &pts.iter()
                    .map(|&(q, v)| (BigInt::from(q), BigInt::from(v)))
                    .collect::<Vec<_>>(),
            );
            let polynomial = integral(&coeffs).ok_or_else(|| Error::NonIntegralCoefficients {
                row: row.clone(),
                col: col.clone(),
            })?;
            let reference = reference.entries[i][j].clone();
            let equal = polynomial == reference && polynomial.degree().unwrap_or(0) <= degree_bound;
            entries.push(InterpolatedEntry {
                row: row.clone(),
                col: col.clone(),
                samples: pts,
                polynomial,
                reference,
                equal,
            });
        }
    }
    Ok(InterpolationResult {
        family: reference.family,
        n: reference.n,
        primes,
        degree_bound,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::BranchingMatrix;
    use crate::reference::reference_matrix;
    use crate::verify::matching::match_matrices;

    fn ut3(q: u32) -> (BranchingMatrix, Vec<u64>) {
        let q64 = u64::from(q);
        (
            BranchingMatrix {
                family: Family::Ut,
                n: 3,
                q,
                entries: vec![vec![q64, 0], vec![q64 * q64 - 1, q64 * q64]],
            },
            vec![q64.pow(3), q64.pow(2)],
        )
    }

    #[test]
    fn ut3_from_three_primes() {
        let reference = reference_matrix(Family::Ut, 3).unwrap();
        let data: Vec<_> = [3, 5, 7].iter().map(|&q| ut3(q)).collect();
        let matches: Vec<_> = data
            .iter()
            .map(|(m, o)| match_matrices(m, o, &reference).unwrap())
            .collect();
        let samples: Vec<_> = data.iter().map(|(m, _)| m).zip(&matches).collect();
        let r = interpolate_aligned(&reference, &samples, 2).unwrap();
        assert!(r.all_equal());
        let rr = r.entries.iter().find(|e| e.row == "R1" && e.col == "R1").unwrap();
        assert_eq!(rr.samples, vec![(3, 9), (5, 25), (7, 49)]);
        assert_eq!(rr.polynomial, crate::poly::p("q^2"));
    }

    #[test]
    fn too_few_primes() {
        let reference = reference_matrix(Family::Ut, 3).unwrap();
        let data: Vec<_> = [3, 5].iter().map(|&q| ut3(q)).collect();
        let matches: Vec<_> = data
            .iter()
            .map(|(m, o)| match_matrices(m, o, &reference).unwrap())
            .collect();
        let samples: Vec<_> = data.iter().map(|(m, _)| m).zip(&matches).collect();
        assert_eq!(
            interpolate_aligned(&reference, &samples, 2).unwrap_err(),
            Error::InsufficientPoints { needed: 3, got: 2 }
        );
    }

    #[test]
    fn non_polynomial_samples_are_rejected() {
        let reference = reference_matrix(Family::Ut, 3).unwrap();
        let mut data: Vec<_> = [3, 5, 7].iter().map(|&q| ut3(q)).collect();
        let matches: Vec<_> = data
            .iter()
            .map(|(m, o)| match_matrices(m, o, &reference).unwrap())
            .collect();
        // 9, 25, 50 is not an integer quadratic in q over 3, 5, 7.
        data[2].0.entries[1][1] = 50;
        let samples: Vec<_> = data.iter().map(|(m, _)| m).zip(&matches).collect();
        assert!(matches!(
            interpolate_aligned(&reference, &samples, 2),
            Err(Error::NonIntegralCoefficients { .. })
        ));
    }
}
