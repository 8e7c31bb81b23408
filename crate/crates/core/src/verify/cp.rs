use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::branching::{tuple_class_count, BranchingMatrix};
use crate::error::{Error, Result};
use crate::poly::{eval_fraction, IntPolynomial};
use crate::reference::cp_symbolic;
use crate::trigroup::{Family, GroupSpec};

/// `1 * B^(k-1) * e_0 / |G|^(k-1)` from an empirical matrix.
pub fn empirical_cp(matrix: &BranchingMatrix, k: usize) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::UnsupportedK(k));
    }
    let spec = GroupSpec::new(matrix.family, matrix.n, matrix.q)?;
    let order = BigInt::from(spec.order().clone());
    Ok(BigRational::new(
        BigInt::from(tuple_class_count(matrix, k - 1)),
        order.pow((k - 1) as u32),
    ))
}

/// cp_k at one prime from the three available sources.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CpPoint {
    pub q: u32,
    /// From the empirical branching matrix.
    pub empirical: String,
    /// Power of the transcribed matrix, evaluated at `q`.
    pub derived: String,
    /// Printed rational function, evaluated at `q`.
    pub printed: String,
}

/// Comparison of one printed commuting probability with the transcribed
/// matrix and with empirical matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CpAudit {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub derived_numerator: IntPolynomial,
    pub derived_denominator: IntPolynomial,
    pub printed_numerator: IntPolynomial,
    pub printed_denominator: IntPolynomial,
    /// `derived_num * printed_den - printed_num * derived_den`; zero iff the
    /// identity holds.
    pub cross_difference: IntPolynomial,
    pub identity_holds: bool,
    pub points: Vec<CpPoint>,
    /// The identity fails, every empirical value equals the derived value,
    /// and every empirical value differs from the printed one.
    pub discrepancy_confirmed: bool,
}

impl CpAudit {
    /// Holds, or fails in a way that the empirical data attributes to the
    /// printed formula alone.
    pub fn acceptable(&self) -> bool {
        self.identity_holds || self.discrepancy_confirmed
    }
}

pub fn cp_audit(family: Family, n: usize, k: usize, empirical: &[&BranchingMatrix]) -> Result<CpAudit> {
    let s = cp_symbolic(family, n, k)?;
    let cross_difference = &(&s.numerator * &s.printed_denominator) - &(&s.printed_numerator * &s.denominator);
    let mut points = Vec::new();
    let mut confirmed = !s.agrees && !empirical.is_empty();
    for m in empirical {
        if (m.family, m.n) != (family, n) {
            return Err(Error::Precondition(format!(
                "matrix for {}_{} given for {family}_{n}",
                m.family, m.n
            )));
        }
        let q = u64::from(m.q);
        let e = empirical_cp(m, k)?;
        let derived = eval_fraction(&s.numerator, &s.denominator, q).expect("group order is nonzero");
        let printed = eval_fraction(&s.printed_numerator, &s.printed_denominator, q);
        confirmed &= e == derived && printed.as_ref() != Some(&e);
        points.push(CpPoint {
            q: m.q,
            empirical: e.to_string(),
            derived: derived.to_string(),
            printed: printed.map_or_else(|| "undefined".to_string(), |p| p.to_string()),
        });
    }
    Ok(CpAudit {
        family,
        n,
        k,
        derived_numerator: s.numerator,
        derived_denominator: s.denominator,
        printed_numerator: s.printed_numerator,
        printed_denominator: s.printed_denominator,
        identity_holds: s.agrees,
        cross_difference,
        points,
        discrepancy_confirmed: confirmed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ut3_empirical_cp() {
        let m = BranchingMatrix {
            family: Family::Ut,
            n: 3,
            q: 3,
            entries: vec![vec![3, 0], vec![8, 9]],
        };
        assert_eq!(empirical_cp(&m, 1).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(empirical_cp(&m, 2).unwrap(), BigRational::new(11.into(), 27.into()));
        assert_eq!(empirical_cp(&m, 3).unwrap(), BigRational::new(35.into(), 243.into()));
        let a = cp_audit(Family::Ut, 3, 3, &[&m]).unwrap();
        assert!(a.identity_holds && a.acceptable() && !a.discrepancy_confirmed);
        assert!(a.cross_difference.is_zero());
        assert_eq!(a.points[0].printed, "35/243");
    }
}
