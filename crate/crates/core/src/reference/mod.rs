//! Symbolic reference data: branching matrices with polynomial entries,
//! centralizer orders, class counts and commuting-probability tables for
//! GT_2, GT_3, GT_4, UT_3, UT_4 and UT_5.
//!
//! Matrices follow the same convention as [`BranchingMatrix`]: entry
//! `(i, j)` counts the branches of type `i` of an element of type `j`, and
//! column 0 is the central type.
//!
//! [`BranchingMatrix`]: crate::branching::BranchingMatrix

mod data;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{group_order_poly, parse, IntPolynomial};
use crate::trigroup::Family;

/// Groups with reference data, in a fixed order.
pub const GROUPS: [(Family, usize); 6] = [
    (Family::Gt, 2),
    (Family::Gt, 3),
    (Family::Gt, 4),
    (Family::Ut, 3),
    (Family::Ut, 4),
    (Family::Ut, 5),
];

/// Primes used by the class-equation self-check.
pub const CHECK_PRIMES: [u64; 4] = [5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyBranchingMatrix {
    pub family: Family,
    pub n: usize,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<IntPolynomial>>,
    /// Entry text as transcribed, including factored forms.
    pub sources: Vec<Vec<String>>,
    /// Number of conjugacy classes of each type in the whole group (column 0).
    pub class_count_poly: Vec<IntPolynomial>,
    pub centralizer_order_poly: Vec<IntPolynomial>,
    pub centralizer_order_sources: Vec<String>,
    pub regular: Vec<bool>,
    /// Types that occur only for tuples of length at least two.
    pub new_type: Vec<bool>,
}

/// A printed commuting-probability value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CpEntry {
    pub k: usize,
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CpReference {
    pub family: Family,
    pub n: usize,
    pub entries: Vec<CpEntry>,
}

fn data_for(family: Family, n: usize) -> Result<&'static data::GroupData> {
    Ok(match (family, n) {
        (Family::Gt, 2) => &data::GT2,
        (Family::Gt, 3) => &data::GT3,
        (Family::Gt, 4) => &data::GT4,
        (Family::Ut, 3) => &data::UT3,
        (Family::Ut, 4) => &data::UT4,
        (Family::Ut, 5) => &data::UT5,
        _ => return Err(Error::UnsupportedGroup(format!("{family}_{n}"))),
    })
}

/// Splits a transcribed row, expanding `0@k` runs.
fn split_row(row: &str) -> Vec<String> {
    let mut out = Vec::new();
    for tok in row.split(',').map(str::trim) {
        match tok.split_once('@') {
            Some((v, k)) => {
                let k: usize = k.trim().parse().expect("repeat count");
                out.extend(std::iter::repeat_n(v.trim().to_string(), k));
            }
            None => out.push(tok.to_string()),
        }
    }
    out
}

fn must_parse(s: &str) -> IntPolynomial {
    parse(s).unwrap_or_else(|e| panic!("reference entry {s:?} does not parse: {e}"))
}

/// The transcribed branching matrix of `(family, n)`.
pub fn reference_matrix(family: Family, n: usize) -> Result<PolyBranchingMatrix> {
    let d = data_for(family, n)?;
    let dim = d.labels.len();
    let sources: Vec<Vec<String>> = d.rows.iter().map(|r| split_row(r)).collect();
    assert_eq!(sources.len(), dim, "{family}_{n}: row count");
    for (i, r) in sources.iter().enumerate() {
        assert_eq!(
            r.len(),
            dim,
            "{family}_{n}: row {} has {} entries",
            d.labels[i],
            r.len()
        );
    }
    let entries: Vec<Vec<IntPolynomial>> = sources
        .iter()
        .map(|r| r.iter().map(|s| must_parse(s)).collect())
        .collect();
    let class_count_poly = entries.iter().map(|r| r[0].clone()).collect();
    Ok(PolyBranchingMatrix {
        family,
        n,
        labels: d.labels.iter().map(|s| s.to_string()).collect(),
        class_count_poly,
        centralizer_order_poly: d.centralizers.iter().map(|s| must_parse(s)).collect(),
        centralizer_order_sources: d.centralizers.iter().map(|s| s.to_string()).collect(),
        regular: d.labels.iter().map(|l| d.regular.contains(l)).collect(),
        new_type: d.labels.iter().map(|l| d.new_types.contains(l)).collect(),
        entries,
        sources,
    })
}

/// The printed commuting probabilities for k = 2..=5.
pub fn cp_reference(family: Family, n: usize) -> Result<CpReference> {
    let d = data_for(family, n)?;
    Ok(CpReference {
        family,
        n,
        entries: d
            .cp
            .iter()
            .enumerate()
            .map(|(i, (num, den))| CpEntry {
                k: i + 2,
                numerator: must_parse(num),
                denominator: must_parse(den),
            })
            .collect(),
    })
}

impl PolyBranchingMatrix {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn group_order(&self) -> IntPolynomial {
        group_order_poly(self.family, self.n)
    }

    /// Entries evaluated at `q`.
    pub fn eval(&self, q: u64) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|p| p.eval_u64(q)).collect())
            .collect()
    }

    pub fn column_sum(&self, j: usize) -> IntPolynomial {
        self.entries.iter().fold(IntPolynomial::zero(), |acc, r| &acc + &r[j])
    }

    /// Types that occur at `q`: those reachable from the central type along
    /// entries that are positive at `q`. Panics if any entry is negative.
    pub fn present_at(&self, q: u64) -> Vec<bool> {
        let m = self.eval(q);
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert!(
                    !v.is_negative(),
                    "reference entry ({}, {}) is negative at q = {q}",
                    self.labels[i],
                    self.labels[j]
                );
            }
        }
        let dim = self.dim();
        let mut seen = vec![false; dim];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(j) = stack.pop() {
            for i in 0..dim {
                if !seen[i] && m[i][j].is_positive() {
                    seen[i] = true;
                    stack.push(i);
                }
            }
        }
        seen
    }

    /// Transcription checks; every check is reported, none short-circuits.
    pub fn self_check(&self) -> Vec<SelfCheck> {
        let dim = self.dim();
        let mut out = Vec::new();

        let mut bad = Vec::new();
        for j in (0..dim).filter(|&j| self.regular[j]) {
            if self.entries[j][j] != self.centralizer_order_poly[j] {
                bad.push(format!(
                    "{}: diagonal {} vs centralizer order {}",
                    self.labels[j], self.entries[j][j], self.centralizer_order_poly[j]
                ));
            }
        }
        out.push(SelfCheck::new("regular diagonal equals centralizer order", bad));

        let order = self.group_order();
        let mut bad = Vec::new();
        for q in CHECK_PRIMES {
            let g = BigRational::from_integer(order.eval_u64(q));
            let total: BigRational = (0..dim)
                .map(|t| {
                    BigRational::from_integer(self.class_count_poly[t].eval_u64(q)) * &g
                        / BigRational::from_integer(self.centralizer_order_poly[t].eval_u64(q))
                })
                .fold(BigRational::zero(), |a, b| a + b);
            if total != g {
                bad.push(format!("q = {q}: sum of class sizes {total} vs |G| = {g}"));
            }
        }
        out.push(SelfCheck::new("class equation of the whole group", bad));

        let mut bad = Vec::new();
        let total = self
            .class_count_poly
            .iter()
            .fold(IntPolynomial::zero(), |acc, p| &acc + p);
        if self.column_sum(0) != total {
            bad.push(format!("column sum {} vs class total {}", self.column_sum(0), total));
        }
        out.push(SelfCheck::new("central column sums to the class count", bad));

        let mut bad = Vec::new();
        for q in [5u64, 7, 11] {
            for j in 0..dim {
                if !self.column_sum(j).eval_u64(q).is_positive() {
                    bad.push(format!("{} at q = {q}", self.labels[j]));
                }
            }
        }
        out.push(SelfCheck::new("column sums positive", bad));

        // Branches of an element of type j partition the centralizer Z_j,
        // and a branch of type i has a class of size |Z_j| / |Z_i| there.
        let mut bad = Vec::new();
        for j in 0..dim {
            let mut failing = Vec::new();
            for q in CHECK_PRIMES {
                let total: BigRational = (0..dim)
                    .map(|i| {
                        BigRational::new(
                            self.entries[i][j].eval_u64(q),
                            self.centralizer_order_poly[i].eval_u64(q),
                        )
                    })
                    .fold(BigRational::zero(), |a, b| a + b);
                if !total.is_one() {
                    failing.push(q);
                }
            }
            if !failing.is_empty() {
                bad.push(format!("{} (q in {:?})", self.labels[j], failing));
            }
        }
        out.push(SelfCheck::new("class equation inside each centralizer", bad));
        out
    }
}

/// Outcome of one transcription check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelfCheck {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl SelfCheck {
    fn new(name: &str, failures: Vec<String>) -> SelfCheck {
        SelfCheck {
            name: name.to_string(),
            passed: failures.is_empty(),
            failures,
        }
    }
}

/// `1 . B^(k-1) . e_1` as a polynomial.
pub fn tuple_class_poly(m: &PolyBranchingMatrix, k: usize) -> IntPolynomial {
    let dim = m.dim();
    let mut v: Vec<IntPolynomial> = (0..dim)
        .map(|i| {
            if i == 0 {
                IntPolynomial::one()
            } else {
                IntPolynomial::zero()
            }
        })
        .collect();
    for _ in 0..k {
        v = (0..dim)
            .map(|i| {
                (0..dim).fold(IntPolynomial::zero(), |acc, j| {
                    if v[j].is_zero() || m.entries[i][j].is_zero() {
                        acc
                    } else {
                        &acc + &(&m.entries[i][j] * &v[j])
                    }
                })
            })
            .collect();
    }
    v.iter().fold(IntPolynomial::zero(), |acc, p| &acc + p)
}

/// Commuting probability derived from the reference matrix, compared with
/// the printed value by cross-multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CpSymbolic {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
    pub printed_numerator: IntPolynomial,
    pub printed_denominator: IntPolynomial,
    pub agrees: bool,
}

pub fn cp_symbolic(family: Family, n: usize, k: usize) -> Result<CpSymbolic> {
    if !(2..=5).contains(&k) {
        return Err(Error::UnsupportedK(k));
    }
    let m = reference_matrix(family, n)?;
    let printed = cp_reference(family, n)?.entries[k - 2].clone();
    let numerator = tuple_class_poly(&m, k - 1);
    let denominator = m.group_order().pow((k - 1) as u32);
    let agrees = &numerator * &printed.denominator == &printed.numerator * &denominator;
    Ok(CpSymbolic {
        family,
        n,
        k,
        numerator,
        denominator,
        printed_numerator: printed.numerator,
        printed_denominator: printed.denominator,
        agrees,
    })
}

/// JSON export of everything known about one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceExport {
    pub schema_version: u32,
    pub matrix: PolyBranchingMatrix,
    pub cp: CpReference,
    pub self_checks: Vec<SelfCheck>,
}

pub const EXPORT_SCHEMA_VERSION: u32 = 1;

pub fn export(family: Family, n: usize) -> Result<ReferenceExport> {
    let matrix = reference_matrix(family, n)?;
    let self_checks = matrix.self_check();
    Ok(ReferenceExport {
        schema_version: EXPORT_SCHEMA_VERSION,
        cp: cp_reference(family, n)?,
        self_checks,
        matrix,
    })
}
