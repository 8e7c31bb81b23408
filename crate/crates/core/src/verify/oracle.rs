use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::trigroup::{GroupSpec, TriMatrix};

/// Largest group order the oracle accepts for k <= 3.
pub const ORACLE_GUARD_SMALL_K: u64 = 1000;
/// Largest group order the oracle accepts for k >= 4.
pub const ORACLE_GUARD_LARGE_K: u64 = 100;

/// Order limit for tuples of length `k`.
pub fn oracle_guard(k: usize) -> u64 {
    if k <= 3 {
        ORACLE_GUARD_SMALL_K
    } else {
        ORACLE_GUARD_LARGE_K
    }
}

/// Rows of the commuting relation as bit vectors.
struct CommuteTable {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl CommuteTable {
    fn new(elems: &[TriMatrix], spec: &GroupSpec) -> CommuteTable {
        let n = elems.len();
        let words = n.div_ceil(64);
        let f = spec.field();
        let mut rows = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in i..n {
                if elems[i].commutes_with(&elems[j], f) {
                    rows[i][j >> 6] |= 1 << (j & 63);
                    rows[j][i >> 6] |= 1 << (i & 63);
                }
            }
        }
        CommuteTable { words, rows }
    }

    /// Number of `r`-tuples inside `set` that commute pairwise.
    fn count(&self, set: &[u64], r: usize) -> u128 {
        match r {
            0 => 1,
            1 => set.iter().map(|w| u128::from(w.count_ones())).sum(),
            _ => {
                let mut total = 0;
                let mut next = vec![0u64; self.words];
                for (wi, &w) in set.iter().enumerate() {
                    let mut bits = w;
                    while bits != 0 {
                        let x = wi * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        for (o, (a, b)) in next.iter_mut().zip(set.iter().zip(&self.rows[x])) {
                            *o = a & b;
                        }
                        total += self.count(&next, r - 1);
                    }
                }
                total
            }
        }
    }
}

/// Exact probability that `k` uniformly random elements of the group
/// commute pairwise, by direct counting over nested centralizers.
pub fn oracle_commuting_probability(spec: &GroupSpec, k: usize) -> Result<BigRational> {
    if !(1..=5).contains(&k) {
        return Err(Error::UnsupportedK(k));
    }
    let guard = oracle_guard(k);
    let order = spec
        .order_u64()
        .filter(|&o| o <= guard)
        .ok_or_else(|| Error::SizeGuardExceeded {
            order: spec.order_u64().unwrap_or(u64::MAX),
            guard,
        })?;
    let elems: Vec<TriMatrix> = spec.enumerate(guard)?.map(|c| spec.decode_unchecked(c)).collect();
    debug_assert_eq!(elems.len() as u64, order);
    let table = CommuteTable::new(&elems, spec);
    let mut all = vec![0u64; table.words];
    for i in 0..elems.len() {
        all[i >> 6] |= 1 << (i & 63);
    }
    let tuples = table.count(&all, k);
    Ok(BigRational::new(
        BigInt::from(tuples),
        BigInt::from(order).pow(k as u32),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigroup::Family;

    fn cp(fam: Family, n: usize, q: u32, k: usize) -> BigRational {
        oracle_commuting_probability(&GroupSpec::new(fam, n, q).unwrap(), k).unwrap()
    }

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn gt2_f3_pairs() {
        assert_eq!(cp(Family::Gt, 2, 3, 2), frac(1, 2));
    }

    #[test]
    fn ut3_f3() {
        assert_eq!(cp(Family::Ut, 3, 3, 1), frac(1, 1));
        assert_eq!(cp(Family::Ut, 3, 3, 2), frac(11, 27));
        assert_eq!(cp(Family::Ut, 3, 3, 3), frac(35, 243));
    }

    #[test]
    fn ut4_f3_class_number() {
        // k(UT_4(3)) = 2q^3 + q^2 - 2q = 57.
        assert_eq!(cp(Family::Ut, 4, 3, 2), frac(57, 729));
    }

    #[test]
    fn guards() {
        let big = GroupSpec::new(Family::Gt, 3, 5).unwrap();
        assert_eq!(
            oracle_commuting_probability(&big, 2).unwrap_err(),
            Error::SizeGuardExceeded {
                order: 8000,
                guard: 1000
            }
        );
        let ut3_5 = GroupSpec::new(Family::Ut, 3, 5).unwrap();
        assert_eq!(
            oracle_commuting_probability(&ut3_5, 4).unwrap_err(),
            Error::SizeGuardExceeded { order: 125, guard: 100 }
        );
        assert_eq!(
            oracle_commuting_probability(&ut3_5, 6).unwrap_err(),
            Error::UnsupportedK(6)
        );
    }

    #[test]
    fn abelian_group_commutes_always() {
        // GT_1 is not available; UT_2 is cyclic of order q.
        let spec = GroupSpec::new(Family::Ut, 2, 7).unwrap();
        for k in 1..=4 {
            assert_eq!(oracle_commuting_probability(&spec, k).unwrap(), frac(1, 1));
        }
    }
}
