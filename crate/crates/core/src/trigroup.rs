//! Upper-triangular matrices over `F_q`, the groups `GT_n` and `UT_n`, and
//! the mixed-radix encoding that identifies every group element with an
//! integer code in `[0, |G|)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::PrimeField;

pub const MAX_N: usize = 6;
pub const MIN_N: usize = 2;

/// Default element-count guard for anything that enumerates a whole group.
pub const DEFAULT_GUARD: u64 = 20_000_000;

/// Index of an element in the code space of its group.
pub type ElementCode = u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Invertible upper-triangular matrices.
    Gt,
    /// Upper unitriangular matrices.
    Ut,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gt => "gt",
            Family::Ut => "ut",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gt => "GT",
            Family::Ut => "UT",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gt" => Ok(Family::Gt),
            "ut" => Ok(Family::Ut),
            other => Err(format!("unknown family `{other}` (expected gt or ut)")),
        }
    }
}

/// An upper-triangular `n x n` matrix with entries in `[0, q)`.
///
/// Entries below the diagonal are always zero. The matrix does not carry its
/// field; arithmetic goes through a [`GroupSpec`] or an explicit
/// [`PrimeField`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriMatrix {
    n: u8,
    unitriangular: bool,
    a: [[u8; MAX_N]; MAX_N],
}

impl TriMatrix {
    pub fn identity(n: usize, unitriangular: bool) -> TriMatrix {
        let mut a = [[0u8; MAX_N]; MAX_N];
        for (i, row) in a.iter_mut().enumerate().take(n) {
            row[i] = 1;
        }
        TriMatrix {
            n: n as u8,
            unitriangular,
            a,
        }
    }

    /// Builds a matrix from dense rows. Entries below the diagonal must be zero.
    pub fn from_rows(rows: &[Vec<u8>], unitriangular: bool) -> Result<TriMatrix> {
        let n = rows.len();
        if !(MIN_N..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        let mut m = TriMatrix::identity(n, unitriangular);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch);
            }
            for (j, &v) in row.iter().enumerate() {
                if j < i {
                    if v != 0 {
                        return Err(Error::NotInGroup("nonzero entry below the diagonal"));
                    }
                } else {
                    m.a[i][j] = v;
                }
            }
        }
        if unitriangular && (0..n).any(|i| m.a[i][i] != 1) {
            return Err(Error::NotInGroup("diagonal entry differs from 1"));
        }
        if (0..n).any(|i| m.a[i][i] == 0) {
            return Err(Error::NotInGroup("zero diagonal entry"));
        }
        Ok(m)
    }

    /// Identity plus `value` at position `(i, j)`, `i < j`.
    pub fn transvection(n: usize, unitriangular: bool, i: usize, j: usize, value: u8) -> TriMatrix {
        assert!(i < j && j < n);
        let mut m = TriMatrix::identity(n, unitriangular);
        m.a[i][j] = value;
        m
    }

    pub fn diagonal(diag: &[u8]) -> TriMatrix {
        let mut m = TriMatrix::identity(diag.len(), false);
        for (i, &d) in diag.iter().enumerate() {
            m.a[i][i] = d;
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_unitriangular(&self) -> bool {
        self.unitriangular
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.a[i][j]
    }

    /// Sets an entry on or above the diagonal.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(i <= j && j < self.n());
        self.a[i][j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.a[i][j]).collect())
            .collect()
    }

    /// Product in the ring of upper-triangular matrices; no group checks.
    #[inline]
    pub fn mul_unchecked(&self, other: &TriMatrix, field: &PrimeField) -> TriMatrix {
        let n = self.n();
        let q = field.q();
        let mut out = [[0u8; MAX_N]; MAX_N];
        for i in 0..n {
            for j in i..n {
                let mut s = 0u32;
                for k in i..=j {
                    s += self.a[i][k] as u32 * other.a[k][j] as u32;
                }
                out[i][j] = (s % q) as u8;
            }
        }
        TriMatrix {
            n: self.n,
            unitriangular: self.unitriangular,
            a: out,
        }
    }

    /// Matrix product, checking that both operands have the same shape and family.
    pub fn mul(&self, other: &TriMatrix, field: &PrimeField) -> Result<TriMatrix> {
        if self.n != other.n || self.unitriangular != other.unitriangular {
            return Err(Error::DimensionMismatch);
        }
        Ok(self.mul_unchecked(other, field))
    }

    /// Inverse by back-substitution on the triangular system.
    pub fn inverse(&self, field: &PrimeField) -> TriMatrix {
        let n = self.n();
        let q = field.q();
        let mut x = [[0u8; MAX_N]; MAX_N];
        for j in 0..n {
            x[j][j] = field.inv_unchecked(self.a[j][j]);
            for i in (0..j).rev() {
                let mut s = 0u32;
                for k in i + 1..=j {
                    s += self.a[i][k] as u32 * x[k][j] as u32;
                }
                let s = (s % q) as u8;
                let inv_ii = field.inv_unchecked(self.a[i][i]);
                x[i][j] = field.neg(field.mul(inv_ii, s));
            }
        }
        TriMatrix {
            n: self.n,
            unitriangular: self.unitriangular,
            a: x,
        }
    }

    /// `self * other == other * self`.
    #[inline]
    pub fn commutes_with(&self, other: &TriMatrix, field: &PrimeField) -> bool {
        self.mul_unchecked(other, field) == other.mul_unchecked(self, field)
    }

    /// Square-and-multiply power.
    pub fn pow(&self, mut e: u64, field: &PrimeField) -> TriMatrix {
        let mut base = *self;
        let mut acc = TriMatrix::identity(self.n(), self.unitriangular);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base, field);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base, field);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == TriMatrix::identity(self.n(), self.unitriangular)
    }
}

impl fmt::Debug for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.a[i][j])?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug)]
struct Digit {
    i: u8,
    j: u8,
    weight: u64,
}

/// A concrete group `GT_n(F_q)` or `UT_n(F_q)`.
#[derive(Clone)]
pub struct GroupSpec {
    family: Family,
    n: usize,
    field: Arc<PrimeField>,
    order: BigUint,
    order_u64: Option<u64>,
    digits: Vec<Digit>,
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}(F_{})", self.family, self.n, self.field.q())
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.n == other.n && self.field.q() == other.field.q()
    }
}

impl Eq for GroupSpec {}

impl GroupSpec {
    pub fn new(family: Family, n: usize, q: u32) -> Result<GroupSpec> {
        let field = PrimeField::new(q)?;
        GroupSpec::with_field(family, n, Arc::new(field))
    }

    pub fn with_field(family: Family, n: usize, field: Arc<PrimeField>) -> Result<GroupSpec> {
        if !(MIN_N..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        let q = field.q() as u64;
        let upper = (n * (n - 1) / 2) as u32;
        let mut order = BigUint::from(q).pow(upper);
        if family == Family::Gt {
            order *= BigUint::from(q - 1).pow(n as u32);
        }
        let order_u64 = order.to_u64();

        // Row-major over stored entries; the first stored entry is the least
        // significant digit.
        let mut digits = Vec::new();
        let mut weight: u64 = 1;
        for i in 0..n {
            for j in i..n {
                let base = if i == j {
                    if family == Family::Ut {
                        continue;
                    }
                    q - 1
                } else {
                    q
                };
                digits.push(Digit {
                    i: i as u8,
                    j: j as u8,
                    weight,
                });
                weight = weight.saturating_mul(base);
            }
        }
        Ok(GroupSpec {
            family,
            n,
            field,
            order,
            order_u64,
            digits,
        })
    }

    #[inline]
    pub fn family(&self) -> Family {
        self.family
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q()
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<PrimeField> {
        Arc::clone(&self.field)
    }

    /// `|G|` as an exact integer.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The encoding is a bijection onto `[0, |G|)`, so this equals the order.
    pub fn code_space(&self) -> &BigUint {
        &self.order
    }

    /// `|G|` when it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order_u64
    }

    /// `|G|`, failing if it exceeds `guard`.
    pub fn guarded_order(&self, guard: u64) -> Result<u64> {
        match self.order_u64 {
            Some(o) if o <= guard => Ok(o),
            _ => Err(Error::ResourceGuardExceeded {
                order: self.order.to_string(),
                guard,
            }),
        }
    }

    pub fn label(&self) -> String {
        format!("{}_{}(F_{})", self.family, self.n, self.q())
    }

    pub fn identity(&self) -> TriMatrix {
        TriMatrix::identity(self.n, self.family == Family::Ut)
    }

    #[inline]
    pub fn mul(&self, a: &TriMatrix, b: &TriMatrix) -> TriMatrix {
        a.mul_unchecked(b, &self.field)
    }

    #[inline]
    pub fn inv(&self, a: &TriMatrix) -> TriMatrix {
        a.inverse(&self.field)
    }

    /// `g * x * g_inv`.
    #[inline]
    pub fn conj(&self, g: &TriMatrix, x: &TriMatrix, g_inv: &TriMatrix) -> TriMatrix {
        g.mul_unchecked(x, &self.field).mul_unchecked(g_inv, &self.field)
    }

    /// Checks that `m` is an element of this group.
    pub fn contains(&self, m: &TriMatrix) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::DimensionMismatch);
        }
        let q = self.q() as u8;
        for i in 0..self.n {
            for j in i..self.n {
                if m.get(i, j) >= q {
                    return Err(Error::NotInGroup("entry is not reduced mod q"));
                }
            }
            let d = m.get(i, i);
            if d == 0 {
                return Err(Error::NotInGroup("zero diagonal entry"));
            }
            if self.family == Family::Ut && d != 1 {
                return Err(Error::NotInGroup("diagonal entry differs from 1"));
            }
        }
        Ok(())
    }

    /// Mixed-radix code of a group element.
    pub fn encode(&self, m: &TriMatrix) -> Result<ElementCode> {
        self.contains(m)?;
        if self.order_u64.is_none() {
            return Err(Error::ResourceGuardExceeded {
                order: self.order.to_string(),
                guard: u64::MAX,
            });
        }
        Ok(self.encode_unchecked(m))
    }

    #[inline]
    pub fn encode_unchecked(&self, m: &TriMatrix) -> ElementCode {
        let mut code = 0u64;
        for d in &self.digits {
            let v = m.a[d.i as usize][d.j as usize];
            let digit = if d.i == d.j {
                self.field.unit_index(v) as u64
            } else {
                v as u64
            };
            code += digit * d.weight;
        }
        code
    }

    /// Inverse of [`encode`](Self::encode).
    pub fn decode(&self, code: ElementCode) -> Result<TriMatrix> {
        match self.order_u64 {
            Some(o) if code < o => Ok(self.decode_unchecked(code)),
            _ => Err(Error::CodeOutOfRange(code)),
        }
    }

    #[inline]
    pub fn decode_unchecked(&self, mut code: ElementCode) -> TriMatrix {
        let mut m = self.identity();
        let q = self.q() as u64;
        for d in &self.digits {
            let (i, j) = (d.i as usize, d.j as usize);
            if i == j {
                m.a[i][i] = self.field.unit_at((code % (q - 1)) as usize);
                code /= q - 1;
            } else {
                m.a[i][j] = (code % q) as u8;
                code /= q;
            }
        }
        m
    }

    /// Every code `0..|G|` in increasing order.
    pub fn enumerate(&self, guard: u64) -> Result<std::ops::Range<ElementCode>> {
        let order = self.guarded_order(guard)?;
        Ok(0..order)
    }

    /// Superdiagonal transvections, plus (for `GT_n`) the diagonal matrices
    /// carrying the primitive root in one slot.
    pub fn generators(&self) -> Vec<TriMatrix> {
        let unit = self.family == Family::Ut;
        let mut gens: Vec<TriMatrix> = (0..self.n - 1)
            .map(|i| TriMatrix::transvection(self.n, unit, i, i + 1, 1))
            .collect();
        if self.family == Family::Gt {
            let g = self.field.primitive_root();
            for i in 0..self.n {
                let mut d = vec![1u8; self.n];
                d[i] = g;
                gens.push(TriMatrix::diagonal(&d));
            }
        }
        gens
    }

    /// Size of the subgroup generated by [`generators`](Self::generators),
    /// computed by closure BFS over the code space.
    pub fn closure_order(&self, gens: &[TriMatrix], guard: u64) -> Result<u64> {
        let order = self.guarded_order(guard)?;
        let mut seen = crate::bitset::BitSet::new(order as usize);
        let id = self.identity();
        seen.insert(self.encode_unchecked(&id) as usize);
        let mut frontier = vec![id];
        let mut count = 1u64;
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(self.encode_unchecked(&y) as usize) {
                    count += 1;
                    frontier.push(y);
                }
            }
        }
        Ok(count)
    }

    /// Closed form of `|G|` as a float, for error messages and planning.
    pub fn order_f64(&self) -> f64 {
        let q = self.q() as f64;
        let upper = (self.n * (self.n - 1) / 2) as i32;
        let mut o = q.powi(upper);
        if self.family == Family::Gt {
            o *= (q - 1.0).powi(self.n as i32);
        }
        o
    }

    pub fn is_trivially_small(&self) -> bool {
        self.order.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_mul(a: &TriMatrix, b: &TriMatrix, q: u32) -> Vec<Vec<u8>> {
        let n = a.n();
        let (ra, rb) = (a.to_rows(), b.to_rows());
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s: u32 = (0..n).map(|k| ra[i][k] as u32 * rb[k][j] as u32).sum();
                        (s % q) as u8
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn orders_match_closed_forms() {
        for q in [3u32, 5, 7] {
            for n in 2..=5 {
                let gt = GroupSpec::new(Family::Gt, n, q).unwrap();
                let ut = GroupSpec::new(Family::Ut, n, q).unwrap();
                let e = (n * (n - 1) / 2) as u32;
                assert_eq!(
                    *gt.order(),
                    BigUint::from(q - 1).pow(n as u32) * BigUint::from(q).pow(e)
                );
                assert_eq!(*ut.order(), BigUint::from(q).pow(e));
            }
        }
    }

    #[test]
    fn unitriangular_product_example() {
        let g = GroupSpec::new(Family::Ut, 3, 3).unwrap();
        let a = TriMatrix::transvection(3, true, 0, 1, 1);
        let b = TriMatrix::transvection(3, true, 1, 2, 1);
        let p = g.mul(&a, &b);
        let expected = TriMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]], true).unwrap();
        assert_eq!(p, expected);
        assert_eq!(g.mul(&g.identity(), &p), p);
    }

    #[test]
    fn inverse_examples() {
        let g = GroupSpec::new(Family::Ut, 3, 3).unwrap();
        let e = TriMatrix::transvection(3, true, 0, 1, 1);
        let expected = TriMatrix::transvection(3, true, 0, 1, 2);
        assert_eq!(g.inv(&e), expected);
        assert_eq!(g.inv(&g.identity()), g.identity());

        let g = GroupSpec::new(Family::Gt, 2, 5).unwrap();
        let m = TriMatrix::from_rows(&[vec![2, 1], vec![0, 1]], false).unwrap();
        assert!(g.mul(&m, &g.inv(&m)).is_identity());
        assert!(g.mul(&g.inv(&m), &m).is_identity());
    }

    #[test]
    fn mismatched_shapes_rejected() {
        let f = PrimeField::new(5).unwrap();
        let a = TriMatrix::identity(3, false);
        let b = TriMatrix::identity(4, false);
        assert_eq!(a.mul(&b, &f), Err(Error::DimensionMismatch));
    }

    #[test]
    fn encode_identity_is_zero() {
        for fam in [Family::Gt, Family::Ut] {
            let g = GroupSpec::new(fam, 4, 5).unwrap();
            assert_eq!(g.encode(&g.identity()).unwrap(), 0);
        }
    }

    #[test]
    fn encode_rejects_non_members() {
        let g = GroupSpec::new(Family::Ut, 3, 3).unwrap();
        let mut m = TriMatrix::identity(3, true);
        m.set(1, 1, 2);
        assert!(matches!(g.encode(&m), Err(Error::NotInGroup(_))));
        let gt = GroupSpec::new(Family::Gt, 3, 3).unwrap();
        let mut z = TriMatrix::identity(3, false);
        z.set(0, 0, 0);
        assert!(matches!(gt.encode(&z), Err(Error::NotInGroup(_))));
        assert!(matches!(gt.decode(12 * 27 * 100), Err(Error::CodeOutOfRange(_))));
    }

    #[test]
    fn encoding_is_bijective_on_small_groups() {
        for (fam, n, q) in [
            (Family::Ut, 3, 3),
            (Family::Gt, 2, 3),
            (Family::Gt, 3, 3),
            (Family::Ut, 4, 3),
            (Family::Gt, 3, 5),
        ] {
            let g = GroupSpec::new(fam, n, q).unwrap();
            let order = g.order_u64().unwrap();
            let mut seen = std::collections::HashSet::new();
            for c in g.enumerate(DEFAULT_GUARD).unwrap() {
                let m = g.decode(c).unwrap();
                g.contains(&m).unwrap();
                assert!(seen.insert(m));
                assert_eq!(g.encode(&m).unwrap(), c);
            }
            assert_eq!(seen.len() as u64, order);
        }
        let ut3 = GroupSpec::new(Family::Ut, 3, 3).unwrap();
        assert_eq!(ut3.enumerate(DEFAULT_GUARD).unwrap().count(), 27);
        let gt2 = GroupSpec::new(Family::Gt, 2, 3).unwrap();
        assert_eq!(gt2.enumerate(DEFAULT_GUARD).unwrap().count(), 12);
    }

    #[test]
    fn guard_is_enforced() {
        let g = GroupSpec::new(Family::Ut, 5, 5).unwrap();
        assert!(matches!(
            g.enumerate(1_000_000),
            Err(Error::ResourceGuardExceeded { .. })
        ));
    }

    #[test]
    fn products_match_dense_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (fam, n, q) in [(Family::Gt, 4, 5), (Family::Ut, 5, 7), (Family::Gt, 6, 3)] {
            let g = GroupSpec::new(fam, n, q).unwrap();
            let o = g.order_u64().unwrap();
            for _ in 0..200 {
                let a = g.decode(rng.gen_range(0..o)).unwrap();
                let b = g.decode(rng.gen_range(0..o)).unwrap();
                assert_eq!(g.mul(&a, &b).to_rows(), dense_mul(&a, &b, q));
                assert!(g.mul(&a, &g.inv(&a)).is_identity());
            }
        }
    }

    #[test]
    fn round_trip_random_gt4() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = GroupSpec::new(Family::Gt, 4, 5).unwrap();
        let o = g.order_u64().unwrap();
        for _ in 0..1000 {
            let c = rng.gen_range(0..o);
            let m = g.decode(c).unwrap();
            assert_eq!(g.decode(g.encode(&m).unwrap()).unwrap(), m);
            assert_eq!(g.encode(&m).unwrap(), c);
        }
    }

    #[test]
    fn group_axioms_exhaustive_small() {
        let g = GroupSpec::new(Family::Gt, 2, 3).unwrap();
        let elems: Vec<TriMatrix> = g.enumerate(100).unwrap().map(|c| g.decode(c).unwrap()).collect();
        for a in &elems {
            for b in &elems {
                let ab = g.mul(a, b);
                g.contains(&ab).unwrap();
                for c in &elems {
                    assert_eq!(g.mul(&ab, c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn generators_generate() {
        let ut3 = GroupSpec::new(Family::Ut, 3, 3).unwrap();
        assert_eq!(ut3.generators().len(), 2);
        assert_eq!(ut3.closure_order(&ut3.generators(), DEFAULT_GUARD).unwrap(), 27);
        let gt2 = GroupSpec::new(Family::Gt, 2, 3).unwrap();
        assert_eq!(gt2.generators().len(), 3);
        assert_eq!(gt2.closure_order(&gt2.generators(), DEFAULT_GUARD).unwrap(), 12);
        let ut4 = GroupSpec::new(Family::Ut, 4, 5).unwrap();
        assert_eq!(ut4.generators().len(), 3);
        for (fam, n, q) in [(Family::Gt, 3, 5), (Family::Gt, 4, 3), (Family::Ut, 5, 3)] {
            let g = GroupSpec::new(fam, n, q).unwrap();
            assert_eq!(
                g.closure_order(&g.generators(), DEFAULT_GUARD).unwrap(),
                g.order_u64().unwrap()
            );
        }
    }
}
