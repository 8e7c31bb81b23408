//! Subalgebras of the upper-triangular matrix algebra and the groups they
//! carry.
//!
//! Every centralizer of a tuple in `GT_n(F_q)` is the unit group of the
//! commutant algebra of the tuple, and every centralizer in `UT_n(F_q)` is
//! `1 + J` for the nilpotent part `J` of that commutant. A [`Subalgebra`]
//! stores such an algebra in reduced echelon form, which makes equality of
//! centralizers a byte comparison and turns centralizer orders into ranks.

use serde::{Deserialize, Serialize};

use crate::ffield::PrimeField;
use crate::linalg::{self, SmallRow, SMALL_WIDTH};
use crate::trigroup::{Family, GroupSpec, TriMatrix};

/// Number of stored entries of an upper-triangular `n x n` matrix.
pub fn tri_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Row-major positions `(i, j)`, `i <= j`.
pub fn positions(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

pub fn to_vec(m: &TriMatrix) -> Vec<u8> {
    let n = m.n();
    positions(n).into_iter().map(|(i, j)| m.get(i, j)).collect()
}

/// Matrix with the given entries. The diagonal may contain zeros; the result
/// is an algebra element, not necessarily a group element.
pub fn from_vec(n: usize, unitriangular: bool, v: &[u8]) -> TriMatrix {
    let mut m = TriMatrix::identity(n, unitriangular);
    for (k, (i, j)) in positions(n).into_iter().enumerate() {
        m.set(i, j, v[k]);
    }
    m
}

fn commutator_into(b: &TriMatrix, x: &TriMatrix, f: &PrimeField, out: &mut [u8]) {
    let bx = b.mul_unchecked(x, f);
    let xb = x.mul_unchecked(b, f);
    let n = b.n();
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            out[k] = f.sub(bx.get(i, j), xb.get(i, j));
            k += 1;
        }
    }
}

/// A unital subalgebra `V` of the upper-triangular matrices. For the `UT`
/// family `V` is always contained in `F*I + N` with `N` the strictly upper
/// triangular matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subalgebra {
    family: Family,
    n: usize,
    basis: Vec<Vec<u8>>,
    #[serde(skip)]
    cache: Derived,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Derived {
    pivots: Vec<usize>,
    nil: Vec<Vec<u8>>,
    nil_pivots: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    basis_mats: Vec<TriMatrix>,
}

impl Subalgebra {
    /// The algebra whose group is the whole of `spec`.
    pub fn full(spec: &GroupSpec) -> Subalgebra {
        let n = spec.n();
        let d = tri_dim(n);
        let pos = positions(n);
        let basis: Vec<Vec<u8>> = match spec.family() {
            Family::Gt => (0..d).map(|k| (0..d).map(|l| u8::from(k == l)).collect()).collect(),
            Family::Ut => {
                let mut rows: Vec<Vec<u8>> = vec![pos.iter().map(|&(i, j)| u8::from(i == j)).collect()];
                for (k, &(i, j)) in pos.iter().enumerate() {
                    if i < j {
                        rows.push((0..d).map(|l| u8::from(k == l)).collect());
                    }
                }
                rows
            }
        };
        Subalgebra::from_span(spec.family(), n, basis, spec.field())
    }

    /// The algebra spanned by `vectors`. The caller guarantees that the span
    /// is a unital subalgebra of the right shape.
    pub fn from_span(family: Family, n: usize, mut vectors: Vec<Vec<u8>>, f: &PrimeField) -> Subalgebra {
        let pivots = linalg::rref(&mut vectors, f);
        let mut a = Subalgebra {
            family,
            n,
            basis: vectors,
            cache: Derived::default(),
        };
        a.cache.pivots = pivots;
        a.rebuild(f);
        a
    }

    /// Restores derived data after deserialization.
    pub fn rehydrate(&mut self, f: &PrimeField) {
        let mut b = self.basis.clone();
        self.cache.pivots = linalg::rref(&mut b, f);
        self.basis = b;
        self.rebuild(f);
    }

    fn rebuild(&mut self, f: &PrimeField) {
        let n = self.n;
        let pos = positions(n);
        let diag_idx: Vec<usize> = pos
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| i == j)
            .map(|(k, _)| k)
            .collect();
        let diag_rows: Vec<Vec<u8>> = self
            .basis
            .iter()
            .map(|b| diag_idx.iter().map(|&k| b[k]).collect())
            .collect();
        let ker = linalg::left_kernel(&diag_rows, f);
        let mut nil = combine_all(&ker, &self.basis, f);
        let nil_pivots = linalg::rref(&mut nil, f);

        let mut image = diag_rows;
        linalg::rref(&mut image, f);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            match blocks.iter_mut().find(|blk| image.iter().all(|r| r[blk[0]] == r[i])) {
                Some(blk) => blk.push(i),
                None => blocks.push(vec![i]),
            }
        }
        self.cache.nil = nil;
        self.cache.nil_pivots = nil_pivots;
        self.cache.blocks = blocks;
        self.cache.basis_mats = self.basis.iter().map(|b| from_vec(n, false, b)).collect();
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    /// Dimension of the nilpotent radical `V ∩ N`.
    pub fn nil_dim(&self) -> usize {
        self.cache.nil.len()
    }

    /// Partition of the diagonal indices on which every element of `V` is constant.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.cache.blocks
    }

    /// Order of the group carried by `V`.
    pub fn group_order(&self, q: u32) -> u64 {
        let q = q as u64;
        let unip = q.pow(self.nil_dim() as u32);
        match self.family {
            Family::Gt => unip * (q - 1).pow(self.cache.blocks.len() as u32),
            Family::Ut => unip,
        }
    }

    /// Canonical byte key: two algebras carry the same group iff their keys agree.
    pub fn key(&self) -> Vec<u8> {
        let mut k = Vec::with_capacity(2 + self.basis.len() * tri_dim(self.n));
        k.push(self.n as u8);
        k.push(self.basis.len() as u8);
        for row in &self.basis {
            k.extend_from_slice(row);
        }
        k
    }

    fn is_unitriangular(&self) -> bool {
        self.family == Family::Ut
    }

    /// Whether `m` lies in `V` (as an algebra element).
    pub fn contains_vec(&self, v: &[u8], f: &PrimeField) -> bool {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.cache.pivots) {
            let c = r[p];
            if c != 0 {
                for (x, &b) in r.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        r.iter().all(|&x| x == 0)
    }

    /// Whether the group element `m` belongs to the group carried by `V`.
    pub fn contains_element(&self, m: &TriMatrix, f: &PrimeField) -> bool {
        self.contains_vec(&to_vec(m), f)
    }

    /// Size of the dense local index space used by [`local_index`](Self::local_index).
    pub fn local_space(&self, q: u32) -> u64 {
        let d = match self.family {
            Family::Gt => self.dim(),
            Family::Ut => self.nil_dim(),
        };
        (q as u64).pow(d as u32)
    }

    /// Dense index of a group element of `V` from its echelon coordinates.
    #[inline]
    pub fn local_index(&self, m: &TriMatrix, q: u32) -> u64 {
        let (rows_pivots, shift) = match self.family {
            Family::Gt => (&self.cache.pivots, false),
            Family::Ut => (&self.cache.nil_pivots, true),
        };
        let n = self.n;
        let mut idx = 0u64;
        let mut w = 1u64;
        for &p in rows_pivots {
            let (i, j) = position_of(n, p);
            let mut v = m.get(i, j);
            if shift && i == j {
                v = (v as u32 + q - 1) as u8 % q as u8;
            }
            idx += v as u64 * w;
            w *= q as u64;
        }
        idx
    }

    /// All elements of the carried group, in enumeration order.
    pub fn elements(&self, f: &PrimeField) -> Vec<TriMatrix> {
        let q = f.q() as u8;
        let n = self.n;
        let (gens, base): (&[Vec<u8>], Vec<u8>) = match self.family {
            Family::Gt => (&self.basis, vec![0u8; tri_dim(n)]),
            Family::Ut => (&self.cache.nil, to_vec(&TriMatrix::identity(n, true))),
        };
        let d = gens.len();
        let mut coeff = vec![0u8; d];
        let mut cur = base;
        let mut out = Vec::new();
        let diag: Vec<usize> = positions(n)
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| i == j)
            .map(|(k, _)| k)
            .collect();
        loop {
            if diag.iter().all(|&k| cur[k] != 0) {
                out.push(from_vec(n, self.is_unitriangular(), &cur));
            }
            // odometer step: add gens[k] at the first non-wrapping digit
            let mut k = 0;
            loop {
                if k == d {
                    return out;
                }
                coeff[k] += 1;
                for (c, &g) in cur.iter_mut().zip(&gens[k]) {
                    *c = f.add(*c, g);
                }
                if coeff[k] == q {
                    coeff[k] = 0;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// `V ∩ comm(x)`: the algebra of the centralizer of `x` inside the group of `V`.
    pub fn centralize(&self, x: &TriMatrix, f: &PrimeField) -> Subalgebra {
        let d = tri_dim(self.n);
        let rows: Vec<Vec<u8>> = self
            .cache
            .basis_mats
            .iter()
            .map(|b| {
                let mut v = vec![0u8; d];
                commutator_into(b, x, f, &mut v);
                v
            })
            .collect();
        let ker = linalg::left_kernel(&rows, f);
        let span = combine_all(&ker, &self.basis, f);
        Subalgebra::from_span(self.family, self.n, span, f)
    }

    /// Commutant of a list of elements inside `V`.
    pub fn centralize_all(&self, xs: &[TriMatrix], f: &PrimeField) -> Subalgebra {
        let mut a = self.clone();
        for x in xs {
            a = a.centralize(x, f);
        }
        a
    }

    /// The centre of the carried group, again as an algebra.
    pub fn center(&self, f: &PrimeField) -> Subalgebra {
        let mats = self.cache.basis_mats.clone();
        self.centralize_all(&mats, f)
    }

    pub fn is_commutative(&self, f: &PrimeField) -> bool {
        let m = &self.cache.basis_mats;
        (0..m.len()).all(|a| (a + 1..m.len()).all(|b| m[a].commutes_with(&m[b], f)))
    }

    /// Order of the centralizer of `x` in the carried group, via two ranks.
    #[inline]
    pub fn centralizer_order_of(&self, x: &TriMatrix, f: &PrimeField) -> u64 {
        let n = self.n;
        let dd = tri_dim(n);
        let q = f.q() as u64;
        let mut rows: Vec<SmallRow> = Vec::with_capacity(self.basis.len());
        for (b, bv) in self.cache.basis_mats.iter().zip(&self.basis) {
            let mut row = [0u8; SMALL_WIDTH];
            commutator_into(b, x, f, &mut row[..dd]);
            if self.family == Family::Gt {
                for i in 0..n {
                    row[dd + i] = bv[diag_pos(n, i)];
                }
            }
            rows.push(row);
        }
        let d = self.basis.len();
        match self.family {
            Family::Gt => {
                let (r1, r2) = linalg::split_rank(&mut rows, dd, dd + n, f);
                q.pow((d - r2) as u32) * (q - 1).pow((r2 - r1) as u32)
            }
            Family::Ut => {
                let (r1, _) = linalg::split_rank(&mut rows, dd, dd, f);
                q.pow((d - r1 - 1) as u32)
            }
        }
    }

    /// A generating set of the carried group.
    ///
    /// For the unipotent radical `1 + J` the generators are `1 + b` for a basis
    /// adapted to the filtration `J ⊃ J^2 ⊃ ...`; for `GT` these are joined by
    /// one lift per diagonal block of the primitive root on that block.
    pub fn generators(&self, f: &PrimeField) -> Vec<TriMatrix> {
        let n = self.n;
        let unit = self.is_unitriangular();
        let ident = TriMatrix::identity(n, unit);
        let mut gens = Vec::new();
        for b in adapted_basis(&self.cache.nil, n, f) {
            let mut v = to_vec(&ident);
            for (x, &y) in v.iter_mut().zip(&b) {
                *x = f.add(*x, y);
            }
            gens.push(from_vec(n, unit, &v));
        }
        if self.family == Family::Gt {
            let g = f.primitive_root();
            let diag_rows: Vec<Vec<u8>> = self
                .basis
                .iter()
                .map(|b| (0..n).map(|i| b[diag_pos(n, i)]).collect())
                .collect();
            for blk in &self.cache.blocks {
                let target: Vec<u8> = (0..n).map(|i| if blk.contains(&i) { g } else { 1 }).collect();
                let c = linalg::solve_combination(&diag_rows, &target, f)
                    .expect("block-constant diagonal lies in the diagonal image");
                let v = combine(&c, &self.basis, f);
                gens.push(from_vec(n, false, &v));
            }
        }
        gens
    }
}

fn diag_pos(n: usize, i: usize) -> usize {
    // offset of row i plus zero
    (0..i).map(|r| n - r).sum()
}

fn position_of(n: usize, mut p: usize) -> (usize, usize) {
    for i in 0..n {
        let len = n - i;
        if p < len {
            return (i, i + p);
        }
        p -= len;
    }
    unreachable!("position out of range")
}

fn combine(c: &[u8], rows: &[Vec<u8>], f: &PrimeField) -> Vec<u8> {
    let mut out = vec![0u8; rows.first().map_or(0, Vec::len)];
    for (&ck, row) in c.iter().zip(rows) {
        if ck != 0 {
            for (o, &v) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(ck, v));
            }
        }
    }
    out
}

fn combine_all(coeffs: &[Vec<u8>], rows: &[Vec<u8>], f: &PrimeField) -> Vec<Vec<u8>> {
    coeffs.iter().map(|c| combine(c, rows, f)).collect()
}

/// Basis of `J` that contains a basis of every power `J^k`.
fn adapted_basis(j: &[Vec<u8>], n: usize, f: &PrimeField) -> Vec<Vec<u8>> {
    if j.is_empty() {
        return Vec::new();
    }
    let mats: Vec<TriMatrix> = j.iter().map(|v| from_vec(n, false, v)).collect();
    let mut powers: Vec<Vec<Vec<u8>>> = vec![j.to_vec()];
    loop {
        let last = powers.last().unwrap();
        let mut next: Vec<Vec<u8>> = Vec::new();
        for a in last {
            let am = from_vec(n, false, a);
            for b in &mats {
                next.push(to_vec(&am.mul_unchecked(b, f)));
            }
        }
        linalg::rref(&mut next, f);
        if next.is_empty() {
            break;
        }
        powers.push(next);
    }
    let mut chosen: Vec<Vec<u8>> = Vec::new();
    for level in powers.iter().rev() {
        for v in level {
            let mut trial = chosen.clone();
            trial.push(v.clone());
            if linalg::rank(&trial, f) == trial.len() {
                chosen.push(v.clone());
            }
        }
    }
    chosen
}
