//! Dense linear algebra over `F_q` on small row-vector systems.

use crate::ffield::PrimeField;

/// Width of the fixed rows used by [`split_rank`].
pub const SMALL_WIDTH: usize = 32;
pub type SmallRow = [u8; SMALL_WIDTH];

#[inline]
fn axpy(dst: &mut [u8], factor: u8, src: &[u8], q: u32) {
    // dst -= factor * src
    if factor == 0 {
        return;
    }
    let qq = q * q;
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = ((*d as u32 + qq - factor as u32 * s as u32) % q) as u8;
        }
    }
}

#[inline]
fn scale(row: &mut [u8], factor: u8, q: u32) {
    for v in row.iter_mut() {
        *v = (*v as u32 * factor as u32 % q) as u8;
    }
}

/// Brings `rows` to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<u8>>, f: &PrimeField) -> Vec<usize> {
    let q = f.q();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv_unchecked(rows[r][col]);
        scale(&mut rows[r], inv, q);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                let factor = row[col];
                axpy(row, factor, &pivot_row, q);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<u8>], f: &PrimeField) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, f).len()
}

/// Basis (in reduced echelon form) of `{c : sum_k c_k * rows[k] = 0}`.
pub fn left_kernel(rows: &[Vec<u8>], f: &PrimeField) -> Vec<Vec<u8>> {
    let d = rows.len();
    if d == 0 {
        return Vec::new();
    }
    let width = rows[0].len();
    let mut aug: Vec<Vec<u8>> = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let mut v = r.clone();
            v.extend((0..d).map(|i| u8::from(i == k)));
            v
        })
        .collect();
    // Eliminate on the left block only; rows whose left block vanishes
    // carry kernel vectors in the right block.
    let q = f.q();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..d).find(|&i| aug[i][col] != 0) else {
            continue;
        };
        aug.swap(r, p);
        let inv = f.inv_unchecked(aug[r][col]);
        scale(&mut aug[r], inv, q);
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != r {
                let factor = row[col];
                axpy(row, factor, &pivot_row, q);
            }
        }
        r += 1;
    }
    let mut kernel: Vec<Vec<u8>> = aug[r..].iter().map(|row| row[width..].to_vec()).collect();
    rref(&mut kernel, f);
    kernel
}

/// Coefficients `c` with `sum_k c_k * rows[k] = target`, if any exist.
pub fn solve_combination(rows: &[Vec<u8>], target: &[u8], f: &PrimeField) -> Option<Vec<u8>> {
    let mut system = rows.to_vec();
    system.push(target.iter().map(|&t| f.neg(t)).collect());
    let kernel = left_kernel(&system, f);
    let last = rows.len();
    let v = kernel.iter().find(|k| k[last] != 0)?;
    let inv = f.inv_unchecked(v[last]);
    Some(v[..last].iter().map(|&c| f.mul(c, inv)).collect())
}

/// Ranks of a stacked system: `r1` is the rank of the first `split` columns,
/// `r2` the rank of the first `width` columns. Destroys `rows`.
pub fn split_rank(rows: &mut [SmallRow], split: usize, width: usize, f: &PrimeField) -> (usize, usize) {
    let q = f.q();
    let n = rows.len();
    let mut r = 0;
    let mut r1 = 0;
    for col in 0..width {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv_unchecked(rows[r][col]);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &mut head[r];
        scale(&mut pivot[col..width], inv, q);
        for row in tail.iter_mut() {
            let factor = row[col];
            axpy(&mut row[col..width], factor, &pivot[col..width], q);
        }
        if col < split {
            r1 += 1;
        }
        r += 1;
    }
    (r1, r)
}
