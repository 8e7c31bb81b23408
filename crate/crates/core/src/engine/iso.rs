use std::collections::HashMap;

use super::{element_order, fingerprint, Subgroup, Tier};
use crate::error::{Error, Result};
use crate::trigroup::{ElementCode, GroupSpec, TriMatrix};

/// Largest order accepted by [`are_isomorphic`].
pub const ISO_SIZE_GUARD: u64 = 5000;

const UNSET: usize = usize::MAX;

/// Multiplication on a materialized subgroup by index.
struct Table<'a> {
    spec: &'a GroupSpec,
    elems: Vec<TriMatrix>,
    index: HashMap<ElementCode, usize>,
    order_of: Vec<u64>,
    centralizer: Vec<u64>,
    identity: usize,
}

impl<'a> Table<'a> {
    fn new(g: &'a Subgroup) -> Table<'a> {
        let spec = g.spec();
        let f = spec.field();
        let elems = g.element_matrices();
        let index: HashMap<ElementCode, usize> = elems
            .iter()
            .enumerate()
            .map(|(i, m)| (spec.encode_unchecked(m), i))
            .collect();
        let order_of = elems.iter().map(|x| element_order(spec, x)).collect();
        let centralizer = elems
            .iter()
            .map(|x| elems.iter().filter(|y| y.commutes_with(x, f)).count() as u64)
            .collect();
        let identity = index[&spec.encode_unchecked(&spec.identity())];
        Table {
            spec,
            elems,
            index,
            order_of,
            centralizer,
            identity,
        }
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    fn mul(&self, i: usize, j: usize) -> usize {
        let p = self.elems[i].mul_unchecked(&self.elems[j], self.spec.field());
        self.index[&self.spec.encode_unchecked(&p)]
    }

    /// Generators `g_1, ..., g_r` with `g_k` outside `<g_1, ..., g_{k-1}>`.
    fn irredundant_generators(&self) -> Vec<usize> {
        let mut cand: Vec<usize> = (0..self.len()).collect();
        cand.sort_by(|&a, &b| self.order_of[b].cmp(&self.order_of[a]).then(a.cmp(&b)));
        let mut inside = vec![false; self.len()];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut gens = Vec::new();
        for c in cand {
            if inside[c] {
                continue;
            }
            gens.push(c);
            let mut stack = members.clone();
            while let Some(x) = stack.pop() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            if members.len() == self.len() {
                break;
            }
        }
        gens
    }
}

/// Decides whether two subgroups of equal order are isomorphic by
/// backtracking over images of an irredundant generating sequence.
pub fn are_isomorphic(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    if a.order() > ISO_SIZE_GUARD {
        return Err(Error::SizeGuardExceeded {
            order: a.order(),
            guard: ISO_SIZE_GUARD,
        });
    }
    if fingerprint(a, Tier::Two, ISO_SIZE_GUARD)? != fingerprint(b, Tier::Two, ISO_SIZE_GUARD)? {
        return Ok(false);
    }
    let ta = Table::new(a);
    let tb = Table::new(b);
    let gens = ta.irredundant_generators();
    let mut search = Search {
        a: &ta,
        b: &tb,
        gens,
        images: Vec::new(),
    };
    Ok(search.extend())
}

struct Search<'t, 'a> {
    a: &'t Table<'a>,
    b: &'t Table<'a>,
    gens: Vec<usize>,
    images: Vec<usize>,
}

impl Search<'_, '_> {
    fn extend(&mut self) -> bool {
        let k = self.images.len();
        let Some(covered) = self.consistent() else {
            return false;
        };
        if k == self.gens.len() {
            return true;
        }
        let g = self.gens[k];
        let (ord, cent) = (self.a.order_of[g], self.a.centralizer[g]);
        for c in 0..self.b.len() {
            if covered[c] || self.b.order_of[c] != ord || self.b.centralizer[c] != cent {
                continue;
            }
            self.images.push(c);
            if self.extend() {
                return true;
            }
            self.images.pop();
        }
        false
    }

    /// Extends the assignment multiplicatively over `<g_1, ..., g_k>`.
    /// Returns the image set, or `None` on a relation or injectivity clash.
    fn consistent(&self) -> Option<Vec<bool>> {
        let (a, b) = (self.a, self.b);
        let k = self.images.len();
        let mut phi = vec![UNSET; a.len()];
        let mut used = vec![false; b.len()];
        phi[a.identity] = b.identity;
        used[b.identity] = true;
        let mut stack = vec![a.identity];
        while let Some(x) = stack.pop() {
            for s in 0..k {
                let y = a.mul(x, self.gens[s]);
                let expected = b.mul(phi[x], self.images[s]);
                if phi[y] == UNSET {
                    if used[expected] {
                        return None;
                    }
                    phi[y] = expected;
                    used[expected] = true;
                    stack.push(y);
                } else if phi[y] != expected {
                    return None;
                }
            }
        }
        Some(used)
    }
}
