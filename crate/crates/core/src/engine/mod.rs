//! Subgroups of a triangular group, their conjugacy classes and centralizers,
//! isomorphism-invariant fingerprints, and a small-group isomorphism test.

mod fingerprint;
mod iso;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Subalgebra;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::trigroup::{ElementCode, GroupSpec, TriMatrix};

pub use fingerprint::{element_order, fingerprint, Histograms, Tier, TypeFingerprint};
pub use iso::{are_isomorphic, ISO_SIZE_GUARD};

/// How a subgroup's elements are known.
#[derive(Clone, Debug)]
enum Carrier {
    /// The group carried by a matrix subalgebra (every centralizer of a tuple).
    Algebra(Arc<Subalgebra>),
    /// A sorted list of element codes.
    Explicit(Arc<Vec<ElementCode>>),
}

/// A subgroup of `GT_n(F_q)` or `UT_n(F_q)`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    spec: Arc<GroupSpec>,
    carrier: Carrier,
    order: u64,
}

/// A conjugacy class of a subgroup acting on itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConjClass {
    /// Smallest code in the class.
    pub rep: ElementCode,
    pub size: u64,
}

impl Subgroup {
    /// The whole ambient group.
    pub fn whole(spec: Arc<GroupSpec>) -> Subgroup {
        let alg = Subalgebra::full(&spec);
        Subgroup::from_algebra(spec, alg)
    }

    /// The group carried by a subalgebra.
    pub fn from_algebra(spec: Arc<GroupSpec>, alg: Subalgebra) -> Subgroup {
        let order = alg.group_order(spec.q());
        Subgroup {
            spec,
            carrier: Carrier::Algebra(Arc::new(alg)),
            order,
        }
    }

    /// A subgroup given by its elements. Fails unless the codes form a subgroup.
    pub fn from_elements(spec: Arc<GroupSpec>, mut codes: Vec<ElementCode>) -> Result<Subgroup> {
        codes.sort_unstable();
        codes.dedup();
        let order = spec.order_u64().unwrap_or(u64::MAX);
        if let Some(&c) = codes.iter().find(|&&c| c >= order) {
            return Err(Error::CodeOutOfRange(c));
        }
        let id = spec.encode_unchecked(&spec.identity());
        if codes.binary_search(&id).is_err() {
            return Err(Error::NotASubgroup("identity missing"));
        }
        // Greedy generators; the set is a subgroup iff the generated closure
        // stays inside it and covers it.
        greedy_generators(&spec, &codes)?;
        Ok(Subgroup {
            order: codes.len() as u64,
            spec,
            carrier: Carrier::Explicit(Arc::new(codes)),
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> Arc<GroupSpec> {
        Arc::clone(&self.spec)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn algebra(&self) -> Option<&Subalgebra> {
        match &self.carrier {
            Carrier::Algebra(a) => Some(a),
            Carrier::Explicit(_) => None,
        }
    }

    /// The same subgroup with its elements listed explicitly.
    pub fn to_explicit(&self) -> Subgroup {
        Subgroup {
            spec: Arc::clone(&self.spec),
            carrier: Carrier::Explicit(Arc::new(self.elements())),
            order: self.order,
        }
    }

    /// Sorted element codes.
    pub fn elements(&self) -> Vec<ElementCode> {
        match &self.carrier {
            Carrier::Explicit(c) => c.as_ref().clone(),
            Carrier::Algebra(a) => {
                let mut codes: Vec<ElementCode> = a
                    .elements(self.spec.field())
                    .iter()
                    .map(|m| self.spec.encode_unchecked(m))
                    .collect();
                codes.sort_unstable();
                codes
            }
        }
    }

    pub(crate) fn element_matrices(&self) -> Vec<TriMatrix> {
        match &self.carrier {
            Carrier::Explicit(c) => c.iter().map(|&x| self.spec.decode_unchecked(x)).collect(),
            Carrier::Algebra(a) => a.elements(self.spec.field()),
        }
    }

    pub fn contains_matrix(&self, m: &TriMatrix) -> bool {
        if self.spec.contains(m).is_err() {
            return false;
        }
        match &self.carrier {
            Carrier::Algebra(a) => a.contains_element(m, self.spec.field()),
            Carrier::Explicit(c) => c.binary_search(&self.spec.encode_unchecked(m)).is_ok(),
        }
    }

    pub fn contains(&self, code: ElementCode) -> bool {
        match self.spec.decode(code) {
            Ok(m) => self.contains_matrix(&m),
            Err(_) => false,
        }
    }

    /// A generating set.
    pub fn generators(&self) -> Vec<TriMatrix> {
        match &self.carrier {
            Carrier::Algebra(a) => {
                if self.order == self.spec.order_u64().unwrap_or(0) {
                    self.spec.generators()
                } else {
                    a.generators(self.spec.field())
                }
            }
            Carrier::Explicit(c) => greedy_generators(&self.spec, c).expect("validated at construction"),
        }
    }

    /// Centre of the subgroup.
    pub fn center(&self) -> Subgroup {
        match &self.carrier {
            Carrier::Algebra(a) => Subgroup::from_algebra(self.spec_arc(), a.center(self.spec.field())),
            Carrier::Explicit(_) => {
                let gens = self.generators();
                let f = self.spec.field();
                let codes: Vec<ElementCode> = self
                    .element_matrices()
                    .iter()
                    .filter(|x| gens.iter().all(|g| g.commutes_with(x, f)))
                    .map(|x| self.spec.encode_unchecked(x))
                    .collect();
                Subgroup::from_elements(self.spec_arc(), codes).expect("centre is a subgroup")
            }
        }
    }
}

/// Generators picked greedily from `codes` (largest element order first),
/// verifying that the closure equals the set.
fn greedy_generators(spec: &GroupSpec, codes: &[ElementCode]) -> Result<Vec<TriMatrix>> {
    let f = spec.field();
    let mut members: Vec<(u64, ElementCode)> = codes
        .iter()
        .map(|&c| (element_order(spec, &spec.decode_unchecked(c)), c))
        .collect();
    members.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let in_set = |c: ElementCode| codes.binary_search(&c).is_ok();
    let mut gens: Vec<TriMatrix> = Vec::new();
    let mut reached: std::collections::HashSet<ElementCode> = std::collections::HashSet::new();
    let id = spec.identity();
    reached.insert(spec.encode_unchecked(&id));
    let mut all: Vec<TriMatrix> = vec![id];
    for &(_, c) in &members {
        if reached.contains(&c) {
            continue;
        }
        let g = spec.decode_unchecked(c);
        gens.push(g);
        // extend the closure: every reached element times every generator
        let mut stack: Vec<TriMatrix> = all.clone();
        while let Some(x) = stack.pop() {
            for h in &gens {
                let y = x.mul_unchecked(h, f);
                let yc = spec.encode_unchecked(&y);
                if !in_set(yc) {
                    return Err(Error::NotASubgroup("not closed under multiplication"));
                }
                if reached.insert(yc) {
                    all.push(y);
                    stack.push(y);
                }
            }
        }
        if reached.len() == codes.len() {
            break;
        }
    }
    Ok(gens)
}

/// Orbits of `g` acting on itself by conjugation, sorted by `(size, rep)`.
pub fn conjugacy_classes(g: &Subgroup, guard: u64) -> Result<Vec<ConjClass>> {
    if g.order > guard {
        return Err(Error::ResourceGuardExceeded {
            order: g.order.to_string(),
            guard,
        });
    }
    let spec = &g.spec;
    let f = spec.field();
    let q = spec.q();
    let gens: Vec<(TriMatrix, TriMatrix)> = g
        .generators()
        .into_iter()
        .map(|x| {
            let inv = x.inverse(f);
            (x, inv)
        })
        .collect();
    let codes = g.elements();

    let mut classes = Vec::new();
    match &g.carrier {
        Carrier::Algebra(a) => {
            let mut seen = BitSet::new(a.local_space(q) as usize);
            let mut stack = Vec::new();
            for &c in &codes {
                let m = spec.decode_unchecked(c);
                if !seen.insert(a.local_index(&m, q) as usize) {
                    continue;
                }
                let mut size = 1u64;
                stack.push(m);
                while let Some(x) = stack.pop() {
                    for (h, hi) in &gens {
                        let y = spec.conj(h, &x, hi);
                        if seen.insert(a.local_index(&y, q) as usize) {
                            size += 1;
                            stack.push(y);
                        }
                    }
                }
                classes.push(ConjClass { rep: c, size });
            }
        }
        Carrier::Explicit(list) => {
            let mut seen = BitSet::new(list.len());
            let index = |m: &TriMatrix| -> usize {
                list.binary_search(&spec.encode_unchecked(m))
                    .expect("conjugate stays in the subgroup")
            };
            let mut stack = Vec::new();
            for (i, &c) in list.iter().enumerate() {
                if !seen.insert(i) {
                    continue;
                }
                let mut size = 1u64;
                stack.push(spec.decode_unchecked(c));
                while let Some(x) = stack.pop() {
                    for (h, hi) in &gens {
                        let y = spec.conj(h, &x, hi);
                        if seen.insert(index(&y)) {
                            size += 1;
                            stack.push(y);
                        }
                    }
                }
                classes.push(ConjClass { rep: c, size });
            }
        }
    }
    classes.sort_unstable_by_key(|c| (c.size, c.rep));
    Ok(classes)
}

/// `{x in ambient : xb = bx}`.
pub fn centralizer(ambient: &Subgroup, b: ElementCode) -> Result<Subgroup> {
    let spec = &ambient.spec;
    let m = spec.decode(b).map_err(|_| Error::ElementNotInSubgroup(b))?;
    if !ambient.contains_matrix(&m) {
        return Err(Error::ElementNotInSubgroup(b));
    }
    Ok(centralizer_of_matrix(ambient, &m))
}

pub(crate) fn centralizer_of_matrix(ambient: &Subgroup, m: &TriMatrix) -> Subgroup {
    let spec = &ambient.spec;
    let f = spec.field();
    match &ambient.carrier {
        Carrier::Algebra(a) => Subgroup::from_algebra(ambient.spec_arc(), a.centralize(m, f)),
        Carrier::Explicit(list) => {
            let codes: Vec<ElementCode> = list
                .iter()
                .copied()
                .filter(|&c| spec.decode_unchecked(c).commutes_with(m, f))
                .collect();
            Subgroup {
                spec: ambient.spec_arc(),
                order: codes.len() as u64,
                carrier: Carrier::Explicit(Arc::new(codes)),
            }
        }
    }
}

/// Centralizer in the whole group of every element of `tuple`.
pub fn tuple_centralizer(spec: Arc<GroupSpec>, tuple: &[ElementCode]) -> Result<Subgroup> {
    let mut z = Subgroup::whole(spec);
    for &c in tuple {
        z = centralizer(&z, c)?;
    }
    Ok(z)
}

/// Per-element class data of a whole group: `|C(x)|` for a class
/// representative, indexed by code. Used by invariant checks.
pub fn class_equation_holds(g: &Subgroup, classes: &[ConjClass]) -> bool {
    let total: u64 = classes.iter().map(|c| c.size).sum();
    let divides = classes.iter().all(|c| g.order.is_multiple_of(c.size));
    let by_centralizer = classes.iter().all(|c| {
        let z = centralizer(g, c.rep).expect("representative lies in the group");
        z.order() * c.size == g.order()
    });
    total == g.order() && divides && by_centralizer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigroup::{Family, DEFAULT_GUARD};

    fn spec(fam: Family, n: usize, q: u32) -> Arc<GroupSpec> {
        Arc::new(GroupSpec::new(fam, n, q).unwrap())
    }

    fn brute_classes(g: &Subgroup) -> Vec<ConjClass> {
        let s = g.spec();
        let f = s.field();
        let els = g.element_matrices();
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut codes = g.elements();
        codes.sort_unstable();
        for &c in &codes {
            if seen.contains(&c) {
                continue;
            }
            let x = s.decode_unchecked(c);
            let orbit: std::collections::BTreeSet<ElementCode> = els
                .iter()
                .map(|h| s.encode_unchecked(&s.conj(h, &x, &h.inverse(f))))
                .collect();
            out.push(ConjClass {
                rep: *orbit.iter().next().unwrap(),
                size: orbit.len() as u64,
            });
            seen.extend(orbit);
        }
        out.sort_unstable_by_key(|c| (c.size, c.rep));
        out
    }

    #[test]
    fn heisenberg_has_eleven_classes() {
        let g = Subgroup::whole(spec(Family::Ut, 3, 3));
        let cl = conjugacy_classes(&g, DEFAULT_GUARD).unwrap();
        assert_eq!(cl.len(), 11);
        assert_eq!(cl.iter().map(|c| c.size).sum::<u64>(), 27);
    }

    #[test]
    fn gt2_f3_has_six_classes() {
        let g = Subgroup::whole(spec(Family::Gt, 2, 3));
        let cl = conjugacy_classes(&g, DEFAULT_GUARD).unwrap();
        assert_eq!(cl.len(), 6);
        assert_eq!(cl.iter().map(|c| c.size).sum::<u64>(), 12);
        assert_eq!(cl, brute_classes(&g));
    }

    #[test]
    fn classes_match_brute_force_on_both_routes() {
        for (fam, n, q) in [
            (Family::Gt, 3, 3),
            (Family::Ut, 4, 3),
            (Family::Gt, 2, 5),
            (Family::Ut, 3, 5),
        ] {
            let g = Subgroup::whole(spec(fam, n, q));
            let alg = conjugacy_classes(&g, DEFAULT_GUARD).unwrap();
            let exp = conjugacy_classes(&g.to_explicit(), DEFAULT_GUARD).unwrap();
            assert_eq!(alg, exp);
            assert_eq!(alg, brute_classes(&g));
            assert!(class_equation_holds(&g, &alg));
            for c in alg.iter().step_by(3) {
                let z = centralizer(&g, c.rep).unwrap();
                let ze = centralizer(&g.to_explicit(), c.rep).unwrap();
                assert_eq!(z.elements(), ze.elements());
                assert_eq!(
                    conjugacy_classes(&z, DEFAULT_GUARD).unwrap(),
                    conjugacy_classes(&ze, DEFAULT_GUARD).unwrap()
                );
                assert_eq!(conjugacy_classes(&z, DEFAULT_GUARD).unwrap(), brute_classes(&z));
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let s = spec(Family::Ut, 3, 3);
        let g = Subgroup::whole(Arc::clone(&s));
        assert_eq!(centralizer(&g, 0).unwrap().order(), 27);
        let e12 = s.encode(&TriMatrix::transvection(3, true, 0, 1, 1)).unwrap();
        let z = centralizer(&g, e12).unwrap();
        assert_eq!(z.order(), 9);
        assert!(z.contains(e12));

        let s = spec(Family::Gt, 4, 5);
        let g = Subgroup::whole(Arc::clone(&s));
        let scalar = s.encode(&TriMatrix::diagonal(&[2, 2, 2, 2])).unwrap();
        assert_eq!(centralizer(&g, scalar).unwrap().order(), 4u64.pow(4) * 5u64.pow(6));
    }

    #[test]
    fn centralizer_rejects_outsiders() {
        let s = spec(Family::Ut, 3, 3);
        let g = Subgroup::whole(Arc::clone(&s));
        let e12 = s.encode(&TriMatrix::transvection(3, true, 0, 1, 1)).unwrap();
        let e23 = s.encode(&TriMatrix::transvection(3, true, 1, 2, 1)).unwrap();
        let z = centralizer(&g, e12).unwrap();
        assert_eq!(centralizer(&z, e23).unwrap_err(), Error::ElementNotInSubgroup(e23));
        assert!(matches!(centralizer(&g, 10_000), Err(Error::ElementNotInSubgroup(_))));
    }

    #[test]
    fn abelian_subgroup_has_singleton_classes() {
        let s = spec(Family::Ut, 3, 5);
        let g = Subgroup::whole(Arc::clone(&s));
        let e12 = s.encode(&TriMatrix::transvection(3, true, 0, 1, 1)).unwrap();
        let z = centralizer(&g, e12).unwrap();
        let cl = conjugacy_classes(&z, DEFAULT_GUARD).unwrap();
        assert_eq!(cl.len() as u64, z.order());
        assert!(cl.iter().all(|c| c.size == 1));
    }

    #[test]
    fn explicit_subgroup_validation() {
        let s = spec(Family::Ut, 3, 3);
        assert!(matches!(
            Subgroup::from_elements(Arc::clone(&s), vec![1, 2]),
            Err(Error::NotASubgroup(_))
        ));
        let e12 = s.encode(&TriMatrix::transvection(3, true, 0, 1, 1)).unwrap();
        assert!(matches!(
            Subgroup::from_elements(Arc::clone(&s), vec![0, e12]),
            Err(Error::NotASubgroup(_))
        ));
        let sq = s.encode(&TriMatrix::transvection(3, true, 0, 1, 2)).unwrap();
        let h = Subgroup::from_elements(Arc::clone(&s), vec![sq, 0, e12]).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.elements(), {
            let mut v = vec![0, e12, sq];
            v.sort_unstable();
            v
        });
    }

    #[test]
    fn guard_applies_to_classes() {
        let g = Subgroup::whole(spec(Family::Gt, 3, 5));
        assert!(matches!(
            conjugacy_classes(&g, 100),
            Err(Error::ResourceGuardExceeded { .. })
        ));
    }
}
