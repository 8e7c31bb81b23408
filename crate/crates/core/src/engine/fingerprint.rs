use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Carrier, Subgroup};
use crate::error::{Error, Result};
use crate::trigroup::{ElementCode, Family, GroupSpec, TriMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tier {
    /// Order, commutativity, centre, lower central series, exponent.
    One,
    /// Tier one plus the element-order, class-size and centralizer-order histograms.
    Two,
}

/// Sorted `(value, multiplicity)` lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Histograms {
    pub element_orders: Vec<(u64, u64)>,
    pub class_sizes: Vec<(u64, u64)>,
    pub centralizer_orders: Vec<(u64, u64)>,
}

/// Isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeFingerprint {
    pub order: u64,
    pub is_abelian: bool,
    pub center_order: u64,
    pub derived_order: u64,
    /// Orders of the lower central series terms from the derived subgroup
    /// on, stopping once a term repeats or becomes trivial.
    pub lower_central: Vec<u64>,
    pub exponent: u64,
    pub histograms: Option<Histograms>,
}

impl TypeFingerprint {
    pub fn tier(&self) -> Tier {
        if self.histograms.is_some() {
            Tier::Two
        } else {
            Tier::One
        }
    }

    /// The tier-one part.
    pub fn tier1(&self) -> TypeFingerprint {
        TypeFingerprint {
            histograms: None,
            ..self.clone()
        }
    }

    /// Number of conjugacy classes, when tier two is present.
    pub fn class_count(&self) -> Option<u64> {
        self.histograms
            .as_ref()
            .map(|h| h.class_sizes.iter().map(|&(_, m)| m).sum())
    }

    /// Canonical big-endian byte encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(64);
        out.extend_from_slice(&self.order.to_be_bytes());
        out.push(u8::from(self.is_abelian));
        out.extend_from_slice(&self.center_order.to_be_bytes());
        out.extend_from_slice(&self.derived_order.to_be_bytes());
        out.extend_from_slice(&(self.lower_central.len() as u64).to_be_bytes());
        for o in &self.lower_central {
            out.extend_from_slice(&o.to_be_bytes());
        }
        out.extend_from_slice(&self.exponent.to_be_bytes());
        if let Some(h) = &self.histograms {
            for hist in [&h.element_orders, &h.class_sizes, &h.centralizer_orders] {
                out.extend_from_slice(&(hist.len() as u64).to_be_bytes());
                for &(v, m) in hist {
                    out.extend_from_slice(&v.to_be_bytes());
                    out.extend_from_slice(&m.to_be_bytes());
                }
            }
        }
        out
    }

    /// Hex SHA-256 of [`to_bytes`](Self::to_bytes).
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_bytes()))
    }
}

/// Multiplicative order of a group element.
pub fn element_order(spec: &GroupSpec, x: &TriMatrix) -> u64 {
    let f = spec.field();
    let p = spec.q() as u64;
    let mut e = 1u64;
    if spec.family() == Family::Gt {
        for i in 0..x.n() {
            e = e.lcm(&(f.mult_order(x.get(i, i)) as u64));
        }
    }
    // x^e is unipotent, so its order is a power of p
    let mut y = x.pow(e, f);
    while !y.is_identity() {
        y = y.pow(p, f);
        e *= p;
    }
    e
}

const CHUNK: usize = 4096;

type Hist = BTreeMap<u64, u64>;

fn merge(mut a: Hist, b: Hist) -> Hist {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Computes the fingerprint of `g` at the requested tier.
pub fn fingerprint(g: &Subgroup, tier: Tier, guard: u64) -> Result<TypeFingerprint> {
    let order = g.order();
    if order > guard {
        return Err(Error::ResourceGuardExceeded {
            order: order.to_string(),
            guard,
        });
    }
    let spec = g.spec();
    let f = spec.field();
    let elems = g.element_matrices();
    let gens = g.generators();

    let is_abelian = match &g.carrier {
        Carrier::Algebra(a) => a.is_commutative(f),
        Carrier::Explicit(_) => gens
            .iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b, f))),
    };
    let center_order = if is_abelian { order } else { g.center().order() };
    let lower_central = if is_abelian {
        vec![1]
    } else {
        lower_central_series(spec, &gens)
    };
    let derived_order = lower_central[0];

    let (orders, centralizers): (Hist, Option<Hist>) = match tier {
        Tier::One => {
            let orders = elems
                .par_chunks(CHUNK)
                .map(|chunk| {
                    let mut h = Hist::new();
                    for x in chunk {
                        *h.entry(element_order(spec, x)).or_default() += 1;
                    }
                    h
                })
                .reduce(Hist::new, merge);
            (orders, None)
        }
        Tier::Two => {
            let explicit_codes: Option<Vec<TriMatrix>> = match &g.carrier {
                Carrier::Explicit(_) if !is_abelian => Some(elems.clone()),
                _ => None,
            };
            let (orders, cents) = elems
                .par_chunks(CHUNK)
                .map(|chunk| {
                    let mut ho = Hist::new();
                    let mut hc = Hist::new();
                    for x in chunk {
                        *ho.entry(element_order(spec, x)).or_default() += 1;
                        let c = if is_abelian {
                            order
                        } else {
                            match (&g.carrier, &explicit_codes) {
                                (Carrier::Algebra(a), _) => a.centralizer_order_of(x, f),
                                (_, Some(all)) => all.iter().filter(|y| y.commutes_with(x, f)).count() as u64,
                                _ => unreachable!(),
                            }
                        };
                        *hc.entry(c).or_default() += 1;
                    }
                    (ho, hc)
                })
                .reduce(|| (Hist::new(), Hist::new()), |a, b| (merge(a.0, b.0), merge(a.1, b.1)));
            (orders, Some(cents))
        }
    };

    let exponent = orders.keys().fold(1u64, |acc, &o| acc.lcm(&o));
    let histograms = centralizers.map(|cents| {
        let class_sizes: Vec<(u64, u64)> = cents
            .iter()
            .map(|(&c, &e)| (order / c, e * c / order))
            .collect::<BTreeMap<u64, u64>>()
            .into_iter()
            .collect();
        Histograms {
            element_orders: orders.iter().map(|(&k, &v)| (k, v)).collect(),
            class_sizes,
            centralizer_orders: cents.into_iter().collect(),
        }
    });
    Ok(TypeFingerprint {
        order,
        is_abelian,
        center_order,
        derived_order,
        lower_central,
        exponent,
        histograms,
    })
}

fn commutator(a: &TriMatrix, b: &TriMatrix, f: &crate::ffield::PrimeField) -> TriMatrix {
    a.mul_unchecked(b, f)
        .mul_unchecked(&a.inverse(f), f)
        .mul_unchecked(&b.inverse(f), f)
}

/// Normal closure of `seeds` in the group generated by `gens`. Returns the
/// element set together with the seeds that were actually needed.
fn normal_closure(
    spec: &GroupSpec,
    gens: &[TriMatrix],
    invs: &[TriMatrix],
    seeds: &[TriMatrix],
) -> (HashSet<ElementCode>, Vec<TriMatrix>) {
    let f = spec.field();
    let id = spec.identity();
    let mut seen: HashSet<ElementCode> = HashSet::from([spec.encode_unchecked(&id)]);
    let mut elems = vec![id];
    let mut used: Vec<TriMatrix> = Vec::new();
    for s in seeds {
        if seen.contains(&spec.encode_unchecked(s)) {
            continue;
        }
        used.push(*s);
        // Closure under right multiplication by the used seeds and
        // conjugation by the generators is exactly the normal closure.
        let mut stack = elems.clone();
        while let Some(x) = stack.pop() {
            let next: Vec<TriMatrix> = used
                .iter()
                .map(|c| x.mul_unchecked(c, f))
                .chain(gens.iter().zip(invs).map(|(g, gi)| spec.conj(g, &x, gi)))
                .collect();
            for y in next {
                if seen.insert(spec.encode_unchecked(&y)) {
                    elems.push(y);
                    stack.push(y);
                }
            }
        }
    }
    (seen, used)
}

/// Orders of `[G,G], [[G,G],G], ...` until the series stabilises.
fn lower_central_series(spec: &GroupSpec, gens: &[TriMatrix]) -> Vec<u64> {
    let f = spec.field();
    let invs: Vec<TriMatrix> = gens.iter().map(|g| g.inverse(f)).collect();
    let mut seeds = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            seeds.push(commutator(&gens[i], &gens[j], f));
        }
    }
    let (set, mut used) = normal_closure(spec, gens, &invs, &seeds);
    let mut orders = vec![set.len() as u64];
    while *orders.last().unwrap() > 1 {
        // [N, G] is the normal closure of [s, g] over normal generators s of N
        let seeds: Vec<TriMatrix> = used
            .iter()
            .flat_map(|s| gens.iter().map(move |g| commutator(s, g, f)))
            .collect();
        let (set, next) = normal_closure(spec, gens, &invs, &seeds);
        if set.len() as u64 == *orders.last().unwrap() {
            break;
        }
        orders.push(set.len() as u64);
        used = next;
    }
    orders
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{centralizer, conjugacy_classes};
    use crate::trigroup::DEFAULT_GUARD;
    use std::sync::Arc;

    fn whole(fam: Family, n: usize, q: u32) -> Subgroup {
        Subgroup::whole(Arc::new(GroupSpec::new(fam, n, q).unwrap()))
    }

    /// Brute-force invariants straight from the multiplication table.
    fn brute(g: &Subgroup) -> TypeFingerprint {
        let spec = g.spec();
        let f = spec.field();
        let els = g.element_matrices();
        let n = els.len() as u64;
        let mut orders = Hist::new();
        let mut cents = Hist::new();
        let mut center = 0;
        for x in &els {
            let mut y = *x;
            let mut k = 1;
            while !y.is_identity() {
                y = y.mul_unchecked(x, f);
                k += 1;
            }
            *orders.entry(k).or_default() += 1;
            let c = els.iter().filter(|z| z.commutes_with(x, f)).count() as u64;
            *cents.entry(c).or_default() += 1;
            if c == n {
                center += 1;
            }
        }
        // lower central series: subgroup generated by all [x, g], x in the
        // previous term, g in the group
        let close = |mut set: HashSet<ElementCode>| loop {
            let cur: Vec<TriMatrix> = set.iter().map(|&c| spec.decode_unchecked(c)).collect();
            let before = set.len();
            for a in &cur {
                for b in &cur {
                    set.insert(spec.encode_unchecked(&a.mul_unchecked(b, f)));
                }
            }
            if set.len() == before {
                break set;
            }
        };
        let mut term: Vec<TriMatrix> = els.clone();
        let mut lower_central: Vec<u64> = Vec::new();
        loop {
            let mut next: HashSet<ElementCode> = HashSet::new();
            for a in &term {
                for b in &els {
                    next.insert(spec.encode_unchecked(&commutator(a, b, f)));
                }
            }
            let next = close(next);
            let size = next.len() as u64;
            if lower_central.last() == Some(&size) {
                break;
            }
            lower_central.push(size);
            if size == 1 {
                break;
            }
            term = next.iter().map(|&c| spec.decode_unchecked(c)).collect();
        }
        let classes = conjugacy_classes(g, DEFAULT_GUARD).unwrap();
        let mut sizes = Hist::new();
        for c in &classes {
            *sizes.entry(c.size).or_default() += 1;
        }
        TypeFingerprint {
            order: n,
            is_abelian: center == n,
            center_order: center,
            derived_order: lower_central[0],
            lower_central,
            exponent: orders.keys().fold(1, |a, &o| a.lcm(&o)),
            histograms: Some(Histograms {
                element_orders: orders.into_iter().collect(),
                class_sizes: sizes.into_iter().collect(),
                centralizer_orders: cents.into_iter().collect(),
            }),
        }
    }

    #[test]
    fn heisenberg_fingerprint() {
        let g = whole(Family::Ut, 3, 3);
        let fp = fingerprint(&g, Tier::Two, DEFAULT_GUARD).unwrap();
        assert_eq!(fp.order, 27);
        assert!(!fp.is_abelian);
        assert_eq!(fp.center_order, 3);
        assert_eq!(fp.exponent, 3);
        assert_eq!(fp.derived_order, 3);
        assert_eq!(fp.lower_central, vec![3, 1]);
        assert_eq!(fp.class_count(), Some(11));
        assert_eq!(fp, brute(&g));
    }

    #[test]
    fn regular_centralizers_of_ut3_are_elementary_abelian() {
        let g = whole(Family::Ut, 3, 5);
        for c in conjugacy_classes(&g, DEFAULT_GUARD).unwrap() {
            let z = centralizer(&g, c.rep).unwrap();
            if z.order() == 25 {
                let fp = fingerprint(&z, Tier::Two, DEFAULT_GUARD).unwrap();
                assert!(fp.is_abelian);
                assert_eq!(fp.exponent, 5);
            }
        }
    }

    #[test]
    fn trivial_group_fingerprint() {
        let s = Arc::new(GroupSpec::new(Family::Ut, 3, 3).unwrap());
        let t = Subgroup::from_elements(s, vec![0]).unwrap();
        let fp = fingerprint(&t, Tier::Two, DEFAULT_GUARD).unwrap();
        assert_eq!(fp.order, 1);
        assert!(fp.is_abelian);
        let h = fp.histograms.unwrap();
        assert_eq!(h.element_orders, vec![(1, 1)]);
        assert_eq!(h.class_sizes, vec![(1, 1)]);
        assert_eq!(h.centralizer_orders, vec![(1, 1)]);
    }

    #[test]
    fn both_routes_match_brute_force() {
        for (fam, n, q) in [(Family::Gt, 3, 3), (Family::Ut, 4, 3), (Family::Gt, 2, 5)] {
            let g = whole(fam, n, q);
            let classes = conjugacy_classes(&g, DEFAULT_GUARD).unwrap();
            for c in classes.iter().step_by(2) {
                let z = centralizer(&g, c.rep).unwrap();
                let a = fingerprint(&z, Tier::Two, DEFAULT_GUARD).unwrap();
                let e = fingerprint(&z.to_explicit(), Tier::Two, DEFAULT_GUARD).unwrap();
                assert_eq!(a, e);
                assert_eq!(a, brute(&z));
                assert_eq!(fingerprint(&z, Tier::One, DEFAULT_GUARD).unwrap(), a.tier1());
            }
        }
    }

    #[test]
    fn element_orders_in_characteristic_three() {
        let s = GroupSpec::new(Family::Ut, 4, 3).unwrap();
        let mut x = TriMatrix::identity(4, true);
        for i in 0..3 {
            x.set(i, i + 1, 1);
        }
        assert_eq!(element_order(&s, &x), 9);
        let g = GroupSpec::new(Family::Gt, 2, 7).unwrap();
        let d = TriMatrix::from_rows(&[vec![3, 1], vec![0, 3]], false).unwrap();
        assert_eq!(element_order(&g, &d), 42);
    }

    #[test]
    fn digest_is_stable_and_distinguishing() {
        let a = fingerprint(&whole(Family::Ut, 3, 3), Tier::Two, DEFAULT_GUARD).unwrap();
        let b = fingerprint(&whole(Family::Gt, 2, 3), Tier::Two, DEFAULT_GUARD).unwrap();
        assert_eq!(a.digest(), a.clone().digest());
        assert_ne!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
    }
}
