//! Type registry and branching matrix by closure over commuting-tuple
//! extensions.
//!
//! A type is the isomorphism class of the centralizer of a commuting tuple,
//! recognised by its [`TypeFingerprint`]. Extending a tuple with centralizer
//! `Z` by one more commuting element amounts to picking a conjugacy class of
//! `Z`; the centralizer of the extended tuple is the centralizer of the class
//! representative inside `Z`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use log::{debug, info};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Subalgebra;
use crate::engine::{self, are_isomorphic, fingerprint, Subgroup, Tier, TypeFingerprint, ISO_SIZE_GUARD};
use crate::error::{Error, Result};
use crate::trigroup::{ElementCode, Family, GroupSpec, DEFAULT_GUARD};

/// Bumped whenever type identification or matrix assembly changes, so that
/// stored results from older engines are not reused.
pub const ENGINE_VERSION: u32 = 2;

/// Hard limit on tuple length during closure.
pub const DEPTH_CAP: usize = 10;

/// Options for [`compute_branching`].
#[derive(Clone, Debug)]
pub struct BranchingOptions {
    /// Element-count guard for any single group that gets enumerated.
    pub guard: u64,
    /// Confirm with an isomorphism search every time a new centralizer is
    /// assigned to an existing type (only for orders within the search guard).
    pub referee: bool,
    /// If set, fail with [`Error::FingerprintCollision`] when fewer types are found.
    pub expected_types: Option<usize>,
    /// Alternative representatives kept per type for well-definedness checks.
    pub alternates: usize,
    pub depth_cap: usize,
}

impl Default for BranchingOptions {
    fn default() -> Self {
        BranchingOptions {
            guard: DEFAULT_GUARD,
            referee: false,
            expected_types: None,
            alternates: 2,
            depth_cap: DEPTH_CAP,
        }
    }
}

/// One registered type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeInfo {
    pub id: usize,
    pub fingerprint: TypeFingerprint,
    /// A commuting tuple whose centralizer has this type.
    pub tuple: Vec<ElementCode>,
    /// Echelon basis of the centralizer algebra of `tuple`.
    pub basis: Vec<Vec<u8>>,
    pub order: u64,
    /// Conjugacy classes of the whole group whose centralizer has this type.
    pub class_count: u64,
    /// Conjugacy classes of the centralizer itself.
    pub centralizer_class_count: u64,
    /// Length of the shortest tuple found with this type.
    pub depth: usize,
    /// Branch counts as `(type id, count)`, sorted by id.
    pub branches: Vec<(usize, u64)>,
    /// Further tuples of this type with different centralizers.
    pub alternates: Vec<Vec<ElementCode>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeRegistry {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    pub types: Vec<TypeInfo>,
    /// Centralizer keys (echelon bytes) resolving types whose fingerprints
    /// coincide, sorted by key.
    pub resolver: Vec<(Vec<u8>, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchingMatrix {
    pub family: Family,
    pub n: usize,
    pub q: u32,
    /// `entries[i][j]`: branches of type `i` from a tuple of type `j`.
    pub entries: Vec<Vec<u64>>,
}

impl BranchingMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.entries.iter().map(|row| row[j]).collect()
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        self.entries.iter().map(|row| row[j]).sum()
    }
}

impl TypeRegistry {
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn spec(&self) -> Result<GroupSpec> {
        GroupSpec::new(self.family, self.n, self.q)
    }

    /// Type of a centralizer given by its algebra and fingerprint.
    pub fn lookup(&self, alg: &Subalgebra, fp: &TypeFingerprint) -> Option<usize> {
        let mut hits = self.types.iter().filter(|t| &t.fingerprint == fp);
        let first = hits.next()?;
        if hits.next().is_none() {
            return Some(first.id);
        }
        let key = alg.key();
        self.resolver
            .binary_search_by(|(k, _)| k.as_slice().cmp(&key))
            .ok()
            .map(|i| self.resolver[i].1)
    }

    /// The centralizer subgroup of type `t`, rebuilt from its stored basis.
    pub fn centralizer(&self, spec: &Arc<GroupSpec>, t: usize) -> Subgroup {
        let alg = Subalgebra::from_span(self.family, self.n, self.types[t].basis.clone(), spec.field());
        Subgroup::from_algebra(Arc::clone(spec), alg)
    }

    /// The branching matrix assembled from the stored branch vectors.
    pub fn matrix(&self) -> BranchingMatrix {
        let d = self.types.len();
        let mut entries = vec![vec![0u64; d]; d];
        for (j, t) in self.types.iter().enumerate() {
            for &(i, c) in &t.branches {
                entries[i][j] = c;
            }
        }
        BranchingMatrix {
            family: self.family,
            n: self.n,
            q: self.q,
            entries,
        }
    }
}

/// Result of grouping the classes of a centralizer by the centralizer of
/// their representative.
struct Extension {
    alg: Subalgebra,
    reps: Vec<ElementCode>,
}

fn extensions(z: &Subgroup, guard: u64) -> Result<(usize, Vec<Extension>)> {
    let alg = z.algebra().expect("tuple centralizers are algebra groups");
    let spec = z.spec();
    let f = spec.field();
    let classes = engine::conjugacy_classes(z, guard)?;
    let computed: Vec<(Vec<u8>, Subalgebra, ElementCode)> = classes
        .par_iter()
        .map(|c| {
            let w = alg.centralize(&spec.decode_unchecked(c.rep), f);
            (w.key(), w, c.rep)
        })
        .collect();
    let mut order: Vec<Extension> = Vec::new();
    let mut slot: HashMap<Vec<u8>, usize> = HashMap::new();
    for (key, w, rep) in computed {
        match slot.get(&key) {
            Some(&i) => order[i].reps.push(rep),
            None => {
                slot.insert(key, order.len());
                order.push(Extension {
                    alg: w,
                    reps: vec![rep],
                });
            }
        }
    }
    Ok((classes.len(), order))
}

/// A distinct centralizer reached during closure.
struct Node {
    alg: Subalgebra,
    tuple: Vec<ElementCode>,
    depth: usize,
    /// `(node, multiplicity)` for each distinct extension centralizer.
    children: Vec<(usize, u64)>,
    class_total: u64,
}

/// Builds the type registry and branching matrix of `spec`.
///
/// Every distinct centralizer algebra reachable by extending tuples is
/// visited. Types are the classes of the coarsest partition of these
/// centralizers that refines equality of tier-two fingerprints and is stable
/// under branching: two centralizers share a type only if they have equal
/// fingerprints and, type by type, equally many branches. Both ingredients
/// are isomorphism invariants, so isomorphic centralizers are never split.
pub fn compute_branching(spec: &GroupSpec, opts: &BranchingOptions) -> Result<(TypeRegistry, BranchingMatrix)> {
    spec.guarded_order(opts.guard)?;
    let spec = Arc::new(spec.clone());
    let f = spec.field();

    // 1. closure over centralizers
    let whole = Subalgebra::full(&spec);
    let mut by_key: HashMap<Vec<u8>, usize> = HashMap::new();
    by_key.insert(whole.key(), 0);
    let mut nodes = vec![Node {
        alg: whole,
        tuple: Vec::new(),
        depth: 0,
        children: Vec::new(),
        class_total: 0,
    }];
    let mut next = 0;
    while next < nodes.len() {
        let v = next;
        next += 1;
        if nodes[v].alg.is_commutative(f) {
            let order = nodes[v].alg.group_order(spec.q());
            nodes[v].children = vec![(v, order)];
            nodes[v].class_total = order;
            continue;
        }
        let z = Subgroup::from_algebra(Arc::clone(&spec), nodes[v].alg.clone());
        let (class_total, exts) = extensions(&z, opts.guard)?;
        let mut children = Vec::with_capacity(exts.len());
        for ext in exts {
            let key = ext.alg.key();
            let child = match by_key.get(&key) {
                Some(&c) => c,
                None => {
                    let depth = nodes[v].depth + 1;
                    if depth > opts.depth_cap {
                        return Err(Error::DepthCapExceeded(opts.depth_cap));
                    }
                    let mut tuple = nodes[v].tuple.clone();
                    tuple.push(ext.reps[0]);
                    by_key.insert(key, nodes.len());
                    nodes.push(Node {
                        alg: ext.alg,
                        tuple,
                        depth,
                        children: Vec::new(),
                        class_total: 0,
                    });
                    nodes.len() - 1
                }
            };
            children.push((child, ext.reps.len() as u64));
        }
        nodes[v].children = children;
        nodes[v].class_total = class_total as u64;
    }
    debug!("{}: {} distinct centralizers", spec.label(), nodes.len());

    // 2. fingerprints
    let fps: Vec<TypeFingerprint> = nodes
        .par_iter()
        .map(|node| {
            fingerprint(
                &Subgroup::from_algebra(Arc::clone(&spec), node.alg.clone()),
                Tier::Two,
                opts.guard,
            )
        })
        .collect::<Result<_>>()?;

    // 3. refinement to a partition stable under branching
    let mut colour = first_seen_ids(fps.iter());
    let mut count = colour.iter().max().map_or(0, |&c| c + 1);
    loop {
        let sigs: Vec<(usize, Vec<(usize, u64)>)> = nodes
            .iter()
            .enumerate()
            .map(|(v, node)| {
                let mut agg: BTreeMap<usize, u64> = BTreeMap::new();
                for &(c, m) in &node.children {
                    *agg.entry(colour[c]).or_default() += m;
                }
                (colour[v], agg.into_iter().collect())
            })
            .collect();
        let refined = first_seen_ids(sigs.iter());
        let refined_count = refined.iter().max().map_or(0, |&c| c + 1);
        colour = refined;
        if refined_count == count {
            break;
        }
        count = refined_count;
    }

    // 4. one type per colour, represented by its first (shallowest) node
    let mut reps: Vec<usize> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (v, &c) in colour.iter().enumerate() {
        if c == reps.len() {
            reps.push(v);
            members.push(Vec::new());
        }
        members[c].push(v);
    }
    if opts.referee {
        for m in &members {
            for &v in m.iter().skip(1).take(opts.alternates) {
                if fps[v].order <= ISO_SIZE_GUARD {
                    let a = Subgroup::from_algebra(Arc::clone(&spec), nodes[m[0]].alg.clone());
                    let b = Subgroup::from_algebra(Arc::clone(&spec), nodes[v].alg.clone());
                    if !are_isomorphic(&a, &b)? {
                        return Err(Error::NonIsomorphicCollision(format!(
                            "tuples {:?} and {:?}",
                            nodes[m[0]].tuple, nodes[v].tuple
                        )));
                    }
                }
            }
        }
    }
    let branches_of = |v: usize| -> BTreeMap<usize, u64> {
        let mut agg = BTreeMap::new();
        for &(c, m) in &nodes[v].children {
            *agg.entry(colour[c]).or_default() += m;
        }
        agg
    };
    let type_branches: Vec<BTreeMap<usize, u64>> = reps.iter().map(|&v| branches_of(v)).collect();
    let ntypes = reps.len();
    info!("{}: {} types from {} centralizers", spec.label(), ntypes, nodes.len());

    if let Some(expected) = opts.expected_types {
        if ntypes < expected {
            return Err(Error::FingerprintCollision {
                expected,
                found: ntypes,
            });
        }
    }

    // 5. canonical order
    let class_counts: Vec<u64> = (0..ntypes)
        .map(|t| type_branches[0].get(&t).copied().unwrap_or(0))
        .collect();
    let sort_keys: Vec<(u64, u64, Vec<u64>, Vec<u8>)> = (0..ntypes)
        .map(|t| {
            let mut bv: Vec<u64> = type_branches[t].values().copied().collect();
            bv.sort_unstable_by(|a, b| b.cmp(a));
            (fps[reps[t]].order, class_counts[t], bv, fps[reps[t]].to_bytes())
        })
        .collect();
    let mut perm: Vec<usize> = (0..ntypes).collect();
    perm.sort_by(|&a, &b| {
        let (ka, kb) = (&sort_keys[a], &sort_keys[b]);
        kb.0.cmp(&ka.0)
            .then(kb.1.cmp(&ka.1))
            .then(kb.2.cmp(&ka.2))
            .then(ka.3.cmp(&kb.3))
            .then(a.cmp(&b))
    });
    let mut new_id = vec![0usize; ntypes];
    for (pos, &old) in perm.iter().enumerate() {
        new_id[old] = pos;
    }

    let shared_fp: std::collections::HashSet<&TypeFingerprint> = {
        let mut seen = std::collections::HashSet::new();
        let mut dup = std::collections::HashSet::new();
        for &v in &reps {
            if !seen.insert(&fps[v]) {
                dup.insert(&fps[v]);
            }
        }
        dup
    };
    let mut resolver: Vec<(Vec<u8>, usize)> = nodes
        .iter()
        .enumerate()
        .filter(|&(v, _)| shared_fp.contains(&fps[v]))
        .map(|(v, node)| (node.alg.key(), new_id[colour[v]]))
        .collect();
    resolver.sort();

    let infos: Vec<TypeInfo> = perm
        .iter()
        .enumerate()
        .map(|(pos, &old)| {
            let v = reps[old];
            let node = &nodes[v];
            let mut branches: Vec<(usize, u64)> = type_branches[old].iter().map(|(&k, &c)| (new_id[k], c)).collect();
            branches.sort_unstable();
            TypeInfo {
                id: pos,
                fingerprint: fps[v].clone(),
                tuple: node.tuple.clone(),
                basis: node.alg.basis().to_vec(),
                order: fps[v].order,
                class_count: class_counts[old],
                centralizer_class_count: node.class_total,
                depth: node.depth,
                branches,
                alternates: members[old]
                    .iter()
                    .skip(1)
                    .take(opts.alternates)
                    .map(|&w| nodes[w].tuple.clone())
                    .collect(),
            }
        })
        .collect();
    let registry = TypeRegistry {
        family: spec.family(),
        n: spec.n(),
        q: spec.q(),
        types: infos,
        resolver,
    };
    let matrix = registry.matrix();
    Ok((registry, matrix))
}

/// Dense ids in order of first appearance.
fn first_seen_ids<T: std::hash::Hash + Eq>(items: impl Iterator<Item = T>) -> Vec<usize> {
    let mut ids: HashMap<T, usize> = HashMap::new();
    items
        .map(|x| {
            let next = ids.len();
            *ids.entry(x).or_insert(next)
        })
        .collect()
}

/// Branch counts of type `t` recomputed from its representative, classified
/// against the registry. Fails if a centralizer of unknown type appears.
pub fn branch_vector(registry: &TypeRegistry, t: usize, guard: u64) -> Result<BTreeMap<usize, u64>> {
    let spec = Arc::new(registry.spec()?);
    let z = engine::tuple_centralizer(Arc::clone(&spec), &registry.types[t].tuple)?;
    classify_branches(registry, &spec, &z, guard)
}

fn classify_branches(
    registry: &TypeRegistry,
    spec: &Arc<GroupSpec>,
    z: &Subgroup,
    guard: u64,
) -> Result<BTreeMap<usize, u64>> {
    let (_, exts) = extensions(z, guard)?;
    let fps: Vec<TypeFingerprint> = exts
        .par_iter()
        .map(|e| {
            fingerprint(
                &Subgroup::from_algebra(Arc::clone(spec), e.alg.clone()),
                Tier::Two,
                guard,
            )
        })
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for (e, fp) in exts.iter().zip(&fps) {
        let id = registry
            .lookup(&e.alg, fp)
            .ok_or_else(|| Error::Precondition(format!("centralizer of order {} has no registered type", fp.order)))?;
        *out.entry(id).or_default() += e.reps.len() as u64;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case", deny_unknown_fields)]
pub enum WellDefinedReport {
    /// Every alternate reproduced the stored branch vector.
    Agree { type_id: usize, compared: usize },
    /// An alternate gave a different vector.
    Diverge {
        type_id: usize,
        tuple: Vec<ElementCode>,
        expected: Vec<(usize, u64)>,
        got: Vec<(usize, u64)>,
    },
    /// No alternate representative is known.
    Skipped { type_id: usize },
}

impl WellDefinedReport {
    pub fn passed(&self) -> bool {
        !matches!(self, WellDefinedReport::Diverge { .. })
    }
}

/// Recomputes the branch vector of type `t` from up to `samples` alternates.
pub fn check_well_defined(registry: &TypeRegistry, t: usize, samples: usize, guard: u64) -> Result<WellDefinedReport> {
    let info = &registry.types[t];
    if info.alternates.is_empty() || samples == 0 {
        return Ok(WellDefinedReport::Skipped { type_id: t });
    }
    let spec = Arc::new(registry.spec()?);
    let mut compared = 0;
    for tuple in info.alternates.iter().take(samples) {
        let z = engine::tuple_centralizer(Arc::clone(&spec), tuple)?;
        let got: Vec<(usize, u64)> = classify_branches(registry, &spec, &z, guard)?.into_iter().collect();
        if got != info.branches {
            return Ok(WellDefinedReport::Diverge {
                type_id: t,
                tuple: tuple.clone(),
                expected: info.branches.clone(),
                got,
            });
        }
        compared += 1;
    }
    Ok(WellDefinedReport::Agree { type_id: t, compared })
}

/// `1 * B^k * e_0`: the number of conjugacy classes of commuting `k`-tuples.
pub fn tuple_class_count(matrix: &BranchingMatrix, k: usize) -> BigUint {
    let d = matrix.dim();
    let mut v: Vec<BigUint> = (0..d)
        .map(|i| if i == 0 { BigUint::one() } else { BigUint::zero() })
        .collect();
    for _ in 0..k {
        v = (0..d)
            .map(|i| {
                (0..d)
                    .filter(|&j| matrix.entries[i][j] != 0)
                    .map(|j| &v[j] * matrix.entries[i][j])
                    .sum()
            })
            .collect();
    }
    v.into_iter().sum()
}
