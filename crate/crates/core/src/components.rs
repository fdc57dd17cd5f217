//! Catalog of the 22 main components of exceptional extreme matrices in
//! the 6×6 copositive cone, and the closure-candidate combinatorics that
//! single out the essential ones.
//!
//! Each component is identified by its extended minimal zero support set,
//! listed up to a simultaneous relabeling of the six indices, together
//! with the dimension of the component. A component `E'` can lie in the
//! closure of `E` only if some permutation `π` matches every pair of `E`
//! to a pair of `E'` with `I' ⊆ π(I)` and `π(J) ⊆ J'`, and the dimensions
//! satisfy `dim E > dim E'` strictly. The candidate test is a necessary
//! condition: confirmed containments additionally need explicit limits of
//! the parametrizations, which are out of scope here.

use serde::Serialize;

use crate::types::{ExtendedSupport, IndexSet, Permutation};

/// One catalog row: component name, extended supports, dimension.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentSpec {
    pub name: String,
    pub esupps: Vec<ExtendedSupport>,
    pub dim: u32,
}

/// Raw catalog rows: name, dimension, supports as `(I, J \ I)` pairs.
type RawRow = (
    &'static str,
    u32,
    &'static [(&'static [usize], &'static [usize])],
);

#[rustfmt::skip]
const CATALOG: &[RawRow] = &[
    ("O5", 10, &[
        (&[1,2,3], &[]), (&[2,3,4], &[]), (&[3,4,5], &[]), (&[1,4,5], &[]), (&[1,2,5], &[]),
        (&[6], &[1,2,3,4,5]),
    ]),
    ("1", 8, &[
        (&[1,2], &[3,4,5]), (&[1,3], &[2,4,6]), (&[1,4], &[2,3]), (&[2,5], &[1,6]),
        (&[3,6], &[1,5]), (&[4,5,6], &[]),
    ]),
    ("2", 9, &[
        (&[1,2], &[3,4,5]), (&[1,3], &[2,4,6]), (&[1,4], &[2,3]), (&[2,5], &[1,6]),
        (&[3,5,6], &[]), (&[4,5,6], &[]),
    ]),
    ("3", 10, &[
        (&[1,2], &[3,4,5]), (&[1,3], &[2,4]), (&[1,4], &[2,3,6]), (&[2,5,6], &[]),
        (&[3,5,6], &[]), (&[4,5,6], &[]),
    ]),
    ("4", 10, &[
        (&[1,2], &[3,4,6]), (&[1,3], &[2,6]), (&[2,4], &[1,5]), (&[3,4,5], &[]),
        (&[1,5,6], &[]), (&[4,5,6], &[]),
    ]),
    ("5", 11, &[
        (&[1,2], &[3,5]), (&[1,3], &[2,5,6]), (&[1,4,5], &[]), (&[2,4,6], &[]),
        (&[3,4,6], &[]), (&[4,5,6], &[]),
    ]),
    ("6", 11, &[
        (&[1,2], &[3,4]), (&[1,3], &[2,5,6]), (&[2,4,5], &[]), (&[3,4,5], &[]),
        (&[2,4,6], &[]), (&[3,5,6], &[1]),
    ]),
    ("7", 11, &[
        (&[1,5], &[2,4]), (&[2,6], &[1,3]), (&[1,2,3], &[6]), (&[2,3,4], &[]),
        (&[3,4,5], &[]), (&[4,5,6], &[]),
    ]),
    ("8", 12, &[
        (&[1,2], &[3,6]), (&[1,3,4], &[5]), (&[1,3,5], &[4]), (&[2,4,6], &[]),
        (&[3,4,6], &[]), (&[2,5,6], &[]),
    ]),
    ("9.1", 12, &[
        (&[1,2], &[3,6]), (&[1,3,4], &[]), (&[1,3,5], &[]), (&[2,4,6], &[5]),
        (&[3,4,6], &[]), (&[4,5,6], &[2]),
    ]),
    ("9.2", 12, &[
        (&[1,2], &[3,5,6]), (&[1,3,4], &[]), (&[1,3,5], &[2]), (&[2,4,6], &[]),
        (&[3,4,6], &[]), (&[4,5,6], &[]),
    ]),
    ("10", 12, &[
        (&[1,2], &[3,6]), (&[1,3,4], &[]), (&[1,3,5], &[]), (&[2,4,6], &[5]),
        (&[3,5,6], &[]), (&[4,5,6], &[2]),
    ]),
    ("11", 12, &[
        (&[1,2,3], &[5]), (&[1,2,4], &[5]), (&[1,2,5], &[3,4]), (&[1,3,6], &[]),
        (&[2,4,6], &[]), (&[3,4,6], &[5]),
    ]),
    ("12", 13, &[
        (&[1,2,3], &[]), (&[1,2,4], &[5]), (&[1,2,5], &[4]), (&[1,3,6], &[]),
        (&[2,4,6], &[]), (&[3,5,6], &[4]),
    ]),
    ("13.1", 12, &[
        (&[1,2,3], &[4]), (&[2,3,4], &[1,5]), (&[3,4,5], &[2,6]), (&[4,5,6], &[3]),
        (&[1,5,6], &[]), (&[1,2,6], &[]),
    ]),
    ("13.2", 12, &[
        (&[1,2,3], &[4]), (&[2,3,4], &[1]), (&[3,4,5], &[6]), (&[4,5,6], &[3]),
        (&[1,5,6], &[2]), (&[1,2,6], &[5]),
    ]),
    ("14", 6, &[
        (&[1,2], &[3,4,5]), (&[1,3], &[2,4,6]), (&[1,4], &[2,3,5]), (&[2,5], &[1,4,6]),
        (&[4,5], &[1,2,6]), (&[3,6], &[1,5]), (&[5,6], &[2,3,4]),
    ]),
    ("15", 12, &[
        (&[1,2], &[3,4]), (&[1,3,4], &[2]), (&[1,3,5], &[]), (&[1,4,6], &[]),
        (&[2,5,6], &[]), (&[3,5,6], &[]), (&[4,5,6], &[]),
    ]),
    ("16", 13, &[
        (&[1,2,3], &[]), (&[1,2,4], &[]), (&[1,2,5], &[]), (&[1,3,6], &[]),
        (&[2,4,6], &[]), (&[3,4,6], &[5]), (&[3,5,6], &[4]),
    ]),
    ("17", 13, &[
        (&[1,2,3], &[]), (&[1,2,4], &[]), (&[1,2,5], &[]), (&[1,3,6], &[]),
        (&[2,4,6], &[]), (&[3,5,6], &[4]), (&[4,5,6], &[3]),
    ]),
    ("18", 12, &[
        (&[1,2,3], &[]), (&[2,3,4], &[]), (&[3,4,5], &[6]), (&[1,4,5], &[6]),
        (&[1,2,5], &[6]), (&[3,4,6], &[5]), (&[1,4,6], &[5]), (&[1,2,6], &[5]),
    ]),
    ("19", 14, &[
        (&[3,4,5], &[]), (&[1,4,5], &[6]), (&[1,2,5], &[]), (&[1,2,3], &[]),
        (&[1,5,6], &[4]), (&[2,3,4,6], &[]),
    ]),
];

/// The 22 main components, in catalog order, with `J` reconstructed as
/// `I ∪ (J \ I)`.
pub fn catalog() -> Vec<ComponentSpec> {
    CATALOG
        .iter()
        .map(|&(name, dim, rows)| ComponentSpec {
            name: name.to_string(),
            esupps: rows
                .iter()
                .map(|&(i, extra)| {
                    let support = IndexSet::of(i);
                    ExtendedSupport::new(support, support.union(IndexSet::of(extra)))
                        .expect("catalog rows satisfy I ⊆ J")
                })
                .collect(),
            dim,
        })
        .collect()
}

/// Whether `perm` witnesses the closure criterion for the pair: for every
/// pair `(I, J)` of `sup` there is a pair `(I', J')` of `sub` with
/// `I' ⊆ π(I)` and `π(J) ⊆ J'`. Set inclusions are non-strict.
pub fn closure_witness_valid(sup: &ComponentSpec, sub: &ComponentSpec, perm: &Permutation) -> bool {
    sup.esupps.iter().all(|e| {
        let pi = e.support().permute(perm);
        let pj = e.complementary().permute(perm);
        sub.esupps
            .iter()
            .any(|f| f.support().is_subset_of(pi) && pj.is_subset_of(f.complementary()))
    })
}

fn closure_candidate_impl(
    sup: &ComponentSpec,
    sub: &ComponentSpec,
    require_dim: bool,
) -> Option<Permutation> {
    if require_dim && sup.dim <= sub.dim {
        return None;
    }
    Permutation::all()
        .into_iter()
        .find(|p| closure_witness_valid(sup, sub, p))
}

/// Searches all 720 relabelings for a witness that `sub` may lie in the
/// closure of `sup`, additionally requiring `sup.dim > sub.dim` strictly.
/// Returns the lexicographically first witness.
pub fn closure_candidate(sup: &ComponentSpec, sub: &ComponentSpec) -> Option<Permutation> {
    closure_candidate_impl(sup, sub, true)
}

/// Candidate search without the dimension filter; with it disabled every
/// component trivially matches itself through the identity relabeling.
pub fn closure_candidate_unfiltered(
    sup: &ComponentSpec,
    sub: &ComponentSpec,
) -> Option<Permutation> {
    closure_candidate_impl(sup, sub, false)
}

/// For every component, the names of the components whose closure may
/// contain it, in catalog order.
pub fn table3() -> Vec<(String, Vec<String>)> {
    table3_for(&catalog())
}

/// Same as [`table3`] on an arbitrary catalog slice (diagnostic mode).
pub fn table3_for(components: &[ComponentSpec]) -> Vec<(String, Vec<String>)> {
    components
        .iter()
        .map(|sub| {
            let ins: Vec<String> = components
                .iter()
                .filter(|sup| sup.name != sub.name)
                .filter(|sup| closure_candidate(sup, sub).is_some())
                .map(|sup| sup.name.clone())
                .collect();
            (sub.name.clone(), ins)
        })
        .collect()
}

/// Names of the essential components: those with no closure candidate.
pub fn essential_set() -> Vec<String> {
    essential_for(&catalog())
}

pub fn essential_for(components: &[ComponentSpec]) -> Vec<String> {
    table3_for(components)
        .into_iter()
        .filter(|(_, ins)| ins.is_empty())
        .map(|(name, _)| name)
        .collect()
}
