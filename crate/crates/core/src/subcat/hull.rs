use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fintop::{catalog_up_to, ContMap, FinSpace, MapSearch, Subobject, CATALOG_MAX_POINTS};
use crate::points::{all_subsets, PointSet};
use crate::subcat::spec::{SubcatKind, SubcatSpec};
use crate::subcat::sweep::is_cancellable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hull {
    S,
    E,
    D,
    Mono,
    SmallestIntermediate,
    LargestIntermediate,
}

impl Hull {
    pub fn name(self) -> &'static str {
        match self {
            Hull::S => "S",
            Hull::E => "E",
            Hull::D => "D",
            Hull::Mono => "mono-hull",
            Hull::SmallestIntermediate => "smallest-intermediate",
            Hull::LargestIntermediate => "largest-intermediate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HullWitness {
    /// An embedding (or injective map, for the mono hull) into a member.
    Embedding { map: ContMap },
    Mono { map: ContMap },
    /// The separating map of a generated hull, when it is not an embedding.
    Separating { map: ContMap },
    /// `h ≠ k` with `h ∘ p = k ∘ p`.
    Uncancelled { p: ContMap, h: ContMap, k: ContMap },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullReport {
    pub space: Arc<FinSpace>,
    pub hull: Hull,
    pub member: bool,
    pub bound: usize,
    /// The verdict does not depend on the bound.
    pub exact: bool,
    pub witness: Option<HullWitness>,
    /// Largest intermediate only: every reflection in the class was an iso,
    /// so the condition held vacuously.
    pub degenerate: bool,
    /// E/D only: every surjection in the enumeration is A-cancellable.
    pub side_condition: Option<bool>,
}

impl HullReport {
    fn new(space: &Arc<FinSpace>, hull: Hull, member: bool, bound: usize, exact: bool) -> Self {
        HullReport {
            space: space.clone(),
            hull,
            member,
            bound,
            exact,
            witness: None,
            degenerate: false,
            side_condition: None,
        }
    }
}

/// Membership in the strongly epireflective hull S(A): an embedding into a
/// member. Exact for generated hulls and subspace-closed A.
pub fn in_s_hull(x: &Arc<FinSpace>, a: &SubcatSpec) -> HullReport {
    embedding_search(x, a, Hull::S)
}

/// Alias of [`in_s_hull`]: the extremal subobjects of A-objects.
pub fn in_smallest_intermediate(x: &Arc<FinSpace>, a: &SubcatSpec) -> HullReport {
    embedding_search(x, a, Hull::SmallestIntermediate)
}

fn embedding_search(x: &Arc<FinSpace>, a: &SubcatSpec, hull: Hull) -> HullReport {
    if let SubcatKind::Seh { generators } = &a.kind {
        let r = crate::subcat::seh_reflection(x, generators).morphism;
        let member = r.is_embedding();
        let mut report = HullReport::new(x, hull, member, x.len(), true);
        report.witness = Some(if member {
            HullWitness::Embedding { map: r }
        } else {
            HullWitness::Separating { map: r }
        });
        return report;
    }
    let bound = a.bound.max(x.len()).min(CATALOG_MAX_POINTS);
    let found = injective_into_member(x, a, bound, true);
    let exact = found.is_some() || (a.subspace_closed() && x.len() <= bound);
    let mut report = HullReport::new(x, hull, found.is_some(), bound, exact);
    report.witness = found.map(|map| HullWitness::Embedding { map });
    report
}

/// An injective continuous map from `x` into some member.
pub fn in_mono_hull(x: &Arc<FinSpace>, a: &SubcatSpec) -> HullReport {
    let bound = a.bound.max(x.len()).min(CATALOG_MAX_POINTS);
    let found = injective_into_member(x, a, bound, false);
    let exact = found.is_some() || (a.subspace_closed() && x.len() <= bound);
    let mut report = HullReport::new(x, Hull::Mono, found.is_some(), bound, exact);
    report.witness = found.map(|map| HullWitness::Mono { map });
    report
}

fn injective_into_member(
    x: &Arc<FinSpace>,
    a: &SubcatSpec,
    bound: usize,
    initial: bool,
) -> Option<ContMap> {
    a.members_up_to(bound).iter().find_map(|member| {
        let mut found = None;
        let _ = MapSearch::new(x, member).injective().for_each(|g| {
            let map = ContMap::raw(x.clone(), member.clone(), g.to_vec());
            if !initial || map.is_initial() {
                found = Some(map);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        found
    })
}

/// Which morphisms a Hausdorff test quantifies over. At finite scale the
/// A-epimorphisms and the A-cancellable morphisms coincide, so both filters
/// run the same test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MorphismClass {
    Cancellable,
    Epi,
}

/// Pumplün–Röhrl closure: X is Hausdorff for every A-cancellable morphism
/// between spaces of at most `a.bound` points.
pub fn in_e_hull(x: &Arc<FinSpace>, a: &SubcatSpec) -> HullReport {
    hausdorff(x, a, MorphismClass::Cancellable)
}

/// Hoffmann closure: X is Hausdorff for every A-epimorphism between spaces of
/// at most `a.bound` points.
pub fn in_d_hull(x: &Arc<FinSpace>, a: &SubcatSpec) -> HullReport {
    hausdorff(x, a, MorphismClass::Epi)
}

/// Cancellability of `p : C -> D` depends only on its image, and every image
/// is the image of a subspace inclusion, so the tests range over pairs
/// (D, image) with the inclusion standing in for `p`.
fn hausdorff(x: &Arc<FinSpace>, a: &SubcatSpec, class: MorphismClass) -> HullReport {
    let hull = match class {
        MorphismClass::Cancellable => Hull::E,
        MorphismClass::Epi => Hull::D,
    };
    let bound = a.bound.min(CATALOG_MAX_POINTS);
    let mut side_condition = true;
    let mut witness = None;
    'outer: for d in catalog_up_to(bound, false) {
        side_condition &= is_cancellable(&ContMap::identity(d.clone()), a).cancellable;
        let homs = MapSearch::new(d, x).graphs();
        for image in all_subsets(d.len()) {
            let p = Subobject::new(d.clone(), image).unwrap().inclusion();
            if !is_cancellable(&p, a).cancellable {
                continue;
            }
            if let Some((h, k)) = agreeing_pair(&homs, image) {
                witness = Some(HullWitness::Uncancelled {
                    p,
                    h: ContMap::raw(d.clone(), x.clone(), h.to_vec()),
                    k: ContMap::raw(d.clone(), x.clone(), k.to_vec()),
                });
                break 'outer;
            }
        }
    }
    let member = witness.is_none();
    let mut report = HullReport::new(x, hull, member, bound, !member);
    report.witness = witness;
    report.side_condition = Some(side_condition);
    report
}

/// Two distinct graphs that agree on `on`.
fn agreeing_pair(homs: &[Vec<usize>], on: PointSet) -> Option<(&[usize], &[usize])> {
    let mut seen: BTreeMap<Vec<usize>, &[usize]> = BTreeMap::new();
    for h in homs {
        let key: Vec<usize> = on.iter().map(|p| h[p]).collect();
        if let Some(prev) = seen.get(&key) {
            return Some((prev, h));
        }
        seen.insert(key, h);
    }
    None
}

/// Baron's largest intermediate category: for every B in S(A) within the
/// bound, pairs `f, g : rB -> X` with `f ∘ r_B = g ∘ r_B` coincide.
pub fn in_largest_intermediate(x: &Arc<FinSpace>, a: &SubcatSpec) -> Result<HullReport> {
    if !a.has_reflector() {
        return Err(Error::input(format!("subcategory {} has no reflector", a.name)));
    }
    let bound = a.bound.min(CATALOG_MAX_POINTS);
    let mut degenerate = true;
    let mut witness = None;
    for b in catalog_up_to(bound, false) {
        if !in_s_hull(b, a).member {
            continue;
        }
        let r = a.reflect(b)?.morphism;
        degenerate &= r.is_homeomorphism();
        if r.is_surjective() || witness.is_some() {
            continue;
        }
        let homs = MapSearch::new(r.cod(), x).graphs();
        if let Some((f, g)) = agreeing_pair(&homs, r.full_image()) {
            witness = Some(HullWitness::Uncancelled {
                p: r.clone(),
                h: ContMap::raw(r.cod_arc().clone(), x.clone(), f.to_vec()),
                k: ContMap::raw(r.cod_arc().clone(), x.clone(), g.to_vec()),
            });
        }
    }
    let member = witness.is_none();
    let mut report = HullReport::new(x, Hull::LargestIntermediate, member, bound, !member);
    report.witness = witness;
    report.degenerate = degenerate;
    Ok(report)
}
