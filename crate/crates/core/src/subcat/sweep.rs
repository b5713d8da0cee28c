use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::fintop::{ContMap, FinSpace, MapSearch, CATALOG_MAX_POINTS};
use crate::points::PointSet;
use crate::subcat::spec::SubcatSpec;

/// A pair `h, k : X -> A'` into a member whose equalizer is a given carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularWitness {
    pub member: Arc<FinSpace>,
    pub h: ContMap,
    pub k: ContMap,
}

/// Every A-regular carrier of one ambient space, each with the first witness
/// pair found (members smallest first, pairs in graph order).
#[derive(Clone, Debug)]
pub struct RegularSweep {
    pub ambient: Arc<FinSpace>,
    pub bound: usize,
    pub exact: bool,
    witnesses: BTreeMap<PointSet, RegularWitness>,
}

impl RegularSweep {
    pub fn witness(&self, carrier: PointSet) -> Option<&RegularWitness> {
        self.witnesses.get(&carrier)
    }

    pub fn is_regular(&self, carrier: PointSet) -> bool {
        self.witnesses.contains_key(&carrier)
    }

    pub fn carriers(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.witnesses.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointSet, &RegularWitness)> {
        self.witnesses.iter().map(|(c, w)| (*c, w))
    }
}

/// Codomain bound for equalizer sweeps over an `n`-point ambient, and whether
/// it is exact. For subspace-closed A, `2n` points suffice: both maps
/// corestrict to the union of their images.
pub fn regular_bound(a: &SubcatSpec, n: usize) -> (usize, bool) {
    if a.subspace_closed() {
        let want = 2 * n;
        (want.min(CATALOG_MAX_POINTS), want <= CATALOG_MAX_POINTS)
    } else {
        (a.bound.min(CATALOG_MAX_POINTS), false)
    }
}

/// Collects the equalizers of all pairs of maps from `x` into members of `a`
/// within [`regular_bound`]. Memoized per spec.
pub fn regular_sweep(x: &Arc<FinSpace>, a: &SubcatSpec) -> Arc<RegularSweep> {
    let (bound, exact) = regular_bound(a, x.len());
    let key = ((**x).clone(), bound);
    if let Some(hit) = a.sweep_memo().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let sweep = Arc::new(compute(x, a, bound, exact));
    a.sweep_memo().lock().unwrap().insert(key, sweep.clone());
    sweep
}

fn compute(x: &Arc<FinSpace>, a: &SubcatSpec, bound: usize, exact: bool) -> RegularSweep {
    let n = x.len();
    let total = 1usize << n;
    let mut witnesses = BTreeMap::new();
    'members: for member in a.members_up_to(bound).iter() {
        let homs = MapSearch::new(x, member).graphs();
        for (i, h) in homs.iter().enumerate() {
            for k in &homs[i..] {
                let carrier: PointSet = (0..n).filter(|&p| h[p] == k[p]).collect();
                witnesses.entry(carrier).or_insert_with(|| RegularWitness {
                    member: member.clone(),
                    h: ContMap::raw(x.clone(), member.clone(), h.clone()),
                    k: ContMap::raw(x.clone(), member.clone(), k.clone()),
                });
                if witnesses.len() == total {
                    break 'members;
                }
            }
        }
    }
    RegularSweep { ambient: x.clone(), bound, exact, witnesses }
}

/// Outcome of an A-cancellability test for `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cancellability {
    pub cancellable: bool,
    pub bound: usize,
    pub exact: bool,
    /// A pair that agrees after `f` but differs.
    pub witness: Option<RegularWitness>,
}

/// `f` is A-cancellable iff no proper A-regular carrier of its codomain
/// contains its image.
pub fn is_cancellable(f: &ContMap, a: &SubcatSpec) -> Cancellability {
    let sweep = regular_sweep(f.cod_arc(), a);
    let image = f.full_image();
    let full = f.cod().full();
    let witness = sweep
        .iter()
        .find(|(c, _)| *c != full && image.is_subset(*c))
        .map(|(_, w)| w.clone());
    Cancellability {
        cancellable: witness.is_none(),
        bound: sweep.bound,
        exact: sweep.exact,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::{equalizer, Subobject};
    use crate::points::all_subsets;

    fn arc(s: FinSpace) -> Arc<FinSpace> {
        Arc::new(s)
    }

    #[test]
    fn regular_carriers_of_small_spaces() {
        let i2 = arc(FinSpace::indiscrete(2));
        let t0 = regular_sweep(&i2, &SubcatSpec::t0());
        let found: Vec<u64> = t0.carriers().map(|c| c.bits()).collect();
        assert_eq!(found, vec![0b00, 0b11]);
        assert!(t0.exact);

        let ind = regular_sweep(&i2, &SubcatSpec::indiscrete());
        assert_eq!(ind.carriers().count(), 4);

        let s = arc(FinSpace::sierpinski());
        let t0 = regular_sweep(&s, &SubcatSpec::t0());
        assert_eq!(t0.carriers().count(), 4);
    }

    #[test]
    fn witnesses_equalize_to_their_carrier() {
        let a = SubcatSpec::t0();
        for x in crate::fintop::catalog_up_to(3, false) {
            let sweep = regular_sweep(x, &a);
            for (c, w) in sweep.iter() {
                assert_eq!(equalizer(&w.h, &w.k).unwrap().carrier(), c);
                assert!(a.is_member(&w.member));
            }
        }
    }

    #[test]
    fn all_subsets_are_regular_in_top() {
        for x in crate::fintop::catalog_up_to(3, false) {
            let sweep = regular_sweep(x, &SubcatSpec::all());
            for c in all_subsets(x.len()) {
                assert!(sweep.is_regular(c), "{x:?} {c:?}");
            }
        }
    }

    #[test]
    fn cancellability() {
        let s = arc(FinSpace::sierpinski());
        let one = Subobject::new(s.clone(), PointSet::singleton(1)).unwrap();
        let verdict = is_cancellable(&one.inclusion(), &SubcatSpec::t0());
        assert!(!verdict.cancellable);
        let w = verdict.witness.unwrap();
        assert_eq!(equalizer(&w.h, &w.k).unwrap().carrier(), PointSet::singleton(1));

        assert!(is_cancellable(&ContMap::identity(s.clone()), &SubcatSpec::t0()).cancellable);
        let onto = ContMap::constant(s, arc(FinSpace::point()), 0);
        assert!(is_cancellable(&onto, &SubcatSpec::discrete()).cancellable);
    }
}
