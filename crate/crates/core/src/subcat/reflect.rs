use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fintop::{canonical_form, ContMap, FinSpace, MapSearch};
use crate::points::PointSet;
use crate::subcat::spec::SubcatSpec;

/// A (weak) reflection `r_X : X -> rX`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reflection {
    pub morphism: ContMap,
    /// Factorizations through `morphism` need not be unique.
    pub weak: bool,
}

impl Reflection {
    pub fn source(&self) -> &Arc<FinSpace> {
        self.morphism.dom_arc()
    }

    pub fn target(&self) -> &Arc<FinSpace> {
        self.morphism.cod_arc()
    }
}

/// Reflection of `x` into the strongly epireflective hull of `gens`.
///
/// Points are identified when no map into a generator separates them; the
/// target carries the initial topology of all maps into generators. Each
/// question is answered by a constrained map search, so the product of
/// generators is never built.
pub fn seh_reflection(x: &Arc<FinSpace>, gens: &[Arc<FinSpace>]) -> Reflection {
    let n = x.len();
    let mut above = vec![PointSet::EMPTY; n];
    for (p, slot) in above.iter_mut().enumerate() {
        let mut set = x.nbhd(p);
        for q in 0..n {
            if set.contains(q) {
                continue;
            }
            let pulled_apart = gens.iter().any(|g| {
                (0..g.len()).any(|a| {
                    MapSearch::new(x, g)
                        .fix(p, a)
                        .restrict(q, g.full().difference(g.nbhd(a)))
                        .exists()
                })
            });
            if !pulled_apart {
                set.insert(q);
            }
        }
        *slot = set;
    }

    let all_t0 = gens.iter().all(|g| g.is_t0());
    let split = |p: usize, q: usize| {
        gens.iter().any(|g| {
            (0..g.len()).any(|a| {
                MapSearch::new(x, g)
                    .fix(p, a)
                    .restrict(q, g.full().difference(PointSet::singleton(a)))
                    .exists()
            })
        })
    };

    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for p in 0..n {
        if class[p] != usize::MAX {
            continue;
        }
        class[p] = reps.len();
        for q in p + 1..n {
            if class[q] == usize::MAX
                && above[p].contains(q)
                && above[q].contains(p)
                && (all_t0 || !split(p, q))
            {
                class[q] = reps.len();
            }
        }
        reps.push(p);
    }

    let labels = reps.iter().map(|&p| x.label(p).to_owned()).collect();
    let nbhd = reps
        .iter()
        .map(|&p| above[p].iter().map(|q| class[q]).collect())
        .collect();
    let target = Arc::new(FinSpace::raw(labels, nbhd));
    Reflection {
        morphism: ContMap::raw(x.clone(), target, class),
        weak: false,
    }
}

/// A member map that does not factor through the candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationFailure {
    pub member: String,
    pub map: ContMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakReflectionCertificate {
    pub verified: bool,
    /// Every factorization found was unique.
    pub unique: bool,
    pub bound: usize,
    pub counterexample: Option<FactorizationFailure>,
}

/// Checks that every map from `x` into a member with at most `a.bound`
/// points factors through `cand`.
pub fn verify_weak_reflection(
    x: &Arc<FinSpace>,
    cand: &Reflection,
    a: &SubcatSpec,
) -> Result<WeakReflectionCertificate> {
    if !a.is_member(cand.target()) {
        return Err(Error::input(format!(
            "candidate target {} is not a member of {}",
            canonical_form(cand.target()),
            a.name
        )));
    }
    if cand.source().as_ref() != x.as_ref() {
        return Err(Error::input("candidate reflection has a different source"));
    }
    let r = &cand.morphism;
    let mut unique = true;
    for member in a.members_up_to(a.bound).iter() {
        for f in MapSearch::new(x, member).graphs() {
            let mut search = MapSearch::new(r.cod(), member);
            for (p, &fp) in f.iter().enumerate() {
                search = search.fix(r.apply(p), fp);
            }
            let count = search.count();
            if count == 0 {
                return Ok(WeakReflectionCertificate {
                    verified: false,
                    unique: false,
                    bound: a.bound,
                    counterexample: Some(FactorizationFailure {
                        member: canonical_form(member),
                        map: ContMap::raw(x.clone(), member.clone(), f),
                    }),
                });
            }
            unique &= count == 1;
        }
    }
    Ok(WeakReflectionCertificate { verified: true, unique, bound: a.bound, counterexample: None })
}

/// Some `f'` with `f' ∘ r_X = r_Y ∘ f`.
pub fn reflect_map(f: &ContMap, rx: &Reflection, ry: &Reflection) -> Option<ContMap> {
    let target = ry.morphism.cod_arc();
    let mut search = MapSearch::new(rx.target(), target);
    for p in 0..f.dom().len() {
        search = search.fix(rx.morphism.apply(p), ry.morphism.apply(f.apply(p)));
    }
    search
        .first()
        .map(|g| ContMap::raw(rx.target().clone(), target.clone(), g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::{catalog_up_to, t0_reflection};

    fn arc(s: FinSpace) -> Arc<FinSpace> {
        Arc::new(s)
    }

    #[test]
    fn sierpinski_hull_collapses_indiscrete_doublet() {
        let r = seh_reflection(&arc(FinSpace::indiscrete(2)), &[arc(FinSpace::sierpinski())]);
        assert_eq!(r.target().len(), 1);
    }

    #[test]
    fn sierpinski_hull_fixes_t0_spaces() {
        let gens = [arc(FinSpace::sierpinski())];
        for x in catalog_up_to(4, true) {
            assert!(seh_reflection(x, &gens).morphism.is_homeomorphism(), "{x:?}");
        }
    }

    #[test]
    fn sierpinski_hull_agrees_with_t0_quotient() {
        let gens = [arc(FinSpace::sierpinski())];
        for x in catalog_up_to(4, false) {
            let r = seh_reflection(x, &gens);
            let t = t0_reflection(x);
            assert_eq!(r.morphism.graph(), t.graph());
            assert_eq!(r.target().neighbourhoods(), t.cod().neighbourhoods());
        }
    }

    #[test]
    fn discrete_hull_collapses_connected_spaces() {
        let r = seh_reflection(&arc(FinSpace::sierpinski()), &[arc(FinSpace::discrete(2))]);
        assert_eq!(r.target().len(), 1);
    }

    #[test]
    fn non_t0_generator_separates_by_values() {
        // maps into I2 separate every pair of points, but see no topology
        let r = seh_reflection(&arc(FinSpace::sierpinski()), &[arc(FinSpace::indiscrete(2))]);
        assert_eq!(r.target().len(), 2);
        assert!(r.target().is_indiscrete());
    }

    #[test]
    fn t0_quotient_is_a_strong_reflection() {
        let i2 = arc(FinSpace::indiscrete(2));
        let cand = Reflection { morphism: t0_reflection(&i2), weak: false };
        let cert = verify_weak_reflection(&i2, &cand, &SubcatSpec::t0()).unwrap();
        assert!(cert.verified && cert.unique);
    }

    #[test]
    fn identity_on_members_verifies() {
        let s = arc(FinSpace::sierpinski());
        let cand = Reflection { morphism: ContMap::identity(s.clone()), weak: false };
        assert!(verify_weak_reflection(&s, &cand, &SubcatSpec::t0()).unwrap().verified);

        let i2 = arc(FinSpace::indiscrete(2));
        let cand = Reflection { morphism: ContMap::identity(i2.clone()), weak: false };
        let cert = verify_weak_reflection(&i2, &cand, &SubcatSpec::indiscrete()).unwrap();
        assert!(cert.verified && cert.unique);
    }

    #[test]
    fn collapsing_too_far_fails() {
        let s = arc(FinSpace::sierpinski());
        let cand = Reflection { morphism: ContMap::constant(s.clone(), arc(FinSpace::point()), 0), weak: true };
        let cert = verify_weak_reflection(&s, &cand, &SubcatSpec::t0()).unwrap();
        assert!(!cert.verified);
        assert!(cert.counterexample.is_some());
    }

    #[test]
    fn non_member_target_is_rejected() {
        let i2 = arc(FinSpace::indiscrete(2));
        let cand = Reflection { morphism: ContMap::identity(i2.clone()), weak: false };
        assert!(verify_weak_reflection(&i2, &cand, &SubcatSpec::t0()).is_err());
    }
}
