use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fintop::{catalog_up_to, product, ContMap, FinSpace, MapSearch, Subobject, CATALOG_MAX_POINTS};
use crate::subcat::spec::SubcatSpec;

/// The diagonal of `x` as a subobject of `x × x`.
pub fn diagonal(x: &Arc<FinSpace>) -> Result<Subobject> {
    let p = product(x, x)?;
    let carrier = (0..x.len()).map(|i| p.pair(i, i)).collect();
    Subobject::new(p.space.clone(), carrier)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalAlpha {
    pub alpha: ContMap,
    pub mono: bool,
}

/// `α : r(U × X) -> rU × rX`, the map with `u ∘ α = r(p)` and `v ∘ α = r(q)`.
pub fn canonical_alpha(u: &Arc<FinSpace>, x: &Arc<FinSpace>, a: &SubcatSpec) -> Result<CanonicalAlpha> {
    if !a.has_reflector() {
        return Err(Error::input(format!("subcategory {} has no reflector", a.name)));
    }
    let ux = product(u, x)?;
    let r = a.reflect(&ux.space)?.morphism;
    let ru = a.reflect(u)?.morphism;
    let rx = a.reflect(x)?.morphism;
    let target = product(ru.cod_arc(), rx.cod_arc())?;
    let mut search = MapSearch::new(r.cod(), &target.space);
    for i in 0..u.len() {
        for j in 0..x.len() {
            let value = target.pair(ru.apply(i), rx.apply(j));
            search = search.fix(r.apply(ux.pair(i, j)), value);
        }
    }
    let graph = search
        .first()
        .ok_or_else(|| Error::input("the reflected projections admit no mediating map"))?;
    let alpha = ContMap::raw(r.cod_arc().clone(), target.space.clone(), graph);
    let mono = alpha.is_injective();
    Ok(CanonicalAlpha { alpha, mono })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LordWitness {
    pub z: Arc<FinSpace>,
    pub f: ContMap,
    pub g: ContMap,
    pub g_bar: ContMap,
}

/// Searches spaces `Z` with at most `a.bound` points for `f ≠ g : Z -> X`
/// with `r_X ∘ f = r_X ∘ g`, and `ḡ : X -> Z` with `ḡ ∘ g = ḡ ∘ f` and
/// `g ∘ ḡ ∘ g = g`.
pub fn lord_condition_star(x: &Arc<FinSpace>, a: &SubcatSpec) -> Result<Option<LordWitness>> {
    if !a.has_reflector() {
        return Err(Error::input(format!("subcategory {} has no reflector", a.name)));
    }
    if a.is_member(x) {
        return Err(Error::input(format!("the space is already a member of {}", a.name)));
    }
    let r = a.reflect(x)?.morphism;
    for z in catalog_up_to(a.bound.min(CATALOG_MAX_POINTS), false) {
        let homs = MapSearch::new(z, x).graphs();
        let backs = MapSearch::new(x, z).graphs();
        for f in &homs {
            for g in &homs {
                if f == g || (0..z.len()).any(|i| r.apply(f[i]) != r.apply(g[i])) {
                    continue;
                }
                let mut found = None;
                for gb in &backs {
                    let coequalizes = (0..z.len()).all(|i| gb[g[i]] == gb[f[i]]);
                    let split = (0..z.len()).all(|i| g[gb[g[i]]] == g[i]);
                    if coequalizes && split {
                        found = Some(gb.clone());
                        break;
                    }
                }
                if let Some(gb) = found {
                    return Ok(Some(LordWitness {
                        z: z.clone(),
                        f: ContMap::raw(z.clone(), x.clone(), f.clone()),
                        g: ContMap::raw(z.clone(), x.clone(), g.clone()),
                        g_bar: ContMap::raw(x.clone(), z.clone(), gb),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Some `f'` with `f' ∘ r_X = r_Y ∘ f`, by search.
pub fn naturality_square(f: &ContMap, a: &SubcatSpec) -> Result<Option<ContMap>> {
    let rx = a.reflect(f.dom_arc())?;
    let ry = a.reflect(f.cod_arc())?;
    Ok(crate::subcat::reflect::reflect_map(f, &rx, &ry))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::homeomorphism;

    fn arc(s: FinSpace) -> Arc<FinSpace> {
        Arc::new(s)
    }

    #[test]
    fn diagonal_of_point_and_sierpinski() {
        let p = arc(FinSpace::point());
        assert!(diagonal(&p).unwrap().is_full());
        let d = diagonal(&arc(FinSpace::sierpinski())).unwrap();
        assert_eq!(d.ambient().len(), 4);
        assert_eq!(d.labels(), vec!["(0,0)", "(1,1)"]);
    }

    #[test]
    fn diagonal_is_equalizer_of_projections() {
        for x in catalog_up_to(3, false) {
            let p = product(x, x).unwrap();
            let eq = crate::fintop::equalizer(&p.left, &p.right).unwrap();
            assert_eq!(eq, diagonal(x).unwrap());
        }
    }

    #[test]
    fn alpha_examples() {
        let t0 = SubcatSpec::t0();
        let p = arc(FinSpace::point());
        for x in catalog_up_to(3, false) {
            let a = canonical_alpha(&p, x, &t0).unwrap();
            assert!(a.mono && a.alpha.is_homeomorphism());
        }
        let s = arc(FinSpace::sierpinski());
        let a = canonical_alpha(&arc(FinSpace::indiscrete(2)), &s, &t0).unwrap();
        assert!(a.mono && a.alpha.is_homeomorphism());
        assert!(homeomorphism(a.alpha.dom_arc(), &s).is_some());
        let a = canonical_alpha(&s, &s, &t0).unwrap();
        assert!(a.mono && a.alpha.is_homeomorphism());
    }

    #[test]
    fn alpha_needs_a_reflector() {
        let members = Default::default();
        let a = SubcatSpec::new("none", crate::subcat::SubcatKind::PredicateTable { members });
        let p = arc(FinSpace::point());
        assert!(canonical_alpha(&p, &p, &a).is_err());
    }

    #[test]
    fn lord_witnesses() {
        let t0 = SubcatSpec::t0();
        let w = lord_condition_star(&arc(FinSpace::indiscrete(2)), &t0).unwrap().unwrap();
        assert_eq!(w.z.len(), 1);
        assert!(lord_condition_star(&arc(FinSpace::indiscrete(3)), &t0).unwrap().is_some());
        assert!(lord_condition_star(&arc(FinSpace::sierpinski()), &t0).is_err());
    }

    #[test]
    fn weak_naturality() {
        for a in [SubcatSpec::t0(), SubcatSpec::discrete(), SubcatSpec::indiscrete()] {
            for x in catalog_up_to(2, false) {
                for y in catalog_up_to(2, false) {
                    for f in crate::fintop::hom_set(x, y) {
                        assert!(naturality_square(&f, &a).unwrap().is_some());
                    }
                }
            }
        }
    }
}
