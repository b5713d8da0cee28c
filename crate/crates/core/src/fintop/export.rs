use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{FinCategory, Morphism, MorphismId, ObjectId};
use crate::error::{Error, Result};
use crate::fintop::enumerate::{canonical_form, homeomorphism};
use crate::fintop::map::{hom_set, ContMap};
use crate::fintop::space::FinSpace;

/// Default cap on the number of morphisms materialized by [`export_category`].
pub const DEFAULT_MORPHISM_BUDGET: usize = 20_000;

/// A full subcategory of finite Top with every hom-set materialized, plus the
/// bookkeeping to move between continuous maps and morphism ids.
#[derive(Clone, Debug)]
pub struct ExportedCategory {
    pub category: FinCategory,
    spaces: Vec<Arc<FinSpace>>,
    maps: Vec<ContMap>,
    index: HashMap<(ObjectId, ObjectId, Vec<usize>), MorphismId>,
}

/// Morphism ids follow the canonical order: by domain object, then codomain
/// object, then lexicographically by graph.
pub fn export_category(spaces: &[Arc<FinSpace>]) -> Result<ExportedCategory> {
    export_category_within(spaces, DEFAULT_MORPHISM_BUDGET)
}

pub fn export_category_within(spaces: &[Arc<FinSpace>], budget: usize) -> Result<ExportedCategory> {
    let n = spaces.len();
    let mut morphisms = Vec::new();
    let mut maps = Vec::new();
    let mut index = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for map in hom_set(&spaces[a], &spaces[b]) {
                if maps.len() == budget {
                    return Err(Error::budget(format!(
                        "exported category exceeds {budget} morphisms"
                    )));
                }
                index.insert((a, b, map.graph().to_vec()), maps.len());
                morphisms.push(Morphism { dom: a, cod: b });
                maps.push(map);
            }
        }
    }
    let identities = (0..n)
        .map(|a| index[&(a, a, (0..spaces[a].len()).collect::<Vec<_>>())])
        .collect();
    let objects = spaces.iter().map(|s| canonical_form(s)).collect();
    let category = FinCategory::new(objects, morphisms.clone(), identities, |g, f| {
        let graph: Vec<usize> = maps[f].graph().iter().map(|&x| maps[g].apply(x)).collect();
        index
            .get(&(morphisms[f].dom, morphisms[g].cod, graph))
            .copied()
    })?;
    Ok(ExportedCategory {
        category,
        spaces: spaces.to_vec(),
        maps,
        index,
    })
}

impl ExportedCategory {
    pub fn spaces(&self) -> &[Arc<FinSpace>] {
        &self.spaces
    }

    pub fn space(&self, a: ObjectId) -> &Arc<FinSpace> {
        &self.spaces[a]
    }

    pub fn map(&self, f: MorphismId) -> &ContMap {
        &self.maps[f]
    }

    /// Id of a map whose domain and codomain are (equal to) exported objects.
    pub fn morphism_id(&self, map: &ContMap) -> Option<MorphismId> {
        let a = self.spaces.iter().position(|s| **s == *map.dom())?;
        let b = self.spaces.iter().position(|s| **s == *map.cod())?;
        self.index.get(&(a, b, map.graph().to_vec())).copied()
    }

    /// The exported object homeomorphic to `space`, with a homeomorphism
    /// from `space` onto it (the identity when `space` is itself exported).
    pub fn locate(&self, space: &Arc<FinSpace>) -> Option<(ObjectId, ContMap)> {
        if let Some(a) = self.spaces.iter().position(|s| **s == **space) {
            return Some((a, ContMap::identity(self.spaces[a].clone())));
        }
        self.spaces
            .iter()
            .enumerate()
            .find_map(|(a, s)| homeomorphism(space, s).map(|iso| (a, iso)))
    }

    /// Transports a map between arbitrary spaces onto the exported objects
    /// homeomorphic to its ends.
    pub fn transport(&self, map: &ContMap) -> Option<MorphismId> {
        let (_, into_dom) = self.locate(map.dom_arc())?;
        let (_, into_cod) = self.locate(map.cod_arc())?;
        let moved = into_dom.inverse()?.then(map).ok()?.then(&into_cod).ok()?;
        self.morphism_id(&moved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_category() {
        let e = export_category(&[Arc::new(FinSpace::point())]).unwrap();
        assert_eq!(e.category.object_count(), 1);
        assert_eq!(e.category.morphism_count(), 1);
    }

    #[test]
    fn hom_counts_with_indiscrete_doublet() {
        let e = export_category(&[Arc::new(FinSpace::indiscrete(2)), Arc::new(FinSpace::point())]).unwrap();
        let c = &e.category;
        assert_eq!(c.hom(0, 1).len(), 1);
        assert_eq!(c.hom(1, 0).len(), 2);
        assert_eq!(c.hom(0, 0).len(), 4);
        assert_eq!(c.hom(1, 1).len(), 1);
        assert!(c.associativity_violation().is_none());
    }

    #[test]
    fn sierpinski_endomorphisms() {
        let e = export_category(&[Arc::new(FinSpace::sierpinski()), Arc::new(FinSpace::point())]).unwrap();
        assert_eq!(e.category.hom(0, 0).len(), 3);
    }

    #[test]
    fn budget_guard() {
        let spaces = [Arc::new(FinSpace::indiscrete(3))];
        assert!(matches!(export_category_within(&spaces, 10), Err(Error::Budget(_))));
    }
}
