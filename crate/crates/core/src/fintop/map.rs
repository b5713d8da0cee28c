use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fintop::space::FinSpace;
use crate::points::PointSet;

/// A continuous map between finite spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContMap {
    dom: Arc<FinSpace>,
    cod: Arc<FinSpace>,
    graph: Vec<usize>,
}

impl ContMap {
    /// Checks that `graph` is a total function `dom -> cod` and continuous.
    pub fn new(
        dom: impl Into<Arc<FinSpace>>,
        cod: impl Into<Arc<FinSpace>>,
        graph: Vec<usize>,
    ) -> Result<Self> {
        let (dom, cod) = (dom.into(), cod.into());
        if graph.len() != dom.len() {
            return Err(Error::input(format!(
                "map has {} values for a domain of {} points",
                graph.len(),
                dom.len()
            )));
        }
        if let Some(&y) = graph.iter().find(|&&y| y >= cod.len()) {
            return Err(Error::input(format!("map value {y} outside the codomain")));
        }
        if let Some(x) = first_discontinuity(&dom, &cod, &graph) {
            return Err(Error::input(format!(
                "map is not continuous at point {:?}",
                dom.label(x)
            )));
        }
        Ok(ContMap { dom, cod, graph })
    }

    pub(crate) fn raw(dom: Arc<FinSpace>, cod: Arc<FinSpace>, graph: Vec<usize>) -> Self {
        debug_assert_eq!(graph.len(), dom.len());
        debug_assert!(first_discontinuity(&dom, &cod, &graph).is_none());
        ContMap { dom, cod, graph }
    }

    /// Map given by point labels: `pairs[i] = (source, target)`.
    pub fn from_labels(
        dom: impl Into<Arc<FinSpace>>,
        cod: impl Into<Arc<FinSpace>>,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let (dom, cod) = (dom.into(), cod.into());
        let mut graph = vec![usize::MAX; dom.len()];
        for (s, t) in pairs {
            let x = dom
                .index_of(s)
                .ok_or_else(|| Error::input(format!("unknown point {s:?}")))?;
            let y = cod
                .index_of(t)
                .ok_or_else(|| Error::input(format!("unknown point {t:?}")))?;
            graph[x] = y;
        }
        if graph.contains(&usize::MAX) {
            return Err(Error::input("map is not total"));
        }
        ContMap::new(dom, cod, graph)
    }

    pub fn identity(space: impl Into<Arc<FinSpace>>) -> Self {
        let space = space.into();
        let graph = (0..space.len()).collect();
        ContMap { dom: space.clone(), cod: space, graph }
    }

    pub fn constant(
        dom: impl Into<Arc<FinSpace>>,
        cod: impl Into<Arc<FinSpace>>,
        value: usize,
    ) -> Self {
        let (dom, cod) = (dom.into(), cod.into());
        assert!(value < cod.len());
        let graph = vec![value; dom.len()];
        ContMap { dom, cod, graph }
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn dom_arc(&self) -> &Arc<FinSpace> {
        &self.dom
    }

    pub fn cod_arc(&self) -> &Arc<FinSpace> {
        &self.cod
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ContMap) -> Result<ContMap> {
        if !same_space(&first.cod, &self.dom) {
            return Err(Error::input("maps are not composable"));
        }
        let graph = first.graph.iter().map(|&x| self.graph[x]).collect();
        Ok(ContMap {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            graph,
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ContMap) -> Result<ContMap> {
        next.after(self)
    }

    pub fn parallel_to(&self, other: &ContMap) -> bool {
        same_space(&self.dom, &other.dom) && same_space(&self.cod, &other.cod)
    }

    pub fn image(&self, set: PointSet) -> PointSet {
        set.iter().map(|x| self.graph[x]).collect()
    }

    pub fn full_image(&self) -> PointSet {
        self.graph.iter().copied().collect()
    }

    pub fn preimage(&self, set: PointSet) -> PointSet {
        (0..self.graph.len())
            .filter(|&x| set.contains(self.graph[x]))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.full_image().len() == self.graph.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.full_image() == self.cod.full()
    }

    /// The domain carries the initial topology induced by this map.
    pub fn is_initial(&self) -> bool {
        (0..self.dom.len())
            .all(|x| self.preimage(self.cod.nbhd(self.graph[x])) == self.dom.nbhd(x))
    }

    pub fn is_embedding(&self) -> bool {
        self.is_injective() && self.is_initial()
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.is_embedding() && self.is_surjective()
    }

    /// Inverse of a homeomorphism.
    pub fn inverse(&self) -> Option<ContMap> {
        if !self.is_homeomorphism() {
            return None;
        }
        let mut graph = vec![0; self.cod.len()];
        for (x, &y) in self.graph.iter().enumerate() {
            graph[y] = x;
        }
        Some(ContMap::raw(self.cod.clone(), self.dom.clone(), graph))
    }
}

impl fmt::Debug for ContMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .graph
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}↦{}", self.dom.label(x), self.cod.label(y)))
            .collect();
        write!(f, "[{}]", pairs.join(" "))
    }
}

impl fmt::Display for ContMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn same_space(a: &Arc<FinSpace>, b: &Arc<FinSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn first_discontinuity(dom: &FinSpace, cod: &FinSpace, graph: &[usize]) -> Option<usize> {
    (0..dom.len()).find(|&x| {
        let target = cod.nbhd(graph[x]);
        dom.nbhd(x).iter().any(|y| !target.contains(graph[y]))
    })
}

/// Backtracking search over continuous maps `dom -> cod`, with optional
/// restrictions on the value of each point and an injectivity requirement.
///
/// Enumeration visits graphs in lexicographic order.
pub struct MapSearch<'a> {
    dom: &'a FinSpace,
    cod: &'a FinSpace,
    domains: Vec<PointSet>,
    injective: bool,
    dom_down: Vec<PointSet>,
    cod_down: Vec<PointSet>,
}

impl<'a> MapSearch<'a> {
    pub fn new(dom: &'a FinSpace, cod: &'a FinSpace) -> Self {
        MapSearch {
            dom,
            cod,
            domains: vec![cod.full(); dom.len()],
            injective: false,
            dom_down: (0..dom.len()).map(|x| dom.point_closure(x)).collect(),
            cod_down: (0..cod.len()).map(|y| cod.point_closure(y)).collect(),
        }
    }

    /// Only maps sending `x` into `allowed`.
    pub fn restrict(mut self, x: usize, allowed: PointSet) -> Self {
        self.domains[x] = self.domains[x].intersection(allowed);
        self
    }

    pub fn fix(self, x: usize, value: usize) -> Self {
        self.restrict(x, PointSet::singleton(value))
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Calls `visit` with each graph in lexicographic order until it breaks.
    pub fn for_each<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.injective && self.dom.len() > self.cod.len() {
            return ControlFlow::Continue(());
        }
        let mut graph = vec![0; self.dom.len()];
        self.extend(0, self.domains.clone(), &mut graph, &mut visit)
    }

    fn extend<F>(
        &self,
        x: usize,
        domains: Vec<PointSet>,
        graph: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if x == self.dom.len() {
            return visit(graph);
        }
        for a in domains[x] {
            if let Some(next) = self.propagate(x, a, &domains) {
                graph[x] = a;
                self.extend(x + 1, next, graph, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Domains after setting `x := a`, or `None` on a wipe-out.
    fn propagate(&self, x: usize, a: usize, domains: &[PointSet]) -> Option<Vec<PointSet>> {
        let mut next = domains.to_vec();
        next[x] = PointSet::singleton(a);
        let up = self.dom.nbhd(x);
        let down = self.dom_down[x];
        for y in up.union(down) {
            if y == x {
                continue;
            }
            let mut d = next[y];
            if up.contains(y) {
                d = d.intersection(self.cod.nbhd(a));
            }
            if down.contains(y) {
                d = d.intersection(self.cod_down[a]);
            }
            if d.is_empty() {
                return None;
            }
            next[y] = d;
        }
        if self.injective {
            for (y, d) in next.iter_mut().enumerate() {
                if y != x {
                    d.remove(a);
                    if d.is_empty() {
                        return None;
                    }
                }
            }
        }
        Some(next)
    }

    /// First graph in lexicographic order.
    pub fn first(&self) -> Option<Vec<usize>> {
        let mut found = None;
        let _ = self.for_each(|g| {
            found = Some(g.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn exists(&self) -> bool {
        self.first().is_some()
    }

    pub fn graphs(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let _ = self.for_each(|g| {
            out.push(g.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        let _ = self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

/// All continuous maps `dom -> cod` in lexicographic order of their graphs.
pub fn hom_set(dom: &Arc<FinSpace>, cod: &Arc<FinSpace>) -> Vec<ContMap> {
    MapSearch::new(dom, cod)
        .graphs()
        .into_iter()
        .map(|g| ContMap::raw(dom.clone(), cod.clone(), g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..m).map(move |y| {
                        let mut g = g.clone();
                        g.push(y);
                        g
                    })
                })
                .collect();
        }
        out
    }

    /// Preimage-of-every-open test, independent of the neighbourhood encoding.
    fn continuous_by_opens(x: &FinSpace, y: &FinSpace, g: &[usize]) -> bool {
        y.opens().into_iter().all(|o| {
            let pre: PointSet = (0..x.len()).filter(|&p| o.contains(g[p])).collect();
            x.opens().contains(&pre)
        })
    }

    #[test]
    fn hom_counts() {
        let s = Arc::new(FinSpace::sierpinski());
        let i2 = Arc::new(FinSpace::indiscrete(2));
        assert_eq!(hom_set(&i2, &s).len(), 2);
        assert_eq!(hom_set(&s, &s).len(), 3);
        assert_eq!(hom_set(&s, &i2).len(), 4);
        let three = Arc::new(FinSpace::discrete(3));
        assert_eq!(hom_set(&three, &i2).len(), 8);
    }

    #[test]
    fn swap_of_sierpinski_is_not_continuous() {
        let s = Arc::new(FinSpace::sierpinski());
        assert!(ContMap::new(s.clone(), s.clone(), vec![1, 0]).is_err());
        let maps: Vec<Vec<usize>> = hom_set(&s, &s).iter().map(|m| m.graph().to_vec()).collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn search_agrees_with_brute_force_enumeration() {
        let spaces = [
            FinSpace::sierpinski(),
            FinSpace::indiscrete(2),
            FinSpace::discrete(2),
            FinSpace::from_opens(&["a", "b", "c"], &[&[][..], &["a"], &["a", "b"], &["a", "b", "c"]])
                .unwrap(),
            FinSpace::from_opens(&["a", "b", "c"], &[&[][..], &["a"], &["b"], &["a", "b"], &["a", "b", "c"]])
                .unwrap(),
        ];
        for x in &spaces {
            for y in &spaces {
                let expected: Vec<Vec<usize>> = all_functions(x.len(), y.len())
                    .into_iter()
                    .filter(|g| continuous_by_opens(x, y, g))
                    .collect();
                assert_eq!(MapSearch::new(x, y).graphs(), expected, "{x:?} -> {y:?}");
                let injective: Vec<Vec<usize>> = expected
                    .iter()
                    .filter(|g| {
                        let set: PointSet = g.iter().copied().collect();
                        set.len() == g.len()
                    })
                    .cloned()
                    .collect();
                assert_eq!(MapSearch::new(x, y).injective().graphs(), injective);
            }
        }
    }

    #[test]
    fn embeddings_and_inverses() {
        let s = Arc::new(FinSpace::sierpinski());
        let d2 = Arc::new(FinSpace::discrete(2));
        let id = ContMap::identity(s.clone());
        assert!(id.is_homeomorphism());
        assert_eq!(id.inverse().unwrap(), id);
        let f = ContMap::new(d2.clone(), s.clone(), vec![0, 1]).unwrap();
        assert!(f.is_injective());
        assert!(!f.is_initial());
        let c = ContMap::constant(s.clone(), s.clone(), 1);
        assert_eq!(c.after(&id).unwrap(), c);
        assert!(ContMap::identity(d2).after(&c).is_err());
    }
}
