use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result, SpaceViolation};
use crate::points::{PointSet, MAX_POINTS};

/// A finite topological space.
///
/// The topology is stored through the minimal open neighbourhood `U_x` of each
/// point; the opens are exactly the unions of these sets. The family of opens
/// can be recovered with [`FinSpace::opens`], which is only sensible for small
/// spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSpace {
    labels: Vec<String>,
    nbhd: Vec<PointSet>,
}

impl FinSpace {
    /// Builds a space from labelled points and a family of open sets, checking
    /// the topology axioms. Opens may be listed in any order and with repeats.
    pub fn from_opens<L, O, S>(points: &[L], opens: &[O]) -> Result<Self>
    where
        L: AsRef<str>,
        O: AsRef<[S]>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
        if labels.len() > MAX_POINTS {
            return Err(SpaceViolation::TooManyPoints(labels.len()).into());
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(SpaceViolation::DuplicateLabel(l.clone()).into());
            }
        }
        let mut family = BTreeSet::new();
        for open in opens {
            let mut set = PointSet::EMPTY;
            for p in open.as_ref() {
                let p = p.as_ref();
                let i = *index
                    .get(p)
                    .ok_or_else(|| SpaceViolation::UnknownLabel(p.to_owned()))?;
                set.insert(i);
            }
            family.insert(set);
        }
        let n = labels.len();
        let full = PointSet::full(n);
        if n == 0 {
            family.insert(PointSet::EMPTY);
        }
        if !family.contains(&PointSet::EMPTY) {
            return Err(SpaceViolation::MissingEmpty.into());
        }
        if !family.contains(&full) {
            return Err(SpaceViolation::MissingFull.into());
        }
        let family: Vec<PointSet> = family.into_iter().collect();
        let names = |s: PointSet| s.iter().map(|i| labels[i].clone()).collect::<Vec<_>>();
        for (i, &a) in family.iter().enumerate() {
            for &b in &family[i + 1..] {
                if family.binary_search(&a.union(b)).is_err() {
                    return Err(SpaceViolation::UnionNotOpen(names(a), names(b)).into());
                }
                if family.binary_search(&a.intersection(b)).is_err() {
                    return Err(SpaceViolation::IntersectionNotOpen(names(a), names(b)).into());
                }
            }
        }
        let nbhd = (0..n)
            .map(|x| {
                family
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(full, |acc, &o| acc.intersection(o))
            })
            .collect();
        Ok(FinSpace { labels, nbhd })
    }

    /// Builds a space from minimal neighbourhoods. Each `nbhd[x]` must contain
    /// `x` and be closed upward: `y ∈ nbhd[x]` implies `nbhd[y] ⊆ nbhd[x]`.
    pub fn from_neighbourhoods(labels: Vec<String>, nbhd: Vec<PointSet>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(SpaceViolation::TooManyPoints(n).into());
        }
        if nbhd.len() != n {
            return Err(Error::input(format!(
                "{} neighbourhoods for {n} points",
                nbhd.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(SpaceViolation::DuplicateLabel(l.clone()).into());
            }
        }
        let full = PointSet::full(n);
        for (x, &u) in nbhd.iter().enumerate() {
            if !u.contains(x) || !u.is_subset(full) {
                return Err(Error::input(format!("neighbourhood of point {x} is malformed")));
            }
            if u.iter().any(|y| !nbhd[y].is_subset(u)) {
                return Err(Error::input(format!(
                    "neighbourhood of point {x} is not transitive"
                )));
            }
        }
        Ok(FinSpace { labels, nbhd })
    }

    /// Unchecked constructor for internal constructions whose output is a
    /// topology by construction.
    pub(crate) fn raw(labels: Vec<String>, nbhd: Vec<PointSet>) -> Self {
        debug_assert_eq!(labels.len(), nbhd.len());
        debug_assert!(nbhd
            .iter()
            .enumerate()
            .all(|(x, u)| u.contains(x) && u.iter().all(|y| nbhd[y].is_subset(*u))));
        FinSpace { labels, nbhd }
    }

    /// Space on points labelled `0..n` with the given neighbourhoods.
    pub(crate) fn numbered(nbhd: Vec<PointSet>) -> Self {
        let labels = (0..nbhd.len()).map(|i| i.to_string()).collect();
        FinSpace::raw(labels, nbhd)
    }

    pub fn empty() -> Self {
        FinSpace::raw(Vec::new(), Vec::new())
    }

    pub fn point() -> Self {
        FinSpace::numbered(vec![PointSet::singleton(0)])
    }

    /// The connected doublet: points `0, 1` with `{1}` open.
    pub fn sierpinski() -> Self {
        FinSpace::numbered(vec![PointSet::full(2), PointSet::singleton(1)])
    }

    pub fn discrete(n: usize) -> Self {
        FinSpace::numbered((0..n).map(PointSet::singleton).collect())
    }

    pub fn indiscrete(n: usize) -> Self {
        FinSpace::numbered(vec![PointSet::full(n); n])
    }

    /// Same topology with new point labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        FinSpace::from_neighbourhoods(labels, self.nbhd.clone())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn full(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Point set named by a list of labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::input(format!("unknown point {:?}", l.as_ref())))
            })
            .collect()
    }

    pub fn names(&self, set: PointSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }

    /// Smallest open set containing `x`.
    pub fn nbhd(&self, x: usize) -> PointSet {
        self.nbhd[x]
    }

    pub fn neighbourhoods(&self) -> &[PointSet] {
        &self.nbhd
    }

    /// Closure of `{x}`: the points whose every neighbourhood meets `x`.
    pub fn point_closure(&self, x: usize) -> PointSet {
        (0..self.len()).filter(|&y| self.nbhd[y].contains(x)).collect()
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        set.is_subset(self.full()) && set.iter().all(|x| self.nbhd[x].is_subset(set))
    }

    pub fn is_closed(&self, set: PointSet) -> bool {
        self.is_open(self.full().difference(set))
    }

    /// Smallest closed superset.
    pub fn closure(&self, set: PointSet) -> PointSet {
        (0..self.len())
            .filter(|&y| !self.nbhd[y].intersection(set).is_empty())
            .collect()
    }

    /// Smallest open superset.
    pub fn open_hull(&self, set: PointSet) -> PointSet {
        set.iter().fold(set, |acc, x| acc.union(self.nbhd[x]))
    }

    /// All open sets, sorted by cardinality and then by mask.
    pub fn opens(&self) -> Vec<PointSet> {
        let mut family: BTreeSet<PointSet> = BTreeSet::from([PointSet::EMPTY]);
        for &u in &self.nbhd {
            let grown: Vec<PointSet> = family.iter().map(|o| o.union(u)).collect();
            family.extend(grown);
        }
        let mut opens: Vec<PointSet> = family.into_iter().collect();
        opens.sort_by_key(|o| (o.len(), *o));
        opens
    }

    /// `x` and `y` lie in exactly the same open sets.
    pub fn indistinguishable(&self, x: usize, y: usize) -> bool {
        self.nbhd[x] == self.nbhd[y]
    }

    pub fn is_t0(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.nbhd.iter().all(|u| seen.insert(*u))
    }

    /// Points are closed. At finite size this coincides with discreteness.
    pub fn is_t1(&self) -> bool {
        (0..self.len()).all(|x| self.point_closure(x) == PointSet::singleton(x))
    }

    pub fn is_discrete(&self) -> bool {
        self.nbhd
            .iter()
            .enumerate()
            .all(|(x, &u)| u == PointSet::singleton(x))
    }

    pub fn is_indiscrete(&self) -> bool {
        self.nbhd.iter().all(|&u| u == self.full())
    }

    /// Connected component of each point, as an index into the component list.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(x) = stack.pop() {
                let adjacent = self.nbhd[x].union(self.point_closure(x));
                for y in adjacent {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub(crate) fn display_set(&self, set: PointSet) -> String {
        format!("{{{}}}", self.names(set).join(","))
    }
}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSpace[{}]", self.labels.join(","))?;
        if self.len() <= 12 {
            let opens: Vec<String> = self.opens().iter().map(|o| self.display_set(*o)).collect();
            write!(f, "({})", opens.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
