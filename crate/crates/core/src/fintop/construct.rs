//! Direct constructions of limits, colimits and factorizations in finite Top.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fintop::map::{same_space, ContMap};
use crate::fintop::space::FinSpace;
use crate::points::{PointSet, MAX_POINTS};

/// An embedded subspace, identified by its carrier.
///
/// Two subobjects of the same ambient space are isomorphic exactly when their
/// carriers coincide, so equality here is subobject isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subobject {
    ambient: Arc<FinSpace>,
    carrier: PointSet,
}

impl Subobject {
    pub fn new(ambient: impl Into<Arc<FinSpace>>, carrier: PointSet) -> Result<Self> {
        let ambient = ambient.into();
        if !carrier.is_subset(ambient.full()) {
            return Err(Error::input("carrier is not a subset of the ambient points"));
        }
        Ok(Subobject { ambient, carrier })
    }

    pub fn from_labels<S: AsRef<str>>(ambient: impl Into<Arc<FinSpace>>, labels: &[S]) -> Result<Self> {
        let ambient = ambient.into();
        let carrier = ambient.subset(labels)?;
        Ok(Subobject { ambient, carrier })
    }

    pub fn full(ambient: impl Into<Arc<FinSpace>>) -> Self {
        let ambient = ambient.into();
        let carrier = ambient.full();
        Subobject { ambient, carrier }
    }

    pub fn empty(ambient: impl Into<Arc<FinSpace>>) -> Self {
        Subobject {
            ambient: ambient.into(),
            carrier: PointSet::EMPTY,
        }
    }

    pub fn ambient(&self) -> &FinSpace {
        &self.ambient
    }

    pub fn ambient_arc(&self) -> &Arc<FinSpace> {
        &self.ambient
    }

    pub fn carrier(&self) -> PointSet {
        self.carrier
    }

    pub fn is_full(&self) -> bool {
        self.carrier == self.ambient.full()
    }

    /// `self ≤ other` in the preorder of subobjects.
    pub fn le(&self, other: &Subobject) -> bool {
        same_space(&self.ambient, &other.ambient) && self.carrier.is_subset(other.carrier)
    }

    pub fn labels(&self) -> Vec<String> {
        self.ambient.names(self.carrier)
    }

    /// The carrier with the subspace topology.
    pub fn space(&self) -> FinSpace {
        let points: Vec<usize> = self.carrier.iter().collect();
        let labels = points.iter().map(|&x| self.ambient.label(x).to_owned()).collect();
        let nbhd = points
            .iter()
            .map(|&x| compress(self.ambient.nbhd(x), &points))
            .collect();
        FinSpace::raw(labels, nbhd)
    }

    /// The embedding of [`Subobject::space`] into the ambient space.
    pub fn inclusion(&self) -> ContMap {
        ContMap::raw(
            Arc::new(self.space()),
            self.ambient.clone(),
            self.carrier.iter().collect(),
        )
    }

    /// Corestriction of a map whose image lies in the carrier.
    pub fn factor(&self, map: &ContMap) -> Result<ContMap> {
        if !map.full_image().is_subset(self.carrier) {
            return Err(Error::input("map does not factor through the subobject"));
        }
        let points: Vec<usize> = self.carrier.iter().collect();
        let graph = map
            .graph()
            .iter()
            .map(|y| points.iter().position(|p| p == y).unwrap())
            .collect();
        Ok(ContMap::raw(map.dom_arc().clone(), Arc::new(self.space()), graph))
    }
}

/// Re-index `set` onto the positions of `points` (which must be ascending).
pub(crate) fn compress(set: PointSet, points: &[usize]) -> PointSet {
    points
        .iter()
        .enumerate()
        .filter(|(_, &p)| set.contains(p))
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug)]
pub struct Product {
    pub space: Arc<FinSpace>,
    pub left: ContMap,
    pub right: ContMap,
}

impl Product {
    /// Index of the pair `(x, y)`.
    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.right.cod().len() + y
    }

    /// The mediating map `⟨a, b⟩` for maps out of a common domain.
    pub fn pairing(&self, a: &ContMap, b: &ContMap) -> Result<ContMap> {
        if !same_space(a.dom_arc(), b.dom_arc())
            || !same_space(a.cod_arc(), self.left.cod_arc())
            || !same_space(b.cod_arc(), self.right.cod_arc())
        {
            return Err(Error::input("pairing needs maps into the two factors"));
        }
        let graph = (0..a.dom().len())
            .map(|w| self.pair(a.apply(w), b.apply(w)))
            .collect();
        Ok(ContMap::raw(a.dom_arc().clone(), self.space.clone(), graph))
    }
}

/// The product space with its projections. Point `(x, y)` has index `x·|Y| + y`.
pub fn product(x: &Arc<FinSpace>, y: &Arc<FinSpace>) -> Result<Product> {
    let (n, m) = (x.len(), y.len());
    if n * m > MAX_POINTS {
        return Err(Error::budget(format!(
            "product of {n} and {m} points exceeds {MAX_POINTS}"
        )));
    }
    let mut labels = Vec::with_capacity(n * m);
    let mut nbhd = Vec::with_capacity(n * m);
    for a in 0..n {
        for b in 0..m {
            labels.push(format!("({},{})", x.label(a), y.label(b)));
            let mut u = PointSet::EMPTY;
            for a2 in x.nbhd(a) {
                for b2 in y.nbhd(b) {
                    u.insert(a2 * m + b2);
                }
            }
            nbhd.push(u);
        }
    }
    let space = Arc::new(FinSpace::raw(labels, nbhd));
    let left = ContMap::raw(space.clone(), x.clone(), (0..n * m).map(|p| p / m.max(1)).collect());
    let right = ContMap::raw(space.clone(), y.clone(), (0..n * m).map(|p| p % m.max(1)).collect());
    Ok(Product { space, left, right })
}

/// Agreement set of a parallel pair, with the subspace topology.
pub fn equalizer(h: &ContMap, k: &ContMap) -> Result<Subobject> {
    if !h.parallel_to(k) {
        return Err(Error::input("equalizer needs a parallel pair"));
    }
    let carrier = (0..h.dom().len()).filter(|&x| h.apply(x) == k.apply(x)).collect();
    Ok(Subobject {
        ambient: h.dom_arc().clone(),
        carrier,
    })
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub space: Arc<FinSpace>,
    pub left: ContMap,
    pub right: ContMap,
}

/// Pullback of a cospan `f: X -> Z <- Y: g`, as a subspace of `X × Y`.
pub fn pullback(f: &ContMap, g: &ContMap) -> Result<Pullback> {
    if !same_space(f.cod_arc(), g.cod_arc()) {
        return Err(Error::input("pullback needs maps with a common codomain"));
    }
    let prod = product(f.dom_arc(), g.dom_arc())?;
    let sub = equalizer(&prod.left.then(f)?, &prod.right.then(g)?)?;
    let incl = sub.inclusion();
    Ok(Pullback {
        space: incl.dom_arc().clone(),
        left: incl.then(&prod.left)?,
        right: incl.then(&prod.right)?,
    })
}

/// Quotient by a class assignment, with the final topology.
///
/// Classes are renumbered by first appearance; `label` names each class from
/// its member list.
pub(crate) fn quotient<F>(space: &Arc<FinSpace>, class_of: &[usize], mut label: F) -> ContMap
where
    F: FnMut(&[usize]) -> String,
{
    let mut renumber = std::collections::HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let graph: Vec<usize> = class_of
        .iter()
        .enumerate()
        .map(|(x, c)| {
            let id = *renumber.entry(*c).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[id].push(x);
            id
        })
        .collect();
    let k = members.len();
    let preimage = |v: PointSet| -> PointSet {
        v.iter()
            .flat_map(|c| members[c].iter().copied())
            .collect()
    };
    let nbhd = (0..k)
        .map(|c| {
            let mut v = PointSet::singleton(c);
            loop {
                let grown: PointSet = space
                    .open_hull(preimage(v))
                    .iter()
                    .map(|x| graph[x])
                    .collect();
                if grown == v {
                    break v;
                }
                v = grown;
            }
        })
        .collect();
    let labels = members.iter().map(|m| label(m)).collect();
    let target = Arc::new(FinSpace::raw(labels, nbhd));
    ContMap::raw(space.clone(), target, graph)
}

/// The pushout of a subobject along itself, with its two injections.
#[derive(Clone, Debug, Serialize)]
pub struct CokernelPair {
    pub source: Subobject,
    pub apex: Arc<FinSpace>,
    pub left: ContMap,
    pub right: ContMap,
}

/// Two copies of the ambient space glued along the carrier.
///
/// Apex points: the ambient points in order (carrier points keep their label,
/// the others get a `.1` suffix), then the second copies of the non-carrier
/// points with a `.2` suffix.
pub fn cokernel_pair(m: &Subobject) -> Result<CokernelPair> {
    let x = m.ambient_arc();
    let n = x.len();
    if 2 * n - m.carrier.len() > MAX_POINTS {
        return Err(Error::budget("cokernel pair apex exceeds 64 points"));
    }
    let labels: Vec<String> = (0..2 * n)
        .map(|p| format!("{}#{}", x.label(p % n.max(1)), p / n.max(1) + 1))
        .collect();
    let nbhd: Vec<PointSet> = (0..2 * n)
        .map(|p| {
            let u = x.nbhd(p % n);
            if p < n {
                u
            } else {
                PointSet::from_bits(u.bits() << n)
            }
        })
        .collect();
    let sum = Arc::new(FinSpace::raw(labels, nbhd));
    let class_of: Vec<usize> = (0..2 * n)
        .map(|p| if p >= n && m.carrier.contains(p - n) { p - n } else { p })
        .collect();
    let glue = quotient(&sum, &class_of, |members| {
        let p = members[0];
        let base = x.label(p % n);
        if members.len() > 1 || m.carrier.contains(p % n) {
            base.to_owned()
        } else {
            format!("{base}.{}", p / n + 1)
        }
    });
    let apex = glue.cod_arc().clone();
    let left = ContMap::raw(x.clone(), apex.clone(), (0..n).map(|p| glue.apply(p)).collect());
    let right = ContMap::raw(x.clone(), apex.clone(), (n..2 * n).map(|p| glue.apply(p)).collect());
    Ok(CokernelPair {
        source: m.clone(),
        apex,
        left,
        right,
    })
}

/// (surjection, embedding) factorization `f = m ∘ e`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub surjection: ContMap,
    pub image: Subobject,
}

pub fn factorize(f: &ContMap) -> Factorization {
    let image = Subobject {
        ambient: f.cod_arc().clone(),
        carrier: f.full_image(),
    };
    let surjection = image.factor(f).expect("image contains the image");
    Factorization { surjection, image }
}

/// Quotient identifying points that lie in exactly the same opens.
pub fn t0_reflection(x: &Arc<FinSpace>) -> ContMap {
    let class_of: Vec<usize> = (0..x.len())
        .map(|p| (0..=p).find(|&q| x.indistinguishable(p, q)).unwrap())
        .collect();
    quotient(x, &class_of, |members| x.label(members[0]).to_owned())
}
