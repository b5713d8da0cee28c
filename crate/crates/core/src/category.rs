//! Finite categories with explicit hom tables, and exhaustive checkers for
//! universal properties.
//!
//! Everything here is deliberately naive: hom-sets are materialized and every
//! universal property is checked by quantifying over all test objects and all
//! candidate mediating morphisms. It serves as an oracle for the direct
//! constructions in [`crate::fintop`].

use serde::Serialize;

use crate::error::{Error, Result};

pub type ObjectId = usize;
pub type MorphismId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub dom: ObjectId,
    pub cod: ObjectId,
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphismId>,
    /// `homs[a * objects + b]`: morphisms `a -> b`, ascending.
    homs: Vec<Vec<MorphismId>>,
    /// Position of each morphism within the list of morphisms sharing its domain.
    out_position: Vec<usize>,
    /// `table[f][out_position[g]] = g ∘ f` for `g` out of `cod f`.
    table: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismClass {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniversalKind {
    Equalizer,
    CokernelPair,
    Pullback,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Failure {
    /// The candidate cone does not commute.
    Commutation,
    /// A competing cone admits no mediating morphism.
    Existence,
    /// A competing cone admits more than one mediating morphism.
    Uniqueness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub failure: Failure,
    /// Test object of the competing cone (absent for commutation failures).
    pub object: Option<ObjectId>,
    /// Competing cone legs, followed by the mediating candidates found.
    pub morphisms: Vec<MorphismId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalCertificate {
    pub kind: UniversalKind,
    pub verified: bool,
    pub counterexample: Option<Counterexample>,
}

impl UniversalCertificate {
    fn ok(kind: UniversalKind) -> Self {
        UniversalCertificate {
            kind,
            verified: true,
            counterexample: None,
        }
    }

    fn fail(kind: UniversalKind, failure: Failure, object: Option<ObjectId>, morphisms: Vec<MorphismId>) -> Self {
        UniversalCertificate {
            kind,
            verified: false,
            counterexample: Some(Counterexample {
                failure,
                object,
                morphisms,
            }),
        }
    }
}

impl FinCategory {
    /// Builds a category, checking that `compose(g, f)` is defined exactly on
    /// composable pairs with the right ends, and that the identity laws hold.
    pub fn new<F>(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorphismId>,
        mut compose: F,
    ) -> Result<Self>
    where
        F: FnMut(MorphismId, MorphismId) -> Option<MorphismId>,
    {
        let n = objects.len();
        if identities.len() != n {
            return Err(Error::input("one identity per object is required"));
        }
        for m in &morphisms {
            if m.dom >= n || m.cod >= n {
                return Err(Error::input("morphism endpoint is not an object"));
            }
        }
        for (a, &id) in identities.iter().enumerate() {
            match morphisms.get(id) {
                Some(m) if m.dom == a && m.cod == a => {}
                _ => return Err(Error::input(format!("identity of object {a} is malformed"))),
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        let mut outs = vec![Vec::new(); n];
        let mut out_position = vec![0; morphisms.len()];
        for (id, m) in morphisms.iter().enumerate() {
            homs[m.dom * n + m.cod].push(id);
            out_position[id] = outs[m.dom].len();
            outs[m.dom].push(id);
        }
        let mut table = Vec::with_capacity(morphisms.len());
        for (f, mf) in morphisms.iter().enumerate() {
            let mut row = Vec::with_capacity(outs[mf.cod].len());
            for &g in &outs[mf.cod] {
                let gf = compose(g, f).ok_or_else(|| {
                    Error::input(format!("composite of {g} after {f} is missing"))
                })?;
                match morphisms.get(gf) {
                    Some(m) if m.dom == mf.dom && m.cod == morphisms[g].cod => {}
                    _ => {
                        return Err(Error::input(format!(
                            "composite of {g} after {f} has the wrong ends"
                        )))
                    }
                }
                row.push(gf as u32);
            }
            table.push(row);
        }
        let cat = FinCategory {
            objects,
            morphisms,
            identities,
            homs,
            out_position,
            table,
        };
        for f in 0..cat.morphisms.len() {
            let m = &cat.morphisms[f];
            if cat.compose(cat.identities[m.cod], f) != f || cat.compose(f, cat.identities[m.dom]) != f {
                return Err(Error::input(format!("identity law fails at morphism {f}")));
            }
        }
        Ok(cat)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, f: MorphismId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn identity(&self, a: ObjectId) -> MorphismId {
        self.identities[a]
    }

    pub fn hom(&self, a: ObjectId, b: ObjectId) -> &[MorphismId] {
        &self.homs[a * self.objects.len() + b]
    }

    /// `g ∘ f`; panics unless composable.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> MorphismId {
        assert_eq!(self.morphisms[f].cod, self.morphisms[g].dom, "not composable");
        let gf = self.table[f][self.out_position[g]];
        debug_assert_ne!(gf, NONE);
        gf as MorphismId
    }

    pub fn try_compose(&self, g: MorphismId, f: MorphismId) -> Result<MorphismId> {
        self.check(f)?;
        self.check(g)?;
        if self.morphisms[f].cod != self.morphisms[g].dom {
            return Err(Error::input(format!("{g} after {f} is not composable")));
        }
        Ok(self.compose(g, f))
    }

    fn check(&self, f: MorphismId) -> Result<()> {
        if f < self.morphisms.len() {
            Ok(())
        } else {
            Err(Error::input(format!("unknown morphism {f}")))
        }
    }

    /// First composable triple violating associativity, if any.
    pub fn associativity_violation(&self) -> Option<(MorphismId, MorphismId, MorphismId)> {
        for f in 0..self.morphisms.len() {
            let b = self.morphisms[f].cod;
            for c in 0..self.objects.len() {
                for &g in self.hom(b, c) {
                    let gf = self.compose(g, f);
                    for d in 0..self.objects.len() {
                        for &h in self.hom(c, d) {
                            if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                                return Some((f, g, h));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn morphism_class(&self, f: MorphismId) -> Result<MorphismClass> {
        self.check(f)?;
        let Morphism { dom, cod } = self.morphisms[f].clone();
        let n = self.objects.len();
        let mono = (0..n).all(|w| {
            let hs = self.hom(w, dom);
            hs.iter().enumerate().all(|(i, &a)| {
                hs[i + 1..]
                    .iter()
                    .all(|&b| self.compose(f, a) != self.compose(f, b))
            })
        });
        let epi = (0..n).all(|w| {
            let hs = self.hom(cod, w);
            hs.iter().enumerate().all(|(i, &a)| {
                hs[i + 1..]
                    .iter()
                    .all(|&b| self.compose(a, f) != self.compose(b, f))
            })
        });
        let iso = self.hom(cod, dom).iter().any(|&g| {
            self.compose(g, f) == self.identities[dom] && self.compose(f, g) == self.identities[cod]
        });
        Ok(MorphismClass { mono, epi, iso })
    }

    fn parallel(&self, f: MorphismId, g: MorphismId) -> Result<()> {
        self.check(f)?;
        self.check(g)?;
        if self.morphisms[f] != self.morphisms[g] {
            return Err(Error::input(format!("morphisms {f} and {g} are not parallel")));
        }
        Ok(())
    }

    /// Is `e` an equalizer of the parallel pair `(f, g)`?
    pub fn verify_equalizer(&self, e: MorphismId, f: MorphismId, g: MorphismId) -> Result<UniversalCertificate> {
        use UniversalKind::Equalizer as K;
        self.parallel(f, g)?;
        self.check(e)?;
        let x = self.morphisms[f].dom;
        if self.morphisms[e].cod != x {
            return Err(Error::input("equalizer candidate does not land in the domain of the pair"));
        }
        if self.compose(f, e) != self.compose(g, e) {
            return Ok(UniversalCertificate::fail(K, Failure::Commutation, None, vec![e]));
        }
        let source = self.morphisms[e].dom;
        for w in 0..self.objects.len() {
            for &h in self.hom(w, x) {
                if self.compose(f, h) != self.compose(g, h) {
                    continue;
                }
                let mediating: Vec<MorphismId> = self
                    .hom(w, source)
                    .iter()
                    .copied()
                    .filter(|&u| self.compose(e, u) == h)
                    .take(2)
                    .collect();
                match mediating.len() {
                    0 => return Ok(UniversalCertificate::fail(K, Failure::Existence, Some(w), vec![h])),
                    1 => {}
                    _ => {
                        let mut ms = vec![h];
                        ms.extend(mediating);
                        return Ok(UniversalCertificate::fail(K, Failure::Uniqueness, Some(w), ms));
                    }
                }
            }
        }
        Ok(UniversalCertificate::ok(K))
    }

    /// Is `(i, j)` a cokernel pair of `m`?
    pub fn verify_cokernel_pair(&self, m: MorphismId, i: MorphismId, j: MorphismId) -> Result<UniversalCertificate> {
        use UniversalKind::CokernelPair as K;
        self.parallel(i, j)?;
        self.check(m)?;
        let x = self.morphisms[m].cod;
        if self.morphisms[i].dom != x {
            return Err(Error::input("cokernel pair legs must start at the codomain of m"));
        }
        if self.compose(i, m) != self.compose(j, m) {
            return Ok(UniversalCertificate::fail(K, Failure::Commutation, None, vec![i, j]));
        }
        let apex = self.morphisms[i].cod;
        for w in 0..self.objects.len() {
            let legs = self.hom(x, w);
            for &a in legs {
                let am = self.compose(a, m);
                for &b in legs {
                    if self.compose(b, m) != am {
                        continue;
                    }
                    let mediating: Vec<MorphismId> = self
                        .hom(apex, w)
                        .iter()
                        .copied()
                        .filter(|&u| self.compose(u, i) == a && self.compose(u, j) == b)
                        .take(2)
                        .collect();
                    if let Some(c) = mediation_failure(K, w, vec![a, b], mediating) {
                        return Ok(c);
                    }
                }
            }
        }
        Ok(UniversalCertificate::ok(K))
    }

    /// Is the span `(p, q)` a product of the codomains of `p` and `q`?
    pub fn verify_product(&self, p: MorphismId, q: MorphismId) -> Result<UniversalCertificate> {
        use UniversalKind::Product as K;
        self.check(p)?;
        self.check(q)?;
        let apex = self.morphisms[p].dom;
        if self.morphisms[q].dom != apex {
            return Err(Error::input("product projections need a common domain"));
        }
        let (x, y) = (self.morphisms[p].cod, self.morphisms[q].cod);
        for w in 0..self.objects.len() {
            for &a in self.hom(w, x) {
                for &b in self.hom(w, y) {
                    let mediating: Vec<MorphismId> = self
                        .hom(w, apex)
                        .iter()
                        .copied()
                        .filter(|&u| self.compose(p, u) == a && self.compose(q, u) == b)
                        .take(2)
                        .collect();
                    if let Some(c) = mediation_failure(K, w, vec![a, b], mediating) {
                        return Ok(c);
                    }
                }
            }
        }
        Ok(UniversalCertificate::ok(K))
    }

    /// Is `(p, q)` a pullback of the cospan `(f, g)`?
    pub fn verify_pullback(
        &self,
        f: MorphismId,
        g: MorphismId,
        p: MorphismId,
        q: MorphismId,
    ) -> Result<UniversalCertificate> {
        use UniversalKind::Pullback as K;
        for id in [f, g, p, q] {
            self.check(id)?;
        }
        let (mf, mg, mp, mq) = (&self.morphisms[f], &self.morphisms[g], &self.morphisms[p], &self.morphisms[q]);
        if mf.cod != mg.cod || mp.dom != mq.dom || mp.cod != mf.dom || mq.cod != mg.dom {
            return Err(Error::input("pullback square does not fit the cospan"));
        }
        if self.compose(f, p) != self.compose(g, q) {
            return Ok(UniversalCertificate::fail(K, Failure::Commutation, None, vec![p, q]));
        }
        let apex = mp.dom;
        for w in 0..self.objects.len() {
            for &a in self.hom(w, mf.dom) {
                let fa = self.compose(f, a);
                for &b in self.hom(w, mg.dom) {
                    if self.compose(g, b) != fa {
                        continue;
                    }
                    let mediating: Vec<MorphismId> = self
                        .hom(w, apex)
                        .iter()
                        .copied()
                        .filter(|&u| self.compose(p, u) == a && self.compose(q, u) == b)
                        .take(2)
                        .collect();
                    if let Some(c) = mediation_failure(K, w, vec![a, b], mediating) {
                        return Ok(c);
                    }
                }
            }
        }
        Ok(UniversalCertificate::ok(K))
    }

    /// First morphism, in id order, that is an equalizer of `(f, g)`.
    pub fn search_equalizer(&self, f: MorphismId, g: MorphismId) -> Result<Option<MorphismId>> {
        self.parallel(f, g)?;
        let x = self.morphisms[f].dom;
        for w in 0..self.objects.len() {
            for &e in self.hom(w, x) {
                if self.verify_equalizer(e, f, g)?.verified {
                    return Ok(Some(e));
                }
            }
        }
        Ok(None)
    }
}

fn mediation_failure(
    kind: UniversalKind,
    w: ObjectId,
    legs: Vec<MorphismId>,
    mediating: Vec<MorphismId>,
) -> Option<UniversalCertificate> {
    match mediating.len() {
        0 => Some(UniversalCertificate::fail(kind, Failure::Existence, Some(w), legs)),
        1 => None,
        _ => {
            let mut ms = legs;
            ms.extend(mediating);
            Some(UniversalCertificate::fail(kind, Failure::Uniqueness, Some(w), ms))
        }
    }
}
