use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fintop::{canonicalize, catalog_up_to, quotient, t0_reflection, ContMap, FinSpace};
use crate::subcat::reflect::{seh_reflection, Reflection};
use crate::subcat::sweep::RegularSweep;

/// Default codomain bound for class-quantified checks.
pub const DEFAULT_BOUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    All,
    T0,
    T1,
    Discrete,
    Indiscrete,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::All => "all",
            Builtin::T0 => "t0",
            Builtin::T1 => "t1",
            Builtin::Discrete => "discrete",
            Builtin::Indiscrete => "indiscrete",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "all" => Builtin::All,
            "t0" => Builtin::T0,
            "t1" => Builtin::T1,
            "discrete" => Builtin::Discrete,
            "indiscrete" => Builtin::Indiscrete,
            _ => return None,
        })
    }
}

/// A reflection stored for the canonical representative of a space:
/// `map[i]` is the image of representative point `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReflection {
    pub target: Arc<FinSpace>,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum SubcatKind {
    Builtin(Builtin),
    /// Strongly epireflective hull of a list of generators.
    Seh { generators: Vec<Arc<FinSpace>> },
    /// Membership listed by canonical form.
    PredicateTable { members: BTreeSet<String> },
    /// Membership plus a (possibly weak) reflection per canonical form.
    ReflectorTable {
        members: BTreeSet<String>,
        reflections: BTreeMap<String, TableReflection>,
        weak: bool,
    },
}

type MemberCache = HashMap<usize, Arc<Vec<Arc<FinSpace>>>>;
type SweepCache = HashMap<(FinSpace, usize), Arc<RegularSweep>>;

/// A full, isomorphism-closed subcategory of finite Top given by a decidable
/// membership test.
#[derive(Clone)]
pub struct SubcatSpec {
    pub name: String,
    pub kind: SubcatKind,
    pub bound: usize,
    members_memo: Arc<Mutex<MemberCache>>,
    sweep_memo: Arc<Mutex<SweepCache>>,
}

impl fmt::Debug for SubcatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubcatSpec")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("bound", &self.bound)
            .finish()
    }
}

impl SubcatSpec {
    pub fn new(name: impl Into<String>, kind: SubcatKind) -> Self {
        SubcatSpec {
            name: name.into(),
            kind,
            bound: DEFAULT_BOUND,
            members_memo: Default::default(),
            sweep_memo: Default::default(),
        }
    }

    pub fn builtin(b: Builtin) -> Self {
        SubcatSpec::new(b.name(), SubcatKind::Builtin(b))
    }

    pub fn all() -> Self {
        SubcatSpec::builtin(Builtin::All)
    }

    pub fn t0() -> Self {
        SubcatSpec::builtin(Builtin::T0)
    }

    pub fn t1() -> Self {
        SubcatSpec::builtin(Builtin::T1)
    }

    pub fn discrete() -> Self {
        SubcatSpec::builtin(Builtin::Discrete)
    }

    pub fn indiscrete() -> Self {
        SubcatSpec::builtin(Builtin::Indiscrete)
    }

    pub fn seh(name: impl Into<String>, generators: Vec<Arc<FinSpace>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::input("a hull needs at least one generator"));
        }
        Ok(SubcatSpec::new(name, SubcatKind::Seh { generators }))
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    pub fn is_member(&self, x: &FinSpace) -> bool {
        match &self.kind {
            SubcatKind::Builtin(b) => match b {
                Builtin::All => true,
                Builtin::T0 => x.is_t0(),
                Builtin::T1 => x.is_t1(),
                Builtin::Discrete => x.is_discrete(),
                Builtin::Indiscrete => x.is_indiscrete(),
            },
            SubcatKind::Seh { generators } => {
                let x = Arc::new(x.clone());
                seh_reflection(&x, generators).morphism.is_homeomorphism()
            }
            SubcatKind::PredicateTable { members } | SubcatKind::ReflectorTable { members, .. } => {
                members.contains(&canonicalize(x).label())
            }
        }
    }

    pub fn has_reflector(&self) -> bool {
        !matches!(self.kind, SubcatKind::PredicateTable { .. })
    }

    /// Closed under subspaces (embeddings into members land in members).
    pub fn subspace_closed(&self) -> bool {
        matches!(self.kind, SubcatKind::Builtin(_) | SubcatKind::Seh { .. })
    }

    /// Strongly epireflective: the builtins and generated hulls.
    pub fn strongly_epireflective(&self) -> bool {
        self.subspace_closed()
    }

    /// Every member is T0, so member enumeration may skip non-T0 spaces.
    pub(crate) fn implies_t0(&self) -> bool {
        match &self.kind {
            SubcatKind::Builtin(b) => matches!(b, Builtin::T0 | Builtin::T1 | Builtin::Discrete),
            SubcatKind::Seh { generators } => generators.iter().all(|g| g.is_t0()),
            _ => false,
        }
    }

    /// A-reflection of `x`.
    pub fn reflect(&self, x: &Arc<FinSpace>) -> Result<Reflection> {
        let (morphism, weak) = match &self.kind {
            SubcatKind::Builtin(b) => (builtin_reflection(*b, x), false),
            SubcatKind::Seh { generators } => return Ok(seh_reflection(x, generators)),
            SubcatKind::PredicateTable { .. } => {
                return Err(Error::input(format!("subcategory {:?} has no reflector", self.name)))
            }
            SubcatKind::ReflectorTable { reflections, weak, .. } => {
                let canon = canonicalize(x);
                let entry = reflections.get(&canon.label()).ok_or_else(|| {
                    Error::input(format!(
                        "reflector table {:?} has no entry for {}",
                        self.name,
                        canon.label()
                    ))
                })?;
                let mut graph = vec![0; x.len()];
                for (i, &p) in canon.order.iter().enumerate() {
                    graph[p] = entry.map[i];
                }
                (ContMap::new(x.clone(), entry.target.clone(), graph)?, *weak)
            }
        };
        Ok(Reflection { morphism, weak })
    }

    /// Members among the catalog spaces with at most `bound` points, smallest
    /// first, in canonical order. Memoized.
    pub fn members_up_to(&self, bound: usize) -> Arc<Vec<Arc<FinSpace>>> {
        let mut memo = self.members_memo.lock().unwrap();
        memo.entry(bound)
            .or_insert_with(|| {
                Arc::new(
                    catalog_up_to(bound, self.implies_t0())
                        .filter(|s| self.is_member(s))
                        .cloned()
                        .collect(),
                )
            })
            .clone()
    }

    pub(crate) fn sweep_memo(&self) -> &Mutex<SweepCache> {
        &self.sweep_memo
    }
}

fn builtin_reflection(b: Builtin, x: &Arc<FinSpace>) -> ContMap {
    match b {
        Builtin::All => ContMap::identity(x.clone()),
        Builtin::T0 => t0_reflection(x),
        Builtin::T1 | Builtin::Discrete => {
            let comps = x.components();
            quotient(x, &comps, |members| x.label(members[0]).to_owned())
        }
        Builtin::Indiscrete => {
            let target = Arc::new(FinSpace::indiscrete(x.len()).relabel(x.labels().to_vec()).unwrap());
            ContMap::new(x.clone(), target, (0..x.len()).collect()).unwrap()
        }
    }
}
