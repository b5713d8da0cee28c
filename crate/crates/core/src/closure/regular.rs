use serde::Serialize;

use crate::error::Result;
use crate::fintop::{cokernel_pair, equalizer, CokernelPair, Subobject};
use crate::points::PointSet;
use crate::subcat::{regular_sweep, verify_weak_reflection, Reflection, RegularWitness, SubcatKind, SubcatSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Bruteforce,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Bruteforce => "bruteforce",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum ClosureWitnesses {
    Formula {
        cokernel_pair: CokernelPair,
        reflection: Reflection,
    },
    /// The regular subobjects whose meet is the closure.
    Bruteforce { regular: Vec<Subobject> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureResult {
    pub input: Subobject,
    pub closure: Subobject,
    pub method: Method,
    pub exact: bool,
    /// Codomain bound of the equalizer sweep (brute force only).
    pub bound: Option<usize>,
    pub witnesses: ClosureWitnesses,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub bound: usize,
    pub exact: bool,
    pub witness: Option<RegularWitness>,
}

/// Whether `m` is the equalizer of a pair of maps into a member of `a`,
/// decided by sweeping all such pairs.
pub fn is_a_regular(m: &Subobject, a: &SubcatSpec) -> RegularityVerdict {
    let sweep = regular_sweep(m.ambient_arc(), a);
    let witness = sweep.witness(m.carrier()).cloned();
    RegularityVerdict {
        regular: witness.is_some(),
        bound: sweep.bound,
        exact: sweep.exact || witness.is_some(),
        witness,
    }
}

/// Regularity by the cokernel-pair formula: `m` is A-regular iff it is
/// A-closed.
pub fn is_a_regular_formula(m: &Subobject, a: &SubcatSpec) -> Result<bool> {
    Ok(closure_formula(m, a)?.closure.carrier() == m.carrier())
}

/// `c_A(m) = eq(r_Y ∘ i, r_Y ∘ j)` for the cokernel pair `(i, j)` of `m`.
pub fn closure_formula(m: &Subobject, a: &SubcatSpec) -> Result<ClosureResult> {
    let cp = cokernel_pair(m)?;
    let reflection = a.reflect(&cp.apex)?;
    let r = &reflection.morphism;
    let closure = equalizer(&cp.left.then(r)?, &cp.right.then(r)?)?;
    let exact = match a.kind {
        SubcatKind::ReflectorTable { .. } => verify_weak_reflection(&cp.apex, &reflection, a)?.verified,
        _ => true,
    };
    Ok(ClosureResult {
        input: m.clone(),
        closure,
        method: Method::Formula,
        exact,
        bound: None,
        witnesses: ClosureWitnesses::Formula { cokernel_pair: cp, reflection },
    })
}

/// Meet of all A-regular subobjects above `m`; the full subobject when there
/// are none.
pub fn closure_bruteforce(m: &Subobject, a: &SubcatSpec) -> ClosureResult {
    let sweep = regular_sweep(m.ambient_arc(), a);
    let above: Vec<PointSet> = sweep.carriers().filter(|c| m.carrier().is_subset(*c)).collect();
    let meet = above
        .iter()
        .fold(m.ambient().full(), |acc, c| acc.intersection(*c));
    let regular = above
        .iter()
        .map(|&c| Subobject::new(m.ambient_arc().clone(), c).unwrap())
        .collect();
    ClosureResult {
        input: m.clone(),
        closure: Subobject::new(m.ambient_arc().clone(), meet).unwrap(),
        method: Method::Bruteforce,
        exact: sweep.exact,
        bound: Some(sweep.bound),
        witnesses: ClosureWitnesses::Bruteforce { regular },
    }
}

/// Formula when `a` has a reflector, brute force otherwise.
pub fn closure(m: &Subobject, a: &SubcatSpec) -> Result<ClosureResult> {
    if a.has_reflector() {
        closure_formula(m, a)
    } else {
        Ok(closure_bruteforce(m, a))
    }
}
