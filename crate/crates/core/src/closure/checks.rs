use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::regular::{closure_bruteforce, closure_formula, is_a_regular_formula};
use crate::closure::table::{closure_operator_table, sorted_names, ClosureOperatorTable};
use crate::error::{Error, Result};
use crate::fintop::{canonical_form, hom_set, ContMap, FinSpace, Subobject};
use crate::points::{all_subsets, PointSet};
use crate::subcat::{canonical_alpha, diagonal, in_s_hull, is_cancellable, SubcatSpec};

/// First failure of a closure-operator axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "lowercase")]
pub enum AxiomViolation {
    Extension { space: String, subset: Vec<String>, closure: Vec<String> },
    Monotonicity { space: String, smaller: Vec<String>, larger: Vec<String> },
    Continuity { map: ContMap, dom: String, cod: String, subset: Vec<String> },
    Idempotency { space: String, subset: Vec<String>, closure: Vec<String>, reclosure: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub counterexample: Option<AxiomViolation>,
}

impl AxiomCheck {
    fn from(counterexample: Option<AxiomViolation>) -> Self {
        AxiomCheck { holds: counterexample.is_none(), counterexample }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub extension: AxiomCheck,
    pub monotonicity: AxiomCheck,
    pub continuity: AxiomCheck,
    pub idempotency: AxiomCheck,
    /// Number of maps quantified over for continuity.
    pub maps: usize,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.extension.holds && self.monotonicity.holds && self.continuity.holds && self.idempotency.holds
    }
}

/// Extension, monotonicity, continuity (over every map between universe
/// spaces) and idempotency of a tabulated closure operator.
pub fn check_axioms(t: &ClosureOperatorTable) -> AxiomReport {
    let u = t.universe();
    let names = |s: usize, set: PointSet| sorted_names(&u[s], set);

    let extension = t.entries().find(|(_, e)| !e.subset.is_subset(e.closure)).map(|(s, e)| {
        AxiomViolation::Extension {
            space: canonical_form(&u[s]),
            subset: names(s, e.subset),
            closure: names(s, e.closure),
        }
    });

    let monotonicity = t.entries().find_map(|(s, e)| {
        all_subsets(u[s].len())
            .find(|&larger| e.subset.is_subset(larger) && !e.closure.is_subset(t.closure_of(s, larger)))
            .map(|larger| AxiomViolation::Monotonicity {
                space: canonical_form(&u[s]),
                smaller: names(s, e.subset),
                larger: names(s, larger),
            })
    });

    let idempotency = t.entries().find_map(|(s, e)| {
        let again = t.closure_of(s, e.closure);
        (again != e.closure).then(|| AxiomViolation::Idempotency {
            space: canonical_form(&u[s]),
            subset: names(s, e.subset),
            closure: names(s, e.closure),
            reclosure: names(s, again),
        })
    });

    let pairs: Vec<(usize, usize)> = (0..u.len()).flat_map(|x| (0..u.len()).map(move |y| (x, y))).collect();
    let per_pair: Vec<(usize, Option<AxiomViolation>)> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let maps = hom_set(&u[x], &u[y]);
            let bad = maps.iter().find_map(|f| {
                all_subsets(u[x].len()).find_map(|m| {
                    let pushed = f.image(t.closure_of(x, m));
                    (!pushed.is_subset(t.closure_of(y, f.image(m)))).then(|| AxiomViolation::Continuity {
                        map: f.clone(),
                        dom: canonical_form(&u[x]),
                        cod: canonical_form(&u[y]),
                        subset: names(x, m),
                    })
                })
            });
            (maps.len(), bad)
        })
        .collect();
    let maps = per_pair.iter().map(|(n, _)| n).sum();
    let continuity = per_pair.into_iter().find_map(|(_, bad)| bad);

    AxiomReport {
        extension: AxiomCheck::from(extension),
        monotonicity: AxiomCheck::from(monotonicity),
        continuity: AxiomCheck::from(continuity),
        idempotency: AxiomCheck::from(idempotency),
        maps,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub space: Arc<FinSpace>,
    pub canonical: String,
    pub subset: Vec<String>,
    pub closure_a: Vec<String>,
    pub closure_b: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SameClosure {
    pub same: bool,
    /// Both tables were computed exactly; the verdict is still relative to
    /// the universe.
    pub exact: bool,
    pub counterexample: Option<Disagreement>,
}

/// Entrywise comparison of the two closure operators over `universe`; the
/// first disagreement in universe order is reported.
pub fn same_closure(a: &SubcatSpec, b: &SubcatSpec, universe: &[Arc<FinSpace>]) -> Result<SameClosure> {
    let ta = closure_operator_table(a, universe)?;
    let tb = closure_operator_table(b, universe)?;
    Ok(compare_tables(&ta, &tb))
}

pub fn compare_tables(ta: &ClosureOperatorTable, tb: &ClosureOperatorTable) -> SameClosure {
    let u = ta.universe();
    let counterexample = ta.entries().find_map(|(s, e)| {
        let other = tb.closure_of(s, e.subset);
        (other != e.closure).then(|| Disagreement {
            space: u[s].clone(),
            canonical: canonical_form(&u[s]),
            subset: sorted_names(&u[s], e.subset),
            closure_a: sorted_names(&u[s], e.closure),
            closure_b: sorted_names(&u[s], other),
        })
    });
    SameClosure {
        same: counterexample.is_none(),
        exact: ta.exact() && tb.exact(),
        counterexample,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiDenseViolation {
    pub map: ContMap,
    pub dom: String,
    pub cod: String,
    pub cancellable: bool,
    pub dense: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiDenseReport {
    pub maps: usize,
    pub exact: bool,
    pub violations: Vec<EpiDenseViolation>,
}

/// For maps between members: A-cancellable iff the image is c_A-dense.
pub fn epi_dense_consistency(a: &SubcatSpec, universe: &[Arc<FinSpace>]) -> Result<EpiDenseReport> {
    if !a.strongly_epireflective() {
        return Err(Error::input(format!(
            "subcategory {} is not one of the strongly epireflective builtins",
            a.name
        )));
    }
    let members: Vec<&Arc<FinSpace>> = universe.iter().filter(|x| a.is_member(x)).collect();
    let mut maps = 0;
    let mut exact = true;
    let mut violations = Vec::new();
    for x in &members {
        for y in &members {
            for f in hom_set(x, y) {
                maps += 1;
                let c = is_cancellable(&f, a);
                exact &= c.exact;
                let image = Subobject::new((*y).clone(), f.full_image())?;
                let dense = closure_formula(&image, a)?.closure.is_full();
                if c.cancellable != dense {
                    violations.push(EpiDenseViolation {
                        dom: canonical_form(x),
                        cod: canonical_form(y),
                        map: f,
                        cancellable: c.cancellable,
                        dense,
                    });
                }
            }
        }
    }
    Ok(EpiDenseReport { maps, exact, violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub space: String,
    pub subset: Vec<String>,
    pub formula: Vec<String>,
    pub bruteforce: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub subobjects: usize,
    pub exact: bool,
    pub mismatches: Vec<OracleMismatch>,
}

/// Formula against brute force on every subobject of every universe space.
pub fn oracle_agreement(a: &SubcatSpec, universe: &[Arc<FinSpace>]) -> Result<OracleReport> {
    let jobs: Vec<(usize, PointSet)> = universe
        .iter()
        .enumerate()
        .flat_map(|(s, x)| all_subsets(x.len()).map(move |m| (s, m)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(s, m)| {
            let x = &universe[s];
            let sub = Subobject::new(x.clone(), m)?;
            let f = closure_formula(&sub, a)?;
            let b = closure_bruteforce(&sub, a);
            let mismatch = (f.closure != b.closure).then(|| OracleMismatch {
                space: canonical_form(x),
                subset: sorted_names(x, m),
                formula: sorted_names(x, f.closure.carrier()),
                bruteforce: sorted_names(x, b.closure.carrier()),
            });
            Ok((b.exact, mismatch))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleReport {
        subobjects: jobs.len(),
        exact: results.iter().all(|(e, _)| *e),
        mismatches: results.into_iter().filter_map(|(_, m)| m).collect(),
    })
}

/// Truth values for one member X of B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm41Row {
    pub space: String,
    /// `α_{U,X}` is mono for every U in the universe.
    pub alpha_mono: bool,
    /// (a) the diagonal of X is A-regular.
    pub diagonal_regular: bool,
    /// (b) X lies in S(A).
    pub in_s_hull: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm41Report {
    pub a: String,
    pub b: String,
    pub rows: Vec<Thm41Row>,
    pub precondition: bool,
    pub diagonals_regular: bool,
    pub b_in_s_hull: bool,
    pub same_closure: SameClosure,
    /// (a), (b) and (c) agree.
    pub equivalent: bool,
    /// The precondition holds but the three conditions disagree.
    pub defect: bool,
}

/// Evaluates the three conditions of the diagonal theorem for A and B over
/// `universe`. Diagonal regularity is decided by the cokernel-pair formula.
pub fn thm41_sweep(a: &SubcatSpec, b: &SubcatSpec, universe: &[Arc<FinSpace>]) -> Result<Thm41Report> {
    if !a.has_reflector() {
        return Err(Error::input(format!("subcategory {} has no reflector", a.name)));
    }
    let members: Vec<&Arc<FinSpace>> = universe.iter().filter(|x| b.is_member(x)).collect();
    let rows = members
        .par_iter()
        .map(|x| -> Result<Thm41Row> {
            let mut alpha_mono = true;
            for u in universe {
                alpha_mono &= canonical_alpha(u, x, a)?.mono;
            }
            Ok(Thm41Row {
                space: canonical_form(x),
                alpha_mono,
                diagonal_regular: is_a_regular_formula(&diagonal(x)?, a)?,
                in_s_hull: in_s_hull(x, a).member,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let same = same_closure(a, b, universe)?;
    let precondition = rows.iter().all(|r| r.alpha_mono);
    let diagonals_regular = rows.iter().all(|r| r.diagonal_regular);
    let b_in_s_hull = rows.iter().all(|r| r.in_s_hull);
    let equivalent = diagonals_regular == b_in_s_hull && b_in_s_hull == same.same;
    Ok(Thm41Report {
        a: a.name.clone(),
        b: b.name.clone(),
        rows,
        precondition,
        diagonals_regular,
        b_in_s_hull,
        same_closure: same,
        equivalent,
        defect: precondition && !equivalent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::table::closure_operator_table;
    use crate::fintop::universe;

    #[test]
    fn t0_table_satisfies_axioms() {
        let u = universe(3).unwrap();
        let t = closure_operator_table(&SubcatSpec::t0(), &u).unwrap();
        let r = check_axioms(&t);
        assert!(r.all_hold(), "{r:?}");
        assert!(r.maps > 0);
    }

    #[test]
    fn shrunk_entry_breaks_extension() {
        let u = universe(2).unwrap();
        let mut t = closure_operator_table(&SubcatSpec::all(), &u).unwrap();
        let s = u.len() - 1;
        t.set_closure(s, PointSet::from_bits(0b01), PointSet::EMPTY);
        let r = check_axioms(&t);
        assert!(!r.extension.holds);
        match r.extension.counterexample.unwrap() {
            AxiomViolation::Extension { subset, closure, .. } => {
                assert_eq!(subset.len(), 1);
                assert!(closure.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comparisons() {
        let u = universe(3).unwrap();
        assert!(same_closure(&SubcatSpec::indiscrete(), &SubcatSpec::all(), &u).unwrap().same);
        let r = same_closure(&SubcatSpec::t0(), &SubcatSpec::all(), &u).unwrap();
        let c = r.counterexample.unwrap();
        assert!(c.space.is_indiscrete() && c.space.len() == 2);
        assert_eq!(c.subset.len(), 1);
        assert_eq!(c.closure_a.len(), 2);
    }

    #[test]
    fn epi_dense_for_t0() {
        let u = universe(2).unwrap();
        let r = epi_dense_consistency(&SubcatSpec::t0(), &u).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.exact);
    }

    #[test]
    fn thm41_small() {
        let u = universe(3).unwrap();
        let t0 = SubcatSpec::t0();
        let r = thm41_sweep(&t0, &SubcatSpec::t0(), &u).unwrap();
        assert!(r.precondition && r.diagonals_regular && r.b_in_s_hull && r.same_closure.same);
        let r = thm41_sweep(&t0, &SubcatSpec::indiscrete(), &u).unwrap();
        assert!(!r.diagonals_regular && !r.b_in_s_hull && !r.same_closure.same);
        assert!(!r.defect);
    }
}
