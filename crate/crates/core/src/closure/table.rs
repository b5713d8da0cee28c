use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::regular::{closure_bruteforce, closure_formula, Method};
use crate::error::{Error, Result};
use crate::fintop::{canonical_form, FinSpace, Subobject};
use crate::points::{all_subsets, PointSet};
use crate::subcat::SubcatSpec;

/// Cap on the number of (space, subset) entries in one table.
pub const TABLE_BUDGET: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub subset: PointSet,
    pub closure: PointSet,
    pub method: Method,
    pub exact: bool,
}

/// The closure operator of a subcategory, tabulated over a universe of
/// spaces: one entry per subset of each space.
#[derive(Clone, Debug)]
pub struct ClosureOperatorTable {
    pub subcat: String,
    universe: Vec<Arc<FinSpace>>,
    /// `rows[s][bits]` is the entry for the subset `bits` of space `s`.
    rows: Vec<Vec<TableEntry>>,
}

/// Serialized form of one entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExportedEntry {
    pub space: String,
    pub subset: Vec<String>,
    pub closure: Vec<String>,
    pub method: Method,
    pub exact: bool,
}

impl ClosureOperatorTable {
    pub fn universe(&self) -> &[Arc<FinSpace>] {
        &self.universe
    }

    pub fn entry(&self, space: usize, subset: PointSet) -> &TableEntry {
        &self.rows[space][subset.bits() as usize]
    }

    pub fn closure_of(&self, space: usize, subset: PointSet) -> PointSet {
        self.entry(space, subset).closure
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &TableEntry)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().map(move |e| (s, e)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every entry is exact.
    pub fn exact(&self) -> bool {
        self.entries().all(|(_, e)| e.exact)
    }

    /// Overwrites one entry; for constructing deliberately broken tables.
    pub fn set_closure(&mut self, space: usize, subset: PointSet, closure: PointSet) {
        self.rows[space][subset.bits() as usize].closure = closure;
    }

    pub fn export(&self) -> Vec<ExportedEntry> {
        self.entries()
            .map(|(s, e)| {
                let space = &self.universe[s];
                ExportedEntry {
                    space: canonical_form(space),
                    subset: sorted_names(space, e.subset),
                    closure: sorted_names(space, e.closure),
                    method: e.method,
                    exact: e.exact,
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.export()).expect("tables serialize")
    }
}

pub(crate) fn sorted_names(space: &FinSpace, set: PointSet) -> Vec<String> {
    let mut names = space.names(set);
    names.sort();
    names
}

/// Tabulates `c_A` over `universe`, by formula when `a` has a reflector and
/// by brute force otherwise.
pub fn closure_operator_table(a: &SubcatSpec, universe: &[Arc<FinSpace>]) -> Result<ClosureOperatorTable> {
    let method = if a.has_reflector() { Method::Formula } else { Method::Bruteforce };
    closure_operator_table_with(a, universe, method)
}

pub fn closure_operator_table_with(
    a: &SubcatSpec,
    universe: &[Arc<FinSpace>],
    method: Method,
) -> Result<ClosureOperatorTable> {
    let size: usize = universe.iter().map(|x| 1usize << x.len().min(63)).sum();
    if universe.iter().any(|x| x.len() > 16) || size > TABLE_BUDGET {
        return Err(Error::budget(format!("closure table exceeds {TABLE_BUDGET} entries")));
    }
    let rows = universe
        .par_iter()
        .map(|x| {
            all_subsets(x.len())
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|subset| {
                    let m = Subobject::new(x.clone(), subset).unwrap();
                    let r = match method {
                        Method::Formula => closure_formula(&m, a)?,
                        Method::Bruteforce => closure_bruteforce(&m, a),
                    };
                    Ok(TableEntry { subset, closure: r.closure.carrier(), method, exact: r.exact })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClosureOperatorTable { subcat: a.name.clone(), universe: universe.to_vec(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fintop::universe;

    #[test]
    fn identity_tables() {
        let u = universe(3).unwrap();
        for a in [SubcatSpec::all(), SubcatSpec::indiscrete()] {
            let t = closure_operator_table(&a, &u).unwrap();
            assert!(t.entries().all(|(_, e)| e.closure == e.subset));
            let b = closure_operator_table_with(&a, &u, Method::Bruteforce).unwrap();
            assert!(b.entries().all(|(_, e)| e.closure == e.subset));
        }
    }

    #[test]
    fn t0_row_of_indiscrete_doublet() {
        let i2 = Arc::new(FinSpace::indiscrete(2));
        let t = closure_operator_table(&SubcatSpec::t0(), &[i2]).unwrap();
        let got: Vec<u64> = (0..4).map(|b| t.closure_of(0, PointSet::from_bits(b)).bits()).collect();
        assert_eq!(got, vec![0b00, 0b11, 0b11, 0b11]);
    }

    #[test]
    fn export_shape() {
        let t = closure_operator_table(&SubcatSpec::t0(), &[Arc::new(FinSpace::sierpinski())]).unwrap();
        let rows = t.export();
        assert_eq!(rows.len(), 4);
        let json = serde_json::to_value(&rows[1]).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, vec!["closure", "exact", "method", "space", "subset"]);
        assert_eq!(json["method"], "formula");
    }

    #[test]
    fn budget_guard() {
        let big = Arc::new(FinSpace::discrete(17));
        assert!(matches!(closure_operator_table(&SubcatSpec::t0(), &[big]), Err(Error::Budget(_))));
    }
}
