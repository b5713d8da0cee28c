//! Regular closure operators: `c_A(m)` by the cokernel-pair formula and by
//! brute force over equalizers, tabulation over a universe, and the sweeps
//! that compare operators and check the diagonal theorem.

mod checks;
mod regular;
mod table;

pub use checks::{
    check_axioms, compare_tables, epi_dense_consistency, oracle_agreement, same_closure, thm41_sweep,
    AxiomCheck, AxiomReport, AxiomViolation, Disagreement, EpiDenseReport, EpiDenseViolation,
    OracleMismatch, OracleReport, SameClosure, Thm41Report, Thm41Row,
};
pub use regular::{
    closure, closure_bruteforce, closure_formula, is_a_regular, is_a_regular_formula, ClosureResult,
    ClosureWitnesses, Method, RegularityVerdict,
};
pub use table::{
    closure_operator_table, closure_operator_table_with, ClosureOperatorTable, ExportedEntry,
    TableEntry, TABLE_BUDGET,
};
