//! The named checks: argument resolution and execution.

use std::collections::BTreeMap;
use std::sync::Arc;

use regclose_core::closure::{
    check_axioms, closure_bruteforce, closure_formula, closure_operator_table, epi_dense_consistency,
    is_a_regular, oracle_agreement, same_closure, thm41_sweep, ClosureResult,
};
use regclose_core::fintop::{canonical_form, parse_canonical, universe, FinSpace, Subobject, CATALOG_MAX_POINTS};
use regclose_core::subcat::{
    diagonal, in_d_hull, in_e_hull, in_largest_intermediate, in_mono_hull, in_s_hull, in_smallest_intermediate,
    regular_bound, resolve_space, resolve_subcat, Hull, HullReport, SubcatSpec,
};
use regclose_core::PointSet;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{CheckResult, Verdict};
use crate::{CliError, Context, Result};

pub type Args = BTreeMap<String, Value>;

pub const CHECK_KINDS: [&str; 8] =
    ["closure", "compare", "hull", "diagonal", "axioms", "thm41", "epi-dense", "oracle-agreement"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Formula,
    Brute,
    Both,
}

/// A check with every argument resolved.
#[derive(Clone, Debug)]
pub enum Check {
    Closure { subobject: Subobject, subcat: SubcatSpec, method: MethodChoice },
    Compare { a: SubcatSpec, b: SubcatSpec, max_points: usize },
    Hull { which: Hull, subcat: SubcatSpec, space: Arc<FinSpace>, expect: bool },
    Diagonal { space: Arc<FinSpace>, subcat: SubcatSpec, expect: bool },
    Axioms { subcat: SubcatSpec, max_points: usize },
    Thm41 { a: SubcatSpec, b: SubcatSpec, max_points: usize },
    EpiDense { subcat: SubcatSpec, max_points: usize },
    OracleAgreement { subcat: SubcatSpec, max_points: usize },
}

fn allowed(kind: &str) -> &'static [&'static str] {
    match kind {
        "closure" => &["space", "subset", "subcat", "method", "bound"],
        "compare" => &["a", "b", "max_points", "bound"],
        "hull" => &["which", "subcat", "space", "bound", "expect"],
        "diagonal" => &["space", "subcat", "bound", "expect"],
        "axioms" | "epi-dense" | "oracle-agreement" => &["subcat", "max_points", "bound"],
        "thm41" => &["a", "b", "max_points", "bound"],
        _ => &[],
    }
}

struct Resolver<'a> {
    args: &'a Args,
    ctx: &'a Context,
    bound: Option<usize>,
}

impl<'a> Resolver<'a> {
    fn new(kind: &str, args: &'a Args, ctx: &'a Context, default_bound: Option<usize>) -> Result<Self> {
        let keys = allowed(kind);
        if let Some(k) = args.keys().find(|k| !keys.contains(&k.as_str())) {
            return Err(CliError::field(format!("args.{k}"), format!("not an argument of {kind}")));
        }
        let mut r = Resolver { args, ctx, bound: default_bound };
        if let Some(b) = r.opt_usize("bound")? {
            r.bound = Some(b);
        }
        if let Some(b) = r.bound {
            if b == 0 || b > CATALOG_MAX_POINTS {
                return Err(CliError::field("bound", format!("{b} is outside 1..={CATALOG_MAX_POINTS}")));
            }
        }
        Ok(r)
    }

    fn raw(&self, key: &str) -> Result<&'a Value> {
        self.args.get(key).ok_or_else(|| CliError::field(format!("args.{key}"), "required"))
    }

    fn string(&self, key: &str) -> Result<&'a str> {
        self.raw(key)?.as_str().ok_or_else(|| CliError::field(format!("args.{key}"), "expected a string"))
    }

    fn opt_string(&self, key: &str) -> Result<Option<&'a str>> {
        self.args.get(key).map(|_| self.string(key)).transpose()
    }

    fn opt_usize(&self, key: &str) -> Result<Option<usize>> {
        self.args
            .get(key)
            .map(|v| {
                v.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| CliError::field(format!("args.{key}"), "expected a non-negative integer"))
            })
            .transpose()
    }

    fn opt_bool(&self, key: &str) -> Result<Option<bool>> {
        self.args
            .get(key)
            .map(|v| v.as_bool().ok_or_else(|| CliError::field(format!("args.{key}"), "expected true or false")))
            .transpose()
    }

    fn space(&self, key: &str) -> Result<Arc<FinSpace>> {
        let name = self.string(key)?;
        let space = if name.starts_with("fs") && name.contains(':') {
            parse_canonical(name)
        } else {
            resolve_space(name, &self.ctx.base)
        };
        space.map(Arc::new).map_err(|e| CliError::field(format!("args.{key}"), e))
    }

    fn subcat(&self, key: &str) -> Result<SubcatSpec> {
        let spec = resolve_subcat(self.string(key)?, &self.ctx.base)
            .map_err(|e| CliError::field(format!("args.{key}"), e))?;
        Ok(match self.bound {
            Some(b) => spec.with_bound(b),
            None => spec,
        })
    }

    fn max_points(&self) -> Result<usize> {
        let n = self.opt_usize("max_points")?.unwrap_or(self.ctx.max_points);
        if n > self.ctx.ceiling {
            return Err(CliError::field(
                "args.max_points",
                format!("{n} exceeds the ceiling {} (raise it with {})", self.ctx.ceiling, crate::CEILING_VAR),
            ));
        }
        Ok(n)
    }

    fn subset(&self, key: &str, space: &FinSpace) -> Result<PointSet> {
        let labels: Vec<String> = match self.raw(key)? {
            Value::String(s) => s.split(',').map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect(),
            Value::Array(items) => items
                .iter()
                .map(|v| v.as_str().map(String::from))
                .collect::<Option<_>>()
                .ok_or_else(|| CliError::field(format!("args.{key}"), "expected point labels"))?,
            _ => return Err(CliError::field(format!("args.{key}"), "expected \"a,b\" or a list of labels")),
        };
        space.subset(&labels).map_err(|e| CliError::field(format!("args.{key}"), e))
    }
}

fn need_reflector(a: &SubcatSpec, key: &str) -> Result<()> {
    if a.has_reflector() {
        Ok(())
    } else {
        Err(CliError::field(format!("args.{key}"), format!("subcategory {} has no reflector", a.name)))
    }
}

impl Check {
    /// Resolves `args` for a check of `kind`; `default_bound` comes from the
    /// scenario's `bounds` table.
    pub fn prepare(kind: &str, args: &Args, ctx: &Context, default_bound: Option<usize>) -> Result<Check> {
        if !CHECK_KINDS.contains(&kind) {
            return Err(CliError::field("kind", format!("unknown check kind {kind:?}")));
        }
        let r = Resolver::new(kind, args, ctx, default_bound)?;
        Ok(match kind {
            "closure" => {
                let space = r.space("space")?;
                let subset = r.subset("subset", &space)?;
                let subcat = r.subcat("subcat")?;
                let method = match r.opt_string("method")? {
                    None => MethodChoice::Auto,
                    Some("formula") => MethodChoice::Formula,
                    Some("brute") | Some("bruteforce") => MethodChoice::Brute,
                    Some("both") => MethodChoice::Both,
                    Some(other) => {
                        return Err(CliError::field("args.method", format!("expected formula, brute or both, got {other:?}")))
                    }
                };
                if matches!(method, MethodChoice::Formula | MethodChoice::Both) {
                    need_reflector(&subcat, "subcat")?;
                }
                Check::Closure { subobject: Subobject::new(space, subset)?, subcat, method }
            }
            "compare" => Check::Compare { a: r.subcat("a")?, b: r.subcat("b")?, max_points: r.max_points()? },
            "hull" => {
                let which = match r.string("which")? {
                    "s" | "S" => Hull::S,
                    "e" | "E" => Hull::E,
                    "d" | "D" => Hull::D,
                    "mono" => Hull::Mono,
                    "smallest" | "smallest-intermediate" => Hull::SmallestIntermediate,
                    "largest" | "largest-intermediate" => Hull::LargestIntermediate,
                    other => {
                        return Err(CliError::field(
                            "args.which",
                            format!("expected s, e, d, mono, smallest or largest, got {other:?}"),
                        ))
                    }
                };
                let subcat = r.subcat("subcat")?;
                if which == Hull::LargestIntermediate {
                    need_reflector(&subcat, "subcat")?;
                }
                Check::Hull { which, subcat, space: r.space("space")?, expect: r.opt_bool("expect")?.unwrap_or(true) }
            }
            "diagonal" => Check::Diagonal {
                space: r.space("space")?,
                subcat: r.subcat("subcat")?,
                expect: r.opt_bool("expect")?.unwrap_or(true),
            },
            "axioms" => Check::Axioms { subcat: r.subcat("subcat")?, max_points: r.max_points()? },
            "thm41" => {
                let a = r.subcat("a")?;
                need_reflector(&a, "a")?;
                Check::Thm41 { a, b: r.subcat("b")?, max_points: r.max_points()? }
            }
            "epi-dense" => {
                let subcat = r.subcat("subcat")?;
                if !subcat.strongly_epireflective() {
                    return Err(CliError::field(
                        "args.subcat",
                        format!("subcategory {} is not strongly epireflective", subcat.name),
                    ));
                }
                Check::EpiDense { subcat, max_points: r.max_points()? }
            }
            "oracle-agreement" => {
                let subcat = r.subcat("subcat")?;
                need_reflector(&subcat, "subcat")?;
                Check::OracleAgreement { subcat, max_points: r.max_points()? }
            }
            _ => unreachable!("kind checked above"),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Check::Closure { .. } => "closure",
            Check::Compare { .. } => "compare",
            Check::Hull { .. } => "hull",
            Check::Diagonal { .. } => "diagonal",
            Check::Axioms { .. } => "axioms",
            Check::Thm41 { .. } => "thm41",
            Check::EpiDense { .. } => "epi-dense",
            Check::OracleAgreement { .. } => "oracle-agreement",
        }
    }

    pub fn run(&self) -> Result<CheckResult> {
        let out = match self {
            Check::Closure { subobject, subcat, method } => run_closure(subobject, subcat, *method)?,
            Check::Compare { a, b, max_points } => {
                let u = universe(*max_points)?;
                let r = same_closure(a, b, &u)?;
                let summary = match &r.counterexample {
                    None => format!("{} and {} agree on {} spaces", a.name, b.name, u.len()),
                    Some(d) => format!(
                        "{} and {} differ on {} at {}: {} vs {}",
                        a.name,
                        b.name,
                        d.canonical,
                        set(&d.subset),
                        set(&d.closure_a),
                        set(&d.closure_b)
                    ),
                };
                let bound = (!r.exact).then(|| pair_bound(a, b, *max_points));
                Outcome::new(r.same, r.exact, summary, bound, r.counterexample.iter().map(to_value).collect(), &r)
            }
            Check::Hull { which, subcat, space, expect } => run_hull(*which, subcat, space, *expect)?,
            Check::Diagonal { space, subcat, expect } => run_diagonal(space, subcat, *expect)?,
            Check::Axioms { subcat, max_points } => {
                let u = universe(*max_points)?;
                let table = closure_operator_table(subcat, &u)?;
                let r = check_axioms(&table);
                let failed: Vec<(&str, Value)> = [
                    ("extension", &r.extension),
                    ("monotonicity", &r.monotonicity),
                    ("continuity", &r.continuity),
                    ("idempotency", &r.idempotency),
                ]
                .into_iter()
                .filter(|(_, c)| !c.holds)
                .map(|(name, c)| (name, json!({"axiom": name, "counterexample": c.counterexample})))
                .collect();
                let summary = if failed.is_empty() {
                    format!("all four axioms hold for {} over {} entries and {} maps", subcat.name, table.len(), r.maps)
                } else {
                    let names: Vec<&str> = failed.iter().map(|(n, _)| *n).collect();
                    format!("{} violates {}", subcat.name, names.join(", "))
                };
                let exact = table.exact();
                let bound = (!exact).then(|| regular_bound(subcat, *max_points).0);
                Outcome::new(r.all_hold(), exact, summary, bound, failed.into_iter().map(|(_, w)| w).collect(), &r)
            }
            Check::Thm41 { a, b, max_points } => {
                let u = universe(*max_points)?;
                let r = thm41_sweep(a, b, &u)?;
                let flag = |v: bool| if v { 'T' } else { 'F' };
                let summary = format!(
                    "A={} B={}: P={} a={} b={} c={}{}",
                    a.name,
                    b.name,
                    flag(r.precondition),
                    flag(r.diagonals_regular),
                    flag(r.b_in_s_hull),
                    flag(r.same_closure.same),
                    if r.defect { ", conditions disagree" } else { "" }
                );
                let witnesses = if r.defect {
                    vec![json!({
                        "precondition": r.precondition,
                        "diagonals_regular": r.diagonals_regular,
                        "b_in_s_hull": r.b_in_s_hull,
                        "same_closure": r.same_closure.same,
                        "counterexample": r.same_closure.counterexample,
                    })]
                } else {
                    Vec::new()
                };
                let exact = r.same_closure.exact;
                let bound = (!exact).then(|| pair_bound(a, b, *max_points));
                Outcome::new(!r.defect, exact, summary, bound, witnesses, &r)
            }
            Check::EpiDense { subcat, max_points } => {
                let u = universe(*max_points)?;
                let r = epi_dense_consistency(subcat, &u)?;
                let summary = format!(
                    "{} violations among {} maps between {} members",
                    r.violations.len(),
                    r.maps,
                    subcat.name
                );
                let bound = (!r.exact).then(|| regular_bound(subcat, *max_points).0);
                let witnesses = r.violations.iter().map(to_value).collect();
                Outcome::new(r.violations.is_empty(), r.exact, summary, bound, witnesses, &r)
            }
            Check::OracleAgreement { subcat, max_points } => {
                let u = universe(*max_points)?;
                let r = oracle_agreement(subcat, &u)?;
                let summary = format!(
                    "{} of {} subobjects disagree for {}",
                    r.mismatches.len(),
                    r.subobjects,
                    subcat.name
                );
                let bound = (!r.exact).then(|| regular_bound(subcat, *max_points).0);
                let witnesses = r.mismatches.iter().map(to_value).collect();
                Outcome::new(r.mismatches.is_empty(), r.exact, summary, bound, witnesses, &r)
            }
        };
        Ok(out.into_result(self.kind()))
    }
}

struct Outcome {
    ok: bool,
    exact: bool,
    summary: String,
    bound: Option<usize>,
    witnesses: Vec<Value>,
    details: Value,
}

impl Outcome {
    fn new(
        ok: bool,
        exact: bool,
        summary: String,
        bound: Option<usize>,
        witnesses: Vec<Value>,
        details: &impl Serialize,
    ) -> Self {
        Outcome { ok, exact, summary, bound, witnesses, details: to_value(details) }
    }

    fn into_result(mut self, kind: &str) -> CheckResult {
        if !self.ok && self.witnesses.is_empty() {
            self.witnesses.push(self.details.clone());
        }
        CheckResult {
            check: kind.to_string(),
            verdict: Verdict::new(self.ok, self.exact),
            summary: self.summary,
            bound: self.bound,
            witnesses: self.witnesses,
            details: self.details,
            duration_ms: None,
        }
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn set(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

fn pair_bound(a: &SubcatSpec, b: &SubcatSpec, n: usize) -> usize {
    regular_bound(a, n).0.max(regular_bound(b, n).0)
}

fn closure_summary(r: &ClosureResult) -> String {
    format!(
        "c({}) = {} in {} via {}",
        set(&r.input.labels()),
        set(&r.closure.labels()),
        canonical_form(r.input.ambient()),
        r.method.name()
    )
}

fn closure_bound(r: &ClosureResult, a: &SubcatSpec) -> Option<usize> {
    match (r.exact, r.bound) {
        (true, _) => None,
        (false, Some(b)) => Some(b),
        (false, None) => Some(a.bound),
    }
}

fn run_closure(m: &Subobject, a: &SubcatSpec, method: MethodChoice) -> Result<Outcome> {
    let single = |r: ClosureResult| {
        let bound = closure_bound(&r, a);
        Outcome::new(true, r.exact, closure_summary(&r), bound, Vec::new(), &r)
    };
    Ok(match method {
        MethodChoice::Formula => single(closure_formula(m, a)?),
        MethodChoice::Brute => single(closure_bruteforce(m, a)),
        MethodChoice::Auto if a.has_reflector() => single(closure_formula(m, a)?),
        MethodChoice::Auto => single(closure_bruteforce(m, a)),
        MethodChoice::Both => {
            let f = closure_formula(m, a)?;
            let b = closure_bruteforce(m, a);
            let agree = f.closure == b.closure;
            let summary = if agree {
                format!("{}; brute force agrees", closure_summary(&f))
            } else {
                format!("formula gives {} but brute force gives {}", set(&f.closure.labels()), set(&b.closure.labels()))
            };
            let witnesses = if agree {
                Vec::new()
            } else {
                vec![json!({"formula": f.closure, "bruteforce": b.closure, "subset": m})]
            };
            let bound = closure_bound(&b, a).or(closure_bound(&f, a));
            Outcome::new(agree, f.exact && b.exact, summary, bound, witnesses, &json!({"formula": f, "bruteforce": b}))
        }
    })
}

fn run_hull(which: Hull, a: &SubcatSpec, x: &Arc<FinSpace>, expect: bool) -> Result<Outcome> {
    let r: HullReport = match which {
        Hull::S => in_s_hull(x, a),
        Hull::E => in_e_hull(x, a),
        Hull::D => in_d_hull(x, a),
        Hull::Mono => in_mono_hull(x, a),
        Hull::SmallestIntermediate => in_smallest_intermediate(x, a),
        Hull::LargestIntermediate => in_largest_intermediate(x, a)?,
    };
    let summary = format!(
        "{} is {}in {}({}){}",
        canonical_form(x),
        if r.member { "" } else { "not " },
        r.hull.name(),
        a.name,
        if r.exact { String::new() } else { format!(" within bound {}", r.bound) }
    );
    let witnesses = r.witness.iter().map(to_value).collect();
    Ok(Outcome::new(r.member == expect, r.exact, summary, Some(r.bound), witnesses, &r))
}

fn run_diagonal(x: &Arc<FinSpace>, a: &SubcatSpec, expect: bool) -> Result<Outcome> {
    let d = diagonal(x)?;
    let member = a.is_member(x);
    if a.has_reflector() {
        let c = closure_formula(&d, a)?;
        let regular = c.closure == d;
        let summary = format!(
            "diagonal of {} is {}{}-regular (closure has {} of {} points)",
            canonical_form(x),
            if regular { "" } else { "not " },
            a.name,
            c.closure.carrier().len(),
            d.ambient().len()
        );
        let details = json!({"space": canonical_form(x), "member": member, "regular": regular, "closure": c});
        let bound = closure_bound(&c, a);
        let witness = vec![json!({"diagonal": d, "closure": c.closure})];
        let witnesses = if regular == expect { Vec::new() } else { witness };
        Ok(Outcome::new(regular == expect, c.exact, summary, bound, witnesses, &details))
    } else {
        let v = is_a_regular(&d, a);
        let summary = format!(
            "diagonal of {} is {}{}-regular{}",
            canonical_form(x),
            if v.regular { "" } else { "not " },
            a.name,
            if v.exact { String::new() } else { format!(" within bound {}", v.bound) }
        );
        let details = json!({"space": canonical_form(x), "member": member, "regular": v.regular, "sweep": v});
        let bound = (!v.exact).then_some(v.bound);
        Ok(Outcome::new(v.regular == expect, v.exact, summary, bound, Vec::new(), &details))
    }
}
