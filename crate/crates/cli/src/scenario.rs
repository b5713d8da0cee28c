//! Scenario files: a named list of checks over one universe.
//!
//! ```json
//! {"name": "smoke", "universe": {"max_points": 3}, "bounds": {"hull": 3},
//!  "checks": [{"kind": "compare", "args": {"a": "t0", "b": "all"}}]}
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Deserialize;

use crate::checks::{Args, Check, CHECK_KINDS};
use crate::report::Report;
use crate::{CliError, Context, Result, DEFAULT_CEILING};

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: String,
    #[serde(default)]
    pub universe: UniverseSpec,
    /// Default enumeration bound per check kind.
    #[serde(default)]
    pub bounds: BTreeMap<String, usize>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseSpec {
    #[serde(default = "default_max_points")]
    pub max_points: usize,
}

impl Default for UniverseSpec {
    fn default() -> Self {
        UniverseSpec { max_points: DEFAULT_CEILING }
    }
}

fn default_max_points() -> usize {
    DEFAULT_CEILING
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub kind: String,
    #[serde(default)]
    pub args: Args,
}

pub fn parse_scenario(text: &str) -> Result<ScenarioSpec> {
    serde_json::from_str(text).map_err(|e| CliError::field("scenario", e))
}

pub fn load_scenario(path: &Path) -> Result<ScenarioSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::field(path.display(), format!("cannot read scenario: {e}")))?;
    parse_scenario(&text)
}

/// Resolves every check, then runs them in order. `ctx.base` should be the
/// scenario file's directory.
pub fn run_scenario(spec: &ScenarioSpec, ctx: &Context) -> Result<Report> {
    let n = spec.universe.max_points;
    if n > ctx.ceiling {
        return Err(CliError::field(
            "universe.max_points",
            format!("{n} exceeds the ceiling {} (raise it with {})", ctx.ceiling, crate::CEILING_VAR),
        ));
    }
    for kind in spec.bounds.keys() {
        if !CHECK_KINDS.contains(&kind.as_str()) {
            return Err(CliError::field(format!("bounds.{kind}"), "unknown check kind"));
        }
    }
    let ctx = Context { max_points: n, ..ctx.clone() };
    let checks = spec
        .checks
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Check::prepare(&c.kind, &c.args, &ctx, spec.bounds.get(&c.kind).copied())
                .map_err(|e| e.within(&format!("checks[{i}].")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut results = Vec::with_capacity(checks.len());
    for (i, check) in checks.iter().enumerate() {
        let start = Instant::now();
        let mut r = check.run().map_err(|e| e.within(&format!("checks[{i}]: ")))?;
        if ctx.timings {
            r.duration_ms = Some(start.elapsed().as_millis() as u64);
        }
        results.push(r);
    }
    Ok(Report::new(spec.name.clone(), results))
}
