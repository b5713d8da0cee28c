//! Subcategory spec files and the names accepted on the command line.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fintop::{canonical_form, parse_canonical, parse_space, ContMap, FinSpace, SpaceFile};
use crate::subcat::spec::{Builtin, SubcatKind, SubcatSpec, TableReflection};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubcatFile {
    name: String,
    kind: String,
    builtin: Option<String>,
    generators: Option<Vec<SpaceFile>>,
    members: Option<Vec<String>>,
    reflections: Option<BTreeMap<String, ReflectionEntry>>,
    bound: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReflectionEntry {
    target: SpaceFile,
    map: BTreeMap<String, String>,
}

fn field(name: &str, msg: impl std::fmt::Display) -> Error {
    Error::input(format!("field {name:?}: {msg}"))
}

/// Named spaces usable wherever a space file is expected.
pub fn named_space(name: &str) -> Option<FinSpace> {
    Some(match name {
        "empty" => FinSpace::empty(),
        "point" | "p1" => FinSpace::point(),
        "sierpinski" | "s" => FinSpace::sierpinski(),
        "discrete2" | "d2" => FinSpace::discrete(2),
        "indiscrete2" | "i2" => FinSpace::indiscrete(2),
        "indiscrete3" | "i3" => FinSpace::indiscrete(3),
        _ => return None,
    })
}

/// A named space or a space file (relative paths resolve against `base`).
pub fn resolve_space(arg: &str, base: &Path) -> Result<FinSpace> {
    if let Some(space) = named_space(arg) {
        return Ok(space);
    }
    let path = base.join(arg);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::input(format!("cannot read space file {}: {e}", path.display())))?;
    parse_space(&text)
}

/// A builtin name, `seh:<space>[,<space>...]`, or a subcategory spec file.
pub fn resolve_subcat(name: &str, base: &Path) -> Result<SubcatSpec> {
    if let Some(b) = Builtin::parse(name) {
        return Ok(SubcatSpec::builtin(b));
    }
    if let Some(list) = name.strip_prefix("seh:") {
        let generators = list
            .split(',')
            .map(|g| resolve_space(g.trim(), base).map(Arc::new))
            .collect::<Result<Vec<_>>>()?;
        return SubcatSpec::seh(name, generators);
    }
    if name.ends_with(".json") {
        return load_subcat(&base.join(name));
    }
    Err(Error::input(format!("unknown subcategory {name:?}")))
}

pub fn load_subcat(path: &Path) -> Result<SubcatSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read subcategory file {}: {e}", path.display())))?;
    parse_subcat(&text)
}

pub fn parse_subcat(json: &str) -> Result<SubcatSpec> {
    let file: SubcatFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let kind = match file.kind.as_str() {
        "builtin" => {
            let name = file.builtin.as_deref().ok_or_else(|| field("builtin", "required for kind builtin"))?;
            SubcatKind::Builtin(
                Builtin::parse(name).ok_or_else(|| field("builtin", format!("unknown builtin {name:?}")))?,
            )
        }
        "seh" => {
            let gens = file.generators.as_ref().ok_or_else(|| field("generators", "required for kind seh"))?;
            if gens.is_empty() {
                return Err(field("generators", "must not be empty"));
            }
            let generators = gens
                .iter()
                .map(|g| g.to_space().map(Arc::new).map_err(|e| field("generators", e)))
                .collect::<Result<Vec<_>>>()?;
            SubcatKind::Seh { generators }
        }
        "predicate-table" => SubcatKind::PredicateTable { members: members(&file)? },
        "reflector-table" | "weak-reflector-table" => {
            let reflections = reflections(&file)?;
            let members = match &file.members {
                Some(_) => members(&file)?,
                None => reflections.values().map(|r| canonical_form(&r.target)).collect(),
            };
            for (source, r) in &reflections {
                if !members.contains(&canonical_form(&r.target)) {
                    return Err(field("reflections", format!("target for {source} is not a member")));
                }
            }
            SubcatKind::ReflectorTable { members, reflections, weak: file.kind == "weak-reflector-table" }
        }
        other => return Err(field("kind", format!("unknown kind {other:?}"))),
    };
    let mut spec = SubcatSpec::new(file.name, kind);
    if let Some(b) = file.bound {
        spec = spec.with_bound(b);
    }
    Ok(spec)
}

fn members(file: &SubcatFile) -> Result<BTreeSet<String>> {
    let list = file.members.as_ref().ok_or_else(|| field("members", "required for this kind"))?;
    list.iter()
        .map(|m| parse_canonical(m).map(|_| m.clone()).map_err(|e| field("members", e)))
        .collect()
}

fn reflections(file: &SubcatFile) -> Result<BTreeMap<String, TableReflection>> {
    let table = file.reflections.as_ref().ok_or_else(|| field("reflections", "required for this kind"))?;
    let mut out = BTreeMap::new();
    for (source, entry) in table {
        let dom = Arc::new(parse_canonical(source).map_err(|e| field("reflections", e))?);
        let target = Arc::new(entry.target.to_space().map_err(|e| field("reflections", e))?);
        let pairs: Vec<(&str, &str)> = entry.map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let map = ContMap::from_labels(dom, target.clone(), &pairs)
            .map_err(|e| field("reflections", format!("{source}: {e}")))?;
        out.insert(source.clone(), TableReflection { target, map: map.graph().to_vec() });
    }
    Ok(out)
}
