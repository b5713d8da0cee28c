//! JSON space files: `{"points": [..], "opens": [[..], ..]}`.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fintop::construct::Subobject;
use crate::fintop::map::ContMap;
use crate::fintop::space::FinSpace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceFile {
    /// Canonical file form: points sorted, each open sorted, opens ordered by
    /// cardinality and then lexicographically.
    pub fn from_space(space: &FinSpace) -> Self {
        let mut points = space.labels().to_vec();
        points.sort();
        let mut opens: Vec<Vec<String>> = space
            .opens()
            .into_iter()
            .map(|o| {
                let mut names = space.names(o);
                names.sort();
                names
            })
            .collect();
        opens.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        SpaceFile { points, opens }
    }

    pub fn to_space(&self) -> Result<FinSpace> {
        FinSpace::from_opens(&self.points, &self.opens)
    }
}

pub fn parse_space(json: &str) -> Result<FinSpace> {
    let file: SpaceFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_space()
}

pub fn space_to_json(space: &FinSpace) -> String {
    serde_json::to_string(&SpaceFile::from_space(space)).expect("space files serialize")
}

impl Serialize for FinSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SpaceFile::from_space(self).serialize(serializer)
    }
}

/// Maps serialize as their label graph, `[a↦b c↦d]`.
impl Serialize for ContMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Subobjects serialize as their sorted carrier labels.
impl Serialize for Subobject {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut labels = self.labels();
        labels.sort();
        labels.serialize(serializer)
    }
}
