//! The persisted point-set format: exact coefficient vectors in JSON.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use patternforge_core::constructions::BuildReport;
use patternforge_core::exactnum::{format_rational, parse_rational, CycloNum};
use patternforge_core::verify::Summary;
use patternforge_core::{Pattern, PointSet};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: &str = "pattern-pointset/1";

/// A point set over `Q(ζ_M)`. Each point is its coefficient vector in the
/// power basis `1, ζ_M, …, ζ_M^{φ(M)-1}`, every coefficient a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSetDocument {
    pub format_version: String,
    pub conductor: u32,
    pub points: Vec<Vec<String>>,
    #[serde(default)]
    pub metadata: Metadata,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksSummary>,
    /// Points of the pattern the recipe counts, in the document's conductor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksSummary {
    pub passed: usize,
    pub failed: usize,
}

impl From<Summary> for ChecksSummary {
    fn from(s: Summary) -> ChecksSummary {
        ChecksSummary { passed: s.passed, failed: s.failed }
    }
}

fn encode(p: &CycloNum) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn encode_all(set: &PointSet) -> Vec<Vec<String>> {
    set.iter().map(encode).collect()
}

fn decode(conductor: u32, rows: &[Vec<String>]) -> CliResult<Vec<CycloNum>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let coeffs = row
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(format!("point {i}: {e}")))?;
            CycloNum::from_coeffs(conductor, &coeffs).map_err(|e| CliError::Usage(format!("point {i}: {e}")))
        })
        .collect()
}

impl PointSetDocument {
    pub fn from_set(set: &PointSet) -> PointSetDocument {
        PointSetDocument {
            format_version: FORMAT_VERSION.into(),
            conductor: set.order(),
            points: encode_all(set),
            metadata: Metadata::default(),
        }
    }

    pub fn from_pattern(pattern: &Pattern) -> PointSetDocument {
        PointSetDocument::from_set(pattern.base())
    }

    pub fn from_report(report: &BuildReport) -> CliResult<PointSetDocument> {
        let mut doc = PointSetDocument::from_set(&report.output);
        let pattern = report.pattern.lift(report.output.order())?;
        let mut params: BTreeMap<String, String> = report.recipe.params.iter().cloned().collect();
        for g in &report.params {
            params.insert(g.name.clone(), g.value.to_string());
        }
        doc.metadata = Metadata {
            recipe: Some(report.recipe.name.clone()),
            params,
            seed: Some(report.seed),
            checks: Some(report.checks.summary().into()),
            pattern: Some(encode_all(pattern.base())),
            notes: report.notes.clone(),
        };
        Ok(doc)
    }

    fn check_version(&self) -> CliResult<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(CliError::Usage(format!(
                "unsupported format_version {:?}, expected {FORMAT_VERSION:?}",
                self.format_version
            )));
        }
        Ok(())
    }

    pub fn to_set(&self) -> CliResult<PointSet> {
        self.check_version()?;
        Ok(PointSet::new(self.conductor, decode(self.conductor, &self.points)?)?)
    }

    /// The document's points read as a pattern.
    pub fn to_pattern(&self) -> CliResult<Pattern> {
        Ok(Pattern::new(self.to_set()?)?)
    }

    /// The pattern recorded by the recipe that built this set, if any.
    pub fn recorded_pattern(&self) -> CliResult<Option<Pattern>> {
        self.check_version()?;
        match &self.metadata.pattern {
            Some(rows) => Ok(Some(Pattern::from_points(self.conductor, decode(self.conductor, rows)?)?)),
            None => Ok(None),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<PointSetDocument, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn read(path: &Path) -> CliResult<PointSetDocument> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        PointSetDocument::from_json(&text).map_err(|source| CliError::Json { path: path.into(), source })
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        fs::write(path, self.to_json() + "\n").map_err(|source| CliError::Io { path: path.into(), source })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use patternforge_core::constructions::{equilateral15, Sampler};

    #[test]
    fn round_trip_is_exact() {
        let r = equilateral15(&mut Sampler::new(7)).unwrap();
        let doc = PointSetDocument::from_report(&r).unwrap();
        let back = PointSetDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_set().unwrap(), r.output);
        assert_eq!(back.recorded_pattern().unwrap().unwrap().base().len(), 3);
    }

    #[test]
    fn rejects_other_versions_and_bad_rows() {
        let mut doc = PointSetDocument::from_set(&PointSet::new(4, vec![CycloNum::one(4).unwrap()]).unwrap());
        doc.points[0] = vec!["1/0".into(), "0".into()];
        assert!(doc.to_set().is_err());
        doc.points[0] = vec!["1".into()];
        assert!(doc.to_set().is_err());
        doc.format_version = "pattern-pointset/0".into();
        assert!(matches!(doc.to_set(), Err(CliError::Usage(_))));
    }
}
