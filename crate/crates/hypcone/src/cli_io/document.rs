use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};

use super::CliError;
use crate::covering_group::{generator_names, SurfaceRep};
use crate::isometries::Isometry;
use crate::surface_glue::Decomposition;

/// Determinants further than this from 1 are rescaled on load.
const DET_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceShape {
    pub genus: usize,
    pub boundary: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A surface group representation on disk: row-major matrices keyed by
/// generator name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepDocument {
    pub surface: SurfaceShape,
    #[serde(serialize_with = "presentation_order")]
    pub generators: BTreeMap<String, [f64; 4]>,
    #[serde(default)]
    pub metadata: Metadata,
}

fn rank(name: &str) -> (usize, usize) {
    let index = name.get(1..).and_then(|s| s.parse::<usize>().ok()).unwrap_or(usize::MAX);
    match name.chars().next() {
        Some('G') => (0, 2 * index),
        Some('H') => (0, 2 * index + 1),
        Some('C') => (1, index),
        _ => (2, index),
    }
}

fn presentation_order<S: Serializer>(map: &BTreeMap<String, [f64; 4]>, s: S) -> Result<S::Ok, S::Error> {
    let mut entries: Vec<_> = map.iter().collect();
    entries.sort_by_key(|(k, _)| (rank(k), k.as_str()));
    s.collect_map(entries)
}

impl RepDocument {
    pub fn from_json(text: &str, source_name: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::json(source_name, &e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_surface_rep(rep: &SurfaceRep, metadata: Metadata) -> Self {
        let generators = rep.names().into_iter().zip(&rep.generators).map(|(n, g)| (n, g.entries())).collect();
        RepDocument { surface: SurfaceShape { genus: rep.genus, boundary: rep.boundary }, generators, metadata }
    }

    /// Checks the generator names against the standard presentation and
    /// rescales matrices whose determinant drifted, reporting each rescale.
    pub fn to_surface_rep(&self, warnings: &mut Vec<String>) -> Result<SurfaceRep, CliError> {
        let SurfaceShape { genus, boundary } = self.surface;
        let names = generator_names(genus, boundary);
        let mut expected: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut found: Vec<&str> = self.generators.keys().map(String::as_str).collect();
        expected.sort_unstable();
        found.sort_unstable();
        if expected != found {
            return Err(CliError::Precondition(format!(
                "generators {found:?} do not match the presentation for genus {genus}, boundary {boundary}: {expected:?}"
            )));
        }
        let mut gens = Vec::with_capacity(names.len());
        for name in &names {
            let [a, b, c, d] = self.generators[name];
            let det = a * d - b * c;
            if !(det > 0.0) || !det.is_finite() {
                return Err(CliError::Precondition(format!("{name} has determinant {det}")));
            }
            let k = if (det - 1.0).abs() > DET_TOLERANCE {
                warnings.push(format!("{name}: determinant {det} normalized to 1"));
                1.0 / det.sqrt()
            } else {
                1.0
            };
            gens.push(Isometry::new(k * a, k * b, k * c, k * d)?);
        }
        Ok(SurfaceRep::new(genus, boundary, gens)?)
    }
}

pub fn load_decomposition(text: &str, source_name: &str) -> Result<Decomposition, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::json(source_name, &e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const OCTAGON_LIKE: &str = r#"{"surface":{"genus":1,"boundary":1},
        "generators":{"H0":[1,1,0,1],"G0":[2,0,0,0.5],"C0":[1,0,0,1]},
        "metadata":{"description":"test"}}"#;

    #[test]
    fn serializes_in_presentation_order() {
        let doc = RepDocument::from_json(OCTAGON_LIKE, "t").unwrap();
        let text = doc.to_json();
        let (g, h, c) = (text.find("\"G0\"").unwrap(), text.find("\"H0\"").unwrap(), text.find("\"C0\"").unwrap());
        assert!(g < h && h < c);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = RepDocument::from_json("{\n  \"surface\": {\"genus\": 2,,}\n}", "bad.json").unwrap_err();
        match err {
            CliError::Json { line, column, .. } => assert_eq!((line, column), (2, 26)),
            other => panic!("{other:?}"),
        }
        assert_eq!(RepDocument::from_json("[1,", "x").unwrap_err().exit_code(), 4);
    }

    #[test]
    fn names_must_match_presentation() {
        let text = OCTAGON_LIKE.replace("\"C0\"", "\"C1\"");
        let doc = RepDocument::from_json(&text, "t").unwrap();
        assert!(matches!(doc.to_surface_rep(&mut vec![]), Err(CliError::Precondition(_))));
    }

    #[test]
    fn determinants_are_normalized_with_a_warning() {
        let text = OCTAGON_LIKE.replace("[2,0,0,0.5]", "[4,0,0,1]");
        let mut warnings = vec![];
        let rep = RepDocument::from_json(&text, "t").unwrap().to_surface_rep(&mut warnings).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!((rep.g(0).trace() - 2.5).abs() < 1e-12);
        let singular = OCTAGON_LIKE.replace("[2,0,0,0.5]", "[1,1,1,1]");
        assert!(RepDocument::from_json(&singular, "t").unwrap().to_surface_rep(&mut vec![]).is_err());
    }

    proptest! {
        #[test]
        fn reserializing_is_idempotent(entries in prop::array::uniform4(-1e3f64..1e3), seed in any::<u64>()) {
            let mut generators = BTreeMap::new();
            generators.insert("G0".to_string(), entries);
            generators.insert("H0".to_string(), [1.0, 0.0, 0.0, 1.0]);
            generators.insert("C0".to_string(), [entries[3], -entries[1], -entries[2], entries[0]]);
            let doc = RepDocument {
                surface: SurfaceShape { genus: 1, boundary: 1 },
                generators,
                metadata: Metadata { description: None, seed: Some(seed) },
            };
            let once = doc.to_json();
            let parsed = RepDocument::from_json(&once, "p").unwrap();
            prop_assert_eq!(&parsed, &doc);
            prop_assert_eq!(parsed.to_json(), once);
        }
    }
}
