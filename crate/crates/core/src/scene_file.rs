//! The on-disk scene format (TOML, schema version 1).
//!
//! ```toml
//! schema = 1
//! variables = ["x1", "x2", "y1", "y2"]
//! hypersurface = "x1*y1 + x2*y2"
//!
//! [field]
//! kind = "rational"          # or: kind = "prime", p = 7
//!
//! [[centers]]
//! name = "X"
//! vanishing = ["y1", "y2"]
//! # offsets = { y1 = "1" }   # optional: the center is y1 = 1, y2 = 0
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::SceneError;
use crate::geometry::{Center, Scene};
use crate::ideal::Engine;
use crate::monomial::MonomialOrder;
use crate::parse::{is_identifier, parse_expression};
use crate::scalar::Field;

pub const SCENE_SCHEMA_VERSION: u32 = 1;

fn rational() -> Field {
    Field::Rational
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub schema: u32,
    pub variables: Vec<String>,
    pub hypersurface: String,
    #[serde(default = "rational")]
    pub field: Field,
    #[serde(default)]
    pub centers: Vec<CenterSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterSpec {
    pub name: String,
    pub vanishing: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub offsets: BTreeMap<String, String>,
}

impl SceneFile {
    pub fn from_toml(text: &str) -> Result<Self, SceneError> {
        let file: SceneFile = toml::from_str(text).map_err(|e| SceneError::Syntax(e.to_string()))?;
        if file.schema != SCENE_SCHEMA_VERSION {
            return Err(SceneError::Version(file.schema));
        }
        Ok(file)
    }

    /// The file that reads back as `scene`, with the hypersurface in
    /// canonical form.
    pub fn from_scene(scene: &Scene) -> Self {
        let names = scene.names();
        SceneFile {
            schema: SCENE_SCHEMA_VERSION,
            variables: names.to_vec(),
            hypersurface: scene.hypersurface().render(names, MonomialOrder::Grevlex),
            field: scene.ring().field,
            centers: scene
                .centers()
                .iter()
                .map(|c| CenterSpec {
                    name: c.name.clone(),
                    vanishing: c.normal().iter().map(|&i| names[i].clone()).collect(),
                    offsets: c
                        .normal()
                        .iter()
                        .zip(c.offsets())
                        .filter(|(_, o)| !o.is_zero())
                        .map(|(&i, o)| (names[i].clone(), o.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scene files always serialize")
    }

    /// Validates names and the field, parses every expression, and builds a
    /// [`Scene`] whose invariants have been checked with `engine`.
    pub fn to_scene(&self, engine: &Engine) -> Result<Scene, SceneError> {
        let field = match self.field {
            Field::Rational => Field::Rational,
            Field::Prime { p } => Field::prime(p)?,
        };
        if self.variables.is_empty() {
            return Err(SceneError::NoVariables);
        }
        for (i, v) in self.variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(SceneError::BadVariableName(v.clone()));
            }
            if self.variables[..i].contains(v) {
                return Err(SceneError::DuplicateVariable(v.clone()));
            }
        }
        let names = self.variables.clone();
        let f = parse_expression(&self.hypersurface, &names, field)?;

        let mut centers = Vec::with_capacity(self.centers.len());
        for spec in &self.centers {
            let mut vanishing = Vec::with_capacity(spec.vanishing.len());
            for v in &spec.vanishing {
                let idx =
                    names
                        .iter()
                        .position(|n| n == v)
                        .ok_or_else(|| SceneError::UnknownCenterVariable {
                            center: spec.name.clone(),
                            var: v.clone(),
                        })?;
                if vanishing.contains(&idx) {
                    return Err(SceneError::DuplicateCenterVariable {
                        center: spec.name.clone(),
                        var: v.clone(),
                    });
                }
                vanishing.push(idx);
            }
            for var in spec.offsets.keys() {
                if !spec.vanishing.contains(var) {
                    return Err(SceneError::UnknownCenterVariable {
                        center: spec.name.clone(),
                        var: var.clone(),
                    });
                }
            }
            let mut offsets = Vec::with_capacity(vanishing.len());
            for v in &spec.vanishing {
                let value = match spec.offsets.get(v) {
                    None => field.zero(),
                    Some(text) => {
                        let p =
                            parse_expression(text, &names, field).map_err(|error| SceneError::Offset {
                                center: spec.name.clone(),
                                var: v.clone(),
                                error,
                            })?;
                        if !p.is_constant() {
                            return Err(SceneError::NonConstantOffset {
                                center: spec.name.clone(),
                                var: v.clone(),
                            });
                        }
                        p.constant_term()
                    }
                };
                offsets.push(value);
            }
            centers.push(Center::translated(spec.name.clone(), vanishing, offsets));
        }
        Scene::validated(names, f, centers, engine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = r#"
schema = 1
variables = ["x1", "x2", "y1", "y2"]
hypersurface = "x1*y1 + x2*y2"

[field]
kind = "rational"

[[centers]]
name = "X"
vanishing = ["y1", "y2"]
"#;

    #[test]
    fn reads_toy_scene() {
        let file = SceneFile::from_toml(TOY).unwrap();
        let scene = file.to_scene(&Engine::new()).unwrap();
        assert_eq!(scene.nvars(), 4);
        assert_eq!(scene.centers()[0].normal(), &[2, 3]);
        let again = SceneFile::from_toml(&file.to_toml()).unwrap();
        assert_eq!(again, file);
        let back = SceneFile::from_scene(&scene).to_scene(&Engine::new()).unwrap();
        assert_eq!(back, scene);
    }

    #[test]
    fn field_defaults_to_rationals() {
        let file = SceneFile::from_toml("schema = 1\nvariables = [\"x\"]\nhypersurface = \"x\"\n").unwrap();
        assert_eq!(file.field, Field::Rational);
    }

    #[test]
    fn validation_errors() {
        let e = Engine::new();
        let bad = |text: &str| {
            SceneFile::from_toml(text)
                .and_then(|f| f.to_scene(&e))
                .unwrap_err()
        };
        assert!(matches!(
            bad("schema = 2\nvariables=[\"x\"]\nhypersurface=\"x\""),
            SceneError::Version(2)
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"x\"]"),
            SceneError::Syntax(_)
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"x\", \"x\"]\nhypersurface=\"x\""),
            SceneError::DuplicateVariable(_)
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"2x\"]\nhypersurface=\"1\""),
            SceneError::BadVariableName(_)
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"x\"]\nhypersurface=\"x\"\nfield={kind=\"prime\", p=6}"),
            SceneError::Field(_)
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"x\"]\nhypersurface=\"x^(-1)\""),
            SceneError::Expression(_)
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"x\"]\nhypersurface=\"x\"\n[[centers]]\nname=\"C\"\nvanishing=[\"z\"]"),
            SceneError::UnknownCenterVariable { .. }
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"x\",\"y\"]\nhypersurface=\"x*y\"\n[[centers]]\nname=\"A\"\nvanishing=[\"x\"]\n[[centers]]\nname=\"B\"\nvanishing=[\"y\"]"),
            SceneError::OverlappingCenters(..)
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"x\",\"y\"]\nhypersurface=\"x\"\n[[centers]]\nname=\"A\"\nvanishing=[\"y\"]"),
            SceneError::CenterNotContained(_)
        ));
        assert!(matches!(
            bad("schema = 1\nvariables=[\"x\"]\nhypersurface=\"x\"\n[[centers]]\nname=\"A\"\nvanishing=[\"x\"]\noffsets={x=\"x\"}"),
            SceneError::NonConstantOffset { .. }
        ));
    }

    #[test]
    fn offsets_translate_centers() {
        let text = r#"
schema = 1
variables = ["x"]
hypersurface = "x^2*(x - 1)^2"
[[centers]]
name = "P0"
vanishing = ["x"]
[[centers]]
name = "P1"
vanishing = ["x"]
offsets = { x = "1" }
"#;
        let scene = SceneFile::from_toml(text)
            .unwrap()
            .to_scene(&Engine::new())
            .unwrap();
        assert!(!scene.centers()[1].is_through_origin());
    }
}
