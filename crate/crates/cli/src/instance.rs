//! Instance files: parsing, validation and canonical serialization.

use crate::error::CliError;
use mindiam::geometry::{ConvexPolygon, GeometryError, HalfSpace, HalfSpaceRegion, Point, Region, Vec2};
use mindiam::imprecise::{ImpreciseError, ImpreciseInstance};
use mindiam::mindcs::IndecisiveInstance;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

/// A parsed instance file, as written on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum InstanceFile {
    /// `colors[i]` lists the candidate locations of color `i`.
    Indecisive { d: usize, colors: Vec<Vec<Vec<f64>>> },
    Imprecise { d: usize, regions: Vec<RegionSpec> },
}

/// A region: CCW polygon vertices (planar only) or a half-space system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegionSpec {
    Vertices(Vec<Vec<f64>>),
    HalfSpaces { halfspaces: Vec<HalfSpaceSpec> },
}

/// The half-space `a · x <= b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceSpec {
    pub a: Vec<f64>,
    pub b: f64,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModelTag {
    Indecisive,
    Imprecise,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    model: ModelTag,
    d: usize,
    #[serde(default)]
    colors: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default)]
    regions: Option<Vec<RawRegion>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRegion {
    Vertices(Vec<Vec<f64>>),
    HalfSpaces(RawHalfSpaces),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHalfSpaces {
    halfspaces: Vec<HalfSpaceSpec>,
}

/// A validated instance in solver form.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Indecisive(IndecisiveInstance),
    Imprecise(ImpreciseInstance),
}

impl Model {
    pub fn dimension(&self) -> usize {
        match self {
            Model::Indecisive(i) => i.dimension(),
            Model::Imprecise(i) => i.dimension(),
        }
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::SchemaViolation {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses and validates an instance file.
pub fn parse_instance(bytes: &[u8]) -> Result<InstanceFile, CliError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| CliError::InvalidJson {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let raw: RawInstance = serde_path_to_error::deserialize(&value).map_err(|e| {
        let path = e.path().to_string();
        schema(path, e.into_inner().to_string())
    })?;
    let file = match raw.model {
        ModelTag::Indecisive => {
            if raw.regions.is_some() {
                return Err(schema("regions", "not allowed for the indecisive model"));
            }
            let colors = raw
                .colors
                .ok_or_else(|| schema(".", "missing field `colors`"))?;
            InstanceFile::Indecisive { d: raw.d, colors }
        }
        ModelTag::Imprecise => {
            if raw.colors.is_some() {
                return Err(schema("colors", "not allowed for the imprecise model"));
            }
            let regions = raw
                .regions
                .ok_or_else(|| schema(".", "missing field `regions`"))?
                .into_iter()
                .map(|r| match r {
                    RawRegion::Vertices(v) => RegionSpec::Vertices(v),
                    RawRegion::HalfSpaces(h) => RegionSpec::HalfSpaces {
                        halfspaces: h.halfspaces,
                    },
                })
                .collect();
            InstanceFile::Imprecise { d: raw.d, regions }
        }
    };
    file.build()?;
    Ok(file)
}

fn point(path: String, coords: &[f64], d: usize) -> Result<Point, CliError> {
    if coords.len() != d {
        return Err(CliError::DimensionMismatch {
            path,
            expected: d,
            found: coords.len(),
        });
    }
    Point::new(coords.to_vec()).map_err(|e| schema(path, e.to_string()))
}

impl InstanceFile {
    pub fn dimension(&self) -> usize {
        match self {
            InstanceFile::Indecisive { d, .. } | InstanceFile::Imprecise { d, .. } => *d,
        }
    }

    /// Converts to solver types, reporting the first offending field.
    pub fn build(&self) -> Result<Model, CliError> {
        let d = self.dimension();
        if d == 0 {
            return Err(schema("d", "dimension must be at least 1"));
        }
        match self {
            InstanceFile::Indecisive { colors, .. } => {
                if colors.is_empty() {
                    return Err(schema("colors", "at least one color class is required"));
                }
                let mut classes = Vec::with_capacity(colors.len());
                for (i, class) in colors.iter().enumerate() {
                    if class.is_empty() {
                        return Err(CliError::EmptyColorClass { class: i });
                    }
                    let pts = class
                        .iter()
                        .enumerate()
                        .map(|(j, c)| point(format!("colors[{i}][{j}]"), c, d))
                        .collect::<Result<Vec<_>, _>>()?;
                    classes.push(pts);
                }
                Ok(Model::Indecisive(IndecisiveInstance::new(classes)?))
            }
            InstanceFile::Imprecise { regions, .. } => {
                if regions.is_empty() {
                    return Err(schema("regions", "at least one region is required"));
                }
                let mut built = Vec::with_capacity(regions.len());
                for (i, spec) in regions.iter().enumerate() {
                    built.push(build_region(i, spec, d)?);
                }
                let instance = ImpreciseInstance::new(built).map_err(|e| match e {
                    ImpreciseError::EmptyRegion(r) => CliError::InvalidRegion {
                        region: r,
                        message: "half-spaces have no common point".into(),
                    },
                    ImpreciseError::UnboundedRegion(r) => CliError::InvalidRegion {
                        region: r,
                        message: "half-spaces bound no finite region".into(),
                    },
                    other => other.into(),
                })?;
                Ok(Model::Imprecise(instance))
            }
        }
    }

    pub fn from_indecisive(instance: &IndecisiveInstance) -> Self {
        InstanceFile::Indecisive {
            d: instance.dimension(),
            colors: instance
                .classes()
                .iter()
                .map(|c| c.iter().map(|p| p.coords().to_vec()).collect())
                .collect(),
        }
    }

    pub fn from_polygons(polygons: &[ConvexPolygon]) -> Self {
        InstanceFile::Imprecise {
            d: 2,
            regions: polygons
                .iter()
                .map(|p| RegionSpec::Vertices(p.vertices().iter().map(|v| vec![v.x, v.y]).collect()))
                .collect(),
        }
    }

    /// Canonical JSON: schema field order, numbers rounded to 12
    /// significant digits, integral values written without a fraction.
    pub fn to_canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("instance serializes");
        canonicalize(&mut value);
        value.to_string()
    }
}

fn build_region(i: usize, spec: &RegionSpec, d: usize) -> Result<Region, CliError> {
    match spec {
        RegionSpec::Vertices(vs) => {
            if d != 2 {
                return Err(schema(
                    format!("regions[{i}]"),
                    "vertex lists are only accepted for d = 2; use halfspaces",
                ));
            }
            if vs.is_empty() {
                return Err(schema(format!("regions[{i}]"), "region has no vertices"));
            }
            let mut verts = Vec::with_capacity(vs.len());
            for (j, v) in vs.iter().enumerate() {
                let p = point(format!("regions[{i}][{j}]"), v, 2)?;
                verts.push(Vec2::new(p.x(), p.y()));
            }
            let poly = ConvexPolygon::new(verts).map_err(|e| match e {
                GeometryError::NotCcw => CliError::NotCcw { region: i },
                GeometryError::NotConvex => CliError::NotConvex { region: i },
                other => CliError::InvalidRegion {
                    region: i,
                    message: other.to_string(),
                },
            })?;
            Ok(Region::Polygon(poly))
        }
        RegionSpec::HalfSpaces { halfspaces } => {
            if halfspaces.is_empty() {
                return Err(schema(format!("regions[{i}].halfspaces"), "no half-spaces given"));
            }
            let mut rows = Vec::with_capacity(halfspaces.len());
            for (j, h) in halfspaces.iter().enumerate() {
                if h.a.len() != d {
                    return Err(CliError::DimensionMismatch {
                        path: format!("regions[{i}].halfspaces[{j}].a"),
                        expected: d,
                        found: h.a.len(),
                    });
                }
                rows.push(HalfSpace {
                    normal: h.a.clone(),
                    offset: h.b,
                });
            }
            let region = HalfSpaceRegion::new(d, rows).map_err(|e| CliError::InvalidRegion {
                region: i,
                message: e.to_string(),
            })?;
            Ok(Region::HalfSpaces(region))
        }
    }
}

/// Rounds `x` to 12 significant digits.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn canonical_number(x: f64) -> Value {
    let r = round_sig12(x);
    if r.fract() == 0.0 && r.abs() < 9.0e15 {
        Value::Number(Number::from(r as i64))
    } else {
        Number::from_f64(r).map_or(Value::Null, Value::Number)
    }
}

/// Rewrites every number in place in canonical form.
pub fn canonicalize(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if !(n.is_u64() || n.is_i64()) {
                    *value = canonical_number(f);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(canonicalize),
        Value::Object(map) => map.values_mut().for_each(canonicalize),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_rounding() {
        assert_eq!(round_sig12(0.1 + 0.2), 0.3);
        assert_eq!(round_sig12(-0.0), 0.0);
        assert_eq!(round_sig12(123456789.123456789), 123456789.123);
        assert_eq!(canonical_number(5.0).to_string(), "5");
        assert_eq!(canonical_number(2.5).to_string(), "2.5");
    }

    #[test]
    fn float_coordinates_print_as_integers_when_integral() {
        let file = InstanceFile::Indecisive {
            d: 1,
            colors: vec![vec![vec![3.0], vec![0.1 + 0.2]]],
        };
        assert_eq!(
            file.to_canonical_json(),
            r#"{"model":"indecisive","d":1,"colors":[[[3],[0.3]]]}"#
        );
    }
}
