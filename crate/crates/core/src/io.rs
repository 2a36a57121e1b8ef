//! JSON file formats for frames and arrangements.
//!
//! Frame: `{"dim": d, "scalars": "rational"|"float", "vectors": [["p/q", ...], ...]}`.
//! Arrangement: `{"dim": d, "subspaces": [{"normal": [...]} | {"basis": [[...], ...]}]}`,
//! where each basis entry is one spanning vector. Scalars are strings such as
//! `"3"`, `"-2/7"` or `"0.25"`; plain JSON numbers are accepted too.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Backend, Field, Rational};
use crate::frames::Frame;
use crate::linalg::{Matrix, Vector};
use crate::subspaces::{Arrangement, Representation, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarsTag {
    Rational,
    Float,
}

impl From<ScalarsTag> for Backend {
    fn from(tag: ScalarsTag) -> Backend {
        match tag {
            ScalarsTag::Rational => Backend::Exact,
            ScalarsTag::Float => Backend::Float,
        }
    }
}

impl From<Backend> for ScalarsTag {
    fn from(b: Backend) -> ScalarsTag {
        match b {
            Backend::Exact => ScalarsTag::Rational,
            Backend::Float => ScalarsTag::Float,
        }
    }
}

fn default_scalars() -> ScalarsTag {
    ScalarsTag::Rational
}

fn is_none<T>(v: &Option<T>) -> bool {
    v.is_none()
}

/// Frame file contents with scalars still in text form, so one file can be
/// loaded into either backend.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    #[serde(default, skip_serializing_if = "is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default = "default_scalars")]
    pub scalars: ScalarsTag,
    pub vectors: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SubspaceEntry {
    Normal(Vec<Value>),
    Basis(Vec<Vec<Value>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    #[serde(default, skip_serializing_if = "is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default = "default_scalars")]
    pub scalars: ScalarsTag,
    pub subspaces: Vec<SubspaceEntry>,
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what} file, line {} column {}: {e}", e.line(), e.column()))
}

fn scalar<T: Field>(v: &Value, at: &str) -> Result<T> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => {
            return Err(Error::Parse(format!(
                "{at}: expected a number or string, found {other}"
            )))
        }
    };
    T::parse_scalar(&text).map_err(|e| Error::Parse(format!("{at}: {e}")))
}

fn vector<T: Field>(values: &[Value], dim: usize, at: &str) -> Result<Vector<T>> {
    if values.len() != dim {
        return Err(Error::Parse(format!(
            "{at}: expected {dim} entries, found {}",
            values.len()
        )));
    }
    values
        .iter()
        .enumerate()
        .map(|(j, v)| scalar(v, &format!("{at}[{j}]")))
        .collect::<Result<Vec<T>>>()
        .map(Vector::new)
}

fn render<T: Field>(v: &Vector<T>) -> Vec<Value> {
    v.iter().map(|c| Value::String(c.render())).collect()
}

impl FrameFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error("frame", e))
    }

    pub fn backend(&self) -> Backend {
        self.scalars.into()
    }

    pub fn build<T: Field>(&self) -> Result<Frame<T>> {
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| vector(v, self.dim, &format!("vectors[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Frame::new(self.dim, vectors)
    }

    pub fn from_frame<T: Field>(frame: &Frame<T>, name: Option<&str>) -> Self {
        FrameFile {
            name: name.map(String::from),
            dim: frame.dim(),
            scalars: T::BACKEND.into(),
            vectors: frame.vectors().iter().map(render).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("frame files serialize")
    }
}

impl ArrangementFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_error("arrangement", e))
    }

    pub fn backend(&self) -> Backend {
        self.scalars.into()
    }

    pub fn build<T: Field>(&self) -> Result<Arrangement<T>> {
        let d = self.dim;
        let subspaces = self
            .subspaces
            .iter()
            .enumerate()
            .map(|(i, entry)| {
                let at = format!("subspaces[{i}]");
                let w = match entry {
                    SubspaceEntry::Normal(n) => Subspace::hyperplane(vector(n, d, &format!("{at}.normal"))?),
                    SubspaceEntry::Basis(vs) => {
                        let cols = vs
                            .iter()
                            .enumerate()
                            .map(|(j, v)| vector(v, d, &format!("{at}.basis[{j}]")))
                            .collect::<Result<Vec<_>>>()?;
                        Subspace::span_of(d, &cols)
                    }
                };
                w.map_err(|e| Error::InvalidInput(format!("{at}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(d, subspaces)
    }

    pub fn from_arrangement<T: Field>(arr: &Arrangement<T>, name: Option<&str>) -> Self {
        let subspaces = arr
            .subspaces()
            .iter()
            .map(|w| match w.representation() {
                Representation::Normal(n) => SubspaceEntry::Normal(render(n)),
                Representation::Basis(b) => SubspaceEntry::Basis(b.columns().iter().map(render).collect()),
            })
            .collect();
        ArrangementFile {
            name: name.map(String::from),
            dim: arr.dim(),
            scalars: T::BACKEND.into(),
            subspaces,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("arrangement files serialize")
    }
}

/// Parses a vector given on the command line as `1,2,-3/4` or as separate words.
pub fn parse_vector<T: Field>(words: &[String]) -> Result<Vector<T>> {
    let entries = words
        .iter()
        .flat_map(|w| w.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(T::parse_scalar)
        .collect::<Result<Vec<T>>>()?;
    if entries.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    Ok(Vector::new(entries))
}

/// Entries rendered as JSON strings.
pub fn vector_json<T: Field>(v: &Vector<T>) -> Value {
    Value::Array(render(v))
}

/// Rows rendered as nested JSON string arrays.
pub fn matrix_json<T: Field>(m: &Matrix<T>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| Value::String(m.get(i, j).render())).collect()))
            .collect(),
    )
}

/// 0-based indices shifted to the 1-based form used in reports.
pub fn one_based(indices: &[usize]) -> Value {
    Value::Array(indices.iter().map(|i| Value::from(i + 1)).collect())
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(r.render())
}
