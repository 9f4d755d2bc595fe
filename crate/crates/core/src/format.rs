//! JSON file format for algebras: sparse tensors, dense matrices, scalars as strings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hlr::{AlgebraData, HlrData, HlrError, Tensor3};
use crate::linalg::{Field, LinalgError, Matrix, Scalar, Subspace};

/// `[i, j, k, "p/q"]`
pub type Triple = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: Field,
    #[serde(rename = "A")]
    pub a: AlgebraBlock,
    #[serde(rename = "L")]
    pub l: LieBlock,
    #[serde(rename = "H")]
    pub h: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Options>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub dim: usize,
    pub labels: Vec<String>,
    pub mult: Vec<Triple>,
    pub phi: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieBlock {
    pub dim: usize,
    pub labels: Vec<String>,
    pub bracket: Vec<Triple>,
    pub psi: Vec<Vec<String>>,
    pub action: Vec<Triple>,
    pub anchor: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_budget: Option<usize>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: cannot parse scalar {text:?}")]
    Scalar { path: String, text: String },
    #[error("{path}: index {index} out of range for dimension {bound}")]
    Index { path: String, index: usize, bound: usize },
    #[error("{path}: expected length {expected}, found {found}")]
    Shape { path: String, expected: usize, found: usize },
    #[error("invalid field override {0:?}: use \"rational\", \"prime:p\" or a prime p")]
    FieldOverride(String),
    #[error(transparent)]
    Field(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] HlrError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let text = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = text.strip_suffix(&suffix).unwrap_or(&text).to_string();
        FormatError::Json { line: e.line(), column: e.column(), message }
    }
}

/// An algebra with its Cartan subalgebra, ready for the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub data: HlrData,
    pub h: Subspace,
    pub options: Options,
}

/// Parses the value of a field override: `rational`, `prime:p` or `p`.
pub fn parse_field(text: &str) -> Result<Field, FormatError> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("rational") || t == "Q" {
        return Ok(Field::Rational);
    }
    let digits = t.strip_prefix("prime:").unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| FormatError::FieldOverride(text.into()))?;
    Ok(Field::prime(p)?)
}

pub fn parse(text: &str, field_override: Option<Field>) -> Result<Loaded, FormatError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.load(field_override)
}

struct Reader {
    field: Field,
}

impl Reader {
    fn scalar(&self, path: &str, text: &str) -> Result<Scalar, FormatError> {
        self.field.parse(text).map_err(|_| FormatError::Scalar { path: path.into(), text: text.into() })
    }

    fn vector(&self, path: &str, v: &[String], len: usize) -> Result<Vec<Scalar>, FormatError> {
        if v.len() != len {
            return Err(FormatError::Shape { path: path.into(), expected: len, found: v.len() });
        }
        v.iter().enumerate().map(|(i, s)| self.scalar(&format!("{path}[{i}]"), s)).collect()
    }

    fn matrix(&self, path: &str, rows: &[Vec<String>], n: usize) -> Result<Matrix, FormatError> {
        if rows.len() != n {
            return Err(FormatError::Shape { path: path.into(), expected: n, found: rows.len() });
        }
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| self.vector(&format!("{path}[{i}]"), r, n))
            .collect::<Result<Vec<_>, _>>()?;
        if n == 0 {
            return Ok(Matrix::zeros(self.field, 0, 0));
        }
        Ok(Matrix::from_rows(self.field, rows)?)
    }

    fn tensor(&self, path: &str, triples: &[Triple], dims: [usize; 3]) -> Result<Tensor3, FormatError> {
        let mut t = Tensor3::zeros(self.field, dims[0], dims[1], dims[2]);
        for (n, (i, j, k, s)) in triples.iter().enumerate() {
            let here = format!("{path}[{n}]");
            for (index, bound) in [(*i, dims[0]), (*j, dims[1]), (*k, dims[2])] {
                if index >= bound {
                    return Err(FormatError::Index { path: here, index, bound });
                }
            }
            let v = self.scalar(&here, s)?;
            let sum = t.get(*i, *j, *k) + &v;
            t.set(*i, *j, *k, sum);
        }
        Ok(t)
    }
}

fn check_labels(path: &str, labels: &[String], dim: usize) -> Result<(), FormatError> {
    if labels.len() != dim {
        return Err(FormatError::Shape { path: path.into(), expected: dim, found: labels.len() });
    }
    Ok(())
}

impl AlgebraFile {
    pub fn load(&self, field_override: Option<Field>) -> Result<Loaded, FormatError> {
        let field = match field_override.unwrap_or(self.field) {
            Field::Prime { p } => Field::prime(p)?,
            f => f,
        };
        let r = Reader { field };
        let (m, n) = (self.a.dim, self.l.dim);
        check_labels("A.labels", &self.a.labels, m)?;
        check_labels("L.labels", &self.l.labels, n)?;
        let a = AlgebraData::new(
            field,
            self.a.labels.clone(),
            r.tensor("A.mult", &self.a.mult, [m, m, m])?,
            r.matrix("A.phi", &self.a.phi, m)?,
        )?;
        if self.l.anchor.len() != n {
            return Err(FormatError::Shape { path: "L.anchor".into(), expected: n, found: self.l.anchor.len() });
        }
        let anchor = self
            .l
            .anchor
            .iter()
            .enumerate()
            .map(|(i, rows)| r.matrix(&format!("L.anchor[{i}]"), rows, m))
            .collect::<Result<Vec<_>, _>>()?;
        let data = HlrData::new(
            a,
            self.l.labels.clone(),
            r.tensor("L.bracket", &self.l.bracket, [n, n, n])?,
            r.matrix("L.psi", &self.l.psi, n)?,
            r.tensor("L.action", &self.l.action, [m, n, n])?,
            anchor,
        )?;
        let vectors = self
            .h
            .iter()
            .enumerate()
            .map(|(i, v)| r.vector(&format!("H[{i}]"), v, n))
            .collect::<Result<Vec<_>, _>>()?;
        let h = Subspace::span(field, n, vectors);
        Ok(Loaded { data, h, options: self.options.unwrap_or_default() })
    }

    /// Canonical form: sorted nonzero triples, lowest-terms scalars, the
    /// reduced echelon basis of `H`.
    pub fn export(data: &HlrData, h: &Subspace, options: Option<Options>) -> Self {
        let strings = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>();
        let dense = |m: &Matrix| m.row_vecs().iter().map(|r| strings(r)).collect::<Vec<_>>();
        let sparse = |t: &Tensor3| t.nonzero().map(|([i, j, k], v)| (i, j, k, v.to_string())).collect::<Vec<_>>();
        AlgebraFile {
            field: data.field(),
            a: AlgebraBlock {
                dim: data.a.dim(),
                labels: data.a.labels.clone(),
                mult: sparse(&data.a.mult),
                phi: dense(&data.a.phi),
            },
            l: LieBlock {
                dim: data.dim(),
                labels: data.labels.clone(),
                bracket: sparse(&data.bracket),
                psi: dense(&data.psi),
                action: sparse(&data.action),
                anchor: data.anchor.iter().map(dense).collect(),
            },
            h: h.basis().iter().map(|v| strings(v)).collect(),
            options: options.filter(|o| *o != Options::default()),
        }
    }

    /// Pretty JSON with arrays of scalars kept on one line.
    pub fn to_canonical_string(&self) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        let mut out = String::new();
        write_value(&mut out, &value, 0);
        out.push('\n');
        out
    }
}

fn write_value(out: &mut String, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalar array"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalar")),
    }
}

/// `export(import(text))`.
pub fn canonicalize(text: &str) -> Result<String, FormatError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    let loaded = file.load(None)?;
    Ok(AlgebraFile::export(&loaded.data, &loaded.h, Some(loaded.options)).to_canonical_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build, IDS};

    #[test]
    fn corpus_round_trip() {
        for id in IDS {
            let e = build(id).unwrap();
            let text = AlgebraFile::export(&e.data, &e.h, None).to_canonical_string();
            let loaded = parse(&text, None).unwrap();
            assert_eq!(loaded.data, e.data, "{id}");
            assert_eq!(loaded.h, e.h, "{id}");
            assert_eq!(canonicalize(&text).unwrap(), text, "{id}");
        }
    }

    #[test]
    fn canonical_form_sorts_and_reduces() {
        let e = build("E1").unwrap();
        let mut file = AlgebraFile::export(&e.data, &e.h, None);
        file.l.bracket.reverse();
        file.l.bracket[0].3 = "-2/2".into();
        file.h = vec![vec!["3".into(), "0".into(), "0".into()]];
        let text = serde_json::to_string(&file).unwrap();
        let canonical = canonicalize(&text).unwrap();
        assert_eq!(canonical, AlgebraFile::export(&e.data, &e.h, None).to_canonical_string());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("{\n  \"field\": {\"kind\": \"rational\"},\n  oops\n}", None).unwrap_err();
        match err {
            FormatError::Json { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn rejects_bad_scalars_and_indices() {
        let e = build("E1").unwrap();
        let mut file = AlgebraFile::export(&e.data, &e.h, None);
        file.l.psi[0][0] = "1/0".into();
        assert!(matches!(file.load(None), Err(FormatError::Scalar { .. })));
        let mut file = AlgebraFile::export(&e.data, &e.h, None);
        file.l.bracket.push((0, 0, 3, "1".into()));
        assert!(matches!(file.load(None), Err(FormatError::Index { index: 3, bound: 3, .. })));
    }

    #[test]
    fn field_override() {
        assert_eq!(parse_field("rational").unwrap(), Field::Rational);
        assert_eq!(parse_field("prime:5").unwrap(), Field::Prime { p: 5 });
        assert_eq!(parse_field("7").unwrap(), Field::Prime { p: 7 });
        assert!(parse_field("8").is_err());
        assert!(parse_field("prime:x").is_err());
        let e = build("E6").unwrap();
        let text = AlgebraFile::export(&e.data, &e.h, None).to_canonical_string();
        let loaded = parse(&text, Some(Field::Prime { p: 5 })).unwrap();
        assert_eq!(loaded.data.field(), Field::Prime { p: 5 });
    }
}
