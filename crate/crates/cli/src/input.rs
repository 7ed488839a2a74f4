//! JSON input: an inline object or a path to a file holding one. Field
//! elements are integers or strings in the field's expression syntax.

use std::fs;

use heis_core::field::spec::{parse_field_spec, AnyField, ParsedSpec};
use heis_core::{Field, Matrix, Subspace};
use serde_json::Value;

use crate::error::CliError;

pub fn field(spec: &str) -> Result<AnyField, CliError> {
    match parse_field_spec(spec)? {
        ParsedSpec::Field(s) => Ok(s.build()?),
        ParsedSpec::Quad { .. } => Err(CliError::parse(format!(
            "{spec}: quadratic extensions are not accepted as --field; pass the base field"
        ))),
    }
}

pub fn load(arg: Option<&str>) -> Result<Value, CliError> {
    let arg = arg.ok_or_else(|| CliError::parse("this command needs --input"))?;
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::parse(format!("{arg}: {e}")))?
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::parse(format!("input JSON: {e}")))?;
    if !value.is_object() {
        return Err(CliError::parse("input JSON must be an object"));
    }
    Ok(value)
}

pub fn get<'a>(input: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    input.get(key).ok_or_else(|| CliError::parse(format!("input is missing \"{key}\"")))
}

pub fn elem<F: Field>(f: &F, v: &Value) -> Result<F::Elem, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|n| f.from_int(n))
            .ok_or_else(|| CliError::parse(format!("{n} is not an integer; use a string such as \"1/2\""))),
        Value::String(s) => Ok(f.parse(s)?),
        other => Err(CliError::parse(format!("expected a field element, got {other}"))),
    }
}

pub fn vector<F: Field>(f: &F, v: &Value, len: usize) -> Result<Vec<F::Elem>, CliError> {
    let items = v.as_array().ok_or_else(|| CliError::parse(format!("expected an array, got {v}")))?;
    if items.len() != len {
        return Err(CliError::dimension(format!("expected {len} coordinates, got {}", items.len())));
    }
    items.iter().map(|x| elem(f, x)).collect()
}

/// The subspace of Λ²(K⁴) spanned by `"basis"`, in coordinates
/// (s01, s02, s03, s12, s13, s23).
pub fn subspace<F: Field>(f: &F, input: &Value) -> Result<Subspace<F>, CliError> {
    let rows = get(input, "basis")?
        .as_array()
        .ok_or_else(|| CliError::parse("\"basis\" must be an array of vectors"))?;
    let vectors = rows.iter().map(|r| vector(f, r, 6)).collect::<Result<Vec<_>, _>>()?;
    let u = Subspace::new(f, 6, vectors);
    if u.dim() == 0 {
        return Err(CliError::dimension("basis spans the zero subspace"));
    }
    Ok(u)
}

pub fn matrix_json<F: Field>(f: &F, m: &Matrix<F>) -> Value {
    Value::from(m.format(f))
}

pub fn vector_json<F: Field>(f: &F, v: &[F::Elem]) -> Value {
    Value::from(v.iter().map(|x| f.format(x)).collect::<Vec<_>>())
}
