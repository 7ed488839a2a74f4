//! Field spec strings: `q` | `gf:p` | `gf:p^k[:modulus-coeffs]` | `fp_t:p` |
//! `quad:<base>:<t>,<d>`.

use std::fmt;

use super::{FieldError, FiniteField, FunctionField, Rationals};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
    /// GF(p^k); modulus coefficients lowest degree first.
    Ext { p: u32, k: u32, modulus: Option<Vec<u32>> },
    FunctionField(u32),
}

/// A parsed spec: a plain field, or a quadratic extension of one given by
/// the polynomial X² + tX + d (scalars kept as strings until the base field
/// is built).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedSpec {
    Field(FieldSpec),
    Quad { base: FieldSpec, t: String, d: String },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "gf:{p}"),
            FieldSpec::Ext { p, k, modulus: None } => write!(f, "gf:{p}^{k}"),
            FieldSpec::Ext { p, k, modulus: Some(m) } => {
                let m: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                write!(f, "gf:{p}^{k}:{}", m.join(","))
            }
            FieldSpec::FunctionField(p) => write!(f, "fp_t:{p}"),
        }
    }
}

impl fmt::Display for ParsedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedSpec::Field(s) => write!(f, "{s}"),
            ParsedSpec::Quad { base, t, d } => write!(f, "quad:{base}:{t},{d}"),
        }
    }
}

fn bad(s: &str, why: &str) -> FieldError {
    FieldError::BadSpec(s.to_string(), why.to_string())
}

fn parse_u32(s: &str, whole: &str, what: &str) -> Result<u32, FieldError> {
    s.trim().parse::<u32>().map_err(|_| bad(whole, &format!("bad {what} {s:?}")))
}

/// A constructed field of any backend, for runtime dispatch.
#[derive(Clone, Debug)]
pub enum AnyField {
    Rationals(Rationals),
    Finite(FiniteField),
    Function(FunctionField),
}

impl FieldSpec {
    pub fn build(&self) -> Result<AnyField, FieldError> {
        Ok(match self {
            FieldSpec::Rationals => AnyField::Rationals(Rationals),
            FieldSpec::Prime(p) => AnyField::Finite(FiniteField::prime(*p)?),
            FieldSpec::Ext { p, k, modulus } => {
                AnyField::Finite(FiniteField::new(*p, *k, modulus.clone())?)
            }
            FieldSpec::FunctionField(p) => AnyField::Function(FunctionField::new(*p)?),
        })
    }
}

/// Run a generic expression with `$f` bound to the concrete field inside an
/// [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            $crate::field::spec::AnyField::Rationals($f) => $body,
            $crate::field::spec::AnyField::Finite($f) => $body,
            $crate::field::spec::AnyField::Function($f) => $body,
        }
    };
}

pub fn parse_base_spec(s: &str) -> Result<FieldSpec, FieldError> {
    let s = s.trim();
    if s == "q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(rest) = s.strip_prefix("fp_t:") {
        return Ok(FieldSpec::FunctionField(parse_u32(rest, s, "characteristic")?));
    }
    if let Some(rest) = s.strip_prefix("gf:") {
        let (order, modulus) = match rest.split_once(':') {
            Some((o, m)) => (o, Some(m)),
            None => (rest, None),
        };
        let (p, k) = match order.split_once('^') {
            Some((p, k)) => (parse_u32(p, s, "prime")?, parse_u32(k, s, "degree")?),
            None => (parse_u32(order, s, "prime")?, 1),
        };
        let modulus = match modulus {
            None => None,
            Some(m) => Some(
                m.split(',')
                    .map(|c| parse_u32(c, s, "modulus coefficient"))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        if k == 1 && modulus.is_none() {
            return Ok(FieldSpec::Prime(p));
        }
        return Ok(FieldSpec::Ext { p, k, modulus });
    }
    Err(bad(s, "expected q, gf:p, gf:p^k[:coeffs], fp_t:p or quad:<base>:<t>,<d>"))
}

pub fn parse_field_spec(s: &str) -> Result<ParsedSpec, FieldError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("quad:") {
        let (base, td) = rest.rsplit_once(':').ok_or_else(|| bad(s, "missing :<t>,<d>"))?;
        let (t, d) = td.split_once(',').ok_or_else(|| bad(s, "expected <t>,<d>"))?;
        if t.trim().is_empty() || d.trim().is_empty() {
            return Err(bad(s, "empty t or d"));
        }
        return Ok(ParsedSpec::Quad {
            base: parse_base_spec(base)?,
            t: t.trim().to_string(),
            d: d.trim().to_string(),
        });
    }
    parse_base_spec(s).map(ParsedSpec::Field)
}
