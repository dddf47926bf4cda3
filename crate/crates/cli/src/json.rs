//! JSON schema for parameters, matrices and fields, and the number format
//! used on output.
//!
//! Parameters are `{"omega": [4], "u": [3], "theta": [3]}` (missing parts are
//! zero) or the string `"identity"`. Matrices are arrays of rows; complex
//! entries are `[re, im]` pairs.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;
use xlorentz::extended::Coords;
use xlorentz::structure::Matrix10;
use xlorentz::{BoostParams, DiracParams, ExtendedParams, Matrix4C, RotationParams, C64};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamsJson {
    Named(String),
    Explicit {
        #[serde(default)]
        omega: [f64; 4],
        #[serde(default)]
        u: [f64; 3],
        #[serde(default)]
        theta: [f64; 3],
    },
}

impl ParamsJson {
    pub fn to_params(&self) -> Result<ExtendedParams, CliError> {
        match self {
            ParamsJson::Named(name) if name == "identity" => Ok(ExtendedParams::identity()),
            ParamsJson::Named(name) => Err(CliError::Schema(format!("unknown named parameter set {name:?}"))),
            ParamsJson::Explicit { omega, u, theta } => {
                let p = ExtendedParams::new(
                    DiracParams::new(omega[0], omega[1], omega[2], omega[3]),
                    BoostParams::new(u[0], u[1], u[2]),
                    RotationParams::new(theta[0], theta[1], theta[2]),
                );
                Ok(p)
            }
        }
    }
}

impl From<&ExtendedParams> for ParamsJson {
    fn from(p: &ExtendedParams) -> Self {
        let c: Coords = p.coords();
        ParamsJson::Explicit {
            omega: [c[6], c[7], c[8], c[9]],
            u: [c[3], c[4], c[5]],
            theta: [c[0], c[1], c[2]],
        }
    }
}

pub type ComplexMatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix4_to_json(m: &Matrix4C) -> ComplexMatrixJson {
    (0..4)
        .map(|i| (0..4).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix4_from_json(rows: &ComplexMatrixJson) -> Result<Matrix4C, CliError> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(CliError::Schema("matrix must be 4 rows of 4 [re, im] entries".into()));
    }
    Ok(Matrix4C::from_fn(|i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

pub fn matrix10_to_json(m: &Matrix10) -> Vec<Vec<f64>> {
    (0..10).map(|i| (0..10).map(|j| m[(i, j)]).collect()).collect()
}

/// Deserialize a sub-object of the job inputs.
pub fn field<T: for<'de> Deserialize<'de>>(inputs: &Value, name: &str) -> Result<T, CliError> {
    let v = inputs
        .get(name)
        .ok_or_else(|| CliError::Schema(format!("missing input field {name:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| CliError::Schema(format!("input field {name:?}: {e}")))
}

/// Writes floats with 17 significant digits, which round-trips every double.
/// Trailing zeros of the mantissa are dropped.
pub struct NumberFormatter<'a> {
    pretty: Option<PrettyFormatter<'a>>,
}

impl<'a> NumberFormatter<'a> {
    pub fn new(indent: &'a [u8]) -> Self {
        let pretty = (!indent.is_empty()).then(|| PrettyFormatter::with_indent(indent));
        Self { pretty }
    }
}

pub fn format_f64(x: f64) -> String {
    let s = format!("{x:.16e}");
    let (mantissa, exponent) = s.split_once('e').expect("exponent present");
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{mantissa}e{exponent}")
}

macro_rules! delegate {
    ($( $name:ident ( $($arg:ident : $ty:ty),* ) ),* $(,)?) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                match &mut self.pretty {
                    Some(p) => p.$name(writer $(, $arg)*),
                    None => serde_json::ser::CompactFormatter.$name(writer $(, $arg)*),
                }
            }
        )*
    };
}

impl Formatter for NumberFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        end_object_key(),
        begin_object_value(),
        end_object_value(),
    );
}

/// Serialize with `indent` spaces per level (0 gives compact output).
pub fn to_string<T: Serialize>(value: &T, indent: usize) -> String {
    let indent = vec![b' '; indent];
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, NumberFormatter::new(&indent));
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
