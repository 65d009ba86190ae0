//! JSON report assembly with fixed 17-significant-digit floats.

use std::io;

use dirac_spin::{LorentzMatrix, R3x3, Real3, C64};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

/// Pretty printer that writes every float as `{:.16e}`.
pub struct Sig17<'a>(PrettyFormatter<'a>);

impl Default for Sig17<'_> {
    fn default() -> Self {
        Self(PrettyFormatter::with_indent(b"  "))
    }
}

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17::default());
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Non-finite floats become null; JSON has no representation for them.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn vec3(v: &Real3) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

pub fn complex(z: C64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

/// Row-major nested arrays of [re, im] pairs.
pub fn cmatrix(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> C64) -> Value {
    Value::Array((0..rows).map(|i| Value::Array((0..cols).map(|j| complex(entry(i, j))).collect())).collect())
}

pub fn rmatrix(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> f64) -> Value {
    Value::Array((0..rows).map(|i| Value::Array((0..cols).map(|j| num(entry(i, j))).collect())).collect())
}

pub fn rotation(r: &R3x3) -> Value {
    rmatrix(3, 3, |i, j| r[(i, j)])
}

pub fn lorentz(l: &LorentzMatrix) -> Value {
    rmatrix(4, 4, |i, j| l.get(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_use_seventeen_significant_digits() {
        let out = to_string(&json!({"a": 0.1, "b": [1.0, -2.5e-300], "n": 3}));
        assert!(out.contains("\"a\": 1.0000000000000001e-1"), "{out}");
        assert!(out.contains("-2.5000000000000000e-300"));
        assert!(out.contains("\"n\": 3"));
        let back: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(back["a"].as_f64(), Some(0.1));
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(num(f64::INFINITY), Value::Null);
        assert_eq!(num(f64::NAN), Value::Null);
    }
}
