//! Number rendering shared by reports and input parsing.
//!
//! Finite numbers are written with 17 significant digits (`%.17g` style), which
//! is enough for every binary64 value to round-trip. Non-finite numbers have no
//! JSON literal and are written as the strings `"inf"`, `"-inf"` or `"nan"`.

use std::io;

use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;
use serde_json::ser::Formatter;

/// Formats `x` like C's `%.17g`.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_fraction(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Parses a decimal literal or an infinity token (`inf`, `Inf`, `+inf`,
/// `infinity`). Only `.` is accepted as the radix point.
pub fn parse_f64(token: &str) -> Option<f64> {
    let t = token.trim();
    if t.is_empty() || t.contains(',') {
        return None;
    }
    let x: f64 = t.parse().ok()?;
    if x.is_nan() {
        None
    } else {
        Some(x)
    }
}

/// JSON formatter that renders floats through [`fmt_g17`].
#[derive(Debug, Default, Clone, Copy)]
pub struct G17Formatter;

impl Formatter for G17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_g17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes to a single line of JSON using [`G17Formatter`].
pub fn to_json_line<T: serde::Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, G17Formatter);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// `serialize_with` helper: finite floats as numbers, others as tokens.
pub fn serialize_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&fmt_g17(*x))
    }
}

pub fn serialize_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => serialize_f64(x, s),
        None => s.serialize_none(),
    }
}

pub fn serialize_f64_seq<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Tokened(*x))?;
    }
    seq.end()
}

struct Tokened(f64);

impl serde::Serialize for Tokened {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_f64(&self.0, s)
    }
}

/// `deserialize_with` helper accepting a JSON number or an infinity token.
pub fn deserialize_f64<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    struct NumOrToken;

    impl Visitor<'_> for NumOrToken {
        type Value = f64;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a number or \"inf\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            parse_f64(v).ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self))
        }
    }

    d.deserialize_any(NumOrToken)
}
