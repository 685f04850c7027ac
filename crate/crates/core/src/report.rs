//! Deterministic JSON output: keys sorted, rationals as `"num/den"` strings,
//! floats rounded to 12 significant digits.

use serde::Serialize;
use serde_json::Value;

use crate::lattice::Rational;

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = normalize(serde_json::to_value(value).expect("serializable"));
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(round_float).map_or(Value::Null, Value::from),
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect()),
        other => other,
    }
}

/// Rounds to 12 significant digits.
pub fn round_float(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// `"num/den"`, also for integers.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serde adapter for rationals as `"num/den"` strings.
pub mod rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::rational_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{text}`")))
    }
}

/// Serde adapter for optional rationals.
pub mod rational_opt {
    use serde::{Serialize, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(super::rational_string).serialize(s)
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let (n, d) = text.split_once('/').unwrap_or((text, "1"));
    let (n, d): (i64, i64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
    (d != 0).then(|| Rational::new(n, d))
}
