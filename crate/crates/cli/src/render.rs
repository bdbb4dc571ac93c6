use agelab::angle::DeviationValue;
use agelab::fmt_sig;
use serde_json::{json, Value};

/// Version of every JSON document the binary prints.
pub const SCHEMA_VERSION: u32 = 1;

/// A float rounded to 12 significant digits.
pub fn num(x: f64) -> Value {
    fmt_sig(x, 12).parse::<f64>().map_or(Value::Null, |v| json!(v))
}

/// Exact form (`q` or `a - sqrt(b)`) when known, and the rounded value.
pub fn deviation(v: &DeviationValue) -> Value {
    let exact = v.exact_rational().map(|q| q.to_string()).or_else(|| v.surd().map(|(a, b)| format!("{a} - sqrt({b})")));
    json!({ "exact": exact, "value": num(v.to_f64()) })
}

pub fn print_json(mut v: Value) {
    if let Value::Object(m) = &mut v {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
}
