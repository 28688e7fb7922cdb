//! Canonical report rendering.

use serde_json::{json, Map, Number, Value};

use crate::{Common, Failure, Outcome};

/// Round to 15 significant digits; such decimals survive an f64 round trip,
/// so the printed form is stable.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn fmt_float(x: f64) -> String {
    round15(x).to_string()
}

fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().unwrap());
            Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonical(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

pub struct Report {
    common: Value,
    command: String,
    config: Value,
    result: Value,
}

impl Report {
    pub fn new(common: &Common) -> Self {
        Report { common: serde_json::to_value(common).unwrap(), command: String::new(), config: Value::Null, result: Value::Null }
    }

    pub fn set(&mut self, command: &str, config: Value, result: Value) {
        self.command = command.to_string();
        self.config = config;
        self.result = result;
    }

    pub fn render(self) -> String {
        let v = json!({
            "tool": "netfunc",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": { "common": self.common, "command": self.config },
            "result": self.result,
        });
        let mut s = serde_json::to_string_pretty(&canonical(v)).unwrap();
        s.push('\n');
        s
    }
}

pub fn write_csv(rows: &[Vec<String>]) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).map_err(|e| Failure::Input(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
