//! JSON document form of a sequence.
//!
//! ```json
//! {
//!   "commands": [
//!     {"type": "SOL", "params": {}},
//!     {"type": "Circle", "params": {"x": 0.5, "y": 0.5, "r": 0.25}},
//!     ...
//!   ]
//! }
//! ```

use std::fmt::Write;

use serde_json::Value;

use super::{CadSequence, Command, CommandType, ParamSlot, N_SLOTS};
use crate::error::{Error, Result};

/// Parses and grammar-checks a sequence document.
pub fn parse_json(text: &str) -> Result<CadSequence> {
    let seq = parse_json_unchecked(text)?;
    seq.check_grammar()?;
    Ok(seq)
}

/// Parses a document without the grammar check. Schema and parameter domains
/// are still enforced.
pub fn parse_json_unchecked(text: &str) -> Result<CadSequence> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Schema("document must be an object".into()))?;
    if let Some(key) = obj.keys().find(|k| *k != "commands") {
        return Err(Error::Schema(format!("unexpected top-level field '{key}'")));
    }
    let list = obj
        .get("commands")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("field 'commands' must be a list".into()))?;
    let commands = list
        .iter()
        .enumerate()
        .map(|(i, v)| {
            parse_command(v).map_err(|e| match e {
                Error::Schema(m) => Error::Schema(format!("command {i}: {m}")),
                Error::Range(m) => Error::Range(format!("command {i}: {m}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CadSequence::new(commands))
}

fn parse_command(v: &Value) -> Result<Command> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Schema("command must be an object".into()))?;
    if let Some(key) = obj.keys().find(|k| *k != "type" && *k != "params") {
        return Err(Error::Schema(format!("unexpected field '{key}'")));
    }
    let name = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema("missing string field 'type'".into()))?;
    let kind = CommandType::from_name(name)
        .ok_or_else(|| Error::Schema(format!("unknown command type '{name}'")))?;

    let mut slots = [None; N_SLOTS];
    match obj.get("params") {
        None => {}
        Some(Value::Object(params)) => {
            for (key, value) in params {
                let slot = ParamSlot::ALL
                    .into_iter()
                    .find(|s| s.name() == key)
                    .ok_or_else(|| Error::Schema(format!("unknown parameter '{key}'")))?;
                let num = value
                    .as_f64()
                    .ok_or_else(|| Error::Schema(format!("parameter '{key}' must be a number")))?;
                if slot.is_discrete() && !(value.is_u64() || value.is_i64()) {
                    return Err(Error::Range(format!(
                        "parameter '{key}' must be an integer code, got {value}"
                    )));
                }
                slots[slot.index()] = Some(num);
            }
        }
        Some(_) => return Err(Error::Schema("field 'params' must be an object".into())),
    }
    Command::from_slots(kind, &slots)
}

/// Serializes a sequence. Output is deterministic: one command per line,
/// parameters in slot order, floats in shortest round-trip form.
pub fn serialize_json(seq: &CadSequence) -> String {
    let mut out = String::from("{\n  \"commands\": [");
    for (i, cmd) in seq.commands().iter().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        let kind = cmd.kind();
        let _ = write!(out, "{{\"type\": \"{}\", \"params\": {{", kind.name());
        let slots = cmd.slots();
        for (j, slot) in kind.slots().iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let v = slots[slot.index()].expect("used slot is populated");
            let _ = write!(out, "\"{}\": ", slot.name());
            if slot.is_discrete() {
                let _ = write!(out, "{}", v as u8);
            } else {
                out.push_str(&serde_json::to_string(&v).expect("finite float"));
            }
        }
        out.push_str("}}");
    }
    if !seq.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}
