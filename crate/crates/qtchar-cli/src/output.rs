//! Text and JSON rendering. Both carry a format-version field.

use qtchar::ring::Character;
use serde_json::{json, Map, Value};

pub const FORMAT_VERSION: u32 = 1;

/// Accumulates one command's output in either rendering.
pub struct Out {
    json: bool,
    text: String,
    fields: Map<String, Value>,
}

impl Out {
    pub fn new(json: bool, kind: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("format_version".into(), json!(FORMAT_VERSION));
        fields.insert("kind".into(), json!(kind));
        let text = if json {
            String::new()
        } else {
            format!("# qtchar format {FORMAT_VERSION}: {kind}\n")
        };
        Out { json, text, fields }
    }

    /// A named scalar: a `# key: value` line or a JSON field.
    pub fn field(&mut self, key: &str, v: impl Into<Value>) {
        let v = v.into();
        if !self.json {
            let shown = match &v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            self.text.push_str(&format!("# {key}: {shown}\n"));
        }
        self.fields.insert(key.into(), v);
    }

    /// Free text, shown only in the text rendering.
    pub fn line(&mut self, s: &str) {
        if !self.json {
            self.text.push_str(s);
            if !s.ends_with('\n') {
                self.text.push('\n');
            }
        }
    }

    /// A character: its terms, then a counts trailer.
    pub fn character(&mut self, key: &str, ch: &Character, d: i64) {
        let text = ch.to_text(d);
        if self.json {
            let terms: Vec<Value> = text
                .lines()
                .filter_map(|l| l.split_once('\t'))
                .map(|(c, m)| json!({ "coeff": c, "monomial": m }))
                .collect();
            self.fields
                .insert(key.into(), json!({ "terms": terms, "counts": counts(ch) }));
        } else {
            if key != "character" {
                self.text.push_str(&format!("## {key}\n"));
            }
            self.text.push_str(&text);
            self.text.push_str(&format!(
                "# terms: {} alpha-terms: {} dimension: {}\n",
                ch.len(),
                ch.alpha_terms(),
                ch.dimension_at(1)
            ));
        }
    }

    pub fn render(self) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&Value::Object(self.fields)).expect("json");
            s.push('\n');
            s
        } else {
            self.text
        }
    }
}

pub fn counts(ch: &Character) -> Value {
    json!({
        "distinct": ch.len(),
        "alpha": ch.alpha_terms(),
        "total": ch.dimension_at(1).to_string(),
    })
}
