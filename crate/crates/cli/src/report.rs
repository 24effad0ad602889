use std::fmt::Display;

use serde::Serialize;
use serde_json::{Map, Value};

use exactpoly::{Coeff, Scalar};

/// A computed result: text lines for people, a JSON object for tools.
/// `negative` marks a successful computation whose verdict is "no".
pub struct Report {
    pub text: Vec<String>,
    pub json: Map<String, Value>,
    pub negative: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), Value::String(command.into()));
        Report { text: Vec::new(), json, negative: false }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.json.insert(key.into(), serde_json::to_value(v).expect("report values serialize"));
    }
}

pub fn tuple<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn strings<T: Display>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn matrix<T: Display>(m: &[Vec<T>]) -> Vec<Vec<String>> {
    m.iter().map(|r| strings(r)).collect()
}

/// `Σ c_k ∂_k` written out, with `∂_0` shown as `id`.
pub fn combination(row: &[Scalar]) -> String {
    let mut out = String::new();
    for (k, c) in row.iter().enumerate() {
        if Coeff::is_zero(c) {
            continue;
        }
        let name = if k == 0 { "id".to_string() } else { format!("∂{k}") };
        let mut cs = c.to_string();
        let compound = cs.contains(' ');
        let neg = !compound && cs.starts_with('-');
        if neg {
            cs.remove(0);
        }
        let term = match (cs.as_str(), compound) {
            ("1", _) => name,
            (_, true) => format!("({cs})*{name}"),
            _ => format!("{cs}*{name}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactpoly::BaseField;

    #[test]
    fn combinations() {
        let b = BaseField::Rational;
        let s = |n| Scalar::from_int(&b, n);
        assert_eq!(combination(&[s(0), s(1), s(0)]), "∂1");
        assert_eq!(combination(&[s(1), s(-2), s(3)]), "id - 2*∂1 + 3*∂2");
        assert_eq!(combination(&[s(0), s(0)]), "0");
        assert_eq!(combination(&[s(0), s(-1)]), "-∂1");
    }
}
