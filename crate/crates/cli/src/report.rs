use std::fmt::Write;

use num_bigint::BigInt;
use serde_json::{json, Value};
use stringy_core::arcspace::{ArcFraction, LogNorm};
use stringy_core::io::{arc_fraction_to_value, fraction_to_value, rational_to_value};
use stringy_core::exactring::StringyFraction;
use stringy_core::render::{
    render_arc_fraction, render_fraction, render_hodge, render_lognorm, render_rational, Style,
};
use stringy_core::resolution::HodgeTable;
use stringy_core::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Reported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Reported => "reported",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Payload {
    None,
    Text(String),
    Bool(bool),
    Integer(BigInt),
    Rational(Rational),
    Fraction(StringyFraction),
    Hodge(HodgeTable),
    Arc(ArcFraction),
    LogNorm(LogNorm),
    /// Two sides of an identity.
    Pair(Rational, Rational),
}

#[derive(Debug, Clone)]
pub struct Item {
    pub name: String,
    pub status: Status,
    pub payload: Payload,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), items: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, payload: Payload) {
        self.items.push(Item { name: name.into(), status, payload });
    }

    pub fn reported(&mut self, name: impl Into<String>, payload: Payload) {
        self.push(name, Status::Reported, payload);
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, payload: Payload) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, payload);
    }

    pub fn failed(&self) -> bool {
        self.items.iter().any(|i| i.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_styled(Style::Text),
            Format::Latex => self.render_styled(Style::Latex),
        }
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|i| json!({ "name": i.name, "status": i.status.as_str(), "payload": payload_json(&i.payload) }))
            .collect();
        json!({ "command": self.command, "items": items })
    }

    fn render_styled(&self, style: Style) -> String {
        let mut out = String::new();
        for item in &self.items {
            let body = payload_styled(&item.payload, style);
            let tag = item.status.as_str();
            match (style, body.contains('\n')) {
                (Style::Latex, _) if !body.is_empty() => {
                    let _ = writeln!(out, "% {} [{tag}]\n{}\n", item.name, display_math(&body));
                }
                (Style::Latex, _) => {
                    let _ = writeln!(out, "% {} [{tag}]\n", item.name);
                }
                (Style::Text, true) => {
                    let _ = writeln!(out, "{} [{tag}]:\n{body}", item.name);
                }
                (Style::Text, false) if body.is_empty() => {
                    let _ = writeln!(out, "{} [{tag}]", item.name);
                }
                (Style::Text, false) => {
                    let _ = writeln!(out, "{} [{tag}]: {body}", item.name);
                }
            }
        }
        out
    }
}

fn display_math(body: &str) -> String {
    if body.starts_with("\\text") {
        body.to_string()
    } else {
        format!("\\[ {body} \\]")
    }
}

fn payload_styled(p: &Payload, style: Style) -> String {
    match p {
        Payload::None => String::new(),
        Payload::Text(s) if style == Style::Latex => format!("\\text{{{}}}", s.replace('_', "\\_")),
        Payload::Text(s) => s.clone(),
        Payload::Bool(b) if style == Style::Latex => format!("\\text{{{b}}}"),
        Payload::Bool(b) => b.to_string(),
        Payload::Integer(n) => n.to_string(),
        Payload::Rational(r) => render_rational(r, style),
        Payload::Fraction(f) => render_fraction(f, style),
        Payload::Hodge(h) => render_hodge(h, style),
        Payload::Arc(a) => render_arc_fraction(a, style),
        Payload::LogNorm(l) => render_lognorm(l, style),
        Payload::Pair(a, b) => {
            let sep = if a == b { "=" } else if style == Style::Latex { "\\neq" } else { "!=" };
            format!("{} {sep} {}", render_rational(a, style), render_rational(b, style))
        }
    }
}

fn payload_json(p: &Payload) -> Value {
    match p {
        Payload::None => Value::Null,
        Payload::Text(s) => json!(s),
        Payload::Bool(b) => json!(b),
        Payload::Integer(n) => int_value(n),
        Payload::Rational(r) => rational_to_value(r),
        Payload::Fraction(f) => fraction_to_value(f),
        Payload::Hodge(h) => {
            let entries: Vec<Value> = h.entries().map(|(p, q, c)| json!([p, q, int_value(c)])).collect();
            json!({ "dim": h.dim, "entries": entries })
        }
        Payload::Arc(a) => arc_fraction_to_value(a),
        Payload::LogNorm(LogNorm::Infinite) => json!("inf"),
        Payload::LogNorm(LogNorm::Finite(r)) => rational_to_value(r),
        Payload::Pair(a, b) => json!({ "lhs": rational_to_value(a), "rhs": rational_to_value(b) }),
    }
}

fn int_value(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer literal")
}
