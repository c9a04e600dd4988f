//! Instance file formats.
//!
//! JSON: `{"capacity":<int>,"items":[{"profit":<int>,"weight":<int>},...]}`.
//! Text: a header line `n C` followed by `n` lines `p_j w_j`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{PkpError, Result};
use crate::instance::{Instance, Item};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    capacity: i64,
    items: Vec<Item>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn to_json(inst: &Instance) -> String {
    let doc = InstanceDoc { capacity: inst.capacity(), items: inst.items().to_vec() };
    serde_json::to_string(&doc).expect("instance serialization cannot fail")
}

pub fn from_json(s: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(s).map_err(|e| PkpError::Parse(e.to_string()))?;
    Instance::new(doc.items, doc.capacity)
}

pub fn to_text(inst: &Instance) -> String {
    let mut out = format!("{} {}\n", inst.len(), inst.capacity());
    for it in inst.items() {
        writeln!(out, "{} {}", it.profit, it.weight).unwrap();
    }
    out
}

fn int_tokens(line: &str, lineno: usize, expected: usize) -> Result<Vec<i64>> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != expected {
        return Err(PkpError::Parse(format!(
            "line {lineno}: expected {expected} integers, found {}",
            toks.len()
        )));
    }
    toks.iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| PkpError::Parse(format!("line {lineno}: not an integer: {t:?}")))
        })
        .collect()
}

pub fn from_text(s: &str) -> Result<Instance> {
    let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| PkpError::Parse("missing header line".into()))?;
    let head = int_tokens(header, 1, 2)?;
    let n = usize::try_from(head[0]).map_err(|_| PkpError::Parse("negative item count".into()))?;
    let mut items = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| PkpError::Parse(format!("expected {n} item lines, found {}", items.len())))?;
        let v = int_tokens(line, no, 2)?;
        items.push(Item::new(v[0], v[1]));
    }
    if let Some((no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(PkpError::Parse(format!("line {no}: trailing content")));
    }
    Instance::new(items, head[1])
}

pub fn detect_format(s: &str) -> Format {
    if s.trim_start().starts_with('{') {
        Format::Json
    } else {
        Format::Text
    }
}

pub fn parse_instance(s: &str) -> Result<Instance> {
    match detect_format(s) {
        Format::Json => from_json(s),
        Format::Text => from_text(s),
    }
}

/// Whitespace-separated positive integers.
pub fn parse_ppp(s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| match t.parse::<u64>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(PkpError::Parse(format!("not a positive integer: {t:?}"))),
        })
        .collect()
}
