//! JSON and plain-text rendering. Menus and orders always appear as labels.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::axioms::AxiomVerdict;
use crate::classify::{ClassificationReport, Explanation, ModelId, Preference};
use crate::consideration::SwitchIndex;
use crate::domain::{ChoiceCorrespondence, ChoiceFunction, GroundSet, Menu};
use crate::error::{Error, Result};
use crate::oracle::{CensusRow, SuiteResult};
use crate::relations::{BinaryRelation, LinearOrder};

fn menu_key(g: &GroundSet, m: Menu) -> String {
    g.format_menu(m)
}

fn labels(g: &GroundSet, items: impl IntoIterator<Item = usize>) -> Value {
    Value::Array(items.into_iter().map(|i| json!(g.label(i))).collect())
}

fn pairs_json(rel: &BinaryRelation) -> Value {
    Value::Array(
        rel.label_pairs()
            .into_iter()
            .map(|[a, b]| json!([a, b]))
            .collect(),
    )
}

pub fn verdict_json(g: &GroundSet, v: &AxiomVerdict) -> Value {
    let mut out = Map::new();
    out.insert("holds".into(), json!(v.holds));
    if let Some(ce) = &v.counterexample {
        out.insert(
            "counterexample".into(),
            json!({
                "reason": ce.reason,
                "menus": ce.menus.iter().map(|&m| menu_key(g, m)).collect::<Vec<_>>(),
                "items": labels(g, ce.items.iter().copied()),
            }),
        );
    }
    if let Some(note) = &v.note {
        out.insert("note".into(), json!(note));
    }
    Value::Object(out)
}

pub fn filter_json(filter: &ChoiceCorrespondence) -> Value {
    let g = filter.ground();
    let mut out = Map::new();
    for m in g.menus() {
        out.insert(menu_key(g, m), labels(g, filter.image(m).items()));
    }
    Value::Object(out)
}

/// `{filter, preference | preference_relation, shortlist?, list?}`.
pub fn certificate_json(e: &Explanation) -> Value {
    let g = e.filter.ground();
    let mut out = Map::new();
    out.insert("filter".into(), filter_json(&e.filter));
    match &e.preference {
        Preference::Linear(o) => {
            out.insert("preference".into(), json!(o.labels(g)));
        }
        Preference::Relation(r) => {
            out.insert("preference_relation".into(), pairs_json(r));
        }
    }
    if let Some(p) = &e.shortlist {
        out.insert("shortlist".into(), pairs_json(p));
    }
    if let Some(l) = &e.list {
        out.insert("list".into(), json!(l.labels(g)));
    }
    Value::Object(out)
}

pub fn explanation_json(e: &Explanation) -> Value {
    json!({
        "model": e.model.name(),
        "certificate": certificate_json(e),
    })
}

fn malformed(what: impl Into<String>) -> Error {
    Error::MalformedExplanation(what.into())
}

fn label_index(g: &GroundSet, v: &Value) -> Result<usize> {
    let s = v
        .as_str()
        .ok_or_else(|| malformed("labels must be strings"))?;
    g.index_of(s)
        .ok_or_else(|| malformed(format!("unknown label {s:?}")))
}

fn order_from(g: &GroundSet, v: &Value) -> Result<LinearOrder> {
    let arr = v
        .as_array()
        .ok_or_else(|| malformed("an order must be an array"))?;
    let ranking = arr
        .iter()
        .map(|x| label_index(g, x))
        .collect::<Result<Vec<_>>>()?;
    if ranking.len() != g.len() {
        return Err(malformed("an order must list every item once"));
    }
    LinearOrder::new(ranking).map_err(|e| malformed(e.to_string()))
}

fn relation_from(g: &Arc<GroundSet>, v: &Value) -> Result<BinaryRelation> {
    let arr = v
        .as_array()
        .ok_or_else(|| malformed("a relation must be an array of pairs"))?;
    let mut rel = BinaryRelation::empty(Arc::clone(g));
    for pair in arr {
        match pair.as_array().map(Vec::as_slice) {
            Some([a, b]) => rel.insert(label_index(g, a)?, label_index(g, b)?),
            _ => return Err(malformed("a relation pair must have two labels")),
        }
    }
    Ok(rel)
}

/// Parses the output of [`explanation_json`] back against `ground`.
pub fn explanation_from_json(ground: &Arc<GroundSet>, v: &Value) -> Result<Explanation> {
    let model: ModelId = v
        .get("model")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("missing model"))?
        .parse()?;
    let cert = v
        .get("certificate")
        .ok_or_else(|| malformed("missing certificate"))?;
    let fmap = cert
        .get("filter")
        .and_then(Value::as_object)
        .ok_or_else(|| malformed("missing filter"))?;
    let mut images = vec![Menu::EMPTY; ground.table_len()];
    for (key, items) in fmap {
        let menu = ground
            .parse_menu(key)
            .ok_or_else(|| malformed(format!("unknown menu {key:?}")))?;
        let arr = items
            .as_array()
            .ok_or_else(|| malformed("filter images must be arrays"))?;
        let img = arr
            .iter()
            .map(|x| label_index(ground, x))
            .collect::<Result<Vec<_>>>()?;
        images[menu.index()] = Menu::from_items(img);
    }
    let filter = ChoiceCorrespondence::from_fn(Arc::clone(ground), |m| images[m.index()])
        .map_err(|e| malformed(e.to_string()))?;
    let preference = match (cert.get("preference"), cert.get("preference_relation")) {
        (Some(o), None) => Preference::Linear(order_from(ground, o)?),
        (None, Some(r)) => Preference::Relation(relation_from(ground, r)?),
        _ => {
            return Err(malformed(
                "exactly one of preference or preference_relation is required",
            ))
        }
    };
    let shortlist = cert
        .get("shortlist")
        .map(|r| relation_from(ground, r))
        .transpose()?;
    let list = cert
        .get("list")
        .map(|o| order_from(ground, o))
        .transpose()?;
    Ok(Explanation {
        model,
        filter,
        preference,
        shortlist,
        list,
    })
}

/// `{MODEL: {holds, certificate | counterexample, ...}}` in model order.
pub fn classification_json(g: &GroundSet, report: &ClassificationReport) -> Value {
    let mut out = Map::new();
    for row in &report.rows {
        let mut entry = match verdict_json(g, &row.verdict) {
            Value::Object(m) => m,
            _ => unreachable!("verdicts render as objects"),
        };
        if let Some(e) = &row.explanation {
            entry.insert("certificate".into(), certificate_json(e));
        }
        if let Some(err) = &row.elicitation_error {
            entry.insert("elicitation_error".into(), json!(err));
        }
        out.insert(row.model.name(), Value::Object(entry));
    }
    Value::Object(out)
}

fn describe_verdict(g: &GroundSet, v: &AxiomVerdict) -> String {
    match &v.counterexample {
        None => String::new(),
        Some(ce) => {
            let menus: Vec<String> = ce
                .menus
                .iter()
                .map(|&m| format!("{{{}}}", menu_key(g, m)))
                .collect();
            if menus.is_empty() {
                ce.reason.clone()
            } else {
                format!("{} [{}]", ce.reason, menus.join(", "))
            }
        }
    }
}

pub fn preference_text(g: &GroundSet, p: &Preference) -> String {
    match p {
        Preference::Linear(o) => o.labels(g).join(" > "),
        Preference::Relation(r) if r.is_empty() => "(empty relation)".into(),
        Preference::Relation(r) => r.format_pairs().join(", "),
    }
}

pub fn filter_text(filter: &ChoiceCorrespondence) -> String {
    let g = filter.ground();
    g.menus()
        .filter(|m| m.len() > 1)
        .map(|m| {
            format!(
                "{{{}}} -> {{{}}}",
                menu_key(g, m),
                menu_key(g, filter.image(m))
            )
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn explanation_text(e: &Explanation) -> String {
    let g = e.filter.ground();
    let mut out = String::new();
    let _ = writeln!(out, "model: {}", e.model);
    let _ = writeln!(out, "preference: {}", preference_text(g, &e.preference));
    let _ = writeln!(out, "filter: {}", filter_text(&e.filter));
    if let Some(p) = &e.shortlist {
        let _ = writeln!(
            out,
            "shortlist: {}",
            preference_text(g, &Preference::Relation(p.clone()))
        );
    }
    if let Some(l) = &e.list {
        let _ = writeln!(out, "list: {}", l.labels(g).join(", "));
    }
    out
}

pub fn classification_text(g: &GroundSet, report: &ClassificationReport) -> String {
    let width = report
        .rows
        .iter()
        .map(|r| r.model.name().len())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for row in &report.rows {
        let mark = if row.verdict.holds { "yes" } else { "no " };
        let mut line = format!("{:width$}  {mark}", row.model.name());
        if row.verdict.holds {
            if let Some(e) = &row.explanation {
                let _ = write!(line, "  preference {}", preference_text(g, &e.preference));
            }
            if let Some(err) = &row.elicitation_error {
                let _ = write!(line, "  (no explanation: {err})");
            }
        } else {
            let _ = write!(line, "  {}", describe_verdict(g, &row.verdict));
        }
        if let Some(note) = &row.verdict.note {
            let _ = write!(line, "  [{note}]");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    for v in &report.containment_violations {
        let _ = writeln!(out, "containment violated: {v}");
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn switches_json(c: &ChoiceFunction, sw: &SwitchIndex) -> Value {
    let g = c.ground();
    let list: Vec<Value> = sw
        .list()
        .iter()
        .map(|s| {
            json!({
                "smaller": menu_key(g, s.smaller()),
                "menu": menu_key(g, s.menu),
                "removed": g.label(s.removed),
            })
        })
        .collect();
    let mut sets = Map::new();
    for m in g.menus().filter(|m| !sw.set(*m).is_empty()) {
        sets.insert(menu_key(g, m), labels(g, sw.set(m).items()));
    }
    json!({ "switches": list, "switch_sets": sets })
}

pub fn switches_text(c: &ChoiceFunction, sw: &SwitchIndex) -> String {
    let g = c.ground();
    if sw.is_empty() {
        return "no switches\n".into();
    }
    let mut out = String::new();
    for s in sw.list() {
        let _ = writeln!(
            out,
            "({{{}}}, {{{}}})  removing {}: {} -> {}",
            menu_key(g, s.smaller()),
            menu_key(g, s.menu),
            g.label(s.removed),
            g.label(c.choice(s.menu)),
            g.label(c.choice(s.smaller()))
        );
    }
    out
}

pub fn relation_json(rel: &BinaryRelation) -> Value {
    let p = rel.properties();
    json!({
        "pairs": pairs_json(rel),
        "asymmetric": p.asymmetric,
        "transitive": p.transitive,
        "complete": p.complete,
        "acyclic": p.extendable,
        "acyclic_ge3": p.acyclic_ge3,
    })
}

pub fn relations_json(named: &[(&str, BinaryRelation)]) -> Value {
    let mut out = Map::new();
    for (name, rel) in named {
        out.insert((*name).to_string(), relation_json(rel));
    }
    Value::Object(out)
}

pub fn relations_text(named: &[(&str, BinaryRelation)]) -> String {
    let mut out = String::new();
    for (name, rel) in named {
        let p = rel.properties();
        let pairs = if rel.is_empty() {
            "(empty)".to_string()
        } else {
            rel.format_pairs().join(", ")
        };
        let _ = writeln!(
            out,
            "{name}: {pairs}\n  asymmetric={} transitive={} acyclic={}",
            p.asymmetric, p.transitive, p.extendable
        );
    }
    out
}

pub fn census_json(rows: &[CensusRow], containments: Option<&[(String, usize)]>) -> Value {
    let first = rows.first();
    let mut out = Map::new();
    if let Some(r) = first {
        out.insert("n".into(), json!(r.n));
        out.insert("sample_size".into(), json!(r.sample_size));
        out.insert("up_to_iso".into(), json!(r.up_to_iso));
    }
    let mut counts = Map::new();
    for r in rows {
        counts.insert(r.model.name(), json!(r.count));
    }
    out.insert("counts".into(), Value::Object(counts));
    if let Some(cs) = containments {
        let mut m = Map::new();
        for (rule, v) in cs {
            m.insert(rule.clone(), json!(v));
        }
        out.insert("containment_violations".into(), Value::Object(m));
    }
    Value::Object(out)
}

pub fn census_text(rows: &[CensusRow], containments: Option<&[(String, usize)]>) -> String {
    let mut out = String::new();
    if let Some(r) = rows.first() {
        let iso = if r.up_to_iso {
            " up to isomorphism"
        } else {
            ""
        };
        let _ = writeln!(out, "n={} functions={}{iso}", r.n, r.sample_size);
    }
    for r in rows {
        let _ = writeln!(out, "{:16} {}", r.model.name(), r.count);
    }
    if let Some(cs) = containments {
        for (rule, v) in cs {
            let _ = writeln!(out, "{rule}: {v} violations");
        }
    }
    out
}

pub fn suite_json(r: &SuiteResult) -> Value {
    json!({
        "suite": r.name,
        "n": r.n,
        "passed": r.passed,
        "checked": r.checked,
        "disagreements": r.disagreements,
        "detail": r.detail,
        "counterexamples": r.counterexamples,
    })
}

pub fn suite_text(r: &SuiteResult) -> String {
    if r.passed {
        format!("PASS {} n={} ({} functions)\n", r.name, r.n, r.checked)
    } else {
        format!(
            "FAIL {} n={} ({} of {} functions disagree): {}\n",
            r.name,
            r.n,
            r.disagreements,
            r.checked,
            r.detail.as_deref().unwrap_or("")
        )
    }
}
