//! JSON reports. Objects are built as `serde_json::Value`, whose maps keep
//! keys sorted, so output is byte-stable.

use indumatch::{Barcode, GMatchingTable, GridInterval, IndexedBar, LadderCode, MMatchingTable, Morphism, RepMatching};
use serde_json::{json, Value};

pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn interval(i: &GridInterval) -> Value {
    json!([i.start, i.end])
}

/// One entry per bar, repeated by multiplicity.
fn bars(b: &Barcode) -> Value {
    Value::Array(b.indexed_bars().iter().map(|(i, _)| interval(i)).collect())
}

fn indexed(bar: &IndexedBar) -> Value {
    json!({ "interval": interval(&bar.0), "index": bar.1 })
}

pub fn barcodes(source: &Barcode, target: &Barcode, image: &Barcode) -> Value {
    json!({
        "barcode_source": bars(source),
        "barcode_target": bars(target),
        "barcode_image": bars(image),
    })
}

pub fn m_table(m: &MMatchingTable, bv: &Barcode, bu: &Barcode, eps: usize) -> Value {
    let entries: Vec<Value> = m
        .iter()
        .map(|((i, j), c)| json!({ "I": interval(&i), "J": interval(&j), "count": c }))
        .collect();
    json!({
        "method": "m",
        "eps": eps,
        "entries": entries,
        "partial_matching": m.check_inequalities(bv, bu).is_ok(),
    })
}

pub fn g_table(g: &GMatchingTable, bv: &Barcode, bu: &Barcode, eps: usize) -> Value {
    let entries: Vec<Value> = g
        .iter()
        .map(|((i, j), b)| json!({ "I": interval(i), "J": interval(j), "bars": bars(b) }))
        .collect();
    json!({
        "method": "g",
        "eps": eps,
        "entries": entries,
        "partial_matching": g.to_counts().check_inequalities(bv, bu).is_ok(),
    })
}

pub fn chi(c: &RepMatching, eps: usize) -> Value {
    let pairs: Vec<Value> = c
        .pairs()
        .map(|(a, b)| json!({ "from": indexed(&a), "to": indexed(&b) }))
        .collect();
    json!({ "method": "chi", "eps": eps, "pairs": pairs })
}

pub fn catalog(entries: &[(LadderCode, Morphism)]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|(code, f)| {
                json!({
                    "code": code.to_string(),
                    "barcode_source": bars(&f.source().barcode()),
                    "barcode_target": bars(&f.target().barcode()),
                })
            })
            .collect(),
    )
}
